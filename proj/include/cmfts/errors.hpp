#pragma once

#include <stdexcept>
#include <string>

namespace cmfts {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numeric preconditions
struct ZeroVariance : Error {
    ZeroVariance() : Error("series has zero variance") {}
};
struct NumericalFailure : Error {
    using Error::Error;
};
struct SeriesTooShort : Error {
    using Error::Error;
};

// ingestion / serialization
struct NonFiniteInput : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct RaggedRows : Error {
    using Error::Error;
};
struct HeaderMismatch : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

// matrix cleaning
struct EmptyTrain : Error {
    EmptyTrain() : Error("training set is empty") {}
};
struct AllColumnsDropped : Error {
    AllColumnsDropped() : Error("no feature column survived the sparsity filter") {}
};
struct NoFiniteValue : Error {
    using Error::Error;
};

// models and evaluation
struct ColumnMismatch : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct DatasetMismatch : Error {
    using Error::Error;
};
struct UnsupportedAlpha : Error {
    using Error::Error;
};
struct ArityError : Error {
    using Error::Error;
};

}  // namespace cmfts
