#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cmfts/pipeline.hpp"
#include "cmfts/series.hpp"

namespace cmfts {

struct DatasetPair {
    std::string name;
    std::vector<TimeSeries> train;
    std::vector<TimeSeries> test;
};

/// One series per line: class label first, then the values; separator
/// auto-detected (tab preferred, then comma) and required to be consistent
/// across the file. Throws ParseError / NonFiniteInput / RaggedRows.
std::vector<TimeSeries> parse_ucr(const std::string& path);

/// Loads <dir>/<name>_TRAIN.<ext> and <dir>/<name>_TEST.<ext> (any
/// extension). Throws IoError when either file is missing.
DatasetPair load_dataset_dir(const std::string& dir, const std::string& name);

/// Feature CSV with header `label,<column>,...`; missing cells serialize as
/// the literal token NA, infinities as inf/-inf. Finite values round-trip
/// exactly.
void write_feature_csv(const FeatureMatrix& m, const std::string& path);

/// Reads a feature CSV back. The header must list known canonical feature
/// names in canonical order (HeaderMismatch otherwise).
FeatureMatrix read_feature_csv(const std::string& path);

/// Serializes a report with stable key order; identical reports produce
/// byte-identical files.
void write_report_json(const nlohmann::json& report, const std::string& path);

/// Shortest exact decimal representation used across all CSV output.
std::string format_double(double v);

}  // namespace cmfts
