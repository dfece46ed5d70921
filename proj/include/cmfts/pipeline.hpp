#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmfts/feature_set.hpp"
#include "cmfts/series.hpp"

namespace cmfts {

struct ColumnMeta {
    std::string name;
    std::optional<double> clamp_min;    // train minimum applied to -inf cells
    std::optional<double> clamp_max;    // train maximum applied to +inf cells
    std::optional<double> impute_mean;  // train mean applied to missing cells
};

/// Labeled feature table. Rows align with `labels`; columns with `columns`.
/// Missing cells are quiet_NaN until the cleaning stages run.
struct FeatureMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    std::vector<ColumnMeta> columns;

    std::size_t n_rows() const noexcept { return rows.size(); }
    std::size_t n_cols() const noexcept { return columns.size(); }
    std::vector<std::string> column_names() const;
};

struct CleanPolicy {
    double na_fraction_threshold = 0.2;
};

struct CleaningReport {
    std::vector<std::string> dropped_columns;
    std::size_t clamped_cells = 0;
    std::size_t imputed_cells = 0;
};

/// Feature matrix for a list of series, canonical 55 columns, row order
/// preserving input order. Extraction parallelizes over series.
FeatureMatrix build_matrix(const std::vector<TimeSeries>& series, const FeatureParams& params = {},
                           unsigned jobs = 1);

/// Train and test matrices in one call. Throws EmptyTrain.
std::pair<FeatureMatrix, FeatureMatrix> build_matrices(const std::vector<TimeSeries>& train,
                                                       const std::vector<TimeSeries>& test,
                                                       const FeatureParams& params = {},
                                                       unsigned jobs = 1);

/// NaN cells become the canonical missing marker; infinities pass through.
void unify_nonfinite(FeatureMatrix& m);

/// Removes from BOTH matrices every column whose missing count in train
/// reaches the threshold fraction of train rows. Returns the dropped names.
/// Throws AllColumnsDropped when nothing survives.
std::vector<std::string> drop_sparse_columns(FeatureMatrix& train, FeatureMatrix& test,
                                             const CleanPolicy& policy = {});

/// Replaces +/-inf cells in both matrices with the train column's finite
/// extremes. Returns the number of replaced cells. Throws NoFiniteValue.
std::size_t clamp_infinities(FeatureMatrix& train, FeatureMatrix& test);

/// Replaces remaining missing cells with the train column mean. Returns the
/// number of imputed cells.
std::size_t impute_means(FeatureMatrix& train, FeatureMatrix& test);

/// unify -> drop -> clamp -> impute, in exactly that order.
CleaningReport clean(FeatureMatrix& train, FeatureMatrix& test, const CleanPolicy& policy = {});

}  // namespace cmfts
