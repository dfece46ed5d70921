#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cmfts/pipeline.hpp"
#include "cmfts/series.hpp"

namespace cmfts {

// ---------------------------------------------------------------- 1NN (features)

/// 1-nearest-neighbour on cleaned feature rows, Euclidean distance, ties to
/// the lowest train row index. Columns are z-scored with train statistics
/// unless standardize is disabled.
struct KnnFeatureModel {
    std::vector<std::string> columns;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> train_rows;  // already standardized
    std::vector<double> col_mean, col_scale;
    bool standardized = true;
};

KnnFeatureModel knn1_train(const FeatureMatrix& train, bool standardize = true);
std::vector<std::string> predict(const KnnFeatureModel& model, const FeatureMatrix& queries,
                                 unsigned jobs = 1);

// ------------------------------------------------------------------------- DTW

struct DtwResult {
    double cost = 0.0;
    bool band_widened = false;  // band raised to the minimum feasible width
};

/// Dynamic time warping with squared pointwise cost and a Sakoe-Chiba band
/// of half-width ceil(window_percent/100 * max(n, m)); 100 means
/// unconstrained. `cutoff` allows early abandoning: the exact cost is
/// returned only when it is below the cutoff.
DtwResult dtw_distance_full(std::span<const double> a, std::span<const double> b,
                            double window_percent,
                            double cutoff = std::numeric_limits<double>::infinity());
double dtw_distance(std::span<const double> a, std::span<const double> b,
                    double window_percent = 100.0);

struct DtwConfig {
    std::optional<double> window_percent;  // nullopt: learn from the train set
    std::vector<double> candidate_grid = {0,  5,  10, 15, 20, 25, 30, 35, 40, 45, 50,
                                          55, 60, 65, 70, 75, 80, 85, 90, 95, 100};
};

/// Leave-one-out 1NN accuracy over the candidate grid; returns the smallest
/// percent achieving the maximum.
double learn_dtw_window(const std::vector<TimeSeries>& train, const DtwConfig& config = {},
                        unsigned jobs = 1);

enum class RawMetric { Euclidean, Dtw };

/// 1NN over raw series, Euclidean (equal lengths required) or DTW.
std::vector<std::string> knn1_raw(const std::vector<TimeSeries>& train,
                                  const std::vector<TimeSeries>& queries, RawMetric metric,
                                  double window_percent = 100.0, unsigned jobs = 1);

// ------------------------------------------------------------------- CART / RF

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    double impurity_decrease = 0.0;
    std::vector<std::size_t> class_counts;  // leaves: samples per class
    std::unique_ptr<TreeNode> left, right;

    bool is_leaf() const noexcept { return feature < 0; }
};

struct TreeParams {
    int max_depth = 30;
    int min_leaf = 2;
};

struct CartModel {
    std::vector<std::string> columns;
    std::vector<std::string> classes;  // sorted; vote ties resolve to the lowest
    std::unique_ptr<TreeNode> root;
    std::vector<double> importance;  // normalized to sum 1 when any split occurred
    TreeParams params;

    int depth() const;
};

CartModel cart_train(const FeatureMatrix& train, const TreeParams& params = {});
std::vector<std::string> predict(const CartModel& model, const FeatureMatrix& queries);

struct ForestParams {
    int n_trees = 500;
    int mtry = 0;  // 0: floor(sqrt(feature count))
    std::uint64_t seed = 42;
    int max_depth = 30;
    int min_leaf = 1;
};

struct ForestModel {
    std::vector<std::string> columns;
    std::vector<std::string> classes;
    std::vector<std::unique_ptr<TreeNode>> trees;
    std::vector<double> importance;
    ForestParams params;
};

/// Bootstrap-aggregated CART trees with per-split feature subsampling.
/// Per-tree RNG streams derive from the master seed, so results do not
/// depend on scheduling.
ForestModel rf_train(const FeatureMatrix& train, const ForestParams& params = {},
                     unsigned jobs = 1);
std::vector<std::string> predict(const ForestModel& model, const FeatureMatrix& queries,
                                 unsigned jobs = 1);

// ------------------------------------------------------------- serialization

nlohmann::json to_json(const KnnFeatureModel& model);
nlohmann::json to_json(const CartModel& model);
nlohmann::json to_json(const ForestModel& model);
KnnFeatureModel knn_from_json(const nlohmann::json& j);
CartModel cart_from_json(const nlohmann::json& j);
ForestModel forest_from_json(const nlohmann::json& j);

}  // namespace cmfts
