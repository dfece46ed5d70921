#include "cmfts/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "cmfts/parallel.hpp"

namespace cmfts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d4a9b672a3c6e3ULL ^ 0x2545f4914f6cdd1dULL;
    return x ^ (x >> 31);
}

std::vector<std::string> sorted_classes(const std::vector<std::string>& labels) {
    std::vector<std::string> classes(labels);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

std::vector<int> encode_labels(const std::vector<std::string>& labels,
                               const std::vector<std::string>& classes) {
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it = std::lower_bound(classes.begin(), classes.end(), labels[i]);
        y[i] = static_cast<int>(it - classes.begin());
    }
    return y;
}

void require_columns(const std::vector<std::string>& expected, const FeatureMatrix& m) {
    if (m.column_names() != expected)
        throw ColumnMismatch("query columns do not match training columns");
}

double gini(const std::vector<std::size_t>& counts, std::size_t total) {
    if (total == 0) return 0.0;
    double acc = 0.0;
    for (const std::size_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        acc += p * p;
    }
    return 1.0 - acc;
}

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double decrease = 0.0;
};

struct TreeBuilder {
    const std::vector<std::vector<double>>& rows;
    const std::vector<int>& y;
    std::size_t n_classes;
    TreeParams params;
    std::size_t n_root;
    std::vector<double>& importance;  // accumulates weighted impurity decreases
    // RF-style feature subsampling; empty selector means all features
    std::function<std::vector<int>()> feature_selector;

    std::unique_ptr<TreeNode> build(std::vector<std::size_t>& idx, int depth) {
        auto node = std::make_unique<TreeNode>();
        std::vector<std::size_t> counts(n_classes, 0);
        for (const std::size_t i : idx) ++counts[static_cast<std::size_t>(y[i])];
        const std::size_t n = idx.size();
        const double node_gini = gini(counts, n);
        const bool pure = std::count(counts.begin(), counts.end(), std::size_t{0}) ==
                          static_cast<long>(n_classes) - 1;
        if (pure || depth >= params.max_depth ||
            n < 2 * static_cast<std::size_t>(params.min_leaf)) {
            node->class_counts = std::move(counts);
            return node;
        }
        const SplitChoice split = best_split(idx, counts, node_gini);
        if (split.feature < 0 || !(split.decrease > 0.0)) {
            node->class_counts = std::move(counts);
            return node;
        }
        node->feature = split.feature;
        node->threshold = split.threshold;
        node->impurity_decrease = split.decrease;
        importance[static_cast<std::size_t>(split.feature)] +=
            split.decrease * static_cast<double>(n) / static_cast<double>(n_root);
        std::vector<std::size_t> left_idx, right_idx;
        left_idx.reserve(n);
        right_idx.reserve(n);
        for (const std::size_t i : idx) {
            (rows[i][static_cast<std::size_t>(split.feature)] <= split.threshold ? left_idx
                                                                                 : right_idx)
                .push_back(i);
        }
        node->left = build(left_idx, depth + 1);
        node->right = build(right_idx, depth + 1);
        return node;
    }

    SplitChoice best_split(const std::vector<std::size_t>& idx,
                           const std::vector<std::size_t>& counts, double node_gini) {
        SplitChoice best;
        const std::size_t n = idx.size();
        std::vector<int> features;
        if (feature_selector) {
            features = feature_selector();
        } else {
            features.resize(rows.empty() ? 0 : rows[0].size());
            std::iota(features.begin(), features.end(), 0);
        }
        std::sort(features.begin(), features.end());
        std::vector<std::pair<double, int>> vals(n);  // (value, class)
        std::vector<std::size_t> left_counts(n_classes);
        for (const int f : features) {
            for (std::size_t k = 0; k < n; ++k) {
                vals[k] = {rows[idx[k]][static_cast<std::size_t>(f)], y[idx[k]]};
            }
            std::sort(vals.begin(), vals.end());
            std::fill(left_counts.begin(), left_counts.end(), std::size_t{0});
            std::size_t n_left = 0;
            for (std::size_t k = 0; k + 1 < n; ++k) {
                ++left_counts[static_cast<std::size_t>(vals[k].second)];
                ++n_left;
                if (vals[k].first == vals[k + 1].first) continue;
                const std::size_t n_right = n - n_left;
                if (n_left < static_cast<std::size_t>(params.min_leaf) ||
                    n_right < static_cast<std::size_t>(params.min_leaf))
                    continue;
                std::vector<std::size_t> right_counts(n_classes);
                for (std::size_t c = 0; c < n_classes; ++c)
                    right_counts[c] = counts[c] - left_counts[c];
                const double g_left = gini(left_counts, n_left);
                const double g_right = gini(right_counts, n_right);
                const double decrease =
                    node_gini - (static_cast<double>(n_left) * g_left +
                                 static_cast<double>(n_right) * g_right) /
                                    static_cast<double>(n);
                // strict improvement keeps the lowest feature then threshold on ties
                if (decrease > best.decrease) {
                    best.feature = f;
                    best.threshold = 0.5 * (vals[k].first + vals[k + 1].first);
                    best.decrease = decrease;
                }
            }
        }
        return best;
    }
};

int predict_class(const TreeNode* node, std::span<const double> row) {
    while (!node->is_leaf()) {
        node = row[static_cast<std::size_t>(node->feature)] <= node->threshold
                   ? node->left.get()
                   : node->right.get();
    }
    const auto it = std::max_element(node->class_counts.begin(), node->class_counts.end());
    return static_cast<int>(it - node->class_counts.begin());
}

int tree_depth(const TreeNode* node) {
    if (node == nullptr || node->is_leaf()) return 0;
    return 1 + std::max(tree_depth(node->left.get()), tree_depth(node->right.get()));
}

void normalize_importance(std::vector<double>& importance) {
    const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
    if (total > 0.0) {
        for (double& v : importance) v /= total;
    }
}

nlohmann::json tree_to_json(const TreeNode* node) {
    nlohmann::json j;
    if (node->is_leaf()) {
        j["counts"] = node->class_counts;
    } else {
        j["feature"] = node->feature;
        j["threshold"] = node->threshold;
        j["decrease"] = node->impurity_decrease;
        j["left"] = tree_to_json(node->left.get());
        j["right"] = tree_to_json(node->right.get());
    }
    return j;
}

std::unique_ptr<TreeNode> tree_from_json(const nlohmann::json& j) {
    auto node = std::make_unique<TreeNode>();
    if (j.contains("counts")) {
        node->class_counts = j.at("counts").get<std::vector<std::size_t>>();
    } else {
        node->feature = j.at("feature").get<int>();
        node->threshold = j.at("threshold").get<double>();
        node->impurity_decrease = j.at("decrease").get<double>();
        node->left = tree_from_json(j.at("left"));
        node->right = tree_from_json(j.at("right"));
    }
    return node;
}

}  // namespace

// ---------------------------------------------------------------- 1NN (features)

KnnFeatureModel knn1_train(const FeatureMatrix& train, bool standardize) {
    if (train.n_rows() == 0) throw EmptyTrain();
    KnnFeatureModel m;
    m.columns = train.column_names();
    m.labels = train.labels;
    m.standardized = standardize;
    const std::size_t p = train.n_cols();
    m.col_mean.assign(p, 0.0);
    m.col_scale.assign(p, 1.0);
    if (standardize) {
        for (std::size_t j = 0; j < p; ++j) {
            std::vector<double> col(train.n_rows());
            for (std::size_t i = 0; i < train.n_rows(); ++i) col[i] = train.rows[i][j];
            const Summary s = summarize(col);
            m.col_mean[j] = s.mean;
            m.col_scale[j] = s.sd > 0.0 ? s.sd : 1.0;
        }
    }
    m.train_rows.resize(train.n_rows());
    for (std::size_t i = 0; i < train.n_rows(); ++i) {
        m.train_rows[i].resize(p);
        for (std::size_t j = 0; j < p; ++j)
            m.train_rows[i][j] = (train.rows[i][j] - m.col_mean[j]) / m.col_scale[j];
    }
    return m;
}

std::vector<std::string> predict(const KnnFeatureModel& model, const FeatureMatrix& queries,
                                 unsigned jobs) {
    require_columns(model.columns, queries);
    std::vector<std::string> out(queries.n_rows());
    const std::size_t p = model.columns.size();
    parallel_for(queries.n_rows(), jobs, [&](std::size_t q) {
        std::vector<double> row(p);
        for (std::size_t j = 0; j < p; ++j)
            row[j] = (queries.rows[q][j] - model.col_mean[j]) / model.col_scale[j];
        double best = kInf;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < model.train_rows.size(); ++i) {
            double d = 0.0;
            for (std::size_t j = 0; j < p && d < best; ++j) {
                const double diff = row[j] - model.train_rows[i][j];
                d += diff * diff;
            }
            if (d < best) {
                best = d;
                best_i = i;
            }
        }
        out[q] = model.labels[best_i];
    });
    return out;
}

// ------------------------------------------------------------------------- DTW

DtwResult dtw_distance_full(std::span<const double> a, std::span<const double> b,
                            double window_percent, double cutoff) {
    const std::size_t n = a.size(), m = b.size();
    DtwResult res;
    std::size_t band = static_cast<std::size_t>(
        std::ceil(window_percent / 100.0 * static_cast<double>(std::max(n, m))));
    const std::size_t min_band = n > m ? n - m : m - n;
    if (band < min_band) {
        band = min_band;
        res.band_widened = true;
    }
    std::vector<double> prev(m + 1, kInf), cur(m + 1, kInf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        std::fill(cur.begin(), cur.end(), kInf);
        const std::size_t lo = i > band ? i - band : 1;
        const std::size_t hi = std::min(m, i + band);
        double row_min = kInf;
        for (std::size_t j = lo; j <= hi; ++j) {
            const double d = a[i - 1] - b[j - 1];
            const double step = std::min({prev[j], cur[j - 1], prev[j - 1]});
            cur[j] = d * d + step;
            row_min = std::min(row_min, cur[j]);
        }
        if (row_min > cutoff) {
            res.cost = kInf;
            return res;
        }
        std::swap(prev, cur);
    }
    res.cost = prev[m];
    return res;
}

double dtw_distance(std::span<const double> a, std::span<const double> b, double window_percent) {
    return dtw_distance_full(a, b, window_percent).cost;
}

double learn_dtw_window(const std::vector<TimeSeries>& train, const DtwConfig& config,
                        unsigned jobs) {
    const std::size_t n = train.size();
    if (config.candidate_grid.empty()) throw Error("empty DTW window grid");
    if (config.candidate_grid.size() == 1) return config.candidate_grid.front();
    double best_percent = config.candidate_grid.front();
    std::size_t best_correct = 0;
    for (const double percent : config.candidate_grid) {
        std::vector<unsigned char> correct(n, 0);
        parallel_for(n, jobs, [&](std::size_t i) {
            double best = kInf;
            std::size_t best_j = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const DtwResult r = dtw_distance_full(train[i].values(), train[j].values(),
                                                      percent, best);
                if (r.cost < best) {
                    best = r.cost;
                    best_j = j;
                }
            }
            correct[i] = best_j < n && train[best_j].label() == train[i].label() ? 1 : 0;
        });
        const std::size_t total =
            static_cast<std::size_t>(std::count(correct.begin(), correct.end(), 1));
        if (total > best_correct) {
            best_correct = total;
            best_percent = percent;
        }
    }
    return best_percent;
}

std::vector<std::string> knn1_raw(const std::vector<TimeSeries>& train,
                                  const std::vector<TimeSeries>& queries, RawMetric metric,
                                  double window_percent, unsigned jobs) {
    if (train.empty()) throw EmptyTrain();
    if (metric == RawMetric::Euclidean) {
        for (const auto& s : train) {
            if (s.size() != train.front().size())
                throw LengthMismatch("1NN-ED on raw series requires equal lengths");
        }
    }
    std::vector<std::string> out(queries.size());
    parallel_for(queries.size(), jobs, [&](std::size_t q) {
        const auto& query = queries[q].values();
        double best = kInf;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < train.size(); ++i) {
            double d;
            if (metric == RawMetric::Euclidean) {
                if (query.size() != train[i].values().size())
                    throw LengthMismatch("1NN-ED on raw series requires equal lengths");
                d = 0.0;
                for (std::size_t t = 0; t < query.size() && d < best; ++t) {
                    const double diff = query[t] - train[i].values()[t];
                    d += diff * diff;
                }
            } else {
                d = dtw_distance_full(query, train[i].values(), window_percent, best).cost;
            }
            if (d < best) {
                best = d;
                best_i = i;
            }
        }
        out[q] = train[best_i].label();
    });
    return out;
}

// ------------------------------------------------------------------- CART / RF

int CartModel::depth() const { return tree_depth(root.get()); }

CartModel cart_train(const FeatureMatrix& train, const TreeParams& params) {
    if (train.n_rows() == 0) throw EmptyTrain();
    CartModel m;
    m.columns = train.column_names();
    m.classes = sorted_classes(train.labels);
    m.params = params;
    const std::vector<int> y = encode_labels(train.labels, m.classes);
    m.importance.assign(train.n_cols(), 0.0);
    TreeBuilder builder{train.rows,      y, m.classes.size(), params, train.n_rows(),
                        m.importance, {}};
    std::vector<std::size_t> idx(train.n_rows());
    std::iota(idx.begin(), idx.end(), 0);
    m.root = builder.build(idx, 0);
    normalize_importance(m.importance);
    return m;
}

std::vector<std::string> predict(const CartModel& model, const FeatureMatrix& queries) {
    require_columns(model.columns, queries);
    std::vector<std::string> out(queries.n_rows());
    for (std::size_t q = 0; q < queries.n_rows(); ++q)
        out[q] = model.classes[static_cast<std::size_t>(
            predict_class(model.root.get(), queries.rows[q]))];
    return out;
}

ForestModel rf_train(const FeatureMatrix& train, const ForestParams& params, unsigned jobs) {
    if (train.n_rows() == 0) throw EmptyTrain();
    ForestModel m;
    m.columns = train.column_names();
    m.classes = sorted_classes(train.labels);
    m.params = params;
    const std::size_t p = train.n_cols();
    const std::size_t n = train.n_rows();
    if (m.params.mtry <= 0)
        m.params.mtry = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(p))));
    const std::vector<int> y = encode_labels(train.labels, m.classes);

    const std::size_t n_trees = static_cast<std::size_t>(m.params.n_trees);
    m.trees.resize(n_trees);
    std::vector<std::vector<double>> tree_importance(n_trees);
    const TreeParams tp{m.params.max_depth, m.params.min_leaf};

    parallel_for(n_trees, jobs, [&](std::size_t t) {
        std::mt19937_64 rng(splitmix64(m.params.seed + t));
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::vector<std::size_t> sample(n);
        for (std::size_t i = 0; i < n; ++i) sample[i] = pick(rng);
        std::vector<int> all_features(p);
        std::iota(all_features.begin(), all_features.end(), 0);
        tree_importance[t].assign(p, 0.0);
        auto selector = [&rng, &all_features, mtry = m.params.mtry]() mutable {
            std::vector<int> pool(all_features);
            std::vector<int> chosen;
            chosen.reserve(static_cast<std::size_t>(mtry));
            for (int k = 0; k < mtry && !pool.empty(); ++k) {
                std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
                const std::size_t at = d(rng);
                chosen.push_back(pool[at]);
                pool[at] = pool.back();
                pool.pop_back();
            }
            return chosen;
        };
        TreeBuilder builder{train.rows, y,  m.classes.size(), tp,
                            n,          tree_importance[t], selector};
        m.trees[t] = builder.build(sample, 0);
    });

    m.importance.assign(p, 0.0);
    for (const auto& imp : tree_importance) {
        for (std::size_t j = 0; j < p; ++j) m.importance[j] += imp[j];
    }
    for (double& v : m.importance) v /= static_cast<double>(n_trees);
    normalize_importance(m.importance);
    return m;
}

std::vector<std::string> predict(const ForestModel& model, const FeatureMatrix& queries,
                                 unsigned jobs) {
    require_columns(model.columns, queries);
    std::vector<std::string> out(queries.n_rows());
    parallel_for(queries.n_rows(), jobs, [&](std::size_t q) {
        std::vector<std::size_t> votes(model.classes.size(), 0);
        for (const auto& tree : model.trees)
            ++votes[static_cast<std::size_t>(predict_class(tree.get(), queries.rows[q]))];
        const auto it = std::max_element(votes.begin(), votes.end());
        out[q] = model.classes[static_cast<std::size_t>(it - votes.begin())];
    });
    return out;
}

// ------------------------------------------------------------- serialization

nlohmann::json to_json(const KnnFeatureModel& model) {
    return nlohmann::json{{"type", "knn-feat"},
                          {"columns", model.columns},
                          {"labels", model.labels},
                          {"train_rows", model.train_rows},
                          {"col_mean", model.col_mean},
                          {"col_scale", model.col_scale},
                          {"standardized", model.standardized}};
}

nlohmann::json to_json(const CartModel& model) {
    return nlohmann::json{{"type", "cart"},
                          {"columns", model.columns},
                          {"classes", model.classes},
                          {"max_depth", model.params.max_depth},
                          {"min_leaf", model.params.min_leaf},
                          {"importance", model.importance},
                          {"tree", tree_to_json(model.root.get())}};
}

nlohmann::json to_json(const ForestModel& model) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : model.trees) trees.push_back(tree_to_json(t.get()));
    return nlohmann::json{{"type", "rf"},
                          {"columns", model.columns},
                          {"classes", model.classes},
                          {"n_trees", model.params.n_trees},
                          {"mtry", model.params.mtry},
                          {"seed", model.params.seed},
                          {"max_depth", model.params.max_depth},
                          {"min_leaf", model.params.min_leaf},
                          {"importance", model.importance},
                          {"trees", std::move(trees)}};
}

KnnFeatureModel knn_from_json(const nlohmann::json& j) {
    KnnFeatureModel m;
    m.columns = j.at("columns").get<std::vector<std::string>>();
    m.labels = j.at("labels").get<std::vector<std::string>>();
    m.train_rows = j.at("train_rows").get<std::vector<std::vector<double>>>();
    m.col_mean = j.at("col_mean").get<std::vector<double>>();
    m.col_scale = j.at("col_scale").get<std::vector<double>>();
    m.standardized = j.at("standardized").get<bool>();
    return m;
}

CartModel cart_from_json(const nlohmann::json& j) {
    CartModel m;
    m.columns = j.at("columns").get<std::vector<std::string>>();
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.params.max_depth = j.at("max_depth").get<int>();
    m.params.min_leaf = j.at("min_leaf").get<int>();
    m.importance = j.at("importance").get<std::vector<double>>();
    m.root = tree_from_json(j.at("tree"));
    return m;
}

ForestModel forest_from_json(const nlohmann::json& j) {
    ForestModel m;
    m.columns = j.at("columns").get<std::vector<std::string>>();
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.params.n_trees = j.at("n_trees").get<int>();
    m.params.mtry = j.at("mtry").get<int>();
    m.params.seed = j.at("seed").get<std::uint64_t>();
    m.params.max_depth = j.at("max_depth").get<int>();
    m.params.min_leaf = j.at("min_leaf").get<int>();
    m.importance = j.at("importance").get<std::vector<double>>();
    for (const auto& t : j.at("trees")) m.trees.push_back(tree_from_json(t));
    return m;
}

}  // namespace cmfts
