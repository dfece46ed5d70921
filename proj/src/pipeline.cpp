#include "cmfts/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmfts/parallel.hpp"

namespace cmfts {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<std::string> FeatureMatrix::column_names() const {
    std::vector<std::string> names;
    names.reserve(columns.size());
    for (const auto& c : columns) names.push_back(c.name);
    return names;
}

FeatureMatrix build_matrix(const std::vector<TimeSeries>& series, const FeatureParams& params,
                           unsigned jobs) {
    FeatureMatrix m;
    m.columns.reserve(kFeatureCount);
    for (const auto name : feature_names()) m.columns.push_back({std::string(name), {}, {}, {}});
    m.labels.resize(series.size());
    m.rows.resize(series.size());
    parallel_for(series.size(), jobs, [&](std::size_t i) {
        m.labels[i] = series[i].label();
        m.rows[i] = extract_feature_vector(series[i], params);
    });
    return m;
}

std::pair<FeatureMatrix, FeatureMatrix> build_matrices(const std::vector<TimeSeries>& train,
                                                       const std::vector<TimeSeries>& test,
                                                       const FeatureParams& params, unsigned jobs) {
    if (train.empty()) throw EmptyTrain();
    return {build_matrix(train, params, jobs), build_matrix(test, params, jobs)};
}

void unify_nonfinite(FeatureMatrix& m) {
    for (auto& row : m.rows) {
        for (double& v : row) {
            if (std::isnan(v)) v = kNaN;
        }
    }
}

std::vector<std::string> drop_sparse_columns(FeatureMatrix& train, FeatureMatrix& test,
                                             const CleanPolicy& policy) {
    const std::size_t n_cols = train.n_cols();
    const double cutoff = policy.na_fraction_threshold * static_cast<double>(train.n_rows());
    std::vector<bool> drop(n_cols, false);
    std::vector<std::string> dropped;
    for (std::size_t j = 0; j < n_cols; ++j) {
        std::size_t na = 0;
        for (const auto& row : train.rows) na += std::isnan(row[j]) ? 1 : 0;
        if (static_cast<double>(na) >= cutoff) {
            drop[j] = true;
            dropped.push_back(train.columns[j].name);
        }
    }
    if (dropped.size() == n_cols) throw AllColumnsDropped();
    if (dropped.empty()) return dropped;
    auto filter = [&](FeatureMatrix& m) {
        for (auto& row : m.rows) {
            std::vector<double> kept;
            kept.reserve(n_cols - dropped.size());
            for (std::size_t j = 0; j < n_cols; ++j) {
                if (!drop[j]) kept.push_back(row[j]);
            }
            row = std::move(kept);
        }
        std::vector<ColumnMeta> cols;
        cols.reserve(n_cols - dropped.size());
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (!drop[j]) cols.push_back(std::move(m.columns[j]));
        }
        m.columns = std::move(cols);
    };
    filter(train);
    filter(test);
    return dropped;
}

std::size_t clamp_infinities(FeatureMatrix& train, FeatureMatrix& test) {
    std::size_t clamped = 0;
    for (std::size_t j = 0; j < train.n_cols(); ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        bool any_finite = false;
        for (const auto& row : train.rows) {
            const double v = row[j];
            if (std::isfinite(v)) {
                any_finite = true;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (!any_finite)
            throw NoFiniteValue("column " + train.columns[j].name + " has no finite train value");
        auto clamp_col = [&](FeatureMatrix& m) {
            for (auto& row : m.rows) {
                if (std::isinf(row[j])) {
                    row[j] = row[j] > 0 ? hi : lo;
                    ++clamped;
                }
            }
        };
        clamp_col(train);
        clamp_col(test);
        train.columns[j].clamp_min = lo;
        train.columns[j].clamp_max = hi;
        test.columns[j].clamp_min = lo;
        test.columns[j].clamp_max = hi;
    }
    return clamped;
}

std::size_t impute_means(FeatureMatrix& train, FeatureMatrix& test) {
    std::size_t imputed = 0;
    for (std::size_t j = 0; j < train.n_cols(); ++j) {
        double acc = 0.0;
        std::size_t cnt = 0;
        for (const auto& row : train.rows) {
            if (std::isfinite(row[j])) {
                acc += row[j];
                ++cnt;
            }
        }
        if (cnt == 0)
            throw NoFiniteValue("column " + train.columns[j].name + " has no finite train value");
        const double mean = acc / static_cast<double>(cnt);
        auto impute_col = [&](FeatureMatrix& m) {
            for (auto& row : m.rows) {
                if (std::isnan(row[j])) {
                    row[j] = mean;
                    ++imputed;
                }
            }
        };
        impute_col(train);
        impute_col(test);
        train.columns[j].impute_mean = mean;
        test.columns[j].impute_mean = mean;
    }
    return imputed;
}

CleaningReport clean(FeatureMatrix& train, FeatureMatrix& test, const CleanPolicy& policy) {
    if (train.n_rows() == 0) throw EmptyTrain();
    CleaningReport report;
    unify_nonfinite(train);
    unify_nonfinite(test);
    report.dropped_columns = drop_sparse_columns(train, test, policy);
    report.clamped_cells = clamp_infinities(train, test);
    report.imputed_cells = impute_means(train, test);
    return report;
}

}  // namespace cmfts
