#include "cmfts/evaluate.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace cmfts {

namespace {

// Nemenyi critical constants q_alpha for k = 3..20: the studentized range
// quantile at infinite df divided by sqrt(2) (the table popularized by
// Demsar's classifier-comparison protocol).
constexpr std::array<double, 18> kQ05 = {
    2.343700586, 2.569031773, 2.727774371, 2.849705420, 2.948320018, 3.030878450,
    3.101730341, 3.163683577, 3.218653607, 3.268003924, 3.312738593, 3.353617752,
    3.391230284, 3.426041379, 3.458424707, 3.488684799, 3.517073009, 3.543799132};
constexpr std::array<double, 18> kQ10 = {
    2.052292730, 2.291341497, 2.459515764, 2.588520602, 2.692732101, 2.779883608,
    2.854606431, 2.919888840, 2.977768251, 3.029694183, 3.076733468, 3.119693333,
    3.159198819, 3.195743433, 3.229723401, 3.261461490, 3.291223987, 3.319233060};

double round6(double v) { return std::round(v * 1e6) / 1e6; }

void check_table(const ResultsTable& t) {
    if (t.accuracy.size() != t.datasets.size())
        throw DimensionMismatch("accuracy rows do not match dataset names");
    for (const auto& row : t.accuracy) {
        if (row.size() != t.models.size())
            throw DimensionMismatch("accuracy row width does not match model names");
    }
}

// Midranks of one dataset row, rank 1 = highest accuracy.
std::vector<double> row_ranks(const std::vector<double>& acc) {
    const std::size_t k = acc.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> rounded(k);
    for (std::size_t j = 0; j < k; ++j) rounded[j] = round6(acc[j]);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rounded[a] > rounded[b]; });
    std::vector<double> ranks(k);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && rounded[order[j + 1]] == rounded[order[i]]) ++j;
        const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mid;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double accuracy(const std::vector<std::string>& predicted, const std::vector<std::string>& truth) {
    if (predicted.size() != truth.size() || truth.empty())
        throw LengthMismatch("prediction and truth vectors must have equal nonzero length");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) correct += predicted[i] == truth[i] ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

std::vector<double> average_ranks(const ResultsTable& table) {
    check_table(table);
    const std::size_t k = table.models.size();
    if (k < 2) throw ArityError("ranking needs at least 2 models");
    if (table.datasets.empty()) throw ArityError("ranking needs at least 1 dataset");
    std::vector<double> sums(k, 0.0);
    for (const auto& row : table.accuracy) {
        const std::vector<double> ranks = row_ranks(row);
        for (std::size_t j = 0; j < k; ++j) sums[j] += ranks[j];
    }
    for (double& v : sums) v /= static_cast<double>(table.datasets.size());
    return sums;
}

std::vector<Wlt> wlt_ratio(const ResultsTable& table) {
    check_table(table);
    const std::size_t k = table.models.size();
    std::vector<Wlt> out(k);
    for (const auto& row : table.accuracy) {
        double top = -1.0;
        for (const double v : row) top = std::max(top, round6(v));
        std::size_t sharers = 0;
        for (const double v : row) sharers += round6(v) == top ? 1 : 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (round6(row[j]) != top) {
                ++out[j].losses;
            } else if (sharers == 1) {
                ++out[j].wins;
            } else {
                ++out[j].ties;
            }
        }
    }
    return out;
}

CdResult friedman_nemenyi(const ResultsTable& table, double alpha) {
    check_table(table);
    const std::size_t k = table.models.size();
    const std::size_t N = table.datasets.size();
    if (k < 3) throw ArityError("Nemenyi critical differences start at 3 models");
    if (k > 20) throw UnsupportedAlpha("critical constants shipped for 3..20 models only");
    if (N < 2) throw ArityError("Friedman test needs at least 2 datasets");
    const std::array<double, 18>* q_table = nullptr;
    if (std::abs(alpha - 0.05) < 1e-12) q_table = &kQ05;
    if (std::abs(alpha - 0.10) < 1e-12) q_table = &kQ10;
    if (q_table == nullptr)
        throw UnsupportedAlpha("alpha must be 0.05 or 0.10");

    CdResult res;
    res.models = table.models;
    res.alpha = alpha;
    res.avg_ranks = average_ranks(table);

    const double kd = static_cast<double>(k), Nd = static_cast<double>(N);
    double sum_r2 = 0.0;
    for (const double r : res.avg_ranks) sum_r2 += r * r;
    res.friedman_stat =
        12.0 * Nd / (kd * (kd + 1.0)) * (sum_r2 - kd * (kd + 1.0) * (kd + 1.0) / 4.0);

    const double q = (*q_table)[k - 3];
    res.critical_difference = q * std::sqrt(kd * (kd + 1.0) / (6.0 * Nd));

    // sorted sweep: every maximal run of models whose rank span stays below
    // the critical difference forms one group
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return res.avg_ranks[a] < res.avg_ranks[b];
    });
    std::size_t prev_end = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i;
        while (j + 1 < k &&
               res.avg_ranks[order[j + 1]] - res.avg_ranks[order[i]] < res.critical_difference)
            ++j;
        if (i == 0 || j + 1 > prev_end) {
            std::vector<std::string> group;
            for (std::size_t t = i; t <= j; ++t) group.push_back(table.models[order[t]]);
            res.groups.push_back(std::move(group));
            prev_end = j + 1;
        }
    }
    return res;
}

ImportanceReport importance_report(const std::vector<std::string>& datasets,
                                   const std::vector<std::string>& features,
                                   const std::vector<std::vector<double>>& per_dataset) {
    if (datasets.size() != per_dataset.size())
        throw DimensionMismatch("one importance vector per dataset required");
    for (const auto& row : per_dataset) {
        if (row.size() != features.size())
            throw DimensionMismatch("importance vectors must share the feature set");
    }
    ImportanceReport rep;
    rep.features = features;
    rep.datasets = datasets;
    rep.matrix = per_dataset;
    rep.mean.assign(features.size(), 0.0);
    for (const auto& row : per_dataset) {
        for (std::size_t j = 0; j < row.size(); ++j) rep.mean[j] += row[j];
    }
    if (!per_dataset.empty()) {
        for (double& v : rep.mean) v /= static_cast<double>(per_dataset.size());
    }
    std::vector<double> totals(per_dataset.size(), 0.0);
    for (std::size_t i = 0; i < per_dataset.size(); ++i)
        totals[i] = std::accumulate(per_dataset[i].begin(), per_dataset[i].end(), 0.0);
    rep.dataset_order.resize(per_dataset.size());
    std::iota(rep.dataset_order.begin(), rep.dataset_order.end(), 0);
    std::stable_sort(rep.dataset_order.begin(), rep.dataset_order.end(),
                     [&](std::size_t a, std::size_t b) { return totals[a] < totals[b]; });
    return rep;
}

ResultsTable read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open results file: " + path);
    ResultsTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (line_no == 1) {
            if (fields.size() < 2 || fields[0] != "dataset")
                throw ParseError("results header must start with 'dataset'");
            t.models.assign(fields.begin() + 1, fields.end());
            continue;
        }
        if (fields.size() != t.models.size() + 1)
            throw ParseError("results row " + std::to_string(line_no) + " has wrong arity");
        t.datasets.push_back(fields[0]);
        std::vector<double> row(t.models.size());
        for (std::size_t j = 1; j < fields.size(); ++j) {
            const std::string& f = fields[j];
            double v = 0.0;
            const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || p != f.data() + f.size())
                throw ParseError("bad accuracy in row " + std::to_string(line_no) + ": " + f);
            row[j - 1] = v;
        }
        t.accuracy.push_back(std::move(row));
    }
    if (t.models.empty()) throw ParseError("empty results file: " + path);
    return t;
}

void write_results_csv(const ResultsTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write results file: " + path);
    out << "dataset";
    for (const auto& m : table.models) out << ',' << m;
    out << '\n';
    for (std::size_t i = 0; i < table.datasets.size(); ++i) {
        out << table.datasets[i];
        char buf[64];
        for (const double v : table.accuracy[i]) {
            const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << std::string_view(buf, static_cast<std::size_t>(len));
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing results file: " + path);
}

ResultsTable merge_results(const ResultsTable& own, const ResultsTable& external) {
    check_table(own);
    check_table(external);
    std::map<std::string, std::size_t> ext_row;
    for (std::size_t i = 0; i < external.datasets.size(); ++i)
        ext_row[external.datasets[i]] = i;
    if (ext_row.size() != external.datasets.size())
        throw DatasetMismatch("duplicate dataset rows in external results");
    if (own.datasets.size() != external.datasets.size())
        throw DatasetMismatch("dataset sets differ between result tables");
    for (const auto& m : external.models) {
        if (std::find(own.models.begin(), own.models.end(), m) != own.models.end())
            throw DatasetMismatch("model " + m + " present in both tables");
    }
    ResultsTable merged;
    merged.datasets = own.datasets;
    merged.models = own.models;
    merged.models.insert(merged.models.end(), external.models.begin(), external.models.end());
    merged.accuracy.resize(own.datasets.size());
    for (std::size_t i = 0; i < own.datasets.size(); ++i) {
        const auto it = ext_row.find(own.datasets[i]);
        if (it == ext_row.end())
            throw DatasetMismatch("dataset " + own.datasets[i] + " missing from external results");
        merged.accuracy[i] = own.accuracy[i];
        const auto& ext = external.accuracy[it->second];
        merged.accuracy[i].insert(merged.accuracy[i].end(), ext.begin(), ext.end());
    }
    return merged;
}

}  // namespace cmfts
