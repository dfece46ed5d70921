#include "cmfts/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cmfts/feature_set.hpp"

namespace cmfts {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = line.find(sep, start);
        if (at == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, at - start));
        start = at + 1;
    }
    return fields;
}

double parse_value(const std::string& token, std::size_t line_no, std::size_t col) {
    const std::string t = trim(token);
    if (t.empty())
        throw ParseError("empty field at line " + std::to_string(line_no) + ", column " +
                         std::to_string(col));
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ParseError("malformed number '" + t + "' at line " + std::to_string(line_no) +
                         ", column " + std::to_string(col));
    return v;
}

}  // namespace

std::vector<TimeSeries> parse_ucr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open dataset file: " + path);
    std::vector<TimeSeries> series;
    std::string line;
    std::size_t line_no = 0;
    char sep = 0;
    std::size_t expected_len = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const bool has_tab = line.find('\t') != std::string::npos;
        const bool has_comma = line.find(',') != std::string::npos;
        if (has_tab && has_comma)
            throw ParseError("mixed separators at line " + std::to_string(line_no));
        const char line_sep = has_tab ? '\t' : ',';
        if (sep == 0) {
            if (!has_tab && !has_comma)
                throw ParseError("no separator found at line " + std::to_string(line_no));
            sep = line_sep;
        } else if ((has_tab || has_comma) && line_sep != sep) {
            throw ParseError("mixed separators at line " + std::to_string(line_no));
        }
        const std::vector<std::string> fields = split(line, sep);
        if (fields.size() < 2)
            throw ParseError("line " + std::to_string(line_no) + " has no values");
        std::vector<double> values(fields.size() - 1);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            const double v = parse_value(fields[j], line_no, j + 1);
            if (!std::isfinite(v))
                throw NonFiniteInput("non-finite value at line " + std::to_string(line_no) +
                                     ", column " + std::to_string(j + 1));
            values[j - 1] = v;
        }
        if (expected_len == 0) {
            expected_len = values.size();
        } else if (values.size() != expected_len) {
            throw RaggedRows("line " + std::to_string(line_no) + " has " +
                             std::to_string(values.size()) + " values, expected " +
                             std::to_string(expected_len));
        }
        series.emplace_back(std::move(values), trim(fields[0]), series.size());
    }
    if (series.empty()) throw ParseError("no series in dataset file: " + path);
    return series;
}

DatasetPair load_dataset_dir(const std::string& dir, const std::string& name) {
    namespace fs = std::filesystem;
    auto find_file = [&](const std::string& suffix) -> std::string {
        const std::string stem = name + suffix;
        std::vector<std::string> hits;
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            if (!entry.is_regular_file()) continue;
            const std::string fname = entry.path().filename().string();
            if (fname == stem || fname.rfind(stem + ".", 0) == 0) hits.push_back(entry.path().string());
        }
        if (ec) throw IoError("cannot read directory: " + dir);
        if (hits.empty()) throw IoError("missing " + stem + "[.*] in " + dir);
        std::sort(hits.begin(), hits.end());
        return hits.front();
    };
    DatasetPair pair;
    pair.name = name;
    pair.train = parse_ucr(find_file("_TRAIN"));
    pair.test = parse_ucr(find_file("_TEST"));
    return pair;
}

std::string format_double(double v) {
    char buf[64];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

void write_feature_csv(const FeatureMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write feature file: " + path);
    out << "label";
    for (const auto& c : m.columns) out << ',' << c.name;
    out << '\n';
    for (std::size_t i = 0; i < m.n_rows(); ++i) {
        out << m.labels[i];
        for (const double v : m.rows[i]) {
            out << ',';
            if (std::isnan(v)) {
                out << "NA";
            } else if (std::isinf(v)) {
                out << (v > 0 ? "inf" : "-inf");
            } else {
                out << format_double(v);
            }
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing feature file: " + path);
}

FeatureMatrix read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open feature file: " + path);
    FeatureMatrix m;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (line_no == 1) {
            if (fields.empty() || fields[0] != "label")
                throw HeaderMismatch("feature CSV header must start with 'label'");
            const auto& canon = feature_names();
            std::size_t cursor = 0;
            for (std::size_t j = 1; j < fields.size(); ++j) {
                // column names must be a subsequence of the canonical order
                while (cursor < canon.size() && canon[cursor] != fields[j]) ++cursor;
                if (cursor == canon.size())
                    throw HeaderMismatch("unknown or out-of-order feature column: " + fields[j]);
                ++cursor;
                m.columns.push_back({fields[j], {}, {}, {}});
            }
            if (m.columns.empty()) throw HeaderMismatch("feature CSV has no feature columns");
            continue;
        }
        if (fields.size() != m.columns.size() + 1)
            throw ParseError("feature row " + std::to_string(line_no) + " has wrong arity");
        m.labels.push_back(fields[0]);
        std::vector<double> row(m.columns.size());
        for (std::size_t j = 1; j < fields.size(); ++j) {
            const std::string t = trim(fields[j]);
            if (t == "NA") {
                row[j - 1] = kNaN;
            } else if (t == "inf") {
                row[j - 1] = std::numeric_limits<double>::infinity();
            } else if (t == "-inf") {
                row[j - 1] = -std::numeric_limits<double>::infinity();
            } else {
                row[j - 1] = parse_value(t, line_no, j + 1);
            }
        }
        m.rows.push_back(std::move(row));
    }
    if (m.columns.empty()) throw ParseError("empty feature file: " + path);
    return m;
}

void write_report_json(const nlohmann::json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report file: " + path);
    out << report.dump(2) << '\n';
    if (!out) throw IoError("failed writing report file: " + path);
}

}  // namespace cmfts
