#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cmfts/classify.hpp"
#include "cmfts/evaluate.hpp"
#include "cmfts/io.hpp"
#include "cmfts/parallel.hpp"
#include "cmfts/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

const std::vector<std::string> kModelNames = {"rf", "cart", "knn-feat", "knn-ed-raw",
                                              "knn-dtw-raw"};

bool is_input_error(const cmfts::Error& e) {
    return dynamic_cast<const cmfts::ParseError*>(&e) != nullptr ||
           dynamic_cast<const cmfts::RaggedRows*>(&e) != nullptr ||
           dynamic_cast<const cmfts::NonFiniteInput*>(&e) != nullptr ||
           dynamic_cast<const cmfts::IoError*>(&e) != nullptr ||
           dynamic_cast<const cmfts::HeaderMismatch*>(&e) != nullptr ||
           dynamic_cast<const cmfts::DatasetMismatch*>(&e) != nullptr ||
           dynamic_cast<const cmfts::UnsupportedAlpha*>(&e) != nullptr ||
           dynamic_cast<const cmfts::ArityError*>(&e) != nullptr ||
           dynamic_cast<const cmfts::LengthMismatch*>(&e) != nullptr ||
           dynamic_cast<const cmfts::EmptyTrain*>(&e) != nullptr;
}

int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const cmfts::Error& e) {
        std::cerr << "cmfts: " << e.what() << '\n';
        return is_input_error(e) ? kExitUsage : kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "cmfts: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

cmfts::FeatureParams params_with_seed(std::uint64_t seed) {
    cmfts::FeatureParams p;
    p.window.rng_seed = seed;
    return p;
}

json column_meta_json(const cmfts::FeatureMatrix& m) {
    json cols = json::array();
    for (const auto& c : m.columns) {
        json jc{{"name", c.name}};
        if (c.clamp_min) jc["clamp_min"] = *c.clamp_min;
        if (c.clamp_max) jc["clamp_max"] = *c.clamp_max;
        if (c.impute_mean) jc["impute_mean"] = *c.impute_mean;
        cols.push_back(std::move(jc));
    }
    return cols;
}

json cleaning_report_json(const cmfts::CleaningReport& rep, const cmfts::FeatureMatrix& train,
                          double threshold) {
    return json{{"na_fraction_threshold", threshold},
                {"dropped_columns", rep.dropped_columns},
                {"clamped_cells", rep.clamped_cells},
                {"imputed_cells", rep.imputed_cells},
                {"columns", column_meta_json(train)}};
}

void write_predictions_csv(const std::string& path, const std::vector<std::string>& truth,
                           const std::vector<std::string>& predicted) {
    std::ofstream out(path);
    if (!out) throw cmfts::IoError("cannot write predictions file: " + path);
    out << "index,truth,predicted\n";
    for (std::size_t i = 0; i < truth.size(); ++i)
        out << i << ',' << truth[i] << ',' << predicted[i] << '\n';
}

struct ClassifyOutcome {
    double acc = 0.0;
    std::vector<std::string> predictions;
    json model_json;
    json extra;  // model-specific metrics entries
};

// Shared by `classify` and `benchmark`: feature models reuse one cleaned
// matrix pair per dataset.
struct FeatureContext {
    cmfts::FeatureMatrix train, test;
    cmfts::CleaningReport report;
};

FeatureContext build_feature_context(const std::vector<cmfts::TimeSeries>& train,
                                     const std::vector<cmfts::TimeSeries>& test,
                                     std::uint64_t seed, unsigned jobs) {
    FeatureContext ctx;
    auto pair = cmfts::build_matrices(train, test, params_with_seed(seed), jobs);
    ctx.train = std::move(pair.first);
    ctx.test = std::move(pair.second);
    ctx.report = cmfts::clean(ctx.train, ctx.test);
    return ctx;
}

ClassifyOutcome run_model(const std::string& model, const std::vector<cmfts::TimeSeries>& train,
                          const std::vector<cmfts::TimeSeries>& test,
                          const std::optional<FeatureContext>& ctx, const std::string& dtw_window,
                          std::uint64_t seed, unsigned jobs, bool standardize = true) {
    ClassifyOutcome out;
    std::vector<std::string> truth;
    truth.reserve(test.size());
    for (const auto& s : test) truth.push_back(s.label());

    if (model == "rf" || model == "cart" || model == "knn-feat") {
        if (!ctx) throw cmfts::Error("internal: feature context missing");
        if (model == "rf") {
            cmfts::ForestParams fp;
            fp.seed = seed;
            const cmfts::ForestModel m = cmfts::rf_train(ctx->train, fp, jobs);
            out.predictions = cmfts::predict(m, ctx->test, jobs);
            out.model_json = cmfts::to_json(m);
            json imp = json::object();
            for (std::size_t j = 0; j < m.columns.size(); ++j) imp[m.columns[j]] = m.importance[j];
            out.extra["importance"] = std::move(imp);
        } else if (model == "cart") {
            const cmfts::CartModel m = cmfts::cart_train(ctx->train);
            out.predictions = cmfts::predict(m, ctx->test);
            out.model_json = cmfts::to_json(m);
            out.extra["tree_depth"] = m.depth();
        } else {
            const cmfts::KnnFeatureModel m = cmfts::knn1_train(ctx->train, standardize);
            out.predictions = cmfts::predict(m, ctx->test, jobs);
            out.model_json = cmfts::to_json(m);
        }
    } else if (model == "knn-ed-raw") {
        out.predictions = cmfts::knn1_raw(train, test, cmfts::RawMetric::Euclidean, 100.0, jobs);
        out.model_json = json{{"type", "knn-ed-raw"}};
    } else if (model == "knn-dtw-raw") {
        double window = 100.0;
        if (dtw_window == "learned") {
            window = cmfts::learn_dtw_window(train, {}, jobs);
            out.extra["dtw_window_learned"] = true;
        } else {
            window = std::stod(dtw_window);
            if (window < 0.0 || window > 100.0)
                throw cmfts::Error("dtw window percent must lie in [0, 100]");
        }
        out.extra["dtw_window_percent"] = window;
        out.predictions = cmfts::knn1_raw(train, test, cmfts::RawMetric::Dtw, window, jobs);
        out.model_json = json{{"type", "knn-dtw-raw"}, {"window_percent", window}};
    } else {
        throw cmfts::Error("unknown model: " + model);
    }
    out.acc = cmfts::accuracy(out.predictions, truth);
    return out;
}

bool is_feature_model(const std::string& m) {
    return m == "rf" || m == "cart" || m == "knn-feat";
}

// datasets-dir layout: one subdirectory per dataset holding
// <NAME>_TRAIN.<ext> and <NAME>_TEST.<ext>
std::vector<std::string> list_dataset_names(const std::string& dir) {
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        bool has_train = false, has_test = false;
        for (const auto& f : fs::directory_iterator(entry.path())) {
            const std::string fname = f.path().filename().string();
            if (fname.rfind(name + "_TRAIN", 0) == 0) has_train = true;
            if (fname.rfind(name + "_TEST", 0) == 0) has_test = true;
        }
        if (has_train && has_test) names.push_back(name);
    }
    if (ec) throw cmfts::IoError("cannot read datasets directory: " + dir);
    std::sort(names.begin(), names.end());
    return names;
}

void append_failure(const std::string& log_path, const std::string& dataset,
                    const std::string& what) {
    std::ofstream log(log_path, std::ios::app);
    log << dataset << ": " << what << '\n';
}

// ----------------------------------------------------------------- commands

int cmd_extract(const std::string& input, const std::string& output, std::uint64_t seed,
                unsigned jobs) {
    return run_guarded([&] {
        const std::vector<cmfts::TimeSeries> series = cmfts::parse_ucr(input);
        const cmfts::FeatureMatrix m = cmfts::build_matrix(series, params_with_seed(seed), jobs);
        cmfts::write_feature_csv(m, output);
    });
}

int cmd_clean(const std::string& train_path, const std::string& test_path,
              const std::string& out_dir, double threshold) {
    return run_guarded([&] {
        cmfts::FeatureMatrix train = cmfts::read_feature_csv(train_path);
        cmfts::FeatureMatrix test = cmfts::read_feature_csv(test_path);
        cmfts::CleanPolicy policy;
        policy.na_fraction_threshold = threshold;
        const cmfts::CleaningReport rep = cmfts::clean(train, test, policy);
        fs::create_directories(out_dir);
        cmfts::write_feature_csv(train, (fs::path(out_dir) / "train_clean.csv").string());
        cmfts::write_feature_csv(test, (fs::path(out_dir) / "test_clean.csv").string());
        cmfts::write_report_json(cleaning_report_json(rep, train, threshold),
                                 (fs::path(out_dir) / "cleaning_report.json").string());
    });
}

int cmd_classify(const std::string& train_path, const std::string& test_path,
                 const std::string& model, const std::string& dtw_window,
                 const std::string& out_dir, std::uint64_t seed, unsigned jobs,
                 bool standardize) {
    return run_guarded([&] {
        const std::vector<cmfts::TimeSeries> train = cmfts::parse_ucr(train_path);
        const std::vector<cmfts::TimeSeries> test = cmfts::parse_ucr(test_path);
        std::optional<FeatureContext> ctx;
        if (is_feature_model(model)) ctx = build_feature_context(train, test, seed, jobs);
        const ClassifyOutcome outcome =
            run_model(model, train, test, ctx, dtw_window, seed, jobs, standardize);

        fs::create_directories(out_dir);
        std::vector<std::string> truth;
        for (const auto& s : test) truth.push_back(s.label());
        write_predictions_csv((fs::path(out_dir) / "predictions.csv").string(), truth,
                              outcome.predictions);
        cmfts::write_report_json(outcome.model_json,
                                 (fs::path(out_dir) / "model.json").string());
        json metrics{{"model", model},
                     {"accuracy", outcome.acc},
                     {"n_train", train.size()},
                     {"n_test", test.size()},
                     {"seed", seed}};
        for (const auto& [k, v] : outcome.extra.items()) metrics[k] = v;
        if (ctx) {
            metrics["cleaning"] = cleaning_report_json(ctx->report, ctx->train, 0.2);
        }
        cmfts::write_report_json(metrics, (fs::path(out_dir) / "metrics.json").string());
        std::cout << "accuracy " << outcome.acc << '\n';
    });
}

int cmd_benchmark(const std::string& datasets_dir, const std::string& models_csv,
                  const std::string& out, const std::string& dtw_window, std::uint64_t seed,
                  unsigned jobs) {
    std::vector<std::string> models;
    {
        std::stringstream ss(models_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) models.push_back(item);
        }
    }
    if (models.empty()) {
        std::cerr << "cmfts: --models list is empty\n";
        return kExitUsage;
    }
    for (const auto& m : models) {
        if (std::find(kModelNames.begin(), kModelNames.end(), m) == kModelNames.end()) {
            std::cerr << "cmfts: unknown model: " << m << '\n';
            return kExitUsage;
        }
    }
    std::vector<std::string> names;
    try {
        names = list_dataset_names(datasets_dir);
    } catch (const cmfts::Error& e) {
        std::cerr << "cmfts: " << e.what() << '\n';
        return kExitUsage;
    }
    if (names.empty()) {
        std::cerr << "cmfts: no dataset subdirectories under " << datasets_dir << '\n';
        return kExitUsage;
    }

    cmfts::ResultsTable table;
    table.models = models;
    std::set<std::string> done;
    if (fs::exists(out)) {
        try {
            table = cmfts::read_results_csv(out);
        } catch (const cmfts::Error& e) {
            std::cerr << "cmfts: cannot resume from " << out << ": " << e.what() << '\n';
            return kExitUsage;
        }
        if (table.models != models) {
            std::cerr << "cmfts: existing results use a different model list\n";
            return kExitUsage;
        }
        done.insert(table.datasets.begin(), table.datasets.end());
    }

    const std::string failure_log = out + ".failures.log";
    std::size_t failures = 0;
    for (const std::string& name : names) {
        if (done.count(name)) {
            std::cout << name << ": already present, skipped\n";
            continue;
        }
        try {
            const cmfts::DatasetPair pair =
                cmfts::load_dataset_dir((fs::path(datasets_dir) / name).string(), name);
            std::optional<FeatureContext> ctx;
            const bool needs_features =
                std::any_of(models.begin(), models.end(), is_feature_model);
            if (needs_features) ctx = build_feature_context(pair.train, pair.test, seed, jobs);
            std::vector<double> row;
            for (const std::string& model : models) {
                const ClassifyOutcome r =
                    run_model(model, pair.train, pair.test, ctx, dtw_window, seed, jobs);
                row.push_back(r.acc);
            }
            table.datasets.push_back(name);
            table.accuracy.push_back(std::move(row));
            cmfts::write_results_csv(table, out);
            std::cout << name << ": done\n";
        } catch (const std::exception& e) {
            append_failure(failure_log, name, e.what());
            std::cerr << "cmfts: " << name << " failed: " << e.what() << '\n';
            ++failures;
        }
    }
    if (table.datasets.empty()) {
        std::cerr << "cmfts: every dataset failed\n";
        return kExitInternal;
    }
    return kExitOk;
}

int cmd_rank(const std::string& results, const std::string& external, double alpha,
             const std::string& out) {
    return run_guarded([&] {
        cmfts::ResultsTable table = cmfts::read_results_csv(results);
        if (!external.empty())
            table = cmfts::merge_results(table, cmfts::read_results_csv(external));
        const std::vector<double> ranks = cmfts::average_ranks(table);
        const std::vector<cmfts::Wlt> wlt = cmfts::wlt_ratio(table);
        json j{{"models", table.models},
               {"n_datasets", table.datasets.size()},
               {"alpha", alpha},
               {"avg_ranks", ranks}};
        json wlt_json = json::array();
        for (std::size_t i = 0; i < wlt.size(); ++i) {
            wlt_json.push_back({{"model", table.models[i]},
                                {"wins", wlt[i].wins},
                                {"losses", wlt[i].losses},
                                {"ties", wlt[i].ties}});
        }
        j["win_loss_tie"] = std::move(wlt_json);
        if (table.models.size() >= 3) {
            const cmfts::CdResult cd = cmfts::friedman_nemenyi(table, alpha);
            j["friedman_stat"] = cd.friedman_stat;
            j["critical_difference"] = cd.critical_difference;
            j["groups"] = cd.groups;
        } else {
            std::cerr << "cmfts: fewer than 3 models, critical difference omitted\n";
        }
        cmfts::write_report_json(j, out);
    });
}

int cmd_importance(const std::string& datasets_dir, const std::string& out, std::uint64_t seed,
                   unsigned jobs) {
    std::vector<std::string> names;
    try {
        names = list_dataset_names(datasets_dir);
    } catch (const cmfts::Error& e) {
        std::cerr << "cmfts: " << e.what() << '\n';
        return kExitUsage;
    }
    if (names.empty()) {
        std::cerr << "cmfts: no dataset subdirectories under " << datasets_dir << '\n';
        return kExitUsage;
    }
    return run_guarded([&] {
        std::vector<std::string> features;
        for (const auto n : cmfts::feature_names()) features.emplace_back(n);
        std::vector<std::string> dataset_names;
        std::vector<std::vector<double>> rows;
        for (const std::string& name : names) {
            const cmfts::DatasetPair pair =
                cmfts::load_dataset_dir((fs::path(datasets_dir) / name).string(), name);
            const FeatureContext ctx = build_feature_context(pair.train, pair.test, seed, jobs);
            cmfts::ForestParams fp;
            fp.seed = seed;
            const cmfts::ForestModel model = cmfts::rf_train(ctx.train, fp, jobs);
            // dropped columns carry zero importance in the canonical layout
            std::vector<double> full(features.size(), 0.0);
            for (std::size_t j = 0; j < model.columns.size(); ++j) {
                const auto it = std::find(features.begin(), features.end(), model.columns[j]);
                full[static_cast<std::size_t>(it - features.begin())] = model.importance[j];
            }
            dataset_names.push_back(name);
            rows.push_back(std::move(full));
            std::cout << name << ": done\n";
        }
        const cmfts::ImportanceReport rep =
            cmfts::importance_report(dataset_names, features, rows);
        json j{{"features", rep.features},
               {"datasets", rep.datasets},
               {"matrix", rep.matrix},
               {"mean", rep.mean},
               {"datasets_by_accumulated_importance", json::array()},
               {"seed", seed}};
        for (const std::size_t i : rep.dataset_order)
            j["datasets_by_accumulated_importance"].push_back(rep.datasets[i]);
        cmfts::write_report_json(j, out);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feature-based time-series classification toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    unsigned jobs = 0;  // 0: CMFTS_JOBS env or hardware concurrency

    auto* extract = app.add_subcommand("extract", "compute the raw 55-feature CSV for a dataset");
    std::string ex_input, ex_output;
    extract->add_option("--input", ex_input, "UCR-style dataset file")->required();
    extract->add_option("--output", ex_output, "feature CSV to write")->required();
    extract->add_option("--seed", seed, "master RNG seed");
    extract->add_option("--jobs", jobs, "worker threads")->envname("CMFTS_JOBS");

    auto* clean = app.add_subcommand("clean", "clean a train/test pair of feature CSVs");
    std::string cl_train, cl_test, cl_out;
    double cl_threshold = 0.2;
    clean->add_option("--train-features", cl_train, "raw train feature CSV")->required();
    clean->add_option("--test-features", cl_test, "raw test feature CSV")->required();
    clean->add_option("--out-dir", cl_out, "output directory")->required();
    clean->add_option("--na-threshold", cl_threshold, "drop columns at this train NA fraction");

    auto* classify = app.add_subcommand("classify", "train one model and score a test set");
    std::string cf_train, cf_test, cf_model, cf_window = "100", cf_out;
    bool cf_no_standardize = false;
    classify->add_option("--train", cf_train, "UCR-style train file")->required();
    classify->add_option("--test", cf_test, "UCR-style test file")->required();
    classify->add_option("--model", cf_model, "rf|cart|knn-feat|knn-ed-raw|knn-dtw-raw")
        ->required();
    classify->add_option("--dtw-window", cf_window, "percent in [0,100] or 'learned'");
    classify->add_option("--out-dir", cf_out, "output directory")->required();
    classify->add_flag("--no-standardize", cf_no_standardize,
                       "disable train-statistic z-scoring of feature columns (knn-feat)");
    classify->add_option("--seed", seed, "master RNG seed");
    classify->add_option("--jobs", jobs, "worker threads")->envname("CMFTS_JOBS");

    auto* benchmark = app.add_subcommand("benchmark", "score models over a datasets directory");
    std::string bm_dir, bm_models, bm_out, bm_window = "100";
    benchmark->add_option("--datasets-dir", bm_dir, "directory of dataset subdirectories")
        ->required();
    benchmark->add_option("--models", bm_models, "comma-separated model list")->required();
    benchmark->add_option("--out", bm_out, "results CSV (resumable)")->required();
    benchmark->add_option("--dtw-window", bm_window, "percent or 'learned' for dtw models");
    benchmark->add_option("--seed", seed, "master RNG seed");
    benchmark->add_option("--jobs", jobs, "worker threads")->envname("CMFTS_JOBS");

    auto* rank = app.add_subcommand("rank", "average ranks, W/L/T and critical differences");
    std::string rk_results, rk_external, rk_out;
    double rk_alpha = 0.05;
    rank->add_option("--results", rk_results, "results CSV")->required();
    rank->add_option("--external", rk_external, "external results CSV to merge");
    rank->add_option("--alpha", rk_alpha, "significance level (0.05 or 0.10)");
    rank->add_option("--out", rk_out, "report JSON to write")->required();

    auto* importance = app.add_subcommand("importance", "per-dataset RF feature importances");
    std::string im_dir, im_out;
    importance->add_option("--datasets-dir", im_dir, "directory of dataset subdirectories")
        ->required();
    importance->add_option("--out", im_out, "report JSON to write")->required();
    importance->add_option("--seed", seed, "master RNG seed");
    importance->add_option("--jobs", jobs, "worker threads")->envname("CMFTS_JOBS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    if (extract->parsed()) return cmd_extract(ex_input, ex_output, seed, jobs);
    if (clean->parsed()) return cmd_clean(cl_train, cl_test, cl_out, cl_threshold);
    if (classify->parsed()) {
        if (std::find(kModelNames.begin(), kModelNames.end(), cf_model) == kModelNames.end()) {
            std::cerr << "cmfts: unknown model: " << cf_model << "\nmodels: ";
            for (const auto& m : kModelNames) std::cerr << m << ' ';
            std::cerr << '\n';
            return kExitUsage;
        }
        if (cf_window != "learned") {
            try {
                (void)std::stod(cf_window);
            } catch (...) {
                std::cerr << "cmfts: --dtw-window must be a percent or 'learned'\n";
                return kExitUsage;
            }
        }
        return cmd_classify(cf_train, cf_test, cf_model, cf_window, cf_out, seed, jobs,
                            !cf_no_standardize);
    }
    if (benchmark->parsed()) return cmd_benchmark(bm_dir, bm_models, bm_out, bm_window, seed, jobs);
    if (rank->parsed()) return cmd_rank(rk_results, rk_external, rk_alpha, rk_out);
    if (importance->parsed()) return cmd_importance(im_dir, im_out, seed, jobs);
    return kExitUsage;
}
