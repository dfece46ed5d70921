// Acceptance suite: one pass/fail line per criterion.
//
//   1  feature oracles (derived examples against independent references)
//   2  cleaning-pipeline fidelity fixture
//   3  GunPoint end-to-end (needs data/ucr/GunPoint)
//   4  desk-scale benchmark rank ordering (needs >= 8 small UCR datasets)
//   5  rank / critical-difference machinery against hand-computed values
//   6  invariance suites over 100 seeded series each
//   7  determinism across worker counts (CLI end-to-end)
//
// Usage: acceptance [--criteria 1,2,5] [--data-dir DIR]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cmfts/classify.hpp"
#include "cmfts/evaluate.hpp"
#include "cmfts/io.hpp"
#include "cmfts/pipeline.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cmfts;

namespace {

std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ------------------------------------------------------------- criterion 1

bool criterion1_feature_oracles() {
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note("criterion 1: " + what);
        }
    };

    // direct-summation acf
    expect(std::abs(acf(std::vector<double>{1, 2, 3, 4, 5}, 1)[0] - 0.4) < 1e-12,
           "acf([1..5], 1) != 0.4");
    std::vector<double> alternating(100);
    for (std::size_t t = 0; t < 100; ++t) alternating[t] = t % 2 == 0 ? 1.0 : -1.0;
    expect(std::abs(acf(alternating, 1)[0] + 0.99) < 0.001, "alternating acf not near -0.99");

    // zscore formula
    const std::vector<double> z = zscore(std::vector<double>{1, 2, 3});
    expect(std::abs(z[0] + 1.2247448713915890) < 1e-9, "zscore[0]");

    // periodogram against the naive DFT
    for (const std::size_t n : {24u, 37u, 64u}) {
        const std::vector<double> xs = oracle::gaussian_noise(n, 900 + n);
        const auto pg = periodogram(xs);
        const auto ref = oracle::dft_powers(xs);
        for (std::size_t k = 0; k < ref.size(); ++k) {
            expect(close_rel(pg[k].power, ref[k], 1e-9), "periodogram vs naive DFT");
        }
    }

    // LZ76 hand parses
    expect(std::abs(lempel_ziv(std::vector<double>(8, 1.0)) - 0.75) < 1e-12,
           "LZ76 constant parse");
    std::vector<double> alt16(16);
    for (std::size_t t = 0; t < 16; ++t) alt16[t] = t % 2 == 0 ? 0.0 : 1.0;
    expect(std::abs(lempel_ziv(alt16) - 0.75) < 1e-12, "LZ76 alternating parse");
    expect(std::abs(lempel_ziv(oracle::uniform_noise(10000, 21)) - 1.0) < 0.1,
           "LZ76 random normalization");

    // entropy family
    std::vector<double> periodic(100);
    for (std::size_t t = 0; t < 100; ++t) periodic[t] = t % 2 == 0 ? 1.0 : 2.0;
    expect(approximate_entropy(periodic) < 0.05, "ApEn periodic");
    expect(approximate_entropy(oracle::uniform_noise(500, 33)) > approximate_entropy(periodic),
           "ApEn random > periodic");
    expect(std::abs(sample_entropy(periodic)) < 1e-9, "SampEn periodic");
    std::vector<double> inc(50);
    for (std::size_t t = 0; t < 50; ++t) inc[t] = static_cast<double>(t);
    expect(permutation_entropy(inc) == 0.0, "PermEn increasing");
    expect(std::abs(permutation_entropy(oracle::uniform_noise(100000, 8)) - 1.0) < 0.02,
           "PermEn uniform");
    expect(forbidden_patterns(inc) == 23.0, "forbidden increasing");
    expect(forbidden_patterns(oracle::uniform_noise(100000, 9)) == 0.0, "forbidden random");

    std::vector<double> two_level(10);
    for (std::size_t t = 0; t < 10; ++t) two_level[t] = t < 5 ? 0.0 : 1.0;
    expect(std::abs(shannon_entropy_cs(two_level) - std::numbers::ln2) < 0.01,
           "Chao-Shen [5,5] near log 2");
    expect(shannon_entropy_cs(std::vector<double>(50, 1.0)) == 0.0, "Chao-Shen constant");
    expect(shannon_entropy_sg(std::vector<double>(100, 7.0)) < 0.1, "SG constant small");

    std::vector<double> tone(64);
    for (std::size_t t = 0; t < 64; ++t)
        tone[t] = std::sin(2.0 * std::numbers::pi * 4.0 * static_cast<double>(t) / 64.0);
    expect(spectral_entropy(tone) < 0.05, "spectral entropy tone");
    expect(spectral_entropy(oracle::gaussian_noise(4096, 6)) > 0.95, "spectral entropy noise");

    std::vector<double> pm(50);
    for (std::size_t t = 0; t < 50; ++t) pm[t] = t % 2 == 0 ? -1.0 : 1.0;
    expect(std::abs(kurtosis(pm) + 2.0) < 1e-12, "kurtosis two-point");
    expect(std::abs(kurtosis(oracle::gaussian_noise(100000, 15))) < 0.1, "kurtosis normal");
    expect(std::abs(skewness(std::vector<double>{0, 0, 0, 1}) - 1.1547005383792515) < 1e-9,
           "skewness hand value");

    // statistical features
    std::vector<double> step(40, 0.0);
    std::fill(step.begin() + 20, step.end(), 10.0);
    const ShiftFeatures sf = shift_features(step);
    expect(sf.max_level_shift == 10.0 && sf.time_level_shift == 21.0, "level shift step");
    const RollingMoments rm = rolling_moments(step);
    expect(std::abs(rm.stability - 100.0 / 3.0) < 1e-12, "stability step");
    expect(crossing_points(std::vector<double>{0, 2, 0, 2, 0}) == 4.0, "crossing count");
    expect(flat_spots(std::vector<double>(37, 2.0)) == 37.0, "flat spots constant");
    std::vector<double> ramp100(100);
    for (std::size_t t = 0; t < 100; ++t) ramp100[t] = static_cast<double>(t);
    expect(flat_spots(ramp100) == 10.0, "flat spots ramp");
    expect(std::abs(std1st_der(std::vector<double>{1, 3, 2}) - std::sqrt(4.5)) < 1e-12,
           "std1st_der hand value");
    expect(std::abs(trev_num(std::vector<double>{1, 2, 3}) - 1.0) < 1e-12, "trev hand value");

    std::vector<double> cosine(200);
    for (std::size_t t = 0; t < 200; ++t)
        cosine[t] = std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / 12.0);
    expect(acf_timings(cosine).firstmin_ac == 6.0, "firstmin cosine");

    expect(holt_parameters(ramp100).alpha > 0.9, "holt ramp alpha");
    const DecompositionFeatures df = decomposition_features(ramp100);
    expect(std::abs(df.trend - 1.0) < 1e-9 && std::abs(df.curvature) < 1e-6, "decomposition ramp");
    expect(decomposition_features(oracle::gaussian_noise(1000, 91)).trend < 0.2,
           "decomposition noise");
    expect(std::abs(embed2_incircle(oracle::gaussian_noise(100000, 41)) -
                    (1.0 - std::exp(-0.5))) < 0.01,
           "embed2 chi-square mass");
    expect(std::abs(hurst(oracle::gaussian_noise(4096, 1)) - 0.5) <= 0.1, "hurst white noise");
    expect(hurst(oracle::random_walk(4096, 2)) > 0.8, "hurst random walk");

    const std::vector<double> wn500 = oracle::gaussian_noise(500, 21);
    std::vector<double> trendy(500);
    for (std::size_t t = 0; t < 500; ++t)
        trendy[t] = 0.05 * static_cast<double>(t) + 0.2 * wn500[t];
    expect(unitroot_kpss(trendy) < 0.146, "kpss trend-stationary");
    expect(unitroot_kpss(oracle::random_walk(500, 22)) > 0.146, "kpss random walk");
    expect(unitroot_pp(oracle::gaussian_noise(1000, 12)) < -50.0, "pp white noise");
    expect(std::abs(unitroot_pp(oracle::random_walk(1000, 11))) < 30.0, "pp random walk");

    std::vector<double> mass(100, 0.0);
    std::fill(mass.begin() + 90, mass.end(), 1.0);
    expect(std::abs(histogram_mode(mass) - 0.05) < 1e-12, "histogram mode low bin");
    const double ls = localsimple_taures(oracle::gaussian_noise(1000, 61));
    expect(ls >= 1.0 && ls <= 2.0, "localsimple white noise");
    expect(std::abs(outlierinclude_mdrmd(oracle::gaussian_noise(10000, 81))) < 0.05,
           "mdrmd symmetric");
    std::vector<double> late(1000);
    const std::vector<double> jitter = oracle::uniform_noise(1000, 82);
    for (std::size_t t = 0; t < 1000; ++t) late[t] = (t < 900 ? 0.0 : 10.0) + 1e-3 * jitter[t];
    expect(std::abs(outlierinclude_mdrmd(late) - 0.45) < 0.03, "mdrmd late extremes");
    std::vector<double> altpm(100);
    for (std::size_t t = 0; t < 100; ++t) altpm[t] = t % 2 == 0 ? 1.0 : -1.0;
    expect(std::abs(motiftwo_entro3(altpm) - std::numbers::ln2) < 1e-12, "motif alternating");

    // nonlinearity ordering
    const std::vector<double> e = oracle::gaussian_noise(2000, 31);
    std::vector<double> lin(e.size());
    double xacc = 0.0;
    for (std::size_t t = 0; t < e.size(); ++t) {
        xacc = 0.5 * xacc + e[t];
        lin[t] = xacc;
    }
    std::vector<double> quad(e.size());
    double y = 0.1;
    for (std::size_t t = 0; t < e.size(); ++t) {
        y = std::clamp(0.8 * y * y - 0.3 + 0.3 * e[t], -5.0, 5.0);
        quad[t] = y;
    }
    expect(nonlinearity(lin) < 1.0 && nonlinearity(quad) > 1.0, "nonlinearity ordering");

    // walker band and C28 behaviour
    const double wv = walker_propcross(oracle::gaussian_noise(10000, 51));
    expect(wv >= 0.4 && wv <= 0.6, "walker band");
    const double c28 = spreadrandomlocal_meantaul(oracle::gaussian_noise(1000, 71));
    expect(c28 >= 1.0 && c28 <= 3.0, "meantaul white noise");

    // dtw hand table
    expect(dtw_distance(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3, 3}) == 0.0,
           "dtw padding alignment");
    return ok;
}

// ------------------------------------------------------------- criterion 2

bool criterion2_cleaning_fidelity() {
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note("criterion 2: " + what);
        }
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    auto fixture = [&] {
        FeatureMatrix m;
        for (const char* n : {"A", "B", "C", "D"}) m.columns.push_back({n, {}, {}, {}});
        // 8 rows: A has 2 NA (25% -> dropped); B one +inf; C one -inf; D one NaN
        for (int i = 0; i < 8; ++i) {
            m.rows.push_back({static_cast<double>(i), static_cast<double>(i),
                              static_cast<double>(i), static_cast<double>(i)});
            m.labels.push_back("x");
        }
        m.rows[0][0] = nan;
        m.rows[1][0] = nan;
        m.rows[2][1] = inf;
        m.rows[3][2] = -inf;
        m.rows[4][3] = nan;
        return m;
    };
    FeatureMatrix train = fixture();
    FeatureMatrix test;
    test.columns = train.columns;
    test.rows.push_back({1.0, 2.0, 3.0, 4.0});
    test.labels.push_back("y");
    const CleaningReport rep = clean(train, test);
    expect(rep.dropped_columns == std::vector<std::string>{"A"}, "dropped exactly column A");
    expect(rep.clamped_cells == 2, "clamped one +inf and one -inf");
    expect(rep.imputed_cells == 1, "imputed one NaN");
    expect(train.rows[2][0] == 7.0, "+inf became the train max");
    expect(train.rows[3][1] == 0.0, "-inf became the train min");
    for (const auto& row : train.rows) {
        for (const double v : row) expect(std::isfinite(v), "cleaned cell finite");
    }

    // idempotence
    FeatureMatrix train2 = train, test2 = test;
    const CleaningReport rep2 = clean(train2, test2);
    expect(rep2.dropped_columns.empty() && rep2.clamped_cells == 0 && rep2.imputed_cells == 0,
           "second clean is a no-op");

    // test-set perturbations never move train-derived constants
    FeatureMatrix train3 = fixture();
    FeatureMatrix test3;
    test3.columns = train3.columns;
    test3.rows.push_back({-1e9, inf, nan, 1e9});
    test3.labels.push_back("y");
    const CleaningReport rep3 = clean(train3, test3);
    expect(rep3.dropped_columns == rep.dropped_columns, "drops are train-governed");
    for (std::size_t j = 0; j < train3.n_cols(); ++j) {
        expect(train3.columns[j].clamp_min == train.columns[j].clamp_min &&
                   train3.columns[j].clamp_max == train.columns[j].clamp_max &&
                   train3.columns[j].impute_mean == train.columns[j].impute_mean,
               "clamp/impute constants are train-governed");
    }
    return ok;
}

// ------------------------------------------------------------- criterion 3

struct GunPointResult {
    double rf_acc = 0.0;
    double cart_acc = 0.0;
    int cart_depth = 0;
    std::vector<std::string> top10;
};

bool criterion3_gunpoint(const std::string& data_dir) {
    const std::string dir = data_dir + "/GunPoint";
    if (!fs::exists(dir)) {
        note("criterion 3: dataset not available: " + dir +
             " (place the UCR GunPoint_TRAIN/GunPoint_TEST files there)");
        return false;
    }
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note("criterion 3: " + what);
        }
    };
    const DatasetPair pair = load_dataset_dir(dir, "GunPoint");
    expect(pair.train.size() == 50 && pair.test.size() == 150, "GunPoint split is 50/150");

    FeatureParams params;
    auto matrices = build_matrices(pair.train, pair.test, params, 0);
    FeatureMatrix ftrain = std::move(matrices.first);
    FeatureMatrix ftest = std::move(matrices.second);
    clean(ftrain, ftest);

    std::vector<std::string> truth;
    for (const auto& s : pair.test) truth.push_back(s.label());

    ForestParams fp;
    fp.seed = 42;
    const ForestModel rf = rf_train(ftrain, fp, 0);
    const double rf_acc = accuracy(predict(rf, ftest, 0), truth);
    expect(rf_acc >= 0.85, "RF accuracy " + std::to_string(rf_acc) + " below 0.85");

    TreeParams tp;
    tp.max_depth = 4;
    const CartModel cart = cart_train(ftrain, tp);
    const double cart_acc = accuracy(predict(cart, ftest), truth);
    expect(cart.depth() <= 4, "CART depth above 4");
    expect(cart_acc >= 0.80, "depth-4 CART accuracy " + std::to_string(cart_acc) + " below 0.80");

    std::vector<std::size_t> order(rf.columns.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rf.importance[a] > rf.importance[b]; });
    bool named_present = false;
    std::string listing;
    for (std::size_t k = 0; k < std::min<std::size_t>(10, order.size()); ++k) {
        const std::string& name = rf.columns[order[k]];
        listing += (k ? ", " : "") + name;
        if (name == "C35_stability" || name == "C6_shannon_entropy_SG") named_present = true;
    }
    expect(named_present, "top-10 importances lack stability/shannon_entropy_SG: " + listing);
    note("criterion 3 detail: rf_acc=" + std::to_string(rf_acc) +
         " cart_acc=" + std::to_string(cart_acc) + " top10=[" + listing + "]");
    return ok;
}

// ------------------------------------------------------------- criterion 4

bool criterion4_benchmark_ordering(const std::string& data_dir) {
    const std::vector<std::string> roster = {
        "GunPoint", "ItalyPowerDemand", "ECG200",    "Coffee",          "Beef",
        "Wine",     "Plane",            "OliveOil",  "ArrowHead",       "SonyAIBORobotSurface1"};
    std::vector<std::string> present;
    for (const auto& name : roster) {
        if (fs::exists(fs::path(data_dir) / name)) present.push_back(name);
    }
    if (present.size() < 8) {
        note("criterion 4: only " + std::to_string(present.size()) +
             " of the small-dataset roster present under " + data_dir + " (need >= 8)");
        return false;
    }
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note("criterion 4: " + what);
        }
    };
    ResultsTable table;
    table.models = {"CMFTS+RF", "CMFTS+CART", "CMFTS+1NN-ED", "1NN-ED"};
    for (const auto& name : present) {
        const DatasetPair pair = load_dataset_dir((fs::path(data_dir) / name).string(), name);
        auto matrices = build_matrices(pair.train, pair.test, {}, 0);
        FeatureMatrix ftrain = std::move(matrices.first);
        FeatureMatrix ftest = std::move(matrices.second);
        clean(ftrain, ftest);
        std::vector<std::string> truth;
        for (const auto& s : pair.test) truth.push_back(s.label());

        ForestParams fp;
        fp.seed = 42;
        const double rf_acc = accuracy(predict(rf_train(ftrain, fp, 0), ftest, 0), truth);
        const double cart_acc = accuracy(predict(cart_train(ftrain), ftest), truth);
        const double knn_feat_acc = accuracy(predict(knn1_train(ftrain), ftest, 0), truth);
        const double knn_raw_acc =
            accuracy(knn1_raw(pair.train, pair.test, RawMetric::Euclidean, 100.0, 0), truth);
        table.datasets.push_back(name);
        table.accuracy.push_back({rf_acc, cart_acc, knn_feat_acc, knn_raw_acc});
        note("criterion 4 detail: " + name + " rf=" + std::to_string(rf_acc) +
             " cart=" + std::to_string(cart_acc) + " knn-feat=" + std::to_string(knn_feat_acc) +
             " knn-raw=" + std::to_string(knn_raw_acc));
    }
    const std::vector<double> ranks = average_ranks(table);
    note("criterion 4 detail: avg ranks rf=" + std::to_string(ranks[0]) +
         " cart=" + std::to_string(ranks[1]) + " knn-feat=" + std::to_string(ranks[2]) +
         " knn-raw=" + std::to_string(ranks[3]));
    expect(ranks[0] < ranks[1], "CMFTS+RF does not outrank CMFTS+CART");
    expect(ranks[0] < ranks[2], "CMFTS+RF does not outrank CMFTS+1NN-ED");
    expect(ranks[2] <= ranks[3] + 1.0, "CMFTS+1NN-ED more than one rank behind raw 1NN-ED");
    return ok;
}

// ------------------------------------------------------------- criterion 5

bool criterion5_rank_machinery() {
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note("criterion 5: " + what);
        }
    };
    ResultsTable t;
    t.models = {"A", "B", "C", "D"};
    for (int i = 0; i < 20; ++i) {
        t.datasets.push_back("ds" + std::to_string(i));
        const int r = i % 3;
        double a = 0, b = 0, c = 0;
        if (r == 0) {
            a = 0.8;
            b = 0.7;
            c = 0.6;
        } else if (r == 1) {
            a = 0.6;
            b = 0.8;
            c = 0.7;
        } else {
            a = 0.7;
            b = 0.6;
            c = 0.8;
        }
        t.accuracy.push_back({a, b, c, 0.9});
    }
    const CdResult r = friedman_nemenyi(t, 0.05);
    // hand-derived: ranks (3.0, 2.95, 3.05, 1.0), chi^2 = 12*20/20*(28.005-25)
    expect(std::abs(r.friedman_stat - 36.06) < 1e-9, "Friedman statistic != 36.06");
    const double cd_expected = 2.569031773 * std::sqrt(4.0 * 5.0 / (6.0 * 20.0));
    expect(std::abs(r.critical_difference - cd_expected) < 1e-9, "CD mismatch");
    expect(r.groups.size() == 2 && r.groups[0] == std::vector<std::string>{"D"},
           "dominant model not isolated");
    for (const Wlt& w : wlt_ratio(t)) {
        expect(w.wins + w.losses + w.ties == 20, "W/L/T does not sum to 20");
    }
    return ok;
}

// ------------------------------------------------------------- criterion 6

bool criterion6_invariances() {
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note("criterion 6: " + what);
        }
    };
    auto close9 = [](double a, double b) {
        if (std::isnan(a) && std::isnan(b)) return true;
        return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    int affine_fail = 0, location_fail = 0, monotone_fail = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::vector<double> xs = oracle::ar1(150, 0.6, 7000 + seed);
        std::vector<double> ax(xs.size()), cx(xs.size()), mx(xs.size());
        for (std::size_t t = 0; t < xs.size(); ++t) {
            ax[t] = 2.5 * xs[t] - 7.0;   // positive affine
            cx[t] = xs[t] + 13.0;        // location shift
            mx[t] = std::exp(0.5 * xs[t]);  // strictly increasing
        }
        // affine: C11-C16, C22, C26, C27, C30-C33, C36, C50
        const AcfFeatures f1 = acf_features(xs), f2 = acf_features(ax);
        const PacfFeatures p1 = pacf_features(xs), p2 = pacf_features(ax);
        const AcfTimings t1 = acf_timings(xs), t2 = acf_timings(ax);
        bool aff = close9(f1.x_acf1, f2.x_acf1) && close9(f1.x_acf10, f2.x_acf10) &&
                   close9(f1.diff1_acf1, f2.diff1_acf1) && close9(f1.diff1_acf10, f2.diff1_acf10) &&
                   close9(f1.diff2_acf1, f2.diff2_acf1) && close9(f1.diff2_acf10, f2.diff2_acf10) &&
                   close9(f1.ac_9, f2.ac_9) && close9(nonlinearity(xs), nonlinearity(ax)) &&
                   close9(embed2_incircle(xs), embed2_incircle(ax)) &&
                   close9(p1.x_pacf5, p2.x_pacf5) && close9(p1.diff1x_pacf5, p2.diff1x_pacf5) &&
                   close9(p1.diff2x_pacf5, p2.diff2x_pacf5) &&
                   t1.firstmin_ac == t2.firstmin_ac && t1.firstzero_ac == t2.firstzero_ac &&
                   close9(unitroot_kpss(xs), unitroot_kpss(ax));
        if (!aff) ++affine_fail;
        // location: C23, C34, C35, C37, C52, C54
        const RollingMoments r1 = rolling_moments(xs), r2 = rolling_moments(cx);
        bool loc = crossing_points(xs) == crossing_points(cx) &&
                   close9(std1st_der(xs), std1st_der(cx)) && close9(r1.stability, r2.stability) &&
                   close9(trev_num(xs), trev_num(cx)) &&
                   close9(unitroot_pp(xs), unitroot_pp(cx)) &&
                   close9(r1.lumpiness, r2.lumpiness);
        if (!loc) ++location_fail;
        // monotone: ordinal statistics
        bool mono = close9(permutation_entropy(xs), permutation_entropy(mx)) &&
                    forbidden_patterns(xs) == forbidden_patterns(mx);
        if (!mono) ++monotone_fail;
    }
    expect(affine_fail == 0, "affine invariance failed on " + std::to_string(affine_fail) +
                                 " of 100 series");
    expect(location_fail == 0, "location invariance failed on " + std::to_string(location_fail) +
                                   " of 100 series");
    expect(monotone_fail == 0, "monotone invariance failed on " + std::to_string(monotone_fail) +
                                   " of 100 series");
    return ok;
}

// ------------------------------------------------------------- criterion 7

bool criterion7_determinism() {
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note("criterion 7: " + what);
        }
    };
    const fs::path tmp = fs::temp_directory_path() / "cmfts_acceptance_det";
    fs::remove_all(tmp);
    fs::create_directories(tmp / "data" / "Toy");
    {
        std::mt19937_64 rng(99);
        std::normal_distribution<double> d(0.0, 1.0);
        for (const char* split : {"_TRAIN.tsv", "_TEST.tsv"}) {
            std::ofstream out((tmp / "data" / "Toy" / (std::string("Toy") + split)).string());
            for (int i = 0; i < 20; ++i) {
                out << (i % 2 ? "1" : "2");
                for (int t = 0; t < 128; ++t) {
                    double v = d(rng);
                    if (i % 2)
                        v += std::sin(2.0 * std::numbers::pi * t / 16.0) * 2.0;
                    out << '\t' << v;
                }
                out << '\n';
            }
        }
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto run = [&](const std::string& args) {
        const std::string cmd = std::string(CMFTS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    const std::string train = (tmp / "data/Toy/Toy_TRAIN.tsv").string();
    const std::string test = (tmp / "data/Toy/Toy_TEST.tsv").string();

    expect(run("extract --input " + train + " --output " + (tmp / "f1.csv").string() +
               " --seed 42 --jobs 1") == 0,
           "extract run 1");
    expect(run("extract --input " + train + " --output " + (tmp / "f2.csv").string() +
               " --seed 42 --jobs 7") == 0,
           "extract run 2");
    expect(slurp(tmp / "f1.csv") == slurp(tmp / "f2.csv"), "feature CSVs differ across --jobs");

    expect(run("classify --train " + train + " --test " + test +
               " --model rf --seed 42 --jobs 1 --out-dir " + (tmp / "c1").string()) == 0,
           "classify run 1");
    expect(run("classify --train " + train + " --test " + test +
               " --model rf --seed 42 --jobs 5 --out-dir " + (tmp / "c2").string()) == 0,
           "classify run 2");
    expect(slurp(tmp / "c1/metrics.json") == slurp(tmp / "c2/metrics.json"),
           "metrics differ across --jobs");
    expect(slurp(tmp / "c1/model.json") == slurp(tmp / "c2/model.json"),
           "serialized models (importance vectors) differ across --jobs");
    expect(slurp(tmp / "c1/predictions.csv") == slurp(tmp / "c2/predictions.csv"),
           "predictions differ across --jobs");
    fs::remove_all(tmp);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::string criteria = "1,2,3,4,5,6,7";
    std::string data_dir = "data/ucr";
#ifdef CMFTS_DATA_DIR
    data_dir = CMFTS_DATA_DIR;
#endif
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criteria" && i + 1 < argc) criteria = argv[++i];
        if (arg == "--data-dir" && i + 1 < argc) data_dir = argv[++i];
    }
    std::set<int> selected;
    {
        std::stringstream ss(criteria);
        std::string item;
        while (std::getline(ss, item, ',')) selected.insert(std::stoi(item));
    }

    struct Criterion {
        int id;
        const char* name;
        std::function<bool()> run;
    };
    const std::vector<Criterion> all = {
        {1, "feature oracles", criterion1_feature_oracles},
        {2, "cleaning-pipeline fidelity", criterion2_cleaning_fidelity},
        {3, "GunPoint end-to-end", [&] { return criterion3_gunpoint(data_dir); }},
        {4, "desk-scale benchmark ordering", [&] { return criterion4_benchmark_ordering(data_dir); }},
        {5, "rank/CD machinery", criterion5_rank_machinery},
        {6, "invariance suites", criterion6_invariances},
        {7, "determinism across worker counts", criterion7_determinism},
    };

    int failures = 0;
    for (const auto& c : all) {
        if (!selected.count(c.id)) continue;
        g_notes.clear();
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            note(std::string("unexpected error: ") + e.what());
        }
        std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", c.id, c.name);
        for (const auto& n : g_notes) std::printf("    %s\n", n.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
