#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "cmfts/classify.hpp"
#include "oracles.hpp"

using namespace cmfts;

namespace {

FeatureMatrix toy_matrix(std::vector<std::string> cols, std::vector<std::vector<double>> rows,
                         std::vector<std::string> labels) {
    FeatureMatrix m;
    for (auto& c : cols) m.columns.push_back({std::move(c), {}, {}, {}});
    m.rows = std::move(rows);
    m.labels = std::move(labels);
    return m;
}

// two classes separable on the first feature; the second is noise
FeatureMatrix separable(std::size_t n_per_class, std::uint64_t seed) {
    const std::vector<double> noise = oracle::uniform_noise(2 * n_per_class * 2, seed);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
        const bool second = i >= n_per_class;
        rows.push_back({(second ? 10.0 : 0.0) + 0.1 * noise[2 * i], 5.0 * noise[2 * i + 1]});
        labels.push_back(second ? "b" : "a");
    }
    return toy_matrix({"f0", "f1"}, std::move(rows), std::move(labels));
}

// overlapping two-Gaussian problem with distractor features
FeatureMatrix gaussian_blobs(std::size_t n, std::uint64_t seed, std::size_t n_features = 10) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const bool pos = i % 2 == 1;
        std::vector<double> row(n_features);
        for (std::size_t j = 0; j < n_features; ++j) row[j] = d(rng);
        row[0] += pos ? 0.8 : -0.8;
        row[1] += pos ? 0.8 : -0.8;
        rows.push_back(std::move(row));
        labels.push_back(pos ? "1" : "0");
    }
    std::vector<std::string> cols;
    for (std::size_t j = 0; j < n_features; ++j) cols.push_back("f" + std::to_string(j));
    return toy_matrix(std::move(cols), std::move(rows), std::move(labels));
}

int count_internal_with_positive_decrease(const TreeNode* n, bool& all_positive) {
    if (n->is_leaf()) return 0;
    if (!(n->impurity_decrease > 0.0)) all_positive = false;
    return 1 + count_internal_with_positive_decrease(n->left.get(), all_positive) +
           count_internal_with_positive_decrease(n->right.get(), all_positive);
}

}  // namespace

TEST_CASE("knn1: zero distance, tie to the earlier row, separable accuracy") {
    const FeatureMatrix train =
        toy_matrix({"x"}, {{0.0}, {1.0}, {2.0}}, {"a", "b", "c"});
    const KnnFeatureModel model = knn1_train(train, false);
    const FeatureMatrix q1 = toy_matrix({"x"}, {{1.0}}, {""});
    CHECK(predict(model, q1) == std::vector<std::string>{"b"});

    // query equidistant from rows 0 and 1 resolves to row 0
    const FeatureMatrix tie_train = toy_matrix({"x"}, {{0.0}, {2.0}}, {"lo", "hi"});
    const KnnFeatureModel tie_model = knn1_train(tie_train, false);
    const FeatureMatrix tie_q = toy_matrix({"x"}, {{1.0}}, {""});
    CHECK(predict(tie_model, tie_q) == std::vector<std::string>{"lo"});

    const FeatureMatrix big = separable(20, 1);
    const FeatureMatrix queries = separable(10, 2);
    const KnnFeatureModel m2 = knn1_train(big);
    const std::vector<std::string> preds = predict(m2, queries);
    CHECK(preds == queries.labels);
}

TEST_CASE("knn1 with standardization is invariant to per-column rescaling") {
    const FeatureMatrix train = gaussian_blobs(60, 3);
    FeatureMatrix train_scaled = train;
    FeatureMatrix queries = gaussian_blobs(30, 4);
    FeatureMatrix queries_scaled = queries;
    for (auto& row : train_scaled.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = row[j] * (1000.0 * (j + 1)) + 5.0;
    }
    for (auto& row : queries_scaled.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = row[j] * (1000.0 * (j + 1)) + 5.0;
    }
    const auto a = predict(knn1_train(train), queries);
    const auto b = predict(knn1_train(train_scaled), queries_scaled);
    CHECK(a == b);
}

TEST_CASE("knn1 throws on column mismatch and empty train") {
    const FeatureMatrix train = toy_matrix({"x"}, {{0.0}}, {"a"});
    const KnnFeatureModel model = knn1_train(train, false);
    const FeatureMatrix wrong = toy_matrix({"y"}, {{0.0}}, {""});
    CHECK_THROWS_AS(predict(model, wrong), ColumnMismatch);
    CHECK_THROWS_AS(knn1_train(toy_matrix({"x"}, {}, {}), true), EmptyTrain);
}

TEST_CASE("dtw: identity, padding alignment, diagonal band") {
    const std::vector<double> a{1, 2, 3};
    CHECK(dtw_distance(a, a, 100.0) == doctest::Approx(0.0));
    CHECK(dtw_distance(a, a, 0.0) == doctest::Approx(0.0));
    const std::vector<double> b{1, 2, 3, 3};
    CHECK(dtw_distance(a, b, 100.0) == doctest::Approx(0.0));
    // window 0 on equal lengths reduces to the squared Euclidean distance
    const std::vector<double> c{2, 2, 4};
    double sq = 0.0;
    for (std::size_t t = 0; t < 3; ++t) sq += (a[t] - c[t]) * (a[t] - c[t]);
    CHECK(dtw_distance(a, c, 0.0) == doctest::Approx(sq));
}

TEST_CASE("dtw: symmetry and window monotonicity") {
    const std::vector<double> a = oracle::gaussian_noise(50, 5);
    const std::vector<double> b = oracle::gaussian_noise(50, 6);
    CHECK(dtw_distance(a, b, 100.0) == doctest::Approx(dtw_distance(b, a, 100.0)).epsilon(1e-12));
    double prev = std::numeric_limits<double>::infinity();
    for (const double w : {0.0, 10.0, 25.0, 50.0, 100.0}) {
        const double cost = dtw_distance(a, b, w);
        CHECK(cost <= prev + 1e-12);
        prev = cost;
    }
}

TEST_CASE("dtw widens an infeasible band and flags it") {
    const std::vector<double> a{1, 2, 3, 4, 5, 6};
    const std::vector<double> b{1, 2};
    const DtwResult r = dtw_distance_full(a, b, 0.0);
    CHECK(r.band_widened);
    CHECK(std::isfinite(r.cost));
}

TEST_CASE("learn_dtw_window: degenerate grid, shift-free data, membership") {
    std::vector<TimeSeries> train;
    for (int i = 0; i < 6; ++i) {
        std::vector<double> v = oracle::gaussian_noise(30, 10 + i);
        if (i % 2 == 1) {
            for (double& x : v) x += 8.0;
        }
        train.emplace_back(std::move(v), i % 2 == 1 ? "hi" : "lo");
    }
    DtwConfig single;
    single.candidate_grid = {35.0};
    CHECK(learn_dtw_window(train, single) == 35.0);
    const double learned = learn_dtw_window(train);
    CHECK(learned == 0.0);  // level separation needs no warping
    DtwConfig grid;
    grid.candidate_grid = {5.0, 50.0};
    const double w = learn_dtw_window(train, grid);
    CHECK((w == 5.0 || w == 50.0));
}

TEST_CASE("knn1_raw: euclidean needs equal lengths, dtw separates warped classes") {
    std::vector<TimeSeries> train;
    train.emplace_back(std::vector<double>{0, 0, 0}, "z");
    train.emplace_back(std::vector<double>{5, 5, 5}, "f");
    std::vector<TimeSeries> queries;
    queries.emplace_back(std::vector<double>{0.2, 0.1, 0.0}, "");
    CHECK(knn1_raw(train, queries, RawMetric::Euclidean) == std::vector<std::string>{"z"});

    std::vector<TimeSeries> ragged;
    ragged.emplace_back(std::vector<double>{0, 0}, "z");
    ragged.emplace_back(std::vector<double>{5, 5, 5}, "f");
    CHECK_THROWS_AS(knn1_raw(ragged, queries, RawMetric::Euclidean), LengthMismatch);
    CHECK(knn1_raw(ragged, queries, RawMetric::Dtw, 100.0) == std::vector<std::string>{"z"});
}

TEST_CASE("cart: single class collapses to a leaf") {
    const FeatureMatrix train = toy_matrix({"x"}, {{1.0}, {2.0}, {3.0}}, {"a", "a", "a"});
    const CartModel m = cart_train(train);
    CHECK(m.root->is_leaf());
    CHECK(m.depth() == 0);
    CHECK(predict(m, train) == std::vector<std::string>{"a", "a", "a"});
}

TEST_CASE("cart: threshold-separable data yields a depth-1 perfect tree") {
    const FeatureMatrix train = separable(10, 7);
    const CartModel m = cart_train(train);
    CHECK(m.depth() == 1);
    CHECK(predict(m, train) == train.labels);
    bool all_positive = true;
    count_internal_with_positive_decrease(m.root.get(), all_positive);
    CHECK(all_positive);
    CHECK(m.importance[0] == doctest::Approx(1.0));
    CHECK(m.importance[1] == doctest::Approx(0.0));
}

TEST_CASE("cart: every internal node carries a positive impurity decrease") {
    const FeatureMatrix train = gaussian_blobs(120, 9);
    const CartModel m = cart_train(train);
    bool all_positive = true;
    const int internal = count_internal_with_positive_decrease(m.root.get(), all_positive);
    CHECK(internal > 0);
    CHECK(all_positive);
}

TEST_CASE("deep cart overfits the training matrix on distinct rows") {
    const FeatureMatrix train = gaussian_blobs(80, 11);
    TreeParams p;
    p.min_leaf = 1;
    const CartModel m = cart_train(train, p);
    CHECK(predict(m, train) == train.labels);
    const FeatureMatrix empty = toy_matrix(train.column_names(), {}, {});
    CHECK(predict(m, empty).empty());
}

TEST_CASE("rf: same seed reproduces the forest, importance is normalized") {
    const FeatureMatrix train = gaussian_blobs(60, 13);
    ForestParams p;
    p.n_trees = 25;
    const ForestModel a = rf_train(train, p, 1);
    const ForestModel b = rf_train(train, p, 4);
    CHECK(a.importance == b.importance);
    const FeatureMatrix queries = gaussian_blobs(40, 14);
    CHECK(predict(a, queries) == predict(b, queries));
    double total = 0.0;
    for (const double v : a.importance) total += v;
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("rf: constant columns get zero importance, informative ones dominate") {
    FeatureMatrix train = separable(15, 17);
    for (auto& row : train.rows) row.push_back(1.0);  // constant third column
    train.columns.push_back({"const", {}, {}, {}});
    ForestParams p;
    p.n_trees = 50;
    const ForestModel m = rf_train(train, p);
    CHECK(m.importance[2] == 0.0);
    CHECK(m.importance[0] > m.importance[1]);
    CHECK(m.importance[0] > 0.5);
}

TEST_CASE("rf beats a single tree on average over seeds (two-Gaussian toy)") {
    double rf_total = 0.0, cart_total = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FeatureMatrix train = gaussian_blobs(200, 100 + seed);
        const FeatureMatrix test = gaussian_blobs(300, 200 + seed);
        ForestParams fp;
        fp.n_trees = 100;
        fp.seed = seed;
        const ForestModel rf = rf_train(train, fp, 4);
        const CartModel cart = cart_train(train);
        const auto rf_pred = predict(rf, test, 4);
        const auto cart_pred = predict(cart, test);
        std::size_t rf_ok = 0, cart_ok = 0;
        for (std::size_t i = 0; i < test.labels.size(); ++i) {
            rf_ok += rf_pred[i] == test.labels[i] ? 1 : 0;
            cart_ok += cart_pred[i] == test.labels[i] ? 1 : 0;
        }
        rf_total += static_cast<double>(rf_ok);
        cart_total += static_cast<double>(cart_ok);
    }
    CHECK(rf_total > cart_total);
}

TEST_CASE("forest vote ties resolve to the lowest class label") {
    ForestModel m;
    m.columns = {"x"};
    m.classes = {"alpha", "beta"};
    m.params.n_trees = 2;
    auto leaf_for = [](std::size_t cls) {
        auto n = std::make_unique<TreeNode>();
        n->class_counts = cls == 0 ? std::vector<std::size_t>{3, 0} : std::vector<std::size_t>{0, 3};
        return n;
    };
    m.trees.push_back(leaf_for(0));
    m.trees.push_back(leaf_for(1));
    const FeatureMatrix q = toy_matrix({"x"}, {{0.0}}, {""});
    CHECK(predict(m, q) == std::vector<std::string>{"alpha"});
}

TEST_CASE("model serialization round-trips predictions") {
    const FeatureMatrix train = gaussian_blobs(60, 19);
    const FeatureMatrix queries = gaussian_blobs(30, 20);

    ForestParams fp;
    fp.n_trees = 20;
    const ForestModel rf = rf_train(train, fp);
    const ForestModel rf2 = forest_from_json(to_json(rf));
    CHECK(predict(rf, queries) == predict(rf2, queries));
    CHECK(rf2.importance == rf.importance);

    const CartModel cart = cart_train(train);
    const CartModel cart2 = cart_from_json(to_json(cart));
    CHECK(predict(cart, queries) == predict(cart2, queries));

    const KnnFeatureModel knn = knn1_train(train);
    const KnnFeatureModel knn2 = knn_from_json(to_json(knn));
    CHECK(predict(knn, queries) == predict(knn2, queries));
}
