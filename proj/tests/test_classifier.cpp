#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "chaosnet/classifier.hpp"
#include "chaosnet/errors.hpp"
#include "chaosnet/rng.hpp"

using namespace chaosnet;

namespace {

Hyperparams worked_example_params() {
    return {.q = 0.23, .threshold = 0.56, .map_kind = MapKind::SkewTent, .epsilon = 0.01};
}

TrainedModel feature_space_model(const std::vector<std::vector<double>>& means,
                                 const std::vector<std::string>& classes) {
    TrainedModel model;
    model.classes = classes;
    model.mean_vectors = means;
    model.params = worked_example_params();
    model.normalization = {0.0, 1.0};
    return model;
}

} // namespace

TEST_CASE("cosine similarity basics") {
    const std::vector<double> v{0.3, 0.4, 0.5};
    CHECK(cosine_similarity(v, v) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cosine_similarity(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}) ==
          0.0);
    CHECK(cosine_similarity(std::vector<double>{1.0, 0.0}, std::vector<double>{1.0, 1.0}) ==
          doctest::Approx(0.7071067811865475).epsilon(1e-15));
    // Zero norm is defined as similarity 0, keeping the argmax total.
    CHECK(cosine_similarity(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 2.0}) ==
          0.0);
    CHECK_THROWS_AS(cosine_similarity(std::vector<double>{1.0},
                                      std::vector<double>{1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("train_from_features: mean of the worked example's features") {
    // Feature matrix of the reference example's first class; the mean
    // representation vector follows exactly.
    const Matrix class1 =
        Matrix::from_rows({{0.41, 0.35, 0.38, 0.5}, {0.0, 0.35, 0.35, 0.41}});
    const auto model = train_from_features({class1}, {"class1"}, worked_example_params(),
                                           {0.0, 1.0});
    REQUIRE(model.mean_vectors.size() == 1);
    const auto& m1 = model.mean_vectors[0];
    CHECK(m1[0] == doctest::Approx(0.205).epsilon(1e-15));
    CHECK(m1[1] == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(m1[2] == doctest::Approx(0.365).epsilon(1e-15));
    CHECK(m1[3] == doctest::Approx(0.455).epsilon(1e-15));
}

TEST_CASE("train: single row and duplicated rows") {
    Hyperparams params{.q = 0.37, .threshold = 0.61, .map_kind = MapKind::SkewTent,
                       .epsilon = 0.02};
    const Matrix one = Matrix::from_rows({{0.2, 0.8, 0.5}});
    const auto single = train({one}, {"only"}, params, {0.0, 1.0});
    const Matrix features = extract_features(one, params);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(single.mean_vectors[0][k] == features(0, k));
    }

    const Matrix twice = Matrix::from_rows({{0.2, 0.8, 0.5}, {0.2, 0.8, 0.5}});
    const auto doubled = train({twice}, {"only"}, params, {0.0, 1.0});
    CHECK(doubled.mean_vectors == single.mean_vectors);
}

TEST_CASE("train: k copies of a class matrix give the same means as one copy") {
    Hyperparams params{.q = 0.37, .threshold = 0.61, .map_kind = MapKind::SkewBinary,
                       .epsilon = 0.02};
    Rng rng(31);
    Matrix base(3, 4);
    for (double& v : base.data()) v = rng.next_unit();
    Matrix tripled;
    for (int copy = 0; copy < 3; ++copy) {
        for (std::size_t i = 0; i < base.rows(); ++i) tripled.push_row(base.row(i));
    }
    const auto one = train({base}, {"c"}, params, {0.0, 1.0});
    const auto three = train({tripled}, {"c"}, params, {0.0, 1.0});
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(three.mean_vectors[0][k] ==
              doctest::Approx(one.mean_vectors[0][k]).epsilon(1e-15));
    }
}

TEST_CASE("train rejects an empty class and mismatched shapes") {
    Hyperparams params = worked_example_params();
    Matrix empty;
    empty.set_cols(2);
    CHECK_THROWS_WITH_AS(train({empty}, {"hollow"}, params, {0.0, 1.0}),
                         doctest::Contains("hollow"), std::invalid_argument);
}

TEST_CASE("predict: exact-match feature vector wins with similarity 1") {
    // Means chosen orthogonal so the match is unambiguous.
    const auto model = feature_space_model({{0.5, 0.0}, {0.0, 0.5}}, {"one", "two"});
    const auto prediction = predict_features(model, std::vector<double>{0.5, 0.0});
    CHECK(prediction.label == "one");
    CHECK(prediction.similarities[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(prediction.similarities[1] == 0.0);
}

TEST_CASE("predict: ties resolve to the smallest class index") {
    const auto model =
        feature_space_model({{0.3, 0.3}, {0.3, 0.3}, {0.3, 0.3}}, {"a", "b", "c"});
    const auto prediction = predict_features(model, std::vector<double>{0.7, 0.1});
    CHECK(prediction.class_index == 0);
    CHECK(prediction.label == "a");
}

TEST_CASE("predict and evaluate through the full extraction path") {
    const Hyperparams params{.q = 0.34, .threshold = 0.43, .map_kind = MapKind::SkewTent,
                             .epsilon = 0.01};
    const Matrix rows = Matrix::from_rows({{0.15, 0.92, 0.55}, {0.71, 0.08, 0.33}});
    const Matrix features = extract_features(rows, params);
    REQUIRE(cosine_similarity(features.row(0), features.row(1)) < 0.999);

    TrainedModel model;
    model.classes = {"first", "second"};
    model.mean_vectors = {{features(0, 0), features(0, 1), features(0, 2)},
                          {features(1, 0), features(1, 1), features(1, 2)}};
    model.params = params;
    model.normalization = {0.0, 1.0};

    const auto predictions = predict(model, rows, true);
    REQUIRE(predictions.size() == 2);
    CHECK(predictions[0].label == "first");
    CHECK(predictions[1].label == "second");
    CHECK(predictions[0].similarities[0] == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(evaluate(model, rows, {"first", "second"}, true).accuracy == 1.0);
    CHECK(evaluate(model, rows, {"second", "first"}, true).accuracy == 0.0);

    // 3 of 4 correct.
    Matrix four;
    for (int i = 0; i < 2; ++i) {
        four.push_row(rows.row(0));
        four.push_row(rows.row(1));
    }
    const auto eval = evaluate(model, four, {"first", "second", "second", "second"}, true);
    CHECK(eval.accuracy == doctest::Approx(0.75));
    CHECK(eval.total == 4);
    CHECK(eval.correct == 3);
    CHECK(eval.confusion[0][0] == 1);
    CHECK(eval.confusion[1][1] == 2);
    CHECK(eval.confusion[1][0] == 1);
    CHECK(eval.confusion[0][1] == 0);

    CHECK_THROWS_AS(evaluate(model, four, {"first"}, true), std::invalid_argument);
    CHECK_THROWS_WITH_AS(evaluate(model, rows, {"first", "stranger"}, true),
                         doctest::Contains("stranger"), std::invalid_argument);
}

TEST_CASE("column mismatch is rejected") {
    const auto model = feature_space_model({{0.5, 0.0}, {0.0, 0.5}}, {"one", "two"});
    const Matrix wrong = Matrix::from_rows({{0.1, 0.2, 0.3}});
    CHECK_THROWS_AS(predict(model, wrong, true), std::invalid_argument);
}

TEST_CASE("argmax is invariant under positive scaling of the features") {
    Rng rng(17);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::vector<double>> means(3, std::vector<double>(5));
        for (auto& mean : means) {
            for (double& v : mean) v = rng.next_unit();
        }
        const auto model = feature_space_model(means, {"a", "b", "c"});
        std::vector<double> f(5);
        for (double& v : f) v = rng.next_unit();
        const auto base = predict_features(model, f);
        const double scale = 0.01 + 100.0 * rng.next_unit();
        std::vector<double> scaled = f;
        for (double& v : scaled) v *= scale;
        CHECK(predict_features(model, scaled).class_index == base.class_index);
    }
}

TEST_CASE("permuting the class order permutes the prediction consistently") {
    Rng rng(23);
    std::vector<std::vector<double>> means(4, std::vector<double>(6));
    for (auto& mean : means) {
        for (double& v : mean) v = rng.next_unit();
    }
    const auto model = feature_space_model(means, {"a", "b", "c", "d"});
    const auto permuted = feature_space_model({means[2], means[3], means[0], means[1]},
                                              {"c", "d", "a", "b"});
    for (int round = 0; round < 100; ++round) {
        std::vector<double> f(6);
        for (double& v : f) v = rng.next_unit();
        CHECK(predict_features(model, f).label == predict_features(permuted, f).label);
    }
}

TEST_CASE("model document round trip is bit-exact") {
    Hyperparams params{.q = 0.6, .threshold = 0.9867556, .map_kind = MapKind::SkewBinary,
                       .epsilon = 0.01, .max_iters = 12345};
    TrainedModel model;
    model.classes = {"setosa", "versicolor", "virginica"};
    model.mean_vectors = {{0.1 / 3.0, 0.0153, 0.0242, 0.014},
                          {0.0, 1.0 / 7.0, 0.0122, 0.0249},
                          {1e-300, 0.0162, 0.99999999999999989, 0.0197}};
    model.params = params;
    model.normalization = {0.1, 7.9000000000000004};
    model.layers.push_back(
        paired_layer_spec(4, 0.4995, 0.001, 0.56, MapKind::SkewBinary, 0.9867556));

    const auto path = std::filesystem::temp_directory_path() / "chaosnet_model.json";
    save_model(model, path);
    const auto loaded = load_model(path);

    CHECK(loaded.classes == model.classes);
    CHECK(loaded.mean_vectors == model.mean_vectors);  // exact doubles
    CHECK(loaded.params.q == model.params.q);
    CHECK(loaded.params.threshold == model.params.threshold);
    CHECK(loaded.params.map_kind == model.params.map_kind);
    CHECK(loaded.params.epsilon == model.params.epsilon);
    CHECK(loaded.params.max_iters == model.params.max_iters);
    CHECK(loaded.normalization.min == model.normalization.min);
    CHECK(loaded.normalization.max == model.normalization.max);
    REQUIRE(loaded.layers.size() == 1);
    CHECK(loaded.layers[0].neurons.size() == 2);
    CHECK(loaded.layers[0].neurons[0].couplings[0].weight == 0.4995);
    std::filesystem::remove(path);
}

TEST_CASE("a model with a paired hidden layer trains, persists and predicts") {
    Hyperparams params{.q = 0.37, .threshold = 0.61, .map_kind = MapKind::SkewTent,
                       .epsilon = 0.02};
    const LayerSpec layer = paired_layer_spec(5, 0.4995, 0.001, 0.56, MapKind::SkewTent, 0.61);

    Rng rng(41);
    Matrix a(4, 5);
    Matrix b(4, 5);
    for (double& v : a.data()) v = 0.5 * rng.next_unit();
    for (double& v : b.data()) v = 0.5 + 0.5 * rng.next_unit();
    const auto model = train({a, b}, {"low", "high"}, params, {0.0, 1.0}, {layer});
    CHECK(model.feature_dim() == 3);  // ceil(5/2)

    const auto path = std::filesystem::temp_directory_path() / "chaosnet_paired_model.json";
    save_model(model, path);
    const auto loaded = load_model(path);
    std::filesystem::remove(path);

    Matrix probe(2, 5);
    for (double& v : probe.data()) v = rng.next_unit();
    const auto direct = predict(model, probe, true);
    const auto reloaded = predict(loaded, probe, true);
    REQUIRE(direct.size() == reloaded.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
        CHECK(direct[i].label == reloaded[i].label);
        CHECK(direct[i].similarities == reloaded[i].similarities);
    }
}

TEST_CASE("model document: truncation and version errors") {
    const auto good = model_to_string(feature_space_model({{0.5, 0.1}}, {"only"}));
    CHECK_THROWS_AS(model_from_string(good.substr(0, good.size() / 2)), ParseError);

    auto versioned = good;
    const auto at = versioned.find("\"version\": 1");
    REQUIRE(at != std::string::npos);
    versioned.replace(at, 12, "\"version\": 9");
    CHECK_THROWS_WITH_AS(model_from_string(versioned), doctest::Contains("version"),
                         ParseError);

    CHECK_THROWS_AS(load_model("/nonexistent/chaosnet.json"), ParseError);
}
