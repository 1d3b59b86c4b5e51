#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chaosnet/config.hpp"
#include "chaosnet/errors.hpp"

using namespace chaosnet;

TEST_CASE("full config parses") {
    const auto config = parse_config(
        "# reference iris settings\n"
        "dataset = data/iris.csv\n"
        "label_column = -1\n"
        "has_header = true\n"
        "q = 0.6\n"
        "threshold = 0.9867556\n"
        "map = skew-binary\n"
        "epsilon = 0.01\n"
        "max_iters = 10000\n"
        "normalization = global\n"
        "k = 7\n"
        "k_min = 1\n"
        "k_max = 7\n"
        "trials = 20\n"
        "seed = 42\n"
        "sigmas = 0.0001, 0.001, 0.01\n"
        "out = sweep.tsv\n");
    CHECK(config.dataset == "data/iris.csv");
    CHECK(config.params.q == 0.6);
    CHECK(config.params.threshold == 0.9867556);
    CHECK(config.params.map_kind == MapKind::SkewBinary);
    CHECK(config.params.epsilon == 0.01);
    CHECK(config.params.max_iters == 10000);
    CHECK(config.k == 7);
    CHECK(config.trials == 20);
    CHECK(config.seed == 42);
    CHECK(config.sigmas == std::vector<double>{0.0001, 0.001, 0.01});
    CHECK(config.out == std::filesystem::path("sweep.tsv"));
    CHECK(config.source_lines.size() == 17);
    CHECK_FALSE(config.has_pairing());
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config("dataset = x.csv\nepsilonn = 0.01\n"),
                         doctest::Contains("epsilonn"), ConfigError);
}

TEST_CASE("malformed lines and values") {
    CHECK_THROWS_AS(parse_config("just some words\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("q =\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("q = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("map = logistic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("trials = -3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("normalization = sideways\n"), ConfigError);
}

TEST_CASE("hyperparameter invariants are checked at parse time") {
    CHECK_THROWS_AS(parse_config("q = 1.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("threshold = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("k_min = 5\nk_max = 2\n"), ConfigError);
}

TEST_CASE("geometric sigma grid hits both endpoints") {
    const auto config =
        parse_config("sigma_min = 0.0001\nsigma_max = 0.0456\nsigma_count = 12\n");
    REQUIRE(config.sigmas.size() == 12);
    CHECK(config.sigmas.front() == 0.0001);
    CHECK(config.sigmas.back() == 0.0456);
    for (std::size_t i = 1; i < config.sigmas.size(); ++i) {
        CHECK(config.sigmas[i] > config.sigmas[i - 1]);
        // Constant ratio between neighbours.
        if (i > 1) {
            CHECK(config.sigmas[i] / config.sigmas[i - 1] ==
                  doctest::Approx(config.sigmas[1] / config.sigmas[0]).epsilon(1e-6));
        }
    }
    CHECK_THROWS_AS(parse_config("sigma_min = 0.1\nsigma_max = 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("sigmas = 0.1\nsigma_min = 0.1\nsigma_max = 0.2\n"
                                 "sigma_count = 3\n"),
                    ConfigError);
}

TEST_CASE("pairing keys go together") {
    CHECK_THROWS_AS(parse_config("pair_eta = 0.4995\n"), ConfigError);
    const auto config =
        parse_config("pair_eta = 0.4995\npair_gamma = 0.001\npair_q = 0.56\n");
    CHECK(config.has_pairing());
    CHECK(*config.pair_eta == 0.4995);
    CHECK(*config.pair_gamma == 0.001);
    CHECK(*config.pair_q == 0.56);
}

TEST_CASE("comments and blank lines are preserved in the echo") {
    const auto config = parse_config("\n# hello\nq = 0.5 # inline comment\n");
    CHECK(config.params.q == 0.5);
    CHECK(config.source_lines.size() == 3);
    CHECK(config.source_lines[1] == "# hello");
}
