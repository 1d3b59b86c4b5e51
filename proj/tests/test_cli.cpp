// End-to-end checks of the command-line surface: runs the built binary
// against the bundled dataset and temporary files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "chaosnet/classifier.hpp"
#include "chaosnet/config.hpp"
#include "chaosnet/rng.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kCli = CHAOSNET_CLI_PATH;
const fs::path kData = CHAOSNET_DATA_DIR;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("chaosnet_cli_" + std::to_string(chaosnet::Rng(std::random_device{}()).next_u64()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    const std::string command = kCli.string() + " " + args + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::string iris_config(const fs::path& dir, const std::string& extra) {
    const fs::path config = dir / "iris.cfg";
    write(config,
          "dataset = " + (kData / "iris.csv").string() + "\n"
          "q = 0.6\n"
          "threshold = 0.9867556\n"
          "map = skew-binary\n"
          "epsilon = 0.01\n"
          "seed = 5\n" + extra);
    return config.string();
}

} // namespace

TEST_CASE("train then eval on the bundled dataset") {
    TempDir dir;
    const auto config = iris_config(dir.path, "k = 7\n");
    const auto model_path = dir.path / "model.json";
    REQUIRE(run("train --config " + config + " --out " + model_path.string()) == 0);
    REQUIRE(fs::exists(model_path));

    const auto model = chaosnet::load_model(model_path);
    CHECK(model.class_count() == 3);
    CHECK(model.feature_dim() == 4);

    const auto eval_path = dir.path / "eval.tsv";
    REQUIRE(run("eval --model " + model_path.string() + " --data " +
                (kData / "iris.csv").string() + " --out " + eval_path.string()) == 0);
    const auto report = slurp(eval_path);
    CHECK(report.find("accuracy\t") != std::string::npos);
    CHECK(report.find("confusion") != std::string::npos);

    const auto pred_path = dir.path / "pred.tsv";
    REQUIRE(run("predict --model " + model_path.string() + " --data " +
                (kData / "iris.csv").string() + " --out " + pred_path.string()) == 0);
    std::istringstream lines(slurp(pred_path));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 151);  // header + one line per row
}

TEST_CASE("train with a missing dataset exits non-zero without output") {
    TempDir dir;
    const fs::path config = dir.path / "bad.cfg";
    write(config, "dataset = /nonexistent/file.csv\nq = 0.5\n");
    const auto model_path = dir.path / "model.json";
    CHECK(run("train --config " + config.string() + " --out " + model_path.string()) != 0);
    CHECK_FALSE(fs::exists(model_path));
}

TEST_CASE("sweep table is reproducible from the base seed") {
    TempDir dir;
    const auto config = iris_config(dir.path, "k_min = 1\nk_max = 2\ntrials = 3\n");
    const auto out_a = dir.path / "a.tsv";
    const auto out_b = dir.path / "b.tsv";
    REQUIRE(run("sweep --config " + config + " --out " + out_a.string()) == 0);
    REQUIRE(run("sweep --config " + config + " --out " + out_b.string()) == 0);
    const auto table = slurp(out_a);
    CHECK(table == slurp(out_b));
    CHECK(table.find("k\ttrial\tseed\taccuracy") != std::string::npos);
    // Config echoed into the header.
    CHECK(table.find("# dataset =") != std::string::npos);

    std::istringstream lines(table);
    std::string line;
    std::size_t records = 0;
    while (std::getline(lines, line)) {
        if (!line.empty() && line[0] != '#' && line[0] != 'k') ++records;
    }
    CHECK(records == 6);  // two k values, three trials each
}

TEST_CASE("--seed overrides the config seed") {
    TempDir dir;
    const auto config = iris_config(dir.path, "k_min = 2\nk_max = 2\ntrials = 2\n");
    const auto out_a = dir.path / "a.tsv";
    const auto out_b = dir.path / "b.tsv";
    const auto out_c = dir.path / "c.tsv";
    REQUIRE(run("sweep --config " + config + " --seed 123 --out " + out_a.string()) == 0);
    REQUIRE(run("sweep --config " + config + " --seed 123 --out " + out_b.string()) == 0);
    REQUIRE(run("sweep --config " + config + " --seed 124 --out " + out_c.string()) == 0);
    CHECK(slurp(out_a) == slurp(out_b));
    CHECK(slurp(out_a) != slurp(out_c));
}

TEST_CASE("sweep with k beyond the class size fails cleanly") {
    TempDir dir;
    const auto config = iris_config(dir.path, "k_min = 60\nk_max = 60\ntrials = 1\n");
    CHECK(run("sweep --config " + config + " --out " + (dir.path / "x.tsv").string()) != 0);
}

TEST_CASE("noise table covers the sigma grid") {
    TempDir dir;
    const auto config = iris_config(dir.path, "k = 7\ntrials = 2\nsigmas = 0, 0.001\n");
    const auto out = dir.path / "noise.tsv";
    REQUIRE(run("noise --config " + config + " --out " + out.string()) == 0);
    const auto table = slurp(out);
    CHECK(table.find("sigma\tsnr_db\taccuracy\tseed") != std::string::npos);
    CHECK(table.find("# clean_accuracy") != std::string::npos);
    CHECK(table.find("inf") != std::string::npos);  // sigma = 0 sentinel
}

TEST_CASE("codec round trip is byte-identical") {
    TempDir dir;
    chaosnet::Rng rng(99);
    std::string bits;
    for (int i = 0; i < 4096; ++i) bits += rng.next_index(2) ? '1' : '0';
    const auto bits_path = dir.path / "bits.txt";
    write(bits_path, bits);

    const auto code_path = dir.path / "code.json";
    const auto round_path = dir.path / "round.txt";
    REQUIRE(run("codec-encode --in " + bits_path.string() + " --p 2/7 --out " +
                code_path.string()) == 0);
    REQUIRE(run("codec-decode --in " + code_path.string() + " --out " +
                round_path.string()) == 0);
    CHECK(slurp(round_path) == bits);
}

TEST_CASE("uat command reports the error bound") {
    TempDir dir;
    std::ostringstream samples;
    for (int i = 0; i < 64; ++i) samples << std::sin(0.3 * i) << '\n';
    const auto in_path = dir.path / "samples.txt";
    write(in_path, samples.str());

    const auto code_path = dir.path / "uat.json";
    const auto recon_path = dir.path / "recon.txt";
    const std::string command = kCli.string() + " uat --in " + in_path.string() +
                                " --epsilon 0.01 --out " + code_path.string() +
                                " --decode-out " + recon_path.string() + " > " +
                                (dir.path / "report.txt").string() + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(command.c_str())) == 0);
    REQUIRE(fs::exists(code_path));

    // Reconstruction within epsilon of every sample.
    std::ifstream original(in_path);
    std::ifstream reconstructed(recon_path);
    double a = 0.0, b = 0.0;
    int count = 0;
    while (original >> a && reconstructed >> b) {
        CHECK(std::abs(a - b) <= 0.01);
        ++count;
    }
    CHECK(count == 64);
    const auto report = slurp(dir.path / "report.txt");
    CHECK(report.find("max_error") != std::string::npos);
}

TEST_CASE("unknown subcommand fails") {
    CHECK(run("frobnicate") != 0);
}

TEST_CASE("every shipped config parses") {
    std::size_t seen = 0;
    for (const auto& entry : fs::directory_iterator(CHAOSNET_CONFIG_DIR)) {
        if (entry.path().extension() != ".cfg") continue;
        ++seen;
        CHECK_NOTHROW(chaosnet::load_config(entry.path()));
    }
    CHECK(seen >= 4);
}
