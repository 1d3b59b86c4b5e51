// Command-line front end for the TT-SS classification toolkit:
// training, prediction, evaluation, few-shot and parameter-noise
// sweeps, the GLS codec, and the sampled-function approximation
// pipeline. Data goes to the output file, diagnostics to stderr; every
// run is reproducible from (config, seed) alone.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chaosnet/classifier.hpp"
#include "chaosnet/config.hpp"
#include "chaosnet/errors.hpp"
#include "chaosnet/gls_coding.hpp"
#include "chaosnet/noise_lab.hpp"
#include "chaosnet/pipeline.hpp"
#include "chaosnet/rng.hpp"

namespace {

using namespace chaosnet;

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open output file " + path.string());
    }
    return out;
}

void echo_config(std::ostream& out, const ExperimentConfig& config) {
    for (const auto& line : config.source_lines) {
        out << "# " << line << '\n';
    }
}

std::filesystem::path output_path(const ExperimentConfig& config,
                                  const std::string& cli_out, const char* fallback) {
    if (!cli_out.empty()) return cli_out;
    if (config.out) return *config.out;
    return fallback;
}

ExperimentConfig load_cmd_config(const std::string& path, const std::string& seed_flag) {
    ExperimentConfig config = load_config(path);
    if (!seed_flag.empty()) {
        config.seed = std::stoull(seed_flag);
    }
    if (!std::filesystem::exists(config.dataset)) {
        throw ConfigError("dataset file does not exist: " + config.dataset.string());
    }
    return config;
}

int cmd_train(const std::string& config_path, const std::string& seed_flag,
              const std::string& out_flag) {
    const ExperimentConfig config = load_cmd_config(config_path, seed_flag);
    const Experiment experiment = Experiment::load(config);
    const auto trial = experiment.run_trial(config.k, config.seed);

    const auto path = output_path(config, out_flag, "model.json");
    save_model(trial.model, path);

    std::cerr << "trained " << trial.model.class_count() << " classes, feature dimension "
              << trial.model.feature_dim() << '\n';
    const auto index = experiment.dataset.class_index();
    for (const auto& name : experiment.dataset.class_names()) {
        const std::size_t total = index.at(name).size();
        std::cerr << "  class " << name << ": "
                  << (config.k ? std::min(*config.k, total) : total) << " training rows of "
                  << total << '\n';
    }
    std::cerr << "model written to " << path.string() << '\n';
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_flag, int label_column, bool has_header,
                bool unlabeled) {
    const TrainedModel model = load_model(model_path);

    Matrix rows;
    std::vector<std::string> labels;
    if (unlabeled) {
        // Numeric-only CSV: reuse the loader by treating no column as label.
        std::ifstream in(data_path);
        if (!in) throw ParseError("cannot open " + data_path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line_no == 1 && has_header) continue;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::vector<double> row;
            std::istringstream fields(line);
            std::string cell;
            while (std::getline(fields, cell, ',')) {
                row.push_back(std::stod(cell));
            }
            rows.push_row(row);
        }
    } else {
        const LabeledDataset data = load_csv(data_path, label_column, has_header);
        rows = data.features;
        labels = data.labels;
    }

    const auto predictions = predict(model, rows, /*already_normalized=*/false);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_flag.empty()) {
        file = open_output(out_flag);
        out = &file;
    }
    *out << "row\tpredicted";
    for (const auto& name : model.classes) *out << "\tcos_" << name;
    *out << '\n';
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        *out << i << '\t' << predictions[i].label;
        char buffer[32];
        for (double s : predictions[i].similarities) {
            std::snprintf(buffer, sizeof buffer, "%.10g", s);
            *out << '\t' << buffer;
        }
        *out << '\n';
    }
    return 0;
}

int cmd_eval(const std::string& model_path, const std::string& data_path,
             const std::string& out_flag, int label_column, bool has_header) {
    const TrainedModel model = load_model(model_path);
    const LabeledDataset data = load_csv(data_path, label_column, has_header);
    const Evaluation eval = evaluate(model, data.features, data.labels,
                                     /*already_normalized=*/false);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_flag.empty()) {
        file = open_output(out_flag);
        out = &file;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6f", eval.accuracy);
    *out << "accuracy\t" << buffer << '\n';
    *out << "correct\t" << eval.correct << '\n';
    *out << "total\t" << eval.total << '\n';
    *out << "# confusion matrix: rows = true class, columns = predicted class\n";
    *out << "class";
    for (const auto& name : model.classes) *out << '\t' << name;
    *out << '\n';
    for (std::size_t i = 0; i < model.classes.size(); ++i) {
        *out << model.classes[i];
        for (std::size_t j = 0; j < model.classes.size(); ++j) {
            *out << '\t' << eval.confusion[i][j];
        }
        *out << '\n';
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& seed_flag,
              const std::string& out_flag) {
    const ExperimentConfig config = load_cmd_config(config_path, seed_flag);
    const Experiment experiment = Experiment::load(config);
    const auto records = few_shot_sweep(experiment);

    auto out = open_output(output_path(config, out_flag, "sweep.tsv"));
    echo_config(out, config);
    out << "k\ttrial\tseed\taccuracy\n";
    char buffer[32];
    for (const auto& r : records) {
        std::snprintf(buffer, sizeof buffer, "%.6f", r.accuracy);
        out << r.k << '\t' << r.trial << '\t' << r.seed << '\t' << buffer << '\n';
    }
    std::cerr << records.size() << " sweep records written\n";
    return 0;
}

int cmd_noise(const std::string& config_path, const std::string& seed_flag,
              const std::string& out_flag) {
    const ExperimentConfig config = load_cmd_config(config_path, seed_flag);
    if (config.sigmas.empty()) {
        throw ConfigError("noise: config needs 'sigmas' or sigma_min/max/count");
    }
    const Experiment experiment = Experiment::load(config);
    const auto trial = experiment.run_trial(config.k, config.seed);
    const double clean =
        evaluate(trial.model, trial.test_features, trial.test_labels, true).accuracy;

    const auto results =
        noise_sweep(trial.model, trial.test_features, trial.test_labels, true, config.sigmas,
                    config.trials, config.seed);

    auto out = open_output(output_path(config, out_flag, "noise.tsv"));
    echo_config(out, config);
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", clean);
    out << "# clean_accuracy\t" << buffer << '\n';
    out << "sigma\tsnr_db\taccuracy\tseed\n";
    for (const auto& r : results) {
        std::snprintf(buffer, sizeof buffer, "%.8g\t%.6g\t%.6f\t%" PRIu64, r.sigma, r.snr_db,
                      r.accuracy, r.seed);
        out << buffer << '\n';
    }
    std::cerr << results.size() << " noise trials written\n";
    return 0;
}

std::vector<std::uint8_t> read_bit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open bit file " + path);
    std::vector<std::uint8_t> bits;
    char c = 0;
    while (in.get(c)) {
        if (c == '0') {
            bits.push_back(0);
        } else if (c == '1') {
            bits.push_back(1);
        } else if (c == '\n' || c == '\r' || c == ' ' || c == '\t') {
            continue;
        } else {
            throw ParseError(std::string("bit file: unexpected character '") + c + "'");
        }
    }
    return bits;
}

int cmd_codec_encode(const std::string& in_path, const std::string& p_text,
                     const std::string& out_flag) {
    const auto bits = read_bit_file(in_path);
    const coding::Rational p = coding::Rational::parse(p_text);
    const coding::CodingInterval interval = coding::encode(bits, p);
    const coding::Rational x = coding::midpoint(interval);

    nlohmann::json doc;
    doc["format"] = "chaosnet-gls-code";
    doc["version"] = 1;
    doc["p"] = p.str();
    doc["length"] = bits.size();
    doc["x"] = x.str();
    auto out = open_output(out_flag.empty() ? "code.json" : out_flag);
    out << doc.dump(2) << '\n';

    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6f", coding::code_length_bits(interval));
    std::cerr << bits.size() << " bits encoded, information content " << buffer << " bits\n";
    return 0;
}

int cmd_codec_decode(const std::string& in_path, const std::string& out_flag) {
    std::ifstream in(in_path);
    if (!in) throw ParseError("cannot open code file " + in_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("code document: ") + err.what());
    }
    if (doc.value("format", "") != "chaosnet-gls-code" || doc.at("version").get<int>() != 1) {
        throw ParseError("code document: wrong format or unsupported version");
    }
    const coding::Rational p = coding::Rational::parse(doc.at("p").get<std::string>());
    const coding::Rational x = coding::Rational::parse(doc.at("x").get<std::string>());
    const auto n = doc.at("length").get<std::size_t>();
    const auto bits = coding::decode(x, p, n);

    auto out = open_output(out_flag.empty() ? "bits.txt" : out_flag);
    for (std::uint8_t bit : bits) out << static_cast<char>('0' + bit);
    std::cerr << bits.size() << " bits decoded\n";
    return 0;
}

int cmd_uat(const std::string& in_path, double epsilon, const std::string& out_flag,
            const std::string& decode_out) {
    std::ifstream in(in_path);
    if (!in) throw ParseError("cannot open samples file " + in_path);
    std::vector<double> samples;
    double value = 0.0;
    while (in >> value) samples.push_back(value);
    if (samples.empty()) throw ParseError("samples file is empty");

    const coding::UatCode code = coding::uat_encode(samples, epsilon);
    coding::save_uat_code(code, out_flag.empty() ? "uat_code.json" : out_flag);

    const auto reconstructed = coding::uat_decode(code);
    double max_error = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        max_error = std::max(max_error, std::abs(reconstructed[i] - samples[i]));
    }
    if (!decode_out.empty()) {
        auto out = open_output(decode_out);
        char buffer[32];
        for (double v : reconstructed) {
            std::snprintf(buffer, sizeof buffer, "%.17g", v);
            out << buffer << '\n';
        }
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.3g", max_error);
    std::cout << "samples\t" << samples.size() << '\n'
              << "bitplanes\t" << code.bitplanes.size() << '\n'
              << "scale\t" << code.scale.str() << '\n'
              << "max_error\t" << buffer << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chaotic GLS-neuron classification toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string seed_flag;
    std::string out_flag;
    std::string model_path;
    std::string data_path;
    std::string in_path;
    std::string p_text;
    std::string decode_out;
    int label_column = -1;
    bool has_header = true;
    bool unlabeled = false;
    double epsilon = 0.01;

    auto* train = app.add_subcommand("train", "train a model from a config");
    train->add_option("--config", config_path, "experiment config file")->required();
    train->add_option("--seed", seed_flag, "override the config seed");
    train->add_option("--out", out_flag, "model output path");

    auto* predict = app.add_subcommand("predict", "label rows with a trained model");
    predict->add_option("--model", model_path, "model file")->required();
    predict->add_option("--data", data_path, "CSV of rows to label")->required();
    predict->add_option("--out", out_flag, "output table path (stdout when absent)");
    predict->add_option("--label-column", label_column, "label column (-1 = last)");
    predict->add_flag("--no-header", [&has_header](std::int64_t) { has_header = false; },
                      "data file has no header row");
    predict->add_flag("--unlabeled", unlabeled, "data file has no label column");

    auto* eval = app.add_subcommand("eval", "evaluate a model on labeled data");
    eval->add_option("--model", model_path, "model file")->required();
    eval->add_option("--data", data_path, "labeled CSV")->required();
    eval->add_option("--out", out_flag, "output path (stdout when absent)");
    eval->add_option("--label-column", label_column, "label column (-1 = last)");
    eval->add_flag("--no-header", [&has_header](std::int64_t) { has_header = false; },
                   "data file has no header row");

    auto* sweep = app.add_subcommand("sweep", "few-shot accuracy sweep over k");
    sweep->add_option("--config", config_path, "experiment config file")->required();
    sweep->add_option("--seed", seed_flag, "override the config seed");
    sweep->add_option("--out", out_flag, "output table path");

    auto* noise = app.add_subcommand("noise", "parameter-noise robustness sweep");
    noise->add_option("--config", config_path, "experiment config file")->required();
    noise->add_option("--seed", seed_flag, "override the config seed");
    noise->add_option("--out", out_flag, "output table path");

    auto* codec_encode = app.add_subcommand("codec-encode", "losslessly encode a bit file");
    codec_encode->add_option("--in", in_path, "input file of 0/1 characters")->required();
    codec_encode->add_option("--p", p_text, "skew as a rational, e.g. 3/4")->required();
    codec_encode->add_option("--out", out_flag, "code document path");

    auto* codec_decode = app.add_subcommand("codec-decode", "decode a code document");
    codec_decode->add_option("--in", in_path, "code document")->required();
    codec_decode->add_option("--out", out_flag, "decoded bit file path");

    auto* uat = app.add_subcommand("uat", "approximate a sampled function within epsilon");
    uat->add_option("--in", in_path, "whitespace-separated samples file")->required();
    uat->add_option("--epsilon", epsilon, "approximation tolerance")->required();
    uat->add_option("--out", out_flag, "code document path");
    uat->add_option("--decode-out", decode_out, "write the reconstruction here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(config_path, seed_flag, out_flag);
        if (predict->parsed()) {
            return cmd_predict(model_path, data_path, out_flag, label_column, has_header,
                               unlabeled);
        }
        if (eval->parsed()) {
            return cmd_eval(model_path, data_path, out_flag, label_column, has_header);
        }
        if (sweep->parsed()) return cmd_sweep(config_path, seed_flag, out_flag);
        if (noise->parsed()) return cmd_noise(config_path, seed_flag, out_flag);
        if (codec_encode->parsed()) return cmd_codec_encode(in_path, p_text, out_flag);
        if (codec_decode->parsed()) return cmd_codec_decode(in_path, out_flag);
        if (uat->parsed()) return cmd_uat(in_path, epsilon, out_flag, decode_out);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
