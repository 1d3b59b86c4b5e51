#include "chaosnet/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chaosnet/errors.hpp"

namespace chaosnet {

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("cosine_similarity: length mismatch (" +
                                    std::to_string(u.size()) + " vs " + std::to_string(v.size()) +
                                    ")");
    }
    double dot = 0.0;
    double uu = 0.0;
    double vv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    if (uu == 0.0 || vv == 0.0) return 0.0;
    return dot / (std::sqrt(uu) * std::sqrt(vv));
}

TrainedModel train_from_features(const std::vector<Matrix>& per_class_features,
                                 const std::vector<std::string>& class_labels,
                                 const Hyperparams& params, const Extrema& normalization,
                                 std::vector<LayerSpec> layers) {
    if (per_class_features.size() != class_labels.size()) {
        throw std::invalid_argument("train: class label count does not match matrix count");
    }
    if (per_class_features.empty()) {
        throw std::invalid_argument("train: need at least one class");
    }
    TrainedModel model;
    model.params = params;
    model.normalization = normalization;
    model.layers = std::move(layers);
    model.classes = class_labels;

    const std::size_t n = per_class_features.front().cols();
    for (std::size_t c = 0; c < per_class_features.size(); ++c) {
        const Matrix& features = per_class_features[c];
        if (features.rows() == 0) {
            throw std::invalid_argument("train: class '" + class_labels[c] + "' has no rows");
        }
        if (features.cols() != n) {
            throw std::invalid_argument("train: class '" + class_labels[c] +
                                        "' has mismatched column count");
        }
        std::vector<double> mean(n, 0.0);
        for (std::size_t i = 0; i < features.rows(); ++i) {
            for (std::size_t k = 0; k < n; ++k) mean[k] += features(i, k);
        }
        for (double& v : mean) v /= static_cast<double>(features.rows());
        model.mean_vectors.push_back(std::move(mean));
    }
    return model;
}

TrainedModel train(const std::vector<Matrix>& per_class_data,
                   const std::vector<std::string>& class_labels, const Hyperparams& params,
                   const Extrema& normalization, std::vector<LayerSpec> layers) {
    std::vector<Matrix> per_class_features;
    per_class_features.reserve(per_class_data.size());
    for (std::size_t c = 0; c < per_class_data.size(); ++c) {
        if (per_class_data[c].rows() == 0) {
            const std::string name = c < class_labels.size() ? class_labels[c]
                                                             : std::to_string(c);
            throw std::invalid_argument("train: class '" + name + "' has no rows");
        }
        per_class_features.push_back(multilayer_features(params, per_class_data[c], layers));
    }
    return train_from_features(per_class_features, class_labels, params, normalization,
                               std::move(layers));
}

Prediction predict_features(const TrainedModel& model, std::span<const double> features) {
    Prediction prediction;
    prediction.similarities.reserve(model.mean_vectors.size());
    for (const auto& mean : model.mean_vectors) {
        prediction.similarities.push_back(cosine_similarity(features, mean));
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < prediction.similarities.size(); ++k) {
        // Strict comparison keeps the smallest index on ties.
        if (prediction.similarities[k] > prediction.similarities[best]) best = k;
    }
    prediction.class_index = best;
    prediction.label = model.classes[best];
    return prediction;
}

std::vector<Prediction> predict(const TrainedModel& model, const Matrix& test_data,
                                bool already_normalized) {
    if (model.layers.empty() && test_data.cols() != model.feature_dim()) {
        throw std::invalid_argument("predict: expected " + std::to_string(model.feature_dim()) +
                                    " columns, got " + std::to_string(test_data.cols()));
    }
    const Matrix input =
        already_normalized ? test_data : normalize_with(test_data, model.normalization);

    std::vector<Prediction> predictions;
    predictions.reserve(input.rows());
    for (std::size_t i = 0; i < input.rows(); ++i) {
        std::vector<double> features;
        try {
            features = multilayer_features(model.params, input.row(i), model.layers);
        } catch (NonConvergenceError& err) {
            err.row = i;
            throw;
        }
        predictions.push_back(predict_features(model, features));
    }
    return predictions;
}

Evaluation evaluate(const TrainedModel& model, const Matrix& test_data,
                    const std::vector<std::string>& true_labels, bool already_normalized) {
    if (test_data.rows() != true_labels.size()) {
        throw std::invalid_argument("evaluate: " + std::to_string(test_data.rows()) +
                                    " rows but " + std::to_string(true_labels.size()) +
                                    " labels");
    }
    const std::size_t s = model.classes.size();
    Evaluation eval;
    eval.confusion.assign(s, std::vector<std::size_t>(s, 0));
    eval.total = test_data.rows();

    const auto predictions = predict(model, test_data, already_normalized);
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        std::size_t true_idx = s;
        for (std::size_t c = 0; c < s; ++c) {
            if (model.classes[c] == true_labels[i]) {
                true_idx = c;
                break;
            }
        }
        if (true_idx == s) {
            throw std::invalid_argument("evaluate: label '" + true_labels[i] +
                                        "' is not a class of the model");
        }
        eval.confusion[true_idx][predictions[i].class_index] += 1;
        if (true_idx == predictions[i].class_index) ++eval.correct;
    }
    eval.accuracy = eval.total == 0 ? 0.0
                                    : static_cast<double>(eval.correct) /
                                          static_cast<double>(eval.total);
    return eval;
}

// --- model document ---------------------------------------------------

namespace {

constexpr int kModelVersion = 1;

std::string decimal(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

double parse_decimal(const nlohmann::json& j, const char* field) {
    if (!j.is_string()) {
        throw ParseError(std::string("model document: field '") + field +
                         "' must be a decimal string");
    }
    const std::string s = j.get<std::string>();
    try {
        std::size_t consumed = 0;
        const double v = std::stod(s, &consumed);
        if (consumed != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("model document: bad decimal '") + s + "' in field '" +
                         field + "'");
    }
}

MapKind map_kind_from_string(const std::string& name) {
    if (name == "skew-tent") return MapKind::SkewTent;
    if (name == "skew-binary") return MapKind::SkewBinary;
    throw ParseError("model document: unknown map kind '" + name + "'");
}

nlohmann::json layer_to_json(const LayerSpec& layer) {
    nlohmann::json neurons = nlohmann::json::array();
    for (const NeuronSpec& neuron : layer.neurons) {
        nlohmann::json couplings = nlohmann::json::array();
        for (const Coupling& c : neuron.couplings) {
            couplings.push_back({{"source", c.source}, {"weight", decimal(c.weight)}});
        }
        neurons.push_back({{"q", decimal(neuron.initial_activity)},
                           {"gamma", decimal(neuron.self_weight)},
                           {"couplings", couplings}});
    }
    return {{"map", to_string(layer.map_kind)}, {"skew", decimal(layer.skew)},
            {"neurons", neurons}};
}

LayerSpec layer_from_json(const nlohmann::json& j) {
    LayerSpec layer;
    layer.map_kind = map_kind_from_string(j.at("map").get<std::string>());
    layer.skew = parse_decimal(j.at("skew"), "skew");
    for (const auto& n : j.at("neurons")) {
        NeuronSpec neuron;
        neuron.initial_activity = parse_decimal(n.at("q"), "q");
        neuron.self_weight = parse_decimal(n.at("gamma"), "gamma");
        for (const auto& c : n.at("couplings")) {
            neuron.couplings.push_back(
                {c.at("source").get<std::size_t>(), parse_decimal(c.at("weight"), "weight")});
        }
        layer.neurons.push_back(std::move(neuron));
    }
    return layer;
}

} // namespace

std::string model_to_string(const TrainedModel& model) {
    nlohmann::json doc;
    doc["format"] = "chaosnet-model";
    doc["version"] = kModelVersion;
    doc["hyperparams"] = {{"q", decimal(model.params.q)},
                          {"threshold", decimal(model.params.threshold)},
                          {"map", to_string(model.params.map_kind)},
                          {"epsilon", decimal(model.params.epsilon)},
                          {"max_iters", model.params.max_iters}};
    doc["normalization"] = {{"min", decimal(model.normalization.min)},
                            {"max", decimal(model.normalization.max)}};
    doc["classes"] = model.classes;
    nlohmann::json vectors = nlohmann::json::array();
    for (const auto& mean : model.mean_vectors) {
        nlohmann::json row = nlohmann::json::array();
        for (double v : mean) row.push_back(decimal(v));
        vectors.push_back(std::move(row));
    }
    doc["mean_vectors"] = std::move(vectors);
    if (!model.layers.empty()) {
        nlohmann::json layers = nlohmann::json::array();
        for (const LayerSpec& layer : model.layers) layers.push_back(layer_to_json(layer));
        doc["layers"] = std::move(layers);
    }
    return doc.dump(2) + "\n";
}

TrainedModel model_from_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("model document: ") + err.what());
    }
    try {
        if (doc.value("format", "") != "chaosnet-model") {
            throw ParseError("model document: missing or wrong 'format' field");
        }
        const int version = doc.at("version").get<int>();
        if (version != kModelVersion) {
            throw ParseError("model document: unsupported version " + std::to_string(version) +
                             " (this build reads version " + std::to_string(kModelVersion) +
                             ")");
        }
        TrainedModel model;
        const auto& hp = doc.at("hyperparams");
        model.params.q = parse_decimal(hp.at("q"), "q");
        model.params.threshold = parse_decimal(hp.at("threshold"), "threshold");
        model.params.map_kind = map_kind_from_string(hp.at("map").get<std::string>());
        model.params.epsilon = parse_decimal(hp.at("epsilon"), "epsilon");
        model.params.max_iters = hp.at("max_iters").get<std::size_t>();
        model.normalization.min = parse_decimal(doc.at("normalization").at("min"), "min");
        model.normalization.max = parse_decimal(doc.at("normalization").at("max"), "max");
        model.classes = doc.at("classes").get<std::vector<std::string>>();
        for (const auto& row : doc.at("mean_vectors")) {
            std::vector<double> mean;
            mean.reserve(row.size());
            for (const auto& v : row) mean.push_back(parse_decimal(v, "mean_vectors"));
            model.mean_vectors.push_back(std::move(mean));
        }
        if (model.mean_vectors.size() != model.classes.size()) {
            throw ParseError("model document: class count does not match mean vector count");
        }
        if (doc.contains("layers")) {
            for (const auto& layer : doc.at("layers")) {
                model.layers.push_back(layer_from_json(layer));
            }
        }
        return model;
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("model document: ") + err.what());
    }
}

void save_model(const TrainedModel& model, const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) {
        throw ParseError("save_model: cannot open " + destination.string() + " for writing");
    }
    out << model_to_string(model);
}

TrainedModel load_model(const std::filesystem::path& source) {
    std::ifstream in(source);
    if (!in) {
        throw ParseError("load_model: cannot open " + source.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_from_string(buffer.str());
}

} // namespace chaosnet
