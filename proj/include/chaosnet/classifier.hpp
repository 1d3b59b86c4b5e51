#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "chaosnet/datakit.hpp"
#include "chaosnet/matrix.hpp"
#include "chaosnet/multilayer.hpp"
#include "chaosnet/ttss.hpp"

namespace chaosnet {

/// Learned state of the TT-SS classifier: one mean representation
/// vector per class plus everything needed to featurize new data the
/// same way (hyperparameters, optional hidden layers, input scaling).
struct TrainedModel {
    std::vector<std::string> classes;
    std::vector<std::vector<double>> mean_vectors;  // s vectors of equal length
    Hyperparams params;
    Extrema normalization;
    std::vector<LayerSpec> layers;  // empty for the single-layer model

    std::size_t class_count() const { return classes.size(); }
    std::size_t feature_dim() const { return mean_vectors.empty() ? 0 : mean_vectors[0].size(); }
};

struct Prediction {
    std::size_t class_index = 0;
    std::string label;
    std::vector<double> similarities;  // cos(theta_k) per class
};

/// u.v / (|u| |v|); defined as 0 when either norm vanishes so the
/// argmax stays total. Throws std::invalid_argument on length mismatch.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// Trains from per-class data matrices (already normalized to [0,1]):
/// extracts TT-SS features (through hidden layers when `layers` is
/// non-empty) and stores the column-wise mean per class.
TrainedModel train(const std::vector<Matrix>& per_class_data,
                   const std::vector<std::string>& class_labels, const Hyperparams& params,
                   const Extrema& normalization, std::vector<LayerSpec> layers = {});

/// Mean-vector computation from already-extracted feature matrices.
TrainedModel train_from_features(const std::vector<Matrix>& per_class_features,
                                 const std::vector<std::string>& class_labels,
                                 const Hyperparams& params, const Extrema& normalization,
                                 std::vector<LayerSpec> layers = {});

/// Featurizes test rows with the model's parameters and labels each
/// with the class of maximum cosine similarity (smallest index on
/// ties). When `already_normalized` is false the rows are first scaled
/// with the model's stored extrema and clamped to [0,1].
std::vector<Prediction> predict(const TrainedModel& model, const Matrix& test_data,
                                bool already_normalized = true);

/// Prediction on already-extracted feature rows.
Prediction predict_features(const TrainedModel& model, std::span<const double> features);

struct Evaluation {
    double accuracy = 0.0;
    std::vector<std::vector<std::size_t>> confusion;  // [true class][predicted class]
    std::size_t total = 0;
    std::size_t correct = 0;
};

Evaluation evaluate(const TrainedModel& model, const Matrix& test_data,
                    const std::vector<std::string>& true_labels,
                    bool already_normalized = true);

/// Model document: versioned JSON with vector components written as
/// full-precision decimal strings; load_model round-trips bit-exactly
/// and rejects unknown versions.
void save_model(const TrainedModel& model, const std::filesystem::path& destination);
TrainedModel load_model(const std::filesystem::path& source);

std::string model_to_string(const TrainedModel& model);
TrainedModel model_from_string(const std::string& text);

} // namespace chaosnet
