#pragma once

#include <cstdint>
#include <optional>

#include "chaosnet/classifier.hpp"
#include "chaosnet/config.hpp"
#include "chaosnet/datakit.hpp"

namespace chaosnet {

/// A loaded experiment: the raw dataset plus its configuration.
/// Does the dataset -> normalize -> sample -> train plumbing shared by
/// the command-line tools.
struct Experiment {
    LabeledDataset dataset;
    ExperimentConfig config;

    static Experiment load(const ExperimentConfig& config);

    struct Trial {
        TrainedModel model;
        Matrix test_features;                 // normalized held-out rows
        std::vector<std::string> test_labels; // aligned with test_features
    };

    /// Samples k rows per class with the given seed (all rows and no
    /// holdout when k is absent), trains, and returns the model with
    /// the normalized remainder. Honors config.normalization:
    /// "global" scales everything with the full matrix extrema before
    /// splitting, "train" scales with the sampled rows' extrema.
    Trial run_trial(std::optional<std::size_t> k, std::uint64_t seed) const;

    /// Hidden layers implied by the config's pairing settings, if any.
    std::vector<LayerSpec> layers_for(std::size_t n_inputs) const;
};

struct SweepRecord {
    std::size_t k = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double accuracy = 0.0;
};

/// Few-shot sweep: for every k in [k_min, k_max] and every trial,
/// train on a fresh seeded split and evaluate on the remainder.
std::vector<SweepRecord> few_shot_sweep(const Experiment& experiment);

} // namespace chaosnet
