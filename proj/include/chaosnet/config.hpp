#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chaosnet/ttss.hpp"

namespace chaosnet {

/// Experiment description parsed from a key-value config document.
/// Every key is checked before any computation: unknown keys are errors
/// (silent typos corrupt sweeps).
struct ExperimentConfig {
    std::filesystem::path dataset;
    int label_column = -1;
    bool has_header = true;

    Hyperparams params;

    /// "global": scale with the whole data matrix's extrema before
    /// splitting (the reference procedure); "train": use the extrema of
    /// the sampled training rows only.
    std::string normalization = "global";

    std::optional<std::size_t> k;  // training samples per class; all rows when absent
    std::size_t k_min = 1;
    std::size_t k_max = 7;
    std::size_t trials = 10;
    std::uint64_t seed = 1;

    std::vector<double> sigmas;

    /// Optional paired hidden layer (the two-source coupling scheme).
    std::optional<double> pair_eta;
    std::optional<double> pair_gamma;
    std::optional<double> pair_q;

    std::optional<std::filesystem::path> out;

    /// Raw lines of the source document, echoed into output headers.
    std::vector<std::string> source_lines;

    bool has_pairing() const { return pair_eta.has_value(); }
};

/// Parses `key = value` lines ('#' starts a comment). Throws
/// ConfigError on unknown keys, malformed values, or inconsistent
/// pairing settings.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& source);

} // namespace chaosnet
