#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chaosnet/classifier.hpp"

namespace chaosnet {

/// One point of the parameter-noise protocol: the model's mean vectors
/// perturbed with zero-mean Gaussian noise of deviation sigma,
/// evaluated on held-out data.
struct NoiseTrial {
    double sigma = 0.0;
    double snr_db = 0.0;  // +infinity when sigma == 0 (no noise power)
    double accuracy = 0.0;
    std::uint64_t seed = 0;
};

struct PerturbedModel {
    TrainedModel model;
    std::vector<std::vector<double>> noise;  // realized draws, same shape as mean_vectors
};

/// Adds one independent N(0, sigma^2) draw to every component of every
/// mean vector. Components are not clamped: perturbed parameters may
/// leave [0,1], which cosine similarity tolerates; clamping would
/// censor the noise distribution. The seed fixes the draw.
PerturbedModel perturb_model(const TrainedModel& model, double sigma, std::uint64_t seed);

/// 10 log10( sum M^2 / sum noise^2 ) over all components, using the
/// realized noise rather than the analytic sigma^2 power. Returns
/// +infinity when the noise power is zero.
double snr_db(const TrainedModel& model, const std::vector<std::vector<double>>& noise);

/// Full protocol: for each sigma and trial, perturb with a per-trial
/// derived seed, evaluate, and record (sigma, snr_db, accuracy, seed).
/// Output is ordered by sigma then trial.
std::vector<NoiseTrial> noise_sweep(const TrainedModel& model, const Matrix& test_data,
                                    const std::vector<std::string>& true_labels,
                                    bool already_normalized, std::span<const double> sigmas,
                                    std::size_t trials_per_sigma, std::uint64_t seed);

} // namespace chaosnet
