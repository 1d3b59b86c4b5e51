#include "chaosnet/noise_lab.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chaosnet/rng.hpp"

namespace chaosnet {

PerturbedModel perturb_model(const TrainedModel& model, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) {
        throw std::invalid_argument("perturb_model: sigma must be non-negative");
    }
    PerturbedModel out;
    out.model = model;
    out.noise.reserve(model.mean_vectors.size());
    Rng rng(seed);
    for (std::size_t c = 0; c < model.mean_vectors.size(); ++c) {
        std::vector<double> draws(model.mean_vectors[c].size(), 0.0);
        for (std::size_t k = 0; k < draws.size(); ++k) {
            draws[k] = sigma == 0.0 ? 0.0 : sigma * rng.next_normal();
            out.model.mean_vectors[c][k] += draws[k];
        }
        out.noise.push_back(std::move(draws));
    }
    return out;
}

double snr_db(const TrainedModel& model, const std::vector<std::vector<double>>& noise) {
    if (noise.size() != model.mean_vectors.size()) {
        throw std::invalid_argument("snr_db: noise shape does not match the model");
    }
    double signal_power = 0.0;
    double noise_power = 0.0;
    for (std::size_t c = 0; c < noise.size(); ++c) {
        if (noise[c].size() != model.mean_vectors[c].size()) {
            throw std::invalid_argument("snr_db: noise shape does not match the model");
        }
        for (std::size_t k = 0; k < noise[c].size(); ++k) {
            signal_power += model.mean_vectors[c][k] * model.mean_vectors[c][k];
            noise_power += noise[c][k] * noise[c][k];
        }
    }
    if (noise_power == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal_power / noise_power);
}

std::vector<NoiseTrial> noise_sweep(const TrainedModel& model, const Matrix& test_data,
                                    const std::vector<std::string>& true_labels,
                                    bool already_normalized, std::span<const double> sigmas,
                                    std::size_t trials_per_sigma, std::uint64_t seed) {
    if (sigmas.empty()) {
        throw std::invalid_argument("noise_sweep: sigma list must be non-empty");
    }
    std::vector<NoiseTrial> results;
    results.reserve(sigmas.size() * trials_per_sigma);
    for (std::size_t si = 0; si < sigmas.size(); ++si) {
        for (std::size_t trial = 0; trial < trials_per_sigma; ++trial) {
            const std::uint64_t trial_seed =
                Rng::stream(seed, si, trial).next_u64();
            auto perturbed = perturb_model(model, sigmas[si], trial_seed);
            NoiseTrial record;
            record.sigma = sigmas[si];
            record.seed = trial_seed;
            record.snr_db = snr_db(model, perturbed.noise);
            record.accuracy =
                evaluate(perturbed.model, test_data, true_labels, already_normalized).accuracy;
            results.push_back(record);
        }
    }
    return results;
}

} // namespace chaosnet
