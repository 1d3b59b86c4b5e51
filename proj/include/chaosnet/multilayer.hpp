#pragma once

#include <cstddef>
#include <vector>

#include "chaosnet/gls_map.hpp"
#include "chaosnet/matrix.hpp"
#include "chaosnet/ttss.hpp"

namespace chaosnet {

struct Coupling {
    std::size_t source = 0;  // index into the previous layer
    double weight = 0.0;     // eta, >= 0
};

struct NeuronSpec {
    std::vector<Coupling> couplings;
    double self_weight = 0.0;       // gamma, >= 0
    double initial_activity = 0.5;  // q of this neuron, in (0,1)
};

/// One hidden layer of coupled GLS neurons. Each neuron j evolves as
///
///   H_j(0) = sum_i eta_ij * prev[i][0] + gamma_j * q_j
///   H_j(t) = sum_i eta_ij * prev[i][t] + gamma_j * T(H_j(t-1))
///
/// with the weights of every neuron summing to one (within 1e-12), so
/// each value is a convex combination staying inside [0,1).
struct LayerSpec {
    std::vector<NeuronSpec> neurons;
    MapKind map_kind = MapKind::SkewTent;
    double skew = 0.5;

    std::size_t size() const { return neurons.size(); }

    /// Checks weight positivity, the sum-to-one rule and source index
    /// bounds against the previous layer's size. Throws ConfigError.
    void validate(std::size_t prev_size) const;
};

/// Tolerance of the sum-to-one weight rule; admits decimal literals
/// like 0.4995 without spurious rejection.
inline constexpr double kWeightSumTolerance = 1e-12;

/// Firing trajectories of the input layer for one data instance, as an
/// n x (N_max + 1) matrix. Row i is the trajectory of neuron i,
/// zero-padded past its own firing time (A_i(t) = 0 for t > N_i).
Matrix input_layer_series(const Hyperparams& params, std::span<const double> instance);

/// Activity series of a hidden layer driven by the previous layer's
/// series (same column count). Validates the spec before computing.
Matrix hidden_layer_series(const LayerSpec& spec, const Matrix& prev);

/// Pairing connectivity: neuron j reads previous-layer neurons 2j-1 and
/// 2j (1-based) with weight eta each and keeps gamma for itself; needs
/// 2*eta + gamma = 1. When n_inputs is odd the last neuron passes its
/// single input through unchanged (weight 1). Yields ceil(n_inputs/2)
/// neurons.
LayerSpec paired_layer_spec(std::size_t n_inputs, double eta, double gamma, double q,
                            MapKind map_kind, double skew);

/// TT-SS-style features of hidden neurons. Hidden neurons have no
/// individual halting time, so the fraction runs over the whole series:
/// feature_j = #{ t in [0, N_max] : H_j(t) > b } / (N_max + 1).
std::vector<double> hidden_ttss_features(const Matrix& series, double threshold);

/// Full pipeline for one instance: input trajectories, then each hidden
/// layer in turn, then features of the last layer. With no layers this
/// reduces to the plain TT-SS feature vector.
std::vector<double> multilayer_features(const Hyperparams& params,
                                        std::span<const double> instance,
                                        std::span<const LayerSpec> layers);

/// Row-wise multilayer_features over a whole data matrix.
Matrix multilayer_features(const Hyperparams& params, const Matrix& data,
                           std::span<const LayerSpec> layers);

} // namespace chaosnet
