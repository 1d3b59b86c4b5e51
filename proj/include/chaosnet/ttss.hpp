#pragma once

#include <cstddef>
#include <vector>

#include "chaosnet/gls_map.hpp"
#include "chaosnet/matrix.hpp"

namespace chaosnet {

/// Hyperparameters of the TT-SS scheme. `threshold` is the skew
/// parameter b: it shapes the map and doubles as the neuron's internal
/// discrimination threshold.
struct Hyperparams {
    double q = 0.0;            // initial neural activity in [0,1)
    double threshold = 0.5;    // b in (0,1)
    MapKind map_kind = MapKind::SkewTent;
    double epsilon = 0.01;     // neighbourhood radius, > 0
    std::size_t max_iters = 10'000;

    /// Throws std::invalid_argument on any out-of-range field.
    void validate() const;

    GlsMap map() const { return GlsMap(map_kind, threshold); }
};

/// Chaotic activity of one neuron answering one stimulus:
/// activity = [A(0)=q, A(1), ..., A(N)] with firing time N, where A(N)
/// is the first entry inside (stimulus-eps, stimulus+eps).
struct FiringTrajectory {
    std::vector<double> activity;
    std::size_t firing_time = 0;
};

/// Iterates the map from q until the activity enters the epsilon
/// neighbourhood of the stimulus. Throws NonConvergenceError when the
/// iteration cap is exceeded (periodic q values admit no firing time).
FiringTrajectory fire(const Hyperparams& params, double stimulus);

/// Fraction of the firing time spent above the discrimination
/// threshold:
///
///     p = #{ t in [0, N) : A(t) > b } / N,      p = 0 when N = 0.
///
/// The neuron is active for N time units; the count runs over the N
/// activity values held during those units (the arrival value A(N) is
/// the stop marker, not a unit of activity). Among the candidate
/// counting conventions this is the only one reproducing the
/// arithmetic-stable entries of the worked reference example; see
/// tests/test_ttss.cpp for the disambiguation oracle.
double ttss_feature(const FiringTrajectory& traj, double threshold);

/// Convenience: fire + ttss_feature.
double ttss_feature(const Hyperparams& params, double stimulus);

/// Element-wise TT-SS features of a whole data matrix (rows are
/// instances, columns are stimuli). Shape-preserving. Non-convergence
/// errors are re-thrown with the (row, column) coordinates attached.
Matrix extract_features(const Matrix& data, const Hyperparams& params);

} // namespace chaosnet
