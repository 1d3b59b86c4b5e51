#include "chaosnet/ttss.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chaosnet/errors.hpp"

namespace chaosnet {

void Hyperparams::validate() const {
    std::ostringstream msg;
    if (!(q >= 0.0 && q < 1.0)) {
        msg << "Hyperparams: q must lie in [0,1), got " << q;
    } else if (!(threshold > 0.0 && threshold < 1.0)) {
        msg << "Hyperparams: threshold must lie in (0,1), got " << threshold;
    } else if (!(epsilon > 0.0)) {
        msg << "Hyperparams: epsilon must be positive, got " << epsilon;
    } else if (max_iters < 1) {
        msg << "Hyperparams: max_iters must be at least 1";
    } else {
        return;
    }
    throw std::invalid_argument(msg.str());
}

FiringTrajectory fire(const Hyperparams& params, double stimulus) {
    params.validate();
    if (!(stimulus >= 0.0 && stimulus <= 1.0)) {
        std::ostringstream msg;
        msg << "fire: stimulus must be normalized to [0,1], got " << stimulus;
        throw std::domain_error(msg.str());
    }
    const GlsMap map = params.map();

    FiringTrajectory traj;
    traj.activity.push_back(params.q);
    double x = params.q;
    std::size_t t = 0;
    while (!(std::abs(x - stimulus) < params.epsilon)) {
        if (t >= params.max_iters) {
            std::ostringstream msg;
            msg << "fire: activity from q=" << params.q << " never entered the epsilon="
                << params.epsilon << " neighbourhood of stimulus=" << stimulus << " within "
                << params.max_iters << " iterations; q may lie on a periodic orbit, try a "
                << "different initial activity";
            throw NonConvergenceError(params.q, stimulus, params.epsilon, params.max_iters,
                                      msg.str());
        }
        x = map.apply(x);
        traj.activity.push_back(x);
        ++t;
    }
    traj.firing_time = t;
    return traj;
}

double ttss_feature(const FiringTrajectory& traj, double threshold) {
    const std::size_t n = traj.firing_time;
    if (n == 0) return 0.0;
    std::size_t above = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (traj.activity[t] > threshold) ++above;
    }
    return static_cast<double>(above) / static_cast<double>(n);
}

double ttss_feature(const Hyperparams& params, double stimulus) {
    return ttss_feature(fire(params, stimulus), params.threshold);
}

Matrix extract_features(const Matrix& data, const Hyperparams& params) {
    Matrix features(data.rows(), data.cols());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t k = 0; k < data.cols(); ++k) {
            try {
                features(i, k) = ttss_feature(params, data(i, k));
            } catch (const NonConvergenceError& err) {
                std::ostringstream msg;
                msg << err.what() << " (at row " << i << ", column " << k << ")";
                NonConvergenceError annotated(err.q(), err.stimulus(), err.epsilon(),
                                              err.max_iters(), msg.str());
                annotated.row = i;
                annotated.column = k;
                throw annotated;
            }
        }
    }
    return features;
}

} // namespace chaosnet
