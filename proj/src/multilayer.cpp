#include "chaosnet/multilayer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chaosnet/errors.hpp"

namespace chaosnet {

void LayerSpec::validate(std::size_t prev_size) const {
    if (!(skew > 0.0 && skew < 1.0)) {
        throw ConfigError("LayerSpec: skew must lie in (0,1)");
    }
    for (std::size_t j = 0; j < neurons.size(); ++j) {
        const NeuronSpec& neuron = neurons[j];
        std::ostringstream where;
        where << "LayerSpec: neuron " << j;
        if (!(neuron.initial_activity > 0.0 && neuron.initial_activity < 1.0)) {
            throw ConfigError(where.str() + ": initial activity must lie in (0,1)");
        }
        if (neuron.self_weight < 0.0) {
            throw ConfigError(where.str() + ": negative self weight");
        }
        double sum = neuron.self_weight;
        for (const Coupling& c : neuron.couplings) {
            if (c.weight < 0.0) {
                throw ConfigError(where.str() + ": negative coupling weight");
            }
            if (c.source >= prev_size) {
                std::ostringstream msg;
                msg << where.str() << ": coupling source " << c.source
                    << " out of range for previous layer of size " << prev_size;
                throw ConfigError(msg.str());
            }
            sum += c.weight;
        }
        if (std::abs(sum - 1.0) > kWeightSumTolerance) {
            std::ostringstream msg;
            msg << where.str() << ": coupling weights sum to " << sum << ", expected 1";
            throw ConfigError(msg.str());
        }
    }
}

Matrix input_layer_series(const Hyperparams& params, std::span<const double> instance) {
    std::vector<FiringTrajectory> trajectories;
    trajectories.reserve(instance.size());
    std::size_t n_max = 0;
    for (std::size_t i = 0; i < instance.size(); ++i) {
        try {
            trajectories.push_back(fire(params, instance[i]));
        } catch (const NonConvergenceError& err) {
            std::ostringstream msg;
            msg << err.what() << " (input neuron " << i << ")";
            NonConvergenceError annotated(err.q(), err.stimulus(), err.epsilon(),
                                          err.max_iters(), msg.str());
            annotated.column = i;
            throw annotated;
        }
        n_max = std::max(n_max, trajectories.back().firing_time);
    }

    Matrix series(instance.size(), n_max + 1, 0.0);
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const auto& activity = trajectories[i].activity;
        for (std::size_t t = 0; t < activity.size(); ++t) {
            series(i, t) = activity[t];
        }
    }
    return series;
}

Matrix hidden_layer_series(const LayerSpec& spec, const Matrix& prev) {
    spec.validate(prev.rows());
    const std::size_t columns = prev.cols();
    Matrix series(spec.size(), columns);
    const GlsMap map(spec.map_kind, spec.skew);

    for (std::size_t j = 0; j < spec.size(); ++j) {
        const NeuronSpec& neuron = spec.neurons[j];
        double state = neuron.initial_activity;
        for (std::size_t t = 0; t < columns; ++t) {
            const double self_term = t == 0 ? state : map.apply(state);
            double value = neuron.self_weight * self_term;
            for (const Coupling& c : neuron.couplings) {
                value += c.weight * prev(c.source, t);
            }
            // Convex combination of [0,1) values; guard the rounding edge
            // so the next map application stays in-domain.
            if (value >= 1.0) value = std::nextafter(1.0, 0.0);
            series(j, t) = value;
            state = value;
        }
    }
    return series;
}

LayerSpec paired_layer_spec(std::size_t n_inputs, double eta, double gamma, double q,
                            MapKind map_kind, double skew) {
    if (n_inputs == 0) {
        throw ConfigError("paired_layer_spec: need at least one input neuron");
    }
    if (std::abs(2.0 * eta + gamma - 1.0) > kWeightSumTolerance) {
        std::ostringstream msg;
        msg << "paired_layer_spec: 2*eta + gamma must equal 1, got " << 2.0 * eta + gamma;
        throw ConfigError(msg.str());
    }
    LayerSpec spec;
    spec.map_kind = map_kind;
    spec.skew = skew;
    const std::size_t pairs = n_inputs / 2;
    for (std::size_t j = 0; j < pairs; ++j) {
        NeuronSpec neuron;
        neuron.couplings = {{2 * j, eta}, {2 * j + 1, eta}};
        neuron.self_weight = gamma;
        neuron.initial_activity = q;
        spec.neurons.push_back(std::move(neuron));
    }
    if (n_inputs % 2 == 1) {
        // Odd input count: the last value is passed through as such.
        NeuronSpec neuron;
        neuron.couplings = {{n_inputs - 1, 1.0}};
        neuron.self_weight = 0.0;
        neuron.initial_activity = q;
        spec.neurons.push_back(std::move(neuron));
    }
    spec.validate(n_inputs);
    return spec;
}

std::vector<double> hidden_ttss_features(const Matrix& series, double threshold) {
    std::vector<double> features(series.rows(), 0.0);
    if (series.cols() == 0) return features;
    for (std::size_t j = 0; j < series.rows(); ++j) {
        std::size_t above = 0;
        for (double v : series.row(j)) {
            if (v > threshold) ++above;
        }
        features[j] = static_cast<double>(above) / static_cast<double>(series.cols());
    }
    return features;
}

std::vector<double> multilayer_features(const Hyperparams& params,
                                        std::span<const double> instance,
                                        std::span<const LayerSpec> layers) {
    if (layers.empty()) {
        std::vector<double> features(instance.size());
        for (std::size_t k = 0; k < instance.size(); ++k) {
            features[k] = ttss_feature(params, instance[k]);
        }
        return features;
    }
    Matrix series = input_layer_series(params, instance);
    for (const LayerSpec& layer : layers) {
        series = hidden_layer_series(layer, series);
    }
    return hidden_ttss_features(series, params.threshold);
}

Matrix multilayer_features(const Hyperparams& params, const Matrix& data,
                           std::span<const LayerSpec> layers) {
    Matrix out;
    if (data.rows() == 0) {
        std::size_t dim = data.cols();
        for (const LayerSpec& layer : layers) dim = layer.size();
        out.set_cols(dim);
        return out;
    }
    for (std::size_t i = 0; i < data.rows(); ++i) {
        try {
            out.push_row(multilayer_features(params, data.row(i), layers));
        } catch (NonConvergenceError& err) {
            err.row = i;
            throw;
        }
    }
    return out;
}

} // namespace chaosnet
