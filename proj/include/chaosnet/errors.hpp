#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace chaosnet {

/// A neuron's activity never entered the epsilon neighbourhood of the
/// stimulus within the iteration cap. Carries the offending inputs so
/// callers can report which matrix cell failed.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(double q, double stimulus, double epsilon, std::size_t max_iters,
                        std::string message)
        : std::runtime_error(std::move(message)),
          q_(q), stimulus_(stimulus), epsilon_(epsilon), max_iters_(max_iters) {}

    double q() const noexcept { return q_; }
    double stimulus() const noexcept { return stimulus_; }
    double epsilon() const noexcept { return epsilon_; }
    std::size_t max_iters() const noexcept { return max_iters_; }

    std::optional<std::size_t> row;
    std::optional<std::size_t> column;

private:
    double q_;
    double stimulus_;
    double epsilon_;
    std::size_t max_iters_;
};

/// Malformed input document (CSV, model file, config, coded stream).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid experiment or layer configuration, detected before any work runs.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chaosnet
