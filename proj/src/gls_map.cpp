#include "chaosnet/gls_map.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chaosnet {

const char* to_string(MapKind kind) noexcept {
    return kind == MapKind::SkewTent ? "skew-tent" : "skew-binary";
}

GlsMap::GlsMap(MapKind kind, double skew) : kind_(kind), skew_(skew) {
    if (!(skew > 0.0 && skew < 1.0)) {
        std::ostringstream msg;
        msg << "GlsMap: skew must lie in (0,1), got " << skew;
        throw std::invalid_argument(msg.str());
    }
}

double GlsMap::apply(double x) const {
    if (!(x >= 0.0 && x < 1.0)) {
        std::ostringstream msg;
        msg << "GlsMap::apply: x must lie in [0,1), got " << x;
        throw std::domain_error(msg.str());
    }
    double y;
    if (x < skew_) {
        y = x / skew_;
    } else if (kind_ == MapKind::SkewBinary) {
        y = (x - skew_) / (1.0 - skew_);
    } else {
        y = (1.0 - x) / (1.0 - skew_);
    }
    // Fold the measure-zero hit of the right endpoint back into the domain.
    if (y >= 1.0) y = 0.0;
    return y;
}

std::vector<double> GlsMap::iterate(double x0, std::size_t n) const {
    std::vector<double> orbit;
    orbit.reserve(n + 1);
    orbit.push_back(x0);
    double x = x0;
    for (std::size_t i = 0; i < n; ++i) {
        x = apply(x);
        orbit.push_back(x);
    }
    return orbit;
}

double GlsMap::lyapunov_exponent(LogBase base) const noexcept {
    const double b = skew_;
    const double nats = -b * std::log(b) - (1.0 - b) * std::log(1.0 - b);
    return base == LogBase::Bits ? nats / std::log(2.0) : nats;
}

std::vector<Symbol> symbolize(std::span<const double> trajectory, double b) {
    std::vector<Symbol> symbols;
    symbols.reserve(trajectory.size());
    for (double x : trajectory) {
        symbols.push_back(x < b ? Symbol::L : Symbol::R);
    }
    return symbols;
}

} // namespace chaosnet
