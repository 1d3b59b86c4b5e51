#pragma once

#include <span>
#include <vector>

namespace chaosnet {

enum class MapKind { SkewTent, SkewBinary };

const char* to_string(MapKind kind) noexcept;

/// One-dimensional piecewise-linear chaotic map on [0,1) with a single
/// branch point at `skew`. Two families:
///
///   skew-binary:  x/b          on [0,b),   (x-b)/(1-b)  on [b,1)
///   skew-tent:    x/b          on [0,b),   (1-x)/(1-b)  on [b,1)
///
/// Outputs that round to exactly 1.0 (possible only at measure-zero
/// inputs and near-boundary rounding) are folded back to 0.0 so the
/// codomain stays [0,1) and iteration is total.
class GlsMap {
public:
    GlsMap(MapKind kind, double skew);

    MapKind kind() const noexcept { return kind_; }
    double skew() const noexcept { return skew_; }

    /// One step of the map. Throws std::domain_error for x outside [0,1).
    double apply(double x) const;

    /// Orbit [x0, T(x0), ..., T^n(x0)] of length n+1.
    std::vector<double> iterate(double x0, std::size_t n) const;

    /// -b ln b - (1-b) ln(1-b), optionally in bits (divide by ln 2).
    /// Strictly positive for any skew in (0,1); maximal at b = 1/2.
    enum class LogBase { Nats, Bits };
    double lyapunov_exponent(LogBase base) const noexcept;

private:
    MapKind kind_;
    double skew_;
};

enum class Symbol : char { L = 'L', R = 'R' };

/// L/R itinerary of a trajectory relative to the partition at b:
/// value < b -> L, value >= b -> R (the branch point belongs to the
/// right branch, matching the half-open interval the map applies).
std::vector<Symbol> symbolize(std::span<const double> trajectory, double b);

} // namespace chaosnet
