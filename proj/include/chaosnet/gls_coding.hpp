#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chaosnet::coding {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always normalized: gcd(num, den) = 1, den > 0.
/// Lossless GLS coding breaks down past ~40 bits in floating point, so
/// everything in this module runs on exact integer arithmetic.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long value) : num_(value), den_(1) {}
    Rational(BigInt num, BigInt den);

    /// Exact value of a finite double (every double is m * 2^e).
    static Rational from_double(double value);

    /// Parses "a/b" or a plain integer "a".
    static Rational parse(const std::string& text);

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    std::string str() const;
    double to_double() const;

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const = default;
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

private:
    BigInt num_;
    BigInt den_;
};

/// Sub-interval of [0,1) representing a losslessly encoded bitstream.
/// After encoding with skew p, the width is exactly p^n0 * (1-p)^n1.
struct CodingInterval {
    Rational low;
    Rational high;
    Rational width() const { return high - low; }
};

/// Encodes a bitstream by successive interval refinement on the
/// skew-binary partition: bit 0 keeps the lower sub-interval of
/// relative width p, bit 1 the upper one of relative width 1-p.
/// This is the backward iteration of the skew-binary map with skew p.
/// Requires non-empty bits and p strictly inside (0,1).
CodingInterval encode(std::span<const std::uint8_t> bits, const Rational& p);

/// Recovers n bits by iterating the exact skew-binary map with skew p
/// from x, emitting the branch symbol at each step (0 for [0,p), 1 for
/// [p,1)). decode(midpoint(encode(s, p)), p, |s|) == s for every s.
std::vector<std::uint8_t> decode(const Rational& x, const Rational& p, std::size_t n);

Rational midpoint(const CodingInterval& interval);

/// -log2(width): the exact information content of the interval in bits.
/// Equals n * H(p-hat) when the stream was encoded with its own
/// empirical zero-frequency.
double code_length_bits(const CodingInterval& interval);

/// Binary Shannon entropy in bits.
double binary_entropy_bits(double p);

/// Encoded form of one bitplane: either a GLS coding interval
/// representative with the plane's empirical zero-probability, or a
/// constant bit stored out-of-band when that probability is degenerate
/// (the skew parameter must stay inside (0,1)).
struct EncodedBitplane {
    Rational zero_prob;                       // empirical probability of 0
    Rational representative;                  // interval midpoint (unused when constant)
    std::optional<std::uint8_t> constant_bit; // set when zero_prob is 0 or 1
};

/// Constructive finite-support function approximation: the sampled
/// function is shifted by its minimum, scaled by S_eps = ceil(1/(2 eps)),
/// rounded to integers, split into bitplanes (MSB first), and each
/// bitplane GLS-encoded with its own empirical zero-probability.
/// Reconstruction differs from the input by at most eps per sample.
struct UatCode {
    BigInt scale;                        // S_eps
    Rational offset;                     // minimum sample, exact
    std::size_t length = 0;              // LEN, number of samples
    std::vector<EncodedBitplane> bitplanes;  // MSB..LSB
};

UatCode uat_encode(std::span<const double> samples, double epsilon);
std::vector<double> uat_decode(const UatCode& code);

std::string uat_code_to_string(const UatCode& code);
UatCode uat_code_from_string(const std::string& text);
void save_uat_code(const UatCode& code, const std::filesystem::path& destination);
UatCode load_uat_code(const std::filesystem::path& source);

} // namespace chaosnet::coding
