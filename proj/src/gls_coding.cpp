#include "chaosnet/gls_coding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chaosnet/errors.hpp"

namespace chaosnet::coding {

namespace {

/// log2 of a positive big integer, accurate to ~1e-12 absolute.
double log2_big(const BigInt& value) {
    const unsigned bits = boost::multiprecision::msb(value);
    if (bits <= 62) return std::log2(value.convert_to<double>());
    const BigInt top = value >> (bits - 62);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 62);
}

void require_skew_in_unit(const Rational& p, const char* who) {
    if (p.num() <= 0 || p.num() >= p.den()) {
        throw std::invalid_argument(std::string(who) + ": skew p must lie strictly inside " +
                                    "(0,1), got " + p.str());
    }
}

} // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("Rational::from_double: value must be finite");
    }
    int exp = 0;
    const double mant = std::frexp(value, &exp);  // value = mant * 2^exp, |mant| in [0.5, 1)
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num(scaled);
    BigInt den(1);
    if (exp >= 0) {
        num <<= exp;
    } else {
        den <<= -exp;
    }
    return Rational(std::move(num), std::move(den));
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text), 1);
        }
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("Rational::parse: malformed rational '" + text + "'");
    }
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

double Rational::to_double() const {
    if (num_ == 0) return 0.0;
    // Shift each side down to ~62 bits and restore the exponent with
    // ldexp; truncation error is below 2^-62 relative.
    const BigInt abs_num = num_ < 0 ? BigInt(-num_) : num_;
    const long nbits = static_cast<long>(boost::multiprecision::msb(abs_num));
    const long dbits = static_cast<long>(boost::multiprecision::msb(den_));
    const long nshift = std::max(0L, nbits - 62);
    const long dshift = std::max(0L, dbits - 62);
    const double n = BigInt(abs_num >> nshift).convert_to<double>();
    const double d = BigInt(den_ >> dshift).convert_to<double>();
    const double result = std::ldexp(n / d, static_cast<int>(nshift - dshift));
    return num_ < 0 ? -result : result;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

CodingInterval encode(std::span<const std::uint8_t> bits, const Rational& p) {
    if (bits.empty()) {
        throw std::invalid_argument("encode: bitstream must be non-empty");
    }
    require_skew_in_unit(p, "encode");

    // Running interval [L/D, (L+W)/D) with the common denominator D = c^k
    // kept implicit; no per-step gcd is needed.
    const BigInt& a = p.num();
    const BigInt& c = p.den();
    const BigInt b = c - a;  // numerator of 1-p

    BigInt low = 0;
    BigInt width = 1;
    for (std::uint8_t bit : bits) {
        if (bit == 0) {
            low *= c;
            width *= a;
        } else if (bit == 1) {
            low = low * c + width * a;
            width *= b;
        } else {
            throw std::invalid_argument("encode: bits must be 0 or 1");
        }
    }
    const BigInt den = boost::multiprecision::pow(c, static_cast<unsigned>(bits.size()));

    CodingInterval interval;
    interval.low = Rational(low, den);
    interval.high = Rational(low + width, den);
    return interval;
}

std::vector<std::uint8_t> decode(const Rational& x, const Rational& p, std::size_t n) {
    require_skew_in_unit(p, "decode");
    if (x.num() < 0 || x.num() >= x.den()) {
        throw std::invalid_argument("decode: x must lie in [0,1), got " + x.str());
    }
    const BigInt& a = p.num();
    const BigInt& c = p.den();
    const BigInt b = c - a;

    // Iterate the exact skew-binary map; fractions stay unreduced, which
    // is harmless for exact comparisons and keeps the loop gcd-free.
    BigInt num = x.num();
    BigInt den = x.den();
    std::vector<std::uint8_t> bits;
    bits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const BigInt lhs = num * c;
        const BigInt rhs = a * den;
        if (lhs < rhs) {
            bits.push_back(0);
            num = lhs;       // x/p
            den = den * a;
        } else {
            bits.push_back(1);
            num = lhs - rhs; // (x-p)/(1-p)
            den = den * b;
        }
    }
    return bits;
}

Rational midpoint(const CodingInterval& interval) {
    return Rational(interval.low.num() * interval.high.den() +
                        interval.high.num() * interval.low.den(),
                    interval.low.den() * interval.high.den() * 2);
}

double code_length_bits(const CodingInterval& interval) {
    const Rational width = interval.width();
    if (width.num() <= 0) {
        throw std::invalid_argument("code_length_bits: interval has non-positive width");
    }
    return log2_big(width.den()) - log2_big(width.num());
}

double binary_entropy_bits(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// --- universal approximation pipeline ----------------------------------

UatCode uat_encode(std::span<const double> samples, double epsilon) {
    if (samples.empty()) {
        throw std::invalid_argument("uat_encode: need at least one sample");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("uat_encode: epsilon must be positive");
    }
    for (double v : samples) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("uat_encode: samples must be finite");
        }
    }

    const double offset = *std::min_element(samples.begin(), samples.end());
    const auto scale = static_cast<std::uint64_t>(std::ceil(1.0 / (2.0 * epsilon)));
    const double scale_d = static_cast<double>(scale);

    // Quantize; pick the truly nearest integer even when value*scale
    // lands on a rounding knife edge.
    std::vector<std::uint64_t> quantized(samples.size());
    std::uint64_t max_value = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double shifted = samples[i] - offset;
        auto candidate = static_cast<long long>(std::llround(shifted * scale_d));
        long long best = std::max(0LL, candidate - 1);
        double best_err = std::abs(static_cast<double>(best) / scale_d - shifted);
        for (long long alt = candidate; alt <= candidate + 1; ++alt) {
            if (alt < 0) continue;
            const double err = std::abs(static_cast<double>(alt) / scale_d - shifted);
            if (err < best_err) {
                best = alt;
                best_err = err;
            }
        }
        quantized[i] = static_cast<std::uint64_t>(best);
        max_value = std::max(max_value, quantized[i]);
    }

    // Bitplane count: least c with 2^c > max quantized value (at least 1).
    std::size_t planes = 1;
    while ((max_value >> planes) != 0) ++planes;

    UatCode code;
    code.scale = scale;
    code.offset = Rational::from_double(offset);
    code.length = samples.size();

    for (std::size_t j = planes; j-- > 0;) {  // MSB first
        std::vector<std::uint8_t> plane(samples.size());
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            plane[i] = static_cast<std::uint8_t>((quantized[i] >> j) & 1u);
            if (plane[i] == 0) ++zeros;
        }
        EncodedBitplane encoded;
        encoded.zero_prob = Rational(BigInt(zeros), BigInt(samples.size()));
        if (zeros == 0 || zeros == samples.size()) {
            encoded.constant_bit = plane[0];
            encoded.representative = midpoint(CodingInterval{Rational(0), Rational(1)});
        } else {
            encoded.representative = midpoint(encode(plane, encoded.zero_prob));
        }
        code.bitplanes.push_back(std::move(encoded));
    }
    return code;
}

std::vector<double> uat_decode(const UatCode& code) {
    if (code.length == 0) {
        throw std::invalid_argument("uat_decode: code has zero length");
    }
    if (code.scale <= 0) {
        throw std::invalid_argument("uat_decode: scale must be positive");
    }
    std::vector<std::uint64_t> quantized(code.length, 0);
    for (const EncodedBitplane& plane : code.bitplanes) {
        std::vector<std::uint8_t> bits;
        if (plane.constant_bit.has_value()) {
            bits.assign(code.length, *plane.constant_bit);
        } else {
            bits = decode(plane.representative, plane.zero_prob, code.length);
        }
        if (bits.size() != code.length) {
            throw std::invalid_argument("uat_decode: bitplane length mismatch");
        }
        for (std::size_t i = 0; i < code.length; ++i) {
            quantized[i] = (quantized[i] << 1) | bits[i];
        }
    }

    const double scale = code.scale.convert_to<double>();
    const double offset = code.offset.to_double();
    std::vector<double> samples(code.length);
    for (std::size_t i = 0; i < code.length; ++i) {
        samples[i] = static_cast<double>(quantized[i]) / scale + offset;
    }
    return samples;
}

// --- document form ------------------------------------------------------

std::string uat_code_to_string(const UatCode& code) {
    nlohmann::json doc;
    doc["format"] = "chaosnet-uat-code";
    doc["version"] = 1;
    doc["scale"] = code.scale.str();
    doc["offset"] = code.offset.str();
    doc["length"] = code.length;
    nlohmann::json planes = nlohmann::json::array();
    for (const EncodedBitplane& plane : code.bitplanes) {
        nlohmann::json j;
        j["p"] = plane.zero_prob.str();
        if (plane.constant_bit.has_value()) {
            j["constant"] = static_cast<int>(*plane.constant_bit);
        } else {
            j["x"] = plane.representative.str();
        }
        planes.push_back(std::move(j));
    }
    doc["bitplanes"] = std::move(planes);
    return doc.dump(2) + "\n";
}

UatCode uat_code_from_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("uat code document: ") + err.what());
    }
    try {
        if (doc.value("format", "") != "chaosnet-uat-code") {
            throw ParseError("uat code document: missing or wrong 'format' field");
        }
        if (doc.at("version").get<int>() != 1) {
            throw ParseError("uat code document: unsupported version");
        }
        UatCode code;
        code.scale = BigInt(doc.at("scale").get<std::string>());
        code.offset = Rational::parse(doc.at("offset").get<std::string>());
        code.length = doc.at("length").get<std::size_t>();
        for (const auto& j : doc.at("bitplanes")) {
            EncodedBitplane plane;
            plane.zero_prob = Rational::parse(j.at("p").get<std::string>());
            if (j.contains("constant")) {
                plane.constant_bit = static_cast<std::uint8_t>(j.at("constant").get<int>());
                plane.representative = Rational(1, 2);
            } else {
                plane.representative = Rational::parse(j.at("x").get<std::string>());
            }
            code.bitplanes.push_back(std::move(plane));
        }
        return code;
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("uat code document: ") + err.what());
    }
}

void save_uat_code(const UatCode& code, const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) {
        throw ParseError("save_uat_code: cannot open " + destination.string() +
                         " for writing");
    }
    out << uat_code_to_string(code);
}

UatCode load_uat_code(const std::filesystem::path& source) {
    std::ifstream in(source);
    if (!in) {
        throw ParseError("load_uat_code: cannot open " + source.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return uat_code_from_string(buffer.str());
}

} // namespace chaosnet::coding
