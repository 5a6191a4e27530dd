#pragma once

#include <cstdint>
#include <vector>

#include "tailkit/core.hpp"

namespace tailkit::mc {

/// Splittable 64-bit generator (SplitMix64 core). A stream is identified
/// by (seed, stream_id); the pair fixes the whole draw sequence, distinct
/// stream ids get distinct odd increments so substreams are independent
/// by construction. Period 2^64 per stream.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        state_ = mix(seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1));
        gamma_ = mix(stream_id ^ mix(seed + 0xbf58476d1ce4e5b9ULL)) | 1ULL;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Substream with the same seed and a new stream id.
    RngStream spawn(std::uint64_t stream_id) const { return RngStream(seed_, stream_id); }

    std::uint64_t next_u64() {
        state_ += gamma_;
        return mix(state_);
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1]; safe under log().
    double next_double_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_ = 0;
    std::uint64_t gamma_ = 0;
};

inline std::vector<double> sample_uniform(RngStream& stream, std::size_t n, double a = 0.0,
                                          double b = 1.0) {
    require(a < b, "sample_uniform: need a < b");
    require(n >= 1, "sample_uniform: need n >= 1");
    std::vector<double> out(n);
    for (double& v : out) v = a + (b - a) * stream.next_double();
    return out;
}

/// Box-Muller cosine branch applied to a pair of uniforms.
/// u1 in (0,1], u2 in [0,1).
inline double normal_from_uniforms(double u1, double u2) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Standard normal draws; each draw consumes exactly two uniforms and
/// the sine branch is discarded.
inline std::vector<double> sample_normal_box_muller(RngStream& stream, std::size_t n) {
    require(n >= 1, "sample_normal_box_muller: need n >= 1");
    std::vector<double> out(n);
    for (double& v : out) {
        const double u1 = stream.next_double_pos();
        const double u2 = stream.next_double();
        v = normal_from_uniforms(u1, u2);
    }
    return out;
}

inline double normal_draw(RngStream& stream) {
    return normal_from_uniforms(stream.next_double_pos(), stream.next_double());
}

/// Exponential(alpha) via F^{-1}(u) = -ln(1-u)/alpha.
inline std::vector<double> sample_exponential(RngStream& stream, std::size_t n,
                                              double alpha) {
    require(alpha > 0.0, "sample_exponential: alpha > 0 required");
    require(n >= 1, "sample_exponential: need n >= 1");
    std::vector<double> out(n);
    for (double& v : out) v = -std::log(1.0 - stream.next_double()) / alpha;
    return out;
}

/// Pareto(alpha, x_m) via F^{-1}(u) = x_m (1-u)^{-1/alpha}.
inline std::vector<double> sample_pareto(RngStream& stream, std::size_t n, double alpha,
                                         double x_m) {
    require(alpha > 0.0, "sample_pareto: alpha > 0 required");
    require(x_m > 0.0, "sample_pareto: x_m > 0 required");
    require(n >= 1, "sample_pareto: need n >= 1");
    std::vector<double> out(n);
    for (double& v : out) v = x_m * std::pow(1.0 - stream.next_double(), -1.0 / alpha);
    return out;
}

/// Chi-square(nu) as a gamma(nu/2, 2) draw; Marsaglia-Tsang for shape >= 1.
inline double chi2_draw(RngStream& stream, double nu) {
    require(nu > 0.0, "chi2_draw: nu > 0 required");
    double shape = 0.5 * nu;
    double boost = 1.0;
    if (shape < 1.0) {
        // gamma(a) = gamma(a+1) * U^{1/a}
        boost = std::pow(stream.next_double_pos(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal_draw(stream);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.next_double_pos();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
            return 2.0 * boost * d * v;
    }
}

/// Standardized Student-t draw with unit variance (nu > 2).
inline double student_std_draw(RngStream& stream, double nu) {
    require(nu > 2.0, "student_std_draw: nu > 2 required");
    const double z = normal_draw(stream);
    const double w = chi2_draw(stream, nu);
    const double t = z / std::sqrt(w / nu);
    return t * std::sqrt((nu - 2.0) / nu);
}

}  // namespace tailkit::mc
