#pragma once

#include <functional>
#include <vector>

#include "tailkit/linalg.hpp"
#include "tailkit/rng.hpp"

namespace tailkit::mc {

/// Monte Carlo estimate with its standard error.
struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// pi as 4 * fraction of uniform points on [-1,1]^2 inside the unit disk.
/// std_error = 4 sqrt(p(1-p)/n).
inline McEstimate estimate_pi(RngStream& stream, std::size_t n) {
    require(n >= 1, "estimate_pi: need n >= 1");
    std::size_t inside = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * stream.next_double();
        const double y = -1.0 + 2.0 * stream.next_double();
        if (x * x + y * y <= 1.0) ++inside;
    }
    const double p = static_cast<double>(inside) / static_cast<double>(n);
    McEstimate e;
    e.value = 4.0 * p;
    e.std_error = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    e.n = n;
    return e;
}

/// Axis-aligned integration domain.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    static Box interval(double a, double b) { return Box{{a}, {b}}; }

    double volume() const {
        double v = 1.0;
        for (std::size_t d = 0; d < lo.size(); ++d) v *= hi[d] - lo[d];
        return v;
    }
};

/// Plain Monte Carlo integration over a box: value = V * mean f(X_i),
/// std_error = V * sd(f(X_i)) / sqrt(n).
inline McEstimate mc_integrate(RngStream& stream,
                               const std::function<double(const std::vector<double>&)>& f,
                               const Box& domain, std::size_t n) {
    require(!domain.lo.empty() && domain.lo.size() == domain.hi.size(),
            "mc_integrate: bad domain");
    for (std::size_t d = 0; d < domain.lo.size(); ++d)
        require(domain.lo[d] < domain.hi[d], "mc_integrate: zero-volume domain");
    require(n >= 2, "mc_integrate: need n >= 2");
    const double vol = domain.volume();
    require(std::isfinite(vol) && vol > 0.0, "mc_integrate: zero-volume domain");

    std::vector<double> x(domain.lo.size());
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < x.size(); ++d)
            x[d] = domain.lo[d] + (domain.hi[d] - domain.lo[d]) * stream.next_double();
        const double fx = f(x);
        sum += fx;
        sumsq += fx * fx;
    }
    const double dn = static_cast<double>(n);
    const double mean = sum / dn;
    double var = (sumsq - dn * mean * mean) / (dn - 1.0);
    if (var < 0.0) var = 0.0;  // rounding on constant integrands
    McEstimate e;
    e.value = vol * mean;
    e.std_error = vol * std::sqrt(var / dn);
    e.n = n;
    return e;
}

/// n zero-mean multivariate normal rows with covariance cov, via X = L Z.
inline linalg::Matrix sample_mvnormal(RngStream& stream, std::size_t n,
                                      const linalg::Matrix& cov) {
    require(n >= 1, "sample_mvnormal: need n >= 1");
    const linalg::Matrix l = linalg::cholesky(cov);
    const std::size_t d = cov.rows;
    linalg::Matrix out(n, d);
    std::vector<double> z(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) z[k] = normal_draw(stream);
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k <= j; ++k) s += l(j, k) * z[k];
            out(i, j) = s;
        }
    }
    return out;
}

}  // namespace tailkit::mc
