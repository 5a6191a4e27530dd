#include <catch2/catch_amalgamated.hpp>

#include "tailkit/copula.hpp"
#include "tailkit/stat_tests.hpp"

using namespace tailkit;
using namespace tailkit::copula;

namespace {

CopulaSpec make(Family f, double param, double nu = 4.0) {
    CopulaSpec s;
    s.family = f;
    if (f == Family::gaussian || f == Family::student_t) {
        s.rho = param;
        s.nu = nu;
    } else {
        s.theta = param;
    }
    return s;
}

// copula mass of the rectangle [u1,u2] x [v1,v2]
double rect_mass(const CopulaSpec& s, double u1, double u2, double v1, double v2) {
    return copula_cdf(s, u2, v2) - copula_cdf(s, u2, v1) - copula_cdf(s, u1, v2) +
           copula_cdf(s, u1, v1);
}

}  // namespace

TEST_CASE("pseudo observations land strictly inside the unit square") {
    auto ps = pseudo_observations({5.0}, {7.0});
    CHECK(ps.u[0] == Catch::Approx(0.5));

    std::vector<double> inc{1.0, 2.0, 3.0, 4.0};
    ps = pseudo_observations(inc, inc);
    for (std::size_t i = 0; i < inc.size(); ++i)
        CHECK(ps.u[i] == Catch::Approx(static_cast<double>(i + 1) / 5.0));

    const std::vector<double> ties(6, 3.3);
    ps = pseudo_observations(ties, inc = {1, 2, 3, 4, 5, 6});
    for (double u : ps.u) CHECK(u == Catch::Approx(0.5));

    CHECK_THROWS_AS(pseudo_observations({1.0}, {1.0, 2.0}), Error);
}

TEST_CASE("tau inversion formulas from the rank correlation") {
    CHECK(fit_tau_inversion(0.5, Family::gumbel).theta == Catch::Approx(2.0));
    CHECK(fit_tau_inversion(0.5, Family::clayton).theta == Catch::Approx(2.0));
    CHECK(fit_tau_inversion(0.5, Family::gaussian).rho ==
          Catch::Approx(std::sin(3.14159265358979323846 / 4.0)));
    CHECK_THROWS_AS(fit_tau_inversion(-0.2, Family::gumbel), Error);
    CHECK_THROWS_AS(fit_tau_inversion(-0.2, Family::clayton), Error);
    CHECK_THROWS_AS(fit_tau_inversion(0.0, Family::frank), Error);
    // frank inversion is numeric; spot value tau(theta=5) ~ 0.4567
    const auto frank = fit_tau_inversion(0.4567, Family::frank);
    CHECK(frank.theta == Catch::Approx(5.0).margin(0.02));
    const auto frank_neg = fit_tau_inversion(-0.4567, Family::frank);
    CHECK(frank_neg.theta == Catch::Approx(-5.0).margin(0.02));
}

TEST_CASE("copula cdf basics and boundary limits") {
    CopulaSpec indep;
    CHECK(copula_cdf(indep, 0.3, 0.5) == Catch::Approx(0.15));
    CHECK(copula_cdf(indep, 0.0, 0.5) == 0.0);
    CHECK(copula_cdf(indep, 1.0, 0.37) == Catch::Approx(0.37));
    CHECK_THROWS_AS(copula_cdf(indep, -0.1, 0.5), Error);
    CHECK_THROWS_AS(copula_cdf(indep, 0.5, 1.2), Error);

    // gumbel theta = 1 degenerates to independence
    const auto gum1 = make(Family::gumbel, 1.0);
    for (int i = 1; i < 20; ++i)
        for (int j = 1; j < 20; ++j) {
            const double u = i / 20.0, v = j / 20.0;
            CHECK(copula_cdf(gum1, u, v) == Catch::Approx(u * v).margin(1e-12));
        }
}

TEST_CASE("frechet bounds, margins, and 2-increasing property") {
    const std::vector<CopulaSpec> specs{
        make(Family::gaussian, 0.6),    make(Family::gaussian, -0.7),
        make(Family::student_t, 0.5, 5.0), make(Family::clayton, 2.0),
        make(Family::gumbel, 2.5),      make(Family::frank, 4.0),
        make(Family::frank, -3.0),      CopulaSpec{}};
    mc::RngStream stream(81, 0);
    for (const auto& s : specs) {
        for (int i = 1; i < 15; ++i)
            for (int j = 1; j < 15; ++j) {
                const double u = i / 15.0, v = j / 15.0;
                const double c = copula_cdf(s, u, v);
                CHECK(c >= std::max(u + v - 1.0, 0.0) - 1e-9);
                CHECK(c <= std::min(u, v) + 1e-9);
            }
        for (int i = 1; i < 10; ++i) {
            const double u = i / 10.0;
            CHECK(copula_cdf(s, u, 1.0) == Catch::Approx(u).margin(1e-10));
            CHECK(copula_cdf(s, 1.0, u) == Catch::Approx(u).margin(1e-10));
            CHECK(copula_cdf(s, u, 0.0) == 0.0);
        }
        for (int r = 0; r < 40; ++r) {
            double u1 = 0.02 + 0.96 * stream.next_double();
            double u2 = 0.02 + 0.96 * stream.next_double();
            double v1 = 0.02 + 0.96 * stream.next_double();
            double v2 = 0.02 + 0.96 * stream.next_double();
            if (u1 > u2) std::swap(u1, u2);
            if (v1 > v2) std::swap(v1, v2);
            CHECK(rect_mass(s, u1, u2, v1, v2) >= -1e-12);
        }
    }
}

TEST_CASE("gaussian copula cdf against closed-form checkpoints") {
    // C(0.5, 0.5) = 1/4 + asin(rho)/(2 pi)
    for (double rho : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
        const auto s = make(Family::gaussian, rho == 0.0 ? 1e-14 : rho);
        const double expect = 0.25 + std::asin(rho) / (2.0 * 3.14159265358979323846);
        CHECK(copula_cdf(s, 0.5, 0.5) == Catch::Approx(expect).margin(1e-12));
    }
}

TEST_CASE("densities reduce to independence in their limits") {
    const auto frank_tiny = make(Family::frank, 1e-8);
    const auto gauss0 = make(Family::gaussian, 0.0);
    for (int i = 1; i < 10; ++i)
        for (int j = 1; j < 10; ++j) {
            const double u = i / 10.0, v = j / 10.0;
            CHECK(copula_density(frank_tiny, u, v) == Catch::Approx(1.0).margin(1e-4));
            CHECK(copula_density(gauss0, u, v) == Catch::Approx(1.0).margin(1e-14));
        }
}

TEST_CASE("frank density integrates to one over the unit square") {
    const auto s = make(Family::frank, 2.0);
    const auto& [nodes, weights] = copula::detail::gauss_legendre(80);
    double integral = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double u = 0.5 * (nodes[i] + 1.0);
            const double v = 0.5 * (nodes[j] + 1.0);
            integral += 0.25 * weights[i] * weights[j] * copula_density(s, u, v);
        }
    CHECK(integral == Catch::Approx(1.0).margin(1e-4));
}

TEST_CASE("densities integrate to the cdf rectangle mass") {
    // quadrature of c over [a,b]^2 vs inclusion-exclusion of C
    const std::vector<CopulaSpec> specs{make(Family::gumbel, 2.0),
                                        make(Family::clayton, 1.5),
                                        make(Family::gaussian, 0.55),
                                        make(Family::student_t, 0.4, 6.0)};
    const double a = 0.05, b = 0.95;
    const auto& [nodes, weights] = copula::detail::gauss_legendre(64);
    for (const auto& s : specs) {
        double integral = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                const double u = 0.5 * (a + b) + 0.5 * (b - a) * nodes[i];
                const double v = 0.5 * (a + b) + 0.5 * (b - a) * nodes[j];
                integral += 0.25 * (b - a) * (b - a) * weights[i] * weights[j] *
                            copula_density(s, u, v);
            }
        CHECK(integral == Catch::Approx(rect_mass(s, a, b, a, b)).margin(2e-6));
    }
}

TEST_CASE("frozen copula reference values") {
    // expected numbers computed with independent reference implementations
    const auto gauss = make(Family::gaussian, 0.65);
    CHECK(copula_cdf(gauss, 0.3, 0.7) == Catch::Approx(0.2821270960).margin(1e-9));
    CHECK(copula_density(gauss, 0.3, 0.7) == Catch::Approx(0.7896359607).margin(1e-9));

    const auto student = make(Family::student_t, 0.4, 5.0);
    CHECK(copula_cdf(student, 0.3, 0.7) == Catch::Approx(0.2518449330).margin(1e-8));
    CHECK(copula_cdf(student, 0.85, 0.6) == Catch::Approx(0.5482830586).margin(1e-8));
    CHECK(copula_density(student, 0.3, 0.7) == Catch::Approx(0.8936595951).margin(1e-8));

    const auto clayton = make(Family::clayton, 2.5);
    CHECK(copula_cdf(clayton, 0.3, 0.7) == Catch::Approx(0.2918864841).margin(1e-10));
    CHECK(copula_density(clayton, 0.3, 0.7) == Catch::Approx(0.5100167325).margin(1e-10));

    const auto gumbel = make(Family::gumbel, 3.0);
    CHECK(copula_cdf(gumbel, 0.3, 0.7) == Catch::Approx(0.2969124526).margin(1e-10));
    CHECK(copula_density(gumbel, 0.3, 0.7) == Catch::Approx(0.3174054832).margin(1e-10));

    const auto frank = make(Family::frank, 4.0);
    CHECK(copula_cdf(frank, 0.3, 0.7) == Catch::Approx(0.2760744064).margin(1e-10));
    CHECK(copula_density(frank, 0.3, 0.7) == Catch::Approx(0.6793458420).margin(1e-10));
}

TEST_CASE("cml fit recovers the gumbel parameter") {
    mc::RngStream stream(82, 0);
    const auto sample = sample_copula(stream, make(Family::gumbel, 2.0), 5000);
    const auto fit = fit_cml(sample, Family::gumbel);
    CHECK(fit.theta == Catch::Approx(2.0).margin(0.15));

    // independent data pushes gumbel theta to its lower boundary
    mc::RngStream s2(83, 0);
    const auto indep = sample_copula(s2, CopulaSpec{}, 4000);
    const auto fit_ind = fit_cml(indep, Family::gumbel);
    CHECK(fit_ind.theta <= 1.05);

    PseudoSample tiny;
    tiny.u = {0.1, 0.2, 0.3};
    tiny.v = {0.2, 0.3, 0.4};
    CHECK_THROWS_AS(fit_cml(tiny, Family::gumbel), Error);
}

TEST_CASE("cml fit profiles the student-t degrees of freedom") {
    mc::RngStream stream(89, 0);
    const auto sample = sample_copula(stream, make(Family::student_t, 0.5, 5.0), 3000);
    const auto fit = fit_cml(sample, Family::student_t);
    CHECK(fit.rho == Catch::Approx(0.5).margin(0.05));
    CHECK(fit.nu >= 3.0);
    CHECK(fit.nu <= 12.0);

    // on gaussian data the profile pushes nu high
    mc::RngStream s2(90, 0);
    const auto gauss = sample_copula(s2, make(Family::gaussian, 0.5), 3000);
    const auto fit_g = fit_cml(gauss, Family::student_t);
    CHECK(fit_g.nu >= 10.0);
    CHECK(fit_g.rho == Catch::Approx(0.5).margin(0.05));
}

TEST_CASE("sampled copulas reproduce the target rank dependence") {
    mc::RngStream stream(84, 0);
    const auto indep = sample_copula(stream, make(Family::gaussian, 0.0), 10000);
    CHECK(std::abs(kendall_tau(indep.u, indep.v)) < 0.03);

    mc::RngStream s2(85, 0);
    const auto gum = sample_copula(s2, make(Family::gumbel, 2.0), 10000);
    CHECK(kendall_tau(gum.u, gum.v) == Catch::Approx(0.5).margin(0.03));
}

TEST_CASE("sampled margins pass a one-sample uniform KS test") {
    int pass = 0;
    const int reps = 100;
    for (int r = 0; r < reps; ++r) {
        mc::RngStream stream(86, static_cast<std::uint64_t>(r));
        auto ps = sample_copula(stream, make(Family::clayton, 1.5), 500);
        std::sort(ps.u.begin(), ps.u.end());
        const double d =
            stats::detail::ks_distance_sorted(ps.u, [](double x) { return x; });
        const double p = stats::kolmogorov_sf(std::sqrt(500.0) * d);
        if (p > 0.05) ++pass;
    }
    CHECK(pass >= 90);
}

TEST_CASE("tau round trip for every family") {
    struct Case {
        Family family;
        double param;
        double nu;
        double tol;
    };
    const std::vector<Case> cases{{Family::gaussian, 0.6, 0.0, 0.05},
                                  {Family::student_t, 0.5, 5.0, 0.06},
                                  {Family::clayton, 2.0, 0.0, 0.25},
                                  {Family::gumbel, 2.0, 0.0, 0.15},
                                  {Family::frank, 5.0, 0.0, 0.6}};
    for (const auto& c : cases) {
        mc::RngStream stream(87, static_cast<std::uint64_t>(c.family));
        const auto spec = make(c.family, c.param, c.nu > 0 ? c.nu : 4.0);
        const auto sample = sample_copula(stream, spec, 4000);
        const double tau = kendall_tau(sample.u, sample.v);
        const auto inverted = fit_tau_inversion(tau, c.family, spec.nu);
        const double got = (c.family == Family::gaussian || c.family == Family::student_t)
                               ? inverted.rho
                               : inverted.theta;
        CHECK(got == Catch::Approx(c.param).margin(c.tol));
    }
}

TEST_CASE("tail dependence coefficients") {
    const auto indep = tail_dependence(CopulaSpec{});
    CHECK(indep.lambda_lower == 0.0);
    CHECK(indep.lambda_upper == 0.0);

    // gaussian belongs to the domain of attraction of independence
    const auto g_num = tail_dependence_numeric(make(Family::gaussian, 0.5));
    CHECK(g_num.lambda_lower == Catch::Approx(0.0).margin(1e-3));
    CHECK(g_num.lambda_upper == Catch::Approx(0.0).margin(1e-3));

    const auto gum = tail_dependence(make(Family::gumbel, 2.0));
    CHECK(gum.lambda_upper == Catch::Approx(2.0 - std::sqrt(2.0)).margin(1e-12));
    CHECK(gum.lambda_lower == 0.0);
    const auto gum_num = tail_dependence_numeric(make(Family::gumbel, 2.0));
    CHECK(gum_num.lambda_upper == Catch::Approx(2.0 - std::sqrt(2.0)).margin(1e-3));
    CHECK(gum_num.lambda_lower == Catch::Approx(0.0).margin(1e-3));

    const auto clay = tail_dependence(make(Family::clayton, 2.0));
    CHECK(clay.lambda_lower == Catch::Approx(std::pow(2.0, -0.5)).margin(1e-12));
    const auto clay_num = tail_dependence_numeric(make(Family::clayton, 2.0));
    CHECK(clay_num.lambda_lower == Catch::Approx(std::pow(2.0, -0.5)).margin(1e-3));

    // student analytic and numeric agree
    const auto st = make(Family::student_t, 0.5, 4.0);
    const auto st_analytic = tail_dependence(st);
    const auto st_num = tail_dependence_numeric(st);
    CHECK(st_num.lambda_lower == Catch::Approx(st_analytic.lambda_lower).margin(5e-3));
    CHECK(st_analytic.lambda_lower > 0.1);
}

TEST_CASE("copula parameter validation") {
    CHECK_THROWS_AS(copula_cdf(make(Family::clayton, -1.0), 0.5, 0.5), Error);
    CHECK_THROWS_AS(copula_cdf(make(Family::gumbel, 0.5), 0.5, 0.5), Error);
    CHECK_THROWS_AS(copula_cdf(make(Family::frank, 0.0), 0.5, 0.5), Error);
    CHECK_THROWS_AS(copula_cdf(make(Family::gaussian, 1.5), 0.5, 0.5), Error);
    mc::RngStream stream(88, 0);
    CHECK_THROWS_AS(sample_copula(stream, make(Family::student_t, 0.5, 1.5), 10), Error);
}
