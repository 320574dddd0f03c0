#include <cmath>
#include <numbers>

#include "bandgas/asymptotics.hpp"
#include "bandgas/errors.hpp"
#include "bandgas/specfun.hpp"
#include "doctest.h"

using namespace bandgas;
using std::numbers::pi;

namespace {

const std::vector<int> kNs{100, 200, 400, 800};

double arg_diff(double a, double b) { return std::fabs(std::remainder(a - b, 2.0 * pi)); }

}  // namespace

TEST_CASE("scaled recurrences") {
    // explicit low-degree polynomials
    cplx x(0.7, -0.3);
    CHECK(std::abs(hermite_scaled(3, x).value() - (8.0 * x * x * x - 12.0 * x)) < 1e-14);
    CHECK(std::abs(hermite_scaled(0, x).value() - 1.0) == 0.0);
    CHECK(std::abs(laguerre_scaled(2, 1.5, x).value() - (0.5 * x * x - 3.5 * x + 4.375)) < 1e-14);

    // against the unscaled recurrences wherever both are finite
    for (cplx z : {cplx(1.3, 0.2), cplx(-4.0, 1.0), cplx(10.0, -2.0)}) {
        auto h = hermite_seq(z, 120);
        auto l = laguerre_seq(z, 0.75, 120);
        for (int n : {5, 40, 120}) {
            CHECK(std::abs(hermite_scaled(n, z).value() - h[n]) <= 1e-10 * std::abs(h[n]));
            CHECK(std::abs(laguerre_scaled(n, 0.75, z).value() - l[n]) <= 1e-10 * std::abs(l[n]));
        }
    }

    // 40-digit references, beyond double range
    struct Ref {
        int n;
        cplx x;
        double log_abs, arg;
    };
    for (auto r : {Ref{400, std::sqrt(200.0), 1237.2713162746132086, 0.0},
                   Ref{800, cplx(20.0, 1.0), 2784.9902742138538781, 1.8678422034879181956},
                   Ref{100, std::sqrt(50.0) * 3.0, 368.53172924714699568, 0.0}}) {
        ScaledComplex h = hermite_scaled(r.n, r.x);
        CHECK(std::fabs(h.log_abs() - r.log_abs) < 1e-10 * r.log_abs);
        CHECK(arg_diff(std::arg(h.mantissa()), r.arg) < 1e-9);
    }
    struct LRef {
        int n;
        double a;
        cplx x;
        double log_abs, arg;
    };
    for (auto r : {LRef{400, 0.0, 800.0, 395.78765504965613405, pi},
                   LRef{800, 1.0, cplx(1600.0, 64.0), 827.07625372227323501, -1.3253881258633151395},
                   LRef{300, 2.5, cplx(12.0, -3.0), 21.524935808256163882, 2.1583152823429327567}}) {
        ScaledComplex l = laguerre_scaled(r.n, r.a, r.x);
        CHECK(std::fabs(l.log_abs() - r.log_abs) < 1e-10 * r.log_abs);
        CHECK(arg_diff(std::arg(l.mantissa()), r.arg) < 1e-8);
    }
    CHECK_THROWS_AS(hermite_scaled(-1, 0.0), DomainError);
}

TEST_CASE("Hermite bulk") {
    CHECK(hermite_bulk_check(200, 1.0).rel_error <= 0.05);
    CHECK(hermite_bulk_check(800, 1.2).rel_error < hermite_bulk_check(100, 1.2).rel_error);
    CHECK(hermite_bulk_check(400, 1.0).warning.empty());
    CHECK_FALSE(hermite_bulk_check(400, 1.95).warning.empty());

    // sign changes of the exact polynomial and of the cosine main term line up
    const int n = 400, steps = 4000;
    const double z0 = 0.9, z1 = 1.1, h = (z1 - z0) / steps;
    std::vector<double> ex, as;
    for (int i = 0; i <= steps; ++i) {
        auto c = hermite_bulk_check(n, z0 + i * h);
        ex.push_back(c.exact.mantissa().real());
        as.push_back(c.asymptotic.mantissa().real());
    }
    std::vector<int> ze, za;
    for (int i = 0; i < steps; ++i) {
        if ((ex[i] > 0) != (ex[i + 1] > 0)) ze.push_back(i);
        if ((as[i] > 0) != (as[i + 1] > 0)) za.push_back(i);
    }
    REQUIRE(ze.size() >= 5);
    REQUIRE(ze.size() == za.size());
    for (std::size_t k = 0; k < ze.size(); ++k) CHECK(std::abs(ze[k] - za[k]) <= 1);
}

TEST_CASE("Mehler-Heine") {
    auto c = hermite_mehler_heine_check(200, 0.0);
    CHECK(std::fabs(c.asymptotic.value().real() - 1.0 / std::sqrt(pi)) < 1e-15);
    CHECK(c.rel_error <= 1e-2);
    auto o = hermite_mehler_heine_check(200, 0.0, true);
    CHECK(o.exact.is_zero());
    CHECK(o.rel_error == 0.0);
    CHECK(std::abs(hermite_mehler_heine_check(400, pi / 2).exact.value()) <= 1e-2);
    CHECK(hermite_mehler_heine_check(400, 1.0, true).rel_error <= 0.05);
}

TEST_CASE("Hermite outside") {
    CHECK(hermite_outside_check(100, 3.0).rel_error <= 0.05);
    CHECK(hermite_outside_check(100, cplx(-3.0, 0.5)).rel_error <= 0.05);  // branch ~ z at infinity
    CHECK(hermite_outside_check(100, cplx(0.0, 2.0)).rel_error <= 0.05);
    CHECK_FALSE(hermite_outside_check(100, 2.1).warning.empty());
}

TEST_CASE("Laguerre Plancherel-Rotach") {
    CHECK(laguerre_pr_check(400, 0, 0.0, 0.5).rel_error <= 0.05);
    CHECK(laguerre_vanlessen_check(400, 1.0, cplx(0.5, 0.02)).rel_error <= 0.05);
    CHECK_FALSE(laguerre_pr_check(400, 0, 0.0, 0.99).warning.empty());
    CHECK_FALSE(laguerre_vanlessen_check(400, 1.0, cplx(0.5, 0.3)).warning.empty());
    for (double X : {0.3, 0.5, 0.7}) {
        auto r = laguerre_shift_ratio(800, 0.0, X);
        CHECK(r.rel_error <= 0.1);
    }
    // both formulas describe the same polynomial
    for (int n : {200, 400}) {
        auto a = laguerre_pr_check(n, 0, 1.0, cplx(0.4, 0.03));
        auto b = laguerre_vanlessen_check(n, 1.0, cplx(0.4, 0.03));
        CHECK(std::fabs(a.exact.log_abs() - b.exact.log_abs()) < 1e-12 * std::fabs(a.exact.log_abs()));
        CHECK(std::exp((a.asymptotic - b.asymptotic).log_abs() - b.asymptotic.log_abs()) < 0.05);
    }
}

TEST_CASE("Laguerre Bessel limit") {
    auto c = laguerre_bessel_limit_check(200, 0.0, 1.0);
    CHECK(std::fabs(c.asymptotic.value().real() - bessel_j(0.0, 2.0).value.real()) < 1e-15);
    CHECK(c.rel_error <= 1e-2);
    auto s = laguerre_bessel_limit_check(200, 1.0, 1e-6);
    CHECK(std::fabs(s.exact.value().real() - 201.0 / 200.0) < 1e-6);
    CHECK(std::fabs(s.asymptotic.value().real() - 1.0) < 1e-6);
    CHECK_THROWS_AS(laguerre_bessel_limit_check(200, 1.0, -1.0), DomainError);
}

TEST_CASE("convergence in n") {
    std::vector<AsymptoticRequest> reqs{
        {AsymptoticFormula::hermite_bulk, cplx(1.0, 0.05)},
        {AsymptoticFormula::hermite_bulk, cplx(0.6, 0.05)},
        {AsymptoticFormula::hermite_bulk, cplx(1.5, -0.05)},
        {AsymptoticFormula::mehler_heine_even, 0.0},
        {AsymptoticFormula::mehler_heine_even, 1.0},
        {AsymptoticFormula::mehler_heine_odd, 1.0},
        {AsymptoticFormula::hermite_outside, 3.0},
        {AsymptoticFormula::hermite_outside, cplx(2.5, 1.0)},
        {AsymptoticFormula::laguerre_pr, cplx(0.5, 0.02)},
        {AsymptoticFormula::laguerre_pr, cplx(0.3, 0.02), 1.0, -1},
        {AsymptoticFormula::laguerre_vanlessen, cplx(0.5, 0.02), 1.0},
        {AsymptoticFormula::laguerre_vanlessen, cplx(0.3, 0.05), 0.0},
        {AsymptoticFormula::laguerre_bessel, 1.0, 0.0},
        {AsymptoticFormula::laguerre_bessel, cplx(2.0, 1.0), 1.5},
    };
    for (const auto& r : reqs) {
        auto sw = asymptotic_sweep(r, kNs);
        INFO(asymptotic_formula_name(r.formula), " z=", r.z.real(), ",", r.z.imag());
        CHECK(sw[2].rel_error <= 0.05);
        CHECK(non_increasing(sw));
        // the 1/n rate: halving per doubling, within 20%
        for (std::size_t i = 1; i < sw.size(); ++i) CHECK(sw[i].rel_error <= 0.6 * sw[i - 1].rel_error);
        for (const auto& c : sw) CHECK(c.warning.empty());
    }
}

TEST_CASE("conjugation symmetry") {
    for (auto f : {AsymptoticFormula::hermite_bulk, AsymptoticFormula::hermite_outside, AsymptoticFormula::laguerre_pr,
                   AsymptoticFormula::laguerre_vanlessen, AsymptoticFormula::laguerre_bessel}) {
        cplx z = f == AsymptoticFormula::hermite_outside ? cplx(2.5, 1.0)
                 : f == AsymptoticFormula::laguerre_bessel ? cplx(2.0, 1.0)
                 : f == AsymptoticFormula::hermite_bulk    ? cplx(1.0, 0.05)
                                                           : cplx(0.4, 0.03);
        AsymptoticRequest a{f, z, 0.5}, b{f, std::conj(z), 0.5};
        auto ca = run_asymptotic_check(a, 200), cb = run_asymptotic_check(b, 200);
        INFO(asymptotic_formula_name(f));
        CHECK(std::fabs(ca.exact.log_abs() - cb.exact.log_abs()) < 1e-12 * std::max(1.0, std::fabs(ca.exact.log_abs())));
        CHECK(std::fabs(ca.asymptotic.log_abs() - cb.asymptotic.log_abs()) <
              1e-12 * std::max(1.0, std::fabs(ca.asymptotic.log_abs())));
        CHECK(arg_diff(std::arg(ca.exact.mantissa()), -std::arg(cb.exact.mantissa())) < 1e-9);
        CHECK(arg_diff(std::arg(ca.asymptotic.mantissa()), -std::arg(cb.asymptotic.mantissa())) < 1e-9);
        CHECK(std::fabs(ca.rel_error - cb.rel_error) < 1e-9);
    }
}

TEST_CASE("bounds fitted then dominated") {
    for (double p : {0.5, 1.0, 1.5}) {
        auto f = hermite_uniform_bound_check(p);
        INFO("p=", p);
        CHECK(f.dominated);
        CHECK(f.fitted_constant > 0.0);
    }
    auto e = hermite_edge_bound_check(1.0, 1.0);
    CHECK(e.dominated);
    CHECK(e.check_N == std::vector<int>{40, 80});
    auto b = baal_product_check(1, 2.0, 1.0, cplx(0.3, 0.2));
    CHECK(b.dominated);
    CHECK(b.fitted_constant == doctest::Approx(kFitMargin * baal_normalized(100, 1, 2.0, 1.0, cplx(0.3, 0.2))));

    // herman at z = 0 from the closed form of H_N(0) for even N: (-1)^{N/2} N!/(N/2)!
    for (int N : {50, 100}) {
        double want = std::exp(lgamma_fn(N + 1.0) - lgamma_fn(N / 2 + 1.0) - 0.5 * N * std::log(2.0) -
                               0.5 * lgamma_fn(N + 1.0) + 0.25 * std::log(N));
        CHECK(herman_normalized(N, 0.0, 0.0) == doctest::Approx(want).epsilon(1e-10));
    }
    CHECK_THROWS_AS(baal_normalized(1, 1, 2.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(parse_asymptotic_formula("hermite_edge"), DomainError);
    CHECK(parse_asymptotic_formula("laguerre_pr") == AsymptoticFormula::laguerre_pr);
}
