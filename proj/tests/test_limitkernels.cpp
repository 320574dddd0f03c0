#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "bandgas/errors.hpp"
#include "bandgas/limitkernels.hpp"
#include "bandgas/quadrature.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bandgas;
using std::numbers::pi;
using testutil::rel;

namespace {

// erf(z) = (2/sqrt(pi)) int_0^1 z exp(-z^2 t^2) dt
cplx erf_oracle(cplx z) {
    return 2.0 / std::sqrt(pi) * integrate_panels([&](double t) { return z * std::exp(-z * z * t * t); }, 0.0, 1.0, 8);
}

// F(t) from real erf
double window_oracle(double a, double t) {
    return 0.5 * (std::erf((t + 2.0 * a) / std::sqrt(2.0)) - std::erf((t - 2.0 * a) / std::sqrt(2.0)));
}

template <class K>
void check_kernel_props(K&& k, const std::vector<cplx>& pts, double tol) {
    for (auto z : pts)
        for (auto w : pts) {
            cplx kzw = k(z, w), kwz = k(w, z);
            CHECK(std::abs(kzw - std::conj(kwz)) <= tol * std::max(1.0, std::abs(kzw)));
            double kzz = k(z, z).real(), kww = k(w, w).real();
            CHECK(std::norm(kzw) <= kzz * kww * (1.0 + 1e-8) + tol);
        }
}

std::vector<cplx> random_points(int n, double rx, double ry, unsigned seed, double x0 = 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-rx, rx), V(-ry, ry);
    std::vector<cplx> p;
    for (int i = 0; i < n; ++i) p.emplace_back(x0 + U(rng), V(rng));
    return p;
}

}  // namespace

TEST_CASE("bulk family: values and diagonal") {
    CHECK(fks_R(1.0, 0.7) == doctest::Approx(boost::math::erf(std::sqrt(2.0))).epsilon(1e-13));
    CHECK(fks_R(1.0, 0.0) == doctest::Approx(0.954500).epsilon(1e-6));
    for (auto z : random_points(30, 5.0, 3.0, 1)) {
        CHECK(rel(fks_K(1.3, z, z), cplx(fks_R(1.3, z))) < 1e-12);
        CHECK(fks_R(0.7, z + 2.5) == doctest::Approx(fks_R(0.7, z)).epsilon(1e-15));
    }
    for (double y = -3.0; y <= 3.0; y += 0.25) CHECK(std::fabs(fks_R(30.0, cplx(0.4, y)) - 1.0) < 1e-10);
}

TEST_CASE("bulk kernel against direct quadrature") {
    for (double a : {0.3, 1.0, 2.5})
        for (auto z : random_points(5, 2.0, 1.0, 2))
            for (auto w : random_points(5, 2.0, 1.0, 3)) {
                cplx s = z - std::conj(w);
                cplx I = integrate_panels(
                    [&](double t) { return std::exp(0.5 * (s - cplx(0.0, t)) * (s - cplx(0.0, t))); }, -2.0 * a,
                    2.0 * a, 16);
                cplx oracle = ginibre_K(z, w) * I / std::sqrt(2.0 * pi);
                CHECK(std::abs(fks_K(a, z, w) - oracle) < 1e-11);
            }
}

TEST_CASE("bulk kernel far apart stays finite and tends to Ginibre") {
    cplx k = fks_K(1.0, cplx(40.0, 1.0), cplx(-40.0, -0.5));
    CHECK(std::isfinite(k.real()));
    {
        cplx z(40.0, 1.0), w(-40.0, -0.5), s = z - std::conj(w);
        cplx lp(-z.imag() * z.imag() - w.imag() * w.imag(), z.real() * z.imag() - w.real() * w.imag());
        cplx oracle = integrate_panels([&](double t) { return std::exp(lp - cplx(0, 1) * s * t - 0.5 * t * t); },
                                       -2.0, 2.0, 200) /
                      std::sqrt(2.0 * pi);
        CHECK(std::abs(k - oracle) < 1e-12);
        CHECK(std::norm(k) <= fks_R(1.0, z) * fks_R(1.0, w));
    }
    for (auto z : random_points(6, 2.0, 2.0, 4))
        for (auto w : random_points(6, 2.0, 2.0, 5)) CHECK(std::abs(fks_K(30.0, z, w) - ginibre_K(z, w)) < 1e-10);
    check_kernel_props([](cplx z, cplx w) { return fks_K(0.8, z, w); }, random_points(8, 3.0, 2.0, 6), 1e-12);
}

TEST_CASE("bulk band mass") {
    for (double a : {0.5, 1.0, 2.0}) {
        double m = integrate_panels([&](double y) { return fks_R(a, cplx(0.0, y)); }, -2.0 * a - 8.0, 2.0 * a + 8.0, 40);
        CHECK(std::fabs(m - 2.0 * a) < 1e-8);
    }
}

TEST_CASE("one-dimensional normalization of the bulk kernel") {
    for (double a : {0.2, 1.0, 3.0}) {
        double al = 2.0 * a / pi;
        for (auto z : random_points(4, 2.0, 0.7, 7))
            for (auto w : random_points(4, 2.0, 0.7, 8))
                CHECK(std::fabs(std::abs(fks_tilde_K(a, al * z, al * w)) - std::abs(fks_K(a, z, w)) / (al * al)) <
                      1e-10 * std::max(1.0, std::abs(fks_K(a, z, w)) / (al * al)));
    }
    CHECK(std::fabs(fks_tilde_line(0.05, 0.0, 0.5) - pi * sine_K(0.0, 0.5)) <= 0.02);
    CHECK(std::fabs(fks_tilde_line(0.01, 0.3, -0.4) - pi * sine_K(0.3, -0.4)) <= 0.01);
    for (double x = -2.0; x <= 2.0; x += 0.5)
        for (double y = -1.0; y <= 1.0; y += 0.5) CHECK(fks_tilde_K(0.4, cplx(x, y), cplx(x, y)).real() > 0.0);
}

TEST_CASE("sine and Airy kernels") {
    CHECK(sine_K(0.3, 0.3) == 1.0);
    CHECK(sine_K(0.0, 0.5) == doctest::Approx(2.0 / pi).epsilon(1e-15));
    CHECK(sine_K(0.0, 0.5) == doctest::Approx(0.636620).epsilon(1e-6));
    CHECK(std::fabs(airy_K(0.0, 1.0) - airy_K_integral(0.0, 1.0)) <= 1e-8);
    for (auto [x, y] : {std::pair{-3.0, 0.5}, {1.5, 2.5}, {-6.0, -5.5}, {-1.0, -1.0}, {2.0, 2.0}})
        CHECK(std::fabs(airy_K(x, y) - airy_K_integral(x, y)) <= 1e-8);
    double x = 0.4, y = -1.1;
    double oracle = (boost::math::airy_ai(x) * boost::math::airy_ai_prime(y) -
                     boost::math::airy_ai_prime(x) * boost::math::airy_ai(y)) /
                    (x - y);
    CHECK(rel(airy_K(x, y), oracle) < 1e-12);
    // continuity across the diagonal switch
    CHECK(std::fabs(airy_K(0.5, 0.5 + 1e-6) - airy_K(0.5, 0.5)) < 1e-6);
}

TEST_CASE("boundary family: values") {
    CHECK(bender_R(1.0, cplx(0.3, 0.2)) == doctest::Approx(0.200335401618116).epsilon(1e-10));
    CHECK(rel(bender_K(0.5, cplx(-0.4, 0.3), cplx(0.7, -0.5)), cplx(0.0794856410555910, -0.0644258651847822)) < 1e-10);
    // real line oracle with boost Airy
    double c = 1.0, x = 0.3;
    double I = integrate_panels(
        [&](double u) {
            double ai = boost::math::airy_ai(2.0 * c * (x + u) + std::pow(c, 4));
            return std::exp(4.0 / 3.0 * std::pow(c, 6) + 4.0 * std::pow(c, 3) * (u + x)) * ai * ai;
        },
        0.0, 12.0, 48);
    CHECK(rel(bender_R(c, x), std::sqrt(2.0 * pi) * 4.0 * c * c * I) < 1e-10);
    CHECK(std::fabs(bender_R(5.0, 0.0) - 0.5) < 0.05 * 0.5);
    CHECK(std::fabs(bender_R(5.0, 0.4) - erfc_R(0.4)) < 0.05);
    CHECK(bender_R(1.0, 5.0) < 1e-3);
    CHECK_THROWS_AS(bender_R(6.5, 0.0), DomainError);
    CHECK_THROWS_AS(bender_R(0.0, 0.0), DomainError);
    CHECK(std::isfinite(bender_R(6.0, cplx(0.1, 0.3))));
}

TEST_CASE("boundary family: derivative law") {
    double c = 1.0, h = 1e-4;
    cplx z(0.2, 0.1);
    double fd = (bender_R(c, z + h) - bender_R(c, z - h)) / (2.0 * h);
    CHECK(std::fabs(fd / bender_dRdx(c, z) - 1.0) < 1e-4);
    for (double cc : {0.4, 2.0}) {
        cplx w(-0.5, 0.3);
        double f2 = (bender_R(cc, w + h) - bender_R(cc, w - h)) / (2.0 * h);
        CHECK(std::fabs(f2 / bender_dRdx(cc, w) - 1.0) < 1e-4);
    }
}

TEST_CASE("boundary family: kernel properties and Airy endpoint") {
    auto pts = random_points(6, 1.5, 1.0, 9);
    check_kernel_props([](cplx z, cplx w) { return bender_K(0.8, z, w); }, pts, 1e-10);
    for (auto z : pts) CHECK(rel(bender_K(0.8, z, z), cplx(bender_R(0.8, z))) < 1e-12);
    for (auto [x, y] : {std::pair{0.0, 1.0}, {-1.0, 0.5}, {0.3, 0.3}, {-2.0, -1.5}})
        CHECK(std::fabs(bender_tilde_line(0.03, x, y) - pi * airy_K(x, y)) < 5e-3);
    // the error shrinks as c decreases
    double e1 = std::fabs(bender_tilde_line(0.2, 0.0, 1.0) - pi * airy_K(0.0, 1.0));
    double e2 = std::fabs(bender_tilde_line(0.05, 0.0, 1.0) - pi * airy_K(0.0, 1.0));
    CHECK(e2 < e1);
}

TEST_CASE("Laguerre edge") {
    double target = (1.0 - std::exp(-2.0)) / 4.0;
    CHECK(std::fabs(alue_edge_R(8.0, 0.5, 1.0) - target) < 1e-4);
    CHECK(std::fabs(target - 0.216166) < 1e-6);
    for (auto z : random_points(10, 3.0, 2.0, 10, 3.5)) {
        CHECK(alue_edge_R(1.3, 0.4, z) == doctest::Approx(alue_edge_R(1.3, 0.4, std::conj(z))).epsilon(1e-12));
        CHECK(alue_edge_R(1.3, 0.4, z) >= 0.0);
    }
    CHECK(alue_edge_R(1.0, 0.0, cplx(1.0, 0.2)) <= alue_edge_R(2.0, 0.0, cplx(1.0, 0.2)));
    CHECK_THROWS_AS(alue_edge_R(1.0, 0.0, -1.0), DomainError);
    CHECK_THROWS_AS(alue_edge_R(1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(alue_edge_R(1.0, -1.0, 1.0), DomainError);

    // real-axis oracle with boost Bessel functions
    for (double nu : {0.0, 1.3, -0.3})
        for (double x : {0.5, 2.0, 6.0}) {
            double c = 1.5;
            double I = integrate_adaptive(
                           [&](double s) {
                               double j = boost::math::cyl_bessel_j(nu, s * std::sqrt(x));
                               return s * std::exp(-0.5 * s * s) * j * j;
                           },
                           0.0, 2.0 * c, 1e-14, 1e-12)
                           .value;
            double oracle = 0.5 * boost::math::cyl_bessel_k(std::fabs(nu), x) * std::exp(x) * I;
            CHECK(rel(alue_edge_R(c, nu, x), oracle) < 1e-9);
        }
    // c -> infinity
    for (auto z : {cplx(0.4, 0.1), cplx(2.0, -1.0), cplx(-1.0, 1.0)})
        CHECK(std::fabs(alue_edge_R(9.0, 0.3, z) - planar_bessel_R(0.3, z)) < 1e-8);
    auto pts = random_points(6, 2.0, 1.5, 11, 2.0);
    check_kernel_props([](cplx z, cplx w) { return alue_edge_K(1.2, 0.6, z, w); }, pts, 1e-10);
    for (auto z : pts)
        for (auto w : pts)
            CHECK(std::abs(alue_edge_K(10.0, 0.6, z, w) - planar_bessel_K(0.6, z, w)) < 1e-8);
}

TEST_CASE("planar Bessel process and Bessel line kernel") {
    for (double x : {0.3, 1.0, 4.0}) CHECK(rel(planar_bessel_R(0.5, x), (1.0 - std::exp(-2.0 * x)) / (4.0 * x)) < 1e-12);
    CHECK(planar_bessel_R(0.5, 1.0) == doctest::Approx(0.216166).epsilon(1e-5));
    CHECK(planar_bessel_R(0.5, cplx(0.0, 1.0)) == doctest::Approx(planar_bessel_R(0.5, 1.0)).epsilon(1e-14));
    CHECK(planar_bessel_R(2.0, 0.0) == doctest::Approx(0.125));
    check_kernel_props([](cplx z, cplx w) { return planar_bessel_K(1.5, z, w); }, random_points(6, 2.0, 2.0, 12, 1.0),
                       1e-12);

    CHECK(std::fabs(bessel_K_line(0.0, 1.0, 2.0) - bessel_K_line_integral(0.0, 1.0, 2.0)) < 1e-10);
    for (double nu : {-0.5, 0.7, 2.0})
        CHECK(std::fabs(bessel_K_line(nu, 0.6, 3.1) - bessel_K_line_integral(nu, 0.6, 3.1)) < 1e-10);
    double s2 = std::sqrt(2.0);
    double diag = 0.25 * (std::pow(boost::math::cyl_bessel_j(1, s2), 2) -
                          boost::math::cyl_bessel_j(2, s2) * boost::math::cyl_bessel_j(0, s2));
    CHECK(std::fabs(bessel_K_line_integral(1.0, 2.0, 2.0) - diag) < 1e-10);
    CHECK(std::fabs(bessel_K_line(1.0, 2.0, 2.0) - diag) < 1e-12);
    CHECK(std::fabs(alue_edge_tilde_R0(1.0, 2.0) - pi * diag) < 1e-12);
    CHECK(std::fabs(bessel_K_line(0.3, 1.5, 1.5 + 1e-6) - bessel_K_line(0.3, 1.5, 1.5)) < 1e-6);
}

TEST_CASE("chiral edge") {
    for (auto z : {cplx(1.0, 0.3), cplx(0.2, -0.4), cplx(3.0, 1.0)})
        CHECK(chiral_edge_R(1.1, 0.4, 1, z) == doctest::Approx(alue_edge_R(1.1, 0.4, z)).epsilon(1e-14));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int d : {2, 3}) {
        cplx rot = std::polar(1.0, 2.0 * pi / d);
        for (int k = 0; k < 10; ++k) {
            cplx z(U(rng), U(rng));
            CHECK(chiral_edge_R(1.0, 0.5, d, z * rot) == doctest::Approx(chiral_edge_R(1.0, 0.5, d, z)).epsilon(1e-10));
        }
    }
    cplx z = std::polar(1.0, 0.3);
    CHECK(std::fabs(chiral_edge_R(8.0, 0.5, 2, z) - 0.432332) < 1e-3);
    CHECK(std::fabs(std::exp(-1.0) * std::sinh(1.0) - 0.432332) < 1e-6);
    for (double nu : {0.5, -0.5})
        for (auto w : {cplx(0.4, 0.2), cplx(1.0, -1.0)})
            CHECK(chiral_d2_closed_form(nu, w) == doctest::Approx(chiral_edge_R_infinity(nu, 2, w)).epsilon(1e-12));
    CHECK(chiral_d2_closed_form(-0.5, 1.0) == doctest::Approx(std::exp(-1.0) * std::cosh(1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(chiral_d2_closed_form(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(chiral_edge_R(1.0, 0.5, 2, cplx(0.0, 1.0)), DomainError);

    // rays of the one-dimensional limit
    for (double x : {0.3, 1.0, 2.7}) {
        CHECK(chiral_edge_tilde_R0(0.5, 2, x) == doctest::Approx(1.0 - std::sin(2 * x) / (2 * x)).epsilon(1e-12));
        CHECK(chiral_edge_tilde_R0(-0.5, 2, -x) == doctest::Approx(1.0 + std::sin(2 * x) / (2 * x)).epsilon(1e-12));
        CHECK(chiral_edge_tilde_R0(0.5, 2, cplx(x, x)) == 0.0);
        CHECK(chiral_edge_tilde_R0(0.2, 3, std::polar(x, 2.0 * pi / 3.0)) ==
              doctest::Approx(chiral_edge_tilde_R0(0.2, 3, x)).epsilon(1e-12));
    }
    CHECK(chiral_edge_tilde_R0(0.7, 1, 1.3) == doctest::Approx(alue_edge_tilde_R0(0.7, 1.3)).epsilon(1e-14));
}

TEST_CASE("point insertion") {
    CHECK(std::fabs(induced_R1(1.0, 0.0)) < 1e-14);
    CHECK(std::fabs(induced_R1(8.0, std::polar(1.0, 0.7)) - (1.0 - std::exp(-1.0))) < 1e-3);
    for (double c : {0.3, 1.0, 2.0})
        for (auto z : random_points(10, 2.0, 1.0, 14)) {
            CHECK(induced_R1(c, z) <= fks_R(c, z) + 1e-15);
            double lit = fks_R(c, z) - std::exp(-std::norm(z)) / (4.0 * std::erf(std::sqrt(2.0) * c)) *
                                           std::norm(erf_oracle((2.0 * c + cplx(0, 1) * z) / std::sqrt(2.0)) +
                                                     erf_oracle((2.0 * c - cplx(0, 1) * z) / std::sqrt(2.0)));
            CHECK(std::fabs(induced_R1(c, z) - lit) < 1e-10);
        }
    check_kernel_props([](cplx z, cplx w) { return induced_K1(0.9, z, w); }, random_points(6, 2.0, 1.0, 15), 1e-12);
    CHECK(std::abs(induced_K1(0.9, cplx(0.3, 0.2), 0.0)) < 1e-15);

    CHECK(ml_R(1.0, std::polar(1.0, 0.2)) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(ml_kernel(1.0, cplx(0.6, 0.8), cplx(0.6, 0.8)).real() == doctest::Approx(0.632121).epsilon(1e-6));
    check_kernel_props([](cplx z, cplx w) { return ml_kernel(2.5, z, w); }, random_points(6, 2.0, 2.0, 16), 1e-12);
    CHECK_THROWS_AS(ml_kernel(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ml_R(-1.0, 1.0), DomainError);
}

TEST_CASE("generalized sine kernel") {
    CHECK(std::fabs(gen_sine_K(1, 0.3, 0.7) - gen_sine_K1_explicit(0.3, 0.7)) < 1e-10);
    for (auto [x, y] : {std::pair{1.2, 0.4}, {2.5, 2.5}, {0.1, 3.3}})
        CHECK(std::fabs(gen_sine_K(1, x, y) - gen_sine_K1_explicit(x, y)) < 1e-10);
    CHECK(gen_sine_K(1, 1e-4, 1e-4) < 1e-6);
    CHECK(gen_sine_K(1, 1e-4, 1e-4) >= 0.0);
    for (auto [x, y] : {std::pair{0.3, 0.8}, {1.0, 1.0}, {2.0, 0.5}})
        CHECK(std::fabs(gen_sine_K(0, x, y) - sine_K(x, y)) < 1e-12);
    CHECK(gen_sine_K(2, -0.5, -1.5) == doctest::Approx(gen_sine_K(2, 0.5, 1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(gen_sine_K(1, -0.5, 0.5), DomainError);
    CHECK_THROWS_AS(gen_sine_K(-1, 0.5, 0.5), DomainError);
    CHECK(std::fabs(gen_sine_K(1, 0.8, 0.8 + 1e-6) - gen_sine_K(1, 0.8, 0.8)) < 1e-5);
}

TEST_CASE("hard edge bulk") {
    double a = 1.0;
    CHECK(hardedge_R(a, cplx(0.3, 1.0)) == 0.0);
    CHECK(hardedge_R(a, cplx(0.3, -1.5)) == 0.0);
    CHECK(std::abs(hardedge_K(a, cplx(0.0, 1.2), 0.0)) == 0.0);
    double m = integrate_panels([&](double y) { return hardedge_R(a, cplx(0.0, y)); }, -a, a, 16);
    CHECK(std::fabs(m - 2.0 * a) < 1e-8);
    double m2 = integrate_panels([&](double y) { return hardedge_R(2.5, cplx(0.0, y)); }, -2.5, 2.5, 30);
    CHECK(std::fabs(m2 - 5.0) < 1e-8);
    for (auto z : random_points(10, 3.0, 0.99, 17)) {
        CHECK(hardedge_R(a, z) == doctest::Approx(hardedge_R(a, std::conj(z))).epsilon(1e-13));
        CHECK(hardedge_R(a, z + 1.7) == hardedge_R(a, z));
        CHECK(rel(hardedge_K(a, z, z), cplx(hardedge_R(a, z))) < 1e-13);
        double y = z.imag();
        double oracle = integrate_adaptive(
                            [&](double t) { return std::exp(-0.5 * (2 * y - t) * (2 * y - t)) / window_oracle(a, t); },
                            -2.0 * a, 2.0 * a, 1e-15, 1e-13)
                            .value /
                        std::sqrt(2.0 * pi);
        CHECK(rel(hardedge_R(a, z), oracle) < 1e-11);
    }
    check_kernel_props([&](cplx z, cplx w) { return hardedge_K(a, z, w); }, random_points(8, 4.0, 0.95, 18), 1e-12);
    // off-diagonal oracle
    cplx z(0.4, 0.3), w(-1.1, -0.6);
    cplx s = z - std::conj(w);
    cplx I = integrate_adaptive_c(
                 [&](double t) { return std::exp(-0.5 * t * t - cplx(0, 1) * s * t) / window_oracle(a, t); }, -2 * a,
                 2 * a, 1e-15, 1e-13)
                 .value;
    cplx pref = std::exp(cplx(-z.imag() * z.imag() - w.imag() * w.imag(), z.real() * z.imag() - w.real() * w.imag()));
    CHECK(rel(hardedge_K(a, z, w), pref * I / std::sqrt(2.0 * pi)) < 1e-11);
}

TEST_CASE("families: names, validation, nonnegativity, conjugation") {
    for (int i = 0; i <= static_cast<int>(LimitKind::hardedge_bulk); ++i) {
        auto k = static_cast<LimitKind>(i);
        CHECK(parse_limit_kind(limit_kind_name(k)) == k);
    }
    CHECK_THROWS_AS(parse_limit_kind("nope"), DomainError);
    LimitFamily f;
    f.a = -1.0;
    CHECK_THROWS_AS(f.validate(), DomainError);
    f.kind = LimitKind::bender_edge;
    f.c = 7.0;
    CHECK_THROWS_AS(f.validate(), DomainError);
    f.kind = LimitKind::sine;
    CHECK_THROWS_AS(limit_kernel(f), DomainError);

    std::vector<LimitFamily> fams;
    auto add = [&](LimitKind k, double a, double c, double nu, int d) {
        LimitFamily g;
        g.kind = k;
        g.a = a;
        g.c = c;
        g.nu = nu;
        g.d = d;
        fams.push_back(g);
    };
    add(LimitKind::fks_bulk, 0.7, 1, 0, 1);
    add(LimitKind::ginibre, 1, 1, 0, 1);
    add(LimitKind::bender_edge, 1, 0.9, 0, 1);
    add(LimitKind::alue_edge, 1, 1.2, 0.3, 1);
    add(LimitKind::planar_bessel, 1, 1, -0.4, 1);
    add(LimitKind::chiral_edge, 1, 1.0, 0.5, 3);
    add(LimitKind::induced_bulk, 1, 0.8, 0, 1);
    add(LimitKind::ml_insertion, 1, 1, 1.5, 1);
    add(LimitKind::hardedge_bulk, 1.2, 1, 0, 1);
    for (const auto& g : fams) {
        auto lk = limit_kernel(g);
        for (double x = -2.05; x <= 2.1; x += 0.5)
            for (double y = -1.3; y <= 1.4; y += 0.45) {
                cplx z(x, y);
                double r = limit_R(g, z);
                CHECK(r >= 0.0);
                CHECK(std::fabs(r - limit_R(g, std::conj(z))) <= 1e-10 * std::max(1.0, r));
                CHECK(std::fabs(lk.R(z) - r) <= 1e-14 * std::max(1.0, r));
                CHECK(std::fabs(lk.K(z, z).real() - r) <= 1e-10 * std::max(1.0, r));
            }
    }
    LimitFamily s;
    s.kind = LimitKind::airy;
    CHECK(limit_R(s, 0.5) == doctest::Approx(airy_K(0.5, 0.5)));
}
