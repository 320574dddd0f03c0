#include <cmath>
#include <numbers>
#include <random>

#include "bandgas/errors.hpp"
#include "bandgas/limitkernels.hpp"
#include "bandgas/ward.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bandgas;
using std::numbers::pi;

namespace {

LimitKernel family(LimitKind kind, double a = 1.0, double c = 1.0, double nu = 0.0) {
    LimitFamily f;
    f.kind = kind;
    f.a = a;
    f.c = c;
    f.nu = nu;
    return limit_kernel(f);
}

ComplexGrid box(double x0, double x1, double y0, double y1, int nx, int ny) {
    ComplexGrid g;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    g.nx = nx;
    g.ny = ny;
    return g;
}

}  // namespace

TEST_CASE("Berezin kernel") {
    auto gin = family(LimitKind::ginibre);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        cplx z(U(rng), U(rng)), w(U(rng), U(rng));
        CHECK(berezin(gin, z, w) == doctest::Approx(std::exp(-std::norm(z - w))).epsilon(1e-12));
    }
    auto fks = family(LimitKind::fks_bulk, 1.0);
    cplx z(0.3, 0.4);
    CHECK(berezin(fks, z, z) == doctest::Approx(fks.R(z)).epsilon(1e-12));
    auto hard = family(LimitKind::hardedge_bulk, 1.0);
    CHECK_THROWS_AS(berezin(hard, cplx(0.0, 2.0), 0.0), DomainError);
}

TEST_CASE("mass-one") {
    CHECK(std::fabs(mass_one(family(LimitKind::fks_bulk, 1.0), 0.0) - 1.0) < 1e-3);
    std::vector<cplx> base = {0.0, cplx(0.5, 0.3), cplx(-1.0, -0.7), cplx(2.0, 1.2), cplx(0.1, -1.5)};
    std::vector<LimitKernel> ks = {family(LimitKind::ginibre), family(LimitKind::fks_bulk, 0.5),
                                   family(LimitKind::fks_bulk, 1.0), family(LimitKind::fks_bulk, 2.0),
                                   family(LimitKind::ml_insertion, 1.0, 1.0, 1.0),
                                   family(LimitKind::ml_insertion, 1.0, 1.0, 2.5)};
    for (const auto& k : ks)
        for (auto z : base) {
            if (k.name.rfind("ml", 0) == 0 && z == 0.0) {
                CHECK_THROWS_AS(mass_one(k, z), DomainError);  // R vanishes at the insertion
                continue;
            }
            INFO(k.name, " z=", z.real(), ",", z.imag());
            CHECK(std::fabs(mass_one(k, z) - 1.0) < 1e-3);
        }
    // the strip kernel carries its mass inside the strip
    auto hard = family(LimitKind::hardedge_bulk, 1.0);
    for (auto z : {cplx(0.0, 0.0), cplx(0.3, 0.6), cplx(-1.0, -0.9)}) CHECK(std::fabs(mass_one(hard, z) - 1.0) < 1e-3);
}

TEST_CASE("Cauchy transform") {
    auto gin = family(LimitKind::ginibre);
    for (auto z : {cplx(0.0, 0.0), cplx(1.3, -0.4), cplx(-2.0, 2.0)}) CHECK(std::abs(cauchy_transform_C(gin, z)) < 1e-12);
    auto fks = family(LimitKind::fks_bulk, 1.0);
    for (double y : {0.0, 0.4, -0.9}) {
        cplx c0 = cauchy_transform_C(fks, cplx(0.0, y));
        for (double x : {-1.0, 1.0}) CHECK(std::abs(cauchy_transform_C(fks, cplx(x, y)) - c0) < 1e-3);
        CHECK(std::abs(cauchy_transform_C(fks, cplx(0.3, -y)) - std::conj(cauchy_transform_C(fks, cplx(0.3, y)))) <
              1e-10);
    }
    auto ml = family(LimitKind::ml_insertion, 1.0, 1.0, 1.5);
    cplx z(0.7, 0.4);
    CHECK(std::abs(cauchy_transform_C(ml, std::conj(z)) - std::conj(cauchy_transform_C(ml, z))) < 1e-10);
    // independent quadrature of the principal-value integral on a punctured box
    auto f = [&](cplx w) { return berezin(fks, cplx(0.0, 0.5), w); };
    cplx zc(0.0, 0.5);
    auto re = testutil::integrate_polar([&](cplx w) { return (f(w) / (zc - w)).real(); }, zc, 8.0, 192, 24);
    auto im = testutil::integrate_polar([&](cplx w) { return (f(w) / (zc - w)).imag(); }, zc, 8.0, 192, 24);
    CHECK(std::abs(cauchy_transform_C(fks, zc) - cplx(re, im)) < 1e-8);
}

TEST_CASE("Ward residuals") {
    auto gin = family(LimitKind::ginibre);
    auto rg = ward_residual(gin, box(-1, 1, -1, 1, 5, 5));
    CHECK(rg.residual_sup <= 1e-3);
    CHECK(rg.skipped == 0);
    CHECK(rg.mass_one_max_dev <= 1e-3);

    auto fks = family(LimitKind::fks_bulk, 1.0);
    auto rf = ward_residual(fks, box(-1, 1, -0.8, 0.8, 9, 17));
    CHECK(rf.residual_sup <= 5e-3);
    CHECK(rf.mass_one_max_dev <= 1e-3);
    CHECK(rf.skipped == 0);
    // x-independence of the residual
    for (int j = 0; j < 17; ++j)
        for (int i = 1; i < 9; ++i)
            CHECK(std::fabs(rf.grid.values[j * 9 + i] - rf.grid.values[j * 9]) < 1e-12);

    // a non-solution fails: the Ginibre kernel against the modified right-hand side of the bessel variant
    WardOptions bo;
    bo.variant = WardVariant::bessel;
    bo.nu = 0.5;
    bo.mass_one = false;
    auto bad = ward_residual(gin, box(0.6, 1.2, 0.2, 0.2, 2, 1), bo);
    CHECK(bad.residual_sup > 0.1);
}

TEST_CASE("Ward residual under stencil refinement") {
    auto fks = family(LimitKind::fks_bulk, 0.7);
    WardOptions o;
    o.mass_one = false;
    o.h_lap = 8e-2;
    double r1 = ward_residual(fks, box(0, 0, -0.6, 0.6, 1, 7), o).residual_sup;
    o.h_lap = 4e-2;
    double r2 = ward_residual(fks, box(0, 0, -0.6, 0.6, 1, 7), o).residual_sup;
    CHECK(r2 < r1 / 2.0);
    // Ginibre is exact at every step size
    auto gin = family(LimitKind::ginibre);
    for (double h : {4e-2, 2e-2, 1e-2}) {
        o.h_lap = h;
        CHECK(ward_residual(gin, box(-1, 1, -1, 1, 3, 3), o).residual_sup < 1e-10);
    }
}

TEST_CASE("Ward residual: Bessel variant and hard edge") {
    auto pb = family(LimitKind::planar_bessel, 1.0, 1.0, 0.5);
    WardOptions o;
    o.variant = WardVariant::bessel;
    o.nu = 0.5;
    o.radius = 30.0;
    o.mass_one = false;
    auto r = ward_residual(pb, box(0.5, 1.4, -1.0, 1.0, 3, 3), o);
    CHECK(r.skipped == 0);
    CHECK(r.residual_sup <= 1e-2);

    auto hard = family(LimitKind::hardedge_bulk, 1.0);
    WardOptions h;
    h.variant = WardVariant::hard;
    auto rh = ward_residual(hard, box(0, 0.5, -1.0, 1.0, 2, 11), h);
    CHECK(rh.skipped == 4);  // the rows at |Im z| = 1
    CHECK(rh.residual_sup <= 1e-2);
    CHECK(rh.mass_one_max_dev <= 1e-3);
    CHECK(std::isnan(rh.grid.values[0]));
}

TEST_CASE("grid and variant names") {
    auto g = box(-1, 1, 0, 2, 3, 5);
    CHECK(g.point(0, 0) == cplx(-1, 0));
    CHECK(g.point(2, 4) == cplx(1, 2));
    CHECK(g.point(1, 2) == cplx(0, 1));
    CHECK(g.size() == 15);
    CHECK_THROWS_AS(box(1, 0, 0, 1, 2, 2).validate(), DomainError);
    for (auto v : {WardVariant::free, WardVariant::hard, WardVariant::bessel})
        CHECK(parse_ward_variant(ward_variant_name(v)) == v);
    CHECK_THROWS_AS(parse_ward_variant("x"), DomainError);
}
