#pragma once

#include <string>
#include <vector>

#include "bandgas/limitkernels.hpp"

namespace bandgas {

// nx by ny lattice over [x0, x1] x [y0, y1], values row-major (j * nx + i)
struct ComplexGrid {
    double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
    int nx = 1, ny = 1;
    std::vector<double> values;

    cplx point(int i, int j) const;
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    void validate() const;  // throws DomainError
};

enum class WardVariant { free, hard, bessel };

struct WardOptions {
    WardVariant variant = WardVariant::free;
    double a = 1.0;   // strip half-width for the hard variant
    double nu = 0.0;  // order for the bessel variant
    double radius = 8.0;
    int radial_per_8 = 48;  // radial Gauss nodes per radius 8
    int angular = 96;
    double h_dbar = 1e-3;
    double h_lap = 1e-2;
    bool mass_one = true;
    double mass_extent = 8.0;  // transverse half-width of the mass-one box
};

struct WardPoint {
    cplx z;
    double R = 0.0;
    cplx C;
    cplx dbar_C;
    double lap_log_R = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double mass_one = 0.0;
    bool skipped = false;
    std::string reason;
};

struct WardReport {
    std::string kernel;
    WardVariant variant = WardVariant::free;
    ComplexGrid grid;  // values hold the residuals (NaN where skipped)
    double residual_sup = 0.0;
    double mass_one_max_dev = 0.0;
    int skipped = 0;
    std::vector<WardPoint> points;
};

std::string ward_variant_name(WardVariant v);
WardVariant parse_ward_variant(const std::string& s);

// B(z,w) = |K(z,w)|^2 / R(z); throws DomainError if R(z) <= 1e-300
double berezin(const LimitKernel& k, cplx z, cplx w);

// C(z) = int B(z,w)/(z-w) dA(w) on the disc |w - z| < radius, in polar coordinates about z
cplx cauchy_transform_C(const LimitKernel& k, cplx z, const WardOptions& opt = {});

// int B(z,w) dA(w) over |Im(w - z)| <= mass_extent; 1/X tails of the x-integral are extrapolated out
double mass_one(const LimitKernel& k, cplx z, const WardOptions& opt = {});

WardReport ward_residual(const LimitKernel& k, const ComplexGrid& grid, const WardOptions& opt = {});

}  // namespace bandgas
