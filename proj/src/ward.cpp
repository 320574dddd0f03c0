#include "bandgas/ward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bandgas/errors.hpp"
#include "bandgas/parallel.hpp"
#include "bandgas/quadrature.hpp"
#include "bandgas/specfun.hpp"

namespace bandgas {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kOrder = 16;

double strip_of(const LimitKernel& k, const WardOptions& opt) {
    if (k.strip) return *k.strip;
    return opt.variant == WardVariant::hard ? opt.a : std::numeric_limits<double>::infinity();
}

// largest r with |Im(z + r e^{i t})| <= a
double ray_limit(double y, double s, double a, double r) {
    if (!std::isfinite(a)) return r;
    if (s > 0.0) return std::min(r, (a - y) / s);
    if (s < 0.0) return std::min(r, (-a - y) / s);
    return r;
}

double log_R(const LimitKernel& k, cplx z) {
    double r = k.R(z);
    if (!(r > 0.0)) throw DomainError("ward: R vanishes on the stencil");
    return std::log(r);
}

template <class F>
double laplacian(F&& f, cplx z, double h) {
    double s = f(z + h) + f(z - h) + f(z + cplx(0.0, h)) + f(z - cplx(0.0, h)) - 4.0 * f(z);
    return s / (4.0 * h * h);
}

double q0_bessel(double nu, cplx z) {
    double r = std::abs(z);
    return -(log_bessel_k(std::fabs(nu), r) + nu * std::log(r));
}

}  // namespace

cplx ComplexGrid::point(int i, int j) const {
    double x = nx > 1 ? x0 + (x1 - x0) * i / (nx - 1) : x0;
    double y = ny > 1 ? y0 + (y1 - y0) * j / (ny - 1) : y0;
    return {x, y};
}

void ComplexGrid::validate() const {
    if (nx < 1 || ny < 1) throw DomainError("grid: nx, ny must be positive");
    if (!(x1 >= x0) || !(y1 >= y0)) throw DomainError("grid: empty box");
}

std::string ward_variant_name(WardVariant v) {
    switch (v) {
        case WardVariant::free: return "free";
        case WardVariant::hard: return "hard";
        case WardVariant::bessel: return "bessel";
    }
    return "free";
}

WardVariant parse_ward_variant(const std::string& s) {
    if (s == "free") return WardVariant::free;
    if (s == "hard") return WardVariant::hard;
    if (s == "bessel") return WardVariant::bessel;
    throw DomainError("unknown Ward variant: " + s);
}

double berezin(const LimitKernel& k, cplx z, cplx w) {
    double r = k.R(z);
    if (!(r > 1e-300)) throw DomainError("berezin: R(z) vanishes");
    return std::norm(k.K(z, w)) / r;
}

cplx cauchy_transform_C(const LimitKernel& k, cplx z, const WardOptions& opt) {
    double r = k.R(z);
    if (!(r > 1e-300)) throw DomainError("cauchy_transform_C: R(z) vanishes");
    const GaussRule& g = gauss_legendre(kOrder);
    int panels = std::max(1, static_cast<int>(std::lround(opt.radius / 8.0 * opt.radial_per_8 / kOrder)));
    double a = strip_of(k, opt);
    double dt = 2.0 * kPi / opt.angular;
    cplx total = 0.0;
    for (int m = 0; m < opt.angular; ++m) {
        double t = (m + 0.5) * dt;
        cplx e(std::cos(t), std::sin(t));
        double rmax = ray_limit(z.imag(), e.imag(), a, opt.radius);
        if (rmax <= 0.0) continue;
        double h = rmax / panels, ray = 0.0;
        for (int p = 0; p < panels; ++p)
            for (int i = 0; i < kOrder; ++i) {
                double rr = (p + 0.5) * h + 0.5 * h * g.x[i];
                ray += 0.5 * h * g.w[i] * std::norm(k.K(z, z + rr * e));
            }
        total += ray * std::conj(e);
    }
    // B/(z - w) r dr dt with z - w = -r e^{it}
    return -total * dt / (kPi * r);
}

double mass_one(const LimitKernel& k, cplx z, const WardOptions& opt) {
    double r = k.R(z);
    if (!(r > 1e-300)) throw DomainError("mass_one: R(z) vanishes");
    double a = strip_of(k, opt);
    double ylo = std::max(z.imag() - opt.mass_extent, -a), yhi = std::min(z.imag() + opt.mass_extent, a);
    int py = std::max(4, static_cast<int>(std::ceil((yhi - ylo) / 2.0)));
    auto column = [&](double X) {
        return integrate_panels([&](double y) { return std::norm(k.K(z, cplx(z.real() + X, y))); }, ylo, yhi, py);
    };
    // box-window kernels have |K|^2 ~ 1/X^2 tails: cutoffs X1 < X2 and elimination of the A/X term
    const double X1 = 50.0, X2 = 100.0, w = 0.5;
    double inner = integrate_panels(column, -X1, X1, static_cast<int>(2.0 * X1 / w));
    double outer = integrate_panels(column, X1, X2, static_cast<int>((X2 - X1) / w)) +
                   integrate_panels(column, -X2, -X1, static_cast<int>((X2 - X1) / w));
    double m1 = inner, m2 = inner + outer;
    double m = (X2 * m2 - X1 * m1) / (X2 - X1);
    return m / (kPi * r);
}

WardReport ward_residual(const LimitKernel& k, const ComplexGrid& grid, const WardOptions& opt) {
    grid.validate();
    WardReport rep;
    rep.kernel = k.name;
    rep.variant = opt.variant;
    rep.grid = grid;
    rep.grid.values.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
    rep.points.resize(grid.size());
    const double hd = opt.h_dbar, hl = opt.h_lap;
    const double a = strip_of(k, opt);
    const double reach = std::max(hd, hl);

    // x-invariant kernels: C and the mass depend on Im z only
    std::vector<cplx> c_lo(grid.ny), c_mid(grid.ny), c_hi(grid.ny);
    std::vector<double> row_mass(grid.ny, 1.0);
    std::vector<std::string> row_err(grid.ny);
    if (k.x_invariant) {
        parallel_for(grid.ny, [&](std::size_t j) {
            cplx z = grid.point(0, static_cast<int>(j));
            if (std::fabs(z.imag()) + reach >= a) return;
            try {
                c_lo[j] = cauchy_transform_C(k, z - cplx(0.0, hd), opt);
                c_mid[j] = cauchy_transform_C(k, z, opt);
                c_hi[j] = cauchy_transform_C(k, z + cplx(0.0, hd), opt);
                if (opt.mass_one) row_mass[j] = mass_one(k, z, opt);
            } catch (const DomainError& e) {
                row_err[j] = e.what();
            }
        });
    }

    parallel_for(grid.size(), [&](std::size_t idx) {
        int i = static_cast<int>(idx % grid.nx), j = static_cast<int>(idx / grid.nx);
        WardPoint& P = rep.points[idx];
        cplx z = grid.point(i, j);
        P.z = z;
        if (std::fabs(z.imag()) + reach >= a) {
            P.skipped = true;
            P.reason = "stencil crosses the strip boundary";
            return;
        }
        if (opt.variant == WardVariant::bessel && std::abs(z) <= 2.0 * reach) {
            P.skipped = true;
            P.reason = "stencil reaches the origin";
            return;
        }
        try {
            P.R = k.R(z);
            if (k.x_invariant) {
                if (!row_err[j].empty()) throw DomainError(row_err[j]);
                P.C = c_mid[j];
                P.dbar_C = cplx(0.0, 0.5) * (c_hi[j] - c_lo[j]) / (2.0 * hd);
                P.mass_one = row_mass[j];
            } else {
                cplx cxp = cauchy_transform_C(k, z + hd, opt), cxm = cauchy_transform_C(k, z - hd, opt);
                cplx cyp = cauchy_transform_C(k, z + cplx(0.0, hd), opt),
                     cym = cauchy_transform_C(k, z - cplx(0.0, hd), opt);
                P.C = 0.25 * (cxp + cxm + cyp + cym);
                P.dbar_C = 0.5 * ((cxp - cxm) / (2.0 * hd) + cplx(0.0, 1.0) * (cyp - cym) / (2.0 * hd));
                P.mass_one = opt.mass_one ? mass_one(k, z, opt) : 1.0;
            }
            P.lap_log_R = laplacian([&](cplx w) { return log_R(k, w); }, z, hl);
            if (opt.variant == WardVariant::bessel)
                P.rhs = P.R - laplacian([&](cplx w) { return q0_bessel(opt.nu, w); }, z, hl) - P.lap_log_R;
            else
                P.rhs = P.R - 1.0 - P.lap_log_R;
            P.residual = std::abs(P.dbar_C - P.rhs);
        } catch (const DomainError& e) {
            P.skipped = true;
            P.reason = e.what();
        }
    });

    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const WardPoint& P = rep.points[idx];
        if (P.skipped) {
            ++rep.skipped;
            continue;
        }
        rep.grid.values[idx] = P.residual;
        rep.residual_sup = std::max(rep.residual_sup, P.residual);
        if (opt.mass_one) rep.mass_one_max_dev = std::max(rep.mass_one_max_dev, std::fabs(P.mass_one - 1.0));
    }
    return rep;
}

}  // namespace bandgas
