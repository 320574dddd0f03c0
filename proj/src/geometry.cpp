#include "bandgas/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bandgas/errors.hpp"
#include "bandgas/quadrature.hpp"
#include "bandgas/specfun.hpp"

namespace bandgas {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();


// -(1/N) log[K_nu(N^2 r / c^2) r^p]
double bessel_weight_term(int N, double c, double nu, double r, double p) {
    double x = static_cast<double>(N) * N * r / (c * c);
    return -(log_bessel_k(nu, x) + p * std::log(r)) / N;
}

// limit of the Bessel weight term at r = 0, with exponent p = nu
double bessel_weight_at_zero(int N, double c, double nu) {
    if (nu <= 0.0) return -kInf;
    // K_nu(x) x^nu -> Gamma(nu) 2^(nu-1)
    double s = static_cast<double>(N) * N / (c * c);
    double logv = lgamma_fn(nu) + (nu - 1.0) * std::log(2.0) - nu * std::log(s);
    return -logv / N;
}
}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::ague: return "ague";
        case Family::ague_modified: return "ague_modified";
        case Family::alue: return "alue";
        case Family::alue_alpha: return "alue_alpha";
        case Family::chiral_d: return "chiral_d";
        case Family::induced_ague: return "induced_ague";
        case Family::hard_edge_ague: return "hard_edge_ague";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::ague, Family::ague_modified, Family::alue, Family::alue_alpha, Family::chiral_d,
                     Family::induced_ague, Family::hard_edge_ague})
        if (family_name(f) == s) return f;
    throw DomainError("unknown ensemble family '" + s + "'");
}

void EnsembleSpec::validate() const {
    if (N < 1) throw DomainError("N must be positive");
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be positive");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (family == Family::induced_ague) {
        if (!(nu > -0.5)) throw DomainError("induced ensemble needs nu > -1/2");
    } else if (!(nu > -1.0)) {
        throw DomainError("nu must exceed -1");
    }
    if (family == Family::alue_alpha) {
        if (!alpha || !(*alpha >= 0.0)) throw DomainError("alue_alpha needs alpha >= 0");
    } else if (alpha) {
        throw DomainError("alpha is only meaningful for alue_alpha");
    }
    if (family == Family::chiral_d) {
        if (!d || *d < 1) throw DomainError("chiral_d needs d >= 1");
    } else if (d) {
        throw DomainError("d is only meaningful for chiral_d");
    }
}

double EnsembleSpec::bessel_order() const {
    if (family == Family::alue_alpha) return *alpha * N;
    return nu;
}

bool EllipticDroplet::contains(cplx zeta, double dilation) const {
    double u = (zeta.real() - center) / (semi_axis_x * dilation);
    double v = zeta.imag() / (semi_axis_y * dilation);
    return u * u + v * v <= 1.0;
}

EllipticDroplet ellipse_droplet(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ellipse_droplet: a, b must be positive");
    EllipticDroplet e;
    e.center = 0.0;
    e.semi_axis_x = 1.0 / std::sqrt((a * a + a * b) / (2.0 * b));
    e.semi_axis_y = 1.0 / std::sqrt((a * b + b * b) / (2.0 * a));
    return e;
}

EllipticDroplet droplet(const EnsembleSpec& spec) {
    spec.validate();
    double N = spec.N, c2 = spec.c * spec.c;
    switch (spec.family) {
        case Family::ague:
        case Family::hard_edge_ague: return ellipse_droplet(0.5, N / (2.0 * c2));
        case Family::ague_modified: return ellipse_droplet(0.5, std::cbrt(N) / (2.0 * c2));
        case Family::alue: {
            EllipticDroplet e;
            e.center = 2.0 - c2 / N;
            e.semi_axis_x = 2.0 - c2 / N;
            e.semi_axis_y = 2.0 * c2 / N;
            return e;
        }
        case Family::alue_alpha: {
            double al = *spec.alpha;
            EllipticDroplet e;
            e.center = al + 2.0;
            e.semi_axis_x = 2.0 * std::sqrt(al + 1.0);
            e.semi_axis_y = 2.0 * std::sqrt(al + 1.0) * c2 / N;
            return e;
        }
        default: throw DomainError("droplet: no elliptic droplet for family " + family_name(spec.family));
    }
}

bool droplet_membership_chiral(const EnsembleSpec& spec, cplx zeta) {
    spec.validate();
    int d = spec.d.value_or(1);
    EnsembleSpec base = spec;
    base.family = Family::alue;
    base.d.reset();
    return droplet(base).contains(std::pow(zeta, d));
}

double potential_value(const EnsembleSpec& spec, cplx zeta) {
    spec.validate();
    const double N = spec.N, c2 = spec.c * spec.c;
    const double xi = zeta.real(), eta = zeta.imag();
    switch (spec.family) {
        case Family::ague: return 0.5 * xi * xi + 0.5 * (N / c2) * eta * eta;
        case Family::ague_modified: return 0.5 * xi * xi + std::cbrt(N) / (2.0 * c2) * eta * eta;
        case Family::hard_edge_ague:
            if (!droplet(spec).contains(zeta)) return kInf;
            return 0.5 * xi * xi + 0.5 * (N / c2) * eta * eta;
        case Family::induced_ague: {
            double q = 0.5 * xi * xi + 0.5 * (N / c2) * eta * eta;
            if (spec.nu == 0.0) return q;
            double r = std::abs(zeta);
            if (r == 0.0) return spec.nu > 0 ? kInf : -kInf;
            return q - 2.0 * spec.nu / N * std::log(r);
        }
        case Family::alue:
        case Family::alue_alpha: {
            double nu = spec.bessel_order();
            double r = std::abs(zeta);
            double lin = -(N / c2 - 1.0) * xi;
            if (r == 0.0) return bessel_weight_at_zero(spec.N, spec.c, nu);
            return bessel_weight_term(spec.N, spec.c, nu, r, nu) + lin;
        }
        case Family::chiral_d: {
            int d = *spec.d;
            cplx zd = std::pow(zeta, d);
            double r = std::abs(zeta);
            double nu = spec.nu;
            double lin = -(N / c2 - 1.0) * zd.real();
            double p = d * (nu + 2.0) - 2.0;
            if (r == 0.0) {
                if (d == 1) return bessel_weight_at_zero(spec.N, spec.c, nu);
                // log[K_nu(s r^d) r^p] ~ k log r as r -> 0
                double k = 2.0 * d - 2.0 - 2.0 * d * std::max(0.0, -nu);
                if (k > 0.0) return kInf;
                if (k < 0.0) return -kInf;
                r = 1e-150;
                lin = 0.0;
            }
            double x = N * N * std::pow(r, d) / c2;
            return -(log_bessel_k(nu, x) + p * std::log(r)) / N + lin;
        }
    }
    return 0.0;
}

double laplacian_potential(const EnsembleSpec& spec, cplx zeta) {
    spec.validate();
    const double N = spec.N, c2 = spec.c * spec.c;
    switch (spec.family) {
        case Family::ague:
        case Family::hard_edge_ague:
        case Family::induced_ague: return 0.25 * (1.0 + N / c2);
        case Family::ague_modified: return 0.25 * (1.0 + std::cbrt(N) / c2);
        case Family::alue:
        case Family::alue_alpha: {
            double r = std::abs(zeta);
            if (r == 0.0) throw DomainError("laplacian_potential: singular at the origin");
            return N / (4.0 * c2 * r);
        }
        case Family::chiral_d: {
            int d = *spec.d;
            double r = std::abs(zeta);
            if (r == 0.0) throw DomainError("laplacian_potential: singular at the origin");
            // Delta of f(zeta^d) is d^2 |zeta|^{2d-2} (Delta f)(zeta^d)
            return d * d * std::pow(r, 2 * d - 2) * N / (4.0 * c2 * std::pow(r, d));
        }
    }
    return 0.0;
}

EquilibriumLaw EquilibriumLaw::semicircle() { return {LawKind::semicircle, 0.0, -2.0, 2.0}; }

EquilibriumLaw EquilibriumLaw::marchenko_pastur(double alpha) {
    if (!(alpha >= 0.0)) throw DomainError("marchenko_pastur: alpha must be >= 0");
    double s = std::sqrt(alpha + 1.0);
    return {LawKind::marchenko_pastur, alpha, (s - 1.0) * (s - 1.0), (s + 1.0) * (s + 1.0)};
}

double EquilibriumLaw::density(double xi) const {
    if (kind == LawKind::semicircle) {
        if (xi <= -2.0 || xi >= 2.0) return 0.0;
        return std::sqrt(4.0 - xi * xi) / (2.0 * kPi);
    }
    if (alpha == 0.0 && xi == 0.0) return kInf;
    if (xi <= lo || xi >= hi) return 0.0;
    return std::sqrt((hi - xi) * (xi - lo)) / (2.0 * kPi * xi);
}

double EquilibriumLaw::cdf(double xi) const {
    if (xi <= lo) return 0.0;
    if (xi >= hi) return 1.0;
    if (kind == LawKind::semicircle) {
        return 0.5 + xi * std::sqrt(4.0 - xi * xi) / (4.0 * kPi) + std::asin(xi / 2.0) / kPi;
    }
    // xi = lo + (hi - lo) sin^2 t
    double w = hi - lo;
    double t1 = std::asin(std::sqrt((xi - lo) / w));
    auto f = [&](double t) {
        double s = std::sin(t), c = std::cos(t);
        double x = lo + w * s * s;
        return w * w * s * s * c * c / (kPi * x);
    };
    return integrate_panels(f, 0.0, t1, 4, 32);
}

EquilibriumLaw equilibrium_law(const EnsembleSpec& spec) {
    switch (spec.family) {
        case Family::alue:
        case Family::chiral_d: return EquilibriumLaw::marchenko_pastur(0.0);
        case Family::alue_alpha: return EquilibriumLaw::marchenko_pastur(spec.alpha.value_or(0.0));
        default: return EquilibriumLaw::semicircle();
    }
}

double rho(const EnsembleSpec& spec, double p) {
    spec.validate();
    switch (spec.family) {
        case Family::ague:
        case Family::hard_edge_ague:
        case Family::induced_ague: return 2.0 * spec.c;
        case Family::alue:
        case Family::alue_alpha:
            if (!(p > 0.0)) throw DomainError("rho: p must be positive for Laguerre-type ensembles");
            return 2.0 * spec.c * std::sqrt(p);
        default: throw DomainError("rho: no bulk limit for family " + family_name(spec.family));
    }
}

double band_height(const EnsembleSpec& spec, double p) {
    EquilibriumLaw law = equilibrium_law(spec);
    double s = law.density(p);
    if (s == 0.0) return 0.0;
    return 0.5 * kPi * rho(spec, p) * s;
}

RescaleMap rescale_map(const EnsembleSpec& spec, double p) {
    spec.validate();
    RescaleMap m;
    m.p = p;
    switch (spec.family) {
        case Family::ague:
        case Family::hard_edge_ague:
        case Family::induced_ague:
        case Family::alue:
        case Family::alue_alpha: m.scale = spec.N / rho(spec, p); break;
        case Family::ague_modified: m.scale = std::sqrt(spec.N * laplacian_potential(spec, p)); break;
        default: throw DomainError("rescale_map: unsupported family " + family_name(spec.family));
    }
    if (!(m.scale > 0.0) || !std::isfinite(m.scale)) throw DomainError("rescale_map: singular point");
    return m;
}

}  // namespace bandgas
