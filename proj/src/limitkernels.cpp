#include "bandgas/limitkernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "bandgas/errors.hpp"
#include "bandgas/quadrature.hpp"
#include "bandgas/specfun.hpp"

namespace bandgas {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;
constexpr int kOrder = 16;

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}

bool on_cut(cplx z) { return z.imag() == 0.0 && z.real() <= 0.0; }

double jv(double nu, double x) { return bessel_j(nu, x).value.real(); }

// J_{nu+1} J_{nu-1} via the three-term relation, avoiding negative integer orders
double j_pair_product(double nu, double t) {
    double j0 = jv(nu, t), j1 = jv(nu + 1.0, t);
    return j1 * (2.0 * nu / t * j0 - j1);
}

// (1/4)(J_nu(t)^2 - J_{nu+1}(t) J_{nu-1}(t))
double bessel_diag(double nu, double t) {
    double j0 = jv(nu, t);
    return 0.25 * (j0 * j0 - j_pair_product(nu, t));
}

// int_0^inf exp(l0 + l1 u) Ai(p1 + q u) Ai(p2 + q u) du, scanned panel by panel until the
// integrand is 40 e-folds below its running peak and both Airy arguments are in the right half plane
ScaledComplex airy_pair_integral(cplx l0, double l1, cplx p1, cplx p2, double q) {
    const GaussRule& g = gauss_legendre(kOrder);
    double step = std::min(0.5, 0.5 / q);
    ScaledComplex sum;
    double peak = -std::numeric_limits<double>::infinity();
    auto term = [&](double u) {
        return ScaledComplex::from_exp(l0 + l1 * u) * airy_ai_scaled(p1 + q * u) * airy_ai_scaled(p2 + q * u);
    };
    for (int p = 0; p < 200000; ++p) {
        double a = p * step, mid = a + 0.5 * step, half = 0.5 * step;
        ScaledComplex panel;
        for (int i = 0; i < kOrder; ++i) {
            ScaledComplex t = term(mid + half * g.x[i]);
            peak = std::max(peak, t.log_abs());
            panel += t * cplx(g.w[i] * half);
        }
        sum += panel;
        double b = a + step;
        if ((p1 + q * b).real() > 0.0 && (p2 + q * b).real() > 0.0 && term(b).log_abs() < peak - 40.0)
            return sum;
    }
    throw NumericalError("airy_pair_integral: integrand did not decay");
}

// int_0^{2c} s e^{-s^2/2} J_nu(s r1) conj(J_nu(s r2)) ds
cplx edge_integral(double c, double nu, cplx r1, cplx r2) {
    const GaussRule& g = gauss_legendre(kOrder);
    double S = 2.0 * c;
    double rmax = std::max(std::abs(r1), std::abs(r2));
    double L = std::min(S, 1.0 / (1.0 + rmax));
    auto f = [&](double s) {
        return s * std::exp(-0.5 * s * s) * bessel_j(nu, s * r1).value * std::conj(bessel_j(nu, s * r2).value);
    };
    auto panel = [&](double a, double b) {
        cplx acc = 0.0;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < kOrder; ++i) acc += g.w[i] * f(mid + half * g.x[i]);
        return acc * half;
    };
    // leading power on [0, eps]
    double eps = L * std::pow(4.0, -12);
    cplx lead = std::pow(r1, nu) * std::conj(std::pow(r2, nu)) / std::pow(gamma_fn(nu + 1.0), 2) *
                std::pow(0.5, 2.0 * nu) * std::pow(eps, 2.0 + 2.0 * nu) / (2.0 + 2.0 * nu);
    cplx total = lead;
    double a = eps;
    for (int k = 11; k >= 0; --k) {
        double b = L * std::pow(4.0, -k);
        total += panel(a, b);
        a = b;
    }
    if (S > L) {
        double h = std::min(0.5, 1.0 / (1.0 + rmax));
        int n = std::max(1, static_cast<int>(std::ceil((S - L) / h)));
        double w = (S - L) / n;
        for (int p = 0; p < n; ++p) total += panel(L + p * w, L + (p + 1) * w);
    }
    return total;
}

// z^d with the branch checked on the negative axis
cplx power_d(cplx z, int d) {
    cplx w = std::polar(std::pow(std::abs(z), d), d * std::arg(z));
    if (std::fabs(w.imag()) <= 1e-14 * std::abs(w) && w.real() <= 0.0)
        throw DomainError("chiral edge: z^d on the negative axis");
    return w;
}

// 1/F(t) at Gauss nodes over [-2a, 2a], cached per (a, panels)
struct HardNodes {
    std::vector<double> t, w;  // w already divided by F(t)
};

const HardNodes& hard_nodes(double a, int panels) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, HardNodes> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(a, panels);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const GaussRule& g = gauss_legendre(kOrder);
    HardNodes n;
    double h = 4.0 * a / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = -2.0 * a + (p + 0.5) * h;
        for (int i = 0; i < kOrder; ++i) {
            double t = mid + 0.5 * h * g.x[i];
            n.t.push_back(t);
            n.w.push_back(0.5 * h * g.w[i] / gauss_window(a, t).real());
        }
    }
    return cache.emplace(key, std::move(n)).first->second;
}

void check_a(double a) { require(a > 0.0 && std::isfinite(a), "limit kernel: a must be positive"); }
void check_c(double c) { require(c > 0.0 && std::isfinite(c), "limit kernel: c must be positive"); }
void check_nu(double nu) { require(nu > -1.0 && std::isfinite(nu), "limit kernel: nu must exceed -1"); }
void check_bender(double c) {
    check_c(c);
    require(c <= 6.0, "bender: c > 6 exceeds the exponent range");
}

}  // namespace

cplx ginibre_K(cplx z, cplx w) { return std::exp(z * std::conj(w) - 0.5 * std::norm(z) - 0.5 * std::norm(w)); }

cplx window_fourier(double a, cplx s, cplx logpref) {
    const cplx I(0.0, 1.0);
    cplx up = (2.0 * a + I * s) / std::sqrt(2.0), um = (2.0 * a - I * s) / std::sqrt(2.0);
    cplx Ep = logpref - 2.0 * a * a - 2.0 * I * a * s, Em = logpref - 2.0 * a * a + 2.0 * I * a * s;
    int nneg = (up.real() < 0.0) + (um.real() < 0.0);
    cplx res = 0.0;
    if (nneg != 1) res = static_cast<double>(1 - nneg) * std::exp(logpref - 0.5 * s * s);
    auto add = [&](cplx u, cplx E) {
        if (u.real() >= 0.0)
            res -= 0.5 * std::exp(E + std::log(cerfcx(u)));
        else
            res += 0.5 * std::exp(E + std::log(cerfcx(-u)));
    };
    add(up, Ep);
    add(um, Em);
    return res;
}

double fks_R(double a, cplx z) {
    check_a(a);
    return std::max(0.0, gauss_window(a, 2.0 * z.imag()).real());
}

cplx fks_K(double a, cplx z, cplx w) {
    check_a(a);
    cplx lp(-z.imag() * z.imag() - w.imag() * w.imag(), z.real() * z.imag() - w.real() * w.imag());
    return window_fourier(a, z - std::conj(w), lp);
}

cplx fks_tilde_K(double a, cplx zt, cplx wt) {
    check_a(a);
    double al = 2.0 * a / kPi;
    cplx s = zt - std::conj(wt);
    double lp = -(zt.imag() * zt.imag() + wt.imag() * wt.imag()) / (al * al);
    int panels = 8 + static_cast<int>(std::ceil(std::fabs(s.real()))) + static_cast<int>(std::ceil(std::fabs(s.imag())));
    cplx v = integrate_panels(
        [&](double u) { return std::exp(lp - 0.5 * al * al * u * u + cplx(0.0, u) * s); }, -kPi, kPi, panels,
        kOrder);
    return v / (kSqrt2Pi * al);
}

double fks_tilde_line(double a, double x, double y) {
    double al = 2.0 * a / kPi;
    return al * std::sqrt(kPi / 2.0) * fks_tilde_K(a, x, y).real();
}

double sine_K(double x, double y) {
    double d = x - y;
    if (std::fabs(d) < 1e-8) return 1.0 - kPi * kPi * d * d / 6.0;
    return std::sin(kPi * d) / (kPi * d);
}

double airy_K(double x, double y) {
    if (std::fabs(x - y) < 1e-7 * std::max(1.0, std::fabs(x))) {
        double m = 0.5 * (x + y);
        double ai = airy_ai(m).value.real(), aip = airy_ai_prime(m).value.real();
        return aip * aip - m * ai * ai;
    }
    double ax = airy_ai(x).value.real(), ay = airy_ai(y).value.real();
    double dx = airy_ai_prime(x).value.real(), dy = airy_ai_prime(y).value.real();
    return (ax * dy - dx * ay) / (x - y);
}

double airy_K_integral(double x, double y) {
    double U = std::max(2.0, 12.0 - std::min(x, y));
    int panels = static_cast<int>(std::ceil(U / 0.5));
    return integrate_panels(
        [&](double u) { return airy_ai(x + u).value.real() * airy_ai(y + u).value.real(); }, 0.0, U, panels,
        kOrder);
}

double bender_R(double c, cplx z) { return std::max(0.0, bender_K(c, z, z).real()); }

double bender_dRdx(double c, cplx z) {
    check_bender(c);
    double y = z.imag();
    ScaledComplex v = ScaledComplex::from_exp(4.0 / 3.0 * std::pow(c, 6) - 2.0 * y * y + 4.0 * c * c * c * z.real()) *
                      airy_ai_scaled(2.0 * c * z + std::pow(c, 4)).norm();
    return -kSqrt2Pi * 4.0 * c * c * v.value().real();
}

cplx bender_K(double c, cplx z, cplx w) {
    check_bender(c);
    double c3 = c * c * c, c4 = c3 * c;
    cplx wb = std::conj(w);
    ScaledComplex I = airy_pair_integral(4.0 / 3.0 * c3 * c3 + 2.0 * c3 * (z + wb), 4.0 * c3, 2.0 * c * z + c4,
                                         2.0 * c * wb + c4, 2.0 * c);
    double lp = std::log(kSqrt2Pi * 4.0 * c * c) - z.imag() * z.imag() - w.imag() * w.imag();
    return (I * ScaledComplex::from_exp(lp)).value();
}

cplx bender_tilde_K(double c, cplx zt, cplx wt) {
    check_bender(c);
    double al = c * std::sqrt(2.0), al2 = al * al;
    cplx wb = std::conj(wt);
    ScaledComplex I = airy_pair_integral(al2 * al2 * al2 / 6.0 + 0.5 * al2 * (zt + wb), al2, zt + 0.25 * al2 * al2,
                                         wb + 0.25 * al2 * al2, 1.0);
    double lp = std::log(std::sqrt(kPi) / al) - (zt.imag() * zt.imag() + wt.imag() * wt.imag()) / (2.0 * al2);
    return (I * ScaledComplex::from_exp(lp)).value();
}

double bender_tilde_line(double c, double x, double y) {
    double al = c * std::sqrt(2.0);
    return al * std::sqrt(kPi) * bender_tilde_K(c, x, y).real();
}

double erfc_R(cplx z) { return 0.5 * std::erfc(std::sqrt(2.0) * z.real()); }

double alue_edge_R(double c, double nu, cplx z) { return std::max(0.0, alue_edge_K(c, nu, z, z).real()); }

cplx alue_edge_K(double c, double nu, cplx z, cplx w) {
    check_c(c);
    check_nu(nu);
    require(!on_cut(z) && !on_cut(w), "alue edge: argument on (-inf, 0]");
    double rz = std::abs(z), rw = std::abs(w);
    double kk = std::sqrt(bessel_k_scaled(std::fabs(nu), rz) * bessel_k_scaled(std::fabs(nu), rw));
    cplx ph = std::exp(0.5 * (z + std::conj(w)) - 0.5 * (rz + rw));
    return 0.5 * kk * ph * edge_integral(c, nu, std::sqrt(z), std::sqrt(w));
}

double planar_bessel_R(double nu, cplx z) {
    check_nu(nu);
    double r = std::abs(z);
    if (r == 0.0) return nu > 0.0 ? 0.25 / nu : std::numeric_limits<double>::infinity();
    return 0.5 * bessel_k_scaled(std::fabs(nu), r) * bessel_i_scaled(nu, r);
}

cplx planar_bessel_K(double nu, cplx z, cplx w) {
    check_nu(nu);
    if (z == w) return planar_bessel_R(nu, z);
    double rz = std::abs(z), rw = std::abs(w);
    require(rz > 0.0 && rw > 0.0, "planar bessel kernel: off-diagonal at the origin");
    double kk = std::sqrt(bessel_k_scaled(std::fabs(nu), rz) * bessel_k_scaled(std::fabs(nu), rw));
    return 0.5 * kk * std::exp(-0.5 * (rz + rw)) * bessel_i_complex(nu, std::sqrt(z) * std::conj(std::sqrt(w)));
}

double bessel_K_line(double nu, double x, double y) {
    check_nu(nu);
    require(x > 0.0 && y > 0.0, "bessel line kernel: x, y must be positive");
    if (std::fabs(x - y) < 1e-7 * std::max(x, y)) return bessel_diag(nu, std::sqrt(0.5 * (x + y)));
    double sx = std::sqrt(x), sy = std::sqrt(y);
    double jx = jv(nu, sx), jy = jv(nu, sy);
    double dx = nu / sx * jx - jv(nu + 1.0, sx), dy = nu / sy * jy - jv(nu + 1.0, sy);
    return (jx * sy * dy - sx * dx * jy) / (2.0 * (x - y));
}

double bessel_K_line_integral(double nu, double x, double y) {
    check_nu(nu);
    require(x > 0.0 && y > 0.0, "bessel line kernel: x, y must be positive");
    const GaussRule& g = gauss_legendre(kOrder);
    double sx = std::sqrt(x), sy = std::sqrt(y);
    auto f = [&](double t) { return t * jv(nu, t * sx) * jv(nu, t * sy); };
    double eps = std::pow(4.0, -12);
    double total = std::pow(0.5, 2.0 * nu) * std::pow(sx * sy, nu) / std::pow(gamma_fn(nu + 1.0), 2) *
                   std::pow(eps, 2.0 + 2.0 * nu) / (2.0 + 2.0 * nu);
    double a = eps;
    for (int k = 11; k >= 0; --k) {
        double b = std::pow(4.0, -k);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a), acc = 0.0;
        for (int i = 0; i < kOrder; ++i) acc += g.w[i] * f(mid + half * g.x[i]);
        total += acc * half;
        a = b;
    }
    return 0.5 * total;
}

double alue_edge_tilde_R0(double nu, double x) {
    check_nu(nu);
    require(x > 0.0, "bessel line density: x must be positive");
    return kPi * bessel_diag(nu, std::sqrt(x));
}

double chiral_edge_R(double c, double nu, int d, cplx z) {
    require(d >= 1, "chiral edge: d must be at least 1");
    check_c(c);
    check_nu(nu);
    if (z == 0.0) {
        if (d == 1) throw DomainError("chiral edge: z on (-inf, 0]");
        return 2 * d - 2 + 2 * d * std::min(nu, 0.0) > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    double r = std::abs(z);
    return d * std::pow(r, 2 * d - 2) * alue_edge_R(c, nu, power_d(z, d));
}

double chiral_edge_R_infinity(double nu, int d, cplx z) {
    require(d >= 1, "chiral edge: d must be at least 1");
    check_nu(nu);
    double r = std::abs(z);
    if (r == 0.0) {
        if (d == 1) return planar_bessel_R(nu, 0.0);
        return 2 * d - 2 + 2 * d * std::min(nu, 0.0) > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return d * std::pow(r, 2 * d - 2) * planar_bessel_R(nu, std::pow(r, d));
}

double chiral_edge_tilde_R0(double nu, int d, cplx z) {
    require(d >= 1, "chiral edge: d must be at least 1");
    check_nu(nu);
    double x = std::abs(z);
    if (x == 0.0) return 0.0;
    double k = d * std::arg(z) / (2.0 * kPi);
    if (std::fabs(k - std::round(k)) > 1e-12 * d) return 0.0;
    return kPi * d * std::pow(x, d - 1) * bessel_diag(nu, std::pow(x, 0.5 * d));
}

double chiral_d2_closed_form(double nu, cplx z) {
    double r2 = std::norm(z);
    if (nu == 0.5) return 0.5 * (1.0 - std::exp(-2.0 * r2));
    if (nu == -0.5) return 0.5 * (1.0 + std::exp(-2.0 * r2));
    throw DomainError("chiral_d2_closed_form: nu must be +-1/2");
}

cplx induced_K1(double c, cplx z, cplx w) {
    cplx k00 = fks_K(c, 0.0, 0.0);
    return fks_K(c, z, w) - fks_K(c, z, 0.0) * fks_K(c, 0.0, w) / k00;
}

double induced_R1(double c, cplx z) { return std::max(0.0, induced_K1(c, z, z).real()); }

cplx ml_kernel(double nu, cplx z, cplx w) {
    require(nu > 0.0 && std::isfinite(nu), "ml kernel: nu must be positive");
    // |K| <= poly(|z w|) e^{-(|z|^2 + |w|^2)/2}; the product form overflows first
    if (std::norm(z - w) > 1400.0) return 0.0;
    return ginibre_K(z, w) * gamma_p(nu, z * std::conj(w)).value;
}

double ml_R(double nu, cplx z) {
    require(nu > 0.0 && std::isfinite(nu), "ml kernel: nu must be positive");
    return gamma_p(nu, std::norm(z)).value.real();
}

double gen_sine_K(int nu, double x, double y) {
    require(nu >= 0, "generalized sine kernel: nu must be a nonnegative integer");
    require(x * y > 0.0, "generalized sine kernel: x y must be positive");
    if (x < 0.0) return gen_sine_K(nu, -x, -y);
    double p = nu + 0.5, m = nu - 0.5;
    if (std::fabs(x - y) < 1e-7 * std::max(x, y)) {
        double t = kPi * 0.5 * (x + y);
        double jp = jv(p, t), jm = jv(m, t);
        double dp = jm - p / t * jp;   // J'_p = J_{p-1} - (p/t) J_p
        double dm = m / t * jm - jp;   // J'_m = (m/t) J_m - J_{m+1}
        return 0.5 * kPi * 0.5 * (x + y) * kPi * (dp * jm - jp * dm);
    }
    double px = kPi * x, py = kPi * y;
    return 0.5 * kPi * std::sqrt(x * y) / (x - y) * (jv(p, px) * jv(m, py) - jv(p, py) * jv(m, px));
}

double gen_sine_K1_explicit(double x, double y) {
    require(x != 0.0 && y != 0.0, "gen_sine_K1_explicit: x, y must be nonzero");
    return sine_K(x, y) - std::sin(kPi * x) * std::sin(kPi * y) / (kPi * kPi * x * y);
}

double hardedge_R(double a, cplx z) {
    check_a(a);
    double y = z.imag();
    if (std::fabs(y) >= a) return 0.0;
    const HardNodes& n = hard_nodes(a, std::max(4, static_cast<int>(std::ceil(4.0 * a))));
    double s = 0.0;
    for (std::size_t i = 0; i < n.t.size(); ++i) {
        double u = 2.0 * y - n.t[i];
        s += n.w[i] * std::exp(-0.5 * u * u);
    }
    return s / kSqrt2Pi;
}

cplx hardedge_K(double a, cplx z, cplx w) {
    check_a(a);
    if (std::fabs(z.imag()) >= a || std::fabs(w.imag()) >= a) return 0.0;
    double yz = z.imag(), yw = w.imag(), Y = yz + yw, X = z.real() - w.real();
    int panels = std::max(4, static_cast<int>(std::ceil(4.0 * a))) + static_cast<int>(std::ceil(2.0 * a * std::fabs(X) / kPi));
    const HardNodes& n = hard_nodes(a, panels);
    cplx s = 0.0;
    for (std::size_t i = 0; i < n.t.size(); ++i) {
        double t = n.t[i];
        s += n.w[i] * std::exp(cplx(-0.5 * t * t + Y * t - yz * yz - yw * yw, -X * t));
    }
    return s * std::exp(cplx(0.0, z.real() * yz - w.real() * yw)) / kSqrt2Pi;
}

std::string limit_kind_name(LimitKind k) {
    switch (k) {
        case LimitKind::fks_bulk: return "fks_bulk";
        case LimitKind::sine: return "sine";
        case LimitKind::ginibre: return "ginibre";
        case LimitKind::bender_edge: return "bender_edge";
        case LimitKind::airy: return "airy";
        case LimitKind::alue_edge: return "alue_edge";
        case LimitKind::planar_bessel: return "planar_bessel";
        case LimitKind::bessel_line: return "bessel_line";
        case LimitKind::chiral_edge: return "chiral_edge";
        case LimitKind::induced_bulk: return "induced_bulk";
        case LimitKind::ml_insertion: return "ml_insertion";
        case LimitKind::hardedge_bulk: return "hardedge_bulk";
    }
    return "unknown";
}

LimitKind parse_limit_kind(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(LimitKind::hardedge_bulk); ++i) {
        auto k = static_cast<LimitKind>(i);
        if (limit_kind_name(k) == s) return k;
    }
    throw DomainError("unknown limit kind: " + s);
}

void LimitFamily::validate() const {
    switch (kind) {
        case LimitKind::fks_bulk:
        case LimitKind::hardedge_bulk: check_a(a); break;
        case LimitKind::bender_edge: check_bender(c); break;
        case LimitKind::alue_edge: check_c(c); check_nu(nu); break;
        case LimitKind::planar_bessel:
        case LimitKind::bessel_line: check_nu(nu); break;
        case LimitKind::chiral_edge:
            check_c(c);
            check_nu(nu);
            require(d >= 1, "chiral edge: d must be at least 1");
            break;
        case LimitKind::induced_bulk: check_c(c); break;
        case LimitKind::ml_insertion: require(nu > 0.0 && std::isfinite(nu), "ml kernel: nu must be positive"); break;
        case LimitKind::sine:
        case LimitKind::ginibre:
        case LimitKind::airy: break;
    }
}

double limit_R(const LimitFamily& f, cplx z) {
    f.validate();
    switch (f.kind) {
        case LimitKind::fks_bulk: return fks_R(f.a, z);
        case LimitKind::sine: return 1.0;
        case LimitKind::ginibre: return 1.0;
        case LimitKind::bender_edge: return bender_R(f.c, z);
        case LimitKind::airy: return airy_K(z.real(), z.real());
        case LimitKind::alue_edge: return alue_edge_R(f.c, f.nu, z);
        case LimitKind::planar_bessel: return planar_bessel_R(f.nu, z);
        case LimitKind::bessel_line: return bessel_K_line(f.nu, z.real(), z.real());
        case LimitKind::chiral_edge: return chiral_edge_R(f.c, f.nu, f.d, z);
        case LimitKind::induced_bulk: return induced_R1(f.c, z);
        case LimitKind::ml_insertion: return ml_R(f.nu, z);
        case LimitKind::hardedge_bulk: return hardedge_R(f.a, z);
    }
    throw DomainError("limit_R: unknown kind");
}

LimitKernel limit_kernel(const LimitFamily& f) {
    f.validate();
    LimitKernel k;
    k.name = limit_kind_name(f.kind);
    double a = f.a, c = f.c, nu = f.nu;
    int d = f.d;
    switch (f.kind) {
        case LimitKind::sine:
        case LimitKind::airy:
        case LimitKind::bessel_line: throw DomainError("limit_kernel: " + k.name + " is a line kernel");
        case LimitKind::ginibre:
            k.K = ginibre_K;
            k.R = [](cplx) { return 1.0; };
            k.x_invariant = true;
            break;
        case LimitKind::fks_bulk:
            k.K = [a](cplx z, cplx w) { return fks_K(a, z, w); };
            k.R = [a](cplx z) { return fks_R(a, z); };
            k.x_invariant = true;
            break;
        case LimitKind::bender_edge:
            k.K = [c](cplx z, cplx w) { return bender_K(c, z, w); };
            k.R = [c](cplx z) { return bender_R(c, z); };
            break;
        case LimitKind::alue_edge:
            k.K = [c, nu](cplx z, cplx w) { return alue_edge_K(c, nu, z, w); };
            k.R = [c, nu](cplx z) { return alue_edge_R(c, nu, z); };
            break;
        case LimitKind::planar_bessel:
            k.K = [nu](cplx z, cplx w) { return planar_bessel_K(nu, z, w); };
            k.R = [nu](cplx z) { return planar_bessel_R(nu, z); };
            break;
        case LimitKind::chiral_edge:
            k.K = [c, nu, d](cplx z, cplx w) {
                double s = d * std::pow(std::abs(z) * std::abs(w), d - 1);
                return s * alue_edge_K(c, nu, power_d(z, d), power_d(w, d));
            };
            k.R = [c, nu, d](cplx z) { return chiral_edge_R(c, nu, d, z); };
            break;
        case LimitKind::induced_bulk:
            k.K = [c](cplx z, cplx w) { return induced_K1(c, z, w); };
            k.R = [c](cplx z) { return induced_R1(c, z); };
            break;
        case LimitKind::ml_insertion:
            k.K = [nu](cplx z, cplx w) { return ml_kernel(nu, z, w); };
            k.R = [nu](cplx z) { return ml_R(nu, z); };
            break;
        case LimitKind::hardedge_bulk:
            k.K = [a](cplx z, cplx w) { return hardedge_K(a, z, w); };
            k.R = [a](cplx z) { return hardedge_R(a, z); };
            k.x_invariant = true;
            k.strip = a;
            break;
    }
    return k;
}

}  // namespace bandgas
