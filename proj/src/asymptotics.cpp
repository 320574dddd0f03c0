#include "bandgas/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "bandgas/errors.hpp"
#include "bandgas/finiten.hpp"
#include "bandgas/parallel.hpp"
#include "bandgas/specfun.hpp"

namespace bandgas {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI(0.0, 1.0);

// keeps the pair (a, b) between 2^-200 and 2^200 by shifting a common exponent
void rebalance(cplx& a, cplx& b, long& e) {
    double m = std::max(std::abs(a), std::abs(b));
    if (m > 0x1.0p200) {
        a = cplx(std::ldexp(a.real(), -200), std::ldexp(a.imag(), -200));
        b = cplx(std::ldexp(b.real(), -200), std::ldexp(b.imag(), -200));
        e += 200;
    } else if (m > 0.0 && m < 0x1.0p-200) {
        a = cplx(std::ldexp(a.real(), 200), std::ldexp(a.imag(), 200));
        b = cplx(std::ldexp(b.real(), 200), std::ldexp(b.imag(), 200));
        e -= 200;
    }
}

ScaledComplex scos(cplx w) { return (ScaledComplex::from_exp(kI * w) + ScaledComplex::from_exp(-kI * w)) * 0.5; }
ScaledComplex ssin(cplx w) {
    return (ScaledComplex::from_exp(kI * w) - ScaledComplex::from_exp(-kI * w)) * cplx(0.0, -0.5);
}

AsymptoticCheck finish(int n, ScaledComplex exact, ScaledComplex asym, std::string warning) {
    AsymptoticCheck c;
    c.n = n;
    c.exact = exact;
    c.asymptotic = asym;
    ScaledComplex diff = exact - asym;
    double den = exact.is_zero() ? std::log(1e-300) : exact.log_abs();
    c.rel_error = diff.is_zero() ? 0.0 : std::exp(diff.log_abs() - den);
    c.warning = std::move(warning);
    return c;
}

void require_n(int n, const char* what) {
    if (n < 1) throw DomainError(std::string(what) + ": n must be >= 1");
}

bool in_bulk_box(cplx z, double lo, double hi) { return z.real() > lo && z.real() < hi && std::fabs(z.imag()) <= 0.1; }

double log_cosh(double x) {
    x = std::fabs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
}

FitDominate fit_dominate(const std::function<double(int)>& stat, int fit_N, const std::vector<int>& check_N) {
    if (check_N.empty()) throw DomainError("fit-then-dominate: no check sizes");
    FitDominate f;
    f.fit_N = fit_N;
    f.margin = kFitMargin;
    f.check_N = check_N;
    std::vector<int> all{fit_N};
    all.insert(all.end(), check_N.begin(), check_N.end());
    std::vector<double> s(all.size());
    parallel_for(all.size(), [&](std::size_t i) { s[i] = stat(all[i]); });
    f.fitted_constant = f.margin * s[0];
    f.statistic.assign(s.begin() + 1, s.end());
    f.dominated = std::all_of(f.statistic.begin(), f.statistic.end(),
                              [&](double v) { return std::isfinite(v) && v <= f.fitted_constant; });
    return f;
}

}  // namespace

ScaledComplex hermite_scaled(int n, cplx x) {
    if (n < 0) throw DomainError("hermite_scaled: n < 0");
    if (n == 0) return ScaledComplex(1.0);
    cplx a = 1.0, b = 2.0 * x;
    long e = 0;
    for (int k = 1; k < n; ++k) {
        cplx c = 2.0 * x * b - 2.0 * static_cast<double>(k) * a;
        a = b;
        b = c;
        rebalance(a, b, e);
    }
    return ScaledComplex(b, e);
}

ScaledComplex laguerre_scaled(int n, double alpha, cplx x) {
    if (n < 0) throw DomainError("laguerre_scaled: n < 0");
    if (n == 0) return ScaledComplex(1.0);
    cplx a = 1.0, b = 1.0 + alpha - x;
    long e = 0;
    for (int k = 1; k < n; ++k) {
        cplx c = ((2.0 * k + 1.0 + alpha - x) * b - (k + alpha) * a) / (k + 1.0);
        a = b;
        b = c;
        rebalance(a, b, e);
    }
    return ScaledComplex(b, e);
}

AsymptoticCheck hermite_bulk_check(int n, cplx z) {
    require_n(n, "hermite_bulk_check");
    ScaledComplex exact = hermite_scaled(n, std::sqrt(0.5 * n) * z);
    cplx s = std::sqrt(4.0 - z * z);
    cplx phase = (n + 0.5) * std::acos(0.5 * z) - 0.25 * n * z * s - 0.25 * kPi;
    cplx logmag = 0.5 * n * (std::log(2.0 * n) - 1.0) + 0.25 * n * z * z - 0.25 * std::log(4.0 - z * z);
    ScaledComplex asym = ScaledComplex::from_exp(logmag) * scos(phase) * 2.0;
    return finish(n, exact, asym, in_bulk_box(z, 0.1, 1.9) ? "" : "z is outside the bulk neighbourhood of (0, 2)");
}

AsymptoticCheck hermite_mehler_heine_check(int n, cplx z, bool odd) {
    require_n(n, "hermite_mehler_heine_check");
    cplx x = z / (2.0 * std::sqrt(static_cast<double>(n)));
    double lognorm = -n * std::log(4.0) - lgamma_fn(n + 1.0) + (odd ? 0.0 : 0.5 * std::log(static_cast<double>(n)));
    ScaledComplex exact = hermite_scaled(odd ? 2 * n + 1 : 2 * n, x) * ScaledComplex::from_exp(lognorm) *
                          cplx(n % 2 ? -1.0 : 1.0);
    cplx lim = odd ? 2.0 * std::sin(z) / std::sqrt(kPi) : std::cos(z) / std::sqrt(kPi);
    return finish(n, exact, ScaledComplex(lim), std::abs(z) <= 10.0 ? "" : "z is far from the origin");
}

AsymptoticCheck hermite_outside_check(int n, cplx z) {
    require_n(n, "hermite_outside_check");
    ScaledComplex exact = hermite_scaled(n, std::sqrt(0.5 * n) * z);
    cplx s = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);  // ~ z at infinity
    cplx w = z + s;
    cplx logmag = 0.5 * n * (std::log(0.5 * n) - 1.0) + static_cast<double>(n) * std::log(w) +
                  0.5 * std::log(w / (2.0 * s)) + 0.25 * n * z * (z - s);
    ScaledComplex asym = ScaledComplex::from_exp(logmag);
    double dist = std::abs(z - std::clamp(z.real(), -2.0, 2.0));
    return finish(n, exact, asym, dist >= 0.2 ? "" : "z is close to [-2, 2]");
}

AsymptoticCheck laguerre_pr_check(int n, int m, double nu, cplx X) {
    require_n(n, "laguerre_pr_check");
    if (n + m < 0) throw DomainError("laguerre_pr_check: n + m < 0");
    cplx x = 4.0 * n * X;
    ScaledComplex exact = laguerre_scaled(n + m, nu, x);
    cplx ac = std::acos(std::sqrt(X));
    cplx g_arg = 2.0 * n * (std::sqrt(X * (1.0 - X)) - ac) - (2.0 * m + nu + 1.0) * ac + 0.75 * kPi;
    cplx logmag = -0.5 * nu * std::log(x) + 0.5 * x - 0.5 * std::log(2.0 * kPi * std::sqrt(X * (1.0 - X))) +
                  (0.5 * nu - 0.5) * std::log(static_cast<double>(n));
    ScaledComplex asym = ScaledComplex::from_exp(logmag) * ssin(g_arg) * cplx((n + m) % 2 ? -1.0 : 1.0);
    return finish(n, exact, asym, in_bulk_box(X, 0.05, 0.95) ? "" : "X is outside the bulk (0, 1)");
}

AsymptoticCheck laguerre_vanlessen_check(int n, double alpha, cplx z) {
    require_n(n, "laguerre_vanlessen_check");
    if (!(alpha > -1.0)) throw DomainError("laguerre_vanlessen_check: alpha must exceed -1");
    cplx x = 4.0 * n * z;
    ScaledComplex exact = laguerre_scaled(n, alpha, x);
    cplx r = std::sqrt(z * (1.0 - z)), ac = std::acos(std::sqrt(z));
    cplx phase = 2.0 * n * r - (2.0 * n + alpha + 1.0) * ac + 0.25 * kPi;
    cplx logmag = -0.5 * alpha * std::log(x) + 2.0 * n * z - 0.5 * std::log(2.0 * kPi * r) -
                  0.5 * std::log(static_cast<double>(n)) + 0.5 * (lgamma_fn(n + alpha + 1.0) - lgamma_fn(n + 1.0));
    ScaledComplex asym = ScaledComplex::from_exp(logmag) * scos(phase);
    return finish(n, exact, asym, in_bulk_box(z, 0.05, 0.95) ? "" : "z is outside the bulk box");
}

AsymptoticCheck laguerre_bessel_limit_check(int j, double nu, cplx z) {
    require_n(j, "laguerre_bessel_limit_check");
    if (z.imag() == 0.0 && z.real() < 0.0) throw DomainError("laguerre_bessel_limit_check: z on the negative axis");
    ScaledComplex exact =
        laguerre_scaled(j, nu, z / static_cast<double>(j)) * ScaledComplex::from_exp(-nu * std::log(static_cast<double>(j)));
    cplx lim = std::exp(-0.5 * nu * std::log(z)) * bessel_j(nu, 2.0 * std::sqrt(z)).value;
    return finish(j, exact, ScaledComplex(lim), "");
}

RatioCheck laguerre_shift_ratio(int n, double nu, cplx X) {
    require_n(n, "laguerre_shift_ratio");
    cplx x = 4.0 * n * X;
    RatioCheck r;
    r.exact = (laguerre_scaled(n - 1, nu, x) / laguerre_scaled(n, nu, x)).value();
    cplx ac = std::acos(std::sqrt(X));
    cplx base = 2.0 * n * (std::sqrt(X * (1.0 - X)) - ac) + 0.75 * kPi;
    cplx gm1 = std::sin(base - (nu - 1.0) * ac), g0 = std::sin(base - (nu + 1.0) * ac);
    r.predicted = -gm1 / g0;
    r.rel_error = std::abs(r.exact - r.predicted) / std::max(std::abs(r.exact), 1e-300);
    return r;
}

double herman_normalized(int N, double p, cplx z) {
    require_n(N, "herman_normalized");
    double sq = std::sqrt(static_cast<double>(N));
    ScaledComplex h = hermite_scaled(N, std::sqrt(0.5 * N) * p + z / sq);
    double lognorm = -0.25 * N * p * p - 0.5 * N * std::log(2.0) - 0.5 * lgamma_fn(N + 1.0) + 0.25 * std::log(N);
    return std::exp(h.log_abs() + lognorm);
}

double f1p_ratio(int N, double p, double c, double y) {
    require_n(N, "f1p_ratio");
    EnsembleSpec spec;
    spec.N = N;
    spec.c = c;
    double lhs = std::fabs(agu_dR_dxi(spec, cplx(p, y / N))) / (static_cast<double>(N) * N);
    if (lhs == 0.0) return 0.0;
    double k = 0.5 * std::sqrt(4.0 - p * p);
    double logb = -y * y / (2.0 * c * c) + std::max(0.0, N * std::log(y * y / N)) + 2.0 * log_cosh(k * y);
    return std::exp(std::log(lhs) - logb);
}

double baal_normalized(int N, int nu, double p, double c, cplx z) {
    require_n(N, "baal_normalized");
    if (nu < 0) throw DomainError("baal_normalized: nu must be a nonnegative integer");
    double a = N / (c * c), b = a - 1.0;
    if (!(b > 0.0)) throw DomainError("baal_normalized: need N > c^2");
    double kappa = (a * a - b * b) / (2.0 * b);
    cplx zeta = p + 2.0 * c * std::sqrt(p) * z / static_cast<double>(N);
    ScaledComplex l1 = laguerre_scaled(N + nu - 1, 1.0 - nu, kappa * N * zeta);
    ScaledComplex l2 = laguerre_scaled(N - 1, nu + 1.0, kappa * N * std::conj(zeta));
    return std::exp(std::log(static_cast<double>(N)) + l1.log_abs() + l2.log_abs() - kappa * N * zeta.real());
}

double herman_sup(int N, double p, double M) {
    double s = herman_normalized(N, p, 0.0);
    for (int i = 1; i <= 8; ++i)
        for (int k = 0; k < 32; ++k) s = std::max(s, herman_normalized(N, p, std::polar(M * i / 8.0, 2.0 * kPi * k / 32)));
    return s;
}

double f1p_sup(int N, double p, double c, double ymax, int ny) {
    if (ny < 2) throw DomainError("f1p_sup: need at least two grid points");
    double s = 0.0;
    for (int i = 0; i < ny; ++i) s = std::max(s, f1p_ratio(N, p, c, -ymax + 2.0 * ymax * i / (ny - 1)));
    return s;
}

FitDominate hermite_uniform_bound_check(double p, double M, int fit_N, std::vector<int> check_N) {
    return fit_dominate([&](int N) { return herman_sup(N, p, M); }, fit_N, check_N);
}

FitDominate hermite_edge_bound_check(double p, double c, double ymax, int fit_N, std::vector<int> check_N) {
    return fit_dominate([&](int N) { return f1p_sup(N, p, c, ymax); }, fit_N, check_N);
}

FitDominate baal_product_check(int nu, double p, double c, cplx z, int fit_N, std::vector<int> check_N) {
    return fit_dominate([&](int N) { return baal_normalized(N, nu, p, c, z); }, fit_N, check_N);
}

std::string asymptotic_formula_name(AsymptoticFormula f) {
    switch (f) {
        case AsymptoticFormula::hermite_bulk: return "hermite_bulk";
        case AsymptoticFormula::mehler_heine_even: return "mehler_heine_even";
        case AsymptoticFormula::mehler_heine_odd: return "mehler_heine_odd";
        case AsymptoticFormula::hermite_outside: return "hermite_outside";
        case AsymptoticFormula::laguerre_pr: return "laguerre_pr";
        case AsymptoticFormula::laguerre_vanlessen: return "laguerre_vanlessen";
        case AsymptoticFormula::laguerre_bessel: return "laguerre_bessel";
    }
    return "hermite_bulk";
}

AsymptoticFormula parse_asymptotic_formula(const std::string& s) {
    for (auto f : {AsymptoticFormula::hermite_bulk, AsymptoticFormula::mehler_heine_even,
                   AsymptoticFormula::mehler_heine_odd, AsymptoticFormula::hermite_outside,
                   AsymptoticFormula::laguerre_pr, AsymptoticFormula::laguerre_vanlessen,
                   AsymptoticFormula::laguerre_bessel})
        if (asymptotic_formula_name(f) == s) return f;
    throw DomainError("unknown asymptotic formula: " + s);
}

AsymptoticCheck run_asymptotic_check(const AsymptoticRequest& req, int n) {
    switch (req.formula) {
        case AsymptoticFormula::hermite_bulk: return hermite_bulk_check(n, req.z);
        case AsymptoticFormula::mehler_heine_even: return hermite_mehler_heine_check(n, req.z, false);
        case AsymptoticFormula::mehler_heine_odd: return hermite_mehler_heine_check(n, req.z, true);
        case AsymptoticFormula::hermite_outside: return hermite_outside_check(n, req.z);
        case AsymptoticFormula::laguerre_pr: return laguerre_pr_check(n, req.m, req.nu, req.z);
        case AsymptoticFormula::laguerre_vanlessen: return laguerre_vanlessen_check(n, req.nu, req.z);
        case AsymptoticFormula::laguerre_bessel: return laguerre_bessel_limit_check(n, req.nu, req.z);
    }
    throw DomainError("unknown asymptotic formula");
}

std::vector<AsymptoticCheck> asymptotic_sweep(const AsymptoticRequest& req, const std::vector<int>& ns) {
    std::vector<AsymptoticCheck> out(ns.size());
    parallel_for(ns.size(), [&](std::size_t i) { out[i] = run_asymptotic_check(req, ns[i]); });
    return out;
}

bool non_increasing(const std::vector<AsymptoticCheck>& sweep, double slack) {
    for (std::size_t i = 1; i < sweep.size(); ++i)
        if (sweep[i].rel_error > (1.0 + slack) * sweep[i - 1].rel_error) return false;
    return true;
}

}  // namespace bandgas
