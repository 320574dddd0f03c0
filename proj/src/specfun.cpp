#include "bandgas/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bandgas/errors.hpp"

namespace bandgas {

namespace {

using ld = long double;
using lcplx = std::complex<long double>;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Lanczos g=7, n=9
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Taylor coefficients of 1/Gamma(1+x) about 0
constexpr double kRecipGammaTaylor[] = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

// gam1 = (1/G(1-m) - 1/G(1+m))/(2m), gam2 = (1/G(1-m) + 1/G(1+m))/2 for |m| <= 1/2
void temme_gammas(double m, double& gam1, double& gam2, double& gampl, double& gammi) {
    constexpr int n = sizeof(kRecipGammaTaylor) / sizeof(double);
    double even = 0.0, odd = 0.0;
    double m2 = m * m;
    for (int k = (n - 1) / 2 * 2; k >= 0; k -= 2) even = even * m2 + kRecipGammaTaylor[k];
    for (int k = (n % 2 == 0 ? n - 1 : n - 2); k >= 1; k -= 2) odd = odd * m2 + kRecipGammaTaylor[k];
    // 1/G(1+m) = even + m*odd
    gampl = even + m * odd;
    gammi = even - m * odd;
    gam1 = -odd;
    gam2 = even;
}

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("gamma_fn: pole");
    if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    if (x > 171.7) return kInf;
    x -= 1.0;
    double a = kLanczos[0];
    double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    double half = std::pow(t, 0.5 * (x + 0.5));
    return std::sqrt(2.0 * kPi) * half * std::exp(-t) * half * a;
}

double lgamma_fn(double x) {
    if (x <= 0.0) throw DomainError("lgamma_fn: x must be positive");
    if (x < 0.5) return std::log(kPi / std::fabs(std::sin(kPi * x))) - lgamma_fn(1.0 - x);
    x -= 1.0;
    double a = kLanczos[0];
    double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 171.0) return std::exp(-lgamma_fn(x));
    return 1.0 / gamma_fn(x);
}

std::vector<cplx> hermite_seq(cplx z, int n_max) {
    if (n_max < 0) throw DomainError("hermite_seq: n_max < 0");
    std::vector<cplx> h(n_max + 1);
    h[0] = 1.0;
    if (n_max >= 1) h[1] = 2.0 * z;
    for (int j = 1; j < n_max; ++j) h[j + 1] = 2.0 * z * h[j] - 2.0 * j * h[j - 1];
    return h;
}

std::vector<cplx> laguerre_seq(cplx x, double nu, int n_max) {
    if (n_max < 0) throw DomainError("laguerre_seq: n_max < 0");
    std::vector<cplx> l(n_max + 1);
    l[0] = 1.0;
    if (n_max >= 1) l[1] = nu + 1.0 - x;
    for (int j = 1; j < n_max; ++j)
        l[j + 1] = ((2.0 * j + nu + 1.0 - x) * l[j] - (j + nu) * l[j - 1]) / (j + 1.0);
    return l;
}

// ---------------------------------------------------------------- Bessel J

SpecialFunctionResult bessel_j_series(double nu, cplx z) {
    lcplx zz(z.real(), z.imag());
    lcplx q = -zz * zz / ld(4);
    lcplx term = ld(rgamma(nu + 1.0));
    lcplx sum = term;
    ld maxabs = std::abs(term);
    for (int k = 1; k < 2000; ++k) {
        term *= q / (ld(k) * (ld(nu) + ld(k)));
        sum += term;
        ld at = std::abs(term);
        maxabs = std::max(maxabs, at);
        if (at <= ld(1e-21) * std::abs(sum) && ld(k) > std::abs(zz)) break;
    }
    cplx pref = 1.0;
    if (nu != 0.0) pref = (z == cplx(0.0)) ? cplx(0.0) : std::pow(z / 2.0, nu);
    cplx s(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    double est = 1e-16;
    if (std::abs(sum) > 0) est += 1e-19 * static_cast<double>(maxabs / std::abs(sum)) * 10.0;
    return {pref * s, est, Regime::series};
}

SpecialFunctionResult bessel_j_asymptotic(double nu, cplx z) {
    if (z.real() < 0.0) throw DomainError("bessel_j_asymptotic: needs Re z >= 0");
    double mu = 4.0 * nu * nu;
    cplx P = 1.0, Q = 0.0;
    cplx t = 1.0;
    double last = 1.0;
    double err = 0.0;
    for (int k = 1; k < 200; ++k) {
        cplx tn = t * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * z);
        double a = std::abs(tn);
        if (a == 0.0) {
            err = 0.0;
            break;
        }
        if (a > last && k > nu) {
            err = last;
            break;
        }
        t = tn;
        last = a;
        // sign pattern (-1)^{floor(k/2)}
        double sg = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            P += sg * t;
        else
            Q += sg * t;
        err = a;
        if (a < 1e-17) break;
    }
    cplx chi = z - (nu / 2.0 + 0.25) * kPi;
    cplx v = std::sqrt(2.0 / (kPi * z)) * (P * std::cos(chi) - Q * std::sin(chi));
    double scale = std::abs(std::sqrt(2.0 / (kPi * z))) * (std::abs(std::cos(chi)) + std::abs(std::sin(chi)));
    double est = 1e-16 + (std::abs(v) > 0 ? err * scale / std::abs(v) : err);
    return {v, est, Regime::asymptotic};
}

SpecialFunctionResult bessel_j(double nu, cplx z) {
    if (nu < -1.0 - 1e-15 && nu != std::floor(nu)) throw DomainError("bessel_j: nu < -1");
    if (nu < 0.0 && nu == std::floor(nu)) {
        int n = static_cast<int>(-nu);
        auto r = bessel_j(static_cast<double>(n), z);
        if (n % 2 == 1) r.value = -r.value;
        return r;
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("bessel_j: z not finite");
    if (std::abs(z) <= kBesselJRadius) return bessel_j_series(nu, z);
    if (z.real() >= 0.0) return bessel_j_asymptotic(nu, z);
    auto r = bessel_j_asymptotic(nu, -z);
    double sgn = z.imag() >= 0.0 ? 1.0 : -1.0;
    r.value *= std::exp(cplx(0.0, sgn * kPi * nu));
    return r;
}

cplx bessel_j_prime(double nu, cplx z) {
    if (nu == 0.0) return -bessel_j(1.0, z).value;
    return bessel_j(nu - 1.0, z).value - (nu / z) * bessel_j(nu, z).value;
}

cplx bessel_i_complex(double nu, cplx z) {
    if (z == cplx(0.0)) return nu == 0.0 ? 1.0 : 0.0;
    double ph = std::arg(z);
    if (ph <= kPi / 2.0)
        return std::exp(cplx(0.0, -nu * kPi / 2.0)) * bessel_j(nu, cplx(0.0, 1.0) * z).value;
    return std::exp(cplx(0.0, nu * kPi / 2.0)) * bessel_j(nu, cplx(0.0, -1.0) * z).value;
}

// ---------------------------------------------------------------- Bessel I, K (real)

namespace {

// sqrt(pi/2x) * sum a_k(mu)/x^k, i.e. K_mu(x) e^x
double k_asym_scaled(double mu, double x, double* err) {
    double m4 = 4.0 * mu * mu;
    double t = 1.0, sum = 1.0, last = 1.0;
    double e = 0.0;
    for (int k = 1; k < 200; ++k) {
        double tn = t * (m4 - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
        double a = std::fabs(tn);
        if (a == 0.0) {
            e = 0.0;
            break;
        }
        if (a > last) {
            e = last;
            break;
        }
        t = tn;
        last = a;
        sum += t;
        e = a;
        if (a < 1e-17 * std::fabs(sum)) break;
    }
    if (err) *err = e / std::fabs(sum);
    return std::sqrt(kPi / (2.0 * x)) * sum;
}

// log K_mu(x) and K_{mu+1}(x)/K_mu(x) for |mu| <= 1/2
void k_pair(double xmu, double x, double& log_kmu, double& k1_ratio) {
    constexpr double EPS = 1e-16;
    constexpr int MAXIT = 100000;
    double xi = 1.0 / x, xi2 = 2.0 * xi;
    double xmu2 = xmu * xmu;
    if (x > kBesselKSwitch) {
        double k0 = k_asym_scaled(xmu, x, nullptr);
        double k1 = k_asym_scaled(xmu + 1.0, x, nullptr);
        log_kmu = std::log(k0) - x;
        k1_ratio = k1 / k0;
        return;
    }
    if (x < 2.0) {
        double x2 = 0.5 * x;
        double pimu = kPi * xmu;
        double fact = (std::fabs(pimu) < EPS ? 1.0 : pimu / std::sin(pimu));
        double d = -std::log(x2);
        double e = xmu * d;
        double fact2 = (std::fabs(e) < EPS ? 1.0 : std::sinh(e) / e);
        double gam1, gam2, gampl, gammi;
        temme_gammas(xmu, gam1, gam2, gampl, gammi);
        double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gampl;
        double q = 0.5 / (e * gammi);
        double c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i <= MAXIT; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            c *= (d / i);
            p /= (i - xmu);
            q /= (i + xmu);
            double del = c * ff;
            sum += del;
            double del1 = c * (p - i * ff);
            sum1 += del1;
            if (std::fabs(del) < std::fabs(sum) * EPS) break;
        }
        if (i > MAXIT) throw NumericalError("bessel K: Temme series did not converge");
        log_kmu = std::log(sum);
        k1_ratio = sum1 * xi2 / sum;
        return;
    }
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double a1 = 0.25 - xmu2;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= MAXIT; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < EPS) break;
    }
    if (i > MAXIT) throw NumericalError("bessel K: continued fraction did not converge");
    h = a1 * h;
    log_kmu = 0.5 * std::log(kPi / (2.0 * x)) - x - std::log(s);
    k1_ratio = (xmu + x + 0.5 - h) * xi;
}

// log K_nu from K_mu by upward recurrence, nu = mu + nl
double k_upward(double xmu, int nl, double x, double log_kmu, double k1_ratio) {
    double kmu = 1.0, k1 = k1_ratio, base = log_kmu;
    double xi2 = 2.0 / x;
    for (int i = 1; i <= nl; ++i) {
        double kt = (xmu + i) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = kt;
        if (k1 > 1e250) {
            kmu *= 1e-250;
            k1 *= 1e-250;
            base += 250.0 * std::log(10.0);
        }
    }
    return base + std::log(kmu);
}

}  // namespace

double log_bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be positive");
    double xnu = std::fabs(nu);
    int nl = static_cast<int>(xnu + 0.5);
    double xmu = xnu - nl;
    double log_kmu, k1_ratio;
    k_pair(xmu, x, log_kmu, k1_ratio);
    return k_upward(xmu, nl, x, log_kmu, k1_ratio);
}

BesselIK bessel_ik_log(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_ik: x must be positive");
    constexpr double EPS = 1e-16;
    constexpr double FPMIN = 1e-300;
    double xnu = std::fabs(nu);
    int nl = static_cast<int>(xnu + 0.5);
    double xmu = xnu - nl;
    double xi = 1.0 / x, xi2 = 2.0 * xi;

    // CF1 for I'_nu / I_nu
    double h = xnu * xi;
    if (h < FPMIN) h = FPMIN;
    double b = xi2 * xnu, d = 0.0, c = h;
    int i = 1;
    const int maxit = 100000 + static_cast<int>(4 * x);
    for (; i <= maxit; ++i) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        double del = c * d;
        h = del * h;
        if (std::fabs(del - 1.0) < EPS) break;
    }
    if (i > maxit) throw NumericalError("bessel I: CF1 did not converge");

    // downward recurrence from nu to mu, rescaled
    double ril = 1.0, ripl = h, lscale = 0.0;
    double fact = xnu * xi;
    for (int l = nl; l >= 1; --l) {
        double rit = fact * ril + ripl;
        fact -= xi;
        ripl = fact * rit + ril;
        ril = rit;
        if (std::fabs(ril) > 1e250) {
            ril *= 1e-250;
            ripl *= 1e-250;
            lscale += 250.0 * std::log(10.0);
        }
    }
    double f = ripl / ril;

    double log_kmu, k1_ratio;
    k_pair(xmu, x, log_kmu, k1_ratio);
    double kp_ratio = xmu * xi - k1_ratio;  // K'_mu / K_mu
    double log_imu = -std::log(x) - log_kmu - std::log(f - kp_ratio);
    double log_inu = log_imu - std::log(ril) - lscale;
    double log_knu = k_upward(xmu, nl, x, log_kmu, k1_ratio);

    if (nu < 0.0 && xnu != std::floor(xnu)) {
        // I_{-v} = I_v + (2/pi) sin(v pi) K_v
        double w = (2.0 / kPi) * std::sin(xnu * kPi);
        if (w > 0.0) {
            double a1 = log_inu, a2 = std::log(w) + log_knu;
            double m = std::max(a1, a2);
            log_inu = m + std::log(std::exp(a1 - m) + std::exp(a2 - m));
        } else if (w < 0.0) {
            double a1 = log_inu, a2 = std::log(-w) + log_knu;
            log_inu = a1 + std::log1p(-std::exp(a2 - a1));
        }
    }
    return {log_inu, log_knu};
}

SpecialFunctionResult bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: pole at x = 0");
    Regime r = x > kBesselKSwitch ? Regime::asymptotic : (x < 2.0 ? Regime::series : Regime::continued_fraction);
    return {std::exp(log_bessel_k(nu, x)), 1e-14, r};
}

SpecialFunctionResult bessel_i(double nu, double x) {
    if (x < 0.0) throw DomainError("bessel_i: x must be nonnegative");
    if (x == 0.0) {
        if (nu == 0.0) return {1.0, 0.0, Regime::closed_form};
        if (nu > 0.0 || nu == std::floor(nu)) return {0.0, 0.0, Regime::closed_form};
        return {kInf, 0.0, Regime::closed_form};
    }
    return {std::exp(bessel_ik_log(nu, x).log_i), 1e-14, Regime::continued_fraction};
}

double bessel_k_scaled(double nu, double x) { return std::exp(log_bessel_k(nu, x) + x); }

double bessel_i_scaled(double nu, double x) {
    if (x == 0.0) return bessel_i(nu, 0.0).value.real();
    return std::exp(bessel_ik_log(nu, x).log_i - x);
}

double bessel_k_asymptotic(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k_asymptotic: x must be positive");
    return k_asym_scaled(nu, x, nullptr) * std::exp(-x);
}

// ---------------------------------------------------------------- Airy

namespace {

constexpr long double kAi0 = 0.355028053887817239260063186L;
constexpr long double kAip0 = 0.258819403792806798405183560L;  // -Ai'(0)

struct AiryPair {
    cplx ai, aip;
    double err;
};

AiryPair airy_series_pair(cplx z) {
    lcplx zz(z.real(), z.imag());
    lcplx z3 = zz * zz * zz;
    lcplx f = 1, g = zz, fp = 0, gp = 1;
    lcplx t = 1, s = zz, T = zz * zz / ld(2), S = 1;
    ld maxabs = std::max(kAi0, kAip0 * std::abs(zz));
    fp = T;
    for (int k = 0; k < 400; ++k) {
        t *= z3 / (ld(3 * k + 2) * ld(3 * k + 3));
        s *= z3 / (ld(3 * k + 3) * ld(3 * k + 4));
        S *= z3 / (ld(3 * k + 1) * ld(3 * k + 3));
        T *= z3 / (ld(3 * (k + 1)) * ld(3 * (k + 1) + 2));
        f += t;
        g += s;
        gp += S;
        fp += T;
        ld m = std::max(std::abs(t), std::abs(s));
        maxabs = std::max(maxabs, m);
        if (m < ld(1e-22) && std::abs(T) < ld(1e-22) && std::abs(S) < ld(1e-22)) break;
        if (m < ld(1e-22) * std::abs(f) && std::abs(S) < ld(1e-22) * std::abs(gp) && k > 3) break;
    }
    lcplx ai = kAi0 * f - kAip0 * g;
    lcplx aip = kAi0 * fp - kAip0 * gp;
    double err = 1e-17;
    if (std::abs(ai) > 0) err += 1e-19 * static_cast<double>(maxabs / std::abs(ai)) * 10.0;
    return {cplx(double(ai.real()), double(ai.imag())), cplx(double(aip.real()), double(aip.imag())), err};
}

// sector |arg z| <= 2pi/3: returns e^{-zeta} separately from the algebraic part
struct AiryAsym {
    cplx zeta;
    cplx ai_part, aip_part;  // Ai = e^{-zeta} ai_part, Ai' = e^{-zeta} aip_part
    double err;
};

AiryAsym airy_asym(cplx z) {
    cplx sq = std::sqrt(z);
    cplx zeta = (2.0 / 3.0) * z * sq;
    cplx q = std::sqrt(sq);  // z^{1/4}
    cplx su = 1.0, sv = 1.0;
    double u = 1.0;
    cplx zp = 1.0;
    double last = kInf, err = 0.0;
    for (int k = 1; k < 200; ++k) {
        u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
        zp *= -1.0 / zeta;
        cplx tu = u * zp;
        double a = std::abs(tu);
        if (a > last) {
            err = last;
            break;
        }
        double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
        su += tu;
        sv += v * zp;
        last = a;
        err = a;
        if (a < 1e-17) break;
    }
    double c = 1.0 / (2.0 * std::sqrt(kPi));
    return {zeta, c * su / q, -c * q * sv, err + 1e-16};
}

}  // namespace

SpecialFunctionResult airy_ai_series(cplx z) {
    auto p = airy_series_pair(z);
    return {p.ai, p.err, Regime::series};
}

SpecialFunctionResult airy_ai_asymptotic(cplx z) {
    auto a = airy_asym(z);
    return {std::exp(-a.zeta) * a.ai_part, a.err, Regime::asymptotic};
}

ScaledComplex airy_ai_scaled(cplx z) {
    if (std::abs(z) <= kAiryRadius) return ScaledComplex(airy_series_pair(z).ai);
    if (std::fabs(std::arg(z)) <= 2.0 * kPi / 3.0) {
        auto a = airy_asym(z);
        return ScaledComplex::from_exp(-a.zeta) * a.ai_part;
    }
    const cplx w = std::exp(cplx(0.0, 2.0 * kPi / 3.0));
    auto a1 = airy_asym(w * z);
    auto a2 = airy_asym(w * w * z);
    ScaledComplex t1 = ScaledComplex::from_exp(-a1.zeta) * (-w * a1.ai_part);
    ScaledComplex t2 = ScaledComplex::from_exp(-a2.zeta) * (-w * w * a2.ai_part);
    return t1 + t2;
}

SpecialFunctionResult airy_ai(cplx z) {
    if (std::abs(z) <= kAiryRadius) return airy_ai_series(z);
    if (std::fabs(std::arg(z)) <= 2.0 * kPi / 3.0) return airy_ai_asymptotic(z);
    const cplx w = std::exp(cplx(0.0, 2.0 * kPi / 3.0));
    auto a1 = airy_asym(w * z);
    auto a2 = airy_asym(w * w * z);
    cplx v = -w * std::exp(-a1.zeta) * a1.ai_part - w * w * std::exp(-a2.zeta) * a2.ai_part;
    return {v, std::max(a1.err, a2.err), Regime::connection};
}

SpecialFunctionResult airy_ai_prime(cplx z) {
    if (std::abs(z) <= kAiryRadius) {
        auto p = airy_series_pair(z);
        return {p.aip, p.err, Regime::series};
    }
    if (std::fabs(std::arg(z)) <= 2.0 * kPi / 3.0) {
        auto a = airy_asym(z);
        return {std::exp(-a.zeta) * a.aip_part, a.err, Regime::asymptotic};
    }
    const cplx w = std::exp(cplx(0.0, 2.0 * kPi / 3.0));
    auto a1 = airy_asym(w * z);
    auto a2 = airy_asym(w * w * z);
    // d/dz Ai(wz) = w Ai'(wz)
    cplx v = -w * w * std::exp(-a1.zeta) * a1.aip_part - w * std::exp(-a2.zeta) * a2.aip_part;
    return {v, std::max(a1.err, a2.err), Regime::connection};
}

// ---------------------------------------------------------------- error function

namespace {

const double kTwoOverSqrtPi = 2.0 / std::sqrt(kPi);

cplx erf_series_double(cplx z, double& err) {
    cplx z2 = z * z;
    cplx t = z, sum = z;
    double maxabs = std::abs(z);
    int nmax = 60 + static_cast<int>(3.0 * std::norm(z));
    for (int n = 1; n < nmax; ++n) {
        t *= -z2 / static_cast<double>(n);
        cplx term = t / (2.0 * n + 1.0);
        sum += term;
        double a = std::abs(term);
        maxabs = std::max(maxabs, a);
        if (a < 1e-17 * std::abs(sum) && n > std::norm(z)) break;
    }
    err = 1e-16 * (1.0 + maxabs / std::max(std::abs(sum), 1e-300));
    return kTwoOverSqrtPi * sum;
}

cplx erf_series_ld(cplx z, double& err) {
    lcplx zz(z.real(), z.imag());
    lcplx z2 = zz * zz;
    lcplx t = zz, sum = zz;
    ld maxabs = std::abs(zz);
    int nmax = 80 + static_cast<int>(3.0 * std::norm(z));
    for (int n = 1; n < nmax; ++n) {
        t *= -z2 / ld(n);
        lcplx term = t / ld(2 * n + 1);
        sum += term;
        ld a = std::abs(term);
        maxabs = std::max(maxabs, a);
        if (a < ld(1e-21) * std::abs(sum) && n > std::norm(z)) break;
    }
    err = 1e-16 + 1e-19 * static_cast<double>(maxabs / std::max(std::abs(sum), ld(1e-300)));
    lcplx r = ld(kTwoOverSqrtPi) * sum;
    return {double(r.real()), double(r.imag())};
}

// Laplace continued fraction for e^{z^2} erfc(z), converges for Re z > 0 (slowly near the imaginary axis)
cplx erfcx_cf(cplx z) {
    const double tiny = 1e-300;
    cplx f = z;
    cplx C = z, D = 0.0;
    for (int n = 1; n < 20000; ++n) {
        double a = 0.5 * n;
        D = z + a * D;
        C = z + a / C;
        if (D == cplx(0.0)) D = tiny;
        if (C == cplx(0.0)) C = tiny;
        D = 1.0 / D;
        cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / (std::sqrt(kPi) * f);
}

cplx erfc_cf(cplx z) { return std::exp(-z * z) * erfcx_cf(z); }

}  // namespace

SpecialFunctionResult cerf(cplx z) {
    double ar = std::fabs(z.real());
    double err = 0.0;
    if (ar <= 3.0) {
        if (ar <= 1.5) {
            cplx v = erf_series_double(z, err);
            return {v, err, Regime::series};
        }
        cplx v = erf_series_ld(z, err);
        return {v, err, Regime::series};
    }
    double s = z.real() > 0 ? 1.0 : -1.0;
    cplx w = s * z;
    cplx v = s * (1.0 - erfc_cf(w));
    return {v, 1e-15, Regime::continued_fraction};
}

SpecialFunctionResult cerfc(cplx z) {
    if (z.real() >= 0.5) return {erfc_cf(z), 1e-15, Regime::continued_fraction};
    if (z.real() <= -0.5) return {2.0 - erfc_cf(-z), 1e-15, Regime::continued_fraction};
    auto e = cerf(z);
    cplx v = 1.0 - e.value;
    double rel = std::abs(v) > 0 ? e.est_rel_error * std::abs(e.value) / std::abs(v) : e.est_rel_error;
    return {v, rel, e.regime};
}

cplx cerfcx(cplx z) {
    if (z.real() < 0.0) return 2.0 * std::exp(z * z) - cerfcx(-z);
    if (z.real() >= 0.5 || std::abs(z) > 6.0) return erfcx_cf(z);
    double err = 0.0;
    return std::exp(z * z) * (1.0 - erf_series_double(z, err));
}

// ---------------------------------------------------------------- incomplete gamma

SpecialFunctionResult gamma_p(double a, cplx z) {
    if (!(a > 0.0)) throw DomainError("gamma_p: a must be positive");
    if (z == cplx(0.0)) return {0.0, 0.0, Regime::closed_form};
    bool integer_a = (a == std::floor(a)) && a <= 60.0;
    double az = std::abs(z);
    if (az > 1.0 && integer_a) {
        // P(n,z) = 1 - e^{-z} sum_{k<n} z^k/k!
        int n = static_cast<int>(a);
        lcplx zz(z.real(), z.imag());
        lcplx t = 1, s = 1;
        for (int k = 1; k < n; ++k) {
            t *= zz / ld(k);
            s += t;
        }
        lcplx v = ld(1) - std::exp(-zz) * s;
        return {cplx(double(v.real()), double(v.imag())), 1e-15, Regime::closed_form};
    }
    if (az > a + 1.0 && z.real() > 0.0) {
        // Legendre continued fraction for Q
        const double fpmin = 1e-300;
        cplx b = z + 1.0 - a;
        cplx c = 1.0 / fpmin;
        cplx d = 1.0 / b;
        cplx h = d;
        for (int i = 1; i < 10000; ++i) {
            double an = -i * (i - a);
            b += 2.0;
            d = an * d + b;
            if (std::abs(d) < fpmin) d = fpmin;
            c = b + an / c;
            if (std::abs(c) < fpmin) c = fpmin;
            d = 1.0 / d;
            cplx del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < 1e-16) break;
        }
        cplx q = std::exp(-z + a * std::log(z) - lgamma_fn(a)) * h;
        return {1.0 - q, 1e-14, Regime::continued_fraction};
    }
    lcplx zz(z.real(), z.imag());
    lcplx term = ld(rgamma(a + 1.0));
    lcplx sum = term;
    ld maxabs = std::abs(term);
    for (int n = 1; n < 100000; ++n) {
        term *= zz / ld(a + n);
        sum += term;
        maxabs = std::max(maxabs, std::abs(term));
        if (std::abs(term) < ld(1e-21) * std::abs(sum)) break;
    }
    lcplx pref = std::exp(ld(a) * std::log(zz) - zz);
    lcplx v = pref * sum;
    double err = 1e-16 + 1e-19 * double(maxabs / std::max(std::abs(sum), ld(1e-300)));
    return {cplx(double(v.real()), double(v.imag())), err, Regime::series};
}

cplx gauss_window(double a, cplx w) {
    if (a < 0.0 || !std::isfinite(a)) throw DomainError("gauss_window: a must be finite and nonnegative");
    if (a == 0.0) return 0.0;
    const double r2 = std::sqrt(2.0);
    cplx s = (w + 2.0 * a) / r2;
    cplx t = (w - 2.0 * a) / r2;
    if (t.real() > 0.0) return 0.5 * (cerfc(t).value - cerfc(s).value);
    if (s.real() < 0.0) return 0.5 * (cerfc(-s).value - cerfc(-t).value);
    return 0.5 * (cerf(s).value - cerf(t).value);
}

}  // namespace bandgas
