#include "bandgas/finiten.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "bandgas/errors.hpp"
#include "bandgas/specfun.hpp"

namespace bandgas {

namespace {

constexpr double kPi = 3.14159265358979323846;

double absmax(cplx z) { return std::max(std::fabs(z.real()), std::fabs(z.imag())); }

cplx scale2(cplx z, int k) { return {std::ldexp(z.real(), k), std::ldexp(z.imag(), k)}; }

// y_0 = 1, y_1 given, y_{j+1} = A_j y_j - B_j y_{j-1}; visit(j, y, e) sees y_j = y 2^e
template <class Coef, class Visit>
void scaled_three_term(int n, cplx y1, Coef coef, Visit visit) {
    cplx prev = 0.0, cur = 1.0;
    long e = 0;
    for (int j = 0; j < n; ++j) {
        visit(j, cur, e);
        if (j + 1 == n) break;
        cplx next;
        if (j == 0) {
            next = y1;
        } else {
            auto [A, B] = coef(j);
            next = A * cur - B * prev;
        }
        prev = cur;
        cur = next;
        double m = std::max(absmax(cur), absmax(prev));
        if (m > 0x1p60 || (m < 0x1p-60 && m > 0.0)) {
            int k = 0;
            std::frexp(m, &k);
            cur = scale2(cur, -k);
            prev = scale2(prev, -k);
            e += k;
        }
    }
}

struct HermiteParams {
    double a, b, tau, lambda, log_kappa;
};

HermiteParams hermite_params(const EnsembleSpec& spec) {
    const double N = spec.N, c2 = spec.c * spec.c;
    HermiteParams h{};
    h.a = 0.5;
    switch (spec.family) {
        case Family::ague:
        case Family::induced_ague:
        case Family::hard_edge_ague: h.b = N / (2.0 * c2); break;
        case Family::ague_modified: h.b = std::cbrt(N) / (2.0 * c2); break;
        default: throw DomainError("hermite basis: family " + family_name(spec.family) + " is not Hermite type");
    }
    if (!(h.b > h.a)) throw DomainError("hermite basis: needs b > a (N > c^2 for ague)");
    h.tau = (h.b - h.a) / (h.b + h.a);
    h.lambda = std::sqrt(N * h.a * h.b / (h.b - h.a));
    h.log_kappa = 0.25 * std::log(h.a * h.b) + 0.5 * std::log(N);
    return h;
}

template <class Visit>
void hermite_run(int n, double tau, cplx w, Visit visit) {
    scaled_three_term(
        n, std::sqrt(2.0 * tau) * w,
        [&](int j) {
            return std::pair<cplx, cplx>(std::sqrt(2.0 * tau / (j + 1.0)) * w, tau * std::sqrt(j / (j + 1.0)));
        },
        visit);
}

template <class Visit>
void laguerre_run(int n, double nu, double tau, cplx x, Visit visit) {
    scaled_three_term(
        n, tau * (nu + 1.0 - x) / std::sqrt(nu + 1.0),
        [&](int j) {
            double den = std::sqrt((j + 1.0) * (j + nu + 1.0));
            return std::pair<cplx, cplx>(tau * (2.0 * j + nu + 1.0 - x) / den,
                                         tau * tau * std::sqrt(j * (j + nu)) / den);
        },
        visit);
}

// sum |y_j|^2 as a real ScaledComplex
template <class Runner>
ScaledComplex sum_squares(Runner run) {
    ScaledComplex acc;
    run([&](int, cplx y, long e) { acc += ScaledComplex(std::norm(y), 2 * e); });
    return acc;
}

double log_hermite_weight(const HermiteParams& h, const EnsembleSpec& spec, cplx zeta) {
    double q = h.a * zeta.real() * zeta.real() + h.b * zeta.imag() * zeta.imag();
    return -0.5 * spec.N * q;
}

struct LaguerreParams {
    double nu, tau, xscale, log_seed_const;
};

LaguerreParams laguerre_params(const EnsembleSpec& spec) {
    if (spec.family != Family::alue && spec.family != Family::alue_alpha)
        throw DomainError("laguerre basis: family " + family_name(spec.family) + " is not Laguerre type");
    const double N = spec.N, c2 = spec.c * spec.c;
    double a = N / c2, b = a - 1.0;
    if (!(b > 0.0)) throw DomainError("laguerre basis: needs N > c^2");
    LaguerreParams p{};
    p.nu = spec.bessel_order();
    if (!(p.nu > -1.0)) throw DomainError("laguerre basis: nu must exceed -1");
    p.tau = b / a;
    p.xscale = (a * a - b * b) / (2.0 * b) * N;
    double logC = 0.5 * std::log(a * N) + 0.5 * (p.nu + 1.0) * std::log((a * a - b * b) * N / (2.0 * a));
    p.log_seed_const = logC - 0.5 * lgamma_fn(p.nu + 1.0);
    return p;
}

// log of the prefactor C_N e^{-N Q/2} / sqrt(Gamma(nu+1)); throws at a singular weight
double laguerre_log_seed(const LaguerreParams& p, const EnsembleSpec& spec, cplx zeta) {
    double Q = potential_value(spec, zeta);
    if (Q == -std::numeric_limits<double>::infinity())
        throw DomainError("laguerre basis: weight is singular at the origin for this nu");
    return p.log_seed_const - 0.5 * spec.N * Q;
}

EnsembleSpec alue_of_chiral(const EnsembleSpec& spec) {
    EnsembleSpec s = spec;
    s.family = Family::alue;
    s.d.reset();
    return s;
}

KernelValue make_kernel_value(const ScaledComplex& K, const ScaledComplex& diag) {
    KernelValue kv;
    kv.K = K.value();
    ScaledComplex k2 = K.norm();
    kv.absK2 = k2.value().real();
    if (diag.is_zero() || diag.value().real() == 0.0) {
        kv.berezin_available = false;
        kv.berezin = 0.0;
    } else {
        kv.berezin = (k2 / diag).value().real();
    }
    return kv;
}

ScaledComplex scaled_dot(const std::vector<ScaledComplex>& u, const std::vector<ScaledComplex>& v) {
    ScaledComplex s;
    for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * v[j].conj();
    return s;
}

KernelValue kernel_from_bases(const std::vector<ScaledComplex>& u, const std::vector<ScaledComplex>& v) {
    return make_kernel_value(scaled_dot(u, v), scaled_dot(u, u));
}

// basis of the induced ensemble: M = N + nu Hermite functions, projected onto those vanishing to order nu at 0
struct InducedProjection {
    Eigen::MatrixXd A;    // nu x M, rows normalized
    Eigen::LDLT<Eigen::MatrixXd> gram;
};

int induced_order(const EnsembleSpec& spec) {
    double r = std::round(spec.nu);
    if (std::fabs(spec.nu - r) > 1e-12 || r < 0.0)
        throw DomainError("induced_ague kernel: nu must be a non-negative integer");
    return static_cast<int>(r);
}

InducedProjection induced_projection(const HermiteParams& h, int nu, int M) {
    InducedProjection P;
    P.A = Eigen::MatrixXd::Zero(nu, M);
    for (int k = 0; k < nu; ++k) {
        // Taylor coefficient of zeta^k in q_j up to a row constant
        std::vector<double> logs(M, -std::numeric_limits<double>::infinity());
        std::vector<double> sgn(M, 0.0);
        double top = -std::numeric_limits<double>::infinity();
        for (int j = k; j < M; j += 2) {
            int m = (j - k) / 2;
            logs[j] = 0.5 * j * std::log(h.tau / 2.0) + 0.5 * std::lgamma(j + 1.0) - std::lgamma(m + 1.0);
            sgn[j] = (m % 2 == 0) ? 1.0 : -1.0;
            top = std::max(top, logs[j]);
        }
        for (int j = k; j < M; j += 2) P.A(k, j) = sgn[j] * std::exp(logs[j] - top);
    }
    P.gram.compute(P.A * P.A.transpose());
    return P;
}

KernelValue induced_kernel(const EnsembleSpec& spec, cplx zeta, cplx eta) {
    int nu = induced_order(spec);
    int M = spec.N + nu;
    EnsembleSpec base = spec;
    base.family = Family::ague;
    auto u = weighted_hermite_basis(base, zeta, M).values;
    if (nu == 0) {
        auto v = weighted_hermite_basis(base, eta, M).values;
        return kernel_from_bases(u, v);
    }
    HermiteParams h = hermite_params(base);
    InducedProjection P = induced_projection(h, nu, M);
    auto vals = [](const std::vector<ScaledComplex>& s) {
        Eigen::VectorXcd out(s.size());
        for (std::size_t j = 0; j < s.size(); ++j) out[j] = s[j].value();
        return out;
    };
    Eigen::VectorXcd uz = vals(u);
    Eigen::VectorXcd gz = P.A.cast<cplx>() * uz;
    // Hermitian form g(z)^T G^{-1} conj(g(w)), G real symmetric
    auto form = [&](const Eigen::VectorXcd& g1, const Eigen::VectorXcd& g2) {
        Eigen::VectorXcd y(g2.size());
        Eigen::VectorXd re = P.gram.solve(g2.real().eval());
        Eigen::VectorXd im = P.gram.solve(g2.imag().eval());
        for (int i = 0; i < y.size(); ++i) y[i] = cplx(re[i], -im[i]);
        return (g1.transpose() * y)(0);
    };
    cplx Kz = uz.squaredNorm() - form(gz, gz);
    cplx Kzw;
    if (zeta == eta) {
        Kzw = Kz;
    } else {
        Eigen::VectorXcd uw = vals(weighted_hermite_basis(base, eta, M).values);
        Eigen::VectorXcd gw = P.A.cast<cplx>() * uw;
        Kzw = (uz.transpose() * uw.conjugate())(0) - form(gz, gw);
    }
    double diag = std::max(Kz.real(), 0.0);
    KernelValue kv;
    kv.K = Kzw;
    kv.absK2 = std::norm(Kzw);
    if (diag <= std::numeric_limits<double>::min()) {
        kv.berezin_available = false;
    } else {
        kv.berezin = kv.absK2 / diag;
    }
    return kv;
}

}  // namespace

double hermite_F(int N, double tau, cplx z) {
    if (N < 1) throw DomainError("hermite_F: N < 1");
    return sum_squares([&](auto visit) { hermite_run(N, tau, z, visit); }).value().real();
}

double hermite_dFdx(int N, double tau, cplx z) {
    if (N < 1) throw DomainError("hermite_dFdx: N < 1");
    ScaledComplex F, hprev, hlast;
    hermite_run(N + 1, tau, z, [&](int j, cplx y, long e) {
        if (j < N) F += ScaledComplex(std::norm(y), 2 * e);
        if (j == N - 1) hprev = ScaledComplex(y, e);
        if (j == N) hlast = ScaledComplex(y, e);
    });
    ScaledComplex cross = hprev * hlast.conj();
    double t1 = 4.0 * tau * z.real() / (1.0 + tau);
    double t2 = 4.0 / (1.0 + tau) * std::sqrt(N * tau / 2.0);
    ScaledComplex r = F * cplx(t1) - ScaledComplex(cplx(cross.mantissa().real() * t2), cross.exponent());
    return r.value().real();
}

ScaledComplex laguerre_G_scaled(int N, double nu, double tau, cplx z) {
    if (N < 1) throw DomainError("laguerre_G: N < 1");
    if (!(nu > -1.0)) throw DomainError("laguerre_G: nu must exceed -1");
    ScaledComplex s = sum_squares([&](auto visit) { laguerre_run(N, nu, tau, z, visit); });
    return s * ScaledComplex::from_exp(-lgamma_fn(nu + 1.0));
}

double laguerre_G(int N, double nu, double tau, cplx z) { return laguerre_G_scaled(N, nu, tau, z).value().real(); }

WeightedBasisEval weighted_hermite_basis(const EnsembleSpec& spec, cplx zeta, int count) {
    spec.validate();
    HermiteParams h = hermite_params(spec);
    int n = count < 0 ? spec.N : count;
    ScaledComplex seed = ScaledComplex::from_exp(h.log_kappa + log_hermite_weight(h, spec, zeta));
    WeightedBasisEval out;
    out.values.resize(n);
    hermite_run(n, h.tau, h.lambda * zeta,
                [&](int j, cplx y, long e) { out.values[j] = seed * ScaledComplex(y, e); });
    return out;
}

double agu_onepoint(const EnsembleSpec& spec, cplx zeta) {
    spec.validate();
    if (spec.family != Family::ague && spec.family != Family::ague_modified)
        throw DomainError("agu_onepoint: family must be ague or ague_modified");
    HermiteParams h = hermite_params(spec);
    ScaledComplex F = sum_squares([&](auto visit) { hermite_run(spec.N, h.tau, h.lambda * zeta, visit); });
    ScaledComplex w = ScaledComplex::from_exp(2.0 * (h.log_kappa + log_hermite_weight(h, spec, zeta)));
    return (F * w).value().real();
}

double agu_dFdx(const EnsembleSpec& spec, cplx z) {
    spec.validate();
    HermiteParams h = hermite_params(spec);
    return hermite_dFdx(spec.N, h.tau, z);
}

double agu_dR_dxi(const EnsembleSpec& spec, cplx zeta) {
    spec.validate();
    if (spec.family != Family::ague && spec.family != Family::ague_modified)
        throw DomainError("agu_dR_dxi: family must be ague or ague_modified");
    HermiteParams h = hermite_params(spec);
    cplx w = h.lambda * zeta;
    ScaledComplex F, hprev, hlast;
    hermite_run(spec.N + 1, h.tau, w, [&](int j, cplx y, long e) {
        if (j < spec.N) F += ScaledComplex(std::norm(y), 2 * e);
        if (j == spec.N - 1) hprev = ScaledComplex(y, e);
        if (j == spec.N) hlast = ScaledComplex(y, e);
    });
    const double tau = h.tau;
    ScaledComplex cross = hprev * hlast.conj();
    double t2 = 4.0 / (1.0 + tau) * std::sqrt(spec.N * tau / 2.0);
    ScaledComplex Fx = F * cplx(4.0 * tau * w.real() / (1.0 + tau)) -
                       ScaledComplex(cplx(cross.mantissa().real() * t2), cross.exponent());
    ScaledComplex weight = ScaledComplex::from_exp(2.0 * (h.log_kappa + log_hermite_weight(h, spec, zeta)));
    // R = weight F(lambda zeta), Q_xi = 2 a xi
    ScaledComplex dR = weight * (Fx * cplx(h.lambda) - F * cplx(2.0 * h.a * spec.N * zeta.real()));
    return dR.value().real();
}

WeightedBasisEval weighted_laguerre_basis(const EnsembleSpec& spec, cplx zeta) {
    spec.validate();
    LaguerreParams p = laguerre_params(spec);
    ScaledComplex seed = ScaledComplex::from_exp(laguerre_log_seed(p, spec, zeta));
    WeightedBasisEval out;
    out.values.resize(spec.N);
    laguerre_run(spec.N, p.nu, p.tau, p.xscale * zeta,
                 [&](int j, cplx y, long e) { out.values[j] = seed * ScaledComplex(y, e); });
    return out;
}

double alue_onepoint(const EnsembleSpec& spec, cplx zeta) {
    spec.validate();
    LaguerreParams p = laguerre_params(spec);
    if (zeta == cplx(0.0) && p.nu <= 0.0) return std::numeric_limits<double>::infinity();
    ScaledComplex G =
        sum_squares([&](auto visit) { laguerre_run(spec.N, p.nu, p.tau, p.xscale * zeta, visit); });
    return (G * ScaledComplex::from_exp(2.0 * laguerre_log_seed(p, spec, zeta))).value().real();
}

IdentityPair laguerre_square_identity(int j, int nu, cplx z) {
    if (j < 0 || nu < 0) throw DomainError("laguerre_square_identity: j and nu must be non-negative");
    IdentityPair r;
    cplx L = laguerre_seq(z, nu, j).back();
    r.lhs = std::exp(std::lgamma(j + 1.0) - std::lgamma(j + nu + 1.0)) * std::norm(L);
    double az2 = std::norm(z);
    double x = 2.0 * z.real();
    long double sum = 0.0L;
    for (int k = 0; k <= j; ++k) {
        double coef = std::exp(k * std::log(az2 > 0 ? az2 : 1.0) - std::lgamma(k + 1.0) - std::lgamma(k + nu + 1.0));
        if (az2 == 0.0 && k > 0) coef = 0.0;
        sum += static_cast<long double>(coef) * laguerre_seq(x, nu + 2.0 * k, j - k).back().real();
    }
    r.rhs = static_cast<double>(sum);
    return r;
}

ContourCheck contour_identity_check(int N, int nu, cplx z, double tau, int nodes, double r1, double r2) {
    if (N < 1 || nu < 0) throw DomainError("contour_identity_check: N >= 1 and integer nu >= 0 required");
    if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("contour_identity_check: tau must lie in (0, 1]");
    if (nu > 0 && z == cplx(0.0)) throw DomainError("contour_identity_check: z = 0 with nu > 0");
    if (r2 < 0.0) r2 = 1.3 * (1.0 + r1) / (tau * tau);
    if (!(r1 > 0.0 && r1 < 1.0)) throw DomainError("contour_identity_check: gamma_1 must enclose 0 but not 1");
    if (!(r2 > 1.0 && r2 > r1)) throw DomainError("contour_identity_check: gamma_2 must enclose 1 and gamma_1");
    if (!(tau * tau * r2 > r1)) throw DomainError("contour_identity_check: tau^2 v - u vanishes inside gamma_2");
    ContourCheck out;
    out.direct = laguerre_G(N, nu, tau, z);
    const double h = 2.0 * kPi / nodes;
    std::vector<cplx> u(nodes), du(nodes), v(nodes), dv(nodes);
    for (int k = 0; k < nodes; ++k) {
        cplx e(std::cos(k * h), std::sin(k * h));
        u[k] = r1 * e;
        du[k] = cplx(0.0, h) * u[k];
        v[k] = r2 * e;
        dv[k] = cplx(0.0, h) * v[k];
    }
    cplx zb = std::conj(z);
    std::vector<cplx> fu(nodes), fv(nodes);
    for (int k = 0; k < nodes; ++k) {
        fu[k] = std::pow((u[k] - 1.0) / u[k], nu) * std::pow(u[k], -N) * std::exp(z * u[k] / (u[k] - 1.0)) /
                (u[k] - 1.0) * du[k];
        fv[k] = std::pow(v[k] / (v[k] - 1.0), nu) * std::pow(v[k], N) * std::exp(-zb * v[k] / (v[k] - 1.0)) /
                (v[k] - 1.0) * dv[k];
    }
    cplx U = 0.0;
    for (int a = 0; a < nodes; ++a) {
        cplx row = 0.0;
        for (int b = 0; b < nodes; ++b) row += fv[b] / (tau * tau * v[b] - u[a]);
        U += fu[a] * row;
    }
    out.U = U;
    out.via_contour = std::pow(tau, 2 * N) * std::exp(zb) / (4.0 * kPi * kPi * std::pow(z, nu)) * U;
    return out;
}

KernelValue kernel(const EnsembleSpec& spec, cplx zeta, cplx eta) {
    spec.validate();
    switch (spec.family) {
        case Family::ague:
        case Family::ague_modified:
            return kernel_from_bases(weighted_hermite_basis(spec, zeta).values,
                                     weighted_hermite_basis(spec, eta).values);
        case Family::alue:
        case Family::alue_alpha:
            return kernel_from_bases(weighted_laguerre_basis(spec, zeta).values,
                                     weighted_laguerre_basis(spec, eta).values);
        case Family::chiral_d: {
            int d = *spec.d;
            EnsembleSpec base = alue_of_chiral(spec);
            auto lift = [&](cplx z) {
                auto b = weighted_laguerre_basis(base, std::pow(z, d)).values;
                cplx f = std::sqrt(static_cast<double>(d)) * std::pow(std::abs(z), d - 1);
                for (auto& x : b) x = x * f;
                return b;
            };
            return kernel_from_bases(lift(zeta), lift(eta));
        }
        case Family::induced_ague: return induced_kernel(spec, zeta, eta);
        case Family::hard_edge_ague: break;
    }
    throw DomainError("kernel: no finite-N kernel for family " + family_name(spec.family));
}

KernelValue dginibre_kernel(int N, int d, cplx zeta, cplx eta) {
    if (N < 1 || d < 1) throw DomainError("dginibre_kernel: N >= 1 and d >= 1 required");
    auto K = [&](cplx z, cplx w) {
        double damp = -0.5 * N * (std::norm(z) + std::norm(w));
        cplx t = static_cast<double>(N) * z * std::conj(w);
        cplx sum = 0.0;
        if (t == cplx(0.0)) return static_cast<double>(N) * cplx(std::exp(damp));
        cplx L = std::log(t);
        for (int j = 0; j < N; ++j) sum += std::exp(static_cast<double>(d * j) * L - std::lgamma(d * j + 1.0) + damp);
        return static_cast<double>(N) * sum;
    };
    cplx kzw = K(zeta, eta);
    double kzz = K(zeta, zeta).real();
    KernelValue kv;
    kv.K = kzw;
    kv.absK2 = std::norm(kzw);
    if (kzz <= std::numeric_limits<double>::min()) {
        kv.berezin_available = false;
    } else {
        kv.berezin = kv.absK2 / kzz;
    }
    return kv;
}

double onepoint(const EnsembleSpec& spec, cplx zeta) {
    spec.validate();
    switch (spec.family) {
        case Family::ague:
        case Family::ague_modified: return agu_onepoint(spec, zeta);
        case Family::alue:
        case Family::alue_alpha: return alue_onepoint(spec, zeta);
        case Family::chiral_d: {
            int d = *spec.d;
            if (zeta == cplx(0.0) && d > 1) {
                if (2.0 * d - 2.0 + 2.0 * d * std::min(spec.nu, 0.0) > 0.0) return 0.0;
                return std::numeric_limits<double>::infinity();
            }
            double r = std::abs(zeta);
            return d * std::pow(r, 2.0 * d - 2.0) * alue_onepoint(alue_of_chiral(spec), std::pow(zeta, d));
        }
        case Family::induced_ague: return std::max(induced_kernel(spec, zeta, zeta).K.real(), 0.0);
        case Family::hard_edge_ague: break;
    }
    throw DomainError("onepoint: no finite-N kernel for family " + family_name(spec.family));
}

double rescaled_onepoint(const EnsembleSpec& spec, double p, cplx z) {
    RescaleMap m = rescale_map(spec, p);
    return onepoint(spec, m.inverse(z)) / (m.scale * m.scale);
}

}  // namespace bandgas
