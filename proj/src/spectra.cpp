#include "bandgas/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bandgas/errors.hpp"
#include "bandgas/finiten.hpp"
#include "bandgas/parallel.hpp"
#include "bandgas/quadrature.hpp"

namespace bandgas {

namespace {

constexpr double kPi = 3.14159265358979323846;

long double laguerre_ld(int n, long double alpha, long double x) {
    if (n == 0) return 1.0L;
    long double prev = 1.0L, cur = 1.0L + alpha - x;
    for (int j = 1; j < n; ++j) {
        long double next = ((2.0L * j + 1.0L + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0L);
        prev = cur;
        cur = next;
    }
    return cur;
}

bool supports_cross_section(Family f) {
    switch (f) {
        case Family::ague:
        case Family::ague_modified:
        case Family::alue:
        case Family::alue_alpha:
        case Family::induced_ague: return true;
        default: return false;
    }
}

}  // namespace

double cross_section(const EnsembleSpec& spec, double xi) {
    spec.validate();
    if (!supports_cross_section(spec.family))
        throw DomainError("cross_section: no vertical-line evaluator for family " + family_name(spec.family));
    const double N = spec.N;
    auto f = [&](double y) { return onepoint(spec, cplx(xi, y / N)); };

    // scan outwards until the transverse profile is 1e-14 below its peak
    const double h = 0.25 * std::min(1.0, spec.c);
    double peak = 0.0, Y = 0.0;
    for (int k = 0;; ++k) {
        if (k > 400000) {
            std::ostringstream msg;
            msg << "cross_section: transverse profile did not decay (xi=" << xi << ", N=" << spec.N << ")";
            throw NumericalError(msg.str());
        }
        double y = (k + 0.5) * h, v = f(y);
        if (std::isfinite(v)) peak = std::max(peak, v);
        if (k >= 8 && v <= 1e-14 * peak) {
            Y = y;
            break;
        }
    }
    if (peak == 0.0) return 0.0;

    // near the Laguerre singularity at 0 the panels are graded geometrically towards y = 0
    bool laguerre = spec.family == Family::alue || spec.family == Family::alue_alpha;
    bool graded = laguerre && std::fabs(xi) * N < 2.0;
    auto integrate = [&](int P) {
        if (!graded) return integrate_panels(f, 0.0, Y, P);
        double total = 0.0, a = Y * std::pow(4.0, -25);
        for (int k = 24; k >= 0; --k) {
            double b = Y * std::pow(4.0, -k);
            total += integrate_panels(f, a, b, std::max(1, P / 8));
            a = b;
        }
        return total;
    };
    int P = std::max(8, static_cast<int>(std::ceil(Y / (2.0 * h))));
    double prev = integrate(P);
    for (int level = 0; level < 12; ++level) {
        P *= 2;
        double cur = integrate(P);
        if (std::fabs(cur - prev) <= 1e-10 * std::fabs(cur)) return 2.0 * cur / (N * N);
        prev = cur;
    }
    std::ostringstream msg;
    msg << "cross_section: y-quadrature did not converge (xi=" << xi << ", N=" << spec.N << ", Y=" << Y
        << ", last=" << prev << ")";
    throw NumericalError(msg.str());
}

double alue_cs_closed_form(int N, double c, int nu, double xi) {
    if (N < 1) throw DomainError("alue_cs_closed_form: N < 1");
    if (nu < 0) throw DomainError("alue_cs_closed_form: nu must be a nonnegative integer");
    if (!(xi > 0.0 && xi < 4.0)) throw DomainError("alue_cs_closed_form: xi must lie in (0, 4)");
    if (!(c > 0.0) || c * c > N) throw DomainError("alue_cs_closed_form: need 0 < c^2 <= N");
    double x = N * xi;
    ScaledComplex g = laguerre_G_scaled(N, nu, 1.0, x) * ScaledComplex::from_exp(nu * std::log(x) - x);
    return kPi * g.value().real();
}

double laguerre_poly(int n, double alpha, double x) {
    if (n < 0) throw DomainError("laguerre_poly: n < 0");
    return static_cast<double>(laguerre_ld(n, alpha, x));
}

double j_integral(int N, int k, double c, double xi) {
    if (N < 1 || k < 0) throw DomainError("j_integral: need N >= 1, k >= 0");
    if (!(xi > 0.0) || !(c > 0.0)) throw DomainError("j_integral: need xi > 0, c > 0");
    long double x = static_cast<long double>(N) * N * xi / (2.0L * c * c);
    long double L = laguerre_ld(k, -k - 0.5L, x);
    long double f = 1.0L;
    for (int j = 1; j <= k; ++j) f *= -static_cast<long double>(j) / x;  // k! (-1/x)^k
    return static_cast<double>(c * std::sqrt(2.0L * kPi * xi) * f * L);
}

bool interior_point(const EnsembleSpec& spec, double xi, double delta) {
    EquilibriumLaw law = equilibrium_law(spec);
    return xi >= law.lo + delta && xi <= law.hi - delta;
}

std::vector<CrossSectionTable> convergence_table(const EnsembleSpec& spec, const std::vector<double>& xi_grid,
                                                 const std::vector<int>& N_list) {
    if (xi_grid.empty() || N_list.empty()) throw DomainError("convergence_table: empty grid");
    std::vector<double> xs = xi_grid;
    std::sort(xs.begin(), xs.end());
    EquilibriumLaw law = equilibrium_law(spec);
    std::vector<CrossSectionTable> out;
    for (int N : N_list) {
        EnsembleSpec s = spec;
        s.N = N;
        s.validate();
        CrossSectionTable t;
        t.N = N;
        t.family = family_name(s.family);
        t.c = s.c;
        t.nu = s.nu;
        t.xi_values = xs;
        t.c_N_over_pi.assign(xs.size(), 0.0);
        t.equilibrium.resize(xs.size());
        parallel_for(xs.size(), [&](std::size_t i) { t.c_N_over_pi[i] = cross_section(s, xs[i]) / kPi; });
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double e = law.density(xs[i]);
            t.equilibrium[i] = e;
            if (interior_point(s, xs[i])) {
                t.sup_distance = std::max(t.sup_distance, std::fabs(t.c_N_over_pi[i] - e));
                ++t.interior_points;
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace bandgas
