#pragma once

#include <string>
#include <vector>

#include "bandgas/scaled.hpp"

namespace bandgas {

struct AsymptoticCheck {
    int n = 0;
    ScaledComplex exact;
    ScaledComplex asymptotic;
    double rel_error = 0.0;  // |exact - asymptotic| / max(|exact|, 1e-300)
    std::string warning;     // argument outside the formula's regime
};

// exact polynomials by three-term recurrence with a shared binary exponent
ScaledComplex hermite_scaled(int n, cplx x);                 // physicists' H_n
ScaledComplex laguerre_scaled(int n, double alpha, cplx x);  // L_n^alpha

// H_n(sqrt(n/2) z), z near a point of (0, 2)
AsymptoticCheck hermite_bulk_check(int n, cplx z);
// normalized H_{2n}(z/(2 sqrt n)) against cos z/sqrt(pi), or H_{2n+1} against 2 sin z/sqrt(pi)
AsymptoticCheck hermite_mehler_heine_check(int n, cplx z, bool odd = false);
// H_n(sqrt(n/2) z) away from [-2, 2]; sqrt(z^2 - 4) on the branch positive for large real z
AsymptoticCheck hermite_outside_check(int n, cplx z);
// L_{n+m}^nu(4 n X)
AsymptoticCheck laguerre_pr_check(int n, int m, double nu, cplx X);
// L_n^alpha(4 n z), z in the bulk box 0 < Re z < 1, small |Im z|
AsymptoticCheck laguerre_vanlessen_check(int n, double alpha, cplx z);
// L_j^nu(z/j) / j^nu against z^{-nu/2} J_nu(2 sqrt z)
AsymptoticCheck laguerre_bessel_limit_check(int j, double nu, cplx z);

// m-shift of the Laguerre formula: exact L_{n-1}/L_n against -g_{n,-1}/g_{n,0} at x = 4 n X
struct RatioCheck {
    cplx exact;
    cplx predicted;
    double rel_error = 0.0;
};
RatioCheck laguerre_shift_ratio(int n, double nu, cplx X);

// normalized quantities of the O(1) bounds
// |H_N(sqrt(N/2) p + z/sqrt N)| e^{-N p^2/4} 2^{-N/2} (N!)^{-1/2} N^{1/4}
double herman_normalized(int N, double p, cplx z);
// |dR_N/dxi (p + i y/N)| / N^2 divided by e^{-y^2/(2c^2)} max(1, y^{2N} N^{-N}) cosh^2(k y), k = sqrt(4 - p^2)/2
double f1p_ratio(int N, double p, double c, double y);
// N |L_{N+nu-1}^{1-nu}(kappa N zeta) L_{N-1}^{nu+1}(kappa N conj zeta)| e^{-kappa N Re zeta},
// zeta = p + 2 c sqrt(p) z / N, kappa = (a^2 - b^2)/(2b), a = N/c^2, b = a - 1
double baal_normalized(int N, int nu, double p, double c, cplx z);

// two-stage check of an O(1) claim: C = margin * statistic(fit_N), then statistic(N) <= C for every check N
struct FitDominate {
    int fit_N = 0;
    double fitted_constant = 0.0;
    double margin = 1.5;
    std::vector<int> check_N;
    std::vector<double> statistic;  // at check_N
    bool dominated = false;
};

inline constexpr double kFitMargin = 1.5;

// sup of herman_normalized over |z| <= M
double herman_sup(int N, double p, double M = 2.0);
// sup of f1p_ratio over a y-grid on [-ymax, ymax]
double f1p_sup(int N, double p, double c, double ymax = 20.0, int ny = 161);

FitDominate hermite_uniform_bound_check(double p, double M = 2.0, int fit_N = 50, std::vector<int> check_N = {100, 200});
FitDominate hermite_edge_bound_check(double p, double c, double ymax = 20.0, int fit_N = 20,
                                     std::vector<int> check_N = {40, 80});
FitDominate baal_product_check(int nu, double p, double c, cplx z, int fit_N = 100,
                               std::vector<int> check_N = {200, 400});

enum class AsymptoticFormula {
    hermite_bulk,
    mehler_heine_even,
    mehler_heine_odd,
    hermite_outside,
    laguerre_pr,
    laguerre_vanlessen,
    laguerre_bessel
};

std::string asymptotic_formula_name(AsymptoticFormula f);
AsymptoticFormula parse_asymptotic_formula(const std::string& s);  // throws DomainError

struct AsymptoticRequest {
    AsymptoticFormula formula = AsymptoticFormula::hermite_bulk;
    cplx z = 1.0;
    double nu = 0.0;  // nu or alpha for the Laguerre formulas
    int m = 0;        // laguerre_pr shift
};

AsymptoticCheck run_asymptotic_check(const AsymptoticRequest& req, int n);
// one check per n, evaluated concurrently
std::vector<AsymptoticCheck> asymptotic_sweep(const AsymptoticRequest& req, const std::vector<int>& ns);
// non-increasing along the sweep up to a relative slack
bool non_increasing(const std::vector<AsymptoticCheck>& sweep, double slack = 0.0);

}  // namespace bandgas
