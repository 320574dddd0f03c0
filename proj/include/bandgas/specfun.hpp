#pragma once

#include <vector>

#include "bandgas/scaled.hpp"

namespace bandgas {

enum class Regime { series, asymptotic, continued_fraction, recurrence, connection, closed_form };

struct SpecialFunctionResult {
    cplx value;
    double est_rel_error = 0.0;
    Regime regime = Regime::series;
};

// regime seams
inline constexpr double kAiryRadius = 6.0;
inline constexpr double kBesselJRadius = 17.0;
inline constexpr double kBesselKSwitch = 16.0;

double gamma_fn(double x);   // Lanczos, x not a non-positive integer
double lgamma_fn(double x);  // log|Gamma(x)|, x > 0
double rgamma(double x);     // 1/Gamma(x), zero at the poles

std::vector<cplx> hermite_seq(cplx z, int n_max);
std::vector<cplx> laguerre_seq(cplx x, double nu, int n_max);

SpecialFunctionResult bessel_j(double nu, cplx z);
SpecialFunctionResult bessel_j_series(double nu, cplx z);
SpecialFunctionResult bessel_j_asymptotic(double nu, cplx z);
cplx bessel_j_prime(double nu, cplx z);
cplx bessel_i_complex(double nu, cplx z);

// log I_nu(x) and log K_nu(x) for x > 0; I and K are positive there when nu >= 0
struct BesselIK {
    double log_i;
    double log_k;
};
BesselIK bessel_ik_log(double nu, double x);
double log_bessel_k(double nu, double x);
SpecialFunctionResult bessel_i(double nu, double x);
SpecialFunctionResult bessel_k(double nu, double x);
double bessel_k_scaled(double nu, double x);  // K_nu(x) e^x
double bessel_i_scaled(double nu, double x);  // I_nu(x) e^-x
double bessel_k_asymptotic(double nu, double x);  // large-x expansion only

SpecialFunctionResult airy_ai(cplx z);
SpecialFunctionResult airy_ai_prime(cplx z);
ScaledComplex airy_ai_scaled(cplx z);
SpecialFunctionResult airy_ai_series(cplx z);
SpecialFunctionResult airy_ai_asymptotic(cplx z);

SpecialFunctionResult cerf(cplx z);
SpecialFunctionResult cerfc(cplx z);
cplx cerfcx(cplx z);  // e^{z^2} erfc(z)

SpecialFunctionResult gamma_p(double a, cplx z);

// F(w) = (1/sqrt(2 pi)) int_{-2a}^{2a} exp(-(w-t)^2/2) dt
cplx gauss_window(double a, cplx w);

}  // namespace bandgas
