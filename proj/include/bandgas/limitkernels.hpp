#pragma once

#include <functional>
#include <optional>
#include <string>

#include "bandgas/scaled.hpp"

namespace bandgas {

// Ginibre kernel G(z,w) = exp(z conj(w) - |z|^2/2 - |w|^2/2)
cplx ginibre_K(cplx z, cplx w);

// Phi(a,s) = (1/sqrt(2 pi)) int_{-2a}^{2a} exp(-t^2/2 - i s t) dt, times e^{logpref}, without overflow
cplx window_fourier(double a, cplx s, cplx logpref = 0.0);

// bulk family: R(z) = F(2 Im z), K(z,w) = G(z,w) F((z - conj w)/i)
double fks_R(double a, cplx z);
cplx fks_K(double a, cplx z, cplx w);
// one-dimensional normalization with alpha = 2a/pi (single integral over (-pi, pi))
cplx fks_tilde_K(double a, cplx zt, cplx wt);
// alpha sqrt(pi/2) tilde K: the transverse Gaussian integrated out; tends to pi K^sin as a -> 0
double fks_tilde_line(double a, double x, double y);

double sine_K(double x, double y);
double airy_K(double x, double y);           // Christoffel-Darboux ratio
double airy_K_integral(double x, double y);  // int_0^inf Ai(x+u) Ai(y+u) du

// boundary family for the modified AGUE, c <= 6
double bender_R(double c, cplx z);
double bender_dRdx(double c, cplx z);  // closed form
cplx bender_K(double c, cplx z, cplx w);
cplx bender_tilde_K(double c, cplx zt, cplx wt);  // alpha = c sqrt 2
double bender_tilde_line(double c, double x, double y);  // alpha sqrt(pi) tilde K -> pi K^Ai
double erfc_R(cplx z);  // c = infinity: erfc(sqrt 2 Re z) / 2

// singular edge of the Laguerre family; z off (-inf, 0]
double alue_edge_R(double c, double nu, cplx z);
cplx alue_edge_K(double c, double nu, cplx z, cplx w);
double planar_bessel_R(double nu, cplx z);  // K_nu(|z|) I_nu(|z|) / 2
cplx planar_bessel_K(double nu, cplx z, cplx w);
double bessel_K_line(double nu, double x, double y);           // closed ratio, diagonal by limit
double bessel_K_line_integral(double nu, double x, double y);  // (1/2) int_0^1 t J(t sqrt x) J(t sqrt y) dt
double alue_edge_tilde_R0(double nu, double x);                // pi K^Bes(x, x), x > 0

// chiral d-family at the origin
double chiral_edge_R(double c, double nu, int d, cplx z);
double chiral_edge_R_infinity(double nu, int d, cplx z);
double chiral_edge_tilde_R0(double nu, int d, cplx z);  // supported on the rays arg z = 2 pi k / d
double chiral_d2_closed_form(double nu, cplx z);        // nu = +-1/2, d = 2, c = infinity

// point insertion at the origin
double induced_R1(double c, cplx z);
cplx induced_K1(double c, cplx z, cplx w);
cplx ml_kernel(double nu, cplx z, cplx w);
double ml_R(double nu, cplx z);
double gen_sine_K(int nu, double x, double y);
double gen_sine_K1_explicit(double x, double y);

// translation-invariant solution in the strip |Im z| < a
double hardedge_R(double a, cplx z);
cplx hardedge_K(double a, cplx z, cplx w);

enum class LimitKind {
    fks_bulk,
    sine,
    ginibre,
    bender_edge,
    airy,
    alue_edge,
    planar_bessel,
    bessel_line,
    chiral_edge,
    induced_bulk,
    ml_insertion,
    hardedge_bulk
};

std::string limit_kind_name(LimitKind k);
LimitKind parse_limit_kind(const std::string& s);  // throws DomainError

struct LimitFamily {
    LimitKind kind = LimitKind::fks_bulk;
    double a = 1.0;
    double c = 1.0;
    double nu = 0.0;
    int d = 1;
    void validate() const;  // throws DomainError
};

// kernel and 1-point function as callables, for Ward checks
struct LimitKernel {
    std::string name;
    std::function<cplx(cplx, cplx)> K;
    std::function<double(cplx)> R;
    bool x_invariant = false;      // unchanged under real translations
    std::optional<double> strip;   // supported in |Im z| < strip
};

// R at z; for line kinds (sine, airy, bessel_line) the diagonal of the line kernel at Re z
double limit_R(const LimitFamily& f, cplx z);
// planar kernel; throws DomainError for line kinds
LimitKernel limit_kernel(const LimitFamily& f);

}  // namespace bandgas
