#pragma once

#include <vector>

#include "bandgas/geometry.hpp"
#include "bandgas/scaled.hpp"

namespace bandgas {

// psi_j(zeta) = q_j(zeta) e^{-N Q_N(zeta)/2}
struct WeightedBasisEval {
    std::vector<ScaledComplex> values;
};

struct KernelValue {
    cplx K;
    double absK2 = 0.0;
    double berezin = 0.0;       // |K(z,w)|^2 / K(z,z)
    bool berezin_available = true;  // false when K(z,z) underflows
};

// F_N(z) = sum_{j<N} (tau/2)^j / j! |H_j(z)|^2
double hermite_F(int N, double tau, cplx z);
// dF_N/dx in closed form
double hermite_dFdx(int N, double tau, cplx z);
// G_N(z) = sum_{j<N} tau^{2j} j!/Gamma(j+nu+1) |L_j^nu(z)|^2
double laguerre_G(int N, double nu, double tau, cplx z);
ScaledComplex laguerre_G_scaled(int N, double nu, double tau, cplx z);  // no overflow

// Hermite-type families: ague, ague_modified (and the M-term basis used for induced_ague)
WeightedBasisEval weighted_hermite_basis(const EnsembleSpec& spec, cplx zeta, int count = -1);
double agu_onepoint(const EnsembleSpec& spec, cplx zeta);
double agu_dFdx(const EnsembleSpec& spec, cplx z);
// d R_N / d xi along the real direction
double agu_dR_dxi(const EnsembleSpec& spec, cplx zeta);

// Laguerre-type families: alue, alue_alpha
WeightedBasisEval weighted_laguerre_basis(const EnsembleSpec& spec, cplx zeta);
double alue_onepoint(const EnsembleSpec& spec, cplx zeta);

struct IdentityPair {
    double lhs = 0.0;
    double rhs = 0.0;
};
// j!/(j+nu)! |L_j^nu(z)|^2 against sum_k |z|^{2k}/(k!(k+nu)!) L_{j-k}^{nu+2k}(2 Re z)
IdentityPair laguerre_square_identity(int j, int nu, cplx z);

struct ContourCheck {
    double direct = 0.0;
    cplx via_contour;
    cplx U;
};
// G_N(z) by direct sum and by the double contour integral U_N on circles |u| = r1, |v| = r2
ContourCheck contour_identity_check(int N, int nu, cplx z, double tau, int nodes = 512, double r1 = 0.5,
                                    double r2 = -1.0);

KernelValue kernel(const EnsembleSpec& spec, cplx zeta, cplx eta);
KernelValue dginibre_kernel(int N, int d, cplx zeta, cplx eta);

// R_N(zeta) for every family with a finite-N kernel
double onepoint(const EnsembleSpec& spec, cplx zeta);
// R_N(z) = R_N(Gamma^{-1}(z)) / (N Delta Q_N(p))
double rescaled_onepoint(const EnsembleSpec& spec, double p, cplx z);

}  // namespace bandgas
