#pragma once

#include <optional>
#include <string>

#include "bandgas/scaled.hpp"

namespace bandgas {

enum class Family { ague, ague_modified, alue, alue_alpha, chiral_d, induced_ague, hard_edge_ague };

std::string family_name(Family f);
Family parse_family(const std::string& name);  // throws DomainError

struct EnsembleSpec {
    Family family = Family::ague;
    int N = 1;
    double c = 1.0;
    double nu = 0.0;
    std::optional<double> alpha;  // alue_alpha only
    std::optional<int> d;         // chiral_d only
    double beta = 1.0;

    void validate() const;  // throws DomainError
    // exponent of |zeta| in the Bessel weight: nu, alpha*N for alue_alpha
    double bessel_order() const;
};

struct EllipticDroplet {
    double center = 0.0;
    double semi_axis_x = 1.0;
    double semi_axis_y = 1.0;
    bool contains(cplx zeta, double dilation = 1.0) const;
};

// droplet of Q = a xi^2 + b eta^2
EllipticDroplet ellipse_droplet(double a, double b);
EllipticDroplet droplet(const EnsembleSpec& spec);
bool droplet_membership_chiral(const EnsembleSpec& spec, cplx zeta);

// Q_N(zeta); +inf outside the droplet for the hard-edge family, +-inf at singular points
double potential_value(const EnsembleSpec& spec, cplx zeta);
// Delta Q_N = (1/4) Laplacian, closed form where available
double laplacian_potential(const EnsembleSpec& spec, cplx zeta);

enum class LawKind { semicircle, marchenko_pastur };

struct EquilibriumLaw {
    LawKind kind = LawKind::semicircle;
    double alpha = 0.0;
    double lo = -2.0, hi = 2.0;

    static EquilibriumLaw semicircle();
    static EquilibriumLaw marchenko_pastur(double alpha = 0.0);

    double density(double xi) const;  // +inf at xi = 0 for MP with alpha = 0
    double cdf(double xi) const;
};

EquilibriumLaw equilibrium_law(const EnsembleSpec& spec);

// rho(p) = lim sqrt(N / Delta Q_N(p))
double rho(const EnsembleSpec& spec, double p);
double band_height(const EnsembleSpec& spec, double p);

struct RescaleMap {
    double p = 0.0;
    double scale = 1.0;  // sqrt(N Delta Q_N(p))
    cplx forward(cplx zeta) const { return scale * (zeta - p); }
    cplx inverse(cplx z) const { return p + z / scale; }
};

RescaleMap rescale_map(const EnsembleSpec& spec, double p);

}  // namespace bandgas
