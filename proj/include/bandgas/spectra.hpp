#pragma once

#include <string>
#include <vector>

#include "bandgas/geometry.hpp"

namespace bandgas {

struct CrossSectionTable {
    std::vector<double> xi_values;
    std::vector<double> c_N_over_pi;
    std::vector<double> equilibrium;
    int N = 0;
    std::string family;
    double c = 1.0;
    double nu = 0.0;
    double sup_distance = 0.0;  // over the interior grid points
    int interior_points = 0;
};

// c_N(xi) = N^-2 int R_N(xi + i y/N) dy; throws NumericalError when the y-quadrature does not settle
double cross_section(const EnsembleSpec& spec, double xi);

// pi (N xi)^nu e^{-N xi} sum_{j<N} j!/(j+nu)! L_j^nu(N xi)^2, the main term with tau at its limit 1;
// c is only validated (0 < c^2 <= N)
double alue_cs_closed_form(int N, double c, int nu, double xi);

// int_R exp(-y^2/(2 c^2 xi)) (1 + (y/(N xi))^2)^k dy in Laguerre closed form
double j_integral(int N, int k, double c, double xi);

// generalized Laguerre L_n^alpha(x), alpha real
double laguerre_poly(int n, double alpha, double x);

// grid points at least delta from the support endpoints (and from 0 for the Laguerre families)
bool interior_point(const EnsembleSpec& spec, double xi, double delta = 0.1);

std::vector<CrossSectionTable> convergence_table(const EnsembleSpec& spec, const std::vector<double>& xi_grid,
                                                 const std::vector<int>& N_list);

}  // namespace bandgas
