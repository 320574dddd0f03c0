#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "bandgas/errors.hpp"
#include "bandgas/scaled.hpp"

namespace bandgas {

// nodes and weights on [-1, 1]
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

const GaussRule& gauss_legendre(int n);  // cached per n, thread safe

// composite Gauss-Legendre with `panels` equal panels of order n
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, int n = 16) -> decltype(f(a)) {
    const GaussRule& g = gauss_legendre(n);
    using T = decltype(f(a));
    T sum{};
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h, half = 0.5 * h;
        T s{};
        for (int i = 0; i < n; ++i) s += g.w[i] * f(mid + half * g.x[i]);
        sum += s * half;
    }
    return sum;
}

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

// adaptive Gauss-Kronrod 7/15 on [a, b]; throws NumericalError if tolerance is not met
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                              double rel_tol, int max_depth = 40);

struct CQuadResult {
    cplx value;
    double error = 0.0;
    int evaluations = 0;
};
CQuadResult integrate_adaptive_c(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                                 double rel_tol, int max_depth = 40);

// tensor Gauss-Legendre over a box, `panels` per axis
template <class F>
double integrate_box(F&& f, double x0, double x1, double y0, double y1, int px, int py, int n = 16) {
    const GaussRule& g = gauss_legendre(n);
    double hx = (x1 - x0) / px, hy = (y1 - y0) / py;
    double sum = 0.0;
    for (int i = 0; i < px; ++i)
        for (int a = 0; a < n; ++a) {
            double x = x0 + (i + 0.5) * hx + 0.5 * hx * g.x[a];
            double wx = 0.5 * hx * g.w[a];
            double row = 0.0;
            for (int j = 0; j < py; ++j)
                for (int b = 0; b < n; ++b) {
                    double y = y0 + (j + 0.5) * hy + 0.5 * hy * g.x[b];
                    row += 0.5 * hy * g.w[b] * f(x, y);
                }
            sum += wx * row;
        }
    return sum;
}

}  // namespace bandgas
