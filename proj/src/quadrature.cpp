#include "bandgas/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace bandgas {

namespace {

GaussRule make_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

// Kronrod 15 / Gauss 7 on [-1, 1]
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
T gk15(const std::function<T(double)>& f, double a, double b, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T rk = fc * kWgk[7];
    T rg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        T f1 = f(c - dx), f2 = f(c + dx);
        rk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
    }
    err = std::abs((rk - rg) * h);
    return rk * h;
}

template <class T>
void adapt(const std::function<T(double)>& f, double a, double b, double tol, int depth, T& sum, double& err,
           int& evals, bool& ok) {
    double e = 0.0;
    T v = gk15<T>(f, a, b, e);
    evals += 15;
    if (e <= tol || depth <= 0 || std::fabs(b - a) < 1e-14 * (1.0 + std::fabs(a))) {
        if (e > tol) ok = false;
        sum += v;
        err += e;
        return;
    }
    double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1, sum, err, evals, ok);
    adapt(f, m, b, 0.5 * tol, depth - 1, sum, err, evals, ok);
}

template <class T>
T run_adaptive(const std::function<T(double)>& f, double a, double b, double abs_tol, double rel_tol, int max_depth,
               double& err, int& evals) {
    double e0 = 0.0;
    T coarse = gk15<T>(f, a, b, e0);
    double tol = std::max(abs_tol, rel_tol * std::abs(coarse));
    T sum{};
    err = 0.0;
    evals = 15;
    bool ok = true;
    adapt(f, a, b, tol, max_depth, sum, err, evals, ok);
    if (!ok && err > std::max(abs_tol, rel_tol * std::abs(sum)))
        throw NumericalError("adaptive quadrature: tolerance not reached (error estimate " + std::to_string(err) +
                             ")");
    return sum;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    auto p = std::make_unique<GaussRule>(make_rule(n));
    const GaussRule& ref = *p;
    cache.emplace(n, std::move(p));
    return ref;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                              double rel_tol, int max_depth) {
    QuadResult r;
    r.value = run_adaptive<double>(f, a, b, abs_tol, rel_tol, max_depth, r.error, r.evaluations);
    return r;
}

CQuadResult integrate_adaptive_c(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                                 double rel_tol, int max_depth) {
    CQuadResult r;
    r.value = run_adaptive<cplx>(f, a, b, abs_tol, rel_tol, max_depth, r.error, r.evaluations);
    return r;
}

}  // namespace bandgas
