#include "bandgas/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "bandgas/errors.hpp"
#include "bandgas/parallel.hpp"
#include "bandgas/rng.hpp"

namespace bandgas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.28318530717958647692;

int power_of(const EnsembleSpec& spec) { return spec.family == Family::chiral_d ? spec.d.value_or(1) : 1; }

cplx ipow(cplx z, int d) {
    cplx r = z;
    for (int k = 1; k < d; ++k) r *= z;
    return r;
}

EllipticDroplet reference_droplet(const EnsembleSpec& spec) {
    if (spec.family == Family::induced_ague) {
        EnsembleSpec s = spec;
        s.family = Family::ague;
        s.nu = 0.0;
        return droplet(s);
    }
    if (spec.family == Family::chiral_d) {
        EnsembleSpec s = spec;
        s.family = Family::alue;
        s.d.reset();
        return droplet(s);
    }
    return droplet(spec);
}

double law_quantile(const EquilibriumLaw& law, double u) {
    double lo = law.lo, hi = law.hi;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (law.cdf(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool sort_key(cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

using CMat = Eigen::MatrixXcd;

std::vector<cplx> eigenvalues(const CMat& X, SampleDiagnostics& diag, const std::string& dump_path) {
    Eigen::ComplexEigenSolver<CMat> es(X, false);
    if (es.info() != Eigen::Success) {
        if (!dump_path.empty()) {
            std::ofstream out(dump_path);
            out.precision(17);
            for (Eigen::Index i = 0; i < X.rows(); ++i)
                for (Eigen::Index j = 0; j < X.cols(); ++j)
                    out << i << ',' << j << ',' << X(i, j).real() << ',' << X(i, j).imag() << '\n';
        }
        throw NumericalError("eigensolver did not converge" +
                             (dump_path.empty() ? std::string() : "; matrix written to " + dump_path));
    }
    const auto& ev = es.eigenvalues();
    std::vector<cplx> pts(ev.data(), ev.data() + ev.size());
    std::sort(pts.begin(), pts.end(), sort_key);
    cplx sum = 0.0;
    for (auto p : pts) sum += p;
    diag.matrix_norm = X.norm();
    diag.eig_residual = std::abs(X.trace() - sum) / std::max(diag.matrix_norm, 1e-300);
    return pts;
}

CMat gaussian_matrix(RngStream& rng, int rows, int cols, double variance) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal(variance);
    return m;
}

CMat gue(RngStream& rng, int N) {
    CMat h(N, N);
    const double v = 1.0 / N;
    for (int i = 0; i < N; ++i) {
        h(i, i) = std::sqrt(v) * rng.normal();
        for (int j = i + 1; j < N; ++j) {
            h(i, j) = rng.complex_normal(v);
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

}  // namespace

std::string sample_method_name(SampleMethod m) { return m == SampleMethod::mcmc ? "mcmc" : "matrix"; }

SampleMethod parse_sample_method(const std::string& s) {
    if (s == "mcmc") return SampleMethod::mcmc;
    if (s == "matrix") return SampleMethod::matrix;
    throw DomainError("unknown sampling method: " + s);
}

void ChainConfig::validate() const {
    if (sweeps < 1 || burn_in < 0 || burn_in >= sweeps) throw DomainError("chain: need 0 <= burn_in < sweeps");
    if (!(proposal_scale >= 0.0) || !std::isfinite(proposal_scale))
        throw DomainError("chain: proposal_scale must be positive (or 0 for the default)");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("chain: beta must be positive");
    if (keep < 1 || keep > sweeps - burn_in) throw DomainError("chain: keep must lie in [1, sweeps - burn_in]");
}

double energy(const EnsembleSpec& spec, const std::vector<cplx>& points) {
    spec.validate();
    const int d = power_of(spec);
    const std::size_t n = points.size();
    std::vector<cplx> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = ipow(points[j], d);
    double h = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double q = potential_value(spec, points[j]);
        if (q == kInf) return kInf;
        h += spec.N * q;
        for (std::size_t k = j + 1; k < n; ++k) {
            double r = std::abs(w[j] - w[k]);
            if (r == 0.0) return kInf;
            h -= 2.0 * std::log(r);
        }
    }
    return h;
}

double energy_delta(const EnsembleSpec& spec, const std::vector<cplx>& points, std::size_t index, cplx z) {
    if (index >= points.size()) throw DomainError("energy_delta: index out of range");
    double qn = potential_value(spec, z);
    if (qn == kInf) return kInf;
    double qo = potential_value(spec, points[index]);
    const int d = power_of(spec);
    const cplx wn = ipow(z, d), wo = ipow(points[index], d);
    double logs = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (k == index) continue;
        cplx wk = ipow(points[k], d);
        double dn = std::norm(wn - wk);
        if (dn == 0.0) return kInf;
        logs += std::log(std::norm(wo - wk) / dn);
    }
    return logs + spec.N * (qn - qo);
}

bool metropolis_accept(double delta, double beta, double u) {
    if (delta == kInf) return false;
    if (delta <= 0.0) return true;
    return u < std::exp(-beta * delta);
}

double default_proposal_scale(const EnsembleSpec& spec) {
    spec.validate();
    cplx p = spec.family == Family::chiral_d ? cplx(std::pow(2.0, 1.0 / power_of(spec)), 0.0)
                                             : cplx(reference_droplet(spec).center, 0.0);
    if (p == 0.0 && (spec.family == Family::alue || spec.family == Family::alue_alpha)) p = 1.0;
    double l = laplacian_potential(spec, p);
    return 1.0 / std::sqrt(spec.N * l);
}

std::vector<cplx> initial_configuration(const EnsembleSpec& spec, std::uint64_t seed) {
    spec.validate();
    const int d = power_of(spec);
    EquilibriumLaw law = equilibrium_law(spec);
    EllipticDroplet drop = reference_droplet(spec);
    RngStream rng(seed, 0xC0FFEEULL);
    std::vector<cplx> pts(spec.N);
    for (int j = 0; j < spec.N; ++j) {
        double x = law_quantile(law, (j + 0.5) / spec.N);
        double y = drop.semi_axis_y / 3.0 * rng.normal();
        cplx w(x, y);
        if (spec.family == Family::hard_edge_ague)
            while (!drop.contains(w, 0.95)) w = cplx(0.95 * w.real(), 0.5 * w.imag());
        if (d > 1) {
            int k = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
            w = std::polar(std::pow(std::abs(w), 1.0 / d), (std::arg(w) + kTwoPi * k) / d);
        }
        pts[j] = w;
    }
    return pts;
}

std::vector<SampleCloud> mcmc_states(const EnsembleSpec& spec, const ChainConfig& chain, std::uint64_t seed) {
    spec.validate();
    chain.validate();
    const double beta = chain.beta > 0.0 ? chain.beta : spec.beta;
    if (!(beta > 0.0)) throw DomainError("mcmc: beta must be positive");
    std::vector<cplx> pts = initial_configuration(spec, seed);
    RngStream rng(seed, 1);
    double scale = chain.proposal_scale > 0.0 ? chain.proposal_scale : default_proposal_scale(spec);
    const int post = chain.sweeps - chain.burn_in;
    std::vector<int> keep_at;
    for (int i = 1; i <= chain.keep; ++i)
        keep_at.push_back(chain.burn_in + static_cast<int>(std::lround(static_cast<double>(i) * post / chain.keep)));

    std::vector<SampleCloud> out;
    long accepted = 0, proposed = 0, window_acc = 0, window_prop = 0;
    std::size_t next_keep = 0;
    for (int sweep = 1; sweep <= chain.sweeps; ++sweep) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            cplx z = pts[j] + scale * cplx(rng.normal(), rng.normal());
            double u = rng.uniform();
            bool acc = metropolis_accept(energy_delta(spec, pts, j, z), beta, u);
            if (acc) pts[j] = z;
            if (sweep <= chain.burn_in) {
                window_acc += acc;
                ++window_prop;
            } else {
                accepted += acc;
                ++proposed;
            }
        }
        if (sweep <= chain.burn_in && chain.adapt && sweep % 20 == 0) {
            double r = static_cast<double>(window_acc) / window_prop;
            scale *= std::exp(std::clamp(r - 0.4, -0.3, 0.3));
            window_acc = window_prop = 0;
        }
        while (next_keep < keep_at.size() && keep_at[next_keep] == sweep) {
            SampleCloud c;
            c.points = pts;
            c.spec = spec;
            c.seed = seed;
            c.method = SampleMethod::mcmc;
            out.push_back(std::move(c));
            ++next_keep;
        }
    }
    double rate = proposed ? static_cast<double>(accepted) / proposed : 0.0;
    for (auto& c : out) {
        c.diagnostics.acceptance_rate = rate;
        c.diagnostics.proposal_scale = scale;
        if (rate < 0.1 || rate > 0.9) c.diagnostics.warning = "acceptance rate outside [0.1, 0.9]";
    }
    return out;
}

SampleCloud mcmc_sample(const EnsembleSpec& spec, const ChainConfig& chain, std::uint64_t seed) {
    ChainConfig c = chain;
    c.keep = 1;
    return mcmc_states(spec, c, seed).back();
}

std::vector<SampleCloud> mcmc_chains(const EnsembleSpec& spec, const ChainConfig& chain, std::uint64_t seed,
                                     int chains) {
    if (chains < 1) throw DomainError("mcmc_chains: need at least one chain");
    std::vector<SampleCloud> out(chains);
    parallel_for(chains, [&](std::size_t i) {
        out[i] = mcmc_sample(spec, chain, splitmix64(seed ^ splitmix64(0xA5A5A5A5ULL + i)));
    });
    return out;
}

SampleCloud matrix_sample_alue(int N, double c, int nu, std::uint64_t seed, const std::string& dump_path) {
    EnsembleSpec spec;
    spec.family = Family::alue;
    spec.N = N;
    spec.c = c;
    spec.nu = nu;
    spec.validate();
    if (nu < 0) throw DomainError("matrix_sample_alue: nu must be a nonnegative integer");
    const double tau = 1.0 - c * c / N;
    if (!(tau >= -1.0 && tau <= 1.0)) throw DomainError("matrix_sample_alue: need c^2 <= 2N");
    RngStream rng(seed, 0);
    CMat P = gaussian_matrix(rng, N, N + nu, 1.0 / (2.0 * N));
    CMat Q = gaussian_matrix(rng, N, N + nu, 1.0 / (2.0 * N));
    const double sp = std::sqrt(1.0 + tau), sq = std::sqrt(1.0 - tau);
    CMat X = (sp * P + sq * Q) * (sp * P - sq * Q).adjoint();
    SampleCloud out;
    out.spec = spec;
    out.seed = seed;
    out.method = SampleMethod::matrix;
    out.points = eigenvalues(X, out.diagnostics, dump_path);
    return out;
}

AgueCalibration elliptic_calibration(const EnsembleSpec& spec) {
    if (spec.family != Family::ague && spec.family != Family::ague_modified)
        throw DomainError("elliptic_calibration: family must be ague or ague_modified");
    EllipticDroplet e = droplet(spec);
    return {(e.semi_axis_x - e.semi_axis_y) / (e.semi_axis_x + e.semi_axis_y), 0.5 * (e.semi_axis_x + e.semi_axis_y)};
}

AgueCalibration ague_calibration(int N, double c) {
    EnsembleSpec spec;
    spec.N = N;
    spec.c = c;
    return elliptic_calibration(spec);
}

SampleCloud matrix_sample_elliptic(const EnsembleSpec& spec, std::uint64_t seed, const std::string& dump_path) {
    spec.validate();
    AgueCalibration cal = elliptic_calibration(spec);
    const int N = spec.N;
    RngStream rng(seed, 0);
    CMat H1 = gue(rng, N), H2 = gue(rng, N);
    CMat M = cal.scale * (std::sqrt(0.5 * (1.0 + cal.tau)) * H1 + cplx(0.0, std::sqrt(0.5 * (1.0 - cal.tau))) * H2);
    SampleCloud out;
    out.spec = spec;
    out.seed = seed;
    out.method = SampleMethod::matrix;
    out.points = eigenvalues(M, out.diagnostics, dump_path);
    return out;
}

SampleCloud matrix_sample_ague(int N, double c, std::uint64_t seed, const std::string& dump_path) {
    EnsembleSpec spec;
    spec.family = Family::ague;
    spec.N = N;
    spec.c = c;
    return matrix_sample_elliptic(spec, seed, dump_path);
}

SampleCloud sample(const EnsembleSpec& spec, SampleMethod method, std::uint64_t seed, const ChainConfig& chain) {
    if (method == SampleMethod::mcmc) return mcmc_sample(spec, chain, seed);
    spec.validate();
    if (spec.beta != 1.0) throw DomainError("matrix sampling needs beta = 1");
    switch (spec.family) {
        case Family::ague:
        case Family::ague_modified: return matrix_sample_elliptic(spec, seed);
        case Family::alue: {
            if (spec.nu != std::floor(spec.nu) || spec.nu < 0)
                throw DomainError("matrix sampling of alue needs an integer nu >= 0");
            return matrix_sample_alue(spec.N, spec.c, static_cast<int>(spec.nu), seed);
        }
        default: throw DomainError("no matrix model for family " + family_name(spec.family));
    }
}

double ks_to_equilibrium(const EnsembleSpec& spec, const std::vector<cplx>& points) {
    EquilibriumLaw law = equilibrium_law(spec);
    const int d = power_of(spec);
    std::vector<double> xs;
    xs.reserve(points.size());
    for (auto p : points) xs.push_back(ipow(p, d).real());
    return ks_distance(std::move(xs), [&](double x) { return law.cdf(x); });
}

}  // namespace bandgas
