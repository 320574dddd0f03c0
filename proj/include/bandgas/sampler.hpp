#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bandgas/geometry.hpp"

namespace bandgas {

enum class SampleMethod { mcmc, matrix };

std::string sample_method_name(SampleMethod m);
SampleMethod parse_sample_method(const std::string& s);  // throws DomainError

struct SampleDiagnostics {
    double acceptance_rate = 0.0;  // mcmc, post burn-in
    double proposal_scale = 0.0;   // mcmc, after burn-in adaptation
    double matrix_norm = 0.0;      // matrix: Frobenius norm of the sampled matrix
    double eig_residual = 0.0;     // matrix: max |trace - sum of eigenvalues| / norm
    std::string warning;
};

struct SampleCloud {
    std::vector<cplx> points;
    EnsembleSpec spec;
    std::uint64_t seed = 0;
    SampleMethod method = SampleMethod::mcmc;
    SampleDiagnostics diagnostics;
};

struct ChainConfig {
    int sweeps = 2000;
    int burn_in = 1000;
    double proposal_scale = 0.0;  // <= 0: 1/sqrt(N Delta Q_N) at the droplet centre
    double beta = 1.0;            // overrides spec.beta when positive
    bool adapt = true;            // tune the scale towards 40% acceptance during burn-in
    int keep = 1;                 // retained states, evenly spaced after burn-in (last one is the final state)

    void validate() const;  // throws DomainError
};

// H_N = sum_{j != k} log 1/|zeta_j^d - zeta_k^d| + N sum Q_N(zeta_j); d = 1 except chiral_d
double energy(const EnsembleSpec& spec, const std::vector<cplx>& points);
// H(after) - H(before) for moving points[index] to z, O(N)
double energy_delta(const EnsembleSpec& spec, const std::vector<cplx>& points, std::size_t index, cplx z);
// Metropolis rule: accept iff u < exp(-beta * delta)
bool metropolis_accept(double delta, double beta, double u);

double default_proposal_scale(const EnsembleSpec& spec);
// quantile initial configuration, jittered transversally; deterministic in (spec, seed)
std::vector<cplx> initial_configuration(const EnsembleSpec& spec, std::uint64_t seed);

SampleCloud mcmc_sample(const EnsembleSpec& spec, const ChainConfig& chain, std::uint64_t seed);
// retained states of one chain (chain.keep of them)
std::vector<SampleCloud> mcmc_states(const EnsembleSpec& spec, const ChainConfig& chain, std::uint64_t seed);
// independent chains on RNG streams 0..chains-1, run concurrently; identical for any thread count
std::vector<SampleCloud> mcmc_chains(const EnsembleSpec& spec, const ChainConfig& chain, std::uint64_t seed,
                                     int chains);

// eigenvalues of X1 X2^*, X1,2 = sqrt(1 + tau) P +- sqrt(1 - tau) Q, tau = 1 - c^2/N,
// P, Q of size N x (N + nu) with complex Gaussian entries (real and imaginary parts of variance 1/(4N))
SampleCloud matrix_sample_alue(int N, double c, int nu, std::uint64_t seed, const std::string& dump_path = "");
// eigenvalues of s (sqrt((1 + tau)/2) H1 + i sqrt((1 - tau)/2) H2), GUE H1, H2 with entry variance 1/N,
// tau and s fitted to the semi-axes of the droplet
SampleCloud matrix_sample_ague(int N, double c, std::uint64_t seed, const std::string& dump_path = "");

struct AgueCalibration {
    double tau = 0.0;
    double scale = 1.0;
};
AgueCalibration ague_calibration(int N, double c);
AgueCalibration elliptic_calibration(const EnsembleSpec& spec);  // ague, ague_modified
// the same construction for any potential a xi^2 + b eta^2 (ague, ague_modified)
SampleCloud matrix_sample_elliptic(const EnsembleSpec& spec, std::uint64_t seed, const std::string& dump_path = "");

SampleCloud sample(const EnsembleSpec& spec, SampleMethod method, std::uint64_t seed, const ChainConfig& chain = {});

// Kolmogorov-Smirnov distance of the sample to a CDF
template <class F>
double ks_distance(std::vector<double> xs, F&& cdf);

// distance of Re(points) to the equilibrium law of the spec
double ks_to_equilibrium(const EnsembleSpec& spec, const std::vector<cplx>& points);

}  // namespace bandgas

#include <algorithm>
#include <cmath>

template <class F>
double bandgas::ks_distance(std::vector<double> xs, F&& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
    }
    return d;
}
