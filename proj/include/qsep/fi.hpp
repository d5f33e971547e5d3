#pragma once

#include <vector>

#include "qsep/fourier.hpp"
#include "qsep/rng.hpp"
#include "qsep/subset.hpp"

namespace qsep {

/// Parameters of the sampler producing (|psi>, U') pairs: a random complex
/// Gaussian state supported on S with per-amplitude width 1/sqrt(l), and the
/// random set whose inclusion probabilities are 1 - exp(-|beta_z|^2).
struct FiConfig {
    Eigen::Index n_points = 0;   // N
    Eigen::Index support_size = 0;  // l = |S|
    double bernoulli_p = -1.0;   // optional, for sampling S itself

    double sigma() const;        // 1/sqrt(support_size)
    void validate() const;
};

/// Target parameters of the sampled family: the marginal of U' should be
/// k-wise uniform up to delta, while the Fourier mass of psi on U' exceeds
/// 1/2 + gamma.
struct FiParams {
    int k = 1;
    double delta = 0.0;
    double gamma = 0.25;

    void validate() const;
};

struct FiSample {
    ComplexVector psi;           // unnormalized, exactly zero off S
    ComplexVector fourier_amps;  // beta_z = sqrt(N) * qft(psi)[z]
    SubsetOracle u_set;          // U'
};

/// S ~ Bernoulli_p^N: each x in [N] included independently with probability p.
SubsetOracle sample_support_bernoulli(Eigen::Index n_points, double p, Rng& rng);

/// Uniform subset of exactly l elements.
SubsetOracle sample_support_fixed(Eigen::Index n_points, Eigen::Index l, Rng& rng);

/// One draw of (|psi>, beta, U').
FiSample sample_fi(const SubsetOracle& s, const FiConfig& cfg, Rng& rng);

/// Dense N x N matrix QFT^dag Pi_S QFT; entries (1/N) sum_{y in S} e^{i2pi(z-z')y/N}.
/// Hermitian, PSD, trace |S|. Dense construction is capped at N = 4096.
ComplexMatrix build_m(const SubsetOracle& s);

/// Serial reference for build_m, kept for testing the parallel kernel.
ComplexMatrix build_m_serial(const SubsetOracle& s);

/// Minor of QFT^dag Pi_sum_set QFT restricted to rows/columns index_set,
/// materialized directly from the double sum (no N x N intermediate).
ComplexMatrix build_m_minor(const SubsetOracle& sum_set, const std::vector<Eigen::Index>& index_set);

/// Exact avoidance probability tau = Pr[T cap U' = empty] = 1/det(I + (N/l) M^S_T).
/// Also evaluates the dual form 1/det(I + (N/l) M^T_S) and requires agreement
/// within 1e-8 relative.
double tau_exact(const SubsetOracle& s, const SubsetOracle& t, Eigen::Index l);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

/// Monte-Carlo estimate of tau. The default estimator averages the
/// conditional probability exp(-sum_{z in T} |beta_z|^2) over draws of the
/// amplitudes (lower variance); use_indicator = true instead samples U' and
/// counts the raw disjointness indicator, exercising the inclusion step
/// end to end. Deterministic given (master_seed); trials run in parallel.
MonteCarloEstimate tau_monte_carlo(const SubsetOracle& s, const SubsetOracle& t,
                                   const FiConfig& cfg, long trials, uint64_t master_seed,
                                   bool use_indicator = false);

/// Normalized Fourier mass of psi on U': sum_{z in U'} |psi_hat[z]|^2 / ||psi||^2.
double acceptance_stat(const FiSample& sample);

/// Same statistic against a replacement set in place of the sample's own U'.
double acceptance_stat(const FiSample& sample, const SubsetOracle& u);

struct NormConcentrationRow {
    double epsilon = 0.0;
    double exceedance = 0.0;   // empirical Pr[ ||psi||^2 outside [1-eps, 1+eps] ]
    double bound = 0.0;        // 2 exp(-eps^2 l / 8)
    bool pass = false;         // exceedance <= bound (one-sided)
};

std::vector<NormConcentrationRow> norm_concentration_experiment(
    const FiConfig& cfg, const std::vector<double>& epsilons, long trials, uint64_t master_seed);

}  // namespace qsep
