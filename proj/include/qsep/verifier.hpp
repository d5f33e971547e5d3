#pragma once

#include "qsep/distribution.hpp"
#include "qsep/fi.hpp"
#include "qsep/strategy.hpp"

namespace qsep {

/// Two-step verifier: measure membership in S, then Fourier-transform the
/// post-measurement state and measure membership in U. Returns the exact
/// joint acceptance probability p1 * p2; 0 if psi has no mass on S.
double run_verifier(const SubsetOracle& s, const SubsetOracle& u, const ComplexVector& psi);

struct BbbvReport {
    double p_first = 0.0;       // Pr[accept] against O
    double p_second = 0.0;      // Pr[accept] against O'
    double difference = 0.0;
    double mass_on_diff = 0.0;  // query mass on the symmetric difference, vs O
    double bound = 0.0;         // 4 sqrt(q * mass)
    bool holds = false;
};

/// Exact acceptance gap between two oracles, checked against the query-mass
/// bound 4 sqrt(q M_V) with V the symmetric difference.
BbbvReport bbbv_check(const QueryStrategy& strategy, const SubsetOracle& o,
                      const SubsetOracle& o_prime);

struct KwiseEquivalenceReport {
    int k = 0;  // 2q
    double max_entry_diff = 0.0;
    bool equal = false;  // within 1e-10
};

/// Averages the exact output distribution of a q-query strategy over all 2^N
/// oracles weighted by oracle_dist, and compares entrywise against the
/// average under the uniform oracle distribution. Equality is guaranteed
/// whenever oracle_dist is 2q-wise uniform. Requires N <= 8.
KwiseEquivalenceReport kwise_equivalence_check(const QueryStrategy& strategy,
                                               const ExplicitDistribution& oracle_dist);

struct GenSmallSetConfig {
    int iterations = 1;  // v
    uint64_t seed = 0;
};

struct GenSmallSetReport {
    SubsetOracle extracted;                 // S'
    std::vector<int> per_iteration_hit;     // 1 iff a new element of S was added
    std::vector<Eigen::Index> measured_query_indices;
};

/// Extraction loop: v times, run the strategy (against oracle 0 = S plus any
/// further oracles) up to a uniformly chosen S-query, measure the query
/// register, and keep the outcome if it is a not-yet-seen member of S.
GenSmallSetReport gen_small_set(const QueryStrategy& strategy,
                                const std::vector<SubsetOracle>& oracles,
                                const SubsetOracle& s, const GenSmallSetConfig& cfg);

struct PairwiseSmallReport {
    double max_eig = 0.0;       // max over phi on S' of <phi_hat| Pi_U |phi_hat>
    double epsilon = 0.0;       // entry-deviation parameter used in the bound
    double epsilon_realized = 0.0;  // max deviation of the minor from (1/2) I
    double bound = 0.0;         // 1/2 + |S'| * epsilon
    bool holds = false;
};

/// Top eigenvalue of the M^U minor on S', against the Gershgorin-style bound
/// 1/2 + |S'| eps. Pass epsilon < 0 to use the realized entry deviation.
PairwiseSmallReport pairwise_small_check(const SubsetOracle& u, const SubsetOracle& s_prime,
                                         double epsilon);

struct MultiSearchConfig {
    enum class Prober { Classical, Grover };
    Prober prober = Prober::Classical;
    double p = 0.0;          // marked density, S ~ Bernoulli_p^N
    Eigen::Index n_points = 0;
    int k = 1;               // distinct marked items required
    int q = 1;               // query budget
    long trials = 10000;
    uint64_t seed = 0;
    int grover_iterations = 0;  // oracle calls per Grover run (k runs total)
};

struct MultiSearchReport {
    double success = 0.0;
    double std_error = 0.0;
    double bound = 0.0;           // (48 e p (Q/K)^2)^K
    double classical_closed_form = -1.0;  // 1 - (1-p)^Q when K = 1
    bool holds = false;
};

/// Empirical success frequency of finding K distinct marked items with at
/// most Q queries, against the multi-point search bound.
MultiSearchReport multi_search_experiment(const MultiSearchConfig& cfg);

struct ExtractionConfig {
    Eigen::Index n_points = 64;
    Eigen::Index support_size = 16;  // |S|
    int window_size = 8;             // query support of the toy verifier
    int iterations = 32;             // v
    uint64_t seed = 0;
};

struct ExtractionReport {
    double p_true = 0.0;      // Pr[accept] with the real S
    double p_extracted = 0.0; // Pr[accept] with S replaced by S'
    double gap = 0.0;
    Eigen::Index k_measured = 0;  // |S'|
    double bound = 0.0;           // 4 (Q^3 K / v)^{1/4}
    bool holds = false;
};

/// Full pipeline on one seed: sample S and a query window inside it, extract
/// S' with gen_small_set, rerun the verifier with S' in place of S, and
/// compare the acceptance gap to the extraction bound.
ExtractionReport extraction_soundness_experiment(const ExtractionConfig& cfg);

}  // namespace qsep
