#pragma once

#include "qsep/distribution.hpp"
#include "qsep/lp.hpp"

namespace qsep {

/// Joint distribution over pairs of {0,1}^m strings, row-major: joint(x, y)
/// with x the first marginal's atom and y the second's.
struct Coupling {
    int n_coords = 0;
    Eigen::MatrixXd joint;  // 2^m x 2^m, nonnegative, sums to 1

    void validate(double tol = 1e-9) const;
    ExplicitDistribution first_marginal() const;
    ExplicitDistribution second_marginal() const;

    /// Per-coordinate disagreement probability Pr[Z0_i != Z1_i].
    std::vector<double> disagreement_probs() const;

    static Coupling identity(const ExplicitDistribution& d);
    static Coupling product(const ExplicitDistribution& a, const ExplicitDistribution& b);
};

struct SubstitutionResult {
    double epsilon = 0.0;
    Coupling witness;
    double duality_gap = 0.0;
    long lp_iterations = 0;
};

/// Substitution distance: the minimum over couplings of the maximum
/// per-coordinate disagreement probability. Solved as an LP over the joint
/// table (4^m variables), certified by the basis duality gap.
SubstitutionResult substitution_distance(const ExplicitDistribution& a,
                                         const ExplicitDistribution& b);

struct ConjectureParams {
    int r = 1;
    int k = 1;
    double zeta = 0.0;
    double eta = 0.0;
};

struct HypothesisRow {
    std::vector<int> t;
    double zero_marginal = 0.0;
    double lower = 0.0;  // 2^{-|T|}
    double upper = 0.0;  // (1+zeta) 2^{-|T|}
    bool within = false;
};

struct ConjectureProbeResult {
    ExplicitDistribution x1;
    double epsilon = 0.0;
    Coupling witness;
    double duality_gap = 0.0;
    bool epsilon_within_eta = false;
    std::vector<HypothesisRow> hypothesis_table;  // all T with |T| <= r
    long hypothesis_violations = 0;
};

/// Nearest k-wise uniform distribution to x0 under substitution distance:
/// the LP fixes the coupling's first marginal to x0, zeroes every parity
/// bias of the second marginal on <= k coordinates, and minimizes the max
/// per-coordinate disagreement. The hypothesis band on x0's zero-marginals
/// is checked first and reported, never enforced.
ConjectureProbeResult conjecture_probe(const ExplicitDistribution& x0,
                                       const ConjectureParams& params);

/// Sample the second string from the coupling conditioned on the first
/// being u_prime. Throws if the conditioning row has zero mass.
SubsetOracle couple_and_substitute(const SubsetOracle& u_prime, const Coupling& coupling,
                                   Rng& rng);

/// JSON form {"m": n_coords, "joint": [[...], ...]} with row-major rows
/// indexed by the first string's atom.
std::string coupling_to_json(const Coupling& c);
Coupling coupling_from_json(const std::string& text);

}  // namespace qsep
