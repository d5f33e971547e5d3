#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsep/fi.hpp"
#include "qsep/rng.hpp"

namespace qsep {

constexpr int kMaxHistogramCoords = 14;  // 2^m probability table
constexpr int kMaxCouplingCoords = 7;    // 4^m LP variables

/// Full probability table over {0,1}^m. Atom x encodes coordinate i as bit i.
struct ExplicitDistribution {
    int n_coords = 0;
    std::vector<double> probs;  // size 2^m, nonnegative, sums to 1

    static ExplicitDistribution uniform(int m);
    static ExplicitDistribution point_mass(int m, uint64_t atom);

    void validate() const;
    size_t n_atoms() const { return size_t{1} << n_coords; }
};

/// Pr[x_i = 0 for all i in T].
double marginal_zero_prob(const ExplicitDistribution& d, const std::vector<int>& t);

/// Parity bias E[(-1)^{xor of x_i, i in T}] for the coordinate mask.
/// All biases at once via the Walsh-Hadamard transform of the table.
std::vector<double> parity_biases(const ExplicitDistribution& d);

/// True iff every parity bias on nonempty T with |T| <= k has |bias| <= tol.
/// Equivalent to all <= k-coordinate marginals being exactly uniform.
bool is_kwise_uniform(const ExplicitDistribution& d, int k, double tol);

/// Largest |bias| over nonempty T with |T| <= k.
double max_parity_bias(const ExplicitDistribution& d, int k);

/// Normalized histogram of U' bit-patterns over `trials` draws of the
/// sampler at N = m coordinates. Deterministic given master_seed.
ExplicitDistribution empirical_u_distribution(const SubsetOracle& s, const FiConfig& cfg,
                                              long trials, uint64_t master_seed);

/// JSON form {"m": n_coords, "probs": [...]}.
std::string distribution_to_json(const ExplicitDistribution& d);
ExplicitDistribution distribution_from_json(const std::string& text);

}  // namespace qsep
