#include "qsep/distribution.hpp"

#include <bit>
#include <cmath>
#include <omp.h>
#include <stdexcept>

#include "json.hpp"

namespace qsep {

ExplicitDistribution ExplicitDistribution::uniform(int m) {
    ExplicitDistribution d;
    d.n_coords = m;
    d.probs.assign(size_t{1} << m, 1.0 / static_cast<double>(size_t{1} << m));
    d.validate();
    return d;
}

ExplicitDistribution ExplicitDistribution::point_mass(int m, uint64_t atom) {
    ExplicitDistribution d;
    d.n_coords = m;
    d.probs.assign(size_t{1} << m, 0.0);
    d.probs.at(atom) = 1.0;
    d.validate();
    return d;
}

void ExplicitDistribution::validate() const {
    if (n_coords < 1 || n_coords > kMaxHistogramCoords)
        throw std::invalid_argument("ExplicitDistribution: n_coords out of range [1, 14]");
    if (probs.size() != (size_t{1} << n_coords))
        throw std::invalid_argument("ExplicitDistribution: table size != 2^m");
    double sum = 0.0;
    for (double p : probs) {
        if (p < -1e-12) throw std::invalid_argument("ExplicitDistribution: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("ExplicitDistribution: probabilities do not sum to 1");
}

double marginal_zero_prob(const ExplicitDistribution& d, const std::vector<int>& t) {
    uint64_t mask = 0;
    for (int i : t) {
        if (i < 0 || i >= d.n_coords) throw std::out_of_range("marginal_zero_prob: bad index");
        mask |= (uint64_t{1} << i);
    }
    double acc = 0.0;
    for (size_t x = 0; x < d.probs.size(); ++x)
        if ((x & mask) == 0) acc += d.probs[x];
    return acc;
}

std::vector<double> parity_biases(const ExplicitDistribution& d) {
    // In-place Walsh-Hadamard transform; entry T is E[(-1)^{<T,x>}].
    std::vector<double> w = d.probs;
    const size_t n = w.size();
    for (size_t len = 1; len < n; len <<= 1) {
        for (size_t i = 0; i < n; i += len << 1) {
            for (size_t j = i; j < i + len; ++j) {
                double a = w[j], b = w[j + len];
                w[j] = a + b;
                w[j + len] = a - b;
            }
        }
    }
    return w;
}

double max_parity_bias(const ExplicitDistribution& d, int k) {
    if (k < 1 || k > d.n_coords) throw std::invalid_argument("max_parity_bias: bad k");
    std::vector<double> w = parity_biases(d);
    double worst = 0.0;
    for (size_t t = 1; t < w.size(); ++t)
        if (std::popcount(t) <= k) worst = std::max(worst, std::abs(w[t]));
    return worst;
}

bool is_kwise_uniform(const ExplicitDistribution& d, int k, double tol) {
    return max_parity_bias(d, k) <= tol;
}

ExplicitDistribution empirical_u_distribution(const SubsetOracle& s, const FiConfig& cfg,
                                              long trials, uint64_t master_seed) {
    cfg.validate();
    if (cfg.n_points > kMaxHistogramCoords)
        throw std::invalid_argument("empirical_u_distribution: N exceeds histogram cap 14");
    if (trials < 100000)
        throw std::invalid_argument("empirical_u_distribution: trials must be >= 1e5");

    const size_t n_atoms = size_t{1} << cfg.n_points;
    const int n_threads = omp_get_max_threads();
    std::vector<std::vector<long>> counts(static_cast<size_t>(n_threads),
                                          std::vector<long>(n_atoms, 0));
#pragma omp parallel for schedule(static)
    for (long trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(master_seed, static_cast<uint64_t>(trial));
        FiSample sample = sample_fi(s, cfg, rng);
        counts[static_cast<size_t>(omp_get_thread_num())][sample.u_set.as_atom()]++;
    }

    ExplicitDistribution d;
    d.n_coords = static_cast<int>(cfg.n_points);
    d.probs.assign(n_atoms, 0.0);
    for (const auto& c : counts)
        for (size_t a = 0; a < n_atoms; ++a)
            d.probs[a] += static_cast<double>(c[a]) / static_cast<double>(trials);
    d.validate();
    return d;
}

std::string distribution_to_json(const ExplicitDistribution& d) {
    d.validate();
    nlohmann::json j;
    j["m"] = d.n_coords;
    j["probs"] = d.probs;
    return j.dump(2);
}

ExplicitDistribution distribution_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExplicitDistribution d;
    d.n_coords = j.at("m").get<int>();
    d.probs = j.at("probs").get<std::vector<double>>();
    d.validate();
    return d;
}

}  // namespace qsep
