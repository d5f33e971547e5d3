#include "qsep/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsep/hermitian.hpp"

namespace qsep {

double run_verifier(const SubsetOracle& s, const SubsetOracle& u, const ComplexVector& psi) {
    const Eigen::Index n = psi.size();
    if (n != s.n_points() || n != u.n_points())
        throw std::invalid_argument("run_verifier: dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("run_verifier: state not normalized");

    double p1 = 0.0;
    ComplexVector masked = ComplexVector::Zero(n);
    for (Eigen::Index y = 0; y < n; ++y) {
        if (!s.contains(y)) continue;
        masked(y) = psi(y);
        p1 += std::norm(psi(y));
    }
    if (!(p1 > 0.0)) return 0.0;

    ComplexVector phi_hat = qft(masked / std::sqrt(p1));
    double p2 = 0.0;
    for (Eigen::Index z = 0; z < n; ++z)
        if (u.contains(z)) p2 += std::norm(phi_hat(z));
    return p1 * p2;
}

BbbvReport bbbv_check(const QueryStrategy& strategy, const SubsetOracle& o,
                      const SubsetOracle& o_prime) {
    if (o.n_points() != o_prime.n_points())
        throw std::invalid_argument("bbbv_check: oracle domains differ");

    StrategyRun first = run_strategy(strategy, {o});
    StrategyRun second = run_strategy(strategy, {o_prime});

    BbbvReport rep;
    rep.p_first = first.accept_prob;
    rep.p_second = second.accept_prob;
    rep.difference = std::abs(rep.p_first - rep.p_second);
    rep.mass_on_diff = first.mass.set_mass(o.symmetric_difference(o_prime));
    rep.bound = 4.0 * std::sqrt(static_cast<double>(strategy.num_queries()) * rep.mass_on_diff);
    rep.holds = rep.difference <= rep.bound + 1e-12;
    return rep;
}

KwiseEquivalenceReport kwise_equivalence_check(const QueryStrategy& strategy,
                                               const ExplicitDistribution& oracle_dist) {
    oracle_dist.validate();
    const Eigen::Index n = strategy.registers.n_points;
    if (n > 8) throw std::invalid_argument("kwise_equivalence_check: N must be <= 8");
    if (oracle_dist.n_coords != static_cast<int>(n))
        throw std::invalid_argument("kwise_equivalence_check: distribution lives on wrong N");

    const size_t n_oracles = size_t{1} << n;
    const size_t dim = static_cast<size_t>(strategy.registers.dim());
    std::vector<double> avg_dist(dim, 0.0), avg_uniform(dim, 0.0);
    const double w_uniform = 1.0 / static_cast<double>(n_oracles);
    for (size_t atom = 0; atom < n_oracles; ++atom) {
        StrategyRun run = run_strategy(strategy, {SubsetOracle::from_atom(n, atom)});
        const double w = oracle_dist.probs[atom];
        for (size_t i = 0; i < dim; ++i) {
            avg_dist[i] += w * run.output_distribution[i];
            avg_uniform[i] += w_uniform * run.output_distribution[i];
        }
    }

    KwiseEquivalenceReport rep;
    rep.k = 2 * strategy.num_queries();
    for (size_t i = 0; i < dim; ++i)
        rep.max_entry_diff = std::max(rep.max_entry_diff, std::abs(avg_dist[i] - avg_uniform[i]));
    rep.equal = rep.max_entry_diff <= 1e-10;
    return rep;
}

GenSmallSetReport gen_small_set(const QueryStrategy& strategy,
                                const std::vector<SubsetOracle>& oracles,
                                const SubsetOracle& s, const GenSmallSetConfig& cfg) {
    if (cfg.iterations < 1) throw std::invalid_argument("gen_small_set: iterations must be >= 1");
    const int q_s = strategy.num_queries_to(0);
    if (q_s < 1) throw std::invalid_argument("gen_small_set: strategy never queries oracle 0");

    GenSmallSetReport rep;
    rep.extracted = SubsetOracle(s.n_points());
    for (int j = 0; j < cfg.iterations; ++j) {
        Rng rng = Rng::stream(cfg.seed, static_cast<uint64_t>(j));
        const int call = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(q_s)));
        ComplexVector state = run_strategy_prefix(strategy, oracles, 0, call);
        std::vector<double> marginal = query_marginal(strategy.registers, state);

        double u = rng.next_double();
        Eigen::Index x = strategy.registers.n_points - 1;
        double acc = 0.0;
        for (size_t i = 0; i < marginal.size(); ++i) {
            acc += marginal[i];
            if (u < acc) {
                x = static_cast<Eigen::Index>(i);
                break;
            }
        }
        rep.measured_query_indices.push_back(x);
        if (s.contains(x) && !rep.extracted.contains(x)) {
            rep.extracted.insert(x);
            rep.per_iteration_hit.push_back(1);
        } else {
            rep.per_iteration_hit.push_back(0);
        }
    }
    return rep;
}

PairwiseSmallReport pairwise_small_check(const SubsetOracle& u, const SubsetOracle& s_prime,
                                         double epsilon) {
    const std::vector<Eigen::Index> idx = s_prime.members();
    if (idx.empty()) throw std::invalid_argument("pairwise_small_check: S' must be nonempty");

    ComplexMatrix minor = build_m_minor(u, idx);
    PairwiseSmallReport rep;
    rep.max_eig = max_eigenvalue(minor);
    for (Eigen::Index r = 0; r < minor.rows(); ++r)
        for (Eigen::Index c = 0; c < minor.cols(); ++c) {
            const double ideal = (r == c) ? 0.5 : 0.0;
            rep.epsilon_realized =
                std::max(rep.epsilon_realized, std::abs(minor(r, c) - ideal));
        }
    rep.epsilon = (epsilon >= 0.0) ? epsilon : rep.epsilon_realized;
    rep.bound = 0.5 + static_cast<double>(idx.size()) * rep.epsilon;
    rep.holds = rep.max_eig <= rep.bound + 1e-12;
    return rep;
}

MultiSearchReport multi_search_experiment(const MultiSearchConfig& cfg) {
    if (cfg.k < 1 || cfg.q < cfg.k)
        throw std::invalid_argument("multi_search_experiment: need Q >= K >= 1");
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0))
        throw std::invalid_argument("multi_search_experiment: p must be in [0, 1]");
    if (cfg.trials < 1) throw std::invalid_argument("multi_search_experiment: trials must be >= 1");
    if (cfg.prober == MultiSearchConfig::Prober::Grover &&
        cfg.k * cfg.grover_iterations > cfg.q)
        throw std::invalid_argument("multi_search_experiment: Grover runs exceed query budget");

    std::vector<uint8_t> success(static_cast<size_t>(cfg.trials), 0);
#pragma omp parallel for schedule(static)
    for (long trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = Rng::stream(cfg.seed, static_cast<uint64_t>(trial));
        SubsetOracle s = sample_support_bernoulli(cfg.n_points, cfg.p, rng);
        std::vector<Eigen::Index> found;
        if (cfg.prober == MultiSearchConfig::Prober::Classical) {
            // Q distinct uniform probes; every marked probe is a find.
            std::vector<Eigen::Index> perm(static_cast<size_t>(cfg.n_points));
            for (Eigen::Index i = 0; i < cfg.n_points; ++i) perm[static_cast<size_t>(i)] = i;
            for (int i = 0; i < cfg.q && i < cfg.n_points; ++i) {
                Eigen::Index j = i + static_cast<Eigen::Index>(
                                         rng.next_below(static_cast<uint64_t>(cfg.n_points - i)));
                std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
                if (s.contains(perm[static_cast<size_t>(i)]))
                    found.push_back(perm[static_cast<size_t>(i)]);
            }
        } else {
            QueryStrategy grover = make_grover(cfg.n_points, cfg.grover_iterations);
            for (int run_idx = 0; run_idx < cfg.k; ++run_idx) {
                StrategyRun run = run_strategy(grover, {s});
                std::vector<double> marginal = query_marginal(grover.registers, run.final_state);
                double u = rng.next_double();
                Eigen::Index x = cfg.n_points - 1;
                double acc = 0.0;
                for (size_t i = 0; i < marginal.size(); ++i) {
                    acc += marginal[i];
                    if (u < acc) {
                        x = static_cast<Eigen::Index>(i);
                        break;
                    }
                }
                if (s.contains(x) && std::find(found.begin(), found.end(), x) == found.end())
                    found.push_back(x);
            }
        }
        success[static_cast<size_t>(trial)] = found.size() >= static_cast<size_t>(cfg.k) ? 1 : 0;
    }

    long hits = 0;
    for (uint8_t v : success) hits += v;

    MultiSearchReport rep;
    rep.success = static_cast<double>(hits) / static_cast<double>(cfg.trials);
    rep.std_error =
        std::sqrt(std::max(0.0, rep.success * (1.0 - rep.success) / static_cast<double>(cfg.trials)));
    const double ratio = static_cast<double>(cfg.q) / static_cast<double>(cfg.k);
    rep.bound = std::pow(48.0 * std::exp(1.0) * cfg.p * ratio * ratio, cfg.k);
    if (cfg.k == 1 && cfg.prober == MultiSearchConfig::Prober::Classical)
        rep.classical_closed_form = 1.0 - std::pow(1.0 - cfg.p, cfg.q);
    rep.holds = rep.success <= rep.bound;
    return rep;
}

ExtractionReport extraction_soundness_experiment(const ExtractionConfig& cfg) {
    if (cfg.window_size < 1 || cfg.window_size > cfg.support_size)
        throw std::invalid_argument("extraction: window must fit inside S");
    Rng rng = Rng::stream(cfg.seed, 0);
    SubsetOracle s = sample_support_fixed(cfg.n_points, cfg.support_size, rng);

    // Window: a uniform subset of S, picked by partial shuffle of its members.
    std::vector<Eigen::Index> pool = s.members();
    std::vector<Eigen::Index> window;
    for (int i = 0; i < cfg.window_size; ++i) {
        size_t j = static_cast<size_t>(i) +
                   static_cast<size_t>(rng.next_below(pool.size() - static_cast<size_t>(i)));
        std::swap(pool[static_cast<size_t>(i)], pool[j]);
        window.push_back(pool[static_cast<size_t>(i)]);
    }

    QueryStrategy vstar = make_window_prober(cfg.n_points, window);
    GenSmallSetConfig gconf;
    gconf.iterations = cfg.iterations;
    gconf.seed = cfg.seed + 0x9e3779b97f4a7c15ULL;
    GenSmallSetReport extraction = gen_small_set(vstar, {s}, s, gconf);

    ExtractionReport rep;
    rep.p_true = run_strategy(vstar, {s}).accept_prob;
    rep.p_extracted = run_strategy(vstar, {extraction.extracted}).accept_prob;
    rep.gap = std::abs(rep.p_true - rep.p_extracted);
    rep.k_measured = extraction.extracted.cardinality();
    const double q_calls = static_cast<double>(vstar.num_queries());
    rep.bound = 4.0 * std::pow(q_calls * q_calls * q_calls *
                                   static_cast<double>(rep.k_measured) /
                                   static_cast<double>(cfg.iterations),
                               0.25);
    rep.holds = rep.gap <= rep.bound;
    return rep;
}

}  // namespace qsep
