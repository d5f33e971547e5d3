#include <bit>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "qsep/verifier.hpp"

using namespace qsep;

TEST_CASE("two-step verifier on hand-computed states") {
    // psi = |0> at N = 4: surviving the S measurement gives |0>, whose
    // transform is uniform, so the second step accepts with |U| / 4.
    ComplexVector e0 = ComplexVector::Zero(4);
    e0(0) = 1.0;
    CHECK(run_verifier(SubsetOracle(4, {0}), SubsetOracle(4, {1, 2}), e0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(run_verifier(SubsetOracle(4, {0}), SubsetOracle::full(4), e0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // No mass on S: rejected at the first step.
    CHECK(run_verifier(SubsetOracle(4, {2}), SubsetOracle::full(4), e0) == 0.0);
    // Partial mass on S: p1 = 1/2, then renormalized |0> again.
    ComplexVector mixed = ComplexVector::Zero(4);
    mixed(0) = mixed(2) = 1.0 / std::sqrt(2.0);
    CHECK(run_verifier(SubsetOracle(4, {0}), SubsetOracle(4, {3}), mixed) ==
          doctest::Approx(0.5 * 0.25).epsilon(1e-12));
}

TEST_CASE("verifier rejects unnormalized input") {
    ComplexVector big = ComplexVector::Constant(4, 1.0);
    CHECK_THROWS((void)run_verifier(SubsetOracle(4, {0}), SubsetOracle(4, {0}), big));
}

TEST_CASE("verifier agrees with the sampler-side acceptance statistic") {
    Rng rng(91);
    FiConfig cfg;
    cfg.n_points = 32;
    cfg.support_size = 8;
    SubsetOracle s = sample_support_fixed(32, 8, rng);
    for (int rep = 0; rep < 10; ++rep) {
        FiSample sample = sample_fi(s, cfg, rng);
        ComplexVector normalized = sample.psi / sample.psi.norm();
        // psi lives exactly on S, so p1 = 1 and the joint probability equals
        // the Fourier-mass statistic.
        CHECK(std::abs(run_verifier(s, sample.u_set, normalized) -
                       acceptance_stat(sample)) <= 1e-12);
    }
}

TEST_CASE("acceptance-gap bound: identical oracles and zero mass overlap") {
    QueryStrategy grover = make_grover(16, 2);
    SubsetOracle o(16, {3, 7});
    BbbvReport same = bbbv_check(grover, o, o);
    CHECK(same.difference == 0.0);
    CHECK(same.mass_on_diff == 0.0);
    CHECK(same.holds);

    // A classical probe of point 0 puts no mass on a difference at point 9.
    QueryStrategy probe = make_classical_prober(16, 0);
    SubsetOracle a(16, {0});
    SubsetOracle b(16, {0, 9});
    BbbvReport disjoint = bbbv_check(probe, a, b);
    CHECK(disjoint.mass_on_diff == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(disjoint.difference <= 1e-12);
    CHECK(disjoint.holds);
}

TEST_CASE("acceptance-gap bound on a sensitive instance") {
    // The classical prober flips its answer completely when the probed point
    // moves across the difference set: gap 1, mass 1, bound 4.
    QueryStrategy probe = make_classical_prober(8, 5);
    BbbvReport rep = bbbv_check(probe, SubsetOracle(8, {5}), SubsetOracle(8));
    CHECK(rep.difference == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.mass_on_diff == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.bound == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rep.holds);
}

TEST_CASE("zero-query strategies are blind to the oracle distribution") {
    QueryStrategy s;
    s.registers = {4, 1};
    Stage prep;
    prep.unitary.kind = UnitaryStep::Kind::QftQuery;
    s.stages.push_back(prep);
    KwiseEquivalenceReport rep =
        kwise_equivalence_check(s, ExplicitDistribution::point_mass(4, 0b0101));
    CHECK(rep.k == 0);
    CHECK(rep.max_entry_diff <= 1e-15);
    CHECK(rep.equal);
}

TEST_CASE("one query cannot see past a 2-wise uniform oracle distribution") {
    // Fourier sandwich around the call: the output distribution mixes oracle
    // values at pairs of points, so it is sensitive to 2-wise structure.
    QueryStrategy s;
    s.registers = {4, 1};
    Stage prep;
    prep.unitary.kind = UnitaryStep::Kind::QftQuery;
    s.stages.push_back(prep);
    Stage call;
    call.is_oracle_call = true;
    s.stages.push_back(call);
    Stage unprep;
    unprep.unitary.kind = UnitaryStep::Kind::InvQftQuery;
    s.stages.push_back(unprep);
    // Even-parity codewords of {0,1}^4 are 3-wise uniform.
    ExplicitDistribution parity;
    parity.n_coords = 4;
    parity.probs.assign(16, 0.0);
    for (uint64_t x = 0; x < 16; ++x)
        if (std::popcount(x) % 2 == 0) parity.probs[x] = 1.0 / 8.0;
    KwiseEquivalenceReport good = kwise_equivalence_check(s, parity);
    CHECK(good.k == 2);
    CHECK(good.equal);

    // All-or-nothing oracles are only 1-wise uniform and are distinguishable.
    ExplicitDistribution bad;
    bad.n_coords = 4;
    bad.probs.assign(16, 0.0);
    bad.probs[0] = bad.probs[15] = 0.5;
    CHECK_FALSE(kwise_equivalence_check(s, bad).equal);
}

TEST_CASE("extraction loop recovers the support queried uniformly") {
    // A uniform prober spreads mass evenly, so with enough iterations the
    // extracted set converges to all of S.
    QueryStrategy s = make_uniform_prober(16);
    SubsetOracle support(16, {1, 5, 6, 12});
    GenSmallSetConfig cfg;
    cfg.iterations = 64;
    cfg.seed = 92;
    GenSmallSetReport rep = gen_small_set(s, {support}, support, cfg);
    CHECK(rep.extracted == support);
    CHECK(rep.per_iteration_hit.size() == 64);
    CHECK(rep.measured_query_indices.size() == 64);
}

TEST_CASE("extraction of a fixed classical probe finds exactly that point") {
    QueryStrategy s = make_classical_prober(16, 6);
    SubsetOracle support(16, {2, 6, 9});
    GenSmallSetConfig cfg;
    cfg.iterations = 8;
    cfg.seed = 93;
    GenSmallSetReport rep = gen_small_set(s, {support}, support, cfg);
    CHECK(rep.extracted == SubsetOracle(16, {6}));
    for (Eigen::Index x : rep.measured_query_indices) CHECK(x == 6);
}

TEST_CASE("extraction with an empty support extracts nothing") {
    QueryStrategy s = make_uniform_prober(8);
    GenSmallSetConfig cfg;
    cfg.iterations = 4;
    cfg.seed = 94;
    GenSmallSetReport rep = gen_small_set(s, {SubsetOracle(8)}, SubsetOracle(8), cfg);
    CHECK(rep.extracted.cardinality() == 0);
}

TEST_CASE("extraction rejects strategies that never query the support oracle") {
    QueryStrategy s;
    s.registers = {8, 1};
    Stage prep;
    prep.unitary.kind = UnitaryStep::Kind::QftQuery;
    s.stages.push_back(prep);
    GenSmallSetConfig cfg;
    cfg.iterations = 2;
    CHECK_THROWS((void)gen_small_set(s, {SubsetOracle(8, {1})}, SubsetOracle(8, {1}), cfg));
}

TEST_CASE("extraction yield grows with the iteration budget") {
    // Average |S'| over reruns is monotone in v up to statistical noise.
    QueryStrategy s = make_uniform_prober(16);
    SubsetOracle support(16, {0, 3, 7, 11, 13});
    auto mean_yield = [&](int v, uint64_t base_seed) {
        const int reps = 1000;
        double total = 0.0;
        for (int i = 0; i < reps; ++i) {
            GenSmallSetConfig cfg;
            cfg.iterations = v;
            cfg.seed = base_seed + static_cast<uint64_t>(i);
            total += static_cast<double>(
                gen_small_set(s, {support}, support, cfg).extracted.cardinality());
        }
        return total / reps;
    };
    const double y2 = mean_yield(2, 95000);
    const double y8 = mean_yield(8, 96000);
    const double y32 = mean_yield(32, 97000);
    // Allow two standard errors of slack (|S'| <= 5, so se < 5/sqrt(1000)).
    const double slack = 2.0 * 5.0 / std::sqrt(1000.0);
    CHECK(y8 >= y2 - slack);
    CHECK(y32 >= y8 - slack);
    CHECK(y32 > y2);  // the trend itself is large compared to the noise
}

TEST_CASE("pairwise minor bound: extreme membership sets") {
    SubsetOracle s_prime(16, {2, 5, 11});
    PairwiseSmallReport all = pairwise_small_check(SubsetOracle::full(16), s_prime, -1.0);
    CHECK(all.max_eig == doctest::Approx(1.0).epsilon(1e-10));
    PairwiseSmallReport none = pairwise_small_check(SubsetOracle(16), s_prime, -1.0);
    CHECK(none.max_eig == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(none.holds);
}

TEST_CASE("pairwise minor bound holds with the realized deviation") {
    Rng rng(98);
    for (int rep = 0; rep < 20; ++rep) {
        SubsetOracle u = sample_support_bernoulli(128, 0.5, rng);
        SubsetOracle s_prime = sample_support_fixed(128, 4, rng);
        PairwiseSmallReport report = pairwise_small_check(u, s_prime, -1.0);
        CHECK(report.bound == doctest::Approx(0.5 + 4.0 * report.epsilon_realized));
        CHECK(report.max_eig <= report.bound + 1e-10);
        CHECK(report.holds);
    }
}

TEST_CASE("multi-point search: classical closed form and edge cases") {
    MultiSearchConfig cfg;
    cfg.prober = MultiSearchConfig::Prober::Classical;
    cfg.n_points = 64;
    cfg.p = 1.0 / 16.0;
    cfg.k = 1;
    cfg.q = 4;
    cfg.trials = 20000;
    cfg.seed = 99;
    MultiSearchReport rep = multi_search_experiment(cfg);
    CHECK(rep.classical_closed_form == doctest::Approx(1.0 - std::pow(1.0 - cfg.p, 4)));
    CHECK(std::abs(rep.success - rep.classical_closed_form) <= 3.0 * rep.std_error + 1e-9);
    CHECK(rep.holds);

    cfg.p = 0.0;
    cfg.trials = 2000;
    MultiSearchReport empty = multi_search_experiment(cfg);
    CHECK(empty.success == 0.0);
    CHECK(empty.holds);
}

TEST_CASE("multi-point search with Grover runs stays under the bound") {
    MultiSearchConfig cfg;
    cfg.prober = MultiSearchConfig::Prober::Grover;
    cfg.n_points = 64;
    cfg.p = 1.0 / 16.0;
    cfg.k = 2;
    cfg.q = 8;
    cfg.grover_iterations = 3;
    cfg.trials = 2000;
    cfg.seed = 100;
    MultiSearchReport rep = multi_search_experiment(cfg);
    CHECK(rep.success >= 0.0);
    CHECK(rep.success <= 1.0);
    CHECK(rep.holds);
}

TEST_CASE("end-to-end extraction soundness on default parameters") {
    ExtractionConfig cfg;
    cfg.seed = 101;
    ExtractionReport rep = extraction_soundness_experiment(cfg);
    CHECK(rep.p_true == doctest::Approx(1.0).epsilon(1e-10));  // window inside S
    CHECK(rep.gap == doctest::Approx(std::abs(rep.p_true - rep.p_extracted)));
    CHECK(rep.k_measured >= 0);
    CHECK(rep.k_measured <= cfg.iterations);
    CHECK(rep.holds);
}
