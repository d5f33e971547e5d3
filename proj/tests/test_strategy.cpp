#include <cmath>
#include <complex>
#include <numeric>

#include "doctest.h"
#include "qsep/rng.hpp"
#include "qsep/strategy.hpp"

using namespace qsep;

namespace {

QueryStrategy uniform_query_once(Eigen::Index n) {
    return make_uniform_prober(n);
}

}  // namespace

TEST_CASE("register validation") {
    StrategyRegisters ok{8, 2};
    CHECK(ok.dim() == 32);
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS((StrategyRegisters{0, 1}.validate()));
    CHECK_THROWS((StrategyRegisters{8, 0}.validate()));
    // dim cap: 2^21 points x 2 x 2 ancilla overflows 2^22
    CHECK_THROWS((StrategyRegisters{Eigen::Index{1} << 21, 2}.validate()));
}

TEST_CASE("a strategy with no queries ignores the oracle") {
    QueryStrategy s;
    s.registers = {4, 1};
    Stage prep;
    prep.unitary.kind = UnitaryStep::Kind::QftQuery;
    s.stages.push_back(prep);
    CHECK(s.num_queries() == 0);

    StrategyRun a = run_strategy(s, {SubsetOracle(4, {0, 1})});
    StrategyRun b = run_strategy(s, {SubsetOracle(4, {2})});
    CHECK(a.accept_prob == b.accept_prob);
    CHECK((a.final_state - b.final_state).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("classical prober reads out membership of its probe point") {
    for (Eigen::Index x0 : {0, 3, 7}) {
        QueryStrategy s = make_classical_prober(8, x0);
        CHECK(s.num_queries() == 1);
        StrategyRun in = run_strategy(s, {SubsetOracle(8, {x0})});
        StrategyRun out = run_strategy(s, {SubsetOracle(8, {(x0 + 1) % 8})});
        CHECK(in.accept_prob == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.accept_prob == doctest::Approx(0.0).epsilon(1e-12));
        // All query mass sits on the probe point.
        CHECK(in.mass.per_query[0][static_cast<size_t>(x0)] == doctest::Approx(1.0));
    }
}

TEST_CASE("uniform prober accepts with probability |O| / N") {
    QueryStrategy s = uniform_query_once(16);
    for (Eigen::Index card : {0, 4, 16}) {
        SubsetOracle o(16);
        for (Eigen::Index x = 0; x < card; ++x) o.insert(x);
        StrategyRun run = run_strategy(s, {o});
        CHECK(run.accept_prob == doctest::Approx(static_cast<double>(card) / 16.0));
    }
}

TEST_CASE("one-query distinguisher in the phase-kickback model") {
    // N = 2 Deutsch setup: X then H on the response puts it in |->, the
    // oracle phase-flips members, and an inverse QFT on the query register
    // maps constant vs balanced membership patterns to orthogonal outcomes.
    QueryStrategy s;
    s.registers = {2, 1};
    auto push = [&s](UnitaryStep::Kind k) {
        Stage st;
        st.unitary.kind = k;
        s.stages.push_back(st);
    };
    push(UnitaryStep::Kind::XResponse);
    push(UnitaryStep::Kind::HadamardResponse);
    push(UnitaryStep::Kind::QftQuery);
    Stage call;
    call.is_oracle_call = true;
    s.stages.push_back(call);
    push(UnitaryStep::Kind::InvQftQuery);

    auto query_zero_prob = [&s](const SubsetOracle& o) {
        StrategyRun run = run_strategy(s, {o});
        const auto marg = query_marginal(s.registers, run.final_state);
        return marg[0];
    };
    CHECK(query_zero_prob(SubsetOracle(2)) == doctest::Approx(1.0));          // constant 0
    CHECK(query_zero_prob(SubsetOracle::full(2)) == doctest::Approx(1.0));    // constant 1
    CHECK(query_zero_prob(SubsetOracle(2, {1})) == doctest::Approx(0.0));     // balanced
}

TEST_CASE("query mass profile sums to one at each call") {
    QueryStrategy s = make_grover(16, 2);
    StrategyRun run = run_strategy(s, {SubsetOracle(16, {5})});
    CHECK(run.mass.per_query.size() == 2);
    for (const auto& snapshot : run.mass.per_query) {
        const double total = std::accumulate(snapshot.begin(), snapshot.end(), 0.0);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(run.mass.totals.size() == 16);
    const double grand = std::accumulate(run.mass.totals.begin(), run.mass.totals.end(), 0.0);
    CHECK(grand == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(run.mass.set_mass(SubsetOracle::full(16)) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("Grover amplifies the marked item") {
    // N = 16, one marked item: 3 iterations take the success probability
    // to sin^2(7 theta) with theta = asin(1/4), about 0.96.
    QueryStrategy s = make_grover(16, 3);
    StrategyRun run = run_strategy(s, {SubsetOracle(16, {11})});
    const auto marg = query_marginal(s.registers, run.final_state);
    const double theta = std::asin(0.25);
    CHECK(marg[11] == doctest::Approx(std::pow(std::sin(7.0 * theta), 2)).epsilon(1e-9));
}

TEST_CASE("window prober accepts with the window overlap fraction") {
    QueryStrategy s = make_window_prober(16, {0, 1, 2, 3});
    StrategyRun half = run_strategy(s, {SubsetOracle(16, {0, 1, 9})});
    CHECK(half.accept_prob == doctest::Approx(0.5).epsilon(1e-10));
    StrategyRun none = run_strategy(s, {SubsetOracle(16, {8, 9})});
    CHECK(none.accept_prob == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("superposition prep is unitary and hits the target state") {
    const std::vector<Eigen::Index> support = {1, 4, 6};
    ComplexMatrix u = superposition_prep_matrix(8, support);
    CHECK((ComplexMatrix(u.adjoint() * u) - ComplexMatrix::Identity(8, 8))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    ComplexVector e0 = ComplexVector::Zero(8);
    e0(0) = 1.0;
    ComplexVector out = u * e0;
    const double amp = 1.0 / std::sqrt(3.0);
    for (Eigen::Index x = 0; x < 8; ++x) {
        const bool in_support =
            std::find(support.begin(), support.end(), x) != support.end();
        CHECK(std::abs(out(x) - (in_support ? amp : 0.0)) < 1e-12);
    }
}

TEST_CASE("shift gate adds the constant modulo N") {
    QueryStrategy s;
    s.registers = {5, 1};
    Stage st;
    st.unitary.kind = UnitaryStep::Kind::AddConstQuery;
    st.unitary.add_constant = 3;
    s.stages.push_back(st);
    StrategyRun run = run_strategy(s, {});
    const auto marg = query_marginal(s.registers, run.final_state);
    CHECK(marg[3] == doctest::Approx(1.0));
}

TEST_CASE("non-unitary dense step is rejected") {
    QueryStrategy s;
    s.registers = {4, 1};
    Stage st;
    st.unitary.kind = UnitaryStep::Kind::DenseQuery;
    st.unitary.matrix = 2.0 * ComplexMatrix::Identity(4, 4);  // scales the norm
    s.stages.push_back(st);
    CHECK_THROWS((void)run_strategy(s, {}));
}

TEST_CASE("prefix runs stop just before the requested call") {
    QueryStrategy s = make_grover(8, 2);
    SubsetOracle o(8, {2});
    ComplexVector before_first = run_strategy_prefix(s, {o}, 0, 1);
    // Before the first call nothing depends on the oracle: uniform query
    // register with the response in |->.
    const auto marg = query_marginal(s.registers, before_first);
    for (double p : marg) CHECK(p == doctest::Approx(1.0 / 8.0).epsilon(1e-10));

    ComplexVector before_second = run_strategy_prefix(s, {o}, 0, 2);
    CHECK((before_second - before_first).cwiseAbs().maxCoeff() > 0.01);
    CHECK_THROWS((void)run_strategy_prefix(s, {o}, 0, 3));  // only two calls exist
}

TEST_CASE("witness selects the initial ancilla state") {
    QueryStrategy s;
    s.registers = {2, 4};
    s.witness = 3;
    StrategyRun run = run_strategy(s, {});
    // Basis index (x*2 + y)*A + z with x = y = 0, z = witness.
    CHECK(std::abs(run.final_state(3) - 1.0) < 1e-15);
    CHECK(run.output_distribution[3] == doctest::Approx(1.0));
}

TEST_CASE("JSON round-trip preserves behavior and structure") {
    QueryStrategy s = make_grover(8, 2);
    s.witness = 0;
    const std::string text = strategy_to_json(s);
    QueryStrategy back = strategy_from_json(text);
    CHECK(back.registers.n_points == s.registers.n_points);
    CHECK(back.registers.ancilla_dim == s.registers.ancilla_dim);
    CHECK(back.stages.size() == s.stages.size());
    CHECK(back.num_queries() == s.num_queries());

    SubsetOracle o(8, {6});
    StrategyRun a = run_strategy(s, {o});
    StrategyRun b = run_strategy(back, {o});
    CHECK((a.final_state - b.final_state).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("JSON round-trip keeps dense matrices exactly") {
    QueryStrategy s = make_window_prober(8, {1, 2});
    QueryStrategy back = strategy_from_json(strategy_to_json(s));
    StrategyRun a = run_strategy(s, {SubsetOracle(8, {1})});
    StrategyRun b = run_strategy(back, {SubsetOracle(8, {1})});
    CHECK(a.accept_prob == doctest::Approx(b.accept_prob).epsilon(1e-15));
}

TEST_CASE("malformed strategy JSON is rejected") {
    CHECK_THROWS((void)strategy_from_json("{"));
    CHECK_THROWS((void)strategy_from_json(R"({"registers":{"n_points":4}})"));
}
