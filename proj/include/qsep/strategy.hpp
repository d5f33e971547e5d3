#pragma once

#include <string>
#include <vector>

#include "qsep/fourier.hpp"
#include "qsep/subset.hpp"

namespace qsep {

/// Register space of a query algorithm: query index (dim N) x response bit
/// (dim 2) x ancilla (dim A). Basis index = (x * 2 + y) * A + z.
struct StrategyRegisters {
    Eigen::Index n_points = 0;
    Eigen::Index ancilla_dim = 1;

    Eigen::Index dim() const { return n_points * 2 * ancilla_dim; }
    void validate() const;
};

constexpr Eigen::Index kMaxStrategyDim = Eigen::Index{1} << 22;

struct UnitaryStep {
    enum class Kind {
        QftQuery,          // QFT on the query register
        InvQftQuery,       // inverse QFT on the query register
        DiffusionQuery,    // 2|u><u| - I about the uniform query state
        AddConstQuery,     // |x> -> |x + c mod N>
        HadamardResponse,  // H on the response bit
        XResponse,         // X on the response bit
        ZResponse,         // Z on the response bit
        DenseQuery,        // arbitrary N x N unitary on the query register
        DenseAncilla,      // arbitrary A x A unitary on the ancilla register
        DenseFull,         // arbitrary dim x dim unitary
    };

    Kind kind = Kind::QftQuery;
    ComplexMatrix matrix;          // DenseQuery / DenseAncilla / DenseFull only
    Eigen::Index add_constant = 0; // AddConstQuery only
};

struct Stage {
    bool is_oracle_call = false;
    int oracle_index = 0;  // position in the oracle list passed at run time
    UnitaryStep unitary;   // meaningful iff !is_oracle_call
};

/// Declarative oracle-query program: an alternating list of unitary steps and
/// oracle calls. Oracle calls act as |x,y,z> -> |x, y xor O(x), z>. The
/// witness selects the initial ancilla basis state; the designated output
/// qubit is the response bit.
struct QueryStrategy {
    StrategyRegisters registers;
    std::vector<Stage> stages;
    Eigen::Index witness = 0;  // initial ancilla basis state

    int num_queries() const;
    int num_queries_to(int oracle_index) const;
    void validate() const;
};

/// Squared query-register amplitude at each oracle call, recorded just before
/// the call is applied.
struct QueryMassProfile {
    std::vector<std::vector<double>> per_query;  // [call][x], each sums to 1
    std::vector<double> totals;                  // sum over calls, per x

    double set_mass(const SubsetOracle& v) const;
};

struct StrategyRun {
    ComplexVector final_state;
    std::vector<double> output_distribution;  // over all basis states
    QueryMassProfile mass;
    double accept_prob = 0.0;  // Pr[response bit = 1]
};

/// Exact dense state-vector run. Oracles are indexed by each stage's
/// oracle_index; all must live on [N].
StrategyRun run_strategy(const QueryStrategy& strategy,
                         const std::vector<SubsetOracle>& oracles);

/// Evolve up to just before the call_ordinal-th call (1-based) to the given
/// oracle, returning the state at that point. Used by the extraction loop.
ComplexVector run_strategy_prefix(const QueryStrategy& strategy,
                                  const std::vector<SubsetOracle>& oracles,
                                  int oracle_index, int call_ordinal);

/// Query-register marginal of a state: m[x] = sum_{y,z} |amp(x,y,z)|^2.
std::vector<double> query_marginal(const StrategyRegisters& regs, const ComplexVector& state);

/// Unitary sending |0> to the uniform superposition over the given query
/// values (a reflection-based completion; columns orthonormal).
ComplexMatrix superposition_prep_matrix(Eigen::Index n_points,
                                        const std::vector<Eigen::Index>& support);

/// JSON serialization of the gate-list format
/// {registers, stages:[{unitary}|{oracle_call}], output_qubit, witness}.
std::string strategy_to_json(const QueryStrategy& strategy);
QueryStrategy strategy_from_json(const std::string& text);

// Built-in strategy library for the experiments.

/// Queries the fixed point x0 once, classically.
QueryStrategy make_classical_prober(Eigen::Index n_points, Eigen::Index x0);

/// Queries the uniform superposition over [N] once.
QueryStrategy make_uniform_prober(Eigen::Index n_points);

/// Grover search: uniform prep, response bit in |->, `iterations` rounds of
/// (oracle, diffusion). Query-register measurement concentrates on members.
QueryStrategy make_grover(Eigen::Index n_points, int iterations);

/// Two-oracle toy verifier: prepares the uniform superposition over a window
/// of query values, queries oracle 0, outputs the response bit.
QueryStrategy make_window_prober(Eigen::Index n_points,
                                 const std::vector<Eigen::Index>& window);

}  // namespace qsep
