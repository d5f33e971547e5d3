#include "qsep/strategy.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "json.hpp"

namespace qsep {

namespace {

constexpr double kNormTol = 1e-10;

Eigen::Index state_index(const StrategyRegisters& regs, Eigen::Index x, Eigen::Index y,
                         Eigen::Index z) {
    return (x * 2 + y) * regs.ancilla_dim + z;
}

void apply_query_transform(const StrategyRegisters& regs, ComplexVector& state,
                           const std::function<ComplexVector(const ComplexVector&)>& f) {
    const Eigen::Index n = regs.n_points, a = regs.ancilla_dim;
    ComplexVector col(n);
    for (Eigen::Index y = 0; y < 2; ++y)
        for (Eigen::Index z = 0; z < a; ++z) {
            for (Eigen::Index x = 0; x < n; ++x) col(x) = state(state_index(regs, x, y, z));
            ComplexVector out = f(col);
            for (Eigen::Index x = 0; x < n; ++x) state(state_index(regs, x, y, z)) = out(x);
        }
}

void apply_unitary(const StrategyRegisters& regs, const UnitaryStep& u, ComplexVector& state) {
    const Eigen::Index n = regs.n_points, a = regs.ancilla_dim;
    switch (u.kind) {
        case UnitaryStep::Kind::QftQuery:
            apply_query_transform(regs, state, [](const ComplexVector& v) { return qft(v); });
            break;
        case UnitaryStep::Kind::InvQftQuery:
            apply_query_transform(regs, state,
                                  [](const ComplexVector& v) { return inverse_qft(v); });
            break;
        case UnitaryStep::Kind::DiffusionQuery:
            apply_query_transform(regs, state, [n](const ComplexVector& v) {
                const std::complex<double> avg = v.sum() / static_cast<double>(n);
                return ComplexVector(2.0 * avg * ComplexVector::Ones(n) - v);
            });
            break;
        case UnitaryStep::Kind::AddConstQuery: {
            const Eigen::Index c = ((u.add_constant % n) + n) % n;
            ComplexVector next(state.size());
            for (Eigen::Index x = 0; x < n; ++x) {
                const Eigen::Index xp = (x + c) % n;
                for (Eigen::Index y = 0; y < 2; ++y)
                    for (Eigen::Index z = 0; z < a; ++z)
                        next(state_index(regs, xp, y, z)) = state(state_index(regs, x, y, z));
            }
            state = next;
            break;
        }
        case UnitaryStep::Kind::HadamardResponse: {
            const double r = 1.0 / std::sqrt(2.0);
            for (Eigen::Index x = 0; x < n; ++x)
                for (Eigen::Index z = 0; z < a; ++z) {
                    const Eigen::Index i0 = state_index(regs, x, 0, z);
                    const Eigen::Index i1 = state_index(regs, x, 1, z);
                    const std::complex<double> s0 = state(i0), s1 = state(i1);
                    state(i0) = r * (s0 + s1);
                    state(i1) = r * (s0 - s1);
                }
            break;
        }
        case UnitaryStep::Kind::XResponse:
            for (Eigen::Index x = 0; x < n; ++x)
                for (Eigen::Index z = 0; z < a; ++z)
                    std::swap(state(state_index(regs, x, 0, z)), state(state_index(regs, x, 1, z)));
            break;
        case UnitaryStep::Kind::ZResponse:
            for (Eigen::Index x = 0; x < n; ++x)
                for (Eigen::Index z = 0; z < a; ++z)
                    state(state_index(regs, x, 1, z)) = -state(state_index(regs, x, 1, z));
            break;
        case UnitaryStep::Kind::DenseQuery:
            if (u.matrix.rows() != n || u.matrix.cols() != n)
                throw std::invalid_argument("strategy: dense query matrix size != N");
            apply_query_transform(regs, state, [&u](const ComplexVector& v) {
                return ComplexVector(u.matrix * v);
            });
            break;
        case UnitaryStep::Kind::DenseAncilla: {
            if (u.matrix.rows() != a || u.matrix.cols() != a)
                throw std::invalid_argument("strategy: dense ancilla matrix size != A");
            ComplexVector col(a);
            for (Eigen::Index x = 0; x < n; ++x)
                for (Eigen::Index y = 0; y < 2; ++y) {
                    const Eigen::Index base = state_index(regs, x, y, 0);
                    col = state.segment(base, a);
                    state.segment(base, a) = u.matrix * col;
                }
            break;
        }
        case UnitaryStep::Kind::DenseFull:
            if (u.matrix.rows() != state.size() || u.matrix.cols() != state.size())
                throw std::invalid_argument("strategy: dense full matrix size != dim");
            state = u.matrix * state;
            break;
    }
    if (std::abs(state.squaredNorm() - 1.0) > kNormTol * 100)
        throw std::runtime_error("strategy: unitary step broke normalization");
}

void apply_oracle(const StrategyRegisters& regs, const SubsetOracle& oracle,
                  ComplexVector& state) {
    const Eigen::Index n = regs.n_points, a = regs.ancilla_dim;
    for (Eigen::Index x = 0; x < n; ++x) {
        if (!oracle.contains(x)) continue;
        for (Eigen::Index z = 0; z < a; ++z)
            std::swap(state(state_index(regs, x, 0, z)), state(state_index(regs, x, 1, z)));
    }
}

}  // namespace

void StrategyRegisters::validate() const {
    if (n_points < 1) throw std::invalid_argument("StrategyRegisters: N must be >= 1");
    if (ancilla_dim < 1) throw std::invalid_argument("StrategyRegisters: A must be >= 1");
    if (dim() > kMaxStrategyDim)
        throw std::invalid_argument("StrategyRegisters: simulated dimension exceeds 2^22");
}

int QueryStrategy::num_queries() const {
    int q = 0;
    for (const Stage& s : stages) q += s.is_oracle_call ? 1 : 0;
    return q;
}

int QueryStrategy::num_queries_to(int oracle_index) const {
    int q = 0;
    for (const Stage& s : stages)
        if (s.is_oracle_call && s.oracle_index == oracle_index) ++q;
    return q;
}

void QueryStrategy::validate() const {
    registers.validate();
    if (witness < 0 || witness >= registers.ancilla_dim)
        throw std::invalid_argument("QueryStrategy: witness outside ancilla range");
    for (const Stage& s : stages)
        if (s.is_oracle_call && s.oracle_index < 0)
            throw std::invalid_argument("QueryStrategy: negative oracle index");
}

double QueryMassProfile::set_mass(const SubsetOracle& v) const {
    double acc = 0.0;
    for (Eigen::Index x : v.members()) acc += totals[static_cast<size_t>(x)];
    return acc;
}

std::vector<double> query_marginal(const StrategyRegisters& regs, const ComplexVector& state) {
    std::vector<double> m(static_cast<size_t>(regs.n_points), 0.0);
    for (Eigen::Index x = 0; x < regs.n_points; ++x)
        for (Eigen::Index y = 0; y < 2; ++y)
            for (Eigen::Index z = 0; z < regs.ancilla_dim; ++z)
                m[static_cast<size_t>(x)] += std::norm(state(state_index(regs, x, y, z)));
    return m;
}

namespace {

ComplexVector initial_state(const QueryStrategy& strategy) {
    ComplexVector state = ComplexVector::Zero(strategy.registers.dim());
    state(state_index(strategy.registers, 0, 0, strategy.witness)) = 1.0;
    return state;
}

void check_oracles(const QueryStrategy& strategy, const std::vector<SubsetOracle>& oracles) {
    for (const Stage& s : strategy.stages) {
        if (!s.is_oracle_call) continue;
        if (static_cast<size_t>(s.oracle_index) >= oracles.size())
            throw std::invalid_argument("run_strategy: stage references a missing oracle");
        if (oracles[static_cast<size_t>(s.oracle_index)].n_points() != strategy.registers.n_points)
            throw std::invalid_argument("run_strategy: oracle domain != query register size");
    }
}

}  // namespace

StrategyRun run_strategy(const QueryStrategy& strategy, const std::vector<SubsetOracle>& oracles) {
    strategy.validate();
    check_oracles(strategy, oracles);

    StrategyRun run;
    ComplexVector state = initial_state(strategy);
    run.mass.totals.assign(static_cast<size_t>(strategy.registers.n_points), 0.0);

    for (const Stage& s : strategy.stages) {
        if (s.is_oracle_call) {
            std::vector<double> m = query_marginal(strategy.registers, state);
            for (size_t x = 0; x < m.size(); ++x) run.mass.totals[x] += m[x];
            run.mass.per_query.push_back(std::move(m));
            apply_oracle(strategy.registers, oracles[static_cast<size_t>(s.oracle_index)], state);
        } else {
            apply_unitary(strategy.registers, s.unitary, state);
        }
    }

    run.output_distribution.resize(static_cast<size_t>(state.size()));
    for (Eigen::Index i = 0; i < state.size(); ++i)
        run.output_distribution[static_cast<size_t>(i)] = std::norm(state(i));
    for (Eigen::Index x = 0; x < strategy.registers.n_points; ++x)
        for (Eigen::Index z = 0; z < strategy.registers.ancilla_dim; ++z)
            run.accept_prob += std::norm(state(state_index(strategy.registers, x, 1, z)));
    run.final_state = std::move(state);
    return run;
}

ComplexVector run_strategy_prefix(const QueryStrategy& strategy,
                                  const std::vector<SubsetOracle>& oracles, int oracle_index,
                                  int call_ordinal) {
    strategy.validate();
    check_oracles(strategy, oracles);
    if (call_ordinal < 1 || call_ordinal > strategy.num_queries_to(oracle_index))
        throw std::invalid_argument("run_strategy_prefix: call ordinal out of range");

    ComplexVector state = initial_state(strategy);
    int seen = 0;
    for (const Stage& s : strategy.stages) {
        if (s.is_oracle_call) {
            if (s.oracle_index == oracle_index && ++seen == call_ordinal) return state;
            apply_oracle(strategy.registers, oracles[static_cast<size_t>(s.oracle_index)], state);
        } else {
            apply_unitary(strategy.registers, s.unitary, state);
        }
    }
    throw std::logic_error("run_strategy_prefix: unreachable");
}

ComplexMatrix superposition_prep_matrix(Eigen::Index n_points,
                                        const std::vector<Eigen::Index>& support) {
    if (support.empty())
        throw std::invalid_argument("superposition_prep_matrix: empty support");
    Eigen::VectorXd target = Eigen::VectorXd::Zero(n_points);
    const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
    for (Eigen::Index x : support) {
        if (x < 0 || x >= n_points)
            throw std::out_of_range("superposition_prep_matrix: support point outside [N]");
        target(x) = amp;
    }
    // Householder reflection swapping e0 and the target state.
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n_points, 0) - target;
    const double vv = v.squaredNorm();
    ComplexMatrix u = ComplexMatrix::Identity(n_points, n_points);
    if (vv > 1e-15) u -= (2.0 / vv) * (v * v.transpose()).cast<std::complex<double>>();
    return u;
}

namespace {

std::string kind_name(UnitaryStep::Kind k) {
    switch (k) {
        case UnitaryStep::Kind::QftQuery: return "qft_query";
        case UnitaryStep::Kind::InvQftQuery: return "inv_qft_query";
        case UnitaryStep::Kind::DiffusionQuery: return "diffusion_query";
        case UnitaryStep::Kind::AddConstQuery: return "add_const_query";
        case UnitaryStep::Kind::HadamardResponse: return "hadamard_response";
        case UnitaryStep::Kind::XResponse: return "x_response";
        case UnitaryStep::Kind::ZResponse: return "z_response";
        case UnitaryStep::Kind::DenseQuery: return "dense_query";
        case UnitaryStep::Kind::DenseAncilla: return "dense_ancilla";
        case UnitaryStep::Kind::DenseFull: return "dense_full";
    }
    throw std::logic_error("kind_name: unknown kind");
}

UnitaryStep::Kind kind_from_name(const std::string& s) {
    if (s == "qft_query") return UnitaryStep::Kind::QftQuery;
    if (s == "inv_qft_query") return UnitaryStep::Kind::InvQftQuery;
    if (s == "diffusion_query") return UnitaryStep::Kind::DiffusionQuery;
    if (s == "add_const_query") return UnitaryStep::Kind::AddConstQuery;
    if (s == "hadamard_response") return UnitaryStep::Kind::HadamardResponse;
    if (s == "x_response") return UnitaryStep::Kind::XResponse;
    if (s == "z_response") return UnitaryStep::Kind::ZResponse;
    if (s == "dense_query") return UnitaryStep::Kind::DenseQuery;
    if (s == "dense_ancilla") return UnitaryStep::Kind::DenseAncilla;
    if (s == "dense_full") return UnitaryStep::Kind::DenseFull;
    throw std::invalid_argument("strategy_from_json: unknown unitary kind '" + s + "'");
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) throw std::invalid_argument("strategy_from_json: empty matrix");
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& e = j.at(static_cast<size_t>(r)).at(static_cast<size_t>(c));
            m(r, c) = {e.at(0).get<double>(), e.at(1).get<double>()};
        }
    return m;
}

bool kind_has_matrix(UnitaryStep::Kind k) {
    return k == UnitaryStep::Kind::DenseQuery || k == UnitaryStep::Kind::DenseAncilla ||
           k == UnitaryStep::Kind::DenseFull;
}

}  // namespace

std::string strategy_to_json(const QueryStrategy& strategy) {
    nlohmann::json j;
    j["registers"] = {{"n_points", strategy.registers.n_points},
                      {"ancilla_dim", strategy.registers.ancilla_dim}};
    j["witness"] = strategy.witness;
    j["output_qubit"] = "response";
    nlohmann::json stages = nlohmann::json::array();
    for (const Stage& s : strategy.stages) {
        if (s.is_oracle_call) {
            stages.push_back({{"oracle_call", s.oracle_index}});
        } else {
            nlohmann::json u = {{"kind", kind_name(s.unitary.kind)}};
            if (kind_has_matrix(s.unitary.kind)) u["matrix"] = matrix_to_json(s.unitary.matrix);
            if (s.unitary.kind == UnitaryStep::Kind::AddConstQuery)
                u["constant"] = s.unitary.add_constant;
            stages.push_back({{"unitary", std::move(u)}});
        }
    }
    j["stages"] = std::move(stages);
    return j.dump(2);
}

QueryStrategy strategy_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    QueryStrategy s;
    s.registers.n_points = j.at("registers").at("n_points").get<Eigen::Index>();
    s.registers.ancilla_dim = j.at("registers").at("ancilla_dim").get<Eigen::Index>();
    s.witness = j.value("witness", Eigen::Index{0});
    for (const auto& js : j.at("stages")) {
        Stage st;
        if (js.contains("oracle_call")) {
            st.is_oracle_call = true;
            st.oracle_index = js.at("oracle_call").get<int>();
        } else {
            const auto& u = js.at("unitary");
            st.unitary.kind = kind_from_name(u.at("kind").get<std::string>());
            if (kind_has_matrix(st.unitary.kind))
                st.unitary.matrix = matrix_from_json(u.at("matrix"));
            if (st.unitary.kind == UnitaryStep::Kind::AddConstQuery)
                st.unitary.add_constant = u.at("constant").get<Eigen::Index>();
        }
        s.stages.push_back(std::move(st));
    }
    s.validate();
    return s;
}

QueryStrategy make_classical_prober(Eigen::Index n_points, Eigen::Index x0) {
    QueryStrategy s;
    s.registers.n_points = n_points;
    Stage shift;
    shift.unitary.kind = UnitaryStep::Kind::AddConstQuery;
    shift.unitary.add_constant = x0;
    s.stages.push_back(shift);
    Stage call;
    call.is_oracle_call = true;
    s.stages.push_back(call);
    return s;
}

QueryStrategy make_uniform_prober(Eigen::Index n_points) {
    QueryStrategy s;
    s.registers.n_points = n_points;
    Stage prep;
    prep.unitary.kind = UnitaryStep::Kind::QftQuery;
    s.stages.push_back(prep);
    Stage call;
    call.is_oracle_call = true;
    s.stages.push_back(call);
    return s;
}

QueryStrategy make_grover(Eigen::Index n_points, int iterations) {
    QueryStrategy s;
    s.registers.n_points = n_points;
    Stage prep;
    prep.unitary.kind = UnitaryStep::Kind::QftQuery;
    s.stages.push_back(prep);
    Stage x;
    x.unitary.kind = UnitaryStep::Kind::XResponse;
    s.stages.push_back(x);
    Stage h;
    h.unitary.kind = UnitaryStep::Kind::HadamardResponse;
    s.stages.push_back(h);
    for (int i = 0; i < iterations; ++i) {
        Stage call;
        call.is_oracle_call = true;
        s.stages.push_back(call);
        Stage diff;
        diff.unitary.kind = UnitaryStep::Kind::DiffusionQuery;
        s.stages.push_back(diff);
    }
    return s;
}

QueryStrategy make_window_prober(Eigen::Index n_points,
                                 const std::vector<Eigen::Index>& window) {
    QueryStrategy s;
    s.registers.n_points = n_points;
    Stage prep;
    prep.unitary.kind = UnitaryStep::Kind::DenseQuery;
    prep.unitary.matrix = superposition_prep_matrix(n_points, window);
    s.stages.push_back(prep);
    Stage call;
    call.is_oracle_call = true;
    s.stages.push_back(call);
    return s;
}

}  // namespace qsep
