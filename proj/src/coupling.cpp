#include "qsep/coupling.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qsep {

void Coupling::validate(double tol) const {
    if (n_coords < 1 || n_coords > kMaxCouplingCoords)
        throw std::invalid_argument("Coupling: n_coords out of range [1, 7]");
    const Eigen::Index a = Eigen::Index{1} << n_coords;
    if (joint.rows() != a || joint.cols() != a)
        throw std::invalid_argument("Coupling: joint table size != 2^m x 2^m");
    if (joint.minCoeff() < -tol) throw std::invalid_argument("Coupling: negative mass");
    if (std::abs(joint.sum() - 1.0) > tol)
        throw std::invalid_argument("Coupling: total mass != 1");
}

ExplicitDistribution Coupling::first_marginal() const {
    ExplicitDistribution d;
    d.n_coords = n_coords;
    Eigen::VectorXd rows = joint.rowwise().sum();
    d.probs.assign(rows.data(), rows.data() + rows.size());
    return d;
}

ExplicitDistribution Coupling::second_marginal() const {
    ExplicitDistribution d;
    d.n_coords = n_coords;
    Eigen::RowVectorXd cols = joint.colwise().sum();
    d.probs.assign(cols.data(), cols.data() + cols.size());
    return d;
}

std::vector<double> Coupling::disagreement_probs() const {
    const Eigen::Index a = joint.rows();
    std::vector<double> out(static_cast<size_t>(n_coords), 0.0);
    for (Eigen::Index x = 0; x < a; ++x)
        for (Eigen::Index y = 0; y < a; ++y) {
            const uint64_t diff = static_cast<uint64_t>(x) ^ static_cast<uint64_t>(y);
            if (diff == 0 || joint(x, y) == 0.0) continue;
            for (int i = 0; i < n_coords; ++i)
                if (diff & (uint64_t{1} << i)) out[static_cast<size_t>(i)] += joint(x, y);
        }
    return out;
}

Coupling Coupling::identity(const ExplicitDistribution& d) {
    d.validate();
    Coupling c;
    c.n_coords = d.n_coords;
    const Eigen::Index a = Eigen::Index{1} << d.n_coords;
    c.joint = Eigen::MatrixXd::Zero(a, a);
    for (Eigen::Index x = 0; x < a; ++x) c.joint(x, x) = d.probs[static_cast<size_t>(x)];
    return c;
}

Coupling Coupling::product(const ExplicitDistribution& a, const ExplicitDistribution& b) {
    a.validate();
    b.validate();
    if (a.n_coords != b.n_coords) throw std::invalid_argument("product: coordinate mismatch");
    Coupling c;
    c.n_coords = a.n_coords;
    const Eigen::Index n = Eigen::Index{1} << a.n_coords;
    c.joint.resize(n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y)
            c.joint(x, y) = a.probs[static_cast<size_t>(x)] * b.probs[static_cast<size_t>(y)];
    return c;
}

namespace {

// Shared layout: variables [J(x, y) row-major over (x, y), epsilon].
// Appends the m per-coordinate rows  sum_{x_i != y_i} J(x,y) - eps <= 0.
void fill_disagreement_rows(int m, Eigen::MatrixXd& a_le, Eigen::VectorXd& b_le) {
    const Eigen::Index atoms = Eigen::Index{1} << m;
    const Eigen::Index n_vars = atoms * atoms + 1;
    a_le.setZero(m, n_vars);
    b_le.setZero(m);
    for (int i = 0; i < m; ++i) {
        for (Eigen::Index x = 0; x < atoms; ++x)
            for (Eigen::Index y = 0; y < atoms; ++y)
                if (((x ^ y) >> i) & 1) a_le(i, x * atoms + y) = 1.0;
        a_le(i, n_vars - 1) = -1.0;
    }
}

Coupling extract_coupling(int m, const Eigen::VectorXd& x) {
    const Eigen::Index atoms = Eigen::Index{1} << m;
    Coupling c;
    c.n_coords = m;
    c.joint.resize(atoms, atoms);
    for (Eigen::Index xx = 0; xx < atoms; ++xx)
        for (Eigen::Index yy = 0; yy < atoms; ++yy)
            c.joint(xx, yy) = std::max(0.0, x(xx * atoms + yy));
    return c;
}

}  // namespace

SubstitutionResult substitution_distance(const ExplicitDistribution& a,
                                         const ExplicitDistribution& b) {
    a.validate();
    b.validate();
    if (a.n_coords != b.n_coords)
        throw std::invalid_argument("substitution_distance: coordinate mismatch");
    const int m = a.n_coords;
    if (m > kMaxCouplingCoords)
        throw std::invalid_argument("substitution_distance: m exceeds coupling cap 7");

    const Eigen::Index atoms = Eigen::Index{1} << m;
    const Eigen::Index n_vars = atoms * atoms + 1;

    LpProblem p;
    // Row marginals (all), column marginals (drop the last: implied since
    // both tables sum to 1).
    const Eigen::Index n_eq = atoms + atoms - 1;
    p.a_eq.setZero(n_eq, n_vars);
    p.b_eq.setZero(n_eq);
    for (Eigen::Index x = 0; x < atoms; ++x) {
        for (Eigen::Index y = 0; y < atoms; ++y) p.a_eq(x, x * atoms + y) = 1.0;
        p.b_eq(x) = a.probs[static_cast<size_t>(x)];
    }
    for (Eigen::Index y = 0; y + 1 < atoms; ++y) {
        for (Eigen::Index x = 0; x < atoms; ++x) p.a_eq(atoms + y, x * atoms + y) = 1.0;
        p.b_eq(atoms + y) = b.probs[static_cast<size_t>(y)];
    }
    fill_disagreement_rows(m, p.a_le, p.b_le);
    p.c.setZero(n_vars);
    p.c(n_vars - 1) = 1.0;

    LpSolution sol = solve_lp(p);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("substitution_distance: LP solve failed");
    if (sol.duality_gap > 1e-7)
        throw std::runtime_error("substitution_distance: duality gap above 1e-7");

    SubstitutionResult res;
    res.epsilon = std::max(0.0, sol.objective);
    res.witness = extract_coupling(m, sol.x);
    res.duality_gap = sol.duality_gap;
    res.lp_iterations = sol.iterations;
    return res;
}

ConjectureProbeResult conjecture_probe(const ExplicitDistribution& x0,
                                       const ConjectureParams& params) {
    x0.validate();
    const int m = x0.n_coords;
    if (m > kMaxCouplingCoords)
        throw std::invalid_argument("conjecture_probe: m exceeds coupling cap 7");
    if (params.k < 1 || params.k > m || params.r < 1 || params.r > m)
        throw std::invalid_argument("conjecture_probe: k and r must be in [1, m]");

    ConjectureProbeResult res;

    // Hypothesis check: 2^{-|T|} <= Pr[x_i = 0 forall i in T] <= (1+zeta) 2^{-|T|}
    // for every nonempty T with |T| <= r. Empirical inputs straddle the band
    // stochastically, so violations are counted and reported, not fatal.
    const double band_tol = 1e-9;
    for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) {
        if (std::popcount(mask) > params.r) continue;
        HypothesisRow row;
        for (int i = 0; i < m; ++i)
            if (mask & (uint64_t{1} << i)) row.t.push_back(i);
        row.zero_marginal = marginal_zero_prob(x0, row.t);
        row.lower = std::pow(2.0, -static_cast<double>(row.t.size()));
        row.upper = (1.0 + params.zeta) * row.lower;
        row.within = row.zero_marginal >= row.lower - band_tol &&
                     row.zero_marginal <= row.upper + band_tol;
        if (!row.within) ++res.hypothesis_violations;
        res.hypothesis_table.push_back(row);
    }

    const Eigen::Index atoms = Eigen::Index{1} << m;
    const Eigen::Index n_vars = atoms * atoms + 1;

    // Count parity constraints on the second marginal.
    Eigen::Index n_parity = 0;
    for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask)
        if (std::popcount(mask) <= params.k) ++n_parity;

    LpProblem p;
    const Eigen::Index n_eq = atoms + n_parity;
    p.a_eq.setZero(n_eq, n_vars);
    p.b_eq.setZero(n_eq);
    for (Eigen::Index x = 0; x < atoms; ++x) {
        for (Eigen::Index y = 0; y < atoms; ++y) p.a_eq(x, x * atoms + y) = 1.0;
        p.b_eq(x) = x0.probs[static_cast<size_t>(x)];
    }
    Eigen::Index row_idx = atoms;
    for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) {
        if (std::popcount(mask) > params.k) continue;
        for (Eigen::Index y = 0; y < atoms; ++y) {
            const double sign =
                (std::popcount(static_cast<uint64_t>(y) & mask) & 1) ? -1.0 : 1.0;
            for (Eigen::Index x = 0; x < atoms; ++x) p.a_eq(row_idx, x * atoms + y) = sign;
        }
        ++row_idx;
    }
    fill_disagreement_rows(m, p.a_le, p.b_le);
    p.c.setZero(n_vars);
    p.c(n_vars - 1) = 1.0;

    LpSolution sol = solve_lp(p);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("conjecture_probe: LP solve failed");
    if (sol.duality_gap > 1e-7)
        throw std::runtime_error("conjecture_probe: duality gap above 1e-7");

    res.epsilon = std::max(0.0, sol.objective);
    res.witness = extract_coupling(m, sol.x);
    res.duality_gap = sol.duality_gap;

    ExplicitDistribution x1 = res.witness.second_marginal();
    // Clean roundoff so the certified table validates exactly.
    double sum = 0.0;
    for (double& v : x1.probs) {
        v = std::max(0.0, v);
        sum += v;
    }
    for (double& v : x1.probs) v /= sum;
    x1.validate();
    res.x1 = x1;
    res.epsilon_within_eta = res.epsilon <= params.eta;
    return res;
}

SubsetOracle couple_and_substitute(const SubsetOracle& u_prime, const Coupling& coupling,
                                   Rng& rng) {
    const int m = coupling.n_coords;
    if (u_prime.n_points() != m)
        throw std::invalid_argument("couple_and_substitute: coordinate mismatch");
    const Eigen::Index row = static_cast<Eigen::Index>(u_prime.as_atom());
    const double row_mass = coupling.joint.row(row).sum();
    if (!(row_mass > 0.0))
        throw std::runtime_error("couple_and_substitute: conditioning row has zero mass");
    double u = rng.next_double() * row_mass;
    const Eigen::Index atoms = coupling.joint.cols();
    Eigen::Index pick = atoms - 1;
    double acc = 0.0;
    for (Eigen::Index y = 0; y < atoms; ++y) {
        acc += coupling.joint(row, y);
        if (u < acc) {
            pick = y;
            break;
        }
    }
    return SubsetOracle::from_atom(m, static_cast<uint64_t>(pick));
}

std::string coupling_to_json(const Coupling& c) {
    c.validate();
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < c.joint.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index col = 0; col < c.joint.cols(); ++col) row.push_back(c.joint(r, col));
        rows.push_back(std::move(row));
    }
    nlohmann::json j;
    j["m"] = c.n_coords;
    j["joint"] = std::move(rows);
    return j.dump(2);
}

Coupling coupling_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Coupling c;
    c.n_coords = j.at("m").get<int>();
    const auto& rows = j.at("joint");
    const Eigen::Index a = static_cast<Eigen::Index>(rows.size());
    c.joint.resize(a, a);
    for (Eigen::Index r = 0; r < a; ++r) {
        const auto& row = rows.at(static_cast<size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != a)
            throw std::invalid_argument("coupling_from_json: joint table is not square");
        for (Eigen::Index col = 0; col < a; ++col)
            c.joint(r, col) = row.at(static_cast<size_t>(col)).get<double>();
    }
    c.validate();
    return c;
}

}  // namespace qsep
