#include "qsep/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qsep {

namespace {

struct Tableau {
    // rows x (n_cols + 1); last column is the RHS.
    Eigen::MatrixXd t;
    std::vector<Eigen::Index> basis;       // basic variable per row
    std::vector<bool> allowed;             // false for retired artificials
    Eigen::Index n_cols = 0;

    double rhs(Eigen::Index r) const { return t(r, n_cols); }

    void pivot(Eigen::Index pr, Eigen::Index pc) {
        const double pv = t(pr, pc);
        t.row(pr) /= pv;
        const Eigen::Index rows = t.rows();
#pragma omp parallel for schedule(static)
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const double f = t(r, pc);
            if (f != 0.0) t.row(r).noalias() -= f * t.row(pr);
        }
        basis[static_cast<size_t>(pr)] = pc;
    }
};

// Reduced-cost row for objective c over the current basis; the trailing
// entry holds minus the current objective value.
Eigen::RowVectorXd reduced_costs(const Tableau& tab, const Eigen::VectorXd& cost) {
    Eigen::RowVectorXd row(tab.n_cols + 1);
    row.setZero();
    row.head(cost.size()) = cost.transpose();
    for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
        const double cb = (tab.basis[static_cast<size_t>(r)] < cost.size())
                              ? cost(tab.basis[static_cast<size_t>(r)])
                              : 0.0;
        if (cb != 0.0) row.noalias() -= cb * tab.t.row(r);
    }
    return row;
}

// One simplex phase: pivot until the objective row has no entry < -tol.
// Returns Optimal, Unbounded or IterationLimit.
LpStatus run_phase(Tableau& tab, Eigen::RowVectorXd& obj_row, double tol, long max_iterations,
                   long& iterations) {
    long degenerate_streak = 0;
    bool bland = false;
    while (iterations < max_iterations) {
        // Entering column.
        Eigen::Index pc = -1;
        if (!bland) {
            double best = -tol;
            for (Eigen::Index j = 0; j < tab.n_cols; ++j) {
                if (!tab.allowed[static_cast<size_t>(j)]) continue;
                if (obj_row(j) < best) {
                    best = obj_row(j);
                    pc = j;
                }
            }
        } else {
            for (Eigen::Index j = 0; j < tab.n_cols; ++j) {
                if (!tab.allowed[static_cast<size_t>(j)]) continue;
                if (obj_row(j) < -tol) {
                    pc = j;
                    break;
                }
            }
        }
        if (pc < 0) return LpStatus::Optimal;

        // Ratio test.
        Eigen::Index pr = -1;
        double best_ratio = 0.0;
        for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
            const double a = tab.t(r, pc);
            if (a > tol) {
                const double ratio = tab.rhs(r) / a;
                if (pr < 0 || ratio < best_ratio - 1e-12 ||
                    (std::abs(ratio - best_ratio) <= 1e-12 &&
                     tab.basis[static_cast<size_t>(r)] < tab.basis[static_cast<size_t>(pr)])) {
                    pr = r;
                    best_ratio = ratio;
                }
            }
        }
        if (pr < 0) return LpStatus::Unbounded;

        if (best_ratio <= 1e-12) {
            if (++degenerate_streak > 200) bland = true;
        } else {
            degenerate_streak = 0;
        }

        const double f = obj_row(pc);
        tab.pivot(pr, pc);
        obj_row.noalias() -= f * tab.t.row(pr);
        ++iterations;
    }
    return LpStatus::IterationLimit;
}

}  // namespace

LpSolution solve_lp(const LpProblem& p, double tol, long max_iterations) {
    const Eigen::Index n = p.c.size();
    const Eigen::Index m_eq = p.b_eq.size();
    const Eigen::Index m_le = p.b_le.size();
    if ((m_eq > 0 && p.a_eq.cols() != n) || (m_le > 0 && p.a_le.cols() != n))
        throw std::invalid_argument("solve_lp: column count mismatch");
    if (p.a_eq.rows() != m_eq || p.a_le.rows() != m_le)
        throw std::invalid_argument("solve_lp: row count mismatch");

    const Eigen::Index rows = m_eq + m_le;
    const Eigen::Index n_slack = m_le;
    // One artificial per row keeps phase 1 trivially feasible; slack columns
    // double as the initial basis for <= rows with nonnegative rhs.
    const Eigen::Index n_art = rows;
    const Eigen::Index n_total = n + n_slack + n_art;

    Tableau tab;
    tab.n_cols = n_total;
    tab.t.setZero(rows, n_total + 1);
    tab.basis.assign(static_cast<size_t>(rows), -1);
    tab.allowed.assign(static_cast<size_t>(n_total), true);

    for (Eigen::Index r = 0; r < m_eq; ++r) {
        double sign = (p.b_eq(r) < 0.0) ? -1.0 : 1.0;
        tab.t.row(r).head(n) = sign * p.a_eq.row(r);
        tab.t(r, n_total) = sign * p.b_eq(r);
    }
    for (Eigen::Index r = 0; r < m_le; ++r) {
        double sign = (p.b_le(r) < 0.0) ? -1.0 : 1.0;
        tab.t.row(m_eq + r).head(n) = sign * p.a_le.row(r);
        tab.t(m_eq + r, n + r) = sign;  // slack
        tab.t(m_eq + r, n_total) = sign * p.b_le(r);
    }

    // Initial basis: slack where usable, artificial otherwise.
    Eigen::Index art_used = 0;
    std::vector<Eigen::Index> art_col(static_cast<size_t>(rows), -1);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (r >= m_eq && tab.t(r, n + (r - m_eq)) == 1.0) {
            tab.basis[static_cast<size_t>(r)] = n + (r - m_eq);
        } else {
            const Eigen::Index col = n + n_slack + art_used++;
            tab.t(r, col) = 1.0;
            tab.basis[static_cast<size_t>(r)] = col;
            art_col[static_cast<size_t>(r)] = col;
        }
    }
    // Unused artificial columns are never eligible.
    for (Eigen::Index j = n + n_slack + art_used; j < n_total; ++j)
        tab.allowed[static_cast<size_t>(j)] = false;

    LpSolution sol;
    long iterations = 0;

    // Phase 1: minimize the sum of artificials.
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n_total);
    for (Eigen::Index r = 0; r < rows; ++r)
        if (art_col[static_cast<size_t>(r)] >= 0) phase1_cost(art_col[static_cast<size_t>(r)]) = 1.0;
    Eigen::RowVectorXd obj_row = reduced_costs(tab, phase1_cost);
    LpStatus st = run_phase(tab, obj_row, tol, max_iterations, iterations);
    sol.iterations = iterations;
    if (st != LpStatus::Optimal) {
        sol.status = st;
        return sol;
    }
    if (-obj_row(n_total) > 1e-7) {  // phase-1 objective = -last entry
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    // Drive remaining artificials out of the basis where possible.
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index bv = tab.basis[static_cast<size_t>(r)];
        if (bv >= n + n_slack) {
            Eigen::Index pc = -1;
            for (Eigen::Index j = 0; j < n + n_slack; ++j) {
                if (tab.allowed[static_cast<size_t>(j)] && std::abs(tab.t(r, j)) > 1e-7) {
                    pc = j;
                    break;
                }
            }
            if (pc >= 0) tab.pivot(r, pc);
            // else: redundant row; the artificial stays basic at value zero.
        }
    }
    // Artificials are retired for phase 2.
    for (Eigen::Index j = n + n_slack; j < n_total; ++j) tab.allowed[static_cast<size_t>(j)] = false;

    // Phase 2.
    Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(n_total);
    phase2_cost.head(n) = p.c;
    obj_row = reduced_costs(tab, phase2_cost);
    st = run_phase(tab, obj_row, tol, max_iterations, iterations);
    sol.iterations = iterations;
    if (st != LpStatus::Optimal) {
        sol.status = st;
        return sol;
    }

    sol.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index bv = tab.basis[static_cast<size_t>(r)];
        if (bv < n) sol.x(bv) = tab.rhs(r);
    }
    sol.objective = p.c.dot(sol.x);

    // Basis duals from the original constraint matrix: solve B' y = c_B.
    {
        Eigen::MatrixXd bmat(rows, rows);
        Eigen::VectorXd cb(rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const Eigen::Index bv = tab.basis[static_cast<size_t>(r)];
            Eigen::VectorXd col = Eigen::VectorXd::Zero(rows);
            if (bv < n) {
                if (m_eq > 0) col.head(m_eq) = p.a_eq.col(bv);
                if (m_le > 0) col.tail(m_le) = p.a_le.col(bv);
                cb(r) = p.c(bv);
            } else if (bv < n + n_slack) {
                col(m_eq + (bv - n)) = 1.0;
                cb(r) = 0.0;
            } else {
                // Redundant-row artificial at zero: unit column keeps B invertible.
                Eigen::Index owner = -1;
                for (Eigen::Index rr = 0; rr < rows; ++rr)
                    if (art_col[static_cast<size_t>(rr)] == bv) owner = rr;
                col(owner) = 1.0;
                cb(r) = 0.0;
            }
            bmat.col(r) = col;
        }
        Eigen::VectorXd y = bmat.transpose().fullPivLu().solve(cb);
        sol.dual_eq = y.head(m_eq);
        sol.dual_le = y.tail(m_le);
        Eigen::VectorXd b(rows);
        if (m_eq > 0) b.head(m_eq) = p.b_eq;
        if (m_le > 0) b.tail(m_le) = p.b_le;
        sol.duality_gap = std::abs(sol.objective - y.dot(b));
    }

    sol.status = LpStatus::Optimal;
    return sol;
}

}  // namespace qsep
