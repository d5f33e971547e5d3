#pragma once

#include <Eigen/Dense>

namespace qsep {

/// min c'x  subject to  a_eq x = b_eq,  a_le x <= b_le,  x >= 0.
struct LpProblem {
    Eigen::MatrixXd a_eq;
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd a_le;
    Eigen::VectorXd b_le;
    Eigen::VectorXd c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    Eigen::VectorXd x;
    double objective = 0.0;
    /// |c'x - y'b| from the basis duals; the optimality certificate.
    double duality_gap = 0.0;
    Eigen::VectorXd dual_eq;
    Eigen::VectorXd dual_le;
    long iterations = 0;
};

/// Dense two-phase primal simplex with a Bland's-rule fallback against
/// cycling. Sized for the coupling LPs (a few hundred rows, up to ~4^7
/// columns); the tableau update is parallelized across rows.
LpSolution solve_lp(const LpProblem& p, double tol = 1e-9, long max_iterations = 200000);

}  // namespace qsep
