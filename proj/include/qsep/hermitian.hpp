#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qsep/fourier.hpp"

namespace qsep {

constexpr double kHermitianTol = 1e-12;
constexpr double kImagResidueTol = 1e-9;

/// Throws if entries[i][j] != conj(entries[j][i]) beyond tolerance.
void require_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// |T| x |T| sub-matrix restricted to the (ascending-sorted) indices in t.
ComplexMatrix principal_minor(const ComplexMatrix& m, const std::vector<Eigen::Index>& t);

/// Real determinant of a Hermitian matrix via LU; rejects inputs whose
/// determinant has imaginary residue above kImagResidueTol.
double det_hermitian(const ComplexMatrix& m);

/// Largest eigenvalue of a Hermitian matrix.
double max_eigenvalue(const ComplexMatrix& m);

/// All eigenvalues, ascending.
Eigen::VectorXd eigenvalues_hermitian(const ComplexMatrix& m);

/// max over z != z' of |m(z, z')|.
double offdiag_max(const ComplexMatrix& m);

/// Gershgorin upper bound: max_i (Re m(i,i) + sum_{j != i} |m(i,j)|).
double gershgorin_upper_bound(const ComplexMatrix& m);

}  // namespace qsep
