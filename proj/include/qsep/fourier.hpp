#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qsep {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Discrete Fourier transform with the positive phase convention:
///   out[z] = (1/sqrt(N)) * sum_y exp(+i 2 pi y z / N) * v[y]
/// Radix-2 FFT for power-of-two N, naive DFT otherwise.
ComplexVector qft(const ComplexVector& v);

/// Inverse transform (negative phase). qft followed by inverse_qft is the
/// identity up to roundoff.
ComplexVector inverse_qft(const ComplexVector& v);

/// O(N^2) reference transform, serial. Kept as the oracle the fast path is
/// tested against.
ComplexVector dft_naive_serial(const ComplexVector& v, int sign);

/// O(N^2) transform with the outer loop parallelized.
ComplexVector dft_naive_parallel(const ComplexVector& v, int sign);

/// Dense N x N matrix of qft (positive convention).
ComplexMatrix qft_matrix(Eigen::Index n);

bool is_power_of_two(Eigen::Index n);

}  // namespace qsep
