#pragma once

#include <complex>

#include "qsep/fourier.hpp"
#include "qsep/rng.hpp"

namespace qsep {

struct GaussianParams {
    std::complex<double> mean{0.0, 0.0};
    double sigma = 1.0;  // width: E|x - mean|^2 = sigma^2
};

/// Complex normal draw with density exp(-|x-mu|^2/sigma^2) / (pi sigma^2),
/// i.e. real and imaginary parts are independent N(., sigma^2/2).
std::complex<double> sample_complex_gaussian(const GaussianParams& p, Rng& rng);

struct GaussianIntegralReport {
    int n = 0;
    // Quadrature estimates of the two moment integrals over C^n.
    double integral_exp = 0.0;       // int exp(-v^dag M v) dv
    double integral_moment = 0.0;    // int |v1|^2 |v2|^2 exp(-v^dag M v) dv (n = 2 only)
    // Closed forms the estimates are compared against.
    double closed_form_pi_over_det = 0.0;       // pi / det(M), as stated
    double closed_form_pi_pow_n_over_det = 0.0; // pi^n / det(M)
    double closed_form_moment = 0.0;            // pi^2 Tr(M)^2 / (4 det(M)^3)
    double rel_err_pi = 0.0;
    double rel_err_pi_pow_n = 0.0;
    double rel_err_moment = 0.0;
};

/// Tensor-grid quadrature check of the two complex-Gaussian integral
/// identities for n in {1, 2}. M must be Hermitian positive definite.
/// The normalization constant of the first identity is reported against both
/// pi/det(M) and pi^n/det(M); the quadrature decides which one holds.
GaussianIntegralReport verify_gaussian_integral_identities(int n, const ComplexMatrix& m,
                                                           int grid_points_per_axis = 48,
                                                           double half_width = 6.0);

}  // namespace qsep
