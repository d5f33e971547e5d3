#include "qsep/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include "qsep/hermitian.hpp"

namespace qsep {

std::complex<double> sample_complex_gaussian(const GaussianParams& p, Rng& rng) {
    if (!(p.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const double s = p.sigma / std::sqrt(2.0);
    return p.mean + std::complex<double>(s * rng.next_gaussian(), s * rng.next_gaussian());
}

GaussianIntegralReport verify_gaussian_integral_identities(int n, const ComplexMatrix& m,
                                                           int grid_points_per_axis,
                                                           double half_width) {
    if (n != 1 && n != 2) throw std::invalid_argument("n must be 1 or 2");
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("matrix dim must equal n");
    Eigen::VectorXd ev = eigenvalues_hermitian(m);
    if (ev(0) <= 0.0) throw std::invalid_argument("matrix must be positive definite");

    // Scale the box to the slowest-decaying direction of exp(-v^dag M v).
    const double L = half_width / std::sqrt(ev(0));
    const int g = grid_points_per_axis;
    const double h = 2.0 * L / g;

    GaussianIntegralReport rep;
    rep.n = n;
    const double det = det_hermitian(m);

    auto node = [&](int j) { return -L + (j + 0.5) * h; };

    double sum_exp = 0.0;
    double sum_moment = 0.0;
    if (n == 1) {
        const double m00 = m(0, 0).real();
#pragma omp parallel for reduction(+ : sum_exp) schedule(static)
        for (int a = 0; a < g; ++a) {
            double local = 0.0;
            for (int b = 0; b < g; ++b) {
                const double x = node(a), y = node(b);
                local += std::exp(-m00 * (x * x + y * y));
            }
            sum_exp += local;
        }
        sum_exp *= h * h;
    } else {
        const double m00 = m(0, 0).real();
        const double m11 = m(1, 1).real();
        const std::complex<double> m01 = m(0, 1);
#pragma omp parallel for collapse(2) reduction(+ : sum_exp, sum_moment) schedule(static)
        for (int a = 0; a < g; ++a) {
            for (int b = 0; b < g; ++b) {
                const double x1 = node(a), y1 = node(b);
                const std::complex<double> v1(x1, y1);
                const double r1 = x1 * x1 + y1 * y1;
                double le = 0.0, lm = 0.0;
                for (int c = 0; c < g; ++c) {
                    for (int d = 0; d < g; ++d) {
                        const double x2 = node(c), y2 = node(d);
                        const std::complex<double> v2(x2, y2);
                        const double r2 = x2 * x2 + y2 * y2;
                        const double quad =
                            m00 * r1 + m11 * r2 + 2.0 * (std::conj(v1) * m01 * v2).real();
                        const double f = std::exp(-quad);
                        le += f;
                        lm += r1 * r2 * f;
                    }
                }
                sum_exp += le;
                sum_moment += lm;
            }
        }
        const double cell = h * h * h * h;
        sum_exp *= cell;
        sum_moment *= cell;
        const double tr = m.trace().real();
        rep.closed_form_moment = M_PI * M_PI * tr * tr / (4.0 * det * det * det);
        rep.integral_moment = sum_moment;
        rep.rel_err_moment = std::abs(sum_moment - rep.closed_form_moment) /
                             std::abs(rep.closed_form_moment);
    }

    rep.integral_exp = sum_exp;
    rep.closed_form_pi_over_det = M_PI / det;
    rep.closed_form_pi_pow_n_over_det = std::pow(M_PI, n) / det;
    rep.rel_err_pi = std::abs(sum_exp - rep.closed_form_pi_over_det) /
                     std::abs(rep.closed_form_pi_over_det);
    rep.rel_err_pi_pow_n = std::abs(sum_exp - rep.closed_form_pi_pow_n_over_det) /
                           std::abs(rep.closed_form_pi_pow_n_over_det);
    return rep;
}

}  // namespace qsep
