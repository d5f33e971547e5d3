#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsep/gaussian.hpp"

using namespace qsep;

TEST_CASE("complex normal second moment equals sigma squared") {
    Rng rng(31);
    GaussianParams p{{0.0, 0.0}, 1.0};
    const int n = 1000000;
    double sum_sq = 0.0;
    std::complex<double> sum(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const std::complex<double> x = sample_complex_gaussian(p, rng);
        sum += x;
        sum_sq += std::norm(x);
    }
    CHECK(std::abs(sum_sq / n - 1.0) < 0.01);
    CHECK(std::abs(sum.real() / n) < 0.005);
    CHECK(std::abs(sum.imag() / n) < 0.005);
}

TEST_CASE("damped second moment: E[|x|^2 exp(-|x|^2)] = 1/4 at unit width") {
    Rng rng(32);
    GaussianParams p{{0.0, 0.0}, 1.0};
    const int n = 1000000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r2 = std::norm(sample_complex_gaussian(p, rng));
        acc += r2 * std::exp(-r2);
    }
    CHECK(std::abs(acc / n - 0.25) < 0.01);
}

TEST_CASE("nonzero mean shifts the distribution") {
    Rng rng(33);
    GaussianParams p{{2.0, -1.0}, 0.5};
    const int n = 200000;
    std::complex<double> sum(0.0, 0.0);
    double sum_dev = 0.0;
    for (int i = 0; i < n; ++i) {
        const std::complex<double> x = sample_complex_gaussian(p, rng);
        sum += x;
        sum_dev += std::norm(x - p.mean);
    }
    CHECK(std::abs(sum.real() / n - 2.0) < 0.01);
    CHECK(std::abs(sum.imag() / n + 1.0) < 0.01);
    CHECK(std::abs(sum_dev / n - 0.25) < 0.01);
}

TEST_CASE("invalid width is rejected") {
    Rng rng(34);
    CHECK_THROWS((void)sample_complex_gaussian({{0.0, 0.0}, 0.0}, rng));
    CHECK_THROWS((void)sample_complex_gaussian({{0.0, 0.0}, -1.0}, rng));
}

TEST_CASE("real and imaginary parts pass a Kolmogorov-Smirnov normality check") {
    Rng rng(35);
    GaussianParams p{{0.0, 0.0}, 1.0};
    const int n = 100000;
    std::vector<double> re(n), im(n);
    for (int i = 0; i < n; ++i) {
        const std::complex<double> x = sample_complex_gaussian(p, rng);
        // Parts have variance sigma^2/2; rescale to standard normal.
        re[static_cast<size_t>(i)] = x.real() * std::sqrt(2.0);
        im[static_cast<size_t>(i)] = x.imag() * std::sqrt(2.0);
    }
    auto ks_statistic = [](std::vector<double>& xs) {
        std::sort(xs.begin(), xs.end());
        double d = 0.0;
        const double n_inv = 1.0 / static_cast<double>(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) {
            const double cdf = 0.5 * (1.0 + std::erf(xs[i] / std::sqrt(2.0)));
            d = std::max(d, std::abs(cdf - static_cast<double>(i) * n_inv));
            d = std::max(d, std::abs(static_cast<double>(i + 1) * n_inv - cdf));
        }
        return d;
    };
    // Critical value at significance 1e-3: sqrt(-ln(alpha/2)/2) / sqrt(n).
    const double crit = std::sqrt(-std::log(5e-4) / 2.0) / std::sqrt(static_cast<double>(n));
    CHECK(ks_statistic(re) < crit);
    CHECK(ks_statistic(im) < crit);
}

TEST_CASE("quadrature confirms the n=1 integral") {
    ComplexMatrix m(1, 1);
    m << 1.0;
    GaussianIntegralReport rep = verify_gaussian_integral_identities(1, m);
    CHECK(rep.rel_err_pi < 0.01);        // pi/det = pi^1/det at n=1
    CHECK(rep.rel_err_pi_pow_n < 0.01);
}

TEST_CASE("quadrature at n=2 needs the dimension-dependent constant pi^n") {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    GaussianIntegralReport rep = verify_gaussian_integral_identities(2, m);
    CHECK(rep.rel_err_pi_pow_n < 0.02);  // integral is pi^2
    CHECK(rep.rel_err_pi > 1.0);         // the n-free constant is off by a factor pi
    CHECK(rep.rel_err_moment < 0.02);    // second identity gives pi^2 at M = I
}

TEST_CASE("quadrature handles an anisotropic positive definite matrix") {
    ComplexMatrix m(2, 2);
    m << 2.0, std::complex<double>(0.3, 0.1), std::complex<double>(0.3, -0.1), 1.0;
    GaussianIntegralReport rep = verify_gaussian_integral_identities(2, m);
    CHECK(rep.rel_err_pi_pow_n < 0.02);
}

TEST_CASE("non positive definite input is rejected") {
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 2.0, 1.0;  // eigenvalues -1 and 3
    CHECK_THROWS((void)verify_gaussian_integral_identities(2, m));
}
