#include "qsep/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace qsep {

bool is_power_of_two(Eigen::Index n) {
    return n > 0 && (n & (n - 1)) == 0;
}

namespace {

// In-place iterative radix-2 FFT. sign = +1 matches the qft convention.
void fft_radix2(ComplexVector& a, int sign) {
    const Eigen::Index n = a.size();
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (Eigen::Index i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (Eigen::Index k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

ComplexVector transform(const ComplexVector& v, int sign) {
    const Eigen::Index n = v.size();
    if (n < 1) throw std::invalid_argument("qft: zero-length vector");
    ComplexVector out;
    if (is_power_of_two(n)) {
        out = v;
        fft_radix2(out, sign);
    } else {
        out = dft_naive_parallel(v, sign);
        return out;  // already scaled
    }
    out /= std::sqrt(static_cast<double>(n));
    return out;
}

}  // namespace

ComplexVector qft(const ComplexVector& v) {
    return transform(v, +1);
}

ComplexVector inverse_qft(const ComplexVector& v) {
    return transform(v, -1);
}

ComplexVector dft_naive_serial(const ComplexVector& v, int sign) {
    const Eigen::Index n = v.size();
    if (n < 1) throw std::invalid_argument("dft: zero-length vector");
    ComplexVector out(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index z = 0; z < n; ++z) {
        std::complex<double> acc(0.0, 0.0);
        for (Eigen::Index y = 0; y < n; ++y) {
            const double ang =
                sign * 2.0 * M_PI * static_cast<double>((y * z) % n) / static_cast<double>(n);
            acc += v[y] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[z] = acc * scale;
    }
    return out;
}

ComplexVector dft_naive_parallel(const ComplexVector& v, int sign) {
    const Eigen::Index n = v.size();
    if (n < 1) throw std::invalid_argument("dft: zero-length vector");
    ComplexVector out(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
#pragma omp parallel for schedule(static)
    for (Eigen::Index z = 0; z < n; ++z) {
        std::complex<double> acc(0.0, 0.0);
        for (Eigen::Index y = 0; y < n; ++y) {
            const double ang =
                sign * 2.0 * M_PI * static_cast<double>((y * z) % n) / static_cast<double>(n);
            acc += v[y] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[z] = acc * scale;
    }
    return out;
}

ComplexMatrix qft_matrix(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("qft_matrix: dimension must be positive");
    ComplexMatrix m(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index z = 0; z < n; ++z) {
        for (Eigen::Index y = 0; y < n; ++y) {
            const double ang = 2.0 * M_PI * static_cast<double>((y * z) % n) / static_cast<double>(n);
            m(z, y) = scale * std::complex<double>(std::cos(ang), std::sin(ang));
        }
    }
    return m;
}

}  // namespace qsep
