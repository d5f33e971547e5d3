#include <cmath>
#include <complex>

#include "doctest.h"
#include "qsep/fourier.hpp"
#include "qsep/rng.hpp"

using namespace qsep;

namespace {

ComplexVector random_vector(Eigen::Index n, Rng& rng) {
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = {rng.next_gaussian(), rng.next_gaussian()};
    return v;
}

}  // namespace

TEST_CASE("basis state |0> maps to the uniform superposition") {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = 1.0;
    ComplexVector out = qft(v);
    for (Eigen::Index z = 0; z < 4; ++z) CHECK(std::abs(out(z) - 0.5) < 1e-12);
}

TEST_CASE("phase convention: |1> at N=4 gives powers of +i") {
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = 1.0;
    ComplexVector out = qft(v);
    const std::complex<double> i(0.0, 1.0);
    CHECK(std::abs(out(0) - 0.5) < 1e-12);
    CHECK(std::abs(out(1) - 0.5 * i) < 1e-12);
    CHECK(std::abs(out(2) + 0.5) < 1e-12);
    CHECK(std::abs(out(3) + 0.5 * i) < 1e-12);
}

TEST_CASE("inverse transform undoes the forward transform") {
    Rng rng(11);
    for (Eigen::Index n : {2, 3, 8, 12, 64}) {
        ComplexVector v = random_vector(n, rng);
        ComplexVector back = inverse_qft(qft(v));
        CHECK((back - v).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("unitarity across sizes") {
    Rng rng(12);
    for (Eigen::Index n = 2; n <= 1024; n *= 2) {
        for (int rep = 0; rep < 50; ++rep) {
            ComplexVector v = random_vector(n, rng);
            const double in_norm = v.squaredNorm();
            const double out_norm = qft(v).squaredNorm();
            CHECK(std::abs(out_norm - in_norm) <= 1e-10 * in_norm);
        }
    }
}

TEST_CASE("fast path matches the serial naive DFT") {
    Rng rng(13);
    for (Eigen::Index n : {2, 4, 8, 16, 32, 64}) {
        ComplexVector v = random_vector(n, rng);
        ComplexVector fast = qft(v);
        ComplexVector slow = dft_naive_serial(v, +1);
        CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("parallel naive DFT matches the serial reference") {
    Rng rng(14);
    for (Eigen::Index n : {7, 33, 100}) {
        ComplexVector v = random_vector(n, rng);
        for (int sign : {+1, -1}) {
            ComplexVector p = dft_naive_parallel(v, sign);
            ComplexVector s = dft_naive_serial(v, sign);
            CHECK((p - s).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("non-power-of-two sizes use the naive path and stay unitary") {
    Rng rng(15);
    ComplexVector v = random_vector(12, rng);
    CHECK(std::abs(qft(v).squaredNorm() - v.squaredNorm()) < 1e-10 * v.squaredNorm());
    CHECK((inverse_qft(qft(v)) - v).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dense transform matrix is unitary and matches qft") {
    Rng rng(16);
    const Eigen::Index n = 8;
    ComplexMatrix f = qft_matrix(n);
    ComplexMatrix shouldBeId = f.adjoint() * f;
    CHECK((shouldBeId - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    ComplexVector v = random_vector(n, rng);
    CHECK((ComplexVector(f * v) - qft(v)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("zero-length input is rejected") {
    ComplexVector empty(0);
    CHECK_THROWS_AS((void)qft(empty), std::invalid_argument);
    CHECK_THROWS_AS((void)inverse_qft(empty), std::invalid_argument);
}

TEST_CASE("power-of-two detection") {
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(2));
    CHECK(is_power_of_two(1024));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(3));
    CHECK_FALSE(is_power_of_two(12));
}
