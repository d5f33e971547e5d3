#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsep/rng.hpp"

using qsep::Rng;

TEST_CASE("same seed reproduces the sequence") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different streams from one master seed differ") {
    Rng a = Rng::stream(7, 0);
    Rng b = Rng::stream(7, 1);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("stream derivation is independent of call order") {
    Rng a = Rng::stream(99, 5);
    Rng unused = Rng::stream(99, 6);
    (void)unused.next_u64();
    Rng b = Rng::stream(99, 5);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("next_double lies in [0, 1) and is roughly uniform") {
    Rng rng(3);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("next_below stays below the limit and covers all residues") {
    Rng rng(4);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const uint64_t v = rng.next_below(7);
        REQUIRE(v < 7);
        counts[static_cast<size_t>(v)]++;
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("next_gaussian has standard moments") {
    Rng rng(5);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sum_sq += g * g;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
}
