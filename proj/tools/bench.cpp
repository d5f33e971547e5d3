// Compares the OpenMP kernels against their serial reference implementations:
// the projector-conjugation matrix build, the naive DFT, and the Monte-Carlo
// tau estimator (parallel only; the serial figure is one thread's share).
#include <chrono>
#include <functional>
#include <iostream>

#include <omp.h>

#include "qsep/fi.hpp"

namespace {

double seconds(const std::function<void()>& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
    using namespace qsep;
    std::cout << "threads: " << omp_get_max_threads() << "\n\n";

    Rng rng = Rng::stream(42, 0);

    {
        const Eigen::Index n = 1024, l = 64;
        SubsetOracle s = sample_support_fixed(n, l, rng);
        ComplexMatrix parallel_m, serial_m;
        const double tp = seconds([&] { parallel_m = build_m(s); });
        const double ts = seconds([&] { serial_m = build_m_serial(s); });
        const double diff = (parallel_m - serial_m).cwiseAbs().maxCoeff();
        std::cout << "build_m      N=" << n << "  parallel " << tp << " s,  serial " << ts
                  << " s,  speedup " << ts / tp << "x,  max entry diff " << diff << "\n";
    }

    {
        const Eigen::Index n = 3000;  // not a power of two: exercises the naive path
        ComplexVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = {rng.next_gaussian(), rng.next_gaussian()};
        ComplexVector out_p, out_s;
        const double tp = seconds([&] { out_p = dft_naive_parallel(v, +1); });
        const double ts = seconds([&] { out_s = dft_naive_serial(v, +1); });
        const double diff = (out_p - out_s).cwiseAbs().maxCoeff();
        std::cout << "naive DFT    N=" << n << "  parallel " << tp << " s,  serial " << ts
                  << " s,  speedup " << ts / tp << "x,  max entry diff " << diff << "\n";
    }

    {
        const Eigen::Index n = 64, l = 8;
        SubsetOracle s = sample_support_fixed(n, l, rng);
        SubsetOracle t = sample_support_fixed(n, 4, rng);
        FiConfig cfg;
        cfg.n_points = n;
        cfg.support_size = l;
        MonteCarloEstimate est;
        const double tp =
            seconds([&] { est = tau_monte_carlo(s, t, cfg, 2000000, 7); });
        std::cout << "tau MC       2e6 trials in " << tp << " s  (estimate " << est.estimate
                  << " +/- " << est.std_error << ")\n";
    }
    return 0;
}
