#pragma once

#include <cstdint>

namespace qsep {

/// Seedable, splittable counter-based generator. Every experiment records its
/// master seed; per-trial streams are derived as stream(seed, trial_index) so
/// results are identical no matter how trials are distributed over threads.
class Rng {
  public:
    explicit Rng(uint64_t seed);

    /// Derive an independent stream, e.g. one per Monte-Carlo trial.
    static Rng stream(uint64_t master_seed, uint64_t stream_index);

    uint64_t next_u64();

    /// Uniform double in [0, 1).
    double next_double();

    /// Uniform integer in [0, n).
    uint64_t next_below(uint64_t n);

    /// Standard real normal via Box-Muller (platform-independent, unlike
    /// std::normal_distribution).
    double next_gaussian();

  private:
    uint64_t state_;
    bool have_cached_gaussian_ = false;
    double cached_gaussian_ = 0.0;
};

}  // namespace qsep
