#pragma once

#include "qd/rng.hpp"

#include <cstdint>

namespace qd {

// Counts successes of a Bernoulli experiment over independent seeded trials.
// Trial t draws from base.substream(t) only, so the count does not depend on
// execution order: the parallel kernel and the serial reference return the
// same value for the same base generator.

template <typename TrialFn>
std::uint64_t count_trials_serial(std::uint64_t trials, const Rng& base, TrialFn&& fn) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = base.substream(t);
        if (fn(rng)) ++hits;
    }
    return hits;
}

template <typename TrialFn>
std::uint64_t count_trials(std::uint64_t trials, const Rng& base, TrialFn&& fn) {
#ifdef _OPENMP
    std::uint64_t hits = 0;
    const long long n = static_cast<long long>(trials);
#pragma omp parallel for schedule(static) reduction(+ : hits)
    for (long long t = 0; t < n; ++t) {
        Rng rng = base.substream(static_cast<std::uint64_t>(t));
        if (fn(rng)) ++hits;
    }
    return hits;
#else
    return count_trials_serial(trials, base, fn);
#endif
}

} // namespace qd
