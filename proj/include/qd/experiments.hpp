#pragma once

#include "qd/attacks.hpp"
#include "qd/protocol.hpp"
#include "qd/rng.hpp"

#include <cstdint>

namespace qd {

struct DetectionEstimate {
    double estimate = 0.0;
    double std_error = 0.0; // sqrt(p(1-p)/trials) at the estimate
    std::uint64_t detections = 0;
    std::uint64_t trials = 0;
};

DetectionEstimate make_detection_estimate(std::uint64_t detections, std::uint64_t trials);

// Abort fraction over independent full sessions run under the attack, with
// fresh random secrets per trial. Run with config.delta2 = 0 when comparing
// against the first-check closed forms; a nonzero delta2 lets the second
// check catch the attack as well. The default entry point uses the OpenMP
// kernel when available; the serial variant is the reference implementation
// and returns identical counts.
DetectionEstimate estimate_detection_probability(const AttackStrategy& attack,
                                                 const ProtocolConfig& config,
                                                 std::uint64_t trials, const Rng& base);
DetectionEstimate estimate_detection_probability_serial(const AttackStrategy& attack,
                                                        const ProtocolConfig& config,
                                                        std::uint64_t trials,
                                                        const Rng& base);

// Monte-Carlo check of one entangled decoy measured in its own preparation
// basis (the first-check mechanics in isolation, for a chosen decoy state).
DetectionEstimate estimate_entangle_decoy_detection(StateLabel decoy, double beta,
                                                    std::uint64_t trials, const Rng& base);
DetectionEstimate estimate_entangle_decoy_detection_serial(StateLabel decoy, double beta,
                                                           std::uint64_t trials,
                                                           const Rng& base);

} // namespace qd
