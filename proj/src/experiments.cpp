#include "qd/experiments.hpp"

#include "qd/trials.hpp"

#include <cmath>

namespace qd {

DetectionEstimate make_detection_estimate(std::uint64_t detections, std::uint64_t trials) {
    DetectionEstimate out;
    out.detections = detections;
    out.trials = trials;
    out.estimate = static_cast<double>(detections) / static_cast<double>(trials);
    out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
    return out;
}

namespace {

struct SessionTrial {
    AttackStrategy attack;
    ProtocolConfig config;

    bool operator()(Rng& rng) const {
        const SecretMessage alice = SecretMessage::random(config.n_pairs, rng);
        const SecretMessage bob = SecretMessage::random(config.n_pairs, rng);
        return run_session(config, alice, bob, attack, rng).aborted;
    }
};

struct DecoyTrial {
    StateLabel decoy;
    double beta;

    bool operator()(Rng& rng) const {
        const JointState joint = entangle_photon(make_state(decoy), beta);
        const int outcome = measure_photon(joint, preparation_basis(decoy), rng).outcome;
        return outcome != eigen_index(decoy);
    }
};

} // namespace

DetectionEstimate estimate_detection_probability(const AttackStrategy& attack,
                                                 const ProtocolConfig& config,
                                                 std::uint64_t trials, const Rng& base) {
    return make_detection_estimate(
        count_trials(trials, base, SessionTrial{attack, config}), trials);
}

DetectionEstimate estimate_detection_probability_serial(const AttackStrategy& attack,
                                                        const ProtocolConfig& config,
                                                        std::uint64_t trials,
                                                        const Rng& base) {
    return make_detection_estimate(
        count_trials_serial(trials, base, SessionTrial{attack, config}), trials);
}

DetectionEstimate estimate_entangle_decoy_detection(StateLabel decoy, double beta,
                                                    std::uint64_t trials, const Rng& base) {
    return make_detection_estimate(
        count_trials(trials, base, DecoyTrial{decoy, beta}), trials);
}

DetectionEstimate estimate_entangle_decoy_detection_serial(StateLabel decoy, double beta,
                                                           std::uint64_t trials,
                                                           const Rng& base) {
    return make_detection_estimate(
        count_trials_serial(trials, base, DecoyTrial{decoy, beta}), trials);
}

} // namespace qd
