#pragma once

#include "qd/channel.hpp"
#include "qd/joint.hpp"
#include "qd/photon.hpp"
#include "qd/rng.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qd {

enum class AttackKind { None, InterceptResend, MeasureResend, EntangleMeasure };

std::string to_string(AttackKind k);
std::optional<AttackKind> parse_attack_kind(std::string_view text);

// Tagged adversary configuration. `beta` is the coupling amplitude of the
// entangle-measure probe; the ancilla stays untouched with amplitude
// alpha = sqrt(1 - beta^2).
struct AttackStrategy {
    AttackKind kind = AttackKind::None;
    double beta = 0.0;

    static AttackStrategy none() { return {}; }
    static AttackStrategy intercept_resend() { return {AttackKind::InterceptResend, 0.0}; }
    static AttackStrategy measure_resend() { return {AttackKind::MeasureResend, 0.0}; }
    static AttackStrategy entangle_measure(double beta) {
        return {AttackKind::EntangleMeasure, beta};
    }
};

// Eve's side of an entangle-measure attack: one joint state per tapped
// photon, shared with the forwarded block so that the legitimate parties'
// measurements collapse the same state Eve later reads her ancilla from.
struct EveProbe {
    std::vector<std::shared_ptr<JointState>> joints;
    std::vector<int> ancilla_outcomes;

    // Defer-and-measure: samples every ancilla from its (possibly already
    // collapsed) marginal. Call after the session's own measurements.
    void sample_ancilla_outcomes(Rng& rng);
};

// Replaces every photon with a fresh uniform draw from the 16 product
// states; the originals go to `captured` when provided.
QuantumBlock intercept_resend_tap(const QuantumBlock& block, Rng& rng,
                                  std::vector<PhotonState>* captured = nullptr);

// Measures every photon in a uniformly random composite basis and forwards
// the collapsed eigenstate.
QuantumBlock measure_resend_tap(const QuantumBlock& block, Rng& rng);

// Couples every photon to a fresh ancilla via the polarization-controlled
// probe and forwards the entangled carrier; ancilla measurement is deferred.
QuantumBlock entangle_measure_tap(const QuantumBlock& block, double beta,
                                  EveProbe& probe);

// The probe unitary applied to |photon> (x) |0>: within each spatial mode it
// rotates in the {H x |0>, V x |1>} and {V x |0>, H x |1>} planes by the
// angle with sine beta. The two ancilla states involved are orthogonal.
JointState entangle_photon(const PhotonState& photon, double beta);

// The same coupling as a map on arbitrary joint states.
JointState apply_probe_coupling(const JointState& j, double beta);

// Wraps a strategy as a channel hook; `probe` receives joint states for the
// entangle-measure kind and `captured` the stolen originals for
// intercept-resend.
AttackHook make_attack_hook(const AttackStrategy& strategy, EveProbe* probe = nullptr,
                            std::vector<PhotonState>* captured = nullptr);

// ---- detection probabilities ----------------------------------------------

// First-check detection probability for `delta1` uniformly chosen decoys.
// Intercept-resend: 1 - (1/4)^d. Measure-resend: 1 - (9/16)^d.
// Entangle-measure: 1 - (1 - m)^d with m the mean per-decoy detection over
// the 16 decoy states (exact enumeration).
double detection_probability_closed_form(AttackKind kind, std::size_t delta1,
                                         double beta = 0.0);

// Per-decoy probability that a tampered decoy still passes its check,
// computed as an exact enumeration sum (no sampling): 256 terms for
// intercept-resend, 64 outer terms for measure-resend.
double exact_per_decoy_pass_probability(AttackKind kind);

// Analytic detection probability for one entangled decoy checked in its own
// preparation basis.
double entangle_detection_for_decoy(StateLabel decoy, double beta);

// Mean of entangle_detection_for_decoy over the 16 product states.
double entangle_mean_decoy_detection(double beta);

} // namespace qd
