#pragma once

#include "qd/basis.hpp"
#include "qd/photon.hpp"
#include "qd/rng.hpp"
#include "qd/unitary.hpp"

#include <array>

namespace qd {

// A photon entangled with a two-level ancilla held by an eavesdropper.
// Amplitude index = (photon index) * 2 + (ancilla index), photon indices in
// the canonical (H b1, H b2, V b1, V b2) order.
struct JointState {
    std::array<cplx, 8> amps{};
};

// |photon> (x) |ancilla>, ancilla in {0, 1}.
JointState attach_ancilla(const PhotonState& photon, int ancilla);

double norm_sq(const JointState& j);

// (U (x) identity on the ancilla).
JointState apply_photon_unitary(const CompositeUnitary& u, const JointState& j);

// Born rule for a measurement of the photon subsystem only.
std::array<double, 4> photon_outcome_probabilities(const JointState& j,
                                                   const CompositeBasis& basis);

struct JointMeasureResult {
    int outcome = 0;
    JointState post_state{}; // photon collapsed to the eigenstate, ancilla conditioned
};

// Measures the photon subsystem, leaving the ancilla in its conditional
// state. Consumes exactly one uniform draw, with the same outcome walk as
// measure() on a pure photon.
JointMeasureResult measure_photon(const JointState& j, const CompositeBasis& basis,
                                  Rng& rng);

// Marginal distribution of the ancilla in its computational basis.
std::array<double, 2> ancilla_probabilities(const JointState& j);

} // namespace qd
