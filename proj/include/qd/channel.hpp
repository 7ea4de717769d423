#pragma once

#include "qd/basis.hpp"
#include "qd/joint.hpp"
#include "qd/photon.hpp"
#include "qd/rng.hpp"
#include "qd/unitary.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qd {

enum class Party { Alice, Bob };

std::string to_string(Party p);

// An ordered block of photons moved as one unit. `links` is either empty or
// one entry per photon; a non-null link means the photon is entangled with
// an eavesdropper ancilla and the JointState is authoritative — measurement
// and unitaries must go through apply_at()/measure_at(), which keep both
// views in sync. Links are shared, so a collapse seen by one holder is seen
// by all.
struct QuantumBlock {
    std::vector<PhotonState> photons;
    std::vector<std::shared_ptr<JointState>> links;
    int block_id = 0;

    std::size_t size() const { return photons.size(); }
    bool linked(std::size_t i) const { return !links.empty() && links[i] != nullptr; }
    void ensure_links();
};

// Applies a composite unitary to one photon (and its joint state, if linked).
void apply_at(QuantumBlock& block, std::size_t i, const CompositeUnitary& u);

// Measures one photon in place; the slot collapses to the outcome eigenstate.
MeasureResult measure_at(QuantumBlock& block, std::size_t i,
                         const CompositeBasis& basis, Rng& rng);

// Removes the photons at the given ascending positions, returning them in
// that order; remaining photons keep their relative order.
QuantumBlock extract_positions(QuantumBlock& block, const std::vector<std::size_t>& positions);

// Drops the photons at the given ascending positions.
void remove_positions(QuantumBlock& block, const std::vector<std::size_t>& positions);

// Inserts `items` (order preserved) so that item k lands at ascending target
// position `positions[k]` of the resulting sequence.
void insert_positions(QuantumBlock& block, QuantumBlock items,
                      const std::vector<std::size_t>& positions);

// ---- classical broadcast -------------------------------------------------

struct DecoyPositionsAndBases {
    std::vector<std::size_t> positions;
    std::vector<int> basis_codes;
};

struct MeasurementOutcomes {
    std::vector<int> outcome_codes;
};

struct DecoyPositions {
    std::vector<std::size_t> positions;
};

struct CheckBitsDecoded {
    std::vector<BitPair> labels;
};

// Bob's per-pair announcement: 2 bits naming the measuring basis plus 2 bits
// naming the eigenstate, four classical bits per message photon.
struct OutcomeAnnouncement {
    struct Entry {
        int basis_code = 0;
        int outcome_code = 0;
    };
    std::vector<Entry> entries;
};

struct AbortNotice {
    std::string stage;
    double error_rate = 0.0;
};

using Payload = std::variant<DecoyPositionsAndBases, MeasurementOutcomes, DecoyPositions,
                             CheckBitsDecoded, OutcomeAnnouncement, AbortNotice>;

const char* kind_name(const Payload& p);

struct ClassicalMessage {
    Party sender = Party::Alice;
    Payload payload;
};

struct QuantumTransfer {
    Party from = Party::Alice;
    Party to = Party::Bob;
    int block_id = 0;
    std::size_t photon_count = 0;
};

// Shared append-only record of one session. Every classical announcement is
// public, so the channel is modeled as a broadcast log readable by everyone,
// the adversary included. Once an Abort lands, further events are refused.
struct SessionTranscript {
    struct Event {
        std::variant<ClassicalMessage, QuantumTransfer> body;
    };

    std::vector<Event> events;
    std::uint64_t seed = 0;
    bool aborted = false;

    void record_transfer(const QuantumTransfer& t);
};

// Appends msg to the transcript; throws ProtocolOrderError after an abort.
void broadcast_classical(ClassicalMessage msg, SessionTranscript& transcript);

// ---- quantum channel -----------------------------------------------------

using AttackHook = std::function<QuantumBlock(const QuantumBlock&, Rng&)>;

// Ideal, lossless, order-preserving channel. An empty hook forwards the
// block untouched; a hook models the adversary and must return the same
// photon count (LengthMismatch otherwise). The transfer is logged.
QuantumBlock send_quantum(const QuantumBlock& block, const AttackHook& tap, Rng& rng,
                          SessionTranscript& transcript, Party from, Party to);

} // namespace qd
