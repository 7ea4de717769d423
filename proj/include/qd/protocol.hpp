#pragma once

#include "qd/attacks.hpp"
#include "qd/channel.hpp"
#include "qd/photon.hpp"
#include "qd/rng.hpp"
#include "qd/unitary.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qd {

// One party's secret: N bit pairs, each encoded by one composite unitary.
struct SecretMessage {
    std::vector<BitPair> pairs;

    std::size_t size() const { return pairs.size(); }

    std::string to_bits() const;                                    // "0001"
    static std::optional<SecretMessage> from_bits(std::string_view); // length 2N
    static SecretMessage random(std::size_t n_pairs, Rng& rng);
};

struct ProtocolConfig {
    std::size_t n_pairs = 64;
    std::size_t delta1 = 16;
    std::size_t delta2 = 16;
    std::uint64_t seed = 0;

    // Test hook: fixes every message pair's initial state; decoys stay random.
    std::optional<StateLabel> forced_initial;

    void validate() const; // throws std::invalid_argument
};

// Bob's private preparation record. The transmitted sequence interleaves N
// identical adjacent photon pairs with delta1 + delta2 decoys at random
// positions; labels are per final position.
struct PreparedSequence {
    QuantumBlock sequence;
    std::vector<std::size_t> decoy1_positions; // ascending
    std::vector<std::size_t> decoy2_positions; // ascending
    std::vector<StateLabel> initial_labels;    // one per photon of `sequence`
};

PreparedSequence bob_prepare(const ProtocolConfig& config, Rng& rng);

// Initial label of each message pair, in pair order (derived from the
// per-position record).
std::vector<StateLabel> message_pair_labels(const PreparedSequence& prepared);

// Positions of the second-check decoys after the first-check decoys have
// been discarded.
std::vector<std::size_t> shifted_decoy2_positions(const PreparedSequence& prepared);

struct CheckOutcome {
    bool passed = false;
    double error_rate = 0.0;
};

// Step 2. Bob announces positions and bases of the first-check decoys;
// Alice measures and announces outcomes; Bob compares against his records.
// Zero tolerance: any mismatch aborts.
CheckOutcome first_security_check(QuantumBlock& alice_held,
                                  const PreparedSequence& bob_records,
                                  SessionTranscript& transcript, Rng& rng);

struct AliceEncoded {
    QuantumBlock outgoing;                          // encoded photons + encoded decoys
    QuantumBlock reference_photons;                 // kept twins, one per pair
    std::vector<BitPair> check_bits;                // labels applied to the decoys
    std::vector<std::size_t> check_decoy_positions; // ascending, in `outgoing`
};

// Step 3. `sequence` is Alice's block after the first-check decoys are
// discarded; `decoy2_positions` are Bob's announced (shifted) positions.
// Encodes the secret on the first photon of each pair, keeps the twin,
// encodes check_ops on the extracted decoys and reinserts them at fresh
// random positions, order preserved.
AliceEncoded alice_encode(const SecretMessage& secret, QuantumBlock sequence,
                          const std::vector<std::size_t>& decoy2_positions,
                          const std::vector<CompositeUnitary>& check_ops, Rng& rng);

// Step 4. Alice announces the encoded-decoy positions; Bob measures each in
// its known preparation basis, infers the applied operation and announces
// it; Alice compares against her check bits.
CheckOutcome second_security_check(const std::vector<BitPair>& alice_check_bits,
                                   QuantumBlock& bob_held,
                                   const std::vector<std::size_t>& check_positions,
                                   const std::vector<StateLabel>& decoy2_labels,
                                   SessionTranscript& transcript, Rng& rng);

// Step 5, Bob's half: encodes his secret on the restored message photons,
// measures each in the basis it was prepared in and broadcasts the 4-bit
// outcome announcement.
OutcomeAnnouncement bob_encode_measure_announce(const SecretMessage& bob_secret,
                                                QuantumBlock& restored,
                                                const std::vector<StateLabel>& pair_labels,
                                                Rng& rng, SessionTranscript& transcript);

// Step 5, decoding. Bob inverts the composite action using his knowledge of
// the initial state and his own operation; Alice first measures her kept
// twin in the announced basis to recover the initial state, then inverts her
// own operation.
SecretMessage bob_decode(const OutcomeAnnouncement& announcement,
                         const std::vector<StateLabel>& pair_labels,
                         const SecretMessage& bob_secret);

SecretMessage alice_decode(const OutcomeAnnouncement& announcement,
                           QuantumBlock& reference_photons,
                           const SecretMessage& alice_secret, Rng& rng);

struct SessionResult {
    bool aborted = false;
    std::string abort_stage; // "first-check" or "second-check"
    double error_rate = 0.0;
    std::optional<SecretMessage> alice_decoded; // Bob's bits, as read by Alice
    std::optional<SecretMessage> bob_decoded;   // Alice's bits, as read by Bob
    SessionTranscript transcript;
    std::optional<EveProbe> probe; // present for entangle-measure sessions
};

// Runs steps 1-5 end to end. The attack taps the initial Bob -> Alice
// transfer; on any failed check the session aborts and nothing is decoded.
SessionResult run_session(const ProtocolConfig& config, const SecretMessage& alice_secret,
                          const SecretMessage& bob_secret, const AttackStrategy& attack,
                          Rng& rng);

} // namespace qd
