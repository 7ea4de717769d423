#include "qd/protocol.hpp"

#include "qd/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qd {

namespace {

StateLabel random_label(Rng& rng) {
    return all_product_labels()[rng.next_below(16)];
}

// k sorted distinct positions, uniform over the k-subsets of [0, n).
std::vector<std::size_t> sample_positions(std::size_t k, std::size_t n, Rng& rng) {
    std::vector<std::size_t> out;
    out.reserve(k);
    std::size_t needed = k;
    for (std::size_t i = 0; i < n && needed > 0; ++i) {
        const std::size_t remaining = n - i;
        if (rng.next_below(static_cast<std::uint32_t>(remaining)) < needed) {
            out.push_back(i);
            --needed;
        }
    }
    return out;
}

// The unique operation label mapping the initial eigenstate to the observed
// one within the preparation basis.
BitPair infer_operation(StateLabel initial, int outcome) {
    const CompositeBasis basis = preparation_basis(initial);
    const PhotonState target = basis.eigenstate(outcome);
    const PhotonState start = make_state(initial);
    for (const CompositeUnitary& u : all_composite_unitaries())
        if (equal_up_to_phase(apply_unitary(u, start), target)) return u.label;
    throw DecodeInconsistency("no operation maps " + to_string(initial) +
                              " to outcome " + std::to_string(outcome));
}

} // namespace

std::string SecretMessage::to_bits() const {
    std::string out;
    out.reserve(pairs.size() * 2);
    for (const BitPair& p : pairs) {
        out.push_back(static_cast<char>('0' + p.hi));
        out.push_back(static_cast<char>('0' + p.lo));
    }
    return out;
}

std::optional<SecretMessage> SecretMessage::from_bits(std::string_view bits) {
    if (bits.size() % 2 != 0 || bits.empty()) return std::nullopt;
    SecretMessage out;
    out.pairs.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        const char hi = bits[i], lo = bits[i + 1];
        if ((hi != '0' && hi != '1') || (lo != '0' && lo != '1')) return std::nullopt;
        out.pairs.push_back(BitPair{static_cast<std::uint8_t>(hi - '0'),
                                    static_cast<std::uint8_t>(lo - '0')});
    }
    return out;
}

SecretMessage SecretMessage::random(std::size_t n_pairs, Rng& rng) {
    SecretMessage out;
    out.pairs.reserve(n_pairs);
    for (std::size_t i = 0; i < n_pairs; ++i)
        out.pairs.push_back(BitPair::from_index(static_cast<int>(rng.next_below(4))));
    return out;
}

void ProtocolConfig::validate() const {
    if (n_pairs == 0) throw std::invalid_argument("n_pairs must be at least 1");
}

PreparedSequence bob_prepare(const ProtocolConfig& config, Rng& rng) {
    config.validate();
    const std::size_t n = config.n_pairs;
    const std::size_t d1 = config.delta1;
    const std::size_t d2 = config.delta2;
    const std::size_t total = 2 * n + d1 + d2;

    std::vector<StateLabel> pair_labels(n);
    for (auto& label : pair_labels)
        label = config.forced_initial ? *config.forced_initial : random_label(rng);

    std::vector<StateLabel> decoy_labels(d1 + d2);
    for (auto& label : decoy_labels) label = random_label(rng);

    const auto decoy_slots = sample_positions(d1 + d2, total, rng);
    std::vector<std::size_t> ids(d1 + d2);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    for (std::size_t i = ids.size(); i > 1; --i)
        std::swap(ids[i - 1], ids[rng.next_below(static_cast<std::uint32_t>(i))]);

    PreparedSequence prep;
    prep.sequence.block_id = 1;
    prep.sequence.photons.resize(total);
    prep.initial_labels.resize(total, StateLabel{PolState::H, SpaState::B1});

    std::vector<char> is_decoy(total, 0);
    for (std::size_t k = 0; k < decoy_slots.size(); ++k) {
        const std::size_t pos = decoy_slots[k];
        const std::size_t id = ids[k];
        prep.initial_labels[pos] = decoy_labels[id];
        is_decoy[pos] = 1;
        (id < d1 ? prep.decoy1_positions : prep.decoy2_positions).push_back(pos);
    }
    std::sort(prep.decoy1_positions.begin(), prep.decoy1_positions.end());
    std::sort(prep.decoy2_positions.begin(), prep.decoy2_positions.end());

    std::size_t stream = 0;
    for (std::size_t pos = 0; pos < total; ++pos) {
        if (is_decoy[pos]) continue;
        prep.initial_labels[pos] = pair_labels[stream / 2];
        ++stream;
    }
    for (std::size_t pos = 0; pos < total; ++pos)
        prep.sequence.photons[pos] = make_state(prep.initial_labels[pos]);
    return prep;
}

std::vector<StateLabel> message_pair_labels(const PreparedSequence& prepared) {
    std::vector<char> is_decoy(prepared.sequence.size(), 0);
    for (std::size_t p : prepared.decoy1_positions) is_decoy[p] = 1;
    for (std::size_t p : prepared.decoy2_positions) is_decoy[p] = 1;

    std::vector<StateLabel> labels;
    std::size_t stream = 0;
    for (std::size_t pos = 0; pos < prepared.sequence.size(); ++pos) {
        if (is_decoy[pos]) continue;
        if (stream % 2 == 0) labels.push_back(prepared.initial_labels[pos]);
        ++stream;
    }
    return labels;
}

std::vector<std::size_t> shifted_decoy2_positions(const PreparedSequence& prepared) {
    std::vector<std::size_t> out;
    out.reserve(prepared.decoy2_positions.size());
    for (std::size_t pos : prepared.decoy2_positions) {
        const auto shift = std::upper_bound(prepared.decoy1_positions.begin(),
                                            prepared.decoy1_positions.end(), pos) -
                           prepared.decoy1_positions.begin();
        out.push_back(pos - static_cast<std::size_t>(shift));
    }
    return out;
}

CheckOutcome first_security_check(QuantumBlock& alice_held,
                                  const PreparedSequence& bob_records,
                                  SessionTranscript& transcript, Rng& rng) {
    const auto& positions = bob_records.decoy1_positions;

    DecoyPositionsAndBases announce;
    announce.positions = positions;
    for (std::size_t pos : positions)
        announce.basis_codes.push_back(preparation_basis(bob_records.initial_labels[pos]).code());
    broadcast_classical({Party::Bob, announce}, transcript);

    MeasurementOutcomes outcomes;
    for (std::size_t k = 0; k < positions.size(); ++k) {
        const CompositeBasis basis = CompositeBasis::from_code(announce.basis_codes[k]);
        outcomes.outcome_codes.push_back(measure_at(alice_held, positions[k], basis, rng).outcome);
    }
    broadcast_classical({Party::Alice, outcomes}, transcript);

    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < positions.size(); ++k)
        if (outcomes.outcome_codes[k] != eigen_index(bob_records.initial_labels[positions[k]]))
            ++mismatches;

    if (mismatches > 0) {
        const double rate = static_cast<double>(mismatches) / static_cast<double>(positions.size());
        broadcast_classical({Party::Bob, AbortNotice{"first-check", rate}}, transcript);
        return CheckOutcome{false, rate};
    }
    return CheckOutcome{true, 0.0};
}

AliceEncoded alice_encode(const SecretMessage& secret, QuantumBlock sequence,
                          const std::vector<std::size_t>& decoy2_positions,
                          const std::vector<CompositeUnitary>& check_ops, Rng& rng) {
    const std::size_t n = secret.size();
    const std::size_t d2 = decoy2_positions.size();
    if (check_ops.size() != d2)
        throw SequenceShapeError("expected one check operation per decoy");
    if (sequence.size() != 2 * n + d2)
        throw SequenceShapeError("sequence has " + std::to_string(sequence.size()) +
                                 " photons, expected " + std::to_string(2 * n + d2));

    QuantumBlock decoys = extract_positions(sequence, decoy2_positions);

    std::vector<std::size_t> firsts;
    firsts.reserve(n);
    for (std::size_t i = 0; i < 2 * n; i += 2) firsts.push_back(i);

    AliceEncoded out;
    out.outgoing = extract_positions(sequence, firsts);
    out.reference_photons = std::move(sequence);

    for (std::size_t m = 0; m < n; ++m)
        apply_at(out.outgoing, m, composite_unitary(secret.pairs[m]));

    for (std::size_t k = 0; k < d2; ++k) {
        apply_at(decoys, k, check_ops[k]);
        out.check_bits.push_back(check_ops[k].label);
    }

    out.check_decoy_positions = sample_positions(d2, n + d2, rng);
    insert_positions(out.outgoing, std::move(decoys), out.check_decoy_positions);
    return out;
}

CheckOutcome second_security_check(const std::vector<BitPair>& alice_check_bits,
                                   QuantumBlock& bob_held,
                                   const std::vector<std::size_t>& check_positions,
                                   const std::vector<StateLabel>& decoy2_labels,
                                   SessionTranscript& transcript, Rng& rng) {
    broadcast_classical({Party::Alice, DecoyPositions{check_positions}}, transcript);

    CheckBitsDecoded decoded;
    for (std::size_t k = 0; k < check_positions.size(); ++k) {
        const StateLabel label = decoy2_labels[k];
        const CompositeBasis basis = preparation_basis(label);
        const MeasureResult res = measure_at(bob_held, check_positions[k], basis, rng);
        decoded.labels.push_back(infer_operation(label, res.outcome));
    }
    broadcast_classical({Party::Bob, decoded}, transcript);

    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < decoded.labels.size(); ++k)
        if (!(decoded.labels[k] == alice_check_bits[k])) ++mismatches;

    if (mismatches > 0) {
        const double rate =
            static_cast<double>(mismatches) / static_cast<double>(decoded.labels.size());
        broadcast_classical({Party::Alice, AbortNotice{"second-check", rate}}, transcript);
        return CheckOutcome{false, rate};
    }
    return CheckOutcome{true, 0.0};
}

OutcomeAnnouncement bob_encode_measure_announce(const SecretMessage& bob_secret,
                                                QuantumBlock& restored,
                                                const std::vector<StateLabel>& pair_labels,
                                                Rng& rng, SessionTranscript& transcript) {
    const std::size_t n = bob_secret.size();
    if (restored.size() != n || pair_labels.size() != n)
        throw SequenceShapeError("restored sequence must hold one photon per pair");

    OutcomeAnnouncement ann;
    for (std::size_t m = 0; m < n; ++m) {
        apply_at(restored, m, composite_unitary(bob_secret.pairs[m]));
        const CompositeBasis basis = preparation_basis(pair_labels[m]);
        const MeasureResult res = measure_at(restored, m, basis, rng);
        ann.entries.push_back({basis.code(), res.outcome});
    }
    broadcast_classical({Party::Bob, ann}, transcript);
    return ann;
}

SecretMessage bob_decode(const OutcomeAnnouncement& announcement,
                         const std::vector<StateLabel>& pair_labels,
                         const SecretMessage& bob_secret) {
    const std::size_t n = bob_secret.size();
    if (announcement.entries.size() != n || pair_labels.size() != n)
        throw DecodeInconsistency("announcement does not cover every pair");

    SecretMessage out;
    for (std::size_t m = 0; m < n; ++m) {
        const auto& entry = announcement.entries[m];
        const CompositeBasis basis = CompositeBasis::from_code(entry.basis_code);
        if (!(basis == preparation_basis(pair_labels[m])))
            throw DecodeInconsistency("announced basis differs from the preparation basis");

        const PhotonState target = basis.eigenstate(entry.outcome_code);
        const CompositeUnitary& bob_op = composite_unitary(bob_secret.pairs[m]);
        const PhotonState initial = make_state(pair_labels[m]);

        bool found = false;
        for (const CompositeUnitary& cand : all_composite_unitaries()) {
            if (equal_up_to_phase(apply_unitary(bob_op, apply_unitary(cand, initial)), target)) {
                out.pairs.push_back(cand.label);
                found = true;
                break;
            }
        }
        if (!found) throw DecodeInconsistency("no encoding reproduces the announced outcome");
    }
    return out;
}

SecretMessage alice_decode(const OutcomeAnnouncement& announcement,
                           QuantumBlock& reference_photons,
                           const SecretMessage& alice_secret, Rng& rng) {
    const std::size_t n = alice_secret.size();
    if (announcement.entries.size() != n || reference_photons.size() != n)
        throw DecodeInconsistency("announcement does not cover every pair");

    SecretMessage out;
    for (std::size_t m = 0; m < n; ++m) {
        const auto& entry = announcement.entries[m];
        const CompositeBasis basis = CompositeBasis::from_code(entry.basis_code);

        // The kept twin is an eigenstate of the announced basis, so this
        // recovers the pair's initial state deterministically.
        const MeasureResult twin = measure_at(reference_photons, m, basis, rng);
        const PhotonState initial = basis.eigenstate(twin.outcome);

        const PhotonState target = basis.eigenstate(entry.outcome_code);
        const CompositeUnitary& alice_op = composite_unitary(alice_secret.pairs[m]);

        bool found = false;
        for (const CompositeUnitary& cand : all_composite_unitaries()) {
            if (equal_up_to_phase(apply_unitary(cand, apply_unitary(alice_op, initial)), target)) {
                out.pairs.push_back(cand.label);
                found = true;
                break;
            }
        }
        if (!found) throw DecodeInconsistency("no encoding reproduces the announced outcome");
    }
    return out;
}

SessionResult run_session(const ProtocolConfig& config, const SecretMessage& alice_secret,
                          const SecretMessage& bob_secret, const AttackStrategy& attack,
                          Rng& rng) {
    config.validate();
    if (alice_secret.size() != config.n_pairs || bob_secret.size() != config.n_pairs)
        throw std::invalid_argument("secret length must equal n_pairs");

    SessionResult result;
    result.transcript.seed = rng.seed();
    if (attack.kind == AttackKind::EntangleMeasure) result.probe.emplace();

    std::vector<PhotonState> captured;
    const AttackHook hook =
        make_attack_hook(attack, result.probe ? &*result.probe : nullptr, &captured);

    const PreparedSequence prepared = bob_prepare(config, rng);
    QuantumBlock alice_held =
        send_quantum(prepared.sequence, hook, rng, result.transcript, Party::Bob, Party::Alice);

    const CheckOutcome first = first_security_check(alice_held, prepared, result.transcript, rng);
    if (!first.passed) {
        result.aborted = true;
        result.abort_stage = "first-check";
        result.error_rate = first.error_rate;
        if (result.probe) result.probe->sample_ancilla_outcomes(rng);
        return result;
    }

    const auto shifted = shifted_decoy2_positions(prepared);
    broadcast_classical({Party::Bob, DecoyPositions{shifted}}, result.transcript);

    remove_positions(alice_held, prepared.decoy1_positions);

    std::vector<CompositeUnitary> check_ops;
    check_ops.reserve(config.delta2);
    for (std::size_t k = 0; k < config.delta2; ++k)
        check_ops.push_back(composite_unitary(BitPair::from_index(static_cast<int>(rng.next_below(4)))));

    AliceEncoded enc = alice_encode(alice_secret, std::move(alice_held), shifted, check_ops, rng);
    enc.outgoing.block_id = 2;

    QuantumBlock bob_held =
        send_quantum(enc.outgoing, {}, rng, result.transcript, Party::Alice, Party::Bob);

    std::vector<StateLabel> decoy2_labels;
    decoy2_labels.reserve(prepared.decoy2_positions.size());
    for (std::size_t pos : prepared.decoy2_positions)
        decoy2_labels.push_back(prepared.initial_labels[pos]);

    const CheckOutcome second = second_security_check(
        enc.check_bits, bob_held, enc.check_decoy_positions, decoy2_labels, result.transcript, rng);
    if (!second.passed) {
        result.aborted = true;
        result.abort_stage = "second-check";
        result.error_rate = second.error_rate;
        if (result.probe) result.probe->sample_ancilla_outcomes(rng);
        return result;
    }

    remove_positions(bob_held, enc.check_decoy_positions);

    const auto pair_labels = message_pair_labels(prepared);
    const OutcomeAnnouncement ann =
        bob_encode_measure_announce(bob_secret, bob_held, pair_labels, rng, result.transcript);

    result.bob_decoded = bob_decode(ann, pair_labels, bob_secret);
    result.alice_decoded = alice_decode(ann, enc.reference_photons, alice_secret, rng);
    if (result.probe) result.probe->sample_ancilla_outcomes(rng);
    return result;
}

} // namespace qd
