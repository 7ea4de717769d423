#include "qd/channel.hpp"

#include "qd/errors.hpp"

#include <algorithm>

namespace qd {

std::string to_string(Party p) { return p == Party::Alice ? "Alice" : "Bob"; }

void QuantumBlock::ensure_links() {
    if (links.empty()) links.resize(photons.size());
}

void apply_at(QuantumBlock& block, std::size_t i, const CompositeUnitary& u) {
    block.photons[i] = apply_unitary(u, block.photons[i]);
    if (block.linked(i)) *block.links[i] = apply_photon_unitary(u, *block.links[i]);
}

MeasureResult measure_at(QuantumBlock& block, std::size_t i,
                         const CompositeBasis& basis, Rng& rng) {
    if (block.linked(i)) {
        const auto joint = measure_photon(*block.links[i], basis, rng);
        *block.links[i] = joint.post_state;
        block.photons[i] = basis.eigenstate(joint.outcome);
        return MeasureResult{joint.outcome, block.photons[i]};
    }
    const auto result = measure(block.photons[i], basis, rng);
    block.photons[i] = result.post_state;
    return result;
}

QuantumBlock extract_positions(QuantumBlock& block,
                               const std::vector<std::size_t>& positions) {
    QuantumBlock out;
    QuantumBlock rest;

    std::size_t next = 0;
    for (std::size_t i = 0; i < block.size(); ++i) {
        const bool take = next < positions.size() && positions[next] == i;
        QuantumBlock& dst = take ? out : rest;
        dst.photons.push_back(block.photons[i]);
        if (!block.links.empty()) dst.links.push_back(block.links[i]);
        if (take) ++next;
    }
    rest.block_id = block.block_id;
    block = std::move(rest);
    return out;
}

void remove_positions(QuantumBlock& block, const std::vector<std::size_t>& positions) {
    (void)extract_positions(block, positions);
}

void insert_positions(QuantumBlock& block, QuantumBlock items,
                      const std::vector<std::size_t>& positions) {
    const std::size_t total = block.size() + items.size();
    const bool with_links = !block.links.empty() || !items.links.empty();
    if (with_links) {
        block.ensure_links();
        items.ensure_links();
    }

    QuantumBlock out;
    out.block_id = block.block_id;

    std::size_t next_item = 0;
    std::size_t next_rest = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const bool take_item = next_item < positions.size() && positions[next_item] == i;
        if (take_item) {
            out.photons.push_back(items.photons[next_item]);
            if (with_links) out.links.push_back(items.links[next_item]);
            ++next_item;
        } else {
            out.photons.push_back(block.photons[next_rest]);
            if (with_links) out.links.push_back(block.links[next_rest]);
            ++next_rest;
        }
    }
    block = std::move(out);
}

const char* kind_name(const Payload& p) {
    switch (p.index()) {
        case 0: return "DecoyPositionsAndBases";
        case 1: return "MeasurementOutcomes";
        case 2: return "DecoyPositions";
        case 3: return "CheckBitsDecoded";
        case 4: return "OutcomeAnnouncement";
        case 5: return "Abort";
    }
    return "?";
}

void SessionTranscript::record_transfer(const QuantumTransfer& t) {
    if (aborted)
        throw ProtocolOrderError("quantum transfer after abort");
    events.push_back(Event{t});
}

void broadcast_classical(ClassicalMessage msg, SessionTranscript& transcript) {
    if (transcript.aborted)
        throw ProtocolOrderError("classical broadcast after abort");
    const bool is_abort = std::holds_alternative<AbortNotice>(msg.payload);
    transcript.events.push_back(SessionTranscript::Event{std::move(msg)});
    if (is_abort) transcript.aborted = true;
}

QuantumBlock send_quantum(const QuantumBlock& block, const AttackHook& tap, Rng& rng,
                          SessionTranscript& transcript, Party from, Party to) {
    transcript.record_transfer(QuantumTransfer{from, to, block.block_id, block.size()});
    if (!tap) return block;
    QuantumBlock out = tap(block, rng);
    if (out.size() != block.size())
        throw LengthMismatch("tap returned " + std::to_string(out.size()) +
                             " photons for a block of " + std::to_string(block.size()));
    out.block_id = block.block_id;
    return out;
}

} // namespace qd
