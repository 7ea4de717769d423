#include "qd/serialize.hpp"

#include "qd/basis.hpp"

#include <sstream>

namespace qd {

using nlohmann::json;

json to_json(const StateLabel& label) {
    return json{{"pol", to_string(label.pol)}, {"spa", to_string(label.spa)}};
}

namespace {

json payload_json(const Payload& payload) {
    json j;
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, DecoyPositionsAndBases>) {
                j["positions"] = p.positions;
                json bases = json::array();
                for (int code : p.basis_codes) bases.push_back(token(CompositeBasis::from_code(code)));
                j["bases"] = bases;
            } else if constexpr (std::is_same_v<T, MeasurementOutcomes>) {
                j["outcomes"] = p.outcome_codes;
            } else if constexpr (std::is_same_v<T, DecoyPositions>) {
                j["positions"] = p.positions;
            } else if constexpr (std::is_same_v<T, CheckBitsDecoded>) {
                json labels = json::array();
                for (const BitPair& b : p.labels) labels.push_back(to_string(b));
                j["labels"] = labels;
            } else if constexpr (std::is_same_v<T, OutcomeAnnouncement>) {
                json entries = json::array();
                for (const auto& e : p.entries) {
                    const CompositeBasis basis = CompositeBasis::from_code(e.basis_code);
                    entries.push_back(json{{"basis", token(basis)},
                                           {"outcome", to_string(basis.eigenstate_label(e.outcome_code))}});
                }
                j["entries"] = entries;
            } else if constexpr (std::is_same_v<T, AbortNotice>) {
                j["stage"] = p.stage;
                j["error_rate"] = p.error_rate;
            }
        },
        payload);
    return j;
}

} // namespace

json to_json(const SessionTranscript::Event& event) {
    json j;
    if (const auto* msg = std::get_if<ClassicalMessage>(&event.body)) {
        j["event"] = "classical";
        j["sender"] = to_string(msg->sender);
        j["kind"] = kind_name(msg->payload);
        j["payload"] = payload_json(msg->payload);
    } else {
        const auto& t = std::get<QuantumTransfer>(event.body);
        j["event"] = "quantum";
        j["from"] = to_string(t.from);
        j["to"] = to_string(t.to);
        j["block_id"] = t.block_id;
        j["photons"] = t.photon_count;
    }
    return j;
}

json to_json(const SessionResult& result) {
    json j;
    j["record"] = "session";
    j["seed"] = result.transcript.seed;
    j["aborted"] = result.aborted;
    if (result.aborted) {
        j["abort_stage"] = result.abort_stage;
        j["error_rate"] = result.error_rate;
    }
    if (result.alice_decoded) j["alice_decoded"] = result.alice_decoded->to_bits();
    if (result.bob_decoded) j["bob_decoded"] = result.bob_decoded->to_bits();
    return j;
}

std::string transcript_lines(const SessionTranscript& transcript) {
    std::ostringstream out;
    for (const auto& event : transcript.events) out << to_json(event).dump() << '\n';
    return out.str();
}

} // namespace qd
