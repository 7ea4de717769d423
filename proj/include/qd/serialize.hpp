#pragma once

#include "qd/channel.hpp"
#include "qd/protocol.hpp"

#include <json.hpp>

#include <string>

namespace qd {

nlohmann::json to_json(const StateLabel& label);
nlohmann::json to_json(const SessionTranscript::Event& event);
nlohmann::json to_json(const SessionResult& result); // transcript not included

// One event per line, in order.
std::string transcript_lines(const SessionTranscript& transcript);

} // namespace qd
