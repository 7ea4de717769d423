#pragma once

#include <stdexcept>
#include <string>

namespace qd {

// A channel tap returned a different photon count than it received.
struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sequence handed to an encoding step does not have the expected shape.
struct SequenceShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No operation label is consistent with an announced measurement outcome.
struct DecodeInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Classical traffic was attempted after the session aborted.
struct ProtocolOrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Efficiency requested with zero resources consumed.
struct DivisionDomain : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace qd
