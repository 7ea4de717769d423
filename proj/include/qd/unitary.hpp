#pragma once

#include "qd/photon.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace qd {

// Two classical bits. The high bit selects the polarization factor, the low
// bit the spatial factor of a composite encoding operation.
struct BitPair {
    std::uint8_t hi = 0;
    std::uint8_t lo = 0;

    int index() const { return hi * 2 + lo; }
    static BitPair from_index(int k) {
        return BitPair{static_cast<std::uint8_t>((k >> 1) & 1),
                       static_cast<std::uint8_t>(k & 1)};
    }

    friend bool operator==(const BitPair&, const BitPair&) = default;
};

std::string to_string(BitPair b); // "10"

// Tensor product of a polarization factor and a spatial factor, each either
// the identity or the flip that maps every basis state to the other state of
// its own basis (up to sign). None of the four products can move a photon
// out of its preparation basis.
struct CompositeUnitary {
    BitPair label;
    std::array<std::array<double, 4>, 4> matrix{}; // canonical amplitude order
};

// The agreed encoding map: label (i, j) selects flip-or-identity per DOF.
const CompositeUnitary& composite_unitary(BitPair label);
const std::array<CompositeUnitary, 4>& all_composite_unitaries();

PhotonState apply_unitary(const CompositeUnitary& u, const PhotonState& state);

// u.matrix * v.matrix, for closure checks.
std::array<std::array<double, 4>, 4> matrix_product(const CompositeUnitary& u,
                                                    const CompositeUnitary& v);

} // namespace qd
