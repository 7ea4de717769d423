#pragma once

#include "qd/photon.hpp"
#include "qd/rng.hpp"

#include <array>
#include <string>

namespace qd {

enum class PolBasis { Zp, Xp };
enum class SpaBasis { Zs, Xs };

// One of the four composite measuring bases. Eigenstates carry canonical
// labels 0..3 = pol_index * 2 + spa_index, with pol order (H,V) or (R,A)
// and spatial order (b1,b2) or (s,a).
struct CompositeBasis {
    PolBasis pol_basis = PolBasis::Zp;
    SpaBasis spa_basis = SpaBasis::Zs;

    StateLabel eigenstate_label(int k) const;
    PhotonState eigenstate(int k) const;

    // 2-bit wire code: 00 ZpZs, 01 ZpXs, 10 XpZs, 11 XpXs.
    int code() const;
    static CompositeBasis from_code(int code);

    friend bool operator==(const CompositeBasis&, const CompositeBasis&) = default;
};

const std::array<CompositeBasis, 4>& all_composite_bases();

PolBasis basis_of(PolState p); // H,V -> Zp; R,A -> Xp
SpaBasis basis_of(SpaState s); // b1,b2 -> Zs; s,a -> Xs
int index_in_basis(PolState p); // position within its own basis, 0 or 1
int index_in_basis(SpaState s);

// The unique composite basis a product state is an eigenstate of.
CompositeBasis preparation_basis(StateLabel label);
// Canonical eigenstate index of a product state within its own basis.
int eigen_index(StateLabel label);

// Born rule over the four eigenstates; sums to 1 for a normalized state.
std::array<double, 4> outcome_probabilities(const PhotonState& state,
                                            const CompositeBasis& basis);

struct MeasureResult {
    int outcome = 0;          // canonical eigenstate label
    PhotonState post_state{}; // the eigenstate, phase-free
};

// Projective measurement; consumes exactly one uniform draw from rng.
MeasureResult measure(const PhotonState& state, const CompositeBasis& basis, Rng& rng);

std::string token(CompositeBasis b);  // "ZpXs" — stable wire/JSON token
std::string pretty(CompositeBasis b); // "Zp(x)Xs" with a tensor sign, for tables

} // namespace qd
