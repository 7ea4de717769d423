#include "qd/basis.hpp"

#include <cmath>

namespace qd {

namespace {

PolState pol_state_of(PolBasis b, int index) {
    if (b == PolBasis::Zp) return index == 0 ? PolState::H : PolState::V;
    return index == 0 ? PolState::R : PolState::A;
}

SpaState spa_state_of(SpaBasis b, int index) {
    if (b == SpaBasis::Zs) return index == 0 ? SpaState::B1 : SpaState::B2;
    return index == 0 ? SpaState::S : SpaState::A;
}

} // namespace

StateLabel CompositeBasis::eigenstate_label(int k) const {
    return StateLabel{pol_state_of(pol_basis, (k >> 1) & 1),
                      spa_state_of(spa_basis, k & 1)};
}

PhotonState CompositeBasis::eigenstate(int k) const {
    return make_state(eigenstate_label(k));
}

int CompositeBasis::code() const {
    return (pol_basis == PolBasis::Xp ? 2 : 0) + (spa_basis == SpaBasis::Xs ? 1 : 0);
}

CompositeBasis CompositeBasis::from_code(int code) {
    return CompositeBasis{(code & 2) ? PolBasis::Xp : PolBasis::Zp,
                          (code & 1) ? SpaBasis::Xs : SpaBasis::Zs};
}

const std::array<CompositeBasis, 4>& all_composite_bases() {
    static const std::array<CompositeBasis, 4> table = {
        CompositeBasis::from_code(0), CompositeBasis::from_code(1),
        CompositeBasis::from_code(2), CompositeBasis::from_code(3)};
    return table;
}

PolBasis basis_of(PolState p) {
    return (p == PolState::H || p == PolState::V) ? PolBasis::Zp : PolBasis::Xp;
}

SpaBasis basis_of(SpaState s) {
    return (s == SpaState::B1 || s == SpaState::B2) ? SpaBasis::Zs : SpaBasis::Xs;
}

int index_in_basis(PolState p) {
    return (p == PolState::V || p == PolState::A) ? 1 : 0;
}

int index_in_basis(SpaState s) {
    return (s == SpaState::B2 || s == SpaState::A) ? 1 : 0;
}

CompositeBasis preparation_basis(StateLabel label) {
    return CompositeBasis{basis_of(label.pol), basis_of(label.spa)};
}

int eigen_index(StateLabel label) {
    return index_in_basis(label.pol) * 2 + index_in_basis(label.spa);
}

std::array<double, 4> outcome_probabilities(const PhotonState& state,
                                            const CompositeBasis& basis) {
    std::array<double, 4> probs{};
    for (int k = 0; k < 4; ++k)
        probs[k] = std::norm(inner_product(basis.eigenstate(k), state));
    return probs;
}

MeasureResult measure(const PhotonState& state, const CompositeBasis& basis, Rng& rng) {
    const auto probs = outcome_probabilities(state, basis);
    const double u = rng.next_double();
    double cum = 0.0;
    int outcome = 3;
    for (int k = 0; k < 4; ++k) {
        cum += probs[k];
        if (u < cum) {
            outcome = k;
            break;
        }
    }
    return MeasureResult{outcome, basis.eigenstate(outcome)};
}

std::string token(CompositeBasis b) {
    return std::string(b.pol_basis == PolBasis::Zp ? "Zp" : "Xp") +
           (b.spa_basis == SpaBasis::Zs ? "Zs" : "Xs");
}

std::string pretty(CompositeBasis b) {
    return std::string(b.pol_basis == PolBasis::Zp ? "Zp" : "Xp") + "⊗" +
           (b.spa_basis == SpaBasis::Zs ? "Zs" : "Xs");
}

} // namespace qd
