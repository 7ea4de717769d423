#include "qd/leakage.hpp"

#include "qd/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace qd {

namespace {

// Phase-free label of a state known to lie in `basis`.
StateLabel label_in_basis(const PhotonState& state, const CompositeBasis& basis) {
    for (int k = 0; k < 4; ++k)
        if (equal_up_to_phase(state, basis.eigenstate(k))) return basis.eigenstate_label(k);
    throw DecodeInconsistency("state is not an eigenstate of the expected basis");
}

} // namespace

RelationTable build_relation_table(StateLabel initial) {
    RelationTable table;
    table.initial = initial;
    const CompositeBasis basis = preparation_basis(initial);
    const PhotonState start = make_state(initial);
    for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) {
            const PhotonState encoded =
                apply_unitary(composite_unitary(BitPair::from_index(b)),
                              apply_unitary(composite_unitary(BitPair::from_index(a)), start));
            table.cells[b][a] = label_in_basis(encoded, basis);
        }
    return table;
}

CandidateSet eve_candidate_set(const CompositeBasis& announced_basis,
                               int announced_outcome) {
    const PhotonState target = announced_basis.eigenstate(announced_outcome);

    CandidateSet set;
    for (int guess = 0; guess < 4; ++guess) {
        const PhotonState initial = make_state(announced_basis.eigenstate_label(guess));
        for (int a = 0; a < 4; ++a) {
            const PhotonState after_alice =
                apply_unitary(composite_unitary(BitPair::from_index(a)), initial);
            for (int b = 0; b < 4; ++b) {
                const PhotonState after_bob =
                    apply_unitary(composite_unitary(BitPair::from_index(b)), after_alice);
                if (equal_up_to_phase(after_bob, target)) {
                    set.candidates.push_back(Candidate{BitPair::from_index(a),
                                                       BitPair::from_index(b), 1.0 / 16.0});
                    break; // the consistent receiver op is unique per (guess, a)
                }
            }
        }
    }
    return set;
}

double leakage_entropy(const CandidateSet& set) {
    double entropy = 0.0;
    for (const Candidate& c : set.candidates)
        if (c.probability > 0.0) entropy -= c.probability * std::log2(c.probability);
    return entropy;
}

double cabello_efficiency(const EfficiencyInput& input) {
    if (input.secret_bits < 0.0 || input.qubits_used < 0.0 || input.classical_bits < 0.0)
        throw std::invalid_argument("efficiency inputs must be nonnegative");
    const double consumed = input.qubits_used + input.classical_bits;
    if (consumed == 0.0)
        throw DivisionDomain("efficiency undefined with zero qubits and classical bits");
    return input.secret_bits / consumed;
}

} // namespace qd
