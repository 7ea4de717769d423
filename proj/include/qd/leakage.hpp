#pragma once

#include "qd/basis.hpp"
#include "qd/photon.hpp"
#include "qd/unitary.hpp"

#include <array>
#include <vector>

namespace qd {

// For a fixed initial state, the phase-free outcome label produced by every
// (receiver op, sender op) combination. cells[b][a] is the label of
// C_b C_a |initial>, indexed by the 2-bit operation labels.
struct RelationTable {
    StateLabel initial;
    std::array<std::array<StateLabel, 4>, 4> cells{};
};

RelationTable build_relation_table(StateLabel initial);

// One joint hypothesis an outside observer can hold about the two encoding
// operations behind an announcement.
struct Candidate {
    BitPair alice;
    BitPair bob;
    double probability = 0.0;
};

struct CandidateSet {
    std::vector<Candidate> candidates;
};

// Everything an outside observer can infer from one public announcement:
// she knows the measuring basis and the outcome but must guess the initial
// state uniformly among the four eigenstates of that basis, and for each
// guess four operation pairs explain the outcome — 16 equiprobable
// candidates in total.
CandidateSet eve_candidate_set(const CompositeBasis& announced_basis,
                               int announced_outcome);

// Shannon entropy of the candidate distribution, in bits.
double leakage_entropy(const CandidateSet& set);

struct EfficiencyInput {
    double secret_bits = 0.0;    // expected secret bits received
    double qubits_used = 0.0;    // qubits consumed
    double classical_bits = 0.0; // classical bits exchanged
};

// Cabello's information-theoretical efficiency: secret bits over qubits
// plus classical bits. Throws DivisionDomain when nothing was consumed.
double cabello_efficiency(const EfficiencyInput& input);

} // namespace qd
