#include "qd/joint.hpp"

#include <cmath>

namespace qd {

JointState attach_ancilla(const PhotonState& photon, int ancilla) {
    JointState out;
    for (int j = 0; j < 4; ++j) out.amps[j * 2 + (ancilla & 1)] = photon.amps[j];
    return out;
}

double norm_sq(const JointState& j) {
    double acc = 0.0;
    for (const auto& amp : j.amps) acc += std::norm(amp);
    return acc;
}

JointState apply_photon_unitary(const CompositeUnitary& u, const JointState& j) {
    JointState out;
    for (int anc = 0; anc < 2; ++anc)
        for (int r = 0; r < 4; ++r) {
            cplx acc{0.0, 0.0};
            for (int c = 0; c < 4; ++c) acc += u.matrix[r][c] * j.amps[c * 2 + anc];
            out.amps[r * 2 + anc] = acc;
        }
    return out;
}

namespace {

// Projection amplitudes of the photon part onto one eigenstate, per ancilla
// value. Same accumulation order as inner_product() so that a product state
// photon (x) |0> reproduces the pure-photon probabilities bit for bit.
std::array<cplx, 2> eigen_partials(const JointState& j, const PhotonState& eigen) {
    std::array<cplx, 2> partial{cplx{0.0, 0.0}, cplx{0.0, 0.0}};
    for (int anc = 0; anc < 2; ++anc)
        for (int k = 0; k < 4; ++k)
            partial[anc] += std::conj(eigen.amps[k]) * j.amps[k * 2 + anc];
    return partial;
}

} // namespace

std::array<double, 4> photon_outcome_probabilities(const JointState& j,
                                                   const CompositeBasis& basis) {
    std::array<double, 4> probs{};
    for (int k = 0; k < 4; ++k) {
        const auto partial = eigen_partials(j, basis.eigenstate(k));
        probs[k] = std::norm(partial[0]) + std::norm(partial[1]);
    }
    return probs;
}

JointMeasureResult measure_photon(const JointState& j, const CompositeBasis& basis,
                                  Rng& rng) {
    const auto probs = photon_outcome_probabilities(j, basis);
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

    const PhotonState eigen = basis.eigenstate(outcome);
    const auto partial = eigen_partials(j, eigen);
    const double inv = 1.0 / std::sqrt(probs[outcome]);

    JointMeasureResult result;
    result.outcome = outcome;
    for (int p = 0; p < 4; ++p)
        for (int anc = 0; anc < 2; ++anc)
            result.post_state.amps[p * 2 + anc] = eigen.amps[p] * partial[anc] * inv;
    return result;
}

std::array<double, 2> ancilla_probabilities(const JointState& j) {
    std::array<double, 2> probs{0.0, 0.0};
    for (int p = 0; p < 4; ++p)
        for (int anc = 0; anc < 2; ++anc) probs[anc] += std::norm(j.amps[p * 2 + anc]);
    return probs;
}

} // namespace qd
