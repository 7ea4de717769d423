#include "qd/attacks.hpp"

#include <cmath>
#include <stdexcept>

namespace qd {

std::string to_string(AttackKind k) {
    switch (k) {
        case AttackKind::None: return "none";
        case AttackKind::InterceptResend: return "intercept-resend";
        case AttackKind::MeasureResend: return "measure-resend";
        case AttackKind::EntangleMeasure: return "entangle-measure";
    }
    return "?";
}

std::optional<AttackKind> parse_attack_kind(std::string_view text) {
    if (text == "none") return AttackKind::None;
    if (text == "intercept-resend") return AttackKind::InterceptResend;
    if (text == "measure-resend") return AttackKind::MeasureResend;
    if (text == "entangle-measure") return AttackKind::EntangleMeasure;
    return std::nullopt;
}

void EveProbe::sample_ancilla_outcomes(Rng& rng) {
    ancilla_outcomes.clear();
    ancilla_outcomes.reserve(joints.size());
    for (const auto& joint : joints) {
        const auto probs = ancilla_probabilities(*joint);
        ancilla_outcomes.push_back(rng.next_double() < probs[0] ? 0 : 1);
    }
}

QuantumBlock intercept_resend_tap(const QuantumBlock& block, Rng& rng,
                                  std::vector<PhotonState>* captured) {
    QuantumBlock out;
    out.block_id = block.block_id;
    out.photons.reserve(block.size());
    for (const auto& photon : block.photons) {
        if (captured) captured->push_back(photon);
        out.photons.push_back(make_state(all_product_labels()[rng.next_below(16)]));
    }
    return out;
}

QuantumBlock measure_resend_tap(const QuantumBlock& block, Rng& rng) {
    QuantumBlock out;
    out.block_id = block.block_id;
    out.photons.reserve(block.size());
    for (const auto& photon : block.photons) {
        const auto& basis = all_composite_bases()[rng.next_below(4)];
        out.photons.push_back(measure(photon, basis, rng).post_state);
    }
    return out;
}

JointState apply_probe_coupling(const JointState& j, double beta) {
    const double alpha = std::sqrt(1.0 - beta * beta);
    JointState out = j;
    // Rotation in the {H|0>, V|1>} and {V|0>, H|1>} planes, per spatial mode.
    for (int spa = 0; spa < 2; ++spa) {
        const cplx h0 = j.amps[(0 * 2 + spa) * 2 + 0];
        const cplx h1 = j.amps[(0 * 2 + spa) * 2 + 1];
        const cplx v0 = j.amps[(1 * 2 + spa) * 2 + 0];
        const cplx v1 = j.amps[(1 * 2 + spa) * 2 + 1];
        out.amps[(0 * 2 + spa) * 2 + 0] = alpha * h0 - beta * v1;
        out.amps[(1 * 2 + spa) * 2 + 1] = beta * h0 + alpha * v1;
        out.amps[(1 * 2 + spa) * 2 + 0] = alpha * v0 - beta * h1;
        out.amps[(0 * 2 + spa) * 2 + 1] = beta * v0 + alpha * h1;
    }
    return out;
}

JointState entangle_photon(const PhotonState& photon, double beta) {
    return apply_probe_coupling(attach_ancilla(photon, 0), beta);
}

QuantumBlock entangle_measure_tap(const QuantumBlock& block, double beta,
                                  EveProbe& probe) {
    QuantumBlock out = block;
    out.ensure_links();
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto joint = std::make_shared<JointState>(entangle_photon(out.photons[i], beta));
        out.links[i] = joint;
        probe.joints.push_back(std::move(joint));
    }
    return out;
}

AttackHook make_attack_hook(const AttackStrategy& strategy, EveProbe* probe,
                            std::vector<PhotonState>* captured) {
    switch (strategy.kind) {
        case AttackKind::None:
            return {};
        case AttackKind::InterceptResend:
            return [captured](const QuantumBlock& b, Rng& rng) {
                return intercept_resend_tap(b, rng, captured);
            };
        case AttackKind::MeasureResend:
            return [](const QuantumBlock& b, Rng& rng) {
                return measure_resend_tap(b, rng);
            };
        case AttackKind::EntangleMeasure: {
            const double beta = strategy.beta;
            if (probe)
                return [probe, beta](const QuantumBlock& b, Rng&) {
                    return entangle_measure_tap(b, beta, *probe);
                };
            auto local = std::make_shared<EveProbe>();
            return [local, beta](const QuantumBlock& b, Rng&) {
                return entangle_measure_tap(b, beta, *local);
            };
        }
    }
    return {};
}

double detection_probability_closed_form(AttackKind kind, std::size_t delta1,
                                         double beta) {
    const double d = static_cast<double>(delta1);
    switch (kind) {
        case AttackKind::None:
            return 0.0;
        case AttackKind::InterceptResend:
            return 1.0 - std::pow(0.25, d);
        case AttackKind::MeasureResend:
            return 1.0 - std::pow(9.0 / 16.0, d);
        case AttackKind::EntangleMeasure:
            return 1.0 - std::pow(1.0 - entangle_mean_decoy_detection(beta), d);
    }
    return 0.0;
}

double exact_per_decoy_pass_probability(AttackKind kind) {
    switch (kind) {
        case AttackKind::None:
            return 1.0;
        case AttackKind::InterceptResend: {
            // Alice measures Eve's fake in the decoy's preparation basis;
            // it passes iff the outcome is the decoy's own eigenstate.
            double sum = 0.0;
            for (const StateLabel decoy : all_product_labels()) {
                const CompositeBasis basis = preparation_basis(decoy);
                const int expected = eigen_index(decoy);
                for (const StateLabel fake : all_product_labels())
                    sum += outcome_probabilities(make_state(fake), basis)[expected];
            }
            return sum / 256.0;
        }
        case AttackKind::MeasureResend: {
            // Eve's measurement collapses the decoy; the collapsed state is
            // then re-measured in the preparation basis.
            double sum = 0.0;
            for (const StateLabel decoy : all_product_labels()) {
                const CompositeBasis basis = preparation_basis(decoy);
                const int expected = eigen_index(decoy);
                const PhotonState state = make_state(decoy);
                for (const CompositeBasis& eve_basis : all_composite_bases()) {
                    const auto eve_probs = outcome_probabilities(state, eve_basis);
                    for (int k = 0; k < 4; ++k)
                        sum += eve_probs[k] *
                               outcome_probabilities(eve_basis.eigenstate(k), basis)[expected];
                }
            }
            return sum / 64.0;
        }
        case AttackKind::EntangleMeasure:
            throw std::invalid_argument(
                "entangle-measure pass probability depends on beta; use "
                "entangle_mean_decoy_detection");
    }
    return 1.0;
}

double entangle_detection_for_decoy(StateLabel decoy, double beta) {
    const JointState joint = entangle_photon(make_state(decoy), beta);
    const auto probs = photon_outcome_probabilities(joint, preparation_basis(decoy));
    return 1.0 - probs[eigen_index(decoy)];
}

double entangle_mean_decoy_detection(double beta) {
    double sum = 0.0;
    for (const StateLabel decoy : all_product_labels())
        sum += entangle_detection_for_decoy(decoy, beta);
    return sum / 16.0;
}

} // namespace qd
