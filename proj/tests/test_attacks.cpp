#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qd/attacks.hpp"
#include "qd/experiments.hpp"
#include "qd/protocol.hpp"
#include "qd/serialize.hpp"
#include "qd/trials.hpp"

#include <cmath>

using namespace qd;

TEST_CASE("per-decoy pass probabilities by exact enumeration") {
    CHECK(std::abs(exact_per_decoy_pass_probability(AttackKind::InterceptResend) - 0.25) <
          1e-12);
    CHECK(std::abs(exact_per_decoy_pass_probability(AttackKind::MeasureResend) - 9.0 / 16.0) <
          1e-12);
    CHECK(exact_per_decoy_pass_probability(AttackKind::None) == 1.0);
    CHECK_THROWS_AS(exact_per_decoy_pass_probability(AttackKind::EntangleMeasure),
                    std::invalid_argument);
}

TEST_CASE("closed-form detection probabilities") {
    CHECK(detection_probability_closed_form(AttackKind::InterceptResend, 0) == 0.0);
    CHECK(detection_probability_closed_form(AttackKind::MeasureResend, 0) == 0.0);
    CHECK(detection_probability_closed_form(AttackKind::None, 5) == 0.0);

    CHECK(detection_probability_closed_form(AttackKind::InterceptResend, 1) ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK(detection_probability_closed_form(AttackKind::InterceptResend, 2) ==
          doctest::Approx(0.9375).epsilon(1e-12));
    CHECK(detection_probability_closed_form(AttackKind::InterceptResend, 3) ==
          doctest::Approx(0.984375).epsilon(1e-12));

    CHECK(detection_probability_closed_form(AttackKind::MeasureResend, 1) ==
          doctest::Approx(0.4375).epsilon(1e-12));
    CHECK(detection_probability_closed_form(AttackKind::MeasureResend, 2) ==
          doctest::Approx(0.68359375).epsilon(1e-12));
    CHECK(detection_probability_closed_form(AttackKind::MeasureResend, 3) ==
          doctest::Approx(3367.0 / 4096.0).epsilon(1e-12));
}

TEST_CASE("monte carlo estimates agree with the closed forms") {
    const Rng base(1404);
    const std::uint64_t trials = 20000;
    for (AttackKind kind : {AttackKind::InterceptResend, AttackKind::MeasureResend}) {
        for (std::size_t d1 : {1, 2, 3, 4}) {
            ProtocolConfig cfg;
            cfg.n_pairs = 1;
            cfg.delta1 = d1;
            cfg.delta2 = 0; // isolate the first check
            const AttackStrategy strategy{kind, 0.0};
            const DetectionEstimate est =
                estimate_detection_probability(strategy, cfg, trials, base.substream(d1));
            const double p = detection_probability_closed_form(kind, d1);
            const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
            CHECK(std::abs(est.estimate - p) <= 3.0 * sigma);
        }
    }
}

TEST_CASE("the serial reference and the parallel kernel count identically") {
    ProtocolConfig cfg;
    cfg.n_pairs = 1;
    cfg.delta1 = 2;
    cfg.delta2 = 0;
    const Rng base(505);
    const AttackStrategy strategy = AttackStrategy::measure_resend();
    const DetectionEstimate parallel =
        estimate_detection_probability(strategy, cfg, 5000, base);
    const DetectionEstimate serial =
        estimate_detection_probability_serial(strategy, cfg, 5000, base);
    CHECK(parallel.detections == serial.detections);
    CHECK(parallel.estimate == serial.estimate);

    const DetectionEstimate p2 =
        estimate_entangle_decoy_detection(StateLabel{PolState::H, SpaState::B1}, 0.5, 5000, base);
    const DetectionEstimate s2 = estimate_entangle_decoy_detection_serial(
        StateLabel{PolState::H, SpaState::B1}, 0.5, 5000, base);
    CHECK(p2.detections == s2.detections);
}

TEST_CASE("no attack never aborts") {
    ProtocolConfig cfg;
    cfg.n_pairs = 2;
    cfg.delta1 = 3;
    cfg.delta2 = 2;
    const DetectionEstimate est =
        estimate_detection_probability(AttackStrategy::none(), cfg, 2000, Rng(606));
    CHECK(est.detections == 0);
    CHECK(est.estimate == 0.0);
}

TEST_CASE("the probe coupling is unitary and its ancilla states are orthogonal") {
    const double beta = 0.6;

    // Feed all eight joint basis vectors through the coupling and check the
    // images are orthonormal.
    std::array<JointState, 8> images;
    for (int b = 0; b < 8; ++b) {
        JointState e{};
        e.amps[b] = cplx(1.0, 0.0);
        images[b] = apply_probe_coupling(e, beta);
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            cplx ip{0.0, 0.0};
            for (int k = 0; k < 8; ++k)
                ip += std::conj(images[i].amps[k]) * images[j].amps[k];
            CHECK(std::abs(ip - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) < 1e-12);
        }

    // Coupling (H,b1) x |0> leaves amplitude alpha on ancilla 0 with H and
    // beta on the orthogonal ancilla 1 with V; nothing else is populated.
    const JointState coupled = entangle_photon(make_state(PolState::H, SpaState::B1), beta);
    const double alpha = std::sqrt(1.0 - beta * beta);
    CHECK(std::abs(coupled.amps[0] - cplx(alpha, 0.0)) < 1e-12); // (H,b1) anc 0
    CHECK(std::abs(coupled.amps[5] - cplx(beta, 0.0)) < 1e-12);  // (V,b1) anc 1
    double rest = 0.0;
    for (int k = 0; k < 8; ++k)
        if (k != 0 && k != 5) rest += std::norm(coupled.amps[k]);
    CHECK(rest < 1e-24);
}

TEST_CASE("entangle-measure detection for the polarization-basis decoy") {
    const StateLabel hb1{PolState::H, SpaState::B1};
    // Detection equals the squared coupling amplitude when the decoy is
    // checked in its own (all-Z) basis.
    for (double beta2 : {0.0, 0.25, 1.0}) {
        const double beta = std::sqrt(beta2);
        CHECK(std::abs(entangle_detection_for_decoy(hb1, beta) - beta2) < 1e-12);
    }
    CHECK(entangle_detection_for_decoy(hb1, 0.0) == 0.0);
    CHECK(entangle_detection_for_decoy(hb1, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("X-polarization decoys are blind to this coupling") {
    // The chosen completion rotates {H|0>,V|1>} and {V|0>,H|1>} together, so
    // R/A polarization survives unchanged and only Z-prepared decoys react.
    for (double beta : {0.3, 0.7, 1.0}) {
        for (const StateLabel decoy : all_product_labels()) {
            const double d = entangle_detection_for_decoy(decoy, beta);
            if (basis_of(decoy.pol) == PolBasis::Zp)
                CHECK(std::abs(d - beta * beta) < 1e-12);
            else
                CHECK(std::abs(d) < 1e-12);
        }
        CHECK(std::abs(entangle_mean_decoy_detection(beta) - beta * beta / 2.0) < 1e-12);
    }
}

TEST_CASE("beta = 1 flips a Z-polarization decoy outright") {
    const JointState coupled = entangle_photon(make_state(PolState::H, SpaState::B1), 1.0);
    Rng rng(707);
    const CompositeBasis zpzs{PolBasis::Zp, SpaBasis::Zs};
    for (int i = 0; i < 50; ++i) {
        const auto res = measure_photon(coupled, zpzs, rng);
        CHECK(res.outcome == eigen_index(StateLabel{PolState::V, SpaState::B1}));
    }
}

TEST_CASE("monte carlo decoy detection tracks the analytic value") {
    const StateLabel hb1{PolState::H, SpaState::B1};
    const std::uint64_t trials = 20000;
    const DetectionEstimate est =
        estimate_entangle_decoy_detection(hb1, 0.5, trials, Rng(808));
    const double p = 0.25;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    CHECK(std::abs(est.estimate - p) <= 3.0 * sigma);

    // Degenerate couplings are exact.
    CHECK(estimate_entangle_decoy_detection(hb1, 0.0, 2000, Rng(1)).detections == 0);
    CHECK(estimate_entangle_decoy_detection(hb1, 1.0, 2000, Rng(2)).detections == 2000);
}

TEST_CASE("a zero-strength probe is indistinguishable from no attack") {
    ProtocolConfig cfg;
    cfg.n_pairs = 4;
    cfg.delta1 = 3;
    cfg.delta2 = 3;

    const auto run_with = [&cfg](const AttackStrategy& strategy) {
        Rng rng(909);
        const SecretMessage alice = SecretMessage::random(cfg.n_pairs, rng);
        const SecretMessage bob = SecretMessage::random(cfg.n_pairs, rng);
        const SessionResult result = run_session(cfg, alice, bob, strategy, rng);
        return to_json(result).dump() + "\n" + transcript_lines(result.transcript);
    };

    CHECK(run_with(AttackStrategy::entangle_measure(0.0)) == run_with(AttackStrategy::none()));
}

TEST_CASE("an idle probe's ancillas all read zero") {
    ProtocolConfig cfg;
    cfg.n_pairs = 2;
    cfg.delta1 = 2;
    cfg.delta2 = 2;
    Rng rng(1010);
    const SecretMessage alice = SecretMessage::random(cfg.n_pairs, rng);
    const SecretMessage bob = SecretMessage::random(cfg.n_pairs, rng);
    const SessionResult result =
        run_session(cfg, alice, bob, AttackStrategy::entangle_measure(0.0), rng);
    REQUIRE(result.probe.has_value());
    CHECK(result.probe->joints.size() == 2 * cfg.n_pairs + cfg.delta1 + cfg.delta2);
    REQUIRE(result.probe->ancilla_outcomes.size() == result.probe->joints.size());
    for (int outcome : result.probe->ancilla_outcomes) CHECK(outcome == 0);
}

TEST_CASE("measure-resend forwards eigenstates of Eve's basis unchanged") {
    // A photon already in an eigenstate of the basis Eve happens to pick is
    // passed through untouched; statistically, a (H,b1) input survives a
    // random-basis measure-resend exactly when re-measurement agrees.
    Rng rng(1111);
    QuantumBlock block;
    block.photons.assign(1, make_state(PolState::H, SpaState::B1));
    int unchanged = 0;
    const int reps = 20000;
    for (int i = 0; i < reps; ++i) {
        const QuantumBlock out = measure_resend_tap(block, rng);
        if (equal_up_to_phase(out.photons[0], block.photons[0])) ++unchanged;
    }
    // Per DOF: same basis (prob 1/2) keeps the state; different basis keeps
    // the label never (it collapses to the other basis). Expected fraction
    // of bit-identical forwards is 1/4.
    const double expected = 0.25;
    const double sigma = std::sqrt(expected * (1.0 - expected) / reps);
    CHECK(std::abs(static_cast<double>(unchanged) / reps - expected) <= 4.0 * sigma);
}

TEST_CASE("attack kind names round trip") {
    for (AttackKind kind : {AttackKind::None, AttackKind::InterceptResend,
                            AttackKind::MeasureResend, AttackKind::EntangleMeasure})
        CHECK(parse_attack_kind(to_string(kind)) == kind);
    CHECK_FALSE(parse_attack_kind("bogus").has_value());
}
