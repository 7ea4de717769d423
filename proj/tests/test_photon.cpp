#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qd/basis.hpp"
#include "qd/joint.hpp"
#include "qd/photon.hpp"
#include "qd/rng.hpp"

#include <cmath>

using namespace qd;

namespace {

PhotonState random_state(Rng& rng) {
    PhotonState s;
    double norm2 = 0.0;
    do {
        for (auto& amp : s.amps)
            amp = cplx(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
        norm2 = norm_sq(s);
    } while (norm2 < 1e-6);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& amp : s.amps) amp *= inv;
    return s;
}

} // namespace

TEST_CASE("product states expand over the canonical amplitude order") {
    const PhotonState hb1 = make_state(PolState::H, SpaState::B1);
    CHECK(hb1.amps[0] == cplx(1.0, 0.0));
    CHECK(hb1.amps[1] == cplx(0.0, 0.0));
    CHECK(hb1.amps[2] == cplx(0.0, 0.0));
    CHECK(hb1.amps[3] == cplx(0.0, 0.0));

    // (R, s) expands to equal weight on all four components.
    const PhotonState rs = make_state(PolState::R, SpaState::S);
    for (const auto& amp : rs.amps) {
        CHECK(amp.real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(amp.imag() == 0.0);
    }

    const PhotonState hs = make_state(PolState::H, SpaState::S);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(hs.amps[0].real() == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(hs.amps[1].real() == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(std::abs(hs.amps[2]) == 0.0);
    CHECK(std::abs(hs.amps[3]) == 0.0);
}

TEST_CASE("all sixteen product states are normalized") {
    for (const StateLabel label : all_product_labels())
        CHECK(is_normalized(make_state(label)));
}

TEST_CASE("spatial hadamard swaps between the two spatial bases") {
    CHECK(equal_up_to_phase(spatial_hadamard(make_state(PolState::H, SpaState::B1)),
                            make_state(PolState::H, SpaState::S)));
    CHECK(equal_up_to_phase(spatial_hadamard(make_state(PolState::V, SpaState::B2)),
                            make_state(PolState::V, SpaState::A)));
    // Self-inverse.
    CHECK(equal_up_to_phase(spatial_hadamard(make_state(PolState::H, SpaState::S)),
                            make_state(PolState::H, SpaState::B1)));

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const PhotonState s = random_state(rng);
        const PhotonState twice = spatial_hadamard(spatial_hadamard(s));
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(twice.amps[k] - s.amps[k]) < 1e-12);
    }
}

TEST_CASE("equal_up_to_phase ignores a global sign and nothing else") {
    PhotonState minus_ha = make_state(PolState::H, SpaState::A);
    for (auto& amp : minus_ha.amps) amp = -amp;
    CHECK(equal_up_to_phase(make_state(PolState::H, SpaState::A), minus_ha));

    CHECK_FALSE(equal_up_to_phase(make_state(PolState::H, SpaState::S),
                                  make_state(PolState::H, SpaState::A)));

    // (R, s) equals (H+V)(b1+b2)/2 component-wise.
    PhotonState expanded;
    for (auto& amp : expanded.amps) amp = cplx(0.5, 0.0);
    CHECK(equal_up_to_phase(make_state(PolState::R, SpaState::S), expanded));
}

TEST_CASE("composite bases have orthonormal eigenstates") {
    for (const CompositeBasis& basis : all_composite_bases())
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const cplx ip = inner_product(basis.eigenstate(i), basis.eigenstate(j));
                CHECK(std::abs(ip - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) < 1e-12);
            }
}

TEST_CASE("basis codes round-trip and match the wire convention") {
    CHECK(CompositeBasis{PolBasis::Zp, SpaBasis::Zs}.code() == 0);
    CHECK(CompositeBasis{PolBasis::Zp, SpaBasis::Xs}.code() == 1);
    CHECK(CompositeBasis{PolBasis::Xp, SpaBasis::Zs}.code() == 2);
    CHECK(CompositeBasis{PolBasis::Xp, SpaBasis::Xs}.code() == 3);
    for (int c = 0; c < 4; ++c) CHECK(CompositeBasis::from_code(c).code() == c);
}

TEST_CASE("every product state is the eigenstate its label points at") {
    for (const StateLabel label : all_product_labels()) {
        const CompositeBasis basis = preparation_basis(label);
        const int k = eigen_index(label);
        CHECK(basis.eigenstate_label(k) == label);
        CHECK(equal_up_to_phase(basis.eigenstate(k), make_state(label)));
    }
}

TEST_CASE("outcome probabilities follow the Born rule") {
    const CompositeBasis zpxs{PolBasis::Zp, SpaBasis::Xs};

    const auto eigen = outcome_probabilities(make_state(PolState::H, SpaState::S), zpxs);
    CHECK(eigen[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eigen[1] + eigen[2] + eigen[3] < 1e-12);

    // (H, b1) splits evenly between (H,s) and (H,a).
    const auto split = outcome_probabilities(make_state(PolState::H, SpaState::B1), zpxs);
    CHECK(split[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(split[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(split[2] + split[3] < 1e-12);

    // (R, s) is unbiased in the all-Z basis.
    const auto quarters = outcome_probabilities(make_state(PolState::R, SpaState::S),
                                                CompositeBasis{PolBasis::Zp, SpaBasis::Zs});
    for (double p : quarters) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("outcome probabilities sum to one for random states") {
    Rng rng(101);
    for (int i = 0; i < 1000; ++i) {
        const PhotonState s = random_state(rng);
        for (const CompositeBasis& basis : all_composite_bases()) {
            const auto probs = outcome_probabilities(s, basis);
            CHECK(std::abs(probs[0] + probs[1] + probs[2] + probs[3] - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("measuring an eigenstate returns its own label regardless of rng") {
    for (const StateLabel label : all_product_labels()) {
        const CompositeBasis basis = preparation_basis(label);
        for (std::uint64_t seed : {0ULL, 7ULL, 999ULL}) {
            Rng rng(seed);
            CHECK(measure(make_state(label), basis, rng).outcome == eigen_index(label));
        }
    }
}

TEST_CASE("a global sign never shows up in a measurement") {
    PhotonState minus_ha = make_state(PolState::H, SpaState::A);
    for (auto& amp : minus_ha.amps) amp = -amp;
    Rng rng(3);
    const CompositeBasis zpxs{PolBasis::Zp, SpaBasis::Xs};
    for (int i = 0; i < 100; ++i)
        CHECK(measure(minus_ha, zpxs, rng).outcome == 1); // (H, a)
}

TEST_CASE("measurement frequencies track the Born rule") {
    // (H, b1) measured in Zp x Xs: half (H,s), half (H,a).
    Rng rng(42);
    const PhotonState state = make_state(PolState::H, SpaState::B1);
    const CompositeBasis zpxs{PolBasis::Zp, SpaBasis::Xs};
    int hs = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i)
        if (measure(state, zpxs, rng).outcome == 0) ++hs;
    CHECK(std::abs(static_cast<double>(hs) / trials - 0.5) <= 0.005);
}

TEST_CASE("re-measuring in the same basis is idempotent") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const PhotonState s = random_state(rng);
        for (const CompositeBasis& basis : all_composite_bases()) {
            const auto first = measure(s, basis, rng);
            auto again = first;
            for (int rep = 0; rep < 3; ++rep) {
                again = measure(again.post_state, basis, rng);
                CHECK(again.outcome == first.outcome);
            }
        }
    }
}

TEST_CASE("joint states with a spectator ancilla reproduce pure-photon statistics") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const PhotonState s = random_state(rng);
        const JointState j = attach_ancilla(s, 0);
        CHECK(std::abs(norm_sq(j) - 1.0) < 1e-12);
        for (const CompositeBasis& basis : all_composite_bases()) {
            const auto pure = outcome_probabilities(s, basis);
            const auto joint = photon_outcome_probabilities(j, basis);
            for (int k = 0; k < 4; ++k) CHECK(pure[k] == joint[k]); // bit-identical
        }
    }
}

TEST_CASE("measuring the photon half of a joint state conditions the ancilla") {
    // Photon (H,b1) with ancilla correlated to polarization: measuring V
    // must leave the ancilla in |1>.
    JointState j{};
    j.amps[0 * 2 + 0] = cplx(std::sqrt(0.5), 0.0); // H b1, anc 0
    j.amps[2 * 2 + 1] = cplx(std::sqrt(0.5), 0.0); // V b1, anc 1

    const CompositeBasis zpzs{PolBasis::Zp, SpaBasis::Zs};
    Rng rng(77);
    int seen_v = 0;
    for (int i = 0; i < 200; ++i) {
        const auto res = measure_photon(j, zpzs, rng);
        const auto anc = ancilla_probabilities(res.post_state);
        if (res.outcome == 2) {
            ++seen_v;
            CHECK(anc[1] == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(res.outcome == 0);
            CHECK(anc[0] == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(std::abs(norm_sq(res.post_state) - 1.0) < 1e-12);
    }
    CHECK(seen_v > 50); // both branches exercised
}

TEST_CASE("state label parsing") {
    CHECK(parse_state_label("H,s") == StateLabel{PolState::H, SpaState::S});
    CHECK(parse_state_label("R,b2") == StateLabel{PolState::R, SpaState::B2});
    CHECK(parse_state_label("A,a") == StateLabel{PolState::A, SpaState::A});
    CHECK_FALSE(parse_state_label("Q,s").has_value());
    CHECK_FALSE(parse_state_label("Hs").has_value());
    for (const StateLabel label : all_product_labels())
        CHECK(parse_state_label(to_string(label)) == label);
}
