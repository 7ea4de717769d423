#include "qd/photon.hpp"

#include <cmath>

namespace qd {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
} // namespace

std::array<double, 2> pol_vector(PolState p) {
    switch (p) {
        case PolState::H: return {1.0, 0.0};
        case PolState::V: return {0.0, 1.0};
        case PolState::R: return {kInvSqrt2, kInvSqrt2};
        case PolState::A: return {kInvSqrt2, -kInvSqrt2};
    }
    return {};
}

std::array<double, 2> spa_vector(SpaState s) {
    switch (s) {
        case SpaState::B1: return {1.0, 0.0};
        case SpaState::B2: return {0.0, 1.0};
        case SpaState::S: return {kInvSqrt2, kInvSqrt2};
        case SpaState::A: return {kInvSqrt2, -kInvSqrt2};
    }
    return {};
}

PhotonState make_state(PolState pol, SpaState spa) {
    const auto p = pol_vector(pol);
    const auto s = spa_vector(spa);
    PhotonState out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.amps[i * 2 + j] = cplx(p[i] * s[j], 0.0);
    return out;
}

PhotonState make_state(StateLabel label) { return make_state(label.pol, label.spa); }

cplx inner_product(const PhotonState& a, const PhotonState& b) {
    cplx acc{0.0, 0.0};
    for (int k = 0; k < 4; ++k) acc += std::conj(a.amps[k]) * b.amps[k];
    return acc;
}

double norm_sq(const PhotonState& s) {
    double acc = 0.0;
    for (const auto& amp : s.amps) acc += std::norm(amp);
    return acc;
}

bool is_normalized(const PhotonState& s, double tol) {
    return std::abs(norm_sq(s) - 1.0) <= tol;
}

bool equal_up_to_phase(const PhotonState& a, const PhotonState& b, double tol) {
    return std::abs(std::abs(inner_product(a, b)) - 1.0) <= tol;
}

PhotonState spatial_hadamard(const PhotonState& s) {
    PhotonState out;
    for (int i = 0; i < 2; ++i) {
        const cplx x = s.amps[i * 2 + 0];
        const cplx y = s.amps[i * 2 + 1];
        out.amps[i * 2 + 0] = kInvSqrt2 * (x + y);
        out.amps[i * 2 + 1] = kInvSqrt2 * (x - y);
    }
    return out;
}

const std::array<StateLabel, 16>& all_product_labels() {
    static const std::array<StateLabel, 16> labels = [] {
        std::array<StateLabel, 16> out{};
        int k = 0;
        for (PolState p : {PolState::H, PolState::V, PolState::R, PolState::A})
            for (SpaState s : {SpaState::B1, SpaState::B2, SpaState::S, SpaState::A})
                out[k++] = StateLabel{p, s};
        return out;
    }();
    return labels;
}

std::string to_string(PolState p) {
    switch (p) {
        case PolState::H: return "H";
        case PolState::V: return "V";
        case PolState::R: return "R";
        case PolState::A: return "A";
    }
    return "?";
}

std::string to_string(SpaState s) {
    switch (s) {
        case SpaState::B1: return "b1";
        case SpaState::B2: return "b2";
        case SpaState::S: return "s";
        case SpaState::A: return "a";
    }
    return "?";
}

std::string to_string(StateLabel l) {
    return to_string(l.pol) + "," + to_string(l.spa);
}

std::optional<PolState> parse_pol(std::string_view text) {
    if (text == "H") return PolState::H;
    if (text == "V") return PolState::V;
    if (text == "R") return PolState::R;
    if (text == "A") return PolState::A;
    return std::nullopt;
}

std::optional<SpaState> parse_spa(std::string_view text) {
    if (text == "b1") return SpaState::B1;
    if (text == "b2") return SpaState::B2;
    if (text == "s") return SpaState::S;
    if (text == "a") return SpaState::A;
    return std::nullopt;
}

std::optional<StateLabel> parse_state_label(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    const auto pol = parse_pol(text.substr(0, comma));
    const auto spa = parse_spa(text.substr(comma + 1));
    if (!pol || !spa) return std::nullopt;
    return StateLabel{*pol, *spa};
}

} // namespace qd
