#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace qd {

using cplx = std::complex<double>;

inline constexpr double kExactTol = 1e-12;   // exact algebraic identities
inline constexpr double kDerivedTol = 1e-9;  // derived state comparisons

// Polarization eigenstates. H/V span the Zp basis, R/A the Xp basis, with
// R = (H+V)/sqrt2 and A = (H-V)/sqrt2.
enum class PolState { H, V, R, A };

// Spatial-mode eigenstates. b1/b2 span Zs (upper/lower path), s/a span Xs,
// with s = (b1+b2)/sqrt2 and a = (b1-b2)/sqrt2.
enum class SpaState { B1, B2, S, A };

// Product label (pol, spa). Each of the 16 products is an eigenstate of
// exactly one composite measuring basis.
struct StateLabel {
    PolState pol;
    SpaState spa;

    friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

// Single photon carrying polarization and spatial-mode degrees of freedom.
// Amplitudes are ordered (H b1, H b2, V b1, V b2); this ordering is fixed
// project-wide and every matrix is written against it.
struct PhotonState {
    std::array<cplx, 4> amps{};
};

// Two-component expansion of a single-DOF state over its Z basis.
std::array<double, 2> pol_vector(PolState p);
std::array<double, 2> spa_vector(SpaState s);

PhotonState make_state(PolState pol, SpaState spa);
PhotonState make_state(StateLabel label);

cplx inner_product(const PhotonState& a, const PhotonState& b);
double norm_sq(const PhotonState& s);
bool is_normalized(const PhotonState& s, double tol = kExactTol);

// True iff the two states differ only by a global phase: |<a|b>| = 1.
// Both inputs must be normalized.
bool equal_up_to_phase(const PhotonState& a, const PhotonState& b,
                       double tol = kDerivedTol);

// (identity on polarization) x (Hadamard on spatial mode): b1 -> s, b2 -> a.
// Self-inverse; models the beam-splitter step used during preparation.
PhotonState spatial_hadamard(const PhotonState& s);

// All 16 product labels, pol-major, in enum order.
const std::array<StateLabel, 16>& all_product_labels();

std::string to_string(PolState p);
std::string to_string(SpaState s);
std::string to_string(StateLabel l);

std::optional<PolState> parse_pol(std::string_view text);
std::optional<SpaState> parse_spa(std::string_view text);
std::optional<StateLabel> parse_state_label(std::string_view text); // "H,s"

} // namespace qd
