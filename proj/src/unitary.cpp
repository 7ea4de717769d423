#include "qd/unitary.hpp"

namespace qd {

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Columns are images of the basis states: flip sends 0 -> 1 and 1 -> -0.
constexpr Mat2 kIdentity{{{1.0, 0.0}, {0.0, 1.0}}};
constexpr Mat2 kFlip{{{0.0, -1.0}, {1.0, 0.0}}};

CompositeUnitary build(BitPair label) {
    const Mat2& p = label.hi ? kFlip : kIdentity;
    const Mat2& s = label.lo ? kFlip : kIdentity;
    CompositeUnitary u;
    u.label = label;
    for (int pi = 0; pi < 2; ++pi)
        for (int si = 0; si < 2; ++si)
            for (int pj = 0; pj < 2; ++pj)
                for (int sj = 0; sj < 2; ++sj)
                    u.matrix[pi * 2 + si][pj * 2 + sj] = p[pi][pj] * s[si][sj];
    return u;
}

} // namespace

std::string to_string(BitPair b) {
    return std::string{static_cast<char>('0' + b.hi), static_cast<char>('0' + b.lo)};
}

const std::array<CompositeUnitary, 4>& all_composite_unitaries() {
    static const std::array<CompositeUnitary, 4> table = {
        build(BitPair::from_index(0)), build(BitPair::from_index(1)),
        build(BitPair::from_index(2)), build(BitPair::from_index(3))};
    return table;
}

const CompositeUnitary& composite_unitary(BitPair label) {
    return all_composite_unitaries()[label.index()];
}

PhotonState apply_unitary(const CompositeUnitary& u, const PhotonState& state) {
    PhotonState out;
    for (int r = 0; r < 4; ++r) {
        cplx acc{0.0, 0.0};
        for (int c = 0; c < 4; ++c) acc += u.matrix[r][c] * state.amps[c];
        out.amps[r] = acc;
    }
    return out;
}

std::array<std::array<double, 4>, 4> matrix_product(const CompositeUnitary& u,
                                                    const CompositeUnitary& v) {
    std::array<std::array<double, 4>, 4> out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += u.matrix[r][k] * v.matrix[k][c];
            out[r][c] = acc;
        }
    return out;
}

} // namespace qd
