#pragma once

#include "vxc/lattice.hpp"

namespace vxc {

/// All integer vectors z with (z - center)^T gram (z - center) <= r2,
/// in lexicographic order. Optionally without the zero vector.
std::vector<ZVec> enumerate_in_ball(const QMat& gram, const QVec& center, const Rat& r2,
                                    bool exclude_zero = false);

struct ClosestResult {
    Rat dist2;                 // attained minimum of the squared distance
    std::vector<ZVec> points;  // all minimizers, lexicographic order
};

/// Nonzero vectors of minimal squared norm under the Gram form.
ClosestResult shortest_vectors(const QMat& gram);

/// All integer minimizers of (z - target)^T gram (z - target).
ClosestResult closest_vectors(const QMat& gram, const QVec& target);

/// Minimizers of the squared norm over the coset c + 2 Z^k (c not all even).
ClosestResult coset_shortest(const QMat& gram, const ZVec& c);

inline std::vector<ZVec> enumerate_in_ball(const Lattice& L, const QVec& center, const Rat& r2,
                                           bool exclude_zero = false) {
    return enumerate_in_ball(L.gram, center, r2, exclude_zero);
}
inline ClosestResult shortest_vectors(const Lattice& L) { return shortest_vectors(L.gram); }
inline ClosestResult closest_vectors(const Lattice& L, const QVec& target) {
    return closest_vectors(L.gram, target);
}
inline ClosestResult coset_shortest(const Lattice& L, const ZVec& c) {
    return coset_shortest(L.gram, c);
}

}  // namespace vxc
