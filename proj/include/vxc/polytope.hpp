#pragma once

#include <optional>
#include <vector>

#include "vxc/lp.hpp"

namespace vxc {

/// y = M x + t
struct AffineMap {
    QMat M;
    QVec t;

    AffineMap() = default;
    AffineMap(QMat m, QVec off) : M(std::move(m)), t(std::move(off)) {}
    static AffineMap identity(std::size_t n);
    std::size_t source_dim() const { return M.n; }
    std::size_t target_dim() const { return M.m; }
    QVec apply(const QVec& x) const;
};

/// Bounded polyhedron with lazily tracked H- and V-descriptions.  Operations
/// that need a missing description compute it exactly and cache it.
struct Polytope {
    std::size_t dim = 0;
    std::optional<HDesc> h;
    std::optional<std::vector<QVec>> v;
};

Polytope from_points(std::size_t dim, std::vector<QVec> pts);
Polytope from_hdesc(HDesc h);

/// Scale every inequality to primitive integer coefficients (positive factor
/// only -- flipping would change the halfspace), equations likewise with the
/// first nonzero coefficient made positive; drop vacuous rows and duplicates.
void canonicalize(HDesc& H);

/// Divide each inequality by its right-hand side; requires b_i > 0 for all i
/// (i.e. the origin strictly inside every halfspace).
HDesc unit_rhs_form(const HDesc& H);

/// Extreme rays of the pointed cone { x : M x <= 0 }.  Requires rank(M) = n.
/// Rays are returned as primitive integer vectors in lexicographic order.
std::vector<QVec> dd_extreme_rays(const QMat& M);

/// All vertices of { x : A x <= b, E x = f }, lexicographically sorted.
/// Throws std::domain_error when the set is empty or unbounded.
std::vector<QVec> vertex_enumeration(const HDesc& H);

/// Irredundant facets plus affine-hull equations of conv(pts).
HDesc facet_enumeration(std::size_t dim, const std::vector<QVec>& pts);

const std::vector<QVec>& ensure_v(Polytope& P);
const HDesc& ensure_h(Polytope& P);

bool contains(const Polytope& P, const QVec& x);
bool hdesc_contains(const HDesc& H, const QVec& x, bool strict_ineq = false);
bool polytope_equal(Polytope& P, Polytope& Q);

/// Polar dual taken inside lin(P).  Requires the origin in the relative
/// interior.  The dual's vertices are proj_{lin(P)}(a_i / b_i) in the order of
/// P's (canonicalized) inequalities; its inequalities are <v_j, y> <= 1 in the
/// order of P's vertices, so slack matrices transpose exactly against
/// unit_rhs_form(P.h).
Polytope dualize(Polytope& P);

Polytope affine_image(Polytope& P, const AffineMap& m);

/// Fourier-Motzkin projection onto the coordinates in `keep` (strictly
/// increasing indices), with LP redundancy removal after each elimination.
HDesc fm_project(const HDesc& H, const std::vector<std::size_t>& keep);

struct SlackMatrix {
    QMat S;  // rows = inequalities of P.h (order kept), cols = vertices of P.v
};

/// S_{ij} = b_i - <a_i, v_j>; throws std::domain_error on a negative entry.
SlackMatrix slack_matrix(Polytope& P);

struct SlackBounds {
    std::size_t rank = 0;               // exact linear rank of S
    std::size_t rectangle_cover = 0;    // support-cover size
    bool cover_exact = false;           // exhaustive (true) vs greedy fallback
};

/// Exact rank always; exact minimum rectangle cover of the support for
/// matrices up to 20x20 (cover_exact = true), greedy heuristic beyond.
SlackBounds slack_rank_bounds(const QMat& S);

// Common building blocks.
Polytope make_cube(std::size_t dim, const Rat& r);           // [-r, r]^dim
Polytope make_crosspolytope(std::size_t dim, const Rat& r);  // conv{ +-r e_i }
Polytope scale_polytope(Polytope& P, const Rat& s);          // s > 0
HDesc hdesc_intersection(const HDesc& A, const HDesc& B);

}  // namespace vxc
