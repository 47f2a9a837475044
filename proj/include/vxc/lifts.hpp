#pragma once

#include "vxc/lattice.hpp"
#include "vxc/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vxc {

/**
 * One member block of a disjunctive (Balas) lift: the member's own variables
 * occupy [y_begin, y_begin + y_dim) in the lift polyhedron and `lambda` is the
 * column of its convex-combination weight. verify_lift uses these slices to
 * decompose LPs over the union into per-member LPs; the slices stay valid for
 * an arbitrary projection matrix because the lift polyhedron is the convex
 * hull of its lambda_i = 1 slices whenever every member block is bounded.
 */
struct BalasBlock {
    std::size_t y_begin = 0;
    std::size_t y_dim = 0;
    std::size_t lambda = 0;
};

/**
 * An extended formulation: a polyhedron q (H-description) together with an
 * affine projection, and optionally the polytope the image is claimed to be.
 * facet_count() counts inequalities only; equations are free in this model of
 * extension complexity.
 */
struct Lift {
    Polytope q;
    AffineMap proj;
    std::optional<Polytope> target;
    std::string note;
    std::vector<BalasBlock> balas_blocks;  // set by lift_union only

    std::size_t facet_count() const { return q.h ? q.h->A.m : 0; }
};

/// f(g(x)): composed affine map.
AffineMap compose(const AffineMap& f, const AffineMap& g);

/// P as a lift of itself (requires an H-description).
Lift lift_identity(Polytope P);

/// A single point as a 0-dimensional lift: no variables, constant projection.
Lift lift_point(const QVec& pt);

/// Standard simplex conv{e_1, ..., e_n} in R^n: n inequalities, 1 equation.
Lift lift_simplex(std::size_t n);

/// [-r, r]^d as a self-lift: 2d inequalities.
Lift lift_cube(std::size_t d, const Rat& r);

/// l1-ball of radius r via the standard lift {(x, y) : +-x_i <= y_i,
/// sum y = r}: 2d inequalities, 1 equation, image in the x block.
Lift lift_crosspolytope(std::size_t d, const Rat& r);

/// Composes an outer affine map onto the projection and replaces the target.
Lift lift_with_map(Lift l, const AffineMap& outer, std::optional<Polytope> new_target);

/// Lift of P_a x P_b: block constraints, block projection.
Lift lift_product(const Lift& a, const Lift& b);

/// Lift of P_a + P_b (Minkowski sum): block constraints, summed projections.
Lift lift_minkowski(const Lift& a, const Lift& b);

/// Lift of P_a n P_b: block constraints plus coupling equations
/// proj_a(y) = proj_b(z); both projections must share a target space.
Lift lift_intersection(Lift a, Lift b);

/**
 * Disjunctive lift of conv(P_1 u ... u P_r) from lifts of the members:
 * blocks A_i y_i <= lambda_i b_i, E_i y_i = lambda_i f_i, sum lambda = 1.
 * lambda_i >= 0 is added explicitly only where it is not already implied by
 * the member's block (decided exactly by an LP per member); members whose
 * lift has no constraints at all - points - always need it, which is the
 * dimension-zero term in the facet count. Throws on an empty member.
 */
Lift lift_union(const std::vector<Lift>& members);

/// conv of all coordinate permutations of v as the image of the Birkhoff
/// polytope under X -> Xv: d^2 inequalities, 2d equations.
Lift lift_orbit(const QVec& v);

/// Centrally symmetric zonotope sum_i [-g_i/2, g_i/2] as the image of the
/// cube [-1,1]^m via e_i -> g_i/2: 2m inequalities. Target left unset.
Lift lift_zonotope(std::size_t dim, const std::vector<QVec>& generators);

/**
 * Structured small lift for the Voronoi cell of a named lattice family, in
 * the cell's coefficient coordinates:
 *   Zd    -> cube self-lift of the cell itself          (2d facets)
 *   A     -> Minkowski sum of two simplices, targeting the polar dual
 *            of the cell                                (2(d+1) facets)
 *   D     -> crosspolytope n cube, targeting the polar dual (4d facets)
 *   Astar -> permutation-orbit lift of the cell itself  ((d+1)^2 facets)
 *   Dstar_scaled -> cube n crosspolytope, cell itself   (4d facets)
 * For A and D the target is VC(L)*, not VC(L); the note records that the
 * polar dual preserves extension complexity (0 is interior to both).
 */
Lift lift_root_cell(RootFamily family, std::size_t d);

/// VC(A_d*) is a zonotope: the Minkowski sum of the d(d+1)/2 difference
/// segments with generators (e_i - e_j)/(d+1), expressed here in primal
/// coefficient coordinates and targeting the cell. d(d+1) facets — smaller
/// than the (d+1)^2 of the orbit lift.
Lift lift_astar_zonotope(std::size_t d);

struct CongruenceCellLift {
    Lift lift;
    std::vector<std::string> piece_labels;
    std::vector<std::size_t> redundant_pieces;  // indices into piece_labels
};

/**
 * Disjunctive lift of the polar dual of the Voronoi cell of Lambda_d(a) from
 * a segment, a crosspolytope of radius 2/a, and one permutation-orbit piece
 * for each k in [d-1] and each l in {floor(ak/d), ceil(ak/d)}:
 * 2 + 2d + (#orbit pieces) d^2 facets. Pieces contained in the hull of the
 * others are reported as redundant but kept.
 */
CongruenceCellLift lift_congruence_cell(std::size_t d, const Int& a);

/// Lift of the face {x in image : <c, x> = delta}. The inequality must be
/// valid and tight for the image (checked by LP); throws otherwise.
Lift lift_face(const Lift& l, const QVec& c, const Rat& delta);

struct LiftVerifyOptions {
    bool parallel = true;
    int jobs = 0;
};

struct LiftReport {
    bool exact = false;
    std::vector<QVec> missed_vertices;   // target vertices not attained
    std::vector<QVec> escaped_vertices;  // image points outside the target
    std::size_t facet_count = 0;
};

/**
 * Certifies proj(q) == target by exact LP: every facet inequality and
 * equation of the target is checked against the maximum over q, and every
 * vertex of the target is checked for attainment. Throws domain_error when q
 * is unbounded and invalid_argument when there is no target to check.
 */
LiftReport verify_lift(Lift& l, const LiftVerifyOptions& opt = {});

/// All distinct coordinate permutations of v, lexicographically sorted.
std::vector<QVec> distinct_permutations(const QVec& v);

}  // namespace vxc
