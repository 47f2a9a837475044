#pragma once

#include "vxc/lattice.hpp"
#include "vxc/polytope.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vxc {

/**
 * A 0/1 constraint system A x + s = b whose slack s is itself 0/1 on every
 * solution, together with the full solution set
 *   X = { x in {0,1}^k : b - A x in {0,1}^m }.
 *
 * This is the input format of the reduction pipeline below: such a system is
 * embedded into an equal-norm point set, the point set into a lattice, and
 * the 0/1 polytope conv(X) reappears as a projected face of the dual Voronoi
 * cell of that lattice.
 */
struct BinarySystem {
    QMat A;               // m x k
    QVec b;               // length m
    std::vector<ZVec> X;  // lexicographically sorted
    std::string label;
};

/// Stable sets of a simple graph: one row x_u + x_v <= 1 per edge, X = all
/// characteristic vectors of stable sets (exhaustive, so n is capped at 16).
/// Edges are normalized (u < v), deduplicated, and validated against n.
BinarySystem stable_set_instance(std::size_t n,
                                 std::vector<std::pair<std::size_t, std::size_t>> edges);

/// The correlation polytope instance: n^2 binary variables Y_ij and, for every
/// ordered pair i != j, the three rows Y_ij <= Y_ii, Y_ij <= Y_jj and
/// Y_ii + Y_jj - 1 <= Y_ij. The 0/1 solutions with 0/1 slack are exactly the
/// flattened rank-one matrices x x^T for x in {0,1}^n.
BinarySystem correlation_instance(std::size_t n);

/**
 * One instance of the reduction. The embedded solutions
 *   Xprime = { (x, 1-x, s, 1-s) : x in X, s = b - A x }
 * live in {0,1}^{2k+2m} and all carry exactly alpha_sq = k + m ones, i.e.
 * squared norm alpha_sq. The lattice is expressed in integer coordinates
 * (z', t) where the geometric vector is (z', t*alpha); its Gram matrix weights
 * the t axis by alpha_sq, which keeps every inner product rational even
 * though alpha = sqrt(k+m) is usually irrational.
 *
 * Instances recovered from raw subspace data (gadget_from_raw) have k = m = 0
 * and empty A, b, X; Xprime then holds the recovered 0/1 points.
 */
struct GadgetInstance {
    std::size_t k = 0;  // variable count (0 for raw instances)
    std::size_t m = 0;  // constraint count
    QMat A;
    QVec b;
    std::vector<ZVec> X;       // solutions, lexicographically sorted
    std::vector<ZVec> Xprime;  // embedded solutions, lexicographically sorted
    Int alpha_sq;              // common squared norm of the Xprime members
    QMat direction_basis;      // rows spanning the direction space of aff(H)
    ZVec h;                    // base point: lexicographically smallest member of Xprime
    std::string label;

    // Filled by attach_lattice / build_gadget / gadget_from_raw:
    Lattice lattice;  // gram-only; empty rank means "not attached yet"
    ZMat zt_basis;    // lattice basis rows in (z', t) coordinates
    QVec p;           // coefficients of the projection of the target (0,...,0,-alpha)
    Rat defect;       // alpha_sq - |proj|^2 = squared distance of the target to lin(lattice)
};

/// Embed (A, b, X) as the equal-norm point set Xprime and compute the ambient
/// affine subspace H: direction space basis plus base point h. Verifies the
/// slack hypothesis b - A x in {0,1}^m for every listed solution and that
/// every embedded point has exactly k + m ones; offending solutions are
/// reported in the exception message. The lattice fields are left empty.
GadgetInstance slack_embedding(const QMat& A, const QVec& b, const std::vector<ZVec>& X);

/// The lattice behind a gadget: all integer (z', t) with z' + t*h in the span
/// of direction_basis and <1, z'> + t*alpha_sq = 0, Gram-weighted so that the
/// t axis carries alpha_sq. Any base point h of the same affine subspace
/// yields the same lattice. Rank is at most dim(span) + 1.
struct EqualNormLattice {
    Lattice lattice;
    ZMat zt_basis;  // basis rows in (z', t) coordinates
    QVec p;         // coefficients of the projection of (0,...,0,-alpha)
    Rat defect;     // alpha_sq - |proj|^2, positive when the target is off the span
};

EqualNormLattice equal_norm_lattice(const QMat& direction_basis, const QVec& h,
                                    const Int& alpha_sq);

/// slack_embedding followed by equal_norm_lattice on the result.
GadgetInstance build_gadget(const BinarySystem& system);

/// Recover an instance from raw affine data: enumerate the 0/1 points of
/// h + span(direction_basis), check that all of them carry exactly alpha_sq
/// ones (the equal-norm hypothesis), and attach the lattice. h must be
/// integral and the ambient dimension is capped at 24. Throws domain_error
/// when the subspace has no 0/1 points or the hypothesis fails — this is the
/// path that catches a tampered base point.
GadgetInstance gadget_from_raw(const QMat& direction_basis, const QVec& h,
                               const Int& alpha_sq);

/**
 * The three consistency checks for an instance with an attached lattice,
 * written U = {0} u {(y, -1) : y in Xprime} in (z', t) coordinates:
 *
 *  1. closest: the minimizers of the distance from the target point to the
 *     lattice are exactly U, at true squared distance alpha_sq (the report
 *     distance adds the off-span defect back onto the in-span CVP value).
 *  2. face: the face of the polar dual cell exposed by the target has vertex
 *     set { 2 u / |u|^2 : u in U \ {0} } — every u has squared norm
 *     2*alpha_sq, so the face is the convex hull of equal-length vectors.
 *  3. projection: scaling the first 2k+2m coordinates of each face vertex by
 *     alpha_sq recovers exactly the members of Xprime, and dropping all but
 *     the first k coordinates maps them bijectively onto X.
 *
 * Every mismatch is reported with witnesses; ok() is the conjunction.
 */
struct GadgetReport {
    bool closest_ok = false;
    bool face_ok = false;
    bool projection_ok = false;
    Rat dist_sq;  // reconstructed squared distance from the target to the lattice
    std::size_t closest_count = 0;
    std::size_t face_vertex_count = 0;
    std::vector<ZVec> unexpected_closest;  // (z', t) coordinates
    std::vector<ZVec> missing_closest;
    std::vector<QVec> unexpected_face_vertices;  // coefficient coordinates
    std::vector<QVec> missing_face_vertices;
    std::vector<QVec> bad_projections;  // face vertices that fail to recover an Xprime member

    bool ok() const { return closest_ok && face_ok && projection_ok; }
};

GadgetReport verify_gadget(const GadgetInstance& g);

}  // namespace vxc
