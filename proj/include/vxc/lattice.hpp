#pragma once

#include "vxc/linalg.hpp"

#include <string>

namespace vxc {

/**
 * A lattice in coefficient-space representation: rank k, a symmetric positive
 * definite rational Gram matrix of a fixed basis, and (optionally) a rational
 * embedding whose rows are the basis vectors in ambient coordinates.
 *
 * Everything downstream (enumeration, Voronoi cells, lifts) consumes only the
 * Gram matrix, so lattices whose natural embedding is irrational — such as the
 * equal-norm gadget lattices, where one coordinate carries a weight of
 * alpha^2 — fit the same representation.
 */
struct Lattice {
    std::string label;
    std::size_t rank = 0;
    QMat gram;       // k x k, gram(i,j) = <b_i, b_j>
    QMat basis;      // k x n, rows are basis vectors; empty when gram-only
    bool has_embedding = false;

    std::size_t ambient_dim() const { return basis.n; }
};

/// Lattice from a basis given as matrix rows. Rows must be independent.
Lattice make_lattice(const std::string& label, const QMat& basis_rows);

/// Gram-only lattice; gram must be symmetric positive definite.
Lattice make_lattice_gram(const std::string& label, const QMat& gram);

/// Lattice generated by possibly dependent / rational generator rows:
/// scaled to integers, reduced by HNF, scaled back. Keeps an embedding.
Lattice lattice_from_generators(const std::string& label, const QMat& generator_rows);

enum class RootFamily { Zd, A, D, E6, E7, E8, Astar, Dstar_scaled };

/// The named families, embedded in their usual ambient coordinates.
/// Zd: standard basis. A_d: {x in Z^{d+1} : sum x = 0}. D_d: even-sum integer
/// vectors. E8 = D_8 + (1/2)1 Z; E7, E6 cut out of E8 by <x, e7+e8> = 0 and
/// additionally <x, e6+e8> = 0. Astar adds the glue vector
/// (1/(d+1))(1,...,1,-d) to A_d. Dstar_scaled is 2*D_d^* = (2Z^d) u (1+2Z^d).
Lattice root_lattice(RootFamily family, std::size_t d);

/// Lambda_d(a) = { x in Z^d : x_1 = x_2 = ... = x_d mod a }.
Lattice congruence_lattice(std::size_t d, const Int& a);

/// Dual lattice: gram^{-1}; dual basis rows gram^{-1} * B span the same space.
Lattice dual_lattice(const Lattice& L);

/// Orthogonal product; block-diagonal gram, embeddings concatenated.
Lattice product_lattice(const Lattice& L1, const Lattice& L2);

/// Coefficients c with c * basis = x (x in ambient coordinates), if x lies in
/// the lattice's linear hull.
std::optional<QVec> coefficients_of(const Lattice& L, const QVec& x);

/// Does x (ambient coordinates) belong to the lattice?
bool contains_point(const Lattice& L, const QVec& x);

Rat gram_det(const Lattice& L);

/// Same point set in the same ambient space (both embeddings required).
bool lattices_equal(const Lattice& L1, const Lattice& L2);

/// Squared norm of a coefficient vector under the lattice's Gram form.
Rat norm2(const Lattice& L, const ZVec& z);

/// Embedded ambient-coordinate vector of a coefficient vector.
QVec embed(const Lattice& L, const QVec& coeffs);

}  // namespace vxc
