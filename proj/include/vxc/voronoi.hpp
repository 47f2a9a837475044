#pragma once

#include "vxc/enumeration.hpp"
#include "vxc/lattice.hpp"
#include "vxc/polytope.hpp"

namespace vxc {

struct RelevantVectorSet {
    Lattice lattice;
    std::vector<ZVec> vectors;  // closed under negation, lexicographically sorted
    std::vector<Rat> norms;     // squared norms, matching order
};

struct RelevantOptions {
    bool parallel = true;
    int jobs = 0;               // 0 = runtime default
    std::size_t max_rank = 12;  // the sweep visits 2^rank - 1 cosets
};

/// Facet vectors F(Λ) via the coset sweep: v is relevant iff the shortest
/// vectors of the coset v + 2Λ are exactly {±v}.
RelevantVectorSet relevant_vectors(const Lattice& L, const RelevantOptions& opt = {});
RelevantVectorSet relevant_vectors_serial(const Lattice& L, std::size_t max_rank = 12);

/// H-polytope { x : <x, w> <= ||w||^2 / 2 for w in F(Λ) } in coefficient
/// coordinates (rows (G w)^T, right-hand side w^T G w / 2), in F's order.
Polytope voronoi_cell(const Lattice& L, const RelevantOptions& opt = {});

/// The same cell in the ambient embedding: inequalities against the embedded
/// facet vectors plus equations pinning x to the lattice's linear span.
HDesc voronoi_cell_embedded(const Lattice& L, const RelevantOptions& opt = {});

/// dualize(voronoi_cell): vertices 2 G z / (z^T G z) in dual-basis coordinates.
Polytope dual_voronoi_cell(const Lattice& L, const RelevantOptions& opt = {});

/// conv{ 2 G z / (z^T G z) : z in cl(p, Λ) \ {0} } — a face of the dual cell.
/// Requires 0 among the closest lattice vectors to p; the vertex list is empty
/// when cl(p, Λ) = {0} (p interior to the cell).
Polytope polar_face(const Lattice& L, const QVec& p);

/// ||x|| <= ||x - z|| for all z, decided by one closest-vector query.
bool cell_membership(const Lattice& L, const QVec& x);

}  // namespace vxc
