#include "vxc/voronoi.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vxc {

namespace {

void check_rank(const Lattice& L, std::size_t max_rank) {
    if (L.rank == 0) throw std::domain_error("relevant_vectors: rank 0 lattice");
    if (L.rank > max_rank)
        throw std::domain_error("relevant_vectors: rank " + std::to_string(L.rank) +
                                " exceeds the coset-sweep limit " + std::to_string(max_rank));
}

// Minimizers of one odd coset c + 2Λ; contributes {±v} iff v is relevant.
void sweep_coset(const Lattice& L, unsigned long long mask, std::vector<ZVec>& out,
                 std::vector<Rat>& norms) {
    ZVec c(L.rank, Int(0));
    for (std::size_t j = 0; j < L.rank; ++j)
        if (mask & (1ull << j)) c[j] = 1;
    ClosestResult r = coset_shortest(L, c);
    if (r.points.size() != 2) return;
    if (r.points[0] != z_negate(r.points[1])) return;
    out.push_back(r.points[0]);
    out.push_back(r.points[1]);
    norms.push_back(r.dist2);
    norms.push_back(r.dist2);
}

RelevantVectorSet assemble(const Lattice& L, std::vector<std::vector<ZVec>>& slots,
                           std::vector<std::vector<Rat>>& normSlots) {
    std::vector<std::pair<ZVec, Rat>> all;
    for (std::size_t s = 0; s < slots.size(); ++s)
        for (std::size_t i = 0; i < slots[s].size(); ++i)
            all.emplace_back(std::move(slots[s][i]), normSlots[s][i]);
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    RelevantVectorSet out;
    out.lattice = L;
    for (auto& [v, n] : all) {
        out.vectors.push_back(std::move(v));
        out.norms.push_back(n);
    }
    return out;
}

}  // namespace

RelevantVectorSet relevant_vectors_serial(const Lattice& L, std::size_t max_rank) {
    check_rank(L, max_rank);
    const unsigned long long total = (1ull << L.rank);
    std::vector<std::vector<ZVec>> slots(total);
    std::vector<std::vector<Rat>> norms(total);
    for (unsigned long long mask = 1; mask < total; ++mask)
        sweep_coset(L, mask, slots[mask], norms[mask]);
    return assemble(L, slots, norms);
}

RelevantVectorSet relevant_vectors(const Lattice& L, const RelevantOptions& opt) {
    check_rank(L, opt.max_rank);
#ifdef _OPENMP
    if (opt.parallel) {
        const long long total = (1ll << L.rank);
        std::vector<std::vector<ZVec>> slots(total);
        std::vector<std::vector<Rat>> norms(total);
        if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
#pragma omp parallel for schedule(static)
        for (long long mask = 1; mask < total; ++mask)
            sweep_coset(L, (unsigned long long)mask, slots[mask], norms[mask]);
        return assemble(L, slots, norms);
    }
#endif
    return relevant_vectors_serial(L, opt.max_rank);
}

Polytope voronoi_cell(const Lattice& L, const RelevantOptions& opt) {
    RelevantVectorSet F = relevant_vectors(L, opt);
    HDesc h(L.rank);
    for (std::size_t i = 0; i < F.vectors.size(); ++i) {
        QVec gw = q_mul_vec(L.gram, q_from_z_vec(F.vectors[i]));
        h.add_ineq(gw, F.norms[i] / 2);
    }
    return from_hdesc(std::move(h));
}

HDesc voronoi_cell_embedded(const Lattice& L, const RelevantOptions& opt) {
    if (!L.has_embedding)
        throw std::invalid_argument("voronoi_cell_embedded: lattice has no embedding");
    RelevantVectorSet F = relevant_vectors(L, opt);
    const std::size_t n = L.ambient_dim();
    HDesc h(n);
    for (std::size_t i = 0; i < F.vectors.size(); ++i) {
        QVec w = embed(L, q_from_z_vec(F.vectors[i]));
        h.add_ineq(w, F.norms[i] / 2);
    }
    for (const QVec& z : q_nullspace(L.basis)) h.add_eq(z, Rat(0));
    return h;
}

Polytope dual_voronoi_cell(const Lattice& L, const RelevantOptions& opt) {
    Polytope cell = voronoi_cell(L, opt);
    ensure_v(cell);
    return dualize(cell);
}

Polytope polar_face(const Lattice& L, const QVec& p) {
    if (p.size() != L.rank) throw std::invalid_argument("polar_face: bad point dimension");
    ClosestResult cr = closest_vectors(L, p);
    Rat p2 = q_dot(q_mul_vec(L.gram, p), p);
    if (cr.dist2 != p2)
        throw std::domain_error("polar_face: 0 is not among the closest lattice vectors");
    std::vector<QVec> verts;
    for (const ZVec& z : cr.points) {
        bool zero = true;
        for (const Int& x : z)
            if (x != 0) zero = false;
        if (zero) continue;
        QVec zq = q_from_z_vec(z);
        QVec gz = q_mul_vec(L.gram, zq);
        Rat n2 = q_dot(gz, zq);
        verts.push_back(q_scale(Rat(2) / n2, gz));
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    Polytope face;
    face.dim = L.rank;
    face.v = std::move(verts);
    return face;
}

bool cell_membership(const Lattice& L, const QVec& x) {
    if (x.size() != L.rank) throw std::invalid_argument("cell_membership: bad point dimension");
    ClosestResult cr = closest_vectors(L, x);
    return cr.dist2 == q_dot(q_mul_vec(L.gram, x), x);
}

}  // namespace vxc
