#include "vxc/suite.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "vxc/gadgets.hpp"
#include "vxc/json_io.hpp"
#include "vxc/lifts.hpp"
#include "vxc/voronoi.hpp"

namespace fs = std::filesystem;

namespace vxc {

namespace {

bool family_enabled(const SuiteOptions& o, RootFamily f) {
    if (o.families.empty()) return true;
    return std::find(o.families.begin(), o.families.end(), f) != o.families.end();
}

std::size_t cap_d(const SuiteOptions& o, std::size_t hi) {
    return o.max_d ? std::min(hi, o.max_d) : hi;
}

RelevantOptions relevant_options(const SuiteOptions& o) {
    RelevantOptions r;
    r.jobs = o.jobs;
    return r;
}

std::uint64_t mix_seed(const SuiteOptions& o, std::uint64_t salt) {
    return o.seed * 0x9e3779b97f4a7c15ull + salt;
}

bool mat_eq(const QMat& a, const QMat& b) {
    if (a.m != b.m || a.n != b.n) return false;
    for (std::size_t i = 0; i < a.m; ++i)
        for (std::size_t j = 0; j < a.n; ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

// Canonical row multiset of an H-description, for order-insensitive equality.
std::vector<QVec> hdesc_row_set(const HDesc& H0) {
    HDesc H = H0;
    canonicalize(H);
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < H.A.m; ++i) {
        QVec r = H.A.row(i);
        r.push_back(H.b[i]);
        r.push_back(Rat(0));  // tag: inequality
        rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < H.E.m; ++i) {
        QVec r = H.E.row(i);
        r.push_back(H.f[i]);
        r.push_back(Rat(1));  // tag: equation
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

std::string zvec_str(const ZVec& z) {
    std::ostringstream s;
    s << "(";
    for (std::size_t i = 0; i < z.size(); ++i) s << (i ? "," : "") << z[i];
    s << ")";
    return s.str();
}

// ---------------------------------------------------------------------------
// criterion 1: facet-vector counts against the per-family closed forms
// ---------------------------------------------------------------------------

template <class Expect>
void count_family(const SuiteOptions& opt, CriterionResult& res, RootFamily fam, std::size_t lo,
                  std::size_t hi_spec, const char* formula, Expect expect) {
    if (!family_enabled(opt, fam)) return;
    std::size_t hi = cap_d(opt, hi_spec);
    if (hi < lo) {
        res.lines.push_back(family_name(fam) + ": skipped (d cap below " + std::to_string(lo) +
                            ")");
        return;
    }
    RelevantOptions ropt = relevant_options(opt);
    std::ostringstream line;
    line << family_name(fam) << ", d = " << lo << ".." << hi << ": |F| =";
    bool ok = true;
    for (std::size_t d = lo; d <= hi; ++d) {
        RelevantVectorSet rv = relevant_vectors(root_lattice(fam, d), ropt);
        line << (d == lo ? " " : ", ") << rv.vectors.size();
        if (rv.vectors.size() != expect(d)) ok = false;
    }
    line << " (" << formula << ")";
    if (!ok) {
        line << " MISMATCH";
        res.pass = false;
    }
    res.lines.push_back(line.str());
}

CriterionResult criterion_relevant_counts(const SuiteOptions& opt) {
    CriterionResult res{1, "relevant-vector counts", true, {}, 0.0};
    count_family(opt, res, RootFamily::Zd, 1, 8, "2d", [](std::size_t d) { return 2 * d; });
    count_family(opt, res, RootFamily::A, 1, 6, "d(d+1)",
                 [](std::size_t d) { return d * (d + 1); });
    count_family(opt, res, RootFamily::D, 3, 6, "2d(d-1)",
                 [](std::size_t d) { return 2 * d * (d - 1); });
    count_family(opt, res, RootFamily::Dstar_scaled, 3, 6, "2d + 2^d",
                 [](std::size_t d) { return 2 * d + (std::size_t{1} << d); });
    count_family(opt, res, RootFamily::Astar, 1, 5, "2(2^d - 1)",
                 [](std::size_t d) { return 2 * ((std::size_t{1} << d) - 1); });
    if (family_enabled(opt, RootFamily::E8) && cap_d(opt, 8) >= 8) {
        Lattice L = root_lattice(RootFamily::E8, 8);
        RelevantVectorSet rv = relevant_vectors(L, relevant_options(opt));
        ClosestResult sv = shortest_vectors(L);
        bool ok = rv.vectors.size() == 240 && sv.points.size() == 240 && sv.dist2 == 2 &&
                  rv.vectors == sv.points;
        std::ostringstream line;
        line << "E8: |F| = " << rv.vectors.size() << ", |S| = " << sv.points.size()
             << " at norm^2 " << rat_to_string(sv.dist2) << ", F = S";
        if (!ok) {
            line << " MISMATCH";
            res.pass = false;
        }
        res.lines.push_back(line.str());
    }
    return res;
}

// ---------------------------------------------------------------------------
// criterion 2: structured lifts project exactly onto their cells
// ---------------------------------------------------------------------------

template <class Expect>
void lift_family(const SuiteOptions& opt, CriterionResult& res, RootFamily fam, std::size_t lo,
                 std::size_t hi_spec, Expect expect_facets) {
    if (!family_enabled(opt, fam)) return;
    std::size_t hi = cap_d(opt, hi_spec);
    if (hi < lo) return;
    RelevantOptions ropt = relevant_options(opt);
    LiftVerifyOptions vopt;
    vopt.jobs = opt.jobs;
    for (std::size_t d = lo; d <= hi; ++d) {
        Lattice L = root_lattice(fam, d);
        RelevantVectorSet rv = relevant_vectors(L, ropt);
        Lift l = lift_root_cell(fam, d);
        LiftReport rep = verify_lift(l, vopt);
        bool ok = rep.exact && rep.facet_count == expect_facets(d);
        std::ostringstream s;
        s << L.label << ": relevant = " << rv.vectors.size()
          << ", lift facets = " << rep.facet_count
          << ", verified = " << (rep.exact ? "exact" : "NOT EXACT");
        if (rep.facet_count != expect_facets(d)) s << " (expected " << expect_facets(d) << ")";
        if (!ok) res.pass = false;
        res.lines.push_back(s.str());
    }
}

CriterionResult criterion_lifts(const SuiteOptions& opt) {
    CriterionResult res{2, "structured lifts", true, {}, 0.0};
    lift_family(opt, res, RootFamily::Zd, 1, 4, [](std::size_t d) { return 2 * d; });
    lift_family(opt, res, RootFamily::A, 1, 5, [](std::size_t d) { return 2 * (d + 1); });
    lift_family(opt, res, RootFamily::D, 3, 5, [](std::size_t d) { return 4 * d; });
    lift_family(opt, res, RootFamily::Astar, 1, 4,
                [](std::size_t d) { return (d + 1) * (d + 1); });
    lift_family(opt, res, RootFamily::Dstar_scaled, 3, 4, [](std::size_t d) { return 4 * d; });

    LiftVerifyOptions vopt;
    vopt.jobs = opt.jobs;
    for (std::size_t d = 2; d <= cap_d(opt, 4); ++d)
        for (long a = 1; a <= 3; ++a) {
            CongruenceCellLift c = lift_congruence_cell(d, Int(a));
            LiftReport rep = verify_lift(c.lift, vopt);
            std::ostringstream s;
            s << "cong(" << d << "," << a << "): pieces = " << c.piece_labels.size() << " ("
              << c.redundant_pieces.size() << " redundant), lift facets = " << rep.facet_count
              << ", verified = " << (rep.exact ? "exact" : "NOT EXACT");
            if (!rep.exact) res.pass = false;
            res.lines.push_back(s.str());
        }

    if (family_enabled(opt, RootFamily::Astar))
        for (std::size_t d = 1; d <= cap_d(opt, 4); ++d) {
            Lift z = lift_astar_zonotope(d);
            std::size_t gens = z.proj.M.n;
            LiftReport rep = verify_lift(z, vopt);
            bool ok = rep.exact && gens <= d * (d + 1) / 2 && rep.facet_count == 2 * gens;
            std::ostringstream s;
            s << "Astar" << d << " zonotope: generators = " << gens << " (cap " << d * (d + 1) / 2
              << "), lift facets = " << rep.facet_count
              << ", verified = " << (rep.exact ? "exact" : "NOT EXACT");
            if (!ok) res.pass = false;
            res.lines.push_back(s.str());
        }
    return res;
}

// ---------------------------------------------------------------------------
// criterion 3: gadget pipeline over every graph on <= 5 nodes
// ---------------------------------------------------------------------------

CriterionResult criterion_gadgets(const SuiteOptions& opt) {
    (void)opt;
    CriterionResult res{3, "gadget pipeline", true, {}, 0.0};
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> all;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) all.push_back({i, j});
        std::size_t count = 0, max_rank = 0, failures = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (std::size_t e = 0; e < all.size(); ++e)
                if (mask >> e & 1) edges.push_back(all[e]);
            GadgetInstance g = build_gadget(stable_set_instance(n, edges));
            GadgetReport rep = verify_gadget(g);
            bool ok = rep.ok() && g.lattice.rank <= n + 1;
            if (!ok && ++failures <= 5) {
                std::ostringstream s;
                s << "stable-set n = " << n << ", edge mask " << mask << ": FAIL (closest "
                  << rep.closest_ok << ", face " << rep.face_ok << ", projection "
                  << rep.projection_ok << ", rank " << g.lattice.rank << ")";
                res.lines.push_back(s.str());
            }
            max_rank = std::max(max_rank, g.lattice.rank);
            ++count;
        }
        if (failures) res.pass = false;
        std::ostringstream s;
        s << "stable-set gadgets, n = " << n << ": " << count
          << " graphs, closest/face/projection checks "
          << (failures ? "FAILED on " + std::to_string(failures) : "pass")
          << ", max lattice rank = " << max_rank << " (cap " << n + 1 << ")";
        res.lines.push_back(s.str());
    }
    for (std::size_t n = 2; n <= 3; ++n) {
        GadgetInstance g = build_gadget(correlation_instance(n));
        GadgetReport rep = verify_gadget(g);
        bool ok = rep.ok() && rep.face_vertex_count == (std::size_t{1} << n) &&
                  g.lattice.rank <= n * n + 1;
        std::ostringstream s;
        s << "correlation gadget, n = " << n << ": face vertices = " << rep.face_vertex_count
          << " (expect " << (std::size_t{1} << n) << "), lattice rank = " << g.lattice.rank
          << " (cap " << n * n + 1 << "), checks " << (rep.ok() ? "pass" : "FAIL");
        if (!ok) res.pass = false;
        res.lines.push_back(s.str());
    }
    return res;
}

// ---------------------------------------------------------------------------
// shared family list for the cell-level criteria (d <= 4)
// ---------------------------------------------------------------------------

std::vector<Lattice> small_family_lattices(const SuiteOptions& opt) {
    std::vector<Lattice> out;
    auto add = [&](RootFamily fam, std::size_t lo, std::size_t hi_spec) {
        if (!family_enabled(opt, fam)) return;
        for (std::size_t d = lo; d <= cap_d(opt, hi_spec); ++d)
            out.push_back(root_lattice(fam, d));
    };
    add(RootFamily::Zd, 1, 4);
    add(RootFamily::A, 1, 4);
    add(RootFamily::D, 3, 4);
    add(RootFamily::Astar, 1, 4);
    add(RootFamily::Dstar_scaled, 3, 4);
    return out;
}

// ---------------------------------------------------------------------------
// criterion 4: dualize is an involution and transposes slack matrices
// ---------------------------------------------------------------------------

CriterionResult criterion_duality(const SuiteOptions& opt) {
    CriterionResult res{4, "duality", true, {}, 0.0};
    RelevantOptions ropt = relevant_options(opt);
    for (Lattice& L : small_family_lattices(opt)) {
        Polytope P = voronoi_cell(L, ropt);
        Polytope D = dualize(P);
        Polytope DD = dualize(D);
        bool involution = polytope_equal(DD, P);

        // dualize orders its vertices by P's canonicalized inequalities, so the
        // transpose identity is exact against the unit-rhs form of that system.
        HDesc Hc = ensure_h(P);
        canonicalize(Hc);
        Polytope Pu;
        Pu.dim = P.dim;
        Pu.h = unit_rhs_form(Hc);
        Pu.v = ensure_v(P);
        QMat SP = slack_matrix(Pu).S;
        QMat SD = slack_matrix(D).S;
        bool transposed = mat_eq(SD, q_transpose(SP));

        std::ostringstream s;
        s << L.label << ": dualize^2 = id " << (involution ? "ok" : "FAIL")
          << ", S(polar) = S^T " << (transposed ? "ok" : "FAIL") << " (" << SP.m << " x " << SP.n
          << ")";
        if (!involution || !transposed) res.pass = false;
        res.lines.push_back(s.str());
    }
    return res;
}

// ---------------------------------------------------------------------------
// criterion 5: products factor (facet vectors and cells)
// ---------------------------------------------------------------------------

CriterionResult criterion_products(const SuiteOptions& opt) {
    CriterionResult res{5, "product factorization", true, {}, 0.0};
    std::vector<Lattice> pool;
    auto add = [&](RootFamily fam, std::size_t lo, std::size_t hi) {
        if (!family_enabled(opt, fam)) return;
        for (std::size_t d = lo; d <= cap_d(opt, hi); ++d) pool.push_back(root_lattice(fam, d));
    };
    add(RootFamily::Zd, 1, 3);
    add(RootFamily::A, 1, 3);
    add(RootFamily::D, 3, 3);
    add(RootFamily::Astar, 1, 3);
    add(RootFamily::Dstar_scaled, 3, 3);
    if (pool.empty()) {
        res.lines.push_back("skipped (no eligible families)");
        return res;
    }

    RelevantOptions ropt = relevant_options(opt);
    std::mt19937_64 rng(mix_seed(opt, 5));
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::size_t made = 0;
    for (std::size_t attempt = 0; made < 5 && attempt < 1000; ++attempt) {
        std::size_t i = rng() % pool.size(), j = rng() % pool.size();
        Lattice &L1 = pool[i], &L2 = pool[j];
        if (L1.rank + L2.rank > 6) continue;
        if (!seen.insert({std::min(i, j), std::max(i, j)}).second) continue;
        ++made;

        Lattice P = product_lattice(L1, L2);
        RelevantVectorSet rv = relevant_vectors(P, ropt);
        RelevantVectorSet rv1 = relevant_vectors(L1, ropt);
        RelevantVectorSet rv2 = relevant_vectors(L2, ropt);
        std::vector<ZVec> expect;
        for (const ZVec& w : rv1.vectors) {
            ZVec v(P.rank, Int(0));
            std::copy(w.begin(), w.end(), v.begin());
            expect.push_back(std::move(v));
        }
        for (const ZVec& u : rv2.vectors) {
            ZVec v(P.rank, Int(0));
            std::copy(u.begin(), u.end(), v.begin() + L1.rank);
            expect.push_back(std::move(v));
        }
        std::sort(expect.begin(), expect.end());
        bool vectors_ok = rv.vectors == expect;

        Polytope C = voronoi_cell(P, ropt);
        Polytope C1 = voronoi_cell(L1, ropt);
        Polytope C2 = voronoi_cell(L2, ropt);
        const HDesc &H1 = *C1.h, &H2 = *C2.h;
        HDesc ph(P.rank);
        for (std::size_t r = 0; r < H1.A.m; ++r) {
            QVec row(P.rank, Rat(0));
            for (std::size_t c = 0; c < L1.rank; ++c) row[c] = H1.A(r, c);
            ph.add_ineq(row, H1.b[r]);
        }
        for (std::size_t r = 0; r < H2.A.m; ++r) {
            QVec row(P.rank, Rat(0));
            for (std::size_t c = 0; c < L2.rank; ++c) row[L1.rank + c] = H2.A(r, c);
            ph.add_ineq(row, H2.b[r]);
        }
        Polytope Q = from_hdesc(ph);
        bool cell_ok = polytope_equal(C, Q);

        std::ostringstream s;
        s << L1.label << " x " << L2.label << ": facet vectors factor (" << rv1.vectors.size()
          << " + " << rv2.vectors.size() << ") " << (vectors_ok ? "ok" : "FAIL")
          << ", VC(product) = VC x VC " << (cell_ok ? "ok" : "FAIL") << " ("
          << ensure_v(C).size() << " vertices)";
        if (!vectors_ok || !cell_ok) res.pass = false;
        res.lines.push_back(s.str());
    }
    if (made < 5) {
        res.lines.push_back("only " + std::to_string(made) + " admissible pairs drawn");
        res.pass = false;
    }
    return res;
}

// ---------------------------------------------------------------------------
// criterion 6: Voronoi tiling -- x - z in VC for every closest z
// ---------------------------------------------------------------------------

CriterionResult criterion_tiling(const SuiteOptions& opt) {
    CriterionResult res{6, "tiling", true, {}, 0.0};
    RelevantOptions ropt = relevant_options(opt);
    std::mt19937_64 rng(mix_seed(opt, 6));
    for (Lattice& L : small_family_lattices(opt)) {
        Polytope cell = voronoi_cell(L, ropt);
        const HDesc& H = *cell.h;
        std::size_t checked = 0, violations = 0;
        for (int it = 0; it < 1000; ++it) {
            QVec x(L.rank);
            for (std::size_t i = 0; i < L.rank; ++i)
                x[i] = Rat(Int(static_cast<long long>(rng() % 65) - 32),
                           Int(1 + static_cast<long long>(rng() % 16)));
            ClosestResult cr = closest_vectors(L.gram, x);
            for (const ZVec& z : cr.points) {
                QVec y(L.rank);
                for (std::size_t i = 0; i < L.rank; ++i) y[i] = x[i] - Rat(z[i]);
                if (!hdesc_contains(H, y)) ++violations;
                ++checked;
            }
        }
        std::ostringstream s;
        s << L.label << ": 1000 points, " << checked << " closest vectors, " << violations
          << " outside the cell";
        if (violations) res.pass = false;
        res.lines.push_back(s.str());
    }
    return res;
}

// ---------------------------------------------------------------------------
// criterion 7: coset sweep == LP irredundancy; DD roundtrip idempotent
// ---------------------------------------------------------------------------

struct NamedLattice {
    std::string name;
    Lattice lattice;
};

std::vector<NamedLattice> oracle_lattices(const SuiteOptions& opt) {
    std::vector<NamedLattice> out;
    for (Lattice& L : small_family_lattices(opt)) out.push_back({L.label, L});
    for (std::size_t d = 2; d <= cap_d(opt, 4); ++d)
        for (long a = 1; a <= 3; ++a) {
            Lattice L = congruence_lattice(d, Int(a));
            out.push_back({L.label, L});
        }
    // gram-only lattices from the gadget pipeline, rank <= 4
    out.push_back({"gadget(n=1)", build_gadget(stable_set_instance(1, {})).lattice});
    out.push_back({"gadget(K2)", build_gadget(stable_set_instance(2, {{0, 1}})).lattice});
    out.push_back({"gadget(P3)", build_gadget(stable_set_instance(3, {{0, 1}, {1, 2}})).lattice});
    return out;
}

// All coset minimizers (ties included) of every nonzero class of L/2L; the
// facet vectors are a subset, so LP irredundancy over this system must
// reproduce the sweep exactly.
std::vector<ZVec> coset_candidates(const Lattice& L) {
    std::vector<ZVec> cand;
    for (std::size_t mask = 1; mask < (std::size_t{1} << L.rank); ++mask) {
        ZVec c(L.rank, Int(0));
        for (std::size_t i = 0; i < L.rank; ++i)
            if (mask >> i & 1) c[i] = 1;
        ClosestResult cs = coset_shortest(L.gram, c);
        cand.insert(cand.end(), cs.points.begin(), cs.points.end());
    }
    std::sort(cand.begin(), cand.end());
    return cand;
}

bool dd_roundtrip_ok(Polytope& P) {
    const HDesc& H1 = ensure_h(P);
    std::vector<QVec> V1 = vertex_enumeration(H1);
    Polytope P2 = from_points(P.dim, V1);
    const HDesc& H2 = ensure_h(P2);
    std::vector<QVec> V2 = vertex_enumeration(H2);
    return V1 == V2 && hdesc_row_set(H1) == hdesc_row_set(H2);
}

CriterionResult criterion_oracles(const SuiteOptions& opt) {
    CriterionResult res{7, "oracle equivalence", true, {}, 0.0};
    RelevantOptions ropt = relevant_options(opt);
    std::vector<NamedLattice> Ls = oracle_lattices(opt);
    for (NamedLattice& nl : Ls) {
        const Lattice& L = nl.lattice;
        RelevantVectorSet rv = relevant_vectors(L, ropt);
        std::vector<ZVec> cand = coset_candidates(L);
        HDesc H(L.rank);
        for (const ZVec& w : cand) {
            QVec gw = q_mul_vec(L.gram, q_from_z_vec(w));
            H.add_ineq(gw, q_dot(gw, q_from_z_vec(w)) / 2);
        }
        std::vector<ZVec> irred;
        for (std::size_t i = 0; i < H.A.m; ++i) {
            HDesc rest(L.rank);
            for (std::size_t k = 0; k < H.A.m; ++k)
                if (k != i) rest.add_ineq(H.A.row(k), H.b[k]);
            LpResult r = lp_maximize(rest, H.A.row(i));
            bool keep = r.status == LpStatus::Unbounded ||
                        (r.status == LpStatus::Optimal && r.value > H.b[i]);
            if (keep) irred.push_back(cand[i]);
        }
        std::sort(irred.begin(), irred.end());
        bool ok = irred == rv.vectors;
        std::ostringstream s;
        s << nl.name << ": " << cand.size() << " coset minimizers, " << irred.size()
          << " LP-irredundant " << (ok ? "= coset-sweep F" : "!= coset-sweep F (FAIL)");
        if (!ok) res.pass = false;
        res.lines.push_back(s.str());
    }

    // double-description roundtrip over the polytopes the suite produces
    std::size_t count = 0, bad = 0;
    auto roundtrip = [&](Polytope P) {
        ++count;
        if (!dd_roundtrip_ok(P)) ++bad;
    };
    for (NamedLattice& nl : Ls) roundtrip(voronoi_cell(nl.lattice, ropt));
    for (NamedLattice& nl : Ls)
        if (nl.lattice.rank <= 3) roundtrip(dual_voronoi_cell(nl.lattice, ropt));
    if (family_enabled(opt, RootFamily::A) && cap_d(opt, 2) >= 2) {
        Lattice L = root_lattice(RootFamily::A, 2);
        Polytope cell = voronoi_cell(L, ropt);
        roundtrip(polar_face(L, ensure_v(cell).front()));
    }
    if (family_enabled(opt, RootFamily::D) && cap_d(opt, 3) >= 3) {
        Lattice L = root_lattice(RootFamily::D, 3);
        Polytope cell = voronoi_cell(L, ropt);
        roundtrip(polar_face(L, ensure_v(cell).front()));
    }
    std::ostringstream s;
    s << "DD roundtrip: " << count << " polytopes, " << (count - bad)
      << " idempotent (V->H->V and H row sets fixed)";
    if (bad) res.pass = false;
    res.lines.push_back(s.str());
    return res;
}

// ---------------------------------------------------------------------------
// criterion 8: corrupted artifacts must be rejected with witnesses
// ---------------------------------------------------------------------------

Lift negative_lift(std::size_t t, std::string& name) {
    switch (t % 10) {
        case 0: name = "A2 cell lift"; return lift_root_cell(RootFamily::A, 2);
        case 1: name = "A3 cell lift"; return lift_root_cell(RootFamily::A, 3);
        case 2: name = "D3 cell lift"; return lift_root_cell(RootFamily::D, 3);
        case 3: name = "Astar2 cell lift"; return lift_root_cell(RootFamily::Astar, 2);
        case 4: name = "Dstar3 cell lift"; return lift_root_cell(RootFamily::Dstar_scaled, 3);
        case 5: name = "Astar2 zonotope"; return lift_astar_zonotope(2);
        case 6: name = "Astar3 zonotope"; return lift_astar_zonotope(3);
        case 7: name = "cong(2,2) cell lift"; return lift_congruence_cell(2, Int(2)).lift;
        case 8: name = "Z2 cube lift"; return lift_root_cell(RootFamily::Zd, 2);
        default: name = "A4 cell lift"; return lift_root_cell(RootFamily::A, 4);
    }
}

GadgetInstance negative_gadget(std::size_t t) {
    switch (t % 10) {
        case 0: return build_gadget(stable_set_instance(2, {{0, 1}}));
        case 1: return build_gadget(stable_set_instance(3, {{0, 1}, {1, 2}}));
        case 2: return build_gadget(stable_set_instance(3, {{0, 1}, {1, 2}, {0, 2}}));
        case 3: return build_gadget(stable_set_instance(4, {{0, 1}, {0, 2}, {0, 3}}));
        case 4: return build_gadget(stable_set_instance(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
        case 5: return build_gadget(stable_set_instance(3, {}));
        case 6: return build_gadget(stable_set_instance(1, {}));
        case 7:
            return build_gadget(
                stable_set_instance(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}));
        case 8: return build_gadget(correlation_instance(2));
        default:
            return build_gadget(
                stable_set_instance(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
    }
}

struct CliRun {
    int status = -1;
    std::string output;
};

CliRun run_cli(const std::string& cmd) {
    CliRun r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.output.append(buf, n);
    int st = ::pclose(p);
    if (WIFEXITED(st)) r.status = WEXITSTATUS(st);
    return r;
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

CriterionResult criterion_negative_controls(const SuiteOptions& opt) {
    CriterionResult res{8, "negative controls", true, {}, 0.0};
    const bool via_cli = !opt.cli_path.empty();
    res.lines.push_back(via_cli ? "mode: end-to-end (CLI subprocess, expecting exit 1)"
                                : "mode: in-process");
    fs::path dir;
    if (via_cli) {
        dir = fs::temp_directory_path() / ("vxc-negative-" + std::to_string(opt.seed));
        fs::create_directories(dir);
    }
    std::mt19937_64 rng(mix_seed(opt, 8));
    const Rat deltas[3] = {Rat(Int(1), Int(7)), Rat(Int(-1), Int(5)), Rat(Int(2), Int(3))};

    for (std::size_t t = 0; t < 10; ++t) {
        std::string name;
        Lift l = negative_lift(t, name);
        std::size_t i = rng() % l.proj.M.m, j = rng() % l.proj.M.n;
        Rat delta = deltas[rng() % 3];
        l.proj.M(i, j) += delta;
        bool detected = false;
        std::size_t witnesses = 0;
        if (via_cli) {
            fs::path file = dir / ("lift-" + std::to_string(t) + ".json");
            write_json_file(file.string(), lift_json(l));
            CliRun r = run_cli(shell_quote(opt.cli_path) + " lift verify " +
                               shell_quote(file.string()) + " 2>&1");
            if (r.status == 1) {
                auto rep = Json::parse(r.output, nullptr, false);
                if (!rep.is_discarded()) {
                    witnesses = rep.value("missedVertices", Json::array()).size() +
                                rep.value("escapedVertices", Json::array()).size();
                    detected = witnesses > 0;
                }
            }
        } else {
            LiftReport rep = verify_lift(l);
            witnesses = rep.missed_vertices.size() + rep.escaped_vertices.size();
            detected = !rep.exact && witnesses > 0;
        }
        std::ostringstream s;
        s << "lift trial " << t << ": " << name << ", proj(" << i << "," << j
          << ") += " << rat_to_string(delta) << " -> "
          << (detected ? "rejected, " + std::to_string(witnesses) + " witness vertices"
                       : "NOT DETECTED");
        if (!detected) res.pass = false;
        res.lines.push_back(s.str());
    }

    for (std::size_t t = 0; t < 10; ++t) {
        GadgetInstance g = negative_gadget(t);
        std::size_t c = rng() % g.h.size();
        long delta = (rng() & 1) ? 1 : -1;
        ZVec h2 = g.h;
        h2[c] += delta;
        bool detected = false;
        std::string how;
        if (via_cli) {
            Json doc;
            doc["alphaSq"] = int_json(g.alpha_sq);
            doc["h"] = zvec_json(h2);
            doc["directionBasis"] = qmat_json(g.direction_basis);
            fs::path file = dir / ("gadget-" + std::to_string(t) + ".json");
            write_json_file(file.string(), doc);
            CliRun r = run_cli(shell_quote(opt.cli_path) + " gadget raw " +
                               shell_quote(file.string()) + " --verify 2>&1");
            if (r.status == 1 && (r.output.find("0/1 points") != std::string::npos ||
                                  r.output.find("equal-norm") != std::string::npos)) {
                detected = true;
                how = r.output.find("equal-norm") != std::string::npos ? "weight off"
                                                                       : "empty coset";
            }
        } else {
            try {
                QVec hq(h2.size());
                for (std::size_t k = 0; k < h2.size(); ++k) hq[k] = Rat(h2[k]);
                gadget_from_raw(g.direction_basis, hq, g.alpha_sq);
            } catch (const std::domain_error& e) {
                detected = true;
                how = std::string(e.what()).find("equal-norm") != std::string::npos
                          ? "weight off"
                          : "empty coset";
            }
        }
        std::ostringstream s;
        s << "gadget trial " << t << ": " << g.label << ", h[" << c << "] "
          << (delta > 0 ? "+= 1" : "-= 1") << " -> "
          << (detected ? "rejected (" + how + ")" : "NOT DETECTED");
        if (!detected) res.pass = false;
        res.lines.push_back(s.str());
    }

    if (via_cli) fs::remove_all(dir);
    return res;
}

}  // namespace

SuiteResult run_suite(const SuiteOptions& opt) {
    SuiteResult R;
    R.options = opt;
    struct Entry {
        int id;
        const char* name;
        CriterionResult (*fn)(const SuiteOptions&);
    };
    const Entry entries[] = {
        {1, "relevant-vector counts", criterion_relevant_counts},
        {2, "structured lifts", criterion_lifts},
        {3, "gadget pipeline", criterion_gadgets},
        {4, "duality", criterion_duality},
        {5, "product factorization", criterion_products},
        {6, "tiling", criterion_tiling},
        {7, "oracle equivalence", criterion_oracles},
        {8, "negative controls", criterion_negative_controls},
    };
    auto wanted = [&](int id) {
        return opt.criteria.empty() ||
               std::find(opt.criteria.begin(), opt.criteria.end(), id) != opt.criteria.end();
    };
    for (const Entry& e : entries) {
        if (!wanted(e.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult c;
        try {
            c = e.fn(opt);
        } catch (const std::exception& ex) {
            c.id = e.id;
            c.name = e.name;
            c.pass = false;
            c.lines.push_back(std::string("exception: ") + ex.what());
        }
        c.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        R.pass = R.pass && c.pass;
        R.criteria.push_back(std::move(c));
    }
    return R;
}

std::string suite_text_report(const SuiteResult& r) {
    std::ostringstream out;
    out << "verification suite: seed " << r.options.seed;
    out << ", families ";
    if (r.options.families.empty()) {
        out << "all";
    } else {
        for (std::size_t i = 0; i < r.options.families.size(); ++i)
            out << (i ? "," : "") << family_name(r.options.families[i]);
    }
    if (r.options.max_d)
        out << ", max d = " << r.options.max_d;
    else
        out << ", per-check d caps";
    out << "\n\n";
    double total = 0;
    std::size_t passed = 0;
    for (const CriterionResult& c : r.criteria) {
        std::string head = "[" + std::to_string(c.id) + "] " + c.name + " ";
        out << head;
        for (std::size_t i = head.size(); i < 44; ++i) out << '.';
        char buf[64];
        std::snprintf(buf, sizeof buf, " %s %8.2f s\n", c.pass ? "pass" : "FAIL", c.seconds);
        out << buf;
        for (const std::string& line : c.lines) out << "      " << line << "\n";
        total += c.seconds;
        passed += c.pass;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "\nresult: %s (%zu/%zu criteria, %.2f s)\n",
                  r.pass ? "PASS" : "FAIL", passed, r.criteria.size(), total);
    out << buf;
    return out.str();
}

std::vector<RootFamily> parse_family_list(const std::string& csv) {
    std::vector<RootFamily> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) {
                      return std::isspace(c);
                  }),
                  tok.end());
        if (tok.empty()) continue;
        if (tok == "Z" || tok == "Zd")
            out.push_back(RootFamily::Zd);
        else if (tok == "A")
            out.push_back(RootFamily::A);
        else if (tok == "D")
            out.push_back(RootFamily::D);
        else if (tok == "Astar")
            out.push_back(RootFamily::Astar);
        else if (tok == "Dstar")
            out.push_back(RootFamily::Dstar_scaled);
        else if (tok == "E8" || tok == "E")
            out.push_back(RootFamily::E8);
        else
            throw std::invalid_argument("unknown family '" + tok +
                                        "' (expected Z, A, D, Astar, Dstar, E8)");
    }
    return out;
}

std::string family_name(RootFamily f) {
    switch (f) {
        case RootFamily::Zd: return "Z";
        case RootFamily::A: return "A";
        case RootFamily::D: return "D";
        case RootFamily::E6: return "E6";
        case RootFamily::E7: return "E7";
        case RootFamily::E8: return "E8";
        case RootFamily::Astar: return "Astar";
        case RootFamily::Dstar_scaled: return "Dstar";
    }
    return "?";
}

}  // namespace vxc
