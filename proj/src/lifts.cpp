#include "vxc/lifts.hpp"

#include "vxc/lp.hpp"
#include "vxc/voronoi.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vxc {

namespace {

const HDesc& need_h(const Lift& l, const char* who) {
    if (!l.q.h) throw std::invalid_argument(std::string(who) + ": member lift has no H-description");
    return *l.q.h;
}

QMat block_diag(const QMat& A, const QMat& B) {
    QMat M(A.m + B.m, A.n + B.n);
    for (std::size_t i = 0; i < A.m; ++i)
        for (std::size_t j = 0; j < A.n; ++j) M(i, j) = A(i, j);
    for (std::size_t i = 0; i < B.m; ++i)
        for (std::size_t j = 0; j < B.n; ++j) M(A.m + i, A.n + j) = B(i, j);
    return M;
}

QVec concat(const QVec& x, const QVec& y) {
    QVec out(x);
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

// Block H-description of Q_a x Q_b.
HDesc hdesc_product(const HDesc& a, const HDesc& b) {
    HDesc h(a.dim + b.dim);
    h.A = block_diag(a.A, b.A);
    h.b = concat(a.b, b.b);
    h.E = block_diag(a.E, b.E);
    h.f = concat(a.f, b.f);
    return h;
}

const std::string kPolarNote =
    "target is the polar dual of the Voronoi cell; extension complexity is "
    "unchanged under polarity because both bodies have 0 in the interior";

}  // namespace

AffineMap compose(const AffineMap& f, const AffineMap& g) {
    AffineMap out;
    out.M = q_mul(f.M, g.M);
    out.t = q_add(q_mul_vec(f.M, g.t), f.t);
    return out;
}

std::vector<QVec> distinct_permutations(const QVec& v) {
    QVec w(v);
    std::sort(w.begin(), w.end());
    std::vector<QVec> out;
    do {
        out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

Lift lift_identity(Polytope P) {
    ensure_h(P);
    Lift l;
    l.proj = AffineMap::identity(P.dim);
    l.target = P;
    l.q = std::move(P);
    return l;
}

Lift lift_point(const QVec& pt) {
    Lift l;
    l.q.dim = 0;
    l.q.h = HDesc(0);
    l.q.v = std::vector<QVec>{QVec{}};
    l.proj.M = QMat(pt.size(), 0);
    l.proj.t = pt;
    Polytope tp;
    tp.dim = pt.size();
    tp.v = std::vector<QVec>{pt};
    HDesc th(pt.size());
    for (std::size_t i = 0; i < pt.size(); ++i) {
        QVec e(pt.size(), Rat(0));
        e[i] = 1;
        th.add_eq(e, pt[i]);
    }
    tp.h = std::move(th);
    l.target = std::move(tp);
    return l;
}

Lift lift_simplex(std::size_t n) {
    if (n == 0) throw std::invalid_argument("lift_simplex: bad dimension");
    HDesc h(n);
    for (std::size_t i = 0; i < n; ++i) {
        QVec a(n, Rat(0));
        a[i] = -1;
        h.add_ineq(a, Rat(0));
    }
    h.add_eq(QVec(n, Rat(1)), Rat(1));
    Lift l;
    l.q = from_hdesc(h);
    l.proj = AffineMap::identity(n);
    std::vector<QVec> units;
    for (std::size_t i = 0; i < n; ++i) {
        QVec e(n, Rat(0));
        e[i] = 1;
        units.push_back(std::move(e));
    }
    std::sort(units.begin(), units.end());
    Polytope tp;
    tp.dim = n;
    tp.h = h;
    tp.v = std::move(units);
    l.target = std::move(tp);
    return l;
}

Lift lift_cube(std::size_t d, const Rat& r) {
    return lift_identity(make_cube(d, r));
}

Lift lift_crosspolytope(std::size_t d, const Rat& r) {
    if (d == 0 || r <= 0) throw std::invalid_argument("lift_crosspolytope: bad parameters");
    HDesc h(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        QVec a(2 * d, Rat(0));
        a[i] = 1;
        a[d + i] = -1;
        h.add_ineq(a, Rat(0));  // x_i - y_i <= 0
        a[i] = -1;
        h.add_ineq(a, Rat(0));  // -x_i - y_i <= 0
    }
    QVec s(2 * d, Rat(0));
    for (std::size_t i = 0; i < d; ++i) s[d + i] = 1;
    h.add_eq(s, r);
    Lift l;
    l.q = from_hdesc(h);
    l.proj.M = QMat(d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) l.proj.M(i, i) = 1;
    l.proj.t = QVec(d, Rat(0));
    l.target = make_crosspolytope(d, r);
    return l;
}

Lift lift_with_map(Lift l, const AffineMap& outer, std::optional<Polytope> new_target) {
    if (outer.M.n != l.proj.M.m)
        throw std::invalid_argument("lift_with_map: dimension mismatch");
    l.proj = compose(outer, l.proj);
    l.target = std::move(new_target);
    return l;
}

Lift lift_product(const Lift& a, const Lift& b) {
    const HDesc& ha = need_h(a, "lift_product");
    const HDesc& hb = need_h(b, "lift_product");
    Lift l;
    l.q = from_hdesc(hdesc_product(ha, hb));
    l.proj.M = block_diag(a.proj.M, b.proj.M);
    l.proj.t = concat(a.proj.t, b.proj.t);
    if (a.target && b.target) {
        Polytope ta = *a.target, tb = *b.target;
        l.target = from_hdesc(hdesc_product(ensure_h(ta), ensure_h(tb)));
    }
    return l;
}

Lift lift_minkowski(const Lift& a, const Lift& b) {
    const HDesc& ha = need_h(a, "lift_minkowski");
    const HDesc& hb = need_h(b, "lift_minkowski");
    if (a.proj.M.m != b.proj.M.m)
        throw std::invalid_argument("lift_minkowski: projections target different spaces");
    Lift l;
    l.q = from_hdesc(hdesc_product(ha, hb));
    l.proj.M = QMat(a.proj.M.m, ha.dim + hb.dim);
    for (std::size_t i = 0; i < a.proj.M.m; ++i) {
        for (std::size_t j = 0; j < ha.dim; ++j) l.proj.M(i, j) = a.proj.M(i, j);
        for (std::size_t j = 0; j < hb.dim; ++j) l.proj.M(i, ha.dim + j) = b.proj.M(i, j);
    }
    l.proj.t = q_add(a.proj.t, b.proj.t);
    if (a.target && b.target) {
        Polytope ta = *a.target, tb = *b.target;
        std::vector<QVec> sums;
        for (const auto& p : ensure_v(ta))
            for (const auto& q : ensure_v(tb)) sums.push_back(q_add(p, q));
        l.target = from_points(a.proj.M.m, std::move(sums));
    }
    return l;
}

Lift lift_intersection(Lift a, Lift b) {
    const HDesc& ha = need_h(a, "lift_intersection");
    const HDesc& hb = need_h(b, "lift_intersection");
    if (a.proj.M.m != b.proj.M.m)
        throw std::invalid_argument("lift_intersection: projections target different spaces");
    HDesc h = hdesc_product(ha, hb);
    // couple the images: proj_a(y) - proj_b(z) = t_b - t_a
    for (std::size_t i = 0; i < a.proj.M.m; ++i) {
        QVec e(h.dim, Rat(0));
        for (std::size_t j = 0; j < ha.dim; ++j) e[j] = a.proj.M(i, j);
        for (std::size_t j = 0; j < hb.dim; ++j) e[ha.dim + j] = -b.proj.M(i, j);
        h.add_eq(e, b.proj.t[i] - a.proj.t[i]);
    }
    Lift l;
    l.q = from_hdesc(std::move(h));
    l.proj.M = QMat(a.proj.M.m, ha.dim + hb.dim);
    for (std::size_t i = 0; i < a.proj.M.m; ++i)
        for (std::size_t j = 0; j < ha.dim; ++j) l.proj.M(i, j) = a.proj.M(i, j);
    l.proj.t = a.proj.t;
    if (a.target && b.target) {
        Polytope ta = *a.target, tb = *b.target;
        l.target = from_hdesc(hdesc_intersection(ensure_h(ta), ensure_h(tb)));
    }
    return l;
}

Lift lift_union(const std::vector<Lift>& members) {
    if (members.empty()) throw std::invalid_argument("lift_union: no members");
    const std::size_t r = members.size();
    const std::size_t D = members[0].proj.M.m;
    std::size_t nvars = 0;
    std::vector<char> explicit_lambda(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        const HDesc& h = need_h(members[i], "lift_union");
        if (members[i].proj.M.m != D)
            throw std::invalid_argument("lift_union: projections target different spaces");
        if (h.A.m == 0 && h.E.m == 0) {
            if (h.dim > 0) throw std::invalid_argument("lift_union: unbounded member");
            explicit_lambda[i] = 1;  // a point block never constrains its lambda
        } else {
            if (!lp_feasible(h).feasible) throw std::invalid_argument("lift_union: empty member");
            HDesc neg = h;
            for (auto& x : neg.b) x = -x;
            for (auto& x : neg.f) x = -x;
            if (lp_feasible(neg).feasible) explicit_lambda[i] = 1;
        }
        nvars += h.dim;
    }
    HDesc h(nvars + r);
    Lift l;
    l.proj.M = QMat(D, nvars + r);
    l.proj.t = QVec(D, Rat(0));
    std::size_t off = 0;
    for (std::size_t i = 0; i < r; ++i) {
        const HDesc& hi = *members[i].q.h;
        const std::size_t lam = nvars + i;
        for (std::size_t row = 0; row < hi.A.m; ++row) {
            QVec a(nvars + r, Rat(0));
            for (std::size_t j = 0; j < hi.dim; ++j) a[off + j] = hi.A(row, j);
            a[lam] = -hi.b[row];
            h.add_ineq(a, Rat(0));
        }
        for (std::size_t row = 0; row < hi.E.m; ++row) {
            QVec e(nvars + r, Rat(0));
            for (std::size_t j = 0; j < hi.dim; ++j) e[off + j] = hi.E(row, j);
            e[lam] = -hi.f[row];
            h.add_eq(e, Rat(0));
        }
        if (explicit_lambda[i]) {
            QVec a(nvars + r, Rat(0));
            a[lam] = -1;
            h.add_ineq(a, Rat(0));
        }
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t j = 0; j < hi.dim; ++j) l.proj.M(d, off + j) = members[i].proj.M(d, j);
            l.proj.M(d, lam) = members[i].proj.t[d];
        }
        l.balas_blocks.push_back({off, hi.dim, lam});
        off += hi.dim;
    }
    QVec conv(nvars + r, Rat(0));
    for (std::size_t i = 0; i < r; ++i) conv[nvars + i] = 1;
    h.add_eq(conv, Rat(1));
    l.q = from_hdesc(std::move(h));
    bool all_targets = std::all_of(members.begin(), members.end(),
                                   [](const Lift& m) { return m.target.has_value(); });
    if (all_targets) {
        std::vector<QVec> pts;
        for (const auto& m : members) {
            Polytope t = *m.target;
            const auto& vs = ensure_v(t);
            pts.insert(pts.end(), vs.begin(), vs.end());
        }
        l.target = from_points(D, std::move(pts));
    }
    return l;
}

Lift lift_orbit(const QVec& v) {
    const std::size_t d = v.size();
    if (d == 0) throw std::invalid_argument("lift_orbit: empty vector");
    HDesc h(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            QVec a(d * d, Rat(0));
            a[i * d + j] = -1;
            h.add_ineq(a, Rat(0));
        }
    for (std::size_t i = 0; i < d; ++i) {  // row sums
        QVec e(d * d, Rat(0));
        for (std::size_t j = 0; j < d; ++j) e[i * d + j] = 1;
        h.add_eq(e, Rat(1));
    }
    for (std::size_t j = 0; j < d; ++j) {  // column sums
        QVec e(d * d, Rat(0));
        for (std::size_t i = 0; i < d; ++i) e[i * d + j] = 1;
        h.add_eq(e, Rat(1));
    }
    Lift l;
    l.q = from_hdesc(std::move(h));
    l.proj.M = QMat(d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) l.proj.M(i, i * d + j) = v[j];
    l.proj.t = QVec(d, Rat(0));
    // distinct permutations share a 2-norm, so all of them are extreme: no
    // hull filtering needed
    Polytope tp;
    tp.dim = d;
    tp.v = distinct_permutations(v);
    l.target = std::move(tp);
    return l;
}

Lift lift_zonotope(std::size_t dim, const std::vector<QVec>& generators) {
    if (dim == 0 || generators.empty())
        throw std::invalid_argument("lift_zonotope: need a dimension and generators");
    const std::size_t m = generators.size();
    HDesc h(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (generators[i].size() != dim)
            throw std::invalid_argument("lift_zonotope: generator dimension mismatch");
        QVec a(m, Rat(0));
        a[i] = 1;
        h.add_ineq(a, Rat(1));
        a[i] = -1;
        h.add_ineq(a, Rat(1));
    }
    Lift l;
    l.q = from_hdesc(std::move(h));
    l.proj.M = QMat(dim, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t d = 0; d < dim; ++d) l.proj.M(d, i) = generators[i][d] / 2;
    l.proj.t = QVec(dim, Rat(0));
    return l;
}

Lift lift_root_cell(RootFamily family, std::size_t d) {
    Lattice L = root_lattice(family, d);
    const QMat& B = L.basis;
    switch (family) {
        case RootFamily::Zd: {
            Lift l = lift_cube(d, Rat(1, 2));
            l.target = voronoi_cell(L);
            return l;
        }
        case RootFamily::A: {
            // VC(A_d)* is the difference body S + (-S) of the standard simplex
            // S in R^{d+1}; u = Bx maps the ambient embedding to the dual-basis
            // coordinates the polar cell is expressed in.
            Lift s = lift_simplex(d + 1);
            AffineMap neg;
            neg.M = QMat(d + 1, d + 1);
            for (std::size_t i = 0; i <= d; ++i) neg.M(i, i) = -1;
            neg.t = QVec(d + 1, Rat(0));
            Lift mk = lift_minkowski(s, lift_with_map(lift_simplex(d + 1), neg, std::nullopt));
            Lift l = lift_with_map(std::move(mk), AffineMap{B, QVec(d, Rat(0))},
                                   dual_voronoi_cell(L));
            l.note = kPolarNote;
            return l;
        }
        case RootFamily::D: {
            // VC(D_d)* = (l1-ball of radius 2) n cube, again in dual-basis
            // coordinates via u = Bx.
            Lift inter = lift_intersection(lift_crosspolytope(d, Rat(2)), lift_cube(d, Rat(1)));
            Lift l = lift_with_map(std::move(inter), AffineMap{B, QVec(d, Rat(0))},
                                   dual_voronoi_cell(L));
            l.note = kPolarNote;
            return l;
        }
        case RootFamily::Astar: {
            // VC(A_d*) is the permutation orbit of (-d, -d+2, ..., d)/(2d+2) in
            // the ambient embedding; (B B^T)^{-1} B maps back to basis
            // coefficients, the coordinates voronoi_cell produces.
            QVec v(d + 1);
            for (std::size_t i = 0; i <= d; ++i)
                v[i] = Rat(Int(-static_cast<long long>(d)) + Int(2) * Int(i),
                           Int(2) * Int(d) + Int(2));
            AffineMap back{q_mul(q_inverse(q_mul(B, q_transpose(B))), B), QVec(d, Rat(0))};
            return lift_with_map(lift_orbit(v), back, voronoi_cell(L));
        }
        case RootFamily::Dstar_scaled: {
            // VC = cube n (l1-ball of radius d/2) in the ambient embedding.
            Lift inter = lift_intersection(lift_cube(d, Rat(1)),
                                           lift_crosspolytope(d, Rat(Int(d), Int(2))));
            AffineMap back{q_mul(q_inverse(q_mul(B, q_transpose(B))), B), QVec(d, Rat(0))};
            return lift_with_map(std::move(inter), back, voronoi_cell(L));
        }
        default:
            throw std::invalid_argument("lift_root_cell: no structured lift for this family");
    }
}

Lift lift_astar_zonotope(std::size_t d) {
    if (d == 0) throw std::invalid_argument("lift_astar_zonotope: d must be positive");
    Lattice L = root_lattice(RootFamily::Astar, d);
    const QMat& B = L.basis;
    QMat to_coeff = q_mul(q_inverse(q_mul(B, q_transpose(B))), B);
    std::vector<QVec> gens;
    gens.reserve(d * (d + 1) / 2);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = i + 1; j <= d; ++j) {
            QVec g(d + 1, Rat(0));
            g[i] = Rat(Int(1), Int(d) + 1);
            g[j] = -g[i];
            gens.push_back(q_mul_vec(to_coeff, g));
        }
    Lift l = lift_zonotope(d, gens);
    l.target = voronoi_cell(L);
    return l;
}

CongruenceCellLift lift_congruence_cell(std::size_t d, const Int& a) {
    if (d < 2 || a < 1) throw std::invalid_argument("lift_congruence_cell: bad parameters");
    Lattice L = congruence_lattice(d, a);
    const AffineMap to_dual_coords{L.basis, QVec(d, Rat(0))};  // u = Bx

    CongruenceCellLift out;
    std::vector<Lift> members;

    {  // conv{ +-(2/d) 1 }
        AffineMap seg;
        seg.M = QMat(d, 1);
        for (std::size_t i = 0; i < d; ++i) seg.M(i, 0) = Rat(Int(2), Int(d));
        seg.t = QVec(d, Rat(0));
        Lift m = lift_with_map(lift_cube(1, Rat(1)), seg, std::nullopt);
        std::vector<QVec> pts = {q_mul_vec(seg.M, QVec{Rat(1)}), q_mul_vec(seg.M, QVec{Rat(-1)})};
        m = lift_with_map(std::move(m), to_dual_coords, std::nullopt);
        std::vector<QVec> cpts;
        for (const auto& p : pts) cpts.push_back(q_mul_vec(to_dual_coords.M, p));
        m.target = from_points(d, std::move(cpts));
        members.push_back(std::move(m));
        out.piece_labels.push_back("segment");
    }
    {  // conv{ +-(2/a) e_i }
        Lift m = lift_crosspolytope(d, Rat(Int(2), a));
        Polytope t = *m.target;
        std::vector<QVec> cpts;
        for (const auto& p : ensure_v(t)) cpts.push_back(q_mul_vec(to_dual_coords.M, p));
        m = lift_with_map(std::move(m), to_dual_coords, from_points(d, std::move(cpts)));
        members.push_back(std::move(m));
        out.piece_labels.push_back("cross");
    }
    for (std::size_t k = 1; k < d; ++k) {
        Int ak = a * Int(k);
        Int fl = ak / Int(d);
        std::vector<Int> ells = {fl};
        if (ak % Int(d) != 0) ells.push_back(fl + 1);
        for (const Int& ell : ells) {
            Int N = Int(k) * (a - ell) * (a - ell) + Int(d - k) * ell * ell;
            QVec w(d);
            for (std::size_t i = 0; i < d; ++i)
                w[i] = i < k ? Rat(Int(2) * (a - ell), N) : Rat(Int(-2) * ell, N);
            Lift m = lift_orbit(w);
            std::vector<QVec> cpts;  // image of a vertex set under a bijection
            for (const auto& p : m.target->v.value())
                cpts.push_back(q_mul_vec(to_dual_coords.M, p));
            std::sort(cpts.begin(), cpts.end());
            Polytope tp;
            tp.dim = d;
            tp.v = std::move(cpts);
            m = lift_with_map(std::move(m), to_dual_coords, std::move(tp));
            members.push_back(std::move(m));
            std::ostringstream lab;
            lab << "orbit(k=" << k << ",l=" << ell << ")";
            out.piece_labels.push_back(lab.str());
        }
    }

    // redundancy report: piece i is redundant when every one of its vertices
    // already lies in the hull of the other pieces' vertices
    std::vector<std::vector<QVec>> piece_pts;
    for (auto& m : members) piece_pts.push_back(ensure_v(*m.target));
    for (std::size_t i = 0; i < members.size(); ++i) {
        std::vector<QVec> others;
        for (std::size_t j = 0; j < members.size(); ++j)
            if (j != i) others.insert(others.end(), piece_pts[j].begin(), piece_pts[j].end());
        bool redundant = true;
        for (const auto& v : piece_pts[i]) {
            HDesc hull(others.size());
            for (std::size_t j = 0; j < others.size(); ++j) {
                QVec row(others.size(), Rat(0));
                row[j] = -1;
                hull.add_ineq(row, Rat(0));
            }
            for (std::size_t c = 0; c < d; ++c) {
                QVec e(others.size());
                for (std::size_t j = 0; j < others.size(); ++j) e[j] = others[j][c];
                hull.add_eq(e, v[c]);
            }
            hull.add_eq(QVec(others.size(), Rat(1)), Rat(1));
            if (!lp_feasible(hull).feasible) {
                redundant = false;
                break;
            }
        }
        if (redundant) out.redundant_pieces.push_back(i);
    }

    out.lift = lift_union(members);
    out.lift.target = dual_voronoi_cell(L);
    out.lift.note = kPolarNote;
    return out;
}

Lift lift_face(const Lift& l, const QVec& c, const Rat& delta) {
    const HDesc& h = need_h(l, "lift_face");
    if (c.size() != l.proj.M.m) throw std::invalid_argument("lift_face: dimension mismatch");
    QVec cq = q_mul_vec(q_transpose(l.proj.M), c);
    LpResult r = lp_maximize(h, cq);
    if (r.status == LpStatus::Infeasible) throw std::invalid_argument("lift_face: empty lift");
    if (r.status == LpStatus::Unbounded) throw std::domain_error("lift_face: unbounded lift");
    Rat val = r.value + q_dot(c, l.proj.t);
    if (val > delta) throw std::invalid_argument("lift_face: inequality is not valid for the image");
    if (val < delta) throw std::invalid_argument("lift_face: inequality is not tight (empty face)");
    Lift out;
    HDesc hf = h;
    hf.add_eq(cq, delta - q_dot(c, l.proj.t));
    out.q = from_hdesc(std::move(hf));
    out.proj = l.proj;
    out.note = l.note;
    if (l.target) {
        Polytope t = *l.target;
        HDesc th = ensure_h(t);
        th.add_eq(c, delta);
        out.target = from_hdesc(std::move(th));
    }
    return out;
}

namespace {

// Restriction of the recession system of the union block to one member's
// variables at lambda_i = s. Rays may have arbitrary values on the other
// blocks, so rows touching any other column are dropped rather than sliced;
// right-hand sides are homogenized to 0.
HDesc ray_slice(const HDesc& QH, const std::vector<BalasBlock>& blocks, std::size_t mi,
                const Rat& s) {
    const BalasBlock& bl = blocks[mi];
    auto foreign = [&](std::size_t r, const QMat& M) {
        for (std::size_t c = 0; c < QH.dim; ++c) {
            if (M(r, c) == 0 || c == bl.lambda) continue;
            if (c < bl.y_begin || c >= bl.y_begin + bl.y_dim) return true;
        }
        return false;
    };
    HDesc out(bl.y_dim);
    for (std::size_t r = 0; r < QH.A.m; ++r) {
        if (foreign(r, QH.A)) continue;
        QVec a(bl.y_dim);
        bool nz = false;
        for (std::size_t c = 0; c < bl.y_dim; ++c) {
            a[c] = QH.A(r, bl.y_begin + c);
            if (a[c] != 0) nz = true;
        }
        Rat rhs = -s * QH.A(r, bl.lambda);
        if (nz || rhs < 0) out.add_ineq(a, rhs);
    }
    for (std::size_t r = 0; r < QH.E.m; ++r) {
        if (foreign(r, QH.E)) continue;
        QVec e(bl.y_dim);
        bool nz = false;
        for (std::size_t c = 0; c < bl.y_dim; ++c) {
            e[c] = QH.E(r, bl.y_begin + c);
            if (e[c] != 0) nz = true;
        }
        Rat rhs = -s * QH.E(r, bl.lambda);
        if (nz || rhs != 0) out.add_eq(e, rhs);
    }
    return out;
}

// Restriction of the union block system to one member's variables at
// lambda_i = s (all other variables zero). Vacuously true rows are dropped.
HDesc balas_slice(const HDesc& QH, const BalasBlock& bl, const Rat& s) {
    HDesc out(bl.y_dim);
    for (std::size_t r = 0; r < QH.A.m; ++r) {
        QVec a(bl.y_dim);
        bool nz = false;
        for (std::size_t c = 0; c < bl.y_dim; ++c) {
            a[c] = QH.A(r, bl.y_begin + c);
            if (a[c] != 0) nz = true;
        }
        Rat rhs = QH.b[r] - s * QH.A(r, bl.lambda);
        if (nz || rhs < 0) out.add_ineq(a, rhs);
    }
    for (std::size_t r = 0; r < QH.E.m; ++r) {
        QVec e(bl.y_dim);
        bool nz = false;
        for (std::size_t c = 0; c < bl.y_dim; ++c) {
            e[c] = QH.E(r, bl.y_begin + c);
            if (e[c] != 0) nz = true;
        }
        Rat rhs = QH.f[r] - s * QH.E(r, bl.lambda);
        if (nz || rhs != 0) out.add_eq(e, rhs);
    }
    return out;
}

// The per-member decomposition is only sound when every constraint row
// involves a single member block (or only lambda columns), the blocks cover
// all variables, and the convexity row sum lambda = 1 is present.
bool balas_structure_valid(const HDesc& QH, const std::vector<BalasBlock>& blocks) {
    const std::size_t n = QH.dim;
    std::vector<int> owner(n, -1);  // block index, or -2 for lambda columns
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].y_begin + blocks[i].y_dim > n || blocks[i].lambda >= n) return false;
        for (std::size_t c = 0; c < blocks[i].y_dim; ++c) {
            if (owner[blocks[i].y_begin + c] != -1) return false;
            owner[blocks[i].y_begin + c] = static_cast<int>(i);
        }
        if (owner[blocks[i].lambda] != -1) return false;
        owner[blocks[i].lambda] = -2;
    }
    if (std::count(owner.begin(), owner.end(), -1) > 0) return false;
    auto row_ok = [&](const QMat& M, std::size_t r) {
        int block = -1;
        bool lambda_only = true;
        for (std::size_t c = 0; c < n; ++c) {
            if (M(r, c) == 0) continue;
            if (owner[c] >= 0) {
                lambda_only = false;
                if (block == -1) block = owner[c];
                else if (block != owner[c]) return false;
            }
        }
        if (lambda_only) return true;
        // with y columns from one block, the only admissible lambda column is
        // that block's own
        for (std::size_t c = 0; c < n; ++c)
            if (M(r, c) != 0 && owner[c] == -2 && c != blocks[block].lambda) return false;
        return true;
    };
    for (std::size_t r = 0; r < QH.A.m; ++r)
        if (!row_ok(QH.A, r)) return false;
    bool conv_row = false;
    for (std::size_t r = 0; r < QH.E.m; ++r) {
        if (!row_ok(QH.E, r)) return false;
        bool all_lambda_one = QH.f[r] == 1;
        for (std::size_t c = 0; c < n && all_lambda_one; ++c) {
            if (owner[c] == -2) all_lambda_one = QH.E(r, c) == 1;
            else all_lambda_one = QH.E(r, c) == 0;
        }
        if (all_lambda_one) conv_row = true;
    }
    return conv_row;
}

struct VerifyTask {
    enum Kind { FacetMax, EqMax, EqMin, Vertex } kind;
    std::size_t index;
};

struct TaskOutcome {
    bool escaped = false;
    bool missed = false;
    QVec witness;
};

}  // namespace

LiftReport verify_lift(Lift& l, const LiftVerifyOptions& opt) {
    if (!l.target) throw std::invalid_argument("verify_lift: lift has no target");
    const HDesc& QH = ensure_h(l.q);
    const std::size_t n = QH.dim;
    const std::size_t D = l.proj.M.m;
    if (l.proj.M.n != n || l.target->dim != D)
        throw std::invalid_argument("verify_lift: projection dimensions do not match");

    LiftReport rep;
    rep.facet_count = l.facet_count();

    bool structured = !l.balas_blocks.empty() && balas_structure_valid(QH, l.balas_blocks);

    // boundedness; for a valid union block system it reduces to: every member
    // block has a trivial recession cone, and no ray carries a negative
    // lambda, so the convexity row forces lambda = 0 and then y = 0
    if (structured) {
        for (std::size_t mi = 0; mi < l.balas_blocks.size(); ++mi) {
            const BalasBlock& bl = l.balas_blocks[mi];
            HDesc rec = ray_slice(QH, l.balas_blocks, mi, Rat(0));
            for (std::size_t j = 0; j < bl.y_dim; ++j) {
                for (int sg : {1, -1}) {
                    HDesc probe = rec;
                    QVec e(bl.y_dim, Rat(0));
                    e[j] = 1;
                    probe.add_eq(e, Rat(sg));
                    if (lp_feasible(probe).feasible)
                        throw std::domain_error("verify_lift: lift polyhedron is unbounded");
                }
            }
            if (lp_feasible(ray_slice(QH, l.balas_blocks, mi, Rat(-1))).feasible)
                structured = false;  // lambda sign not enforced; fall back
        }
    }
    if (!structured) {
        for (std::size_t j = 0; j < n; ++j) {
            for (int sg : {1, -1}) {
                HDesc probe(n);
                probe.A = QH.A;
                probe.b = QVec(QH.A.m, Rat(0));
                probe.E = QH.E;
                probe.f = QVec(QH.E.m, Rat(0));
                QVec e(n, Rat(0));
                e[j] = 1;
                probe.add_eq(e, Rat(sg));
                if (lp_feasible(probe).feasible)
                    throw std::domain_error("verify_lift: lift polyhedron is unbounded");
            }
        }
    }

    Polytope& T = *l.target;
    const HDesc& TH = ensure_h(T);
    const std::vector<QVec>& TV = ensure_v(T);

    bool empty;
    if (structured) {
        empty = true;
        for (const auto& bl : l.balas_blocks)
            if (lp_feasible(balas_slice(QH, bl, Rat(1))).feasible) {
                empty = false;
                break;
            }
    } else {
        empty = !lp_feasible(QH).feasible;
    }
    if (empty) {
        rep.missed_vertices = TV;
        rep.exact = TV.empty() && TH.A.m == 0 && TH.E.m == 0;
        return rep;
    }

    std::vector<VerifyTask> tasks;
    for (std::size_t i = 0; i < TH.A.m; ++i) tasks.push_back({VerifyTask::FacetMax, i});
    for (std::size_t i = 0; i < TH.E.m; ++i) {
        tasks.push_back({VerifyTask::EqMax, i});
        tasks.push_back({VerifyTask::EqMin, i});
    }
    for (std::size_t j = 0; j < TV.size(); ++j) tasks.push_back({VerifyTask::Vertex, j});

    // one slice per member, reused read-only by all tasks
    std::vector<HDesc> member_slices;
    if (structured)
        for (const auto& bl : l.balas_blocks) member_slices.push_back(balas_slice(QH, bl, Rat(1)));

    QMat Mt = q_transpose(l.proj.M);

    auto assemble_member_point = [&](std::size_t mi, const QVec& y) {
        QVec full(n, Rat(0));
        const BalasBlock& bl = l.balas_blocks[mi];
        for (std::size_t c = 0; c < bl.y_dim; ++c) full[bl.y_begin + c] = y[c];
        full[bl.lambda] = 1;
        return full;
    };

    // max of <dir, x> over the image, with an attaining point
    auto image_max = [&](const QVec& dir) -> std::pair<Rat, QVec> {
        QVec cq = q_mul_vec(Mt, dir);
        Rat shift = q_dot(dir, l.proj.t);
        if (structured) {
            bool have = false;
            Rat best;
            QVec arg;
            for (std::size_t mi = 0; mi < member_slices.size(); ++mi) {
                const BalasBlock& bl = l.balas_blocks[mi];
                QVec cm(bl.y_dim);
                for (std::size_t c = 0; c < bl.y_dim; ++c) cm[c] = cq[bl.y_begin + c];
                LpResult r = lp_maximize(member_slices[mi], cm);
                if (r.status == LpStatus::Infeasible) continue;
                if (r.status == LpStatus::Unbounded)
                    throw std::domain_error("verify_lift: lift polyhedron is unbounded");
                Rat val = r.value + cq[bl.lambda];
                if (!have || val > best) {
                    have = true;
                    best = val;
                    arg = assemble_member_point(mi, r.x);
                }
            }
            if (!have) throw std::logic_error("verify_lift: no feasible member slice");
            return {best + shift, l.proj.apply(arg)};
        }
        LpResult r = lp_maximize(QH, cq);
        if (r.status == LpStatus::Unbounded)
            throw std::domain_error("verify_lift: lift polyhedron is unbounded");
        return {r.value + shift, l.proj.apply(r.x)};
    };

    auto vertex_attained = [&](const QVec& v) {
        QVec rhs = q_sub(v, l.proj.t);
        if (structured) {
            for (std::size_t mi = 0; mi < member_slices.size(); ++mi) {
                const BalasBlock& bl = l.balas_blocks[mi];
                HDesc probe = member_slices[mi];
                for (std::size_t i = 0; i < D; ++i) {
                    QVec e(bl.y_dim);
                    for (std::size_t c = 0; c < bl.y_dim; ++c)
                        e[c] = l.proj.M(i, bl.y_begin + c);
                    probe.add_eq(e, rhs[i] - l.proj.M(i, bl.lambda));
                }
                if (lp_feasible(probe).feasible) return true;
            }
        }
        HDesc probe = QH;
        for (std::size_t i = 0; i < D; ++i) probe.add_eq(l.proj.M.row(i), rhs[i]);
        return lp_feasible(probe).feasible;
    };

    std::vector<TaskOutcome> slots(tasks.size());
    auto run_task = [&](std::size_t ti) {
        const VerifyTask& tk = tasks[ti];
        TaskOutcome& out = slots[ti];
        switch (tk.kind) {
            case VerifyTask::FacetMax: {
                auto [val, arg] = image_max(TH.A.row(tk.index));
                if (val > TH.b[tk.index]) {
                    out.escaped = true;
                    out.witness = arg;
                }
                break;
            }
            case VerifyTask::EqMax: {
                auto [val, arg] = image_max(TH.E.row(tk.index));
                if (val > TH.f[tk.index]) {
                    out.escaped = true;
                    out.witness = arg;
                }
                break;
            }
            case VerifyTask::EqMin: {
                auto [val, arg] = image_max(q_scale(Rat(-1), TH.E.row(tk.index)));
                if (val > -TH.f[tk.index]) {
                    out.escaped = true;
                    out.witness = arg;
                }
                break;
            }
            case VerifyTask::Vertex: {
                if (!vertex_attained(TV[tk.index])) {
                    out.missed = true;
                    out.witness = TV[tk.index];
                }
                break;
            }
        }
    };

#ifdef _OPENMP
    if (opt.parallel) {
        if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
#pragma omp parallel for schedule(static)
        for (long long ti = 0; ti < static_cast<long long>(tasks.size()); ++ti)
            run_task(static_cast<std::size_t>(ti));
    } else {
        for (std::size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
    }
#else
    (void)opt;
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
#endif

    for (const auto& s : slots) {
        if (s.escaped) rep.escaped_vertices.push_back(s.witness);
        if (s.missed) rep.missed_vertices.push_back(s.witness);
    }
    rep.exact = rep.escaped_vertices.empty() && rep.missed_vertices.empty();
    return rep;
}

}  // namespace vxc
