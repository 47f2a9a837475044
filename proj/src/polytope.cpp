#include "vxc/polytope.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace vxc {

AffineMap AffineMap::identity(std::size_t n) {
    return AffineMap(q_identity(n), QVec(n, Rat(0)));
}

QVec AffineMap::apply(const QVec& x) const {
    QVec y = q_mul_vec(M, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += t[i];
    return y;
}

namespace {

// (a | b) scaled by a positive rational to primitive integers.
QVec normalize_row_positive(const QVec& a, const Rat& b) {
    QVec joint = a;
    joint.push_back(b);
    ZVec p = primitive_integer_row(joint);
    QVec out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = Rat(p[i]);
    return out;  // last entry is the rhs
}

bool all_zero_coeffs(const QVec& joint) {
    for (std::size_t i = 0; i + 1 < joint.size(); ++i)
        if (joint[i] != 0) return false;
    return true;
}

}  // namespace

void canonicalize(HDesc& H) {
    const std::size_t n = H.dim;
    std::vector<QVec> ineqs;
    std::set<QVec> seen;
    for (std::size_t i = 0; i < H.A.m; ++i) {
        QVec j = normalize_row_positive(H.A.row(i), H.b[i]);
        if (all_zero_coeffs(j)) {
            if (j[n] >= 0) continue;                  // 0 <= nonneg: vacuous
            j.assign(n + 1, Rat(0));
            j[n] = -1;                                // 0 <= -1: canonical infeasible marker
        }
        if (seen.insert(j).second) ineqs.push_back(j);
    }
    std::vector<QVec> eqs;
    std::set<QVec> seenE;
    for (std::size_t i = 0; i < H.E.m; ++i) {
        QVec j = normalize_row_positive(H.E.row(i), H.f[i]);
        if (all_zero_coeffs(j)) {
            if (j[n] == 0) continue;                  // 0 = 0
            j.assign(n + 1, Rat(0));
            j[n] = 1;                                 // 0 = 1: infeasible marker
        } else {
            std::size_t k = 0;
            while (j[k] == 0) ++k;
            if (j[k] < 0)
                for (auto& x : j) x = -x;
        }
        if (seenE.insert(j).second) eqs.push_back(j);
    }
    HDesc out(n);
    for (auto& j : ineqs) out.add_ineq(QVec(j.begin(), j.begin() + n), j[n]);
    for (auto& j : eqs) out.add_eq(QVec(j.begin(), j.begin() + n), j[n]);
    H = std::move(out);
}

HDesc unit_rhs_form(const HDesc& H) {
    HDesc out(H.dim);
    for (std::size_t i = 0; i < H.A.m; ++i) {
        if (H.b[i] <= 0)
            throw std::domain_error("unit_rhs_form: right-hand side not positive");
        QVec a = H.A.row(i);
        for (auto& x : a) x /= H.b[i];
        out.add_ineq(a, Rat(1));
    }
    for (std::size_t i = 0; i < H.E.m; ++i) {
        if (H.f[i] != 0)
            throw std::domain_error("unit_rhs_form: equation not through the origin");
        out.add_eq(H.E.row(i), Rat(0));
    }
    return out;
}

namespace {

QVec primitive_q(const QVec& v) {
    ZVec p = primitive_integer_row(v);
    QVec out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = Rat(p[i]);
    return out;
}

}  // namespace

std::vector<QVec> dd_extreme_rays(const QMat& M) {
    const std::size_t n = M.n, m = M.m;
    if (q_rank(M) != n)
        throw std::invalid_argument("dd_extreme_rays: cone is not pointed");
    std::vector<QVec> rows(m);
    for (std::size_t i = 0; i < m; ++i) rows[i] = M.row(i);
    // Greedy rank-increasing initial row set.
    std::vector<std::size_t> init;
    {
        QMat acc(0, n);
        for (std::size_t i = 0; i < m && init.size() < n; ++i) {
            QMat trial(acc.m + 1, n);
            trial.a = acc.a;
            trial.a.insert(trial.a.end(), rows[i].begin(), rows[i].end());
            if (q_rank(trial) > acc.m) {
                acc = std::move(trial);
                init.push_back(i);
            }
        }
    }
    QMat M0(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) M0(k, j) = M(init[k], j);
    QMat Inv = q_inverse(M0);

    // Each ray carries the set of processed rows it is active on (bitset over
    // row indices); adjacency below is the combinatorial test on these sets.
    const std::size_t words = (m + 63) / 64;
    struct Ray {
        QVec v;
        std::vector<std::uint64_t> act;
    };
    std::vector<std::size_t> processed = init;
    std::vector<char> used(m, 0);
    for (std::size_t i : init) used[i] = 1;
    auto active_set = [&](const QVec& v) {
        std::vector<std::uint64_t> act(words, 0);
        for (std::size_t t : processed)
            if (q_dot(rows[t], v) == 0) act[t >> 6] |= std::uint64_t{1} << (t & 63);
        return act;
    };
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < n; ++j) {
        QVec r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = -Inv(i, j);
        Ray ray{primitive_q(r), {}};
        ray.act = active_set(ray.v);
        rays.push_back(std::move(ray));
    }

    std::vector<std::uint64_t> common(words);
    for (std::size_t i = 0; i < m; ++i) {
        if (used[i]) continue;
        std::vector<Rat> d(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) d[r] = q_dot(rows[i], rays[r].v);
        std::vector<Ray> next;
        std::set<QVec> dedupe;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (d[r] <= 0) {
                Ray kept = rays[r];
                if (d[r] == 0) kept.act[i >> 6] |= std::uint64_t{1} << (i & 63);
                dedupe.insert(kept.v);
                next.push_back(std::move(kept));
            }
        // New rays from adjacent (positive, negative) pairs.  Adjacency: at
        // least n-2 common active rows and no third ray active on all of them.
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (d[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (d[q] >= 0) continue;
                std::size_t count = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    common[w] = rays[p].act[w] & rays[q].act[w];
                    count += std::popcount(common[w]);
                }
                if (count + 2 < n) continue;
                bool adjacent = true;
                for (std::size_t s = 0; s < rays.size() && adjacent; ++s) {
                    if (s == p || s == q) continue;
                    bool covers = true;
                    for (std::size_t w = 0; w < words && covers; ++w)
                        covers = (common[w] & ~rays[s].act[w]) == 0;
                    adjacent = !covers;
                }
                if (!adjacent) continue;
                QVec w(n);
                for (std::size_t j = 0; j < n; ++j)
                    w[j] = d[p] * rays[q].v[j] - d[q] * rays[p].v[j];
                w = primitive_q(w);
                if (!dedupe.insert(w).second) continue;
                Ray ray;
                ray.v = std::move(w);
                ray.act = active_set(ray.v);
                ray.act[i >> 6] |= std::uint64_t{1} << (i & 63);
                next.push_back(std::move(ray));
            }
        }
        rays = std::move(next);
        processed.push_back(i);
        used[i] = 1;
    }
    std::vector<QVec> out;
    out.reserve(rays.size());
    for (Ray& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Vertices of { x : A x <= b } assumed full-dimensional and bounded
// (callers guarantee it); throws std::domain_error when unbounded after all.
std::vector<QVec> vertices_core(const QMat& A, const QVec& b) {
    const std::size_t n = A.n, m = A.m;
    QMat Mh(m + 1, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) Mh(i, j) = A(i, j);
        Mh(i, n) = -b[i];
    }
    Mh(m, n) = -1;
    if (q_rank(Mh) != n + 1)
        throw std::domain_error("vertex_enumeration: unbounded polyhedron");
    std::vector<QVec> verts;
    for (const QVec& r : dd_extreme_rays(Mh)) {
        if (r[n] == 0)
            throw std::domain_error("vertex_enumeration: unbounded polyhedron");
        QVec x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = r[j] / r[n];
        verts.push_back(std::move(x));
    }
    std::sort(verts.begin(), verts.end());
    return verts;
}

}  // namespace

std::vector<QVec> vertex_enumeration(const HDesc& H0) {
    HDesc H = H0;
    canonicalize(H);
    const std::size_t n = H.dim;
    if (n == 0) throw std::invalid_argument("vertex_enumeration: zero-dimensional ambient");
    FeasResult fr = lp_feasible(H);
    if (!fr.feasible) throw std::domain_error("vertex_enumeration: empty polyhedron");
    // Split off implicit equalities: a_i x <= b_i with min over P equal to b_i.
    std::vector<char> implicit(H.A.m, 0);
    for (std::size_t i = 0; i < H.A.m; ++i) {
        QVec negai = H.A.row(i);
        for (auto& x : negai) x = -x;
        LpResult r = lp_maximize(H, negai);
        if (r.status == LpStatus::Optimal && -r.value == H.b[i]) implicit[i] = 1;
    }
    HDesc W(n);
    for (std::size_t i = 0; i < H.A.m; ++i) {
        if (implicit[i])
            W.add_eq(H.A.row(i), H.b[i]);
        else
            W.add_ineq(H.A.row(i), H.b[i]);
    }
    for (std::size_t i = 0; i < H.E.m; ++i) W.add_eq(H.E.row(i), H.f[i]);

    if (W.E.m == 0) return vertices_core(W.A, W.b);

    auto x0 = q_solve(W.E, W.f);
    if (!x0) throw std::domain_error("vertex_enumeration: empty polyhedron");
    std::vector<QVec> N = q_nullspace(W.E);
    if (N.empty()) {
        for (std::size_t i = 0; i < W.A.m; ++i)
            if (q_dot(W.A.row(i), *x0) > W.b[i])
                throw std::domain_error("vertex_enumeration: empty polyhedron");
        return {*x0};
    }
    const std::size_t q = N.size();
    QMat Ar(W.A.m, q);
    QVec br(W.A.m, Rat(0));
    for (std::size_t i = 0; i < W.A.m; ++i) {
        QVec ai = W.A.row(i);
        for (std::size_t k = 0; k < q; ++k) Ar(i, k) = q_dot(ai, N[k]);
        br[i] = W.b[i] - q_dot(ai, *x0);
    }
    std::vector<QVec> verts;
    for (const QVec& u : vertices_core(Ar, br)) {
        QVec x = *x0;
        for (std::size_t k = 0; k < q; ++k)
            for (std::size_t j = 0; j < n; ++j) x[j] += u[k] * N[k][j];
        verts.push_back(std::move(x));
    }
    std::sort(verts.begin(), verts.end());
    return verts;
}

HDesc facet_enumeration(std::size_t dim, const std::vector<QVec>& pts0) {
    if (pts0.empty()) throw std::invalid_argument("facet_enumeration: no points");
    std::vector<QVec> pts;
    {
        std::set<QVec> seen;
        for (const QVec& p : pts0) {
            if (p.size() != dim) throw std::invalid_argument("facet_enumeration: bad point dim");
            if (seen.insert(p).second) pts.push_back(p);
        }
    }
    const std::size_t m = pts.size();
    QVec c(dim, Rat(0));
    for (const QVec& p : pts) c = q_add(c, p);
    for (auto& x : c) x /= Rat((long)m);

    QMat Dirs(m, dim);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < dim; ++j) Dirs(i, j) = pts[i][j] - c[j];
    QMat R = Dirs;
    std::vector<std::size_t> piv = rref(R);
    const std::size_t r = piv.size();

    HDesc out(dim);
    if (r == 0) {  // single point
        for (std::size_t j = 0; j < dim; ++j) {
            QVec e(dim, Rat(0));
            e[j] = 1;
            out.add_eq(e, c[j]);
        }
        canonicalize(out);
        return out;
    }
    QMat Nb(r, dim);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < dim; ++j) Nb(i, j) = R(i, j);
    // Affine-hull equations from the orthogonal complement of the direction space.
    for (const QVec& w : q_nullspace(Nb)) out.add_eq(w, q_dot(w, c));

    QMat Gm = q_mul(Nb, q_transpose(Nb));
    QMat Gi = q_inverse(Gm);
    QMat U(m, r);
    for (std::size_t i = 0; i < m; ++i) {
        QVec diff = q_sub(pts[i], c);
        QVec nd = q_mul_vec(Nb, diff);
        QVec u = q_mul_vec(Gi, nd);
        for (std::size_t k = 0; k < r; ++k) U(i, k) = u[k];
    }
    QVec ones(m, Rat(1));
    for (const QVec& y : vertices_core(U, ones)) {
        // y . u <= 1 pulled back through u(x) = Gi N (x - c).
        QVec a(dim, Rat(0));
        QVec yg = q_mul_vec(Gi, y);  // Gi symmetric
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < r; ++k) a[j] += yg[k] * Nb(k, j);
        out.add_ineq(a, Rat(1) + q_dot(a, c));
    }
    canonicalize(out);
    return out;
}

Polytope from_points(std::size_t dim, std::vector<QVec> pts) {
    Polytope P;
    P.dim = dim;
    std::vector<QVec> uniq;
    std::set<QVec> seen;
    for (auto& p : pts) {
        if (p.size() != dim) throw std::invalid_argument("from_points: bad point dim");
        if (seen.insert(p).second) uniq.push_back(p);
    }
    if (uniq.empty()) throw std::invalid_argument("from_points: no points");
    // The facet description tolerates interior points, so compute it first and
    // keep the generators whose tight rows (with the hull equations) have full
    // rank -- exactly the extreme points.
    HDesc H = facet_enumeration(dim, uniq);
    std::vector<QVec> ext;
    for (const QVec& p : uniq) {
        std::vector<QVec> tight;
        for (std::size_t i = 0; i < H.E.m; ++i) tight.push_back(H.E.row(i));
        for (std::size_t i = 0; i < H.A.m; ++i)
            if (q_dot(H.A.row(i), p) == H.b[i]) tight.push_back(H.A.row(i));
        QMat T(tight.size(), dim);
        for (std::size_t i = 0; i < tight.size(); ++i)
            for (std::size_t j = 0; j < dim; ++j) T(i, j) = tight[i][j];
        if (q_rank(T) == dim) ext.push_back(p);
    }
    std::sort(ext.begin(), ext.end());
    P.v = std::move(ext);
    P.h = std::move(H);
    return P;
}

Polytope from_hdesc(HDesc h) {
    Polytope P;
    P.dim = h.dim;
    P.h = std::move(h);
    return P;
}

const std::vector<QVec>& ensure_v(Polytope& P) {
    if (!P.v) {
        if (!P.h) throw std::invalid_argument("polytope has no description");
        P.v = vertex_enumeration(*P.h);
    }
    return *P.v;
}

const HDesc& ensure_h(Polytope& P) {
    if (!P.h) {
        if (!P.v) throw std::invalid_argument("polytope has no description");
        P.h = facet_enumeration(P.dim, *P.v);
    }
    return *P.h;
}

bool hdesc_contains(const HDesc& H, const QVec& x, bool strict_ineq) {
    for (std::size_t i = 0; i < H.A.m; ++i) {
        Rat lhs = q_dot(H.A.row(i), x);
        if (strict_ineq ? lhs >= H.b[i] : lhs > H.b[i]) return false;
    }
    for (std::size_t i = 0; i < H.E.m; ++i)
        if (q_dot(H.E.row(i), x) != H.f[i]) return false;
    return true;
}

bool contains(const Polytope& P, const QVec& x) {
    if (P.h) return hdesc_contains(*P.h, x);
    if (!P.v) throw std::invalid_argument("polytope has no description");
    const auto& pts = *P.v;
    HDesc feas(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        QVec a(pts.size(), Rat(0));
        a[i] = -1;
        feas.add_ineq(a, Rat(0));
    }
    feas.add_eq(QVec(pts.size(), Rat(1)), Rat(1));
    for (std::size_t d = 0; d < P.dim; ++d) {
        QVec e(pts.size(), Rat(0));
        for (std::size_t i = 0; i < pts.size(); ++i) e[i] = pts[i][d];
        feas.add_eq(e, x[d]);
    }
    return lp_feasible(feas).feasible;
}

bool polytope_equal(Polytope& P, Polytope& Q) {
    if (P.dim != Q.dim) return false;
    const auto& vp = ensure_v(P);
    const HDesc& hq = ensure_h(Q);
    for (const QVec& x : vp)
        if (!hdesc_contains(hq, x)) return false;
    const auto& vq = ensure_v(Q);
    const HDesc& hp = ensure_h(P);
    for (const QVec& x : vq)
        if (!hdesc_contains(hp, x)) return false;
    return true;
}

Polytope dualize(Polytope& P) {
    const HDesc& H0 = ensure_h(P);
    const auto& V = ensure_v(P);
    HDesc H = H0;
    canonicalize(H);
    for (std::size_t i = 0; i < H.E.m; ++i)
        if (H.f[i] != 0) throw std::domain_error("dualize: origin not in relative interior");
    for (std::size_t i = 0; i < H.A.m; ++i)
        if (H.b[i] <= 0) throw std::domain_error("dualize: origin not in relative interior");
    // Orthogonal projector onto lin(P) = { x : E x = 0 }.
    QMat Proj = q_identity(P.dim);
    if (H.E.m > 0) {
        QMat Et = q_transpose(H.E);
        QMat EEt = q_mul(H.E, Et);
        QMat Inv = q_inverse(EEt);
        QMat corr = q_mul(q_mul(Et, Inv), H.E);
        for (std::size_t i = 0; i < P.dim; ++i)
            for (std::size_t j = 0; j < P.dim; ++j) Proj(i, j) -= corr(i, j);
    }
    Polytope D;
    D.dim = P.dim;
    std::vector<QVec> dv;
    for (std::size_t i = 0; i < H.A.m; ++i) {
        QVec a = H.A.row(i);
        for (auto& x : a) x /= H.b[i];
        dv.push_back(q_mul_vec(Proj, a));
    }
    D.v = std::move(dv);
    HDesc dh(P.dim);
    for (const QVec& vj : V) dh.add_ineq(vj, Rat(1));
    for (std::size_t i = 0; i < H.E.m; ++i) dh.add_eq(H.E.row(i), Rat(0));
    D.h = std::move(dh);
    return D;
}

Polytope affine_image(Polytope& P, const AffineMap& m) {
    if (m.source_dim() != P.dim) throw std::invalid_argument("affine_image: dim mismatch");
    const auto& V = ensure_v(P);
    std::vector<QVec> img;
    img.reserve(V.size());
    for (const QVec& x : V) img.push_back(m.apply(x));
    return from_points(m.target_dim(), std::move(img));
}

namespace {

// Drop inequalities implied by the rest (LP test), in place, deterministically.
void remove_redundant(HDesc& H) {
    for (std::size_t i = 0; i < H.A.m;) {
        HDesc rest(H.dim);
        for (std::size_t k = 0; k < H.A.m; ++k)
            if (k != i) rest.add_ineq(H.A.row(k), H.b[k]);
        for (std::size_t k = 0; k < H.E.m; ++k) rest.add_eq(H.E.row(k), H.f[k]);
        LpResult r = lp_maximize(rest, H.A.row(i));
        bool redundant = (r.status == LpStatus::Optimal && r.value <= H.b[i]);
        if (redundant) {
            HDesc next(H.dim);
            for (std::size_t k = 0; k < H.A.m; ++k)
                if (k != i) next.add_ineq(H.A.row(k), H.b[k]);
            for (std::size_t k = 0; k < H.E.m; ++k) next.add_eq(H.E.row(k), H.f[k]);
            H = std::move(next);
        } else {
            ++i;
        }
    }
}

}  // namespace

HDesc fm_project(const HDesc& H0, const std::vector<std::size_t>& keep) {
    HDesc H = H0;
    canonicalize(H);
    std::vector<char> kept(H.dim, 0);
    for (std::size_t k : keep) {
        if (k >= H.dim) throw std::invalid_argument("fm_project: bad coordinate");
        kept[k] = 1;
    }
    for (std::size_t k = H.dim; k-- > 0;) {
        if (kept[k]) continue;
        // Prefer solving an equation for x_k.
        std::size_t eq = H.E.m;
        for (std::size_t i = 0; i < H.E.m; ++i)
            if (H.E(i, k) != 0) { eq = i; break; }
        HDesc next(H.dim);
        if (eq < H.E.m) {
            QVec er = H.E.row(eq);
            Rat ef = H.f[eq];
            for (std::size_t i = 0; i < H.A.m; ++i) {
                QVec a = H.A.row(i);
                Rat b = H.b[i];
                if (a[k] != 0) {
                    Rat t = a[k] / er[k];
                    for (std::size_t j = 0; j < H.dim; ++j) a[j] -= t * er[j];
                    b -= t * ef;
                }
                next.add_ineq(a, b);
            }
            for (std::size_t i = 0; i < H.E.m; ++i) {
                if (i == eq) continue;
                QVec e = H.E.row(i);
                Rat f = H.f[i];
                if (e[k] != 0) {
                    Rat t = e[k] / er[k];
                    for (std::size_t j = 0; j < H.dim; ++j) e[j] -= t * er[j];
                    f -= t * ef;
                }
                next.add_eq(e, f);
            }
        } else {
            std::vector<std::size_t> pos, neg;
            for (std::size_t i = 0; i < H.A.m; ++i) {
                if (H.A(i, k) > 0)
                    pos.push_back(i);
                else if (H.A(i, k) < 0)
                    neg.push_back(i);
                else
                    next.add_ineq(H.A.row(i), H.b[i]);
            }
            for (std::size_t p : pos)
                for (std::size_t q : neg) {
                    QVec a(H.dim, Rat(0));
                    Rat cp = H.A(p, k), cq = -H.A(q, k);
                    for (std::size_t j = 0; j < H.dim; ++j)
                        a[j] = H.A(p, j) / cp + H.A(q, j) / cq;
                    next.add_ineq(a, H.b[p] / cp + H.b[q] / cq);
                }
            for (std::size_t i = 0; i < H.E.m; ++i) next.add_eq(H.E.row(i), H.f[i]);
        }
        canonicalize(next);
        remove_redundant(next);
        H = std::move(next);
    }
    // All eliminated columns now have zero coefficients everywhere.
    std::vector<std::size_t> cols(keep.begin(), keep.end());
    std::sort(cols.begin(), cols.end());
    HDesc out(cols.size());
    for (std::size_t i = 0; i < H.A.m; ++i) {
        QVec a(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) a[j] = H.A(i, cols[j]);
        out.add_ineq(a, H.b[i]);
    }
    for (std::size_t i = 0; i < H.E.m; ++i) {
        QVec e(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) e[j] = H.E(i, cols[j]);
        out.add_eq(e, H.f[i]);
    }
    canonicalize(out);
    return out;
}

SlackMatrix slack_matrix(Polytope& P) {
    const HDesc& H = ensure_h(P);
    const auto& V = ensure_v(P);
    SlackMatrix S;
    S.S = QMat(H.A.m, V.size());
    for (std::size_t i = 0; i < H.A.m; ++i) {
        QVec a = H.A.row(i);
        for (std::size_t j = 0; j < V.size(); ++j) {
            Rat s = H.b[i] - q_dot(a, V[j]);
            if (s < 0) throw std::domain_error("slack_matrix: negative entry");
            S.S(i, j) = s;
        }
    }
    return S;
}

namespace {

constexpr std::size_t kCoverDim = 20;

struct Rect {
    std::bitset<kCoverDim * kCoverDim> cells;
};

std::size_t greedy_cover(const std::vector<Rect>& rects,
                         const std::bitset<kCoverDim * kCoverDim>& universe) {
    auto uncovered = universe;
    std::size_t used = 0;
    while (uncovered.any()) {
        std::size_t best = rects.size(), bestGain = 0;
        for (std::size_t r = 0; r < rects.size(); ++r) {
            std::size_t gain = (rects[r].cells & uncovered).count();
            if (gain > bestGain) {
                bestGain = gain;
                best = r;
            }
        }
        if (best == rects.size()) break;  // cannot happen for valid inputs
        uncovered &= ~rects[best].cells;
        ++used;
    }
    return used;
}

void exact_cover_dfs(const std::vector<Rect>& rects,
                     const std::vector<std::vector<std::size_t>>& coverers,
                     std::bitset<kCoverDim * kCoverDim> uncovered, std::size_t depth,
                     std::size_t& best) {
    if (!uncovered.any()) {
        best = std::min(best, depth);
        return;
    }
    if (depth + 1 >= best) return;
    // Branch on the uncovered cell with the fewest covering rectangles.
    std::size_t cell = kCoverDim * kCoverDim, cnt = SIZE_MAX;
    for (std::size_t c = 0; c < kCoverDim * kCoverDim; ++c) {
        if (!uncovered[c]) continue;
        if (coverers[c].size() < cnt) {
            cnt = coverers[c].size();
            cell = c;
        }
    }
    for (std::size_t r : coverers[cell]) {
        exact_cover_dfs(rects, coverers, uncovered & ~rects[r].cells, depth + 1, best);
    }
}

}  // namespace

SlackBounds slack_rank_bounds(const QMat& S) {
    SlackBounds out;
    out.rank = q_rank(S);
    const std::size_t m = S.m, n = S.n;
    std::vector<uint32_t> supp(m, 0);
    bool small = (m <= kCoverDim && n <= kCoverDim);
    std::size_t cellCount = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (S(i, j) != 0) {
                if (small) supp[i] |= (uint32_t(1) << j);
                ++cellCount;
            }
    if (cellCount == 0) {
        out.rectangle_cover = 0;
        out.cover_exact = true;
        return out;
    }
    if (!small) {
        // Greedy on single-row rectangles: count of distinct nonzero rows.
        std::set<std::vector<bool>> rows;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<bool> r(n);
            bool any = false;
            for (std::size_t j = 0; j < n; ++j) {
                r[j] = S(i, j) != 0;
                any = any || r[j];
            }
            if (any) rows.insert(r);
        }
        out.rectangle_cover = rows.size();
        out.cover_exact = false;
        return out;
    }
    // Column sets of maximal rectangles are intersections of row supports.
    // Intersection closure of the row supports (any intersection of subsets
    // of generators is reachable by repeated AND with single generators).
    std::set<uint32_t> masks;
    std::vector<uint32_t> work;
    for (std::size_t i = 0; i < m; ++i)
        if (supp[i] && masks.insert(supp[i]).second) work.push_back(supp[i]);
    bool capped = false;
    for (std::size_t w = 0; w < work.size() && !capped; ++w) {
        for (std::size_t i = 0; i < m; ++i) {
            uint32_t x = work[w] & supp[i];
            if (x && masks.insert(x).second) {
                work.push_back(x);
                if (masks.size() > 200000) {
                    capped = true;
                    break;
                }
            }
        }
    }
    std::vector<Rect> rects;
    std::bitset<kCoverDim * kCoverDim> universe;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (supp[i] & (uint32_t(1) << j)) universe.set(i * kCoverDim + j);
    for (uint32_t C : masks) {
        // R(C) = rows whose support contains C; maximal iff C equals their AND.
        uint32_t common = ~uint32_t(0);
        Rect rect;
        for (std::size_t i = 0; i < m; ++i)
            if ((supp[i] & C) == C) {
                common &= supp[i];
                for (std::size_t j = 0; j < n; ++j)
                    if (C & (uint32_t(1) << j)) rect.cells.set(i * kCoverDim + j);
            }
        if (common != C) continue;
        rects.push_back(rect);
    }
    std::size_t ub = greedy_cover(rects, universe);
    if (capped) {
        out.rectangle_cover = ub;
        out.cover_exact = false;
        return out;
    }
    std::vector<std::vector<std::size_t>> coverers(kCoverDim * kCoverDim);
    for (std::size_t r = 0; r < rects.size(); ++r)
        for (std::size_t c = 0; c < kCoverDim * kCoverDim; ++c)
            if (rects[r].cells[c]) coverers[c].push_back(r);
    std::size_t best = ub;
    exact_cover_dfs(rects, coverers, universe, 0, best);
    out.rectangle_cover = best;
    out.cover_exact = true;
    return out;
}

Polytope make_cube(std::size_t dim, const Rat& r) {
    if (dim == 0 || dim > 24) throw std::invalid_argument("make_cube: bad dimension");
    Polytope P;
    P.dim = dim;
    HDesc h(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        QVec a(dim, Rat(0));
        a[j] = 1;
        h.add_ineq(a, r);
        a[j] = -1;
        h.add_ineq(a, r);
    }
    P.h = std::move(h);
    if (dim <= 16) {
        std::vector<QVec> vs;
        for (std::size_t s = 0; s < (std::size_t(1) << dim); ++s) {
            QVec v(dim);
            for (std::size_t j = 0; j < dim; ++j) v[j] = (s >> j) & 1 ? r : -r;
            vs.push_back(std::move(v));
        }
        std::sort(vs.begin(), vs.end());
        P.v = std::move(vs);
    }
    return P;
}

Polytope make_crosspolytope(std::size_t dim, const Rat& r) {
    if (dim == 0 || dim > 16) throw std::invalid_argument("make_crosspolytope: bad dimension");
    Polytope P;
    P.dim = dim;
    std::vector<QVec> vs;
    for (std::size_t j = 0; j < dim; ++j) {
        QVec v(dim, Rat(0));
        v[j] = r;
        vs.push_back(v);
        v[j] = -r;
        vs.push_back(v);
    }
    std::sort(vs.begin(), vs.end());
    P.v = std::move(vs);
    HDesc h(dim);
    for (std::size_t s = 0; s < (std::size_t(1) << dim); ++s) {
        QVec a(dim);
        for (std::size_t j = 0; j < dim; ++j) a[j] = (s >> j) & 1 ? Rat(1) : Rat(-1);
        h.add_ineq(a, r);
    }
    P.h = std::move(h);
    return P;
}

Polytope scale_polytope(Polytope& P, const Rat& s) {
    if (s <= 0) throw std::invalid_argument("scale_polytope: need positive factor");
    Polytope Q;
    Q.dim = P.dim;
    if (P.h) {
        HDesc h = *P.h;
        for (auto& x : h.b) x *= s;
        for (auto& x : h.f) x *= s;
        Q.h = std::move(h);
    }
    if (P.v) {
        std::vector<QVec> vs = *P.v;
        for (auto& v : vs) v = q_scale(s, v);
        Q.v = std::move(vs);
    }
    return Q;
}

HDesc hdesc_intersection(const HDesc& A, const HDesc& B) {
    if (A.dim != B.dim) throw std::invalid_argument("hdesc_intersection: dim mismatch");
    HDesc out = A;
    for (std::size_t i = 0; i < B.A.m; ++i) out.add_ineq(B.A.row(i), B.b[i]);
    for (std::size_t i = 0; i < B.E.m; ++i) out.add_eq(B.E.row(i), B.f[i]);
    return out;
}

}  // namespace vxc
