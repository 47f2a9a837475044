#include "vxc/gadgets.hpp"

#include "vxc/enumeration.hpp"
#include "vxc/voronoi.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace vxc {

namespace {

bool is_binary(const Int& v) { return v == 0 || v == 1; }

std::string z_to_string(const ZVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

/// Rows cutting out span(basis_rows) as a kernel: one equation per nullspace
/// vector of the basis. An empty basis (dimension-0 space) is allowed.
QMat subspace_equations(const QMat& basis_rows, std::size_t n) {
    QMat B = basis_rows;
    if (B.m == 0) {
        B = QMat(0, n);
    } else if (B.n != n) {
        throw std::invalid_argument("subspace basis has the wrong ambient dimension");
    }
    std::vector<QVec> ns = q_nullspace(B);
    QMat E(ns.size(), n);
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) E(i, j) = ns[i][j];
    return E;
}

ZVec zt_point(const ZMat& M, const ZVec& z) {
    ZVec u(M.n, Int(0));
    for (std::size_t i = 0; i < M.m; ++i)
        for (std::size_t j = 0; j < M.n; ++j) u[j] += z[i] * M(i, j);
    return u;
}

std::optional<ZVec> integer_coefficients(const QMat& Mt, const QVec& target) {
    std::optional<QVec> sol = q_solve(Mt, target);
    if (!sol) return std::nullopt;
    ZVec z(sol->size());
    for (std::size_t i = 0; i < sol->size(); ++i) {
        if (den((*sol)[i]) != 1) return std::nullopt;
        z[i] = num((*sol)[i]);
    }
    return z;
}

}  // namespace

BinarySystem stable_set_instance(std::size_t n,
                                 std::vector<std::pair<std::size_t, std::size_t>> edges) {
    if (n == 0 || n > 16)
        throw std::invalid_argument("stable_set_instance: node count must be in [1, 16]");
    for (auto& e : edges) {
        if (e.first == e.second) throw std::invalid_argument("stable_set_instance: loop edge");
        if (e.first >= n || e.second >= n)
            throw std::invalid_argument("stable_set_instance: edge endpoint out of range");
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    BinarySystem sys;
    sys.A = QMat(edges.size(), n);
    sys.b = QVec(edges.size(), Rat(1));
    for (std::size_t r = 0; r < edges.size(); ++r) {
        sys.A(r, edges[r].first) = 1;
        sys.A(r, edges[r].second) = 1;
    }
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool stable = true;
        for (const auto& e : edges)
            if ((mask >> e.first & 1u) && (mask >> e.second & 1u)) {
                stable = false;
                break;
            }
        if (!stable) continue;
        ZVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
        sys.X.push_back(std::move(x));
    }
    std::sort(sys.X.begin(), sys.X.end());
    std::ostringstream label;
    label << "stable-set(n=" << n << ",m=" << edges.size() << ")";
    sys.label = label.str();
    return sys;
}

BinarySystem correlation_instance(std::size_t n) {
    if (n == 0) throw std::invalid_argument("correlation_instance: n must be positive");
    if (n > 8) throw std::invalid_argument("correlation_instance: n capped at 8");
    const std::size_t k = n * n;
    const std::size_t m = 3 * n * (n - 1);

    BinarySystem sys;
    sys.A = QMat(m, k);
    sys.b = QVec(m, Rat(0));
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::size_t ij = i * n + j, ii = i * n + i, jj = j * n + j;
            sys.A(r, ij) = 1;
            sys.A(r, ii) = -1;  // Y_ij <= Y_ii
            ++r;
            sys.A(r, ij) = 1;
            sys.A(r, jj) = -1;  // Y_ij <= Y_jj
            ++r;
            sys.A(r, ii) = 1;
            sys.A(r, jj) = 1;
            sys.A(r, ij) = -1;  // Y_ii + Y_jj - 1 <= Y_ij
            sys.b[r] = 1;
            ++r;
        }
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        ZVec y(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                y[i * n + j] = Int((mask >> i & 1u) & (mask >> j & 1u));
        sys.X.push_back(std::move(y));
    }
    std::sort(sys.X.begin(), sys.X.end());
    std::ostringstream label;
    label << "correlation(n=" << n << ")";
    sys.label = label.str();
    return sys;
}

GadgetInstance slack_embedding(const QMat& A, const QVec& b, const std::vector<ZVec>& X) {
    const std::size_t k = A.n, m = A.m;
    if (k == 0) throw std::invalid_argument("slack_embedding: system has no variables");
    if (b.size() != m) throw std::invalid_argument("slack_embedding: b has the wrong length");
    if (X.empty()) throw std::invalid_argument("slack_embedding: empty solution set");

    GadgetInstance g;
    g.k = k;
    g.m = m;
    g.A = A;
    g.b = b;
    g.X = X;
    std::sort(g.X.begin(), g.X.end());
    g.X.erase(std::unique(g.X.begin(), g.X.end()), g.X.end());
    g.alpha_sq = Int(k + m);

    for (const ZVec& x : g.X) {
        if (x.size() != k) throw std::invalid_argument("slack_embedding: solution of wrong length");
        for (const Int& xi : x)
            if (!is_binary(xi))
                throw std::domain_error("slack_embedding: solution " + z_to_string(x) +
                                        " is not a 0/1 vector");
        ZVec s(m);
        for (std::size_t r = 0; r < m; ++r) {
            Rat slack = b[r];
            for (std::size_t c = 0; c < k; ++c) slack -= A(r, c) * Rat(x[c]);
            if (slack != 0 && slack != 1) {
                std::ostringstream os;
                os << "slack_embedding: slack hypothesis violated at x = " << z_to_string(x)
                   << ", row " << r << ": slack = " << rat_to_string(slack);
                throw std::domain_error(os.str());
            }
            s[r] = num(slack);
        }
        ZVec e;
        e.reserve(2 * k + 2 * m);
        for (const Int& xi : x) e.push_back(xi);
        for (const Int& xi : x) e.push_back(1 - xi);
        for (const Int& si : s) e.push_back(si);
        for (const Int& si : s) e.push_back(1 - si);
        Int ones = 0;
        for (const Int& v : e) ones += v;
        if (ones != g.alpha_sq)
            throw std::logic_error("slack_embedding: embedded point has the wrong weight");
        g.Xprime.push_back(std::move(e));
    }
    std::sort(g.Xprime.begin(), g.Xprime.end());
    g.h = g.Xprime.front();

    // The ambient affine subspace: A x + s = b, x + x' = 1, s + s' = 1.
    const std::size_t kp = 2 * k + 2 * m;
    QMat EH(m + k + m, kp);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < k; ++c) EH(r, c) = A(r, c);
        EH(r, 2 * k + r) = 1;
    }
    for (std::size_t i = 0; i < k; ++i) {
        EH(m + i, i) = 1;
        EH(m + i, k + i) = 1;
    }
    for (std::size_t i = 0; i < m; ++i) {
        EH(m + k + i, 2 * k + i) = 1;
        EH(m + k + i, 2 * k + m + i) = 1;
    }
    std::vector<QVec> dir = q_nullspace(EH);
    g.direction_basis = QMat(dir.size(), kp);
    for (std::size_t i = 0; i < dir.size(); ++i)
        for (std::size_t j = 0; j < kp; ++j) g.direction_basis(i, j) = dir[i][j];
    return g;
}

EqualNormLattice equal_norm_lattice(const QMat& direction_basis, const QVec& h,
                                    const Int& alpha_sq) {
    if (alpha_sq < 1) throw std::invalid_argument("equal_norm_lattice: alpha_sq must be >= 1");
    const std::size_t n = h.size();
    if (n == 0) throw std::invalid_argument("equal_norm_lattice: empty base point");
    QMat E = subspace_equations(direction_basis, n);

    // Integer (z', t) with z' + t h in the span and <1, z'> + t alpha_sq = 0.
    QMat S(E.m + 1, n + 1);
    for (std::size_t i = 0; i < E.m; ++i) {
        Rat eh = 0;
        for (std::size_t j = 0; j < n; ++j) {
            S(i, j) = E(i, j);
            eh += E(i, j) * h[j];
        }
        S(i, n) = eh;
    }
    for (std::size_t j = 0; j < n; ++j) S(E.m, j) = 1;
    S(E.m, n) = Rat(alpha_sq);

    EqualNormLattice out;
    out.zt_basis = integer_kernel(S);
    const std::size_t r = out.zt_basis.m;
    if (r == 0) throw std::domain_error("equal_norm_lattice: inconsistent inputs (empty lattice)");

    // Gram with the t axis weighted by alpha_sq (the t unit has length alpha).
    QMat G(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Int dot = 0;
            for (std::size_t c = 0; c < n; ++c) dot += out.zt_basis(i, c) * out.zt_basis(j, c);
            dot += out.zt_basis(i, n) * out.zt_basis(j, n) * alpha_sq;
            G(i, j) = G(j, i) = Rat(dot);
        }
    std::ostringstream label;
    label << "equal-norm(alpha2=" << alpha_sq << ",rank=" << r << ")";
    out.lattice = make_lattice_gram(label.str(), G);

    // Projection of the target point p = (0, ..., 0, -1 in alpha units):
    // G c = (<m_i, p>)_i with <m_i, p> = -alpha_sq * m_i[t].
    QVec rhs(r);
    for (std::size_t i = 0; i < r; ++i) rhs[i] = Rat(Int(-out.zt_basis(i, n) * alpha_sq));
    std::optional<QVec> proj = q_solve(G, rhs);
    if (!proj) throw std::logic_error("equal_norm_lattice: singular Gram matrix");
    out.p = *proj;
    out.defect = Rat(alpha_sq) - q_dot(out.p, rhs);
    return out;
}

GadgetInstance build_gadget(const BinarySystem& system) {
    GadgetInstance g = slack_embedding(system.A, system.b, system.X);
    g.label = system.label;
    EqualNormLattice enl = equal_norm_lattice(g.direction_basis, q_from_z_vec(g.h), g.alpha_sq);
    g.lattice = std::move(enl.lattice);
    if (!g.label.empty()) g.lattice.label = g.label;
    g.zt_basis = std::move(enl.zt_basis);
    g.p = std::move(enl.p);
    g.defect = std::move(enl.defect);
    return g;
}

GadgetInstance gadget_from_raw(const QMat& direction_basis, const QVec& h,
                               const Int& alpha_sq) {
    const std::size_t n = h.size();
    if (n == 0 || n > 24)
        throw std::invalid_argument("gadget_from_raw: ambient dimension must be in [1, 24]");
    if (alpha_sq < 1) throw std::invalid_argument("gadget_from_raw: alpha_sq must be >= 1");
    ZVec hz(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (den(h[i]) != 1)
            throw std::invalid_argument("gadget_from_raw: base point must be integral");
        hz[i] = num(h[i]);
    }

    // 0/1 points of h + span: walk the integer points of the direction space
    // in Hermite form, bounding each pivot coordinate by the unit box.
    QMat E = subspace_equations(direction_basis, n);
    ZMat D = integer_kernel(E);
    HnfResult hf = hnf(D);
    std::vector<std::size_t> pivot(hf.rank);
    for (std::size_t i = 0; i < hf.rank; ++i) {
        std::size_t c = 0;
        while (c < n && hf.H(i, c) == 0) ++c;
        pivot[i] = c;
    }

    std::vector<ZVec> found;
    ZVec y = hz;
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t level,
                                                             std::size_t checked) {
        std::size_t upto = level < hf.rank ? pivot[level] : n;
        for (std::size_t c = checked; c < upto; ++c)
            if (!is_binary(y[c])) return;  // finalized coordinate out of the box
        if (level == hf.rank) {
            found.push_back(y);
            return;
        }
        const std::size_t pc = pivot[level];
        const Int piv = hf.H(level, pc);
        Int lo = -floor_div(y[pc], piv);            // ceil(-y/piv)
        Int hi = floor_div(Int(1) - y[pc], piv);
        for (Int a = lo; a <= hi; ++a) {
            if (a != 0)
                for (std::size_t c = pc; c < n; ++c) y[c] += a * hf.H(level, c);
            walk(level + 1, pc);
            if (a != 0)
                for (std::size_t c = pc; c < n; ++c) y[c] -= a * hf.H(level, c);
        }
    };
    walk(0, 0);

    if (found.empty())
        throw std::domain_error("gadget_from_raw: the affine subspace contains no 0/1 points");
    std::sort(found.begin(), found.end());
    for (const ZVec& pt : found) {
        Int ones = 0;
        for (const Int& v : pt) ones += v;
        if (ones != alpha_sq) {
            std::ostringstream os;
            os << "gadget_from_raw: equal-norm hypothesis fails: point " << z_to_string(pt)
               << " has " << ones << " ones, expected " << alpha_sq;
            throw std::domain_error(os.str());
        }
    }

    GadgetInstance g;
    g.alpha_sq = alpha_sq;
    g.direction_basis = direction_basis;
    g.Xprime = std::move(found);
    g.h = g.Xprime.front();
    g.label = "raw";
    EqualNormLattice enl = equal_norm_lattice(direction_basis, h, alpha_sq);
    g.lattice = std::move(enl.lattice);
    g.zt_basis = std::move(enl.zt_basis);
    g.p = std::move(enl.p);
    g.defect = std::move(enl.defect);
    return g;
}

GadgetReport verify_gadget(const GadgetInstance& g) {
    if (g.lattice.rank == 0) throw std::invalid_argument("verify_gadget: no lattice attached");
    if (g.Xprime.empty()) throw std::invalid_argument("verify_gadget: no embedded solutions");
    const std::size_t n = g.Xprime.front().size();
    const ZMat& M = g.zt_basis;
    if (M.m != g.lattice.rank || M.n != n + 1)
        throw std::invalid_argument("verify_gadget: basis inconsistent with the lattice");
    const Rat alpha2 = Rat(g.alpha_sq);

    GadgetReport rep;

    // (1) closest vectors: U = {0} u {(y, -1) : y in Xprime}, distance alpha^2.
    std::vector<ZVec> expected;
    expected.reserve(g.Xprime.size() + 1);
    expected.emplace_back(n + 1, Int(0));
    for (const ZVec& yv : g.Xprime) {
        ZVec u = yv;
        u.push_back(Int(-1));
        expected.push_back(std::move(u));
    }
    std::sort(expected.begin(), expected.end());

    ClosestResult cr = closest_vectors(g.lattice, g.p);
    rep.dist_sq = cr.dist2 + g.defect;
    rep.closest_count = cr.points.size();
    std::vector<ZVec> mapped;
    mapped.reserve(cr.points.size());
    for (const ZVec& z : cr.points) mapped.push_back(zt_point(M, z));
    std::sort(mapped.begin(), mapped.end());
    std::set_difference(mapped.begin(), mapped.end(), expected.begin(), expected.end(),
                        std::back_inserter(rep.unexpected_closest));
    std::set_difference(expected.begin(), expected.end(), mapped.begin(), mapped.end(),
                        std::back_inserter(rep.missing_closest));
    rep.closest_ok = rep.dist_sq == alpha2 && rep.unexpected_closest.empty() &&
                     rep.missing_closest.empty();

    // The face checks need 0 among the minimizers; otherwise they cannot run
    // and the closest-vector witnesses above already tell the story.
    Rat p2 = q_dot(q_mul_vec(g.lattice.gram, g.p), g.p);
    if (cr.dist2 != p2) return rep;

    // (2) the exposed face: vertices 2u/|u|^2 over u = (y, -1), |u|^2 = 2 alpha^2.
    Polytope face = polar_face(g.lattice, g.p);
    const std::vector<QVec>& fv = *face.v;
    rep.face_vertex_count = fv.size();
    QMat Mt = q_transpose(q_from_z(M));
    bool formable = true;
    std::vector<QVec> expected_verts;
    for (const ZVec& yv : g.Xprime) {
        QVec u(n + 1);
        for (std::size_t j = 0; j < n; ++j) u[j] = Rat(yv[j]);
        u[n] = Rat(-1);
        std::optional<ZVec> z = integer_coefficients(Mt, u);
        if (!z) {
            formable = false;  // (y, -1) is not a lattice point; check (1) has the witness
            continue;
        }
        QVec zq = q_from_z_vec(*z);
        QVec gz = q_mul_vec(g.lattice.gram, zq);
        Rat n2 = q_dot(gz, zq);
        expected_verts.push_back(q_scale(Rat(2) / n2, gz));
    }
    std::sort(expected_verts.begin(), expected_verts.end());
    expected_verts.erase(std::unique(expected_verts.begin(), expected_verts.end()),
                         expected_verts.end());
    std::set_difference(fv.begin(), fv.end(), expected_verts.begin(), expected_verts.end(),
                        std::back_inserter(rep.unexpected_face_vertices));
    std::set_difference(expected_verts.begin(), expected_verts.end(), fv.begin(), fv.end(),
                        std::back_inserter(rep.missing_face_vertices));
    rep.face_ok = formable && rep.unexpected_face_vertices.empty() &&
                  rep.missing_face_vertices.empty();

    // (3) scale the leading coordinates by alpha^2 and read the 0/1 point back.
    bool proj_ok = true;
    std::vector<ZVec> recovered;
    for (const QVec& vert : fv) {
        std::optional<QVec> zeta = q_solve(g.lattice.gram, vert);
        if (!zeta) throw std::logic_error("verify_gadget: singular Gram matrix");
        QVec u = q_mul_vec(Mt, *zeta);
        bool valid = u[n] == Rat(Int(-1), g.alpha_sq);
        ZVec w(n);
        for (std::size_t j = 0; j < n && valid; ++j) {
            Rat wj = u[j] * alpha2;
            if (wj != 0 && wj != 1) valid = false;
            else w[j] = num(wj);
        }
        if (!valid) {
            proj_ok = false;
            rep.bad_projections.push_back(vert);
            continue;
        }
        recovered.push_back(std::move(w));
    }
    std::sort(recovered.begin(), recovered.end());
    if (recovered != g.Xprime) {
        proj_ok = false;
        std::vector<ZVec> extra;
        std::set_difference(recovered.begin(), recovered.end(), g.Xprime.begin(), g.Xprime.end(),
                            std::back_inserter(extra));
        for (const ZVec& w : extra) rep.bad_projections.push_back(q_from_z_vec(w));
    }
    if (proj_ok && g.k > 0) {
        // ... and onto X after dropping everything past the first k coordinates.
        std::vector<ZVec> projected;
        projected.reserve(recovered.size());
        for (const ZVec& w : recovered) projected.emplace_back(w.begin(), w.begin() + g.k);
        std::sort(projected.begin(), projected.end());
        if (projected.size() != g.X.size() || !std::equal(projected.begin(), projected.end(),
                                                          g.X.begin()))
            proj_ok = false;
    }
    rep.projection_ok = proj_ok;
    return rep;
}

}  // namespace vxc
