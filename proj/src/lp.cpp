#include "vxc/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace vxc {

void HDesc::add_ineq(const QVec& a, const Rat& rhs) {
    if (a.size() != dim) throw std::invalid_argument("HDesc::add_ineq: dimension mismatch");
    QMat A2(A.m + 1, dim);
    A2.a = A.a;
    A2.a.insert(A2.a.end(), a.begin(), a.end());
    A = std::move(A2);
    b.push_back(rhs);
}

void HDesc::add_eq(const QVec& e, const Rat& rhs) {
    if (e.size() != dim) throw std::invalid_argument("HDesc::add_eq: dimension mismatch");
    QMat E2(E.m + 1, dim);
    E2.a = E.a;
    E2.a.insert(E2.a.end(), e.begin(), e.end());
    E = std::move(E2);
    f.push_back(rhs);
}

namespace {

// Gauss-Jordan elimination of the equation block E x = f with multiplier
// tracking: R = T*E is in reduced row echelon form, R x = T*f.  Pivot
// variables are expressed in the free ones; an inconsistent system yields the
// multiplier row directly as a certificate.
struct EqElim {
    bool consistent = true;
    QVec cert_z;                    // only when inconsistent: z^T E = 0, z^T f = -1
    std::vector<std::size_t> pivot_cols, free_cols;
    QMat R;                         // rref of E (nonzero rows only)
    QVec g;                         // transformed rhs for those rows
    QMat T;                         // R = T_rows * E (rows matching R)
};

EqElim eliminate_equations(const QMat& E, const QVec& f) {
    EqElim out;
    const std::size_t m = E.m, n = E.n;
    QMat W(m, n + 1 + m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) W(i, j) = E(i, j);
        W(i, n) = f[i];
        W(i, n + 1 + i) = 1;
    }
    // rref restricted to the first n columns.
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t sel = m;
        for (std::size_t i = r; i < m; ++i)
            if (W(i, c) != 0) { sel = i; break; }
        if (sel == m) continue;
        if (sel != r)
            for (std::size_t j = 0; j < W.n; ++j) std::swap(W(sel, j), W(r, j));
        Rat p = W(r, c);
        for (std::size_t j = 0; j < W.n; ++j) W(r, j) /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || W(i, c) == 0) continue;
            Rat q = W(i, c);
            for (std::size_t j = 0; j < W.n; ++j) W(i, j) -= q * W(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    // Rows r.. have zero coefficients; nonzero rhs means inconsistency.
    for (std::size_t i = r; i < m; ++i) {
        if (W(i, n) != 0) {
            out.consistent = false;
            Rat s = -W(i, n);  // scale multipliers so z^T f = -1
            out.cert_z.assign(m, Rat(0));
            for (std::size_t k = 0; k < m; ++k) out.cert_z[k] = W(i, n + 1 + k) / s;
            return out;
        }
    }
    out.pivot_cols = piv;
    std::vector<char> is_piv(n, 0);
    for (std::size_t c : piv) is_piv[c] = 1;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_piv[c]) out.free_cols.push_back(c);
    out.R = QMat(r, n);
    out.g.assign(r, Rat(0));
    out.T = QMat(r, m);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.R(i, j) = W(i, j);
        out.g[i] = W(i, n);
        for (std::size_t k = 0; k < m; ++k) out.T(i, k) = W(i, n + 1 + k);
    }
    return out;
}

// Two-phase primal simplex on  max c^T v, W v = d, v >= 0  where the last
// n_art columns of W are phase-1 artificials forming part of the initial
// basis.  Dantzig pricing; after 64 pivots without objective progress we
// switch to Bland's rule, which cannot cycle.
struct Tableau {
    std::size_t rows = 0, cols = 0;  // cols excludes the rhs
    std::vector<QVec> t;             // rows x (cols+1); last entry is rhs
    std::vector<std::size_t> basic;  // basic column per row
    QVec obj;                        // current phase objective row (reduced costs), size cols+1
    std::size_t art_begin = 0;       // first artificial column (== cols if none)

    Rat& rhs(std::size_t i) { return t[i][cols]; }

    void pivot(std::size_t pr, std::size_t pc) {
        Rat p = t[pr][pc];
        for (auto& v : t[pr]) v /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pr || t[i][pc] == 0) continue;
            Rat q = t[i][pc];
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= q * t[pr][j];
        }
        if (obj[pc] != 0) {
            Rat q = obj[pc];
            for (std::size_t j = 0; j <= cols; ++j) obj[j] -= q * t[pr][j];
        }
        basic[pr] = pc;
    }

    // Returns false when the phase objective is unbounded (only possible in
    // phase 2); fills unb_col with the offending column in that case.
    bool optimize(std::size_t limit_cols, std::size_t* unb_col) {
        std::size_t stall = 0;
        bool bland = false;
        while (true) {
            std::size_t enter = limit_cols;
            if (!bland) {
                Rat best(0);
                for (std::size_t j = 0; j < limit_cols; ++j)
                    if (obj[j] > best) { best = obj[j]; enter = j; }
            } else {
                for (std::size_t j = 0; j < limit_cols; ++j)
                    if (obj[j] > 0) { enter = j; break; }
            }
            if (enter == limit_cols) return true;  // optimal
            std::size_t leave = rows;
            Rat bestRatio(0);
            for (std::size_t i = 0; i < rows; ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][cols] / t[i][enter];
                if (leave == rows || ratio < bestRatio ||
                    (ratio == bestRatio && basic[i] < basic[leave])) {
                    leave = i;
                    bestRatio = ratio;
                }
            }
            if (leave == rows) {
                if (unb_col) *unb_col = enter;
                return false;
            }
            Rat before = obj[cols];
            pivot(leave, enter);
            if (obj[cols] == before) {
                if (++stall >= 64) bland = true;
            } else {
                stall = 0;
            }
        }
    }
};

struct StdFormResult {
    LpStatus status = LpStatus::Infeasible;
    QVec v;    // solution or ray in standard variables (size = structural count)
    Rat value; // c^T v at the optimum
};

// max c^T u over { u free : M u <= d } via the split u = u+ - u-.
// On Unbounded, v holds a ray r with M r <= 0 and c^T r > 0.
StdFormResult simplex_ineq(const QMat& M, const QVec& d, const QVec& c) {
    const std::size_t m = M.m, q = M.n;
    const std::size_t n_struct = 2 * q, n_slack = m;
    std::vector<std::size_t> neg_rows;
    for (std::size_t i = 0; i < m; ++i)
        if (d[i] < 0) neg_rows.push_back(i);
    const std::size_t n_art = neg_rows.size();

    Tableau T;
    T.rows = m;
    T.cols = n_struct + n_slack + n_art;
    T.art_begin = n_struct + n_slack;
    T.t.assign(m, QVec(T.cols + 1, Rat(0)));
    T.basic.assign(m, 0);
    std::vector<std::size_t> art_of_row(m, T.cols);
    for (std::size_t k = 0; k < n_art; ++k) art_of_row[neg_rows[k]] = T.art_begin + k;
    for (std::size_t i = 0; i < m; ++i) {
        bool neg = d[i] < 0;
        Rat s = neg ? Rat(-1) : Rat(1);
        for (std::size_t j = 0; j < q; ++j) {
            T.t[i][j] = s * M(i, j);
            T.t[i][q + j] = -s * M(i, j);
        }
        T.t[i][n_struct + i] = s;
        T.t[i][T.cols] = s * d[i];
        if (neg) {
            T.t[i][art_of_row[i]] = 1;
            T.basic[i] = art_of_row[i];
        } else {
            T.basic[i] = n_struct + i;
        }
    }

    StdFormResult out;
    if (n_art > 0) {
        // Phase 1: maximize -(sum of artificials); start from reduced costs.
        T.obj.assign(T.cols + 1, Rat(0));
        for (std::size_t k = 0; k < n_art; ++k) T.obj[T.art_begin + k] = -1;
        for (std::size_t i : neg_rows)
            for (std::size_t j = 0; j <= T.cols; ++j) T.obj[j] += T.t[i][j];
        T.optimize(T.art_begin, nullptr);  // artificials never re-enter
        if (T.obj[T.cols] != 0) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Drive any basic artificials (at value 0) out of the basis.
        for (std::size_t i = 0; i < m; ++i) {
            if (T.basic[i] < T.art_begin) continue;
            std::size_t pc = T.art_begin;
            for (std::size_t j = 0; j < T.art_begin; ++j)
                if (T.t[i][j] != 0) { pc = j; break; }
            if (pc < T.art_begin) T.pivot(i, pc);
            // else: redundant row; harmless to leave (rhs is 0).
        }
    }

    // Phase 2 objective: c on u+, -c on u-; reduce against the basis.
    T.obj.assign(T.cols + 1, Rat(0));
    for (std::size_t j = 0; j < q; ++j) {
        T.obj[j] = c[j];
        T.obj[q + j] = -c[j];
    }
    for (std::size_t k = 0; k < n_art; ++k) T.obj[T.art_begin + k] = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t bj = T.basic[i];
        if (bj >= T.art_begin || T.obj[bj] == 0) continue;
        Rat qv = T.obj[bj];
        for (std::size_t j = 0; j <= T.cols; ++j) T.obj[j] -= qv * T.t[i][j];
    }
    std::size_t unb_col = 0;
    bool opt = T.optimize(T.art_begin, &unb_col);
    out.v.assign(n_struct, Rat(0));
    if (!opt) {
        out.status = LpStatus::Unbounded;
        QVec ray(T.cols, Rat(0));
        ray[unb_col] = 1;
        for (std::size_t i = 0; i < m; ++i)
            if (T.basic[i] < T.cols) ray[T.basic[i]] = -T.t[i][unb_col];
        for (std::size_t j = 0; j < n_struct; ++j) out.v[j] = ray[j];
        return out;
    }
    out.status = LpStatus::Optimal;
    for (std::size_t i = 0; i < m; ++i)
        if (T.basic[i] < n_struct) out.v[T.basic[i]] = T.t[i][T.cols];
    return out;
}

// Feasibility of { y >= 0 : N y = e } by pure phase 1; used to produce Farkas
// certificates for the reduced inequality system.
bool nonneg_solve(const QMat& N, const QVec& e, QVec& y) {
    const std::size_t m = N.m, n = N.n;
    Tableau T;
    T.rows = m;
    T.cols = n + m;
    T.art_begin = n;
    T.t.assign(m, QVec(T.cols + 1, Rat(0)));
    T.basic.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        Rat s = e[i] < 0 ? Rat(-1) : Rat(1);
        for (std::size_t j = 0; j < n; ++j) T.t[i][j] = s * N(i, j);
        T.t[i][n + i] = 1;
        T.t[i][T.cols] = s * e[i];
        T.basic[i] = n + i;
    }
    T.obj.assign(T.cols + 1, Rat(0));
    for (std::size_t i = 0; i < m; ++i) T.obj[n + i] = -1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= T.cols; ++j) T.obj[j] += T.t[i][j];
    T.optimize(T.art_begin, nullptr);
    if (T.obj[T.cols] != 0) return false;
    y.assign(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (T.basic[i] < n) y[T.basic[i]] = T.t[i][T.cols];
    return true;
}

}  // namespace

LpResult lp_maximize(const HDesc& P, const QVec& c) {
    const std::size_t n = P.dim;
    if (c.size() != n) throw std::invalid_argument("lp_maximize: objective dimension mismatch");
    if ((P.A.m > 0 && P.A.n != n) || (P.E.m > 0 && P.E.n != n) || P.b.size() != P.A.m ||
        P.f.size() != P.E.m)
        throw std::invalid_argument("lp_maximize: malformed H-description");

    LpResult res;
    EqElim eq = eliminate_equations(P.E.m > 0 ? P.E : QMat(0, n), P.f);
    if (!eq.consistent) {
        res.status = LpStatus::Infeasible;
        res.farkas_y.assign(P.A.m, Rat(0));
        res.farkas_z = eq.cert_z;
        return res;
    }
    const auto& piv = eq.pivot_cols;
    const auto& fre = eq.free_cols;
    const std::size_t q = fre.size();

    // Reduced system: substituting x_piv = g - Npart x_free into A x <= b.
    QMat Ah(P.A.m, q);
    QVec bh(P.A.m, Rat(0));
    for (std::size_t i = 0; i < P.A.m; ++i) {
        Rat off(0);
        for (std::size_t k = 0; k < piv.size(); ++k) off += P.A(i, piv[k]) * eq.g[k];
        bh[i] = P.b[i] - off;
        for (std::size_t j = 0; j < q; ++j) {
            Rat v = P.A(i, fre[j]);
            for (std::size_t k = 0; k < piv.size(); ++k)
                v -= P.A(i, piv[k]) * eq.R(k, fre[j]);
            Ah(i, j) = v;
        }
    }
    QVec ch(q, Rat(0));
    for (std::size_t j = 0; j < q; ++j) {
        Rat v = c[fre[j]];
        for (std::size_t k = 0; k < piv.size(); ++k) v -= c[piv[k]] * eq.R(k, fre[j]);
        ch[j] = v;
    }

    auto lift_point = [&](const QVec& u) {
        QVec x(n, Rat(0));
        for (std::size_t j = 0; j < q; ++j) x[fre[j]] = u[j];
        for (std::size_t k = 0; k < piv.size(); ++k) {
            Rat v = eq.g[k];
            for (std::size_t j = 0; j < q; ++j) v -= eq.R(k, fre[j]) * u[j];
            x[piv[k]] = v;
        }
        return x;
    };
    auto lift_ray = [&](const QVec& u) {
        QVec x(n, Rat(0));
        for (std::size_t j = 0; j < q; ++j) x[fre[j]] = u[j];
        for (std::size_t k = 0; k < piv.size(); ++k) {
            Rat v(0);
            for (std::size_t j = 0; j < q; ++j) v -= eq.R(k, fre[j]) * u[j];
            x[piv[k]] = v;
        }
        return x;
    };

    StdFormResult sf = simplex_ineq(Ah, bh, ch);
    if (sf.status == LpStatus::Infeasible) {
        // Farkas: y >= 0, y^T Ah = 0, y^T bh = -1, then fold the equation
        // multipliers back through the elimination.
        QMat N(q + 1, P.A.m);
        QVec e(q + 1, Rat(0));
        for (std::size_t j = 0; j < q; ++j)
            for (std::size_t i = 0; i < P.A.m; ++i) N(j, i) = Ah(i, j);
        for (std::size_t i = 0; i < P.A.m; ++i) N(q, i) = bh[i];
        e[q] = -1;
        QVec y;
        if (!nonneg_solve(N, e, y))
            throw std::logic_error("lp_maximize: infeasible LP without certificate");
        res.status = LpStatus::Infeasible;
        res.farkas_y = y;
        // mu_k = -(y^T A)_{piv_k}; z = T^T mu.
        QVec mu(piv.size(), Rat(0));
        for (std::size_t k = 0; k < piv.size(); ++k) {
            Rat v(0);
            for (std::size_t i = 0; i < P.A.m; ++i) v += y[i] * P.A(i, piv[k]);
            mu[k] = -v;
        }
        res.farkas_z.assign(P.E.m, Rat(0));
        for (std::size_t r = 0; r < P.E.m; ++r) {
            Rat v(0);
            for (std::size_t k = 0; k < piv.size(); ++k) v += mu[k] * eq.T(k, r);
            res.farkas_z[r] = v;
        }
        return res;
    }
    if (sf.status == LpStatus::Unbounded) {
        QVec u(q, Rat(0));
        for (std::size_t j = 0; j < q; ++j) u[j] = sf.v[j] - sf.v[q + j];
        res.status = LpStatus::Unbounded;
        res.x = lift_ray(u);
        return res;
    }
    QVec u(q, Rat(0));
    for (std::size_t j = 0; j < q; ++j) u[j] = sf.v[j] - sf.v[q + j];
    res.status = LpStatus::Optimal;
    res.x = lift_point(u);
    res.value = 0;
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

FeasResult lp_feasible(const HDesc& P) {
    QVec zero(P.dim, Rat(0));
    LpResult r = lp_maximize(P, zero);
    FeasResult out;
    if (r.status == LpStatus::Optimal) {
        out.feasible = true;
        out.x = r.x;
    } else {
        out.feasible = false;
        out.farkas_y = r.farkas_y;
        out.farkas_z = r.farkas_z;
    }
    return out;
}

}  // namespace vxc
