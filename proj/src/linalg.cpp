#include "vxc/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace vxc {

Int isqrt_floor(const Rat& q) {
    if (q < 0) throw std::domain_error("isqrt_floor: negative argument");
    Int t = floor_rat(q);
    return boost::multiprecision::sqrt(t);
}

Int isqrt_ceil(const Rat& q) {
    if (q < 0) throw std::domain_error("isqrt_ceil: negative argument");
    Int f = isqrt_floor(q);
    return (Rat(f) * f == q) ? f : f + 1;
}

Int floor_add_sqrt(const Rat& x, const Rat& q) {
    if (q < 0) throw std::domain_error("floor_add_sqrt: negative radicand");
    Int base = floor_rat(x);
    Int r = isqrt_floor(q);
    // x + sqrt(q) lies in [base + r, base + r + 2); test the upper candidate.
    Int hi = base + r + 1;
    Rat diff = Rat(hi) - x;
    if (diff <= 0 || diff * diff <= q) return hi;
    return base + r;
}

Int ceil_sub_sqrt(const Rat& x, const Rat& q) { return -floor_add_sqrt(-x, q); }

std::string rat_to_string(const Rat& q) {
    std::ostringstream os;
    os << num(q);
    if (den(q) != 1) os << "/" << den(q);
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    auto bad = [&]() { throw std::invalid_argument("not a rational: '" + s + "'"); };
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) bad();
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(t));
        Int p(t.substr(0, slash)), q(t.substr(slash + 1));
        if (q == 0) bad();
        return Rat(p, q);   // two-argument ctor canonicalizes
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat();   // unreachable
}

QMat q_identity(std::size_t n) {
    QMat I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

QMat q_mul(const QMat& A, const QMat& B) {
    if (A.n != B.m) throw std::invalid_argument("q_mul: shape mismatch");
    QMat C(A.m, B.n);
    for (std::size_t i = 0; i < A.m; ++i)
        for (std::size_t k = 0; k < A.n; ++k) {
            const Rat& aik = A(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < B.n; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

QVec q_mul_vec(const QMat& A, const QVec& x) {
    if (A.n != x.size()) throw std::invalid_argument("q_mul_vec: shape mismatch");
    QVec y(A.m);
    for (std::size_t i = 0; i < A.m; ++i)
        for (std::size_t j = 0; j < A.n; ++j)
            if (A(i, j) != 0) y[i] += A(i, j) * x[j];
    return y;
}

QMat q_transpose(const QMat& A) {
    QMat T(A.n, A.m);
    for (std::size_t i = 0; i < A.m; ++i)
        for (std::size_t j = 0; j < A.n; ++j) T(j, i) = A(i, j);
    return T;
}

QMat q_from_z(const ZMat& A) {
    QMat B(A.m, A.n);
    for (std::size_t i = 0; i < A.a.size(); ++i) B.a[i] = Rat(A.a[i]);
    return B;
}

QVec q_from_z_vec(const ZVec& v) {
    QVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = Rat(v[i]);
    return w;
}

Rat q_dot(const QVec& x, const QVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("q_dot: size mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

QVec q_add(const QVec& x, const QVec& y) {
    QVec z(x);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i];
    return z;
}

QVec q_sub(const QVec& x, const QVec& y) {
    QVec z(x);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
    return z;
}

QVec q_scale(const Rat& c, const QVec& x) {
    QVec z(x);
    for (auto& e : z) e *= c;
    return z;
}

std::vector<std::size_t> rref(QMat& A) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.n && r < A.m; ++c) {
        std::size_t p = r;
        while (p < A.m && A(p, c) == 0) ++p;
        if (p == A.m) continue;
        for (std::size_t j = 0; j < A.n; ++j) std::swap(A(r, j), A(p, j));
        Rat inv = Rat(1) / A(r, c);
        for (std::size_t j = c; j < A.n; ++j) A(r, j) *= inv;
        for (std::size_t i = 0; i < A.m; ++i) {
            if (i == r || A(i, c) == 0) continue;
            Rat f = A(i, c);
            for (std::size_t j = c; j < A.n; ++j) A(i, j) -= f * A(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t q_rank(const QMat& A) {
    QMat B = A;
    return rref(B).size();
}

Rat q_det(const QMat& A) {
    if (A.m != A.n) throw std::invalid_argument("q_det: not square");
    QMat B = A;
    Rat det = 1;
    for (std::size_t c = 0; c < B.n; ++c) {
        std::size_t p = c;
        while (p < B.m && B(p, c) == 0) ++p;
        if (p == B.m) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < B.n; ++j) std::swap(B(c, j), B(p, j));
            det = -det;
        }
        det *= B(c, c);
        Rat inv = Rat(1) / B(c, c);
        for (std::size_t i = c + 1; i < B.m; ++i) {
            if (B(i, c) == 0) continue;
            Rat f = B(i, c) * inv;
            for (std::size_t j = c; j < B.n; ++j) B(i, j) -= f * B(c, j);
        }
    }
    return det;
}

QMat q_inverse(const QMat& A) {
    if (A.m != A.n) throw std::invalid_argument("q_inverse: not square");
    QMat W(A.m, 2 * A.n);
    for (std::size_t i = 0; i < A.m; ++i) {
        for (std::size_t j = 0; j < A.n; ++j) W(i, j) = A(i, j);
        W(i, A.n + i) = 1;
    }
    auto piv = rref(W);
    if (piv.size() != A.n || piv.back() >= A.n)
        throw std::domain_error("q_inverse: singular matrix");
    QMat R(A.n, A.n);
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t j = 0; j < A.n; ++j) R(i, j) = W(i, A.n + j);
    return R;
}

std::optional<QVec> q_solve(const QMat& A, const QVec& b) {
    QMat W(A.m, A.n + 1);
    for (std::size_t i = 0; i < A.m; ++i) {
        for (std::size_t j = 0; j < A.n; ++j) W(i, j) = A(i, j);
        W(i, A.n) = b[i];
    }
    auto piv = rref(W);
    if (!piv.empty() && piv.back() == A.n) return std::nullopt;   // 0 = 1 row
    QVec x(A.n, Rat(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = W(r, A.n);
    return x;
}

std::vector<QVec> q_nullspace(const QMat& A) {
    QMat W = A;
    auto piv = rref(W);
    std::vector<bool> is_pivot(A.n, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t fc = 0; fc < A.n; ++fc) {
        if (is_pivot[fc]) continue;
        QVec v(A.n, Rat(0));
        v[fc] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -W(r, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

void add_row_multiple(ZMat& M, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < M.n; ++j) M(dst, j) += f * M(src, j);
}

void swap_rows(ZMat& M, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < M.n; ++c) std::swap(M(i, c), M(j, c));
}

void negate_row(ZMat& M, std::size_t i) {
    for (std::size_t c = 0; c < M.n; ++c) M(i, c) = -M(i, c);
}

}  // namespace

HnfResult hnf(const ZMat& M) {
    HnfResult res;
    res.H = M;
    res.U = ZMat(M.m, M.m);
    for (std::size_t i = 0; i < M.m; ++i) res.U(i, i) = 1;
    ZMat& H = res.H;
    ZMat& U = res.U;

    std::size_t r = 0;
    for (std::size_t c = 0; c < M.n && r < M.m; ++c) {
        // Reduce column c below row r to a single nonzero by repeated
        // smallest-pivot elimination (Euclid on the column entries).
        while (true) {
            std::size_t best = M.m;
            for (std::size_t i = r; i < M.m; ++i) {
                if (H(i, c) == 0) continue;
                if (best == M.m ||
                    boost::multiprecision::abs(H(i, c)) < boost::multiprecision::abs(H(best, c)))
                    best = i;
            }
            if (best == M.m) break;   // column empty below r
            swap_rows(H, r, best);
            swap_rows(U, r, best);
            bool again = false;
            for (std::size_t i = r + 1; i < M.m; ++i) {
                if (H(i, c) == 0) continue;
                Int q = floor_div(H(i, c), H(r, c));
                add_row_multiple(H, i, r, -q);
                add_row_multiple(U, i, r, -q);
                if (H(i, c) != 0) again = true;
            }
            if (!again) break;
        }
        if (H(r, c) == 0) continue;
        if (H(r, c) < 0) {
            negate_row(H, r);
            negate_row(U, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(H(i, c), H(r, c));
            add_row_multiple(H, i, r, -q);
            add_row_multiple(U, i, r, -q);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

ZMat integer_kernel(const QMat& M) {
    const std::size_t n = M.n;
    // Row scaling keeps the kernel; clear denominators per row.
    ZMat A(M.m, n);
    for (std::size_t i = 0; i < M.m; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < n; ++j) l = lcm_int(l, den(M(i, j)));
        for (std::size_t j = 0; j < n; ++j) A(i, j) = num(M(i, j) * l);
    }
    // Left kernel of A^T: rows of U matching zero rows of H = U A^T.
    ZMat B(n, M.m);
    for (std::size_t i = 0; i < M.m; ++i)
        for (std::size_t j = 0; j < n; ++j) B(j, i) = A(i, j);
    HnfResult h = hnf(B);
    std::size_t k = n - h.rank;
    ZMat K(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) K(i, j) = h.U(h.rank + i, j);
    if (k == 0) return K;
    // Canonical basis: HNF of the stacked kernel rows.
    HnfResult hk = hnf(K);
    ZMat R(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) R(i, j) = hk.H(i, j);
    return R;
}

LdltResult ldlt(const QMat& G) {
    if (G.m != G.n) throw std::domain_error("ldlt: not square");
    const std::size_t n = G.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (G(i, j) != G(j, i)) throw std::domain_error("ldlt: not symmetric");
    LdltResult r;
    r.L = q_identity(n);
    r.D.assign(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        Rat d = G(j, j);
        for (std::size_t t = 0; t < j; ++t) d -= r.L(j, t) * r.L(j, t) * r.D[t];
        if (d <= 0) throw std::domain_error("ldlt: not positive definite");
        r.D[j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rat v = G(i, j);
            for (std::size_t t = 0; t < j; ++t) v -= r.L(i, t) * r.L(j, t) * r.D[t];
            r.L(i, j) = v / d;
        }
    }
    return r;
}

ZVec primitive_integer_row(const QVec& v) {
    Int l = 1;
    for (const auto& e : v) l = lcm_int(l, den(e));
    ZVec w(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = num(v[i] * l);
        g = gcd_int(g, w[i]);
    }
    if (g > 1)
        for (auto& e : w) e /= g;
    return w;
}

ZVec z_negate(const ZVec& v) {
    ZVec w(v);
    for (auto& e : w) e = -e;
    return w;
}

}  // namespace vxc
