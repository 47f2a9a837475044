#pragma once

#include "vxc/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace vxc {

struct QMat {
    std::size_t m = 0, n = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : m(rows), n(cols), a(rows * cols) {}

    Rat& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    QVec row(std::size_t i) const { return QVec(a.begin() + i * n, a.begin() + (i + 1) * n); }
    QVec col(std::size_t j) const {
        QVec c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = (*this)(i, j);
        return c;
    }
    bool operator==(const QMat& o) const { return m == o.m && n == o.n && a == o.a; }
};

struct ZMat {
    std::size_t m = 0, n = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(std::size_t rows, std::size_t cols) : m(rows), n(cols), a(rows * cols) {}

    Int& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    ZVec row(std::size_t i) const { return ZVec(a.begin() + i * n, a.begin() + (i + 1) * n); }
    bool operator==(const ZMat& o) const { return m == o.m && n == o.n && a == o.a; }
};

QMat q_identity(std::size_t n);
QMat q_mul(const QMat& A, const QMat& B);
QVec q_mul_vec(const QMat& A, const QVec& x);
QMat q_transpose(const QMat& A);
QMat q_from_z(const ZMat& A);
QVec q_from_z_vec(const ZVec& v);
Rat q_dot(const QVec& x, const QVec& y);
QVec q_add(const QVec& x, const QVec& y);
QVec q_sub(const QVec& x, const QVec& y);
QVec q_scale(const Rat& c, const QVec& x);

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(QMat& A);
std::size_t q_rank(const QMat& A);
Rat q_det(const QMat& A);
/// Gauss-Jordan inverse; throws std::domain_error if singular.
QMat q_inverse(const QMat& A);
/// One solution of A x = b, or nullopt if inconsistent.
std::optional<QVec> q_solve(const QMat& A, const QVec& b);
/// Basis of {x : A x = 0}, deterministic (one vector per rref free column).
std::vector<QVec> q_nullspace(const QMat& A);

struct HnfResult {
    ZMat H;          // row-style Hermite normal form, zero rows at the bottom
    ZMat U;          // unimodular, U * M = H
    std::size_t rank = 0;
};

/// Row HNF via integer row operations (no modular tricks); |det U| = 1.
/// Pivots positive, entries above a pivot reduced into [0, pivot).
HnfResult hnf(const ZMat& M);

/// Saturated basis of {z in Z^n : M z = 0} for rational M with n columns.
/// Rows of the result form the basis, canonicalized by a final HNF pass.
ZMat integer_kernel(const QMat& M);

struct LdltResult {
    QMat L;   // unit lower triangular
    QVec D;   // positive diagonal
};

/// Exact LDL^T of a symmetric positive definite rational matrix.
/// Throws std::domain_error when G is not symmetric or not positive definite.
LdltResult ldlt(const QMat& G);

ZVec primitive_integer_row(const QVec& v);   // clears denominators, divides gcd (sign kept)
ZVec z_negate(const ZVec& v);

}  // namespace vxc
