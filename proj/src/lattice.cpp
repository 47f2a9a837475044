#include "vxc/lattice.hpp"

#include <algorithm>

namespace vxc {

namespace {

QMat gram_of_rows(const QMat& B) {
    QMat G(B.m, B.m);
    for (std::size_t i = 0; i < B.m; ++i)
        for (std::size_t j = i; j < B.m; ++j) {
            Rat s = 0;
            for (std::size_t t = 0; t < B.n; ++t) s += B(i, t) * B(j, t);
            G(i, j) = s;
            G(j, i) = s;
        }
    return G;
}

}  // namespace

Lattice make_lattice(const std::string& label, const QMat& basis_rows) {
    if (basis_rows.m == 0) throw std::invalid_argument("make_lattice: empty basis");
    if (q_rank(basis_rows) != basis_rows.m)
        throw std::invalid_argument("make_lattice: dependent basis vectors");
    Lattice L;
    L.label = label;
    L.rank = basis_rows.m;
    L.basis = basis_rows;
    L.gram = gram_of_rows(basis_rows);
    L.has_embedding = true;
    return L;
}

Lattice make_lattice_gram(const std::string& label, const QMat& gram) {
    ldlt(gram);   // validates symmetric positive definite
    Lattice L;
    L.label = label;
    L.rank = gram.m;
    L.gram = gram;
    L.has_embedding = false;
    return L;
}

Lattice lattice_from_generators(const std::string& label, const QMat& generator_rows) {
    Int l = 1;
    for (const auto& e : generator_rows.a) l = lcm_int(l, den(e));
    ZMat A(generator_rows.m, generator_rows.n);
    for (std::size_t i = 0; i < A.a.size(); ++i) A.a[i] = num(generator_rows.a[i] * l);
    HnfResult h = hnf(A);
    if (h.rank == 0) throw std::invalid_argument("lattice_from_generators: zero generators");
    QMat B(h.rank, generator_rows.n);
    for (std::size_t i = 0; i < h.rank; ++i)
        for (std::size_t j = 0; j < B.n; ++j) B(i, j) = Rat(h.H(i, j), l);
    return make_lattice(label, B);
}

Lattice root_lattice(RootFamily family, std::size_t d) {
    switch (family) {
        case RootFamily::Zd: {
            if (d < 1) throw std::invalid_argument("Z_d needs d >= 1");
            return make_lattice("Z" + std::to_string(d), q_identity(d));
        }
        case RootFamily::A: {
            if (d < 1) throw std::invalid_argument("A_d needs d >= 1");
            QMat B(d, d + 1);
            for (std::size_t i = 0; i < d; ++i) {
                B(i, i) = 1;
                B(i, i + 1) = -1;
            }
            return make_lattice("A" + std::to_string(d), B);
        }
        case RootFamily::D: {
            if (d < 2) throw std::invalid_argument("D_d needs d >= 2");
            QMat G(d + 1, d);
            G(0, 0) = 1;
            G(0, 1) = 1;
            for (std::size_t i = 0; i < d - 1; ++i) {
                G(i + 1, i) = 1;
                G(i + 1, i + 1) = -1;
            }
            Lattice L = lattice_from_generators("D" + std::to_string(d), G);
            return L;
        }
        case RootFamily::E8:
        case RootFamily::E7:
        case RootFamily::E6: {
            // E8 from the D_8 generators plus the all-halves glue vector.
            QMat G(10, 8);
            G(0, 0) = 1;
            G(0, 1) = 1;
            for (std::size_t i = 0; i < 7; ++i) {
                G(i + 1, i) = 1;
                G(i + 1, i + 1) = -1;
            }
            for (std::size_t j = 0; j < 8; ++j) G(9, j) = Rat(1, 2);
            Lattice e8 = lattice_from_generators("E8", G);
            if (family == RootFamily::E8) {
                if (d != 8) throw std::invalid_argument("E8 is 8-dimensional");
                return e8;
            }
            // Cut by <x, e7+e8> = 0 (E7) and additionally <x, e6+e8> = 0 (E6),
            // expressed on basis coefficients and solved over the integers.
            std::size_t cuts = (family == RootFamily::E7) ? 1 : 2;
            if (d != 8 - cuts)
                throw std::invalid_argument("E-series has fixed dimension");
            QMat C(cuts, 8);
            for (std::size_t r = 0; r < cuts; ++r) {
                std::size_t axis = (r == 0) ? 6 : 5;   // e7, then e6 (0-based)
                for (std::size_t i = 0; i < 8; ++i)
                    C(r, i) = e8.basis(i, axis) + e8.basis(i, 7);
            }
            ZMat K = integer_kernel(C);
            QMat B = q_mul(q_from_z(K), e8.basis);
            return make_lattice(family == RootFamily::E7 ? "E7" : "E6", B);
        }
        case RootFamily::Astar: {
            if (d < 1) throw std::invalid_argument("A*_d needs d >= 1");
            QMat G(d + 1, d + 1);
            for (std::size_t i = 0; i < d; ++i) {
                G(i, i) = 1;
                G(i, i + 1) = -1;
            }
            for (std::size_t j = 0; j < d; ++j) G(d, j) = Rat(1, Int(d + 1));
            G(d, d) = Rat(-Int(d), Int(d + 1));
            return lattice_from_generators("Astar" + std::to_string(d), G);
        }
        case RootFamily::Dstar_scaled: {
            if (d < 2) throw std::invalid_argument("Dstar_d needs d >= 2");
            QMat G(d + 1, d);
            for (std::size_t i = 0; i < d; ++i) G(i, i) = 2;
            for (std::size_t j = 0; j < d; ++j) G(d, j) = 1;
            return lattice_from_generators("Dstar" + std::to_string(d), G);
        }
    }
    throw std::invalid_argument("unknown family");
}

Lattice congruence_lattice(std::size_t d, const Int& a) {
    if (d < 1 || a < 1) throw std::invalid_argument("congruence_lattice: d >= 1, a >= 1");
    QMat G(d + 1, d);
    for (std::size_t i = 0; i < d; ++i) G(i, i) = Rat(a);
    for (std::size_t j = 0; j < d; ++j) G(d, j) = 1;
    std::string label = "cong_d" + std::to_string(d) + "_a" + a.str();
    return lattice_from_generators(label, G);
}

Lattice dual_lattice(const Lattice& L) {
    Lattice D;
    D.label = L.label + "^*";
    D.rank = L.rank;
    D.gram = q_inverse(L.gram);
    if (L.has_embedding) {
        D.basis = q_mul(D.gram, L.basis);
        D.has_embedding = true;
    }
    return D;
}

Lattice product_lattice(const Lattice& L1, const Lattice& L2) {
    Lattice P;
    P.label = L1.label + "x" + L2.label;
    P.rank = L1.rank + L2.rank;
    P.gram = QMat(P.rank, P.rank);
    for (std::size_t i = 0; i < L1.rank; ++i)
        for (std::size_t j = 0; j < L1.rank; ++j) P.gram(i, j) = L1.gram(i, j);
    for (std::size_t i = 0; i < L2.rank; ++i)
        for (std::size_t j = 0; j < L2.rank; ++j)
            P.gram(L1.rank + i, L1.rank + j) = L2.gram(i, j);
    if (L1.has_embedding && L2.has_embedding) {
        std::size_t n1 = L1.ambient_dim(), n2 = L2.ambient_dim();
        P.basis = QMat(P.rank, n1 + n2);
        for (std::size_t i = 0; i < L1.rank; ++i)
            for (std::size_t j = 0; j < n1; ++j) P.basis(i, j) = L1.basis(i, j);
        for (std::size_t i = 0; i < L2.rank; ++i)
            for (std::size_t j = 0; j < n2; ++j) P.basis(L1.rank + i, n1 + j) = L2.basis(i, j);
        P.has_embedding = true;
    }
    return P;
}

std::optional<QVec> coefficients_of(const Lattice& L, const QVec& x) {
    if (!L.has_embedding) throw std::invalid_argument("coefficients_of: no embedding");
    if (x.size() != L.ambient_dim()) throw std::invalid_argument("coefficients_of: bad dimension");
    return q_solve(q_transpose(L.basis), x);
}

bool contains_point(const Lattice& L, const QVec& x) {
    auto c = coefficients_of(L, x);
    if (!c) return false;
    for (const auto& e : *c)
        if (den(e) != 1) return false;
    return true;
}

Rat gram_det(const Lattice& L) { return q_det(L.gram); }

bool lattices_equal(const Lattice& L1, const Lattice& L2) {
    if (!L1.has_embedding || !L2.has_embedding) return false;
    if (L1.rank != L2.rank || L1.ambient_dim() != L2.ambient_dim()) return false;
    for (std::size_t i = 0; i < L1.rank; ++i)
        if (!contains_point(L2, L1.basis.row(i))) return false;
    for (std::size_t i = 0; i < L2.rank; ++i)
        if (!contains_point(L1, L2.basis.row(i))) return false;
    return true;
}

Rat norm2(const Lattice& L, const ZVec& z) {
    QVec q = q_from_z_vec(z);
    return q_dot(q, q_mul_vec(L.gram, q));
}

QVec embed(const Lattice& L, const QVec& coeffs) {
    if (!L.has_embedding) throw std::invalid_argument("embed: no embedding");
    return q_mul_vec(q_transpose(L.basis), coeffs);
}

}  // namespace vxc
