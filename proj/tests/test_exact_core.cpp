#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "vxc/linalg.hpp"

#include <random>

using namespace vxc;
using namespace vxc::testing;

TEST_CASE("rational strings parse, canonicalize and roundtrip") {
    CHECK(rat_from_string("4/6") == Rat(Int(2), Int(3)));
    CHECK(rat_from_string("-4/6") == Rat(Int(-2), Int(3)));
    CHECK(rat_from_string("7") == Rat(7));
    CHECK(rat_to_string(Rat(Int(2), Int(4))) == "1/2");
    CHECK(rat_to_string(Rat(-3)) == "-3");
    CHECK(rat_from_string(rat_to_string(Rat(Int(-22), Int(8)))) == Rat(Int(-11), Int(4)));
    CHECK_THROWS_AS(rat_from_string("1/"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("x"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}

TEST_CASE("floor, ceil and round honour negative arguments") {
    CHECK(floor_rat(Rat(Int(-7), Int(2))) == Int(-4));
    CHECK(ceil_rat(Rat(Int(-7), Int(2))) == Int(-3));
    CHECK(floor_rat(Rat(Int(7), Int(2))) == Int(3));
    CHECK(ceil_rat(Rat(Int(7), Int(2))) == Int(4));
    CHECK(round_rat(Rat(Int(5), Int(2))) == Int(3));   // halves go up
    CHECK(round_rat(Rat(Int(-5), Int(2))) == Int(-2));
    CHECK(floor_div(Int(-7), Int(2)) == Int(-4));
    CHECK(floor_div(Int(7), Int(-2)) == Int(-4));
}

TEST_CASE("integer square roots and sqrt-shifted floors") {
    CHECK(isqrt_floor(Rat(17)) == Int(4));
    CHECK(isqrt_floor(Rat(16)) == Int(4));
    CHECK(isqrt_ceil(Rat(17)) == Int(5));
    CHECK(isqrt_ceil(Rat(16)) == Int(4));
    CHECK(isqrt_floor(Rat(Int(1), Int(2))) == Int(0));
    // floor(1/2 + sqrt(2)) = 1, ceil(1/2 - sqrt(2)) = 0
    CHECK(floor_add_sqrt(Rat(Int(1), Int(2)), Rat(2)) == Int(1));
    CHECK(ceil_sub_sqrt(Rat(Int(1), Int(2)), Rat(2)) == Int(0));
    // exact boundary: floor(-2 + sqrt(4)) = 0
    CHECK(floor_add_sqrt(Rat(-2), Rat(4)) == Int(0));
}

TEST_CASE("matrix inverse and solve are exact on random rational matrices") {
    std::mt19937_64 g(42);
    int done = 0;
    while (done < 5) {
        QMat A = rnd_qmat(g, 4, 4);
        if (q_det(A) == 0) continue;
        ++done;
        CHECK(q_mul(A, q_inverse(A)) == q_identity(4));
        QVec x = {Rat(1), Rat(Int(-1), Int(2)), Rat(3), Rat(Int(2), Int(7))};
        QVec b = q_mul_vec(A, x);
        auto sol = q_solve(A, b);
        REQUIRE(sol.has_value());
        CHECK(*sol == x);
    }
}

TEST_CASE("solve detects inconsistency, nullspace matches rank deficiency") {
    QMat A = qrows({"1,2", "2,4"});
    CHECK(q_rank(A) == 1);
    CHECK_FALSE(q_solve(A, qv("1,3")).has_value());
    auto null_basis = q_nullspace(A);
    REQUIRE(null_basis.size() == 1);
    CHECK(q_dot(A.row(0), null_basis[0]) == Rat(0));

    std::mt19937_64 g(7);
    QMat B = rnd_qmat(g, 3, 6);
    CHECK(q_rank(B) + q_nullspace(B).size() == 6);
}

TEST_CASE("rref is idempotent") {
    std::mt19937_64 g(11);
    QMat A = rnd_qmat(g, 4, 6);
    QMat R = A;
    auto pivots = rref(R);
    QMat R2 = R;
    auto pivots2 = rref(R2);
    CHECK(R == R2);
    CHECK(pivots == pivots2);
    CHECK(pivots.size() == q_rank(A));
}

TEST_CASE("hermite normal form: U unimodular, pivots reduced") {
    ZMat M(3, 3);
    long vals[9] = {2, 4, 4, -6, 6, 12, 10, 4, 16};
    for (int i = 0; i < 9; ++i) M.a[i] = Int(vals[i]);
    HnfResult r = hnf(M);
    CHECK(r.rank == 3);

    Rat det_u = q_det(q_from_z(r.U));
    CHECK((det_u == 1 || det_u == -1));

    // U * M = H
    QMat UM = q_mul(q_from_z(r.U), q_from_z(M));
    CHECK(UM == q_from_z(r.H));

    // row-echelon with positive pivots; entries above a pivot lie in [0, pivot)
    std::size_t prev_col = 0;
    for (std::size_t i = 0; i < r.rank; ++i) {
        std::size_t j = 0;
        while (j < r.H.n && r.H(i, j) == 0) ++j;
        REQUIRE(j < r.H.n);
        CHECK(r.H(i, j) > 0);
        if (i > 0) CHECK(j > prev_col);
        prev_col = j;
        for (std::size_t k = 0; k < i; ++k) {
            CHECK(r.H(k, j) >= 0);
            CHECK(r.H(k, j) < r.H(i, j));
        }
    }
}

TEST_CASE("integer kernel is saturated") {
    // kernel of (1/2, 1/2) in Z^2 is generated by (1, -1), not (2, -2)
    QMat M(1, 2);
    M(0, 0) = Rat(Int(1), Int(2));
    M(0, 1) = Rat(Int(1), Int(2));
    ZMat K = integer_kernel(M);
    REQUIRE(K.m == 1);
    CHECK(((K(0, 0) == 1 && K(0, 1) == -1) || (K(0, 0) == -1 && K(0, 1) == 1)));

    std::mt19937_64 g(5);
    QMat B = rnd_qmat(g, 2, 5);
    ZMat KB = integer_kernel(B);
    CHECK(KB.m == 5 - q_rank(B));
    for (std::size_t i = 0; i < KB.m; ++i) {
        QVec k = q_from_z_vec(KB.row(i));
        for (std::size_t r = 0; r < B.m; ++r) CHECK(q_dot(B.row(r), k) == Rat(0));
    }
}

TEST_CASE("primitive integer rows keep orientation") {
    ZVec p = primitive_integer_row(qv("2/3,-4/3"));
    CHECK(p == zv({1, -2}));
    CHECK(primitive_integer_row(qv("-2/3,4/3")) == zv({-1, 2}));
    CHECK(primitive_integer_row(qv("0,0,5")) == zv({0, 0, 1}));
}

TEST_CASE("ldlt factors spd matrices and rejects the rest") {
    QMat G = qrows({"2,-1", "-1,2"});
    LdltResult f = ldlt(G);
    CHECK(f.D[0] > 0);
    CHECK(f.D[1] > 0);
    // reassemble L D L^T
    QMat D(2, 2);
    D(0, 0) = f.D[0];
    D(1, 1) = f.D[1];
    CHECK(q_mul(q_mul(f.L, D), q_transpose(f.L)) == G);

    CHECK_THROWS_AS(ldlt(qrows({"1,2", "2,1"})), std::domain_error);   // indefinite
    CHECK_THROWS_AS(ldlt(qrows({"1,2", "3,1"})), std::domain_error);   // not symmetric
}

TEST_CASE("determinants of reference matrices") {
    CHECK(q_det(q_identity(4)) == Rat(1));
    CHECK(q_det(qrows({"0,1", "1,0"})) == Rat(-1));
    CHECK(q_det(qrows({"2,-1,0", "-1,2,-1", "0,-1,2"})) == Rat(4));
}
