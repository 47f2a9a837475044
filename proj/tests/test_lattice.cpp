#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "vxc/lattice.hpp"

using namespace vxc;
using namespace vxc::testing;

TEST_CASE("gram determinants of the root families match the classical values") {
    for (std::size_t d = 1; d <= 5; ++d) {
        CHECK(gram_det(root_lattice(RootFamily::Zd, d)) == Rat(1));
        CHECK(gram_det(root_lattice(RootFamily::A, d)) == Rat(Int(d) + 1));
        CHECK(gram_det(root_lattice(RootFamily::Astar, d)) == Rat(Int(1), Int(d) + 1));
    }
    for (std::size_t d = 3; d <= 6; ++d)
        CHECK(gram_det(root_lattice(RootFamily::D, d)) == Rat(4));
    // 2 D_d^*: det = 4^d / det(D_d)
    for (std::size_t d = 3; d <= 5; ++d) {
        Rat expect = 1;
        for (std::size_t i = 1; i < d; ++i) expect *= 4;
        CHECK(gram_det(root_lattice(RootFamily::Dstar_scaled, d)) == expect);
    }
    CHECK(gram_det(root_lattice(RootFamily::E8, 8)) == Rat(1));
    CHECK(gram_det(root_lattice(RootFamily::E7, 7)) == Rat(2));
    CHECK(gram_det(root_lattice(RootFamily::E6, 6)) == Rat(3));
}

TEST_CASE("membership in the embedded families") {
    Lattice a3 = root_lattice(RootFamily::A, 3);
    CHECK(contains_point(a3, qv("1,-1,0,0")));
    CHECK(contains_point(a3, qv("2,-1,-1,0")));
    CHECK_FALSE(contains_point(a3, qv("1,0,0,0")));
    CHECK_FALSE(contains_point(a3, qv("1/2,-1/2,0,0")));

    Lattice astar2 = root_lattice(RootFamily::Astar, 2);
    CHECK(contains_point(astar2, qv("1/3,1/3,-2/3")));
    CHECK(contains_point(astar2, qv("1,-1,0")));
    CHECK_FALSE(contains_point(astar2, qv("1/3,-1/3,0")));

    Lattice dstar3 = root_lattice(RootFamily::Dstar_scaled, 3);
    CHECK(contains_point(dstar3, qv("2,0,0")));
    CHECK(contains_point(dstar3, qv("1,1,1")));
    CHECK(contains_point(dstar3, qv("1,-1,3")));
    CHECK_FALSE(contains_point(dstar3, qv("1,1,0")));   // mixed parity

    Lattice e8 = root_lattice(RootFamily::E8, 8);
    CHECK(contains_point(e8, qv("1,-1,0,0,0,0,0,0")));
    CHECK(contains_point(e8, qv("1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2")));
    CHECK_FALSE(contains_point(e8, qv("1,0,0,0,0,0,0,0")));
}

TEST_CASE("congruence lattices: coordinates agree mod a") {
    Lattice l32 = congruence_lattice(3, Int(2));
    CHECK(contains_point(l32, qv("1,1,1")));
    CHECK(contains_point(l32, qv("2,0,4")));
    CHECK(contains_point(l32, qv("3,1,-1")));
    CHECK_FALSE(contains_point(l32, qv("1,0,0")));
    CHECK(gram_det(l32) == Rat(16));   // index 2^(d-1) in Z^3

    CHECK(gram_det(congruence_lattice(4, Int(3))) == Rat(729));   // (3^3)^2
    CHECK(lattices_equal(congruence_lattice(3, Int(1)), root_lattice(RootFamily::Zd, 3)));
}

TEST_CASE("duality: gram inverts, double dual returns, A* is the dual of A") {
    Lattice a2 = root_lattice(RootFamily::A, 2);
    Lattice d = dual_lattice(a2);
    CHECK(q_mul(a2.gram, d.gram) == q_identity(2));
    CHECK(dual_lattice(d).gram == a2.gram);
    CHECK(lattices_equal(d, root_lattice(RootFamily::Astar, 2)));

    // 2 D_3^* against the scaled dual, rebuilt from doubled dual basis rows
    Lattice d3 = root_lattice(RootFamily::D, 3);
    QMat twice = dual_lattice(d3).basis;
    for (Rat& x : twice.a) x *= 2;
    CHECK(lattices_equal(make_lattice("2D3*", twice),
                         root_lattice(RootFamily::Dstar_scaled, 3)));

    // self-dual families
    CHECK(lattices_equal(dual_lattice(root_lattice(RootFamily::Zd, 4)),
                         root_lattice(RootFamily::Zd, 4)));
    CHECK(lattices_equal(dual_lattice(root_lattice(RootFamily::E8, 8)),
                         root_lattice(RootFamily::E8, 8)));
}

TEST_CASE("products concatenate embeddings and block the gram") {
    Lattice p = product_lattice(root_lattice(RootFamily::A, 2), root_lattice(RootFamily::Zd, 1));
    CHECK(p.rank == 3);
    CHECK(p.ambient_dim() == 4);
    CHECK(p.gram(0, 2) == Rat(0));
    CHECK(p.gram(2, 2) == Rat(1));
    CHECK(p.gram(0, 0) == Rat(2));
    CHECK(contains_point(p, qv("1,-1,0,5")));
    CHECK_FALSE(contains_point(p, qv("1,0,0,5")));
    CHECK(gram_det(p) == Rat(3));
}

TEST_CASE("coefficients and embedding are mutually inverse") {
    Lattice a3 = root_lattice(RootFamily::A, 3);
    QVec c = qv("1,-2,1/2");
    QVec x = embed(a3, c);
    auto back = coefficients_of(a3, x);
    REQUIRE(back.has_value());
    CHECK(*back == c);
    // off-span points have no coefficients
    CHECK_FALSE(coefficients_of(a3, qv("1,1,1,1")).has_value());
}

TEST_CASE("norms agree with the gram form") {
    Lattice d4 = root_lattice(RootFamily::D, 4);
    ZVec z = zv({1, 0, -1, 2});
    QVec zq = q_from_z_vec(z);
    CHECK(norm2(d4, z) == q_dot(zq, q_mul_vec(d4.gram, zq)));
    QVec x = embed(d4, zq);
    CHECK(norm2(d4, z) == q_dot(x, x));
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(make_lattice("dep", qrows({"1,0", "2,0"})), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice_gram("bad", qrows({"1,2", "2,1"})), std::domain_error);
    CHECK_THROWS_AS(root_lattice(RootFamily::D, 1), std::invalid_argument);
    CHECK_THROWS_AS(root_lattice(RootFamily::E8, 7), std::invalid_argument);
    CHECK_THROWS_AS(congruence_lattice(2, Int(0)), std::invalid_argument);
}

TEST_CASE("generators with dependencies reduce to a proper basis") {
    // three generators of A_2 given redundantly
    QMat gens = qrows({"1,-1,0", "0,1,-1", "1,0,-1"});
    Lattice l = lattice_from_generators("A2-red", gens);
    CHECK(l.rank == 2);
    CHECK(lattices_equal(l, root_lattice(RootFamily::A, 2)));

    // rational generators: Z^2 scaled by 1/2 in one coordinate
    Lattice h = lattice_from_generators("half", qrows({"1/2,0", "0,1", "1/2,1"}));
    CHECK(h.rank == 2);
    CHECK(gram_det(h) == Rat(Int(1), Int(4)));
    CHECK(contains_point(h, qv("1/2,0")));
    CHECK_FALSE(contains_point(h, qv("0,1/2")));
}
