#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "vxc/lifts.hpp"
#include "vxc/voronoi.hpp"

#include <algorithm>

using namespace vxc;
using namespace vxc::testing;

namespace {

bool exact(Lift l) { return verify_lift(l).exact; }

}  // namespace

TEST_CASE("primitive lifts verify against their own targets") {
    Lift cube = lift_cube(3, Rat(1));
    CHECK(cube.facet_count() == 6);
    CHECK(exact(cube));

    Lift simplex = lift_simplex(3);
    CHECK(simplex.facet_count() == 3);
    CHECK(exact(simplex));

    Lift cross = lift_crosspolytope(2, Rat(Int(3), Int(2)));
    CHECK(cross.facet_count() == 4);   // 2d rows instead of the 2^d facets
    CHECK(exact(cross));
    Polytope expect = make_crosspolytope(2, Rat(Int(3), Int(2)));
    REQUIRE(cross.target.has_value());
    CHECK(polytope_equal(*cross.target, expect));

    Lift pt = lift_point(qv("2,-1/2"));
    CHECK(pt.facet_count() == 0);
    CHECK(exact(pt));
}

TEST_CASE("product and minkowski lifts") {
    Lift sq = lift_cube(2, Rat(1));
    Lift seg = lift_cube(1, Rat(2));
    Lift prod = lift_product(sq, seg);
    CHECK(prod.facet_count() == 6);
    CHECK(exact(prod));

    Lift mink = lift_minkowski(lift_cube(2, Rat(1)), lift_crosspolytope(2, Rat(1)));
    CHECK(mink.facet_count() == 8);
    CHECK(exact(mink));
    // independent view of the sum: the octagon has 8 vertices
    Polytope t = *mink.target;
    CHECK(ensure_v(t).size() == 8);
}

TEST_CASE("intersection lift couples the blocks") {
    Lift a = lift_cube(2, Rat(1));
    Lift b = lift_crosspolytope(2, Rat(Int(3), Int(2)));
    Lift cap = lift_intersection(a, b);
    CHECK(exact(cap));
    Polytope t = *cap.target;
    CHECK(ensure_v(t).size() == 8);   // cut corners

    Lift c1 = lift_cube(1, Rat(1));
    Lift c3 = lift_cube(3, Rat(1));
    CHECK_THROWS_AS(lift_intersection(c1, c3), std::invalid_argument);
}

TEST_CASE("union lift: balas blocks, lambda rows only where needed") {
    Lift sq = lift_cube(2, Rat(1));
    AffineMap shift(q_identity(2), qv("3,0"));
    Polytope moved = affine_image(*sq.target, shift);
    Lift sq2 = lift_with_map(lift_cube(2, Rat(1)), shift, moved);

    Lift u = lift_union({sq, sq2});
    CHECK(u.balas_blocks.size() == 2);
    CHECK(u.facet_count() == 8);   // lambda >= 0 is implied by both cube blocks
    CHECK(exact(u));

    // a point member contributes only its lambda row
    Lift with_pt = lift_union({sq, lift_point(qv("5,5"))});
    CHECK(with_pt.facet_count() == 5);
    CHECK(exact(with_pt));

    // the union hull built independently
    Polytope hull = from_points(2, qpoints({"1,1", "1,-1", "-1,1", "-1,-1", "5,5"}));
    Polytope img = *with_pt.target;
    CHECK(polytope_equal(img, hull));
}

TEST_CASE("orbit lift: permutations of a vector through the birkhoff polytope") {
    Lift orb = lift_orbit(qv("1,2,3"));
    CHECK(orb.facet_count() == 9);
    CHECK(orb.q.h->E.m == 6);   // 2d doubly-stochastic equations
    CHECK(exact(orb));
    Polytope t = *orb.target;
    CHECK(ensure_v(t).size() == 6);

    auto perms = distinct_permutations(qv("1,1,2"));
    CHECK(perms.size() == 3);
    CHECK(std::is_sorted(perms.begin(), perms.end()));
}

TEST_CASE("zonotope lift against the brute minkowski sum of its segments") {
    std::vector<QVec> gens = qpoints({"1,0", "0,1", "1,1"});
    Lift z = lift_zonotope(2, gens);
    CHECK(z.facet_count() == 6);
    CHECK_FALSE(z.target.has_value());

    // all sign patterns of sum_i eps_i g_i / 2
    std::vector<QVec> corners;
    for (int mask = 0; mask < 8; ++mask) {
        QVec p(2, Rat(0));
        for (int i = 0; i < 3; ++i) {
            Rat s = (mask >> i) & 1 ? Rat(Int(1), Int(2)) : Rat(Int(-1), Int(2));
            p[0] += s * gens[i][0];
            p[1] += s * gens[i][1];
        }
        corners.push_back(p);
    }
    z.target = from_points(2, corners);
    CHECK(exact(z));
}

TEST_CASE("root cell lifts: facet counts and exactness at small d") {
    auto facets_of = [](RootFamily f, std::size_t d) {
        Lift l = lift_root_cell(f, d);
        REQUIRE(verify_lift(l).exact);
        return l.facet_count();
    };
    CHECK(facets_of(RootFamily::Zd, 3) == 6);
    CHECK(facets_of(RootFamily::A, 3) == 8);
    CHECK(facets_of(RootFamily::D, 3) == 12);
    CHECK(facets_of(RootFamily::Astar, 2) == 9);
    CHECK(facets_of(RootFamily::Dstar_scaled, 3) == 12);

    // A and D target the polar dual; the note says so
    Lift a = lift_root_cell(RootFamily::A, 3);
    CHECK(a.note.find("polar") != std::string::npos);
    CHECK_THROWS_AS(lift_root_cell(RootFamily::E8, 8), std::invalid_argument);
}

TEST_CASE("the A* cell is a zonotope on d(d+1)/2 generators") {
    for (std::size_t d = 1; d <= 3; ++d) {
        Lift z = lift_astar_zonotope(d);
        CHECK(z.proj.M.n == d * (d + 1) / 2);
        CHECK(z.facet_count() == d * (d + 1));
        CHECK(exact(z));
    }
    // strictly smaller than the orbit lift from d = 4 on
    Lift z4 = lift_astar_zonotope(4);
    Lift o4 = lift_root_cell(RootFamily::Astar, 4);
    CHECK(z4.facet_count() == 20);
    CHECK(o4.facet_count() == 25);
}

TEST_CASE("congruence cell lift: pieces, redundancy, exactness") {
    CongruenceCellLift c = lift_congruence_cell(2, Int(2));
    CHECK(c.piece_labels.size() == 3);
    CHECK(c.redundant_pieces.size() == 1);
    CHECK(c.lift.facet_count() == 10);
    CHECK(exact(c.lift));

    CongruenceCellLift c33 = lift_congruence_cell(3, Int(3));
    CHECK(c33.piece_labels.size() == 4);
    CHECK(c33.lift.facet_count() == 26);
    CHECK(exact(c33.lift));
}

TEST_CASE("face lifts demand a valid tight inequality") {
    Lift sq = lift_cube(2, Rat(1));
    Lift edge = lift_face(sq, qv("1,0"), Rat(1));
    CHECK(exact(edge));
    Polytope t = *edge.target;
    auto v = ensure_v(t);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == qv("1,-1"));
    CHECK(v[1] == qv("1,1"));

    CHECK_THROWS(lift_face(sq, qv("1,0"), Rat(Int(1), Int(2))));   // cuts the square
    CHECK_THROWS(lift_face(sq, qv("1,0"), Rat(5)));                // valid but never tight
}

TEST_CASE("corrupting the projection is caught with witnesses") {
    Lift l = lift_root_cell(RootFamily::A, 2);
    l.proj.M(0, 0) += Rat(Int(1), Int(7));
    LiftReport rep = verify_lift(l);
    CHECK_FALSE(rep.exact);
    CHECK(rep.missed_vertices.size() + rep.escaped_vertices.size() > 0);
}

TEST_CASE("verify_lift validates its inputs") {
    Lift no_target = lift_zonotope(2, qpoints({"1,0"}));
    CHECK_THROWS_AS(verify_lift(no_target), std::invalid_argument);

    Lift unbounded;
    unbounded.q.dim = 1;
    HDesc H(1);
    H.add_ineq(qv("-1"), Rat(0));
    unbounded.q.h = H;
    unbounded.proj = AffineMap(q_identity(1), qv("0"));
    unbounded.target = make_cube(1, Rat(1));
    CHECK_THROWS_AS(verify_lift(unbounded), std::domain_error);
}

TEST_CASE("maps compose in the right order") {
    AffineMap f(qrows({"2,0", "0,1"}), qv("1,0"));   // f(x) = diag(2,1) x + (1,0)
    AffineMap g(qrows({"0,-1", "1,0"}), qv("0,3"));  // rotate, then shift
    AffineMap fg = compose(f, g);
    QVec x = qv("1,2");
    CHECK(fg.apply(x) == f.apply(g.apply(x)));

    Lift sq = lift_cube(2, Rat(1));
    AffineMap rot(qrows({"0,-1", "1,0"}), qv("0,0"));
    Polytope same = make_cube(2, Rat(1));   // the square is rotation invariant
    Lift rotated = lift_with_map(std::move(sq), rot, same);
    CHECK(exact(rotated));
}
