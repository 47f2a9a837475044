#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "vxc/polytope.hpp"

#include <algorithm>

using namespace vxc;
using namespace vxc::testing;

TEST_CASE("from_points keeps exactly the extreme points and caches the facets") {
    // square corners plus center, edge midpoints, and a duplicate corner
    Polytope P = from_points(2, qpoints({"1,1", "1,-1", "-1,1", "-1,-1", "0,0", "1,0", "0,1",
                                         "-1,0", "0,-1", "1,1"}));
    REQUIRE(P.v.has_value());
    CHECK(P.v->size() == 4);
    CHECK(std::is_sorted(P.v->begin(), P.v->end()));
    REQUIRE(P.h.has_value());
    CHECK(P.h->A.m == 4);
    CHECK(P.h->E.m == 0);
    Polytope cube = make_cube(2, Rat(1));
    CHECK(polytope_equal(P, cube));
}

TEST_CASE("from_points handles degenerate inputs") {
    Polytope pt = from_points(2, qpoints({"1/2,-3", "1/2,-3"}));
    CHECK(pt.v->size() == 1);
    CHECK(pt.h->E.m == 2);   // affine hull is the point itself
    CHECK(pt.h->A.m == 0);

    // segment inside R^3: two facet rows across a 1-dim hull
    Polytope seg = from_points(3, qpoints({"0,0,0", "1,1,0", "1/2,1/2,0"}));
    CHECK(seg.v->size() == 2);
    CHECK(seg.h->E.m == 2);
    CHECK(seg.h->A.m == 2);

    CHECK_THROWS_AS(from_points(2, {}), std::invalid_argument);
}

TEST_CASE("facet enumeration finds the affine hull of flat inputs") {
    HDesc H = facet_enumeration(3, qpoints({"1,0,0", "0,1,0", "0,0,1"}));
    CHECK(H.E.m == 1);   // x + y + z = 1
    CHECK(H.A.m == 3);
    for (const QVec& p : qpoints({"1,0,0", "1/3,1/3,1/3"})) CHECK(hdesc_contains(H, p));
    CHECK_FALSE(hdesc_contains(H, qv("1,1,-1")));
    CHECK_FALSE(hdesc_contains(H, qv("2/3,2/3,-1/3")));
}

TEST_CASE("vertex enumeration inverts the cube and crosspolytope descriptions") {
    Polytope c = make_cube(3, Rat(1));
    auto vc = vertex_enumeration(*c.h);
    CHECK(vc.size() == 8);
    Polytope x = make_crosspolytope(3, Rat(2));
    auto vx = vertex_enumeration(*x.h);
    CHECK(vx.size() == 6);
    CHECK(std::binary_search(vx.begin(), vx.end(), qv("0,0,2")));
}

TEST_CASE("vertex enumeration detects implicit equalities") {
    // the two rows +-x <= 0 force x = 0
    HDesc H(2);
    H.add_ineq(qv("1,0"), Rat(0));
    H.add_ineq(qv("-1,0"), Rat(0));
    H.add_ineq(qv("0,1"), Rat(1));
    H.add_ineq(qv("0,-1"), Rat(1));
    auto v = vertex_enumeration(H);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == qv("0,-1"));
    CHECK(v[1] == qv("0,1"));
}

TEST_CASE("vertex enumeration rejects empty and unbounded inputs") {
    HDesc empty(1);
    empty.add_ineq(qv("1"), Rat(-1));
    empty.add_ineq(qv("-1"), Rat(0));
    CHECK_THROWS_AS(vertex_enumeration(empty), std::domain_error);

    HDesc ray(2);
    ray.add_ineq(qv("-1,0"), Rat(0));
    ray.add_ineq(qv("0,-1"), Rat(0));
    CHECK_THROWS_AS(vertex_enumeration(ray), std::domain_error);
}

TEST_CASE("redundant rows disappear in the facet description") {
    HDesc H(2);
    H.add_ineq(qv("1,0"), Rat(1));
    H.add_ineq(qv("0,1"), Rat(1));
    H.add_ineq(qv("-1,0"), Rat(1));
    H.add_ineq(qv("0,-1"), Rat(1));
    H.add_ineq(qv("1,1"), Rat(5));      // redundant
    H.add_ineq(qv("2,0"), Rat(2));      // duplicate of row 0 after scaling

    HDesc C = H;
    canonicalize(C);
    CHECK(C.A.m == 5);   // the scaled duplicate folds in, the redundant row stays

    Polytope P = from_hdesc(H);
    Polytope clean = from_points(2, ensure_v(P));
    CHECK(clean.h->A.m == 4);   // rebuilt facets are irredundant
}

TEST_CASE("polar duality: cube <-> crosspolytope, involution, slack transpose") {
    Polytope c = make_cube(2, Rat(1));
    Polytope d = dualize(c);
    Polytope x = make_crosspolytope(2, Rat(1));
    CHECK(polytope_equal(d, x));
    Polytope dd = dualize(d);
    CHECK(polytope_equal(dd, c));

    // S(P dual) = S(P)^T under the induced orderings
    Polytope p = from_points(2, qpoints({"1,0", "-1,1", "-1,-1", "0,1"}));
    HDesc hc = ensure_h(p);
    canonicalize(hc);
    Polytope pu;
    pu.dim = 2;
    pu.h = unit_rhs_form(hc);
    pu.v = ensure_v(p);
    QMat s = slack_matrix(pu).S;
    Polytope dp = dualize(p);
    QMat sd = slack_matrix(dp).S;
    CHECK(sd == q_transpose(s));
}

TEST_CASE("dualize requires the origin inside") {
    Polytope off = from_points(2, qpoints({"1,0", "2,0", "1,1", "2,1"}));
    CHECK_THROWS_AS(dualize(off), std::domain_error);
}

TEST_CASE("affine images") {
    Polytope c = make_cube(2, Rat(1));
    // rotate by 90 degrees: the square is symmetric
    AffineMap rot(qrows({"0,-1", "1,0"}), qv("0,0"));
    Polytope r = affine_image(c, rot);
    CHECK(polytope_equal(r, c));

    // project onto the first coordinate: a segment
    AffineMap p(qrows({"1,0"}), qv("3"));
    Polytope seg = affine_image(c, p);
    auto v = ensure_v(seg);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == qv("2"));
    CHECK(v[1] == qv("4"));
}

TEST_CASE("fourier-motzkin projection agrees with the vertex image") {
    Polytope c = make_cube(3, Rat(1));
    HDesc sq = fm_project(*c.h, {0, 1});
    Polytope p = from_hdesc(sq);
    Polytope expect = make_cube(2, Rat(1));
    CHECK(polytope_equal(p, expect));

    Polytope x = make_crosspolytope(3, Rat(1));
    HDesc px = fm_project(*x.h, {0, 1});
    Polytope q = from_hdesc(px);
    Polytope expect2 = make_crosspolytope(2, Rat(1));
    CHECK(polytope_equal(q, expect2));
}

TEST_CASE("slack matrices: entries, validation, bounds") {
    // simplex: every facet misses exactly one vertex
    Polytope t = from_points(2, qpoints({"0,0", "1,0", "0,1"}));
    QMat S = slack_matrix(t).S;
    REQUIRE(S.m == 3);
    REQUIRE(S.n == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        std::size_t nonzero = 0;
        for (std::size_t j = 0; j < 3; ++j) nonzero += S(i, j) != 0;
        CHECK(nonzero == 1);
    }
    SlackBounds b = slack_rank_bounds(S);
    CHECK(b.rank == 3);
    CHECK(b.rectangle_cover == 3);
    CHECK(b.cover_exact);

    Polytope sq = make_cube(2, Rat(1));
    SlackBounds bs = slack_rank_bounds(slack_matrix(sq).S);
    CHECK(bs.rank == 3);
    CHECK(bs.rectangle_cover == 4);   // no all-positive 2x2 submatrix exists
    CHECK(bs.cover_exact);

    // a claimed vertex outside the polytope gives a negative slack
    Polytope bad;
    bad.dim = 2;
    bad.h = sq.h;
    bad.v = qpoints({"2,0"});
    CHECK_THROWS_AS(slack_matrix(bad), std::domain_error);
}

TEST_CASE("containment queries") {
    Polytope c = make_cube(2, Rat(1));
    CHECK(contains(c, qv("1,1")));
    CHECK(contains(c, qv("0,0")));
    CHECK_FALSE(contains(c, qv("1,101/100")));
    CHECK(hdesc_contains(*c.h, qv("1,0")));
    CHECK_FALSE(hdesc_contains(*c.h, qv("1,0"), true));   // strict
    CHECK(hdesc_contains(*c.h, qv("0,0"), true));
}

TEST_CASE("description roundtrips are idempotent") {
    for (Polytope P : {make_cube(3, Rat(Int(1), Int(2))), make_crosspolytope(3, Rat(2))}) {
        const auto& v1 = ensure_v(P);
        Polytope Q = from_points(P.dim, v1);
        CHECK(ensure_v(Q) == v1);
        HDesc h1 = ensure_h(P);
        canonicalize(h1);
        HDesc h2 = ensure_h(Q);
        canonicalize(h2);
        auto key = [](const HDesc& H) {
            std::vector<std::pair<QVec, Rat>> rows;
            for (std::size_t i = 0; i < H.A.m; ++i) rows.emplace_back(H.A.row(i), H.b[i]);
            std::sort(rows.begin(), rows.end());
            return rows;
        };
        CHECK(key(h1) == key(h2));
    }
}

TEST_CASE("intersection and scaling helpers") {
    Polytope c = make_cube(2, Rat(1));
    Polytope x = make_crosspolytope(2, Rat(Int(3), Int(2)));
    HDesc both = hdesc_intersection(*c.h, *x.h);
    Polytope p = from_hdesc(both);
    // the octagon: cube corners are cut
    CHECK(ensure_v(p).size() == 8);
    CHECK(contains(p, qv("1,1/2")));
    CHECK_FALSE(contains(p, qv("1,1")));

    Polytope s = scale_polytope(c, Rat(Int(1), Int(2)));
    auto v = ensure_v(s);
    CHECK(v.size() == 4);
    CHECK(std::binary_search(v.begin(), v.end(), qv("1/2,1/2")));
    CHECK_THROWS_AS(scale_polytope(c, Rat(0)), std::invalid_argument);
}

TEST_CASE("unit rhs form requires positive offsets") {
    Polytope c = make_cube(2, Rat(2));
    HDesc u = unit_rhs_form(*c.h);
    for (std::size_t i = 0; i < u.A.m; ++i) CHECK(u.b[i] == Rat(1));

    HDesc zero(1);
    zero.add_ineq(qv("1"), Rat(0));
    CHECK_THROWS_AS(unit_rhs_form(zero), std::domain_error);
}
