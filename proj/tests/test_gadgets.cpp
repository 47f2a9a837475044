#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "vxc/gadgets.hpp"

#include <algorithm>

using namespace vxc;
using namespace vxc::testing;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> edges(
    std::initializer_list<std::pair<std::size_t, std::size_t>> es) {
    return {es};
}

}  // namespace

TEST_CASE("stable set counts of the small named graphs") {
    CHECK(stable_set_instance(2, edges({{0, 1}})).X.size() == 3);             // K_2
    CHECK(stable_set_instance(3, edges({{0, 1}, {1, 2}})).X.size() == 5);     // P_3
    CHECK(stable_set_instance(3, edges({{0, 1}, {1, 2}, {0, 2}})).X.size() == 4);   // K_3
    CHECK(stable_set_instance(3, {}).X.size() == 8);                          // empty graph
    auto c5 = stable_set_instance(5, edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}));
    CHECK(c5.X.size() == 11);
    CHECK(c5.A.m == 5);

    // normalization: duplicates and swapped endpoints collapse
    auto dup = stable_set_instance(2, edges({{1, 0}, {0, 1}, {0, 1}}));
    CHECK(dup.A.m == 1);
    CHECK_THROWS_AS(stable_set_instance(2, edges({{0, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(stable_set_instance(2, edges({{0, 2}})), std::invalid_argument);
    CHECK_THROWS_AS(stable_set_instance(0, {}), std::invalid_argument);
}

TEST_CASE("correlation instances enumerate the rank-one 0/1 matrices") {
    BinarySystem c2 = correlation_instance(2);
    CHECK(c2.A.n == 4);
    CHECK(c2.A.m == 6);   // three rows per ordered pair
    CHECK(c2.X.size() == 4);
    for (const ZVec& x : c2.X) {
        // x = vec(y y^T): check the rank-one identity x_ij = x_ii x_jj
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(x[2 * i + j] == x[2 * i + i] * x[2 * j + j]);
    }
    CHECK(correlation_instance(3).X.size() == 8);
    CHECK_THROWS_AS(correlation_instance(0), std::invalid_argument);
}

TEST_CASE("slack embedding doubles coordinates and balances the weight") {
    BinarySystem k2 = stable_set_instance(2, edges({{0, 1}}));
    GadgetInstance g = slack_embedding(k2.A, k2.b, k2.X);
    CHECK(g.k == 2);
    CHECK(g.m == 1);
    CHECK(g.alpha_sq == 3);
    REQUIRE(g.Xprime.size() == 3);
    for (const ZVec& y : g.Xprime) {
        CHECK(y.size() == 6);   // (x, 1-x, s, 1-s)
        Int ones = 0;
        for (const Int& v : y) ones += v;
        CHECK(ones == 3);
    }
    // h is the lexicographically smallest embedded point
    CHECK(g.h == *std::min_element(g.Xprime.begin(), g.Xprime.end()));
    // the embedding is not attached to a lattice yet
    CHECK(g.lattice.rank == 0);
}

TEST_CASE("slack embedding rejects systems whose slack is not binary") {
    QMat A = qrows({"1"});
    QVec b = qv("2");
    std::vector<ZVec> X = {zv({0}), zv({1})};   // slack of x=0 is 2
    CHECK_THROWS_AS(slack_embedding(A, b, X), std::domain_error);

    std::vector<ZVec> notbin = {zv({2})};
    CHECK_THROWS_AS(slack_embedding(A, b, notbin), std::domain_error);
}

TEST_CASE("K_2 end to end: the frozen reference instance") {
    GadgetInstance g = build_gadget(stable_set_instance(2, edges({{0, 1}})));
    CHECK(g.lattice.rank == 3);
    CHECK(g.alpha_sq == 3);
    CHECK(g.defect == Rat(Int(15), Int(14)));
    GadgetReport rep = verify_gadget(g);
    CHECK(rep.ok());
    CHECK(rep.dist_sq == Rat(3));
    CHECK(rep.closest_count == 4);       // the three embedded points plus the origin
    CHECK(rep.face_vertex_count == 3);
    CHECK(rep.unexpected_closest.empty());
    CHECK(rep.missing_closest.empty());
    CHECK(rep.bad_projections.empty());
}

TEST_CASE("path, cycle and correlation instances verify") {
    GadgetInstance p3 = build_gadget(stable_set_instance(3, edges({{0, 1}, {1, 2}})));
    CHECK(p3.lattice.rank <= 4);
    GadgetReport rp = verify_gadget(p3);
    CHECK(rp.ok());
    CHECK(rp.face_vertex_count == 5);

    GadgetInstance c5 =
        build_gadget(stable_set_instance(5, edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})));
    CHECK(c5.lattice.rank <= 6);
    GadgetReport rc = verify_gadget(c5);
    CHECK(rc.ok());
    CHECK(rc.face_vertex_count == 11);

    GadgetInstance corr = build_gadget(correlation_instance(2));
    CHECK(corr.lattice.rank == 5);
    GadgetReport rr = verify_gadget(corr);
    CHECK(rr.ok());
    CHECK(rr.face_vertex_count == 4);
}

TEST_CASE("forced solutions shrink the direction space") {
    // x = 1 forced by the pair x <= 1, -x <= -1
    BinarySystem forced;
    forced.A = qrows({"1", "-1"});
    forced.b = qv("1,-1");
    forced.X = {zv({1})};
    forced.label = "forced";
    GadgetInstance g = build_gadget(forced);
    // six coordinates, five independent subspace equations
    CHECK(g.direction_basis.m == 1);
    CHECK(g.Xprime.size() == 1);
    CHECK(g.lattice.rank == 2);
    GadgetReport rep = verify_gadget(g);
    CHECK(rep.ok());
    CHECK(rep.face_vertex_count == 1);
    CHECK(rep.closest_count == 2);

    // a single free bit
    BinarySystem free_bit;
    free_bit.A = QMat(0, 1);
    free_bit.b = {};
    free_bit.X = {zv({0}), zv({1})};
    free_bit.label = "bit";
    GadgetInstance gb = build_gadget(free_bit);
    CHECK(gb.lattice.rank == 2);
    GadgetReport rb = verify_gadget(gb);
    CHECK(rb.ok());
    CHECK(rb.closest_count == 3);
    CHECK(rb.face_vertex_count == 2);
}

TEST_CASE("raw recovery reproduces the built instance") {
    GadgetInstance g = build_gadget(stable_set_instance(3, edges({{0, 1}, {1, 2}})));
    QVec h(g.h.size());
    for (std::size_t i = 0; i < g.h.size(); ++i) h[i] = Rat(g.h[i]);
    GadgetInstance r = gadget_from_raw(g.direction_basis, h, g.alpha_sq);
    CHECK(r.Xprime == g.Xprime);
    CHECK(r.lattice.gram == g.lattice.gram);
    CHECK(r.zt_basis == g.zt_basis);
    CHECK(r.defect == g.defect);
    CHECK(verify_gadget(r).ok());
    // raw instances carry no constraint system
    CHECK(r.k == 0);
    CHECK(r.A.m == 0);
}

TEST_CASE("tampered raw data is rejected") {
    GadgetInstance g = build_gadget(stable_set_instance(2, edges({{0, 1}})));
    QVec h(g.h.size());
    for (std::size_t i = 0; i < g.h.size(); ++i) h[i] = Rat(g.h[i]);

    QVec h_bad = h;
    h_bad[0] += 1;
    bool threw = false;
    try {
        gadget_from_raw(g.direction_basis, h_bad, g.alpha_sq);
    } catch (const std::domain_error& e) {
        threw = true;
        std::string msg = e.what();
        bool informative = msg.find("equal-norm") != std::string::npos ||
                           msg.find("0/1 points") != std::string::npos;
        CHECK(informative);
    }
    CHECK(threw);

    QVec h_frac = h;
    h_frac[0] = Rat(Int(1), Int(2));
    CHECK_THROWS_AS(gadget_from_raw(g.direction_basis, h_frac, g.alpha_sq),
                    std::invalid_argument);
    CHECK_THROWS_AS(gadget_from_raw(g.direction_basis, h, Int(0)), std::invalid_argument);
}

TEST_CASE("perturbed weight fails the equal-norm hypothesis") {
    GadgetInstance g = build_gadget(stable_set_instance(2, edges({{0, 1}})));
    QVec h(g.h.size());
    for (std::size_t i = 0; i < g.h.size(); ++i) h[i] = Rat(g.h[i]);
    CHECK_THROWS_AS(gadget_from_raw(g.direction_basis, h, g.alpha_sq + 1), std::domain_error);
}
