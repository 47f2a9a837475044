#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "vxc/lp.hpp"

using namespace vxc;
using namespace vxc::testing;

namespace {

HDesc box01(std::size_t n) {
    HDesc H(n);
    for (std::size_t i = 0; i < n; ++i) {
        QVec e(n, Rat(0));
        e[i] = 1;
        H.add_ineq(e, Rat(1));
        e[i] = -1;
        H.add_ineq(e, Rat(0));
    }
    return H;
}

}  // namespace

TEST_CASE("optimal: corner of the unit box") {
    HDesc H = box01(2);
    LpResult r = lp_maximize(H, qv("1,1"));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rat(2));
    CHECK(r.x == qv("1,1"));

    r = lp_maximize(H, qv("-1,2"));
    CHECK(r.value == Rat(2));
    CHECK(r.x == qv("0,1"));
}

TEST_CASE("rational data gives rational optima, exactly") {
    HDesc H(1);
    H.add_ineq(qv("3"), Rat(1));
    H.add_ineq(qv("-1"), Rat(0));
    LpResult r = lp_maximize(H, qv("1"));
    CHECK(r.value == Rat(Int(1), Int(3)));

    // intersection of two skew halfplanes
    HDesc G(2);
    G.add_ineq(qv("2,3"), Rat(Int(7), Int(2)));
    G.add_ineq(qv("5,-1"), Rat(Int(1), Int(3)));
    G.add_ineq(qv("-1,0"), Rat(10));
    G.add_ineq(qv("0,-1"), Rat(10));
    LpResult m = lp_maximize(G, qv("1,1"));
    REQUIRE(m.status == LpStatus::Optimal);
    // vertex of the two active rows: 2x+3y = 7/2, 5x-y = 1/3
    CHECK(q_dot(qv("2,3"), m.x) == Rat(Int(7), Int(2)));
    CHECK(q_dot(qv("5,-1"), m.x) == Rat(Int(1), Int(3)));
}

TEST_CASE("unbounded: certificate is an improving ray") {
    HDesc H(2);
    H.add_ineq(qv("-1,0"), Rat(0));
    H.add_ineq(qv("0,-1"), Rat(0));
    LpResult r = lp_maximize(H, qv("1,1"));
    REQUIRE(r.status == LpStatus::Unbounded);
    CHECK(q_dot(qv("1,1"), r.x) > 0);
    CHECK(q_dot(qv("-1,0"), r.x) <= 0);
    CHECK(q_dot(qv("0,-1"), r.x) <= 0);
}

TEST_CASE("infeasible: Farkas certificate checks out") {
    HDesc H(1);
    H.add_ineq(qv("1"), Rat(-1));   // x <= -1
    H.add_ineq(qv("-1"), Rat(0));   // x >= 0
    LpResult r = lp_maximize(H, qv("1"));
    REQUIRE(r.status == LpStatus::Infeasible);
    REQUIRE(r.farkas_y.size() == 2);
    Rat comb = r.farkas_y[0] * Rat(1) + r.farkas_y[1] * Rat(-1);
    CHECK(comb == Rat(0));
    CHECK(r.farkas_y[0] >= 0);
    CHECK(r.farkas_y[1] >= 0);
    CHECK(r.farkas_y[0] * Rat(-1) + r.farkas_y[1] * Rat(0) == Rat(-1));
}

TEST_CASE("equations are eliminated exactly") {
    HDesc H(2);
    H.add_eq(qv("1,1"), Rat(1));
    H.add_ineq(qv("-1,0"), Rat(0));
    H.add_ineq(qv("0,-1"), Rat(0));
    LpResult r = lp_maximize(H, qv("1,2"));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rat(2));
    CHECK(r.x == qv("0,1"));

    // infeasible equations
    HDesc G(2);
    G.add_eq(qv("1,1"), Rat(1));
    G.add_eq(qv("2,2"), Rat(3));
    LpResult i = lp_maximize(G, qv("1,0"));
    CHECK(i.status == LpStatus::Infeasible);
    // Farkas on the equation rows: z^T E = 0, z^T f = -1
    REQUIRE(i.farkas_z.size() == 2);
    CHECK(i.farkas_z[0] * Rat(1) + i.farkas_z[1] * Rat(2) == Rat(0));
    CHECK(i.farkas_z[0] * Rat(1) + i.farkas_z[1] * Rat(3) == Rat(-1));
}

TEST_CASE("degeneracy does not stall the solver") {
    // four redundant facets through the same optimum corner
    HDesc H(2);
    H.add_ineq(qv("1,0"), Rat(1));
    H.add_ineq(qv("0,1"), Rat(1));
    H.add_ineq(qv("1,1"), Rat(2));
    H.add_ineq(qv("2,1"), Rat(3));
    H.add_ineq(qv("1,2"), Rat(3));
    H.add_ineq(qv("-1,0"), Rat(0));
    H.add_ineq(qv("0,-1"), Rat(0));
    LpResult r = lp_maximize(H, qv("1,1"));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rat(2));
}

TEST_CASE("klee-minty style scaling stays exact") {
    // max 100 x1 + 10 x2 + x3, the classic pivoting stress shape
    HDesc H(3);
    H.add_ineq(qv("1,0,0"), Rat(1));
    H.add_ineq(qv("20,1,0"), Rat(100));
    H.add_ineq(qv("200,20,1"), Rat(10000));
    for (std::size_t i = 0; i < 3; ++i) {
        QVec e(3, Rat(0));
        e[i] = -1;
        H.add_ineq(e, Rat(0));
    }
    LpResult r = lp_maximize(H, qv("100,10,1"));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rat(10000));
    CHECK(r.x == qv("0,0,10000"));
}

TEST_CASE("feasibility probe returns a point or a certificate") {
    FeasResult f = lp_feasible(box01(3));
    CHECK(f.feasible);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(f.x[i] >= 0);
        CHECK(f.x[i] <= 1);
    }

    HDesc H(1);
    H.add_ineq(qv("1"), Rat(0));
    H.add_ineq(qv("-1"), Rat(-1));   // x >= 1 and x <= 0
    f = lp_feasible(H);
    CHECK_FALSE(f.feasible);
    CHECK(f.farkas_y[0] * Rat(1) - f.farkas_y[1] * Rat(1) == Rat(0));
    CHECK(f.farkas_y[0] * Rat(0) + f.farkas_y[1] * Rat(-1) == Rat(-1));
}
