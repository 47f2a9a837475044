#pragma once

#include "vxc/linalg.hpp"

namespace vxc {

/// H-description A x <= b, E x = f over an explicit ambient dimension
/// (so empty inequality or equation blocks stay well-formed).
struct HDesc {
    std::size_t dim = 0;
    QMat A;
    QVec b;
    QMat E;
    QVec f;

    HDesc() = default;
    explicit HDesc(std::size_t n) : dim(n), A(0, n), E(0, n) {}

    void add_ineq(const QVec& a, const Rat& rhs);
    void add_eq(const QVec& e, const Rat& rhs);
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    QVec x;       // optimum (Optimal) or an improving ray with Ax<=0, Ex=0, c^T x > 0 (Unbounded)
    Rat value;    // objective value at the optimum
    // Farkas certificate when Infeasible: y >= 0 with
    // y^T A + z^T E = 0 and y^T b + z^T f = -1.
    QVec farkas_y, farkas_z;
};

/// Exact rational simplex. Equations are eliminated by Gauss-Jordan up front;
/// the reduced problem runs a two-phase tableau with Dantzig pricing, falling
/// back to Bland's rule after a non-improving streak so termination is
/// guaranteed.
LpResult lp_maximize(const HDesc& P, const QVec& c);

struct FeasResult {
    bool feasible = false;
    QVec x;
    QVec farkas_y, farkas_z;
};

FeasResult lp_feasible(const HDesc& P);

}  // namespace vxc
