#pragma once

// Shared shorthands for the test binaries. Everything stays exact: points are
// parsed from rational strings and comparisons are plain operator==.

#include "vxc/json_io.hpp"

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace vxc::testing {

inline QVec qv(const std::string& csv) { return qvec_from_arg(csv); }

inline ZVec zv(std::initializer_list<long> xs) {
    ZVec v;
    v.reserve(xs.size());
    for (long x : xs) v.push_back(Int(x));
    return v;
}

inline QMat qrows(std::initializer_list<std::string> rs) {
    std::vector<QVec> parsed;
    parsed.reserve(rs.size());
    for (const std::string& r : rs) parsed.push_back(qv(r));
    QMat M(parsed.size(), parsed.empty() ? 0 : parsed[0].size());
    for (std::size_t i = 0; i < M.m; ++i)
        for (std::size_t j = 0; j < M.n; ++j) M(i, j) = parsed.begin()[i][j];
    return M;
}

inline std::vector<QVec> qpoints(std::initializer_list<std::string> rs) {
    std::vector<QVec> pts;
    pts.reserve(rs.size());
    for (const std::string& r : rs) pts.push_back(qv(r));
    return pts;
}

// Small random rationals, numerators in [-6, 6], denominators in [1, 5].
inline Rat rnd_rat(std::mt19937_64& g) {
    long n = static_cast<long>(g() % 13) - 6;
    long d = 1 + static_cast<long>(g() % 5);
    return Rat(Int(n), Int(d));
}

inline QMat rnd_qmat(std::mt19937_64& g, std::size_t m, std::size_t n) {
    QMat M(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = rnd_rat(g);
    return M;
}

}  // namespace vxc::testing
