#include "vxc/enumeration.hpp"

#include <algorithm>

namespace vxc {

namespace {

/*
 * Depth-first interval enumeration on the LDL^T form of the Gram matrix.
 *
 * With u = z - center and w_j = u_j + sum_{i>j} L(i,j) u_i, the quadratic form
 * splits as sum_j D_j w_j^2. Levels are processed from k-1 down to 0; at each
 * level the admissible integer range follows from D_j w_j^2 <= bound - spent,
 * computed exactly via floor_add_sqrt / ceil_sub_sqrt.
 */
struct BallSearch {
    const QMat& L;
    const QVec& D;
    QVec center;
    Rat bound;
    bool shrink;        // tighten bound whenever a strictly better point appears
    bool exclude_zero;  // drop z = 0 from the results

    std::size_t k = 0;
    ZVec z;
    std::vector<std::pair<ZVec, Rat>> found;

    BallSearch(const QMat& l, const QVec& d, QVec c, Rat b, bool sh, bool ex)
        : L(l), D(d), center(std::move(c)), bound(std::move(b)), shrink(sh), exclude_zero(ex) {
        k = D.size();
        z.assign(k, Int(0));
    }

    void run() { descend(k, Rat(0)); }

    // levels above `level` are fixed; `spent` is their contribution
    void descend(std::size_t level, const Rat& spent) {
        if (level == 0) {
            if (exclude_zero && std::all_of(z.begin(), z.end(), [](const Int& e) { return e == 0; }))
                return;
            found.emplace_back(z, spent);
            if (shrink && spent < bound) bound = spent;
            return;
        }
        std::size_t j = level - 1;
        Rat s = 0;
        for (std::size_t i = j + 1; i < k; ++i)
            if (L(i, j) != 0) s += L(i, j) * (Rat(z[i]) - center[i]);
        Rat rem = bound - spent;
        if (rem < 0) return;
        Rat radius2 = rem / D[j];
        // z_j ranges over [center_j - s - sqrt(radius2), center_j - s + sqrt(radius2)]
        Rat mid = center[j] - s;
        Int lo = ceil_sub_sqrt(mid, radius2);
        Int hi = floor_add_sqrt(mid, radius2);
        for (Int v = lo; v <= hi; ++v) {
            z[j] = v;
            Rat w = Rat(v) - center[j] + s;
            Rat here = spent + D[j] * w * w;
            if (here > bound) continue;   // bound may have shrunk since the range was set
            descend(j, here);
        }
        z[j] = 0;
    }
};

std::vector<std::pair<ZVec, Rat>> search(const QMat& gram, const QVec& center, const Rat& bound,
                                         bool shrink, bool exclude_zero) {
    LdltResult f = ldlt(gram);
    BallSearch s(f.L, f.D, center, bound, shrink, exclude_zero);
    s.run();
    return std::move(s.found);
}

ClosestResult collect_minimizers(std::vector<std::pair<ZVec, Rat>> cand) {
    ClosestResult r;
    if (cand.empty()) throw std::logic_error("enumeration: empty candidate set");
    r.dist2 = cand[0].second;
    for (const auto& [z, n] : cand) r.dist2 = std::min(r.dist2, n);
    for (auto& [z, n] : cand)
        if (n == r.dist2) r.points.push_back(std::move(z));
    std::sort(r.points.begin(), r.points.end());
    return r;
}

}  // namespace

std::vector<ZVec> enumerate_in_ball(const QMat& gram, const QVec& center, const Rat& r2,
                                    bool exclude_zero) {
    if (center.size() != gram.m) throw std::invalid_argument("enumerate_in_ball: bad center");
    if (r2 < 0) return {};
    auto cand = search(gram, center, r2, false, exclude_zero);
    std::vector<ZVec> out;
    out.reserve(cand.size());
    for (auto& [z, n] : cand) out.push_back(std::move(z));
    std::sort(out.begin(), out.end());
    return out;
}

ClosestResult shortest_vectors(const QMat& gram) {
    if (gram.m == 0) throw std::invalid_argument("shortest_vectors: rank 0");
    Rat bound = gram(0, 0);
    for (std::size_t i = 1; i < gram.m; ++i) bound = std::min(bound, gram(i, i));
    QVec center(gram.m, Rat(0));
    return collect_minimizers(search(gram, center, bound, true, true));
}

ClosestResult closest_vectors(const QMat& gram, const QVec& target) {
    if (target.size() != gram.m) throw std::invalid_argument("closest_vectors: bad target");
    QVec diff(gram.m);
    for (std::size_t i = 0; i < gram.m; ++i) diff[i] = Rat(round_rat(target[i])) - target[i];
    Rat bound = q_dot(diff, q_mul_vec(gram, diff));
    return collect_minimizers(search(gram, target, bound, true, false));
}

ClosestResult coset_shortest(const QMat& gram, const ZVec& c) {
    if (c.size() != gram.m) throw std::invalid_argument("coset_shortest: bad coset vector");
    if (std::all_of(c.begin(), c.end(), [](const Int& e) { return e % 2 == 0; }))
        throw std::invalid_argument("coset_shortest: coset 2*Lambda has trivial minimizer 0");
    // Minimize (c + 2y)^T G (c + 2y) = 4 (y + c/2)^T G (y + c/2) over integer y.
    QVec target(gram.m);
    for (std::size_t i = 0; i < gram.m; ++i) target[i] = Rat(-c[i], Int(2));
    ClosestResult inner = closest_vectors(gram, target);
    ClosestResult r;
    r.dist2 = 4 * inner.dist2;
    r.points.reserve(inner.points.size());
    for (const auto& y : inner.points) {
        ZVec zv(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) zv[i] = c[i] + 2 * y[i];
        r.points.push_back(std::move(zv));
    }
    std::sort(r.points.begin(), r.points.end());
    return r;
}

}  // namespace vxc
