// Relevant-vector coset sweep: serial reference vs OpenMP kernel.
//
//   bench_parallel [--jobs N] [--reps R]
//
// Prints one row per lattice with both timings and the speedup, and fails
// (exit 1) if the two kernels ever disagree -- the benchmark doubles as an
// equivalence check on real workloads.

#include "vxc/voronoi.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

using namespace vxc;

namespace {

template <class F>
double time_best(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int jobs = 0;  // all cores
    int reps = 3;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc)
            jobs = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--reps") && i + 1 < argc)
            reps = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: bench_parallel [--jobs N] [--reps R]\n");
            return 2;
        }
    }

    std::vector<Lattice> lattices;
    lattices.push_back(root_lattice(RootFamily::Zd, 8));
    lattices.push_back(root_lattice(RootFamily::A, 7));
    lattices.push_back(root_lattice(RootFamily::D, 8));
    lattices.push_back(root_lattice(RootFamily::Dstar_scaled, 8));
    lattices.push_back(root_lattice(RootFamily::E8, 8));
    lattices.push_back(congruence_lattice(7, Int(3)));

    std::printf("coset sweep, %d repetition(s), best-of timing\n", reps);
    std::printf("%-12s %8s %12s %12s %9s\n", "lattice", "|F|", "serial [s]", "parallel [s]",
                "speedup");

    bool ok = true;
    for (Lattice& L : lattices) {
        RelevantVectorSet serial, parallel;
        double ts = time_best(reps, [&] { serial = relevant_vectors_serial(L); });
        RelevantOptions opt;
        opt.parallel = true;
        opt.jobs = jobs;
        double tp = time_best(reps, [&] { parallel = relevant_vectors(L, opt); });
        bool same = serial.vectors == parallel.vectors && serial.norms == parallel.norms;
        ok = ok && same;
        std::printf("%-12s %8zu %12.4f %12.4f %8.2fx%s\n", L.label.c_str(),
                    serial.vectors.size(), ts, tp, tp > 0 ? ts / tp : 0.0,
                    same ? "" : "  MISMATCH");
    }
    if (!ok) {
        std::fprintf(stderr, "serial and parallel kernels disagree\n");
        return 1;
    }
    return 0;
}
