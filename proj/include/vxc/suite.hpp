#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vxc/lattice.hpp"

namespace vxc {

/**
 * Cross-module verification suite.  Eight numbered criteria re-derive the
 * library's headline counts and identities from independent directions
 * (enumeration vs LP, construction vs membership, positive vs corrupted
 * inputs) and report one result per criterion.
 */
struct SuiteOptions {
    std::vector<RootFamily> families;  // empty = Z, A, D, Astar, Dstar, E8
    std::size_t max_d = 0;             // 0 = per-check defaults; otherwise clamps every d
    std::uint64_t seed = 1;            // drives the randomized criteria (5, 6, 8)
    int jobs = 0;                      // forwarded to the parallel kernels; 0 = default
    std::vector<int> criteria;         // empty = all of 1..8
    std::string cli_path;              // criterion 8 runs end-to-end trials against this
                                       // binary; empty = in-process detection only
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<std::string> lines;  // one line per check
    double seconds = 0.0;
};

struct SuiteResult {
    SuiteOptions options;
    std::vector<CriterionResult> criteria;
    bool pass = true;
};

SuiteResult run_suite(const SuiteOptions& opt = {});

/// Human-readable table, one block per criterion, timings included.
std::string suite_text_report(const SuiteResult& r);

/// "A,D,Astar" -> enumerators. Accepted names: Z, A, D, Astar, Dstar, E8.
std::vector<RootFamily> parse_family_list(const std::string& csv);
std::string family_name(RootFamily f);

}  // namespace vxc
