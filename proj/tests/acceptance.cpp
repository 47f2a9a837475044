// Acceptance gate: run the full eight-criterion verification suite with the
// default workload (all families, per-check dimension caps, seed 1), wire
// criterion 8 to the real binary, and enforce the per-criterion time budgets.
// Prints the detailed suite report followed by one verdict line per criterion.
#include "vxc/suite.hpp"

#include <cstdio>
#include <iostream>

using namespace vxc;

int main() {
    SuiteOptions opt;
    opt.seed = 1;
    opt.cli_path = VXC_CLI_PATH;  // criterion 8 drives rejection through the CLI

    SuiteResult r = run_suite(opt);
    std::cout << suite_text_report(r) << "\n";

    bool ok = !r.criteria.empty();
    for (const CriterionResult& c : r.criteria) {
        double budget = c.id == 1 ? 60.0 : c.id == 2 ? 120.0 : 600.0;
        bool in_time = c.seconds < budget;
        ok = ok && c.pass && in_time;
        std::printf("criterion %d (%s): %s", c.id, c.name.c_str(),
                    c.pass && in_time ? "PASS" : "FAIL");
        if (!in_time) std::printf("  [over the %.0f s budget at %.2f s]", budget, c.seconds);
        std::printf("\n");
    }
    std::printf("acceptance: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}
