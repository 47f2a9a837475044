// End-to-end tests of the vxc binary. VXC_CLI_PATH is injected by the build;
// every case shells out with popen and inspects exit code + combined output.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vxc/gadgets.hpp"
#include "vxc/json_io.hpp"
#include "vxc/lifts.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace vxc;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run_raw(const std::string& cmd) {
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

Run cli(const std::string& args) { return run_raw(std::string(VXC_CLI_PATH) + " " + args); }

Run cli_env(const std::string& env, const std::string& args) {
    return run_raw(env + " " + std::string(VXC_CLI_PATH) + " " + args);
}

fs::path work() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("vxc_cli_" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& f, const std::string& text) {
    std::ofstream out(f, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("usage surface and exit codes") {
    CHECK(cli("--help").code == 0);
    CHECK(cli("lattice --help").code == 0);
    CHECK(cli("").code == 2);                // a subcommand is required
    CHECK(cli("lattice").code == 2);         // so is its verb
    CHECK(cli("--bogus").code == 2);
    CHECK(cli("lattice build").code == 2);   // missing spec
    Run r = cli("lattice build Q7");         // neither a family nor a readable file
    CHECK(r.code == 2);
    CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("lattice build is deterministic and round-trips as a spec") {
    fs::path f1 = work() / "a3_1.json";
    fs::path f2 = work() / "a3_2.json";
    CHECK(cli("lattice build A3 -o " + f1.string()).code == 0);
    CHECK(cli("lattice build A3 -o " + f2.string()).code == 0);
    CHECK(slurp(f1) == slurp(f2));

    Json j = read_json_file(f1.string());
    CHECK(j["label"] == "A3");
    CHECK(j["rank"] == 3);

    // the emitted document is itself a valid lattice spec
    Run r = cli("cvp " + f1.string() + " --target 0,0,0");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["dist2"] == "0");

    Json c = Json::parse(cli("lattice build cong:d=3,a=2").out);
    CHECK(c["label"] == "cong_d3_a2");
    CHECK(c["rank"] == 3);

    CHECK(cli("lattice dual Dstar3").code == 0);
    Json p = Json::parse(cli("lattice product A1 A1").out);
    CHECK(p["label"] == "A1xA1");
    CHECK(p["rank"] == 2);
}

TEST_CASE("cvp lists every minimizer") {
    Run r = cli("cvp Z2 --target 1/2,1/2");
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["dist2"] == "1/2");
    CHECK(j["minimizers"].size() == 4);

    // ambient coordinates: (1,0,0) is equidistant from three A2 points
    Run a = cli("cvp A2 --target 1,0,0");
    CHECK(a.code == 0);
    Json aj = Json::parse(a.out);
    CHECK(aj["dist2"] == "1");
    CHECK(aj["minimizers"].size() == 3);

    CHECK(cli("cvp Z2 --target 1/2").code == 2);  // wrong length
}

TEST_CASE("relevant vectors, the jobs flag and the rank cap") {
    Run r = cli("voronoi relevant-vectors A2");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["count"] == 6);

    // parallel and serial runs print identical bytes
    Run s = cli("voronoi relevant-vectors E8");
    Run p = cli("voronoi relevant-vectors E8 --jobs 0");
    CHECK(s.code == 0);
    CHECK(p.code == 0);
    CHECK(s.out == p.out);
    CHECK(Json::parse(s.out)["count"] == 240);

    Run capped = cli_env("VXC_MAX_RANK=2", "voronoi relevant-vectors A3");
    CHECK(capped.code == 1);
    CHECK(capped.out.find("verification failure") != std::string::npos);

    CHECK(cli_env("VXC_MAX_RANK=zero", "voronoi relevant-vectors A2").code == 2);
}

TEST_CASE("voronoi cell output is byte-stable") {
    Run a = cli("voronoi cell A2 --vertices");
    Run b = cli("voronoi cell A2 --vertices");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j["cell"]["v"].size() == 6);
    CHECK(j["cell"]["h"]["A"].size() == 6);
    CHECK(j["embeddedVertices"].size() == 6);
}

TEST_CASE("polar face of a deep hole and of an interior point") {
    Run r = cli("voronoi polar-face Z2 --point 1/2,1/2");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["embeddedVertices"].size() == 2);

    Run in = cli("voronoi polar-face Z2 --point 1/10,0");
    CHECK(in.code == 0);
    CHECK(Json::parse(in.out)["embeddedVertices"].size() == 0);

    CHECK(cli("voronoi polar-face Z2 --point 3/2,0").code == 1);
}

TEST_CASE("polytope subcommands work on files") {
    fs::path sq = work() / "square.json";
    write_json_file(sq.string(), polytope_json(make_cube(2, Rat(1))));

    Run r = cli("polytope slack " + sq.string());
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["rows"] == 4);
    CHECK(j["cols"] == 4);
    CHECK(j["rank"] == 3);
    CHECK(j["rectangleCover"] == 4);
    CHECK(j["coverExact"] == true);

    fs::path dual = work() / "dual.json";
    CHECK(cli("polytope dualize " + sq.string() + " -o " + dual.string()).code == 0);
    Run v = cli("polytope vertices " + dual.string());
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out)["v"].size() == 4);
    CHECK(cli("polytope facets " + dual.string()).code == 0);

    CHECK(cli("polytope slack " + (work() / "absent.json").string()).code == 2);
}

TEST_CASE("lift build / face / union / verify pipeline") {
    fs::path lf = work() / "a3_cell.json";
    CHECK(cli("lift build --family A --d 3 -o " + lf.string()).code == 0);
    Run rep = cli("lift verify " + lf.string());
    CHECK(rep.code == 0);
    Json j = Json::parse(rep.out);
    CHECK(j["exact"] == true);
    CHECK(j["facetCount"] == 8);

    // an exposed edge of a cube lift still verifies after a file round-trip
    fs::path cf = work() / "cube_lift.json";
    write_json_file(cf.string(), lift_json(lift_cube(2, Rat(1))));
    fs::path ff = work() / "face_lift.json";
    CHECK(cli("lift face " + cf.string() + " --normal 1,0 --rhs 1 -o " + ff.string()).code == 0);
    CHECK(cli("lift verify " + ff.string()).code == 0);

    // Balas union of two members (the cross is inside the cube)
    fs::path xf = work() / "cross_lift.json";
    write_json_file(xf.string(), lift_json(lift_crosspolytope(2, Rat(1))));
    fs::path uf = work() / "union_lift.json";
    CHECK(cli("lift union " + cf.string() + " " + xf.string() + " -o " + uf.string()).code == 0);
    CHECK(Json::parse(slurp(uf))["balasBlocks"].size() == 2);
    CHECK(cli("lift verify " + uf.string()).code == 0);
    CHECK(cli("lift union " + cf.string()).code == 2);  // needs at least two members

    // deterministic piece structure of a congruence lift
    Run l1 = cli("lift build --family cong --d 2 --a 2");
    Run l2 = cli("lift build --family cong --d 2 --a 2");
    CHECK(l1.code == 0);
    CHECK(l1.out == l2.out);
    Json lj = Json::parse(l1.out);
    CHECK(lj["pieceLabels"].size() == 3);
    CHECK(lj["redundantPieces"].size() == 1);
    CHECK(cli("lift build --family cong --d 2").code == 2);  // --a required

    // a corrupted projection fails verification with witnesses
    Lift bad = lift_root_cell(RootFamily::A, 3);
    bad.proj.M(0, 0) += 1;
    fs::path bf = work() / "bad_lift.json";
    write_json_file(bf.string(), lift_json(bad));
    Run br = cli("lift verify " + bf.string());
    CHECK(br.code == 1);
    Json bj = Json::parse(br.out);
    CHECK(bj["exact"] == false);
    CHECK(bj["missedVertices"].size() + bj["escapedVertices"].size() > 0);
}

TEST_CASE("gadget commands build, verify and reject tampering") {
    fs::path g5 = work() / "c5.edges";
    spit(g5, "0 1\n1 2\n2 3\n3 4\n0 4\n");
    fs::path gj = work() / "c5_gadget.json";
    Run r = cli("gadget stable-set " + g5.string() + " --verify -o " + gj.string());
    CHECK(r.code == 0);
    Json j = read_json_file(gj.string());
    CHECK(j["X"].size() == 11);
    CHECK(j["report"]["ok"] == true);

    // the raw triple in the document reconstructs the same instance
    Run raw = cli("gadget raw " + gj.string() + " --verify");
    CHECK(raw.code == 0);
    CHECK(Json::parse(raw.out)["report"]["ok"] == true);

    Run c = cli("gadget correlation --n 2 --verify");
    CHECK(c.code == 0);
    CHECK(Json::parse(c.out)["report"]["faceVertexCount"] == 4);

    // bump alphaSq: every subspace point now has the wrong number of ones
    GadgetInstance g = build_gadget(stable_set_instance(2, {{0, 1}}));
    Json doc = gadget_json(g);
    doc["alphaSq"] = int_json(g.alpha_sq + 1);
    fs::path tf = work() / "tampered.json";
    write_json_file(tf.string(), doc);
    Run bad = cli("gadget raw " + tf.string());
    CHECK(bad.code == 1);
    bool informative = bad.out.find("equal-norm") != std::string::npos ||
                       bad.out.find("0/1 points") != std::string::npos;
    CHECK(informative);

    CHECK(cli("gadget correlation --n 20").code == 2);
}

TEST_CASE("verify suite subcommand") {
    fs::path a1 = work() / "suite1.json";
    fs::path a2 = work() / "suite2.json";
    Run r = cli("verify suite --criteria 4 --max-d 2 -o " + a1.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("[4]") != std::string::npos);
    CHECK(r.out.find("result: PASS") != std::string::npos);

    Json j = read_json_file(a1.string());
    CHECK(j["pass"] == true);
    CHECK(j["criteria"].size() == 1);
    CHECK(j["criteria"][0]["id"] == 4);

    // the JSON artifact is byte-deterministic even though timings vary
    Run r2 = cli("verify suite --criteria 4 --max-d 2 -o " + a2.string());
    CHECK(r2.code == 0);
    CHECK(slurp(a1) == slurp(a2));

    CHECK(cli("verify suite --criteria 9").code == 2);
}
