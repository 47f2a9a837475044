// vxc -- exact lattice / Voronoi-cell / extended-formulation toolkit.
//
// One command per process. Exit codes: 0 success, 1 verification failure,
// 2 usage error (bad arguments or malformed input files). All JSON output is
// deterministically ordered, so identical inputs give byte-identical files.

#include "vxc/json_io.hpp"
#include "vxc/suite.hpp"
#include "vxc/voronoi.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace vxc;

namespace {

int g_exit = 0;

std::size_t env_max_rank() {
    const char* s = std::getenv("VXC_MAX_RANK");
    if (!s || !*s) return 12;
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end == s || *end || v == 0)
        throw std::invalid_argument("VXC_MAX_RANK must be a positive integer");
    return static_cast<std::size_t>(v);
}

// Parallelism is opt-in: --jobs 1 (the default) runs serial, 0 means all
// cores, N > 1 pins the team size.
RelevantOptions relevant_opts(int jobs) {
    RelevantOptions o;
    o.jobs = jobs;
    o.parallel = jobs != 1;
    o.max_rank = env_max_rank();
    return o;
}

void emit(const std::string& path, const Json& doc) { write_json_file(path, doc); }

// Accepts a point either in coefficient coordinates (length = rank) or, when
// the lattice has an embedding, in ambient coordinates (length = ambient
// dimension). Ambient points may sit off the lattice's linear span; the
// returned defect is the squared distance to the span, to be added back onto
// any in-span distance.
struct CoeffPoint {
    QVec coeffs;
    Rat defect;
};

CoeffPoint to_coefficients(const Lattice& L, const QVec& x) {
    CoeffPoint r;
    r.defect = 0;
    if (L.has_embedding && x.size() == L.ambient_dim()) {
        QVec rhs = q_mul_vec(L.basis, x);
        std::optional<QVec> c = q_solve(L.gram, rhs);
        if (!c) throw std::invalid_argument("degenerate Gram matrix");
        r.coeffs = std::move(*c);
        r.defect = q_dot(x, x) - q_dot(r.coeffs, q_mul_vec(L.gram, r.coeffs));
        return r;
    }
    if (x.size() == L.rank) {
        r.coeffs = x;
        return r;
    }
    throw std::invalid_argument("point length matches neither the rank (" +
                                std::to_string(L.rank) + ") nor the ambient dimension");
}

Json zvec_list_json(const std::vector<ZVec>& vs) {
    Json a = Json::array();
    for (const ZVec& v : vs) a.push_back(zvec_json(v));
    return a;
}

Json embedded_points_json(const Lattice& L, const std::vector<ZVec>& vs) {
    Json a = Json::array();
    for (const ZVec& v : vs) a.push_back(qvec_json(embed(L, q_from_z_vec(v))));
    return a;
}

int cmd_lattice_build(const std::string& spec, const std::string& out) {
    emit(out, lattice_json(lattice_from_spec(spec)));
    return 0;
}

int cmd_lattice_dual(const std::string& spec, const std::string& out) {
    emit(out, lattice_json(dual_lattice(lattice_from_spec(spec))));
    return 0;
}

int cmd_lattice_product(const std::string& s1, const std::string& s2, const std::string& out) {
    emit(out, lattice_json(product_lattice(lattice_from_spec(s1), lattice_from_spec(s2))));
    return 0;
}

int cmd_cvp(const std::string& spec, const std::string& target, const std::string& out) {
    Lattice L = lattice_from_spec(spec);
    QVec x = qvec_from_arg(target);
    CoeffPoint cp = to_coefficients(L, x);
    ClosestResult cr = closest_vectors(L.gram, cp.coeffs);
    Json j;
    j["lattice"] = L.label;
    j["target"] = qvec_json(x);
    j["coeffTarget"] = qvec_json(cp.coeffs);
    j["dist2"] = rat_json(cp.defect + cr.dist2);
    j["minimizers"] = zvec_list_json(cr.points);
    if (L.has_embedding) j["points"] = embedded_points_json(L, cr.points);
    emit(out, j);
    return 0;
}

int cmd_relevant(const std::string& spec, int jobs, const std::string& out) {
    Lattice L = lattice_from_spec(spec);
    RelevantVectorSet rv = relevant_vectors(L, relevant_opts(jobs));
    Json j;
    j["lattice"] = L.label;
    j["count"] = rv.vectors.size();
    j["vectors"] = zvec_list_json(rv.vectors);
    Json norms = Json::array();
    for (const Rat& q : rv.norms) norms.push_back(rat_json(q));
    j["norms"] = std::move(norms);
    if (L.has_embedding) j["embedded"] = embedded_points_json(L, rv.vectors);
    emit(out, j);
    return 0;
}

int cmd_cell(const std::string& spec, bool vertices, int jobs, const std::string& out) {
    Lattice L = lattice_from_spec(spec);
    RelevantOptions ropt = relevant_opts(jobs);
    Polytope P = voronoi_cell(L, ropt);
    if (vertices) ensure_v(P);
    Json j;
    j["lattice"] = L.label;
    j["cell"] = polytope_json(P);
    if (L.has_embedding) {
        j["embeddedCell"] = hdesc_json(voronoi_cell_embedded(L, ropt));
        if (vertices) {
            Json ev = Json::array();
            for (const QVec& v : *P.v) ev.push_back(qvec_json(embed(L, v)));
            j["embeddedVertices"] = std::move(ev);
        }
    }
    emit(out, j);
    return 0;
}

int cmd_polar_face(const std::string& spec, const std::string& point, const std::string& out) {
    Lattice L = lattice_from_spec(spec);
    CoeffPoint cp = to_coefficients(L, qvec_from_arg(point));
    Polytope F = polar_face(L, cp.coeffs);
    // polar_face returns one generator per closest vector; reduce to vertices
    if (F.v && !F.v->empty()) F = from_points(F.dim, *F.v);
    Json j;
    j["lattice"] = L.label;
    j["point"] = qvec_json(cp.coeffs);
    j["face"] = polytope_json(F);
    if (L.has_embedding) {
        Lattice D = dual_lattice(L);
        Json ev = Json::array();
        for (const QVec& v : ensure_v(F)) ev.push_back(qvec_json(embed(D, v)));
        j["embeddedVertices"] = std::move(ev);
    }
    emit(out, j);
    return 0;
}

int cmd_polytope(const std::string& op, const std::string& file, const std::string& out) {
    Polytope P = polytope_of_json(read_json_file(file));
    if (op == "dualize") {
        Polytope D = dualize(P);
        emit(out, polytope_json(D));
    } else if (op == "vertices") {
        ensure_v(P);
        emit(out, polytope_json(P));
    } else if (op == "facets") {
        ensure_h(P);
        emit(out, polytope_json(P));
    } else {  // slack
        SlackMatrix S = slack_matrix(P);
        SlackBounds b = slack_rank_bounds(S.S);
        Json j;
        j["rows"] = S.S.m;
        j["cols"] = S.S.n;
        j["S"] = qmat_json(S.S);
        j["rank"] = b.rank;
        j["rectangleCover"] = b.rectangle_cover;
        j["coverExact"] = b.cover_exact;
        emit(out, j);
    }
    return 0;
}

int cmd_lift_build(const std::string& family, std::size_t d, const std::string& a,
                   bool zonotope, const std::string& out) {
    if (family == "cong") {
        if (a.empty()) throw std::invalid_argument("lift build --family cong needs --a");
        CongruenceCellLift c = lift_congruence_cell(d, Int(a));
        Json j = lift_json(c.lift);
        Json labels = Json::array();
        for (const std::string& s : c.piece_labels) labels.push_back(s);
        j["pieceLabels"] = std::move(labels);
        Json red = Json::array();
        for (std::size_t i : c.redundant_pieces) red.push_back(i);
        j["redundantPieces"] = std::move(red);
        emit(out, j);
        return 0;
    }
    std::vector<RootFamily> fams = parse_family_list(family);
    if (fams.size() != 1) throw std::invalid_argument("lift build takes a single family");
    Lift l = (zonotope && fams[0] == RootFamily::Astar) ? lift_astar_zonotope(d)
                                                        : lift_root_cell(fams[0], d);
    emit(out, lift_json(l));
    return 0;
}

int cmd_lift_verify(const std::string& file, int jobs, const std::string& out) {
    Lift l = lift_of_json(read_json_file(file));
    LiftVerifyOptions opt;
    opt.jobs = jobs;
    opt.parallel = jobs != 1;
    LiftReport rep = verify_lift(l, opt);
    emit(out, lift_report_json(rep));
    return rep.exact ? 0 : 1;
}

int cmd_lift_union(const std::vector<std::string>& files, const std::string& out) {
    std::vector<Lift> members;
    members.reserve(files.size());
    for (const std::string& f : files) members.push_back(lift_of_json(read_json_file(f)));
    emit(out, lift_json(lift_union(members)));
    return 0;
}

int cmd_lift_face(const std::string& file, const std::string& normal, const std::string& rhs,
                  const std::string& out) {
    Lift l = lift_of_json(read_json_file(file));
    QVec c = qvec_from_arg(normal);
    QVec delta = qvec_from_arg(rhs);
    if (delta.size() != 1) throw std::invalid_argument("--rhs takes a single rational");
    emit(out, lift_json(lift_face(l, c, delta[0])));
    return 0;
}

int emit_gadget(const GadgetInstance& g, bool verify, const std::string& out) {
    Json j = gadget_json(g);
    int rc = 0;
    if (verify) {
        GadgetReport rep = verify_gadget(g);
        j["report"] = gadget_report_json(rep);
        rc = rep.ok() ? 0 : 1;
    }
    emit(out, j);
    return rc;
}

int cmd_gadget_stable_set(const std::string& graph, bool verify, const std::string& out) {
    GraphInput gi = parse_graph_text(read_text_file(graph));
    return emit_gadget(build_gadget(stable_set_instance(gi.n, gi.edges)), verify, out);
}

int cmd_gadget_correlation(std::size_t n, bool verify, const std::string& out) {
    return emit_gadget(build_gadget(correlation_instance(n)), verify, out);
}

int cmd_gadget_raw(const std::string& file, bool verify, const std::string& out) {
    // gadget_of_raw_json re-derives everything from (directionBasis, h,
    // alphaSq); a tampered document throws domain_error -> exit 1.
    GadgetInstance g = gadget_of_raw_json(read_json_file(file));
    return emit_gadget(g, verify, out);
}

std::string self_path(const char* argv0) {
    std::error_code ec;
    std::filesystem::path p = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) return p.string();
    return argv0;
}

int cmd_verify_suite(const std::string& families, std::size_t max_d, const std::string& criteria,
                     std::uint64_t seed, int jobs, const std::string& out,
                     const std::string& cli) {
    SuiteOptions so;
    if (!families.empty()) so.families = parse_family_list(families);
    so.max_d = max_d;
    so.seed = seed;
    so.jobs = jobs;
    so.cli_path = cli;
    if (!criteria.empty()) {
        std::istringstream in(criteria);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            int c = std::stoi(tok);
            if (c < 1 || c > 8) throw std::invalid_argument("criteria must be in 1..8");
            so.criteria.push_back(c);
        }
    }
    SuiteResult r = run_suite(so);
    std::cout << suite_text_report(r);
    if (!out.empty()) emit(out, suite_json_report(r));
    return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for lattices, Voronoi cells and polyhedral lifts"};
    app.require_subcommand(1);

    std::string out = "-";
    std::string spec, spec2, file, target, point, normal, rhs, family, a_str, families, criteria;
    std::vector<std::string> files;
    std::size_t d = 0, n = 0, max_d = 0;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool want_vertices = false, verify = false, zonotope = false;

    auto add_out = [&out](CLI::App* c) {
        c->add_option("-o,--output", out, "output file (default: stdout)");
    };

    // lattice build | dual | product
    CLI::App* lattice = app.add_subcommand("lattice", "construct lattices");
    lattice->require_subcommand(1);
    {
        CLI::App* c = lattice->add_subcommand("build", "lattice from a family spec or file");
        c->add_option("spec", spec, "family shorthand (A3, Dstar4, cong:d=4,a=2) or JSON file")
            ->required();
        add_out(c);
        c->callback([&] { g_exit = cmd_lattice_build(spec, out); });
    }
    {
        CLI::App* c = lattice->add_subcommand("dual", "dual lattice");
        c->add_option("spec", spec, "lattice spec")->required();
        add_out(c);
        c->callback([&] { g_exit = cmd_lattice_dual(spec, out); });
    }
    {
        CLI::App* c = lattice->add_subcommand("product", "orthogonal product");
        c->add_option("spec1", spec, "first lattice")->required();
        c->add_option("spec2", spec2, "second lattice")->required();
        add_out(c);
        c->callback([&] { g_exit = cmd_lattice_product(spec, spec2, out); });
    }

    // cvp
    {
        CLI::App* c = app.add_subcommand("cvp", "all closest lattice vectors to a point");
        c->add_option("lattice", spec, "lattice spec")->required();
        c->add_option("--target", target, "comma-separated rationals")->required();
        add_out(c);
        c->callback([&] { g_exit = cmd_cvp(spec, target, out); });
    }

    // voronoi relevant-vectors | cell | polar-face
    CLI::App* voronoi = app.add_subcommand("voronoi", "Voronoi cells and relevant vectors");
    voronoi->require_subcommand(1);
    {
        CLI::App* c = voronoi->add_subcommand("relevant-vectors", "facet vectors F(L)");
        c->add_option("lattice", spec, "lattice spec")->required();
        c->add_option("--jobs", jobs, "thread count (1 = serial, 0 = all cores)");
        add_out(c);
        c->callback([&] { g_exit = cmd_relevant(spec, jobs, out); });
    }
    {
        CLI::App* c = voronoi->add_subcommand("cell", "Voronoi cell H-description");
        c->add_option("lattice", spec, "lattice spec")->required();
        c->add_flag("--vertices", want_vertices, "also enumerate the vertices");
        c->add_option("--jobs", jobs, "thread count (1 = serial, 0 = all cores)");
        add_out(c);
        c->callback([&] { g_exit = cmd_cell(spec, want_vertices, jobs, out); });
    }
    {
        CLI::App* c = voronoi->add_subcommand("polar-face", "face of the dual cell exposed by a point");
        c->add_option("lattice", spec, "lattice spec")->required();
        c->add_option("--point", point, "comma-separated rationals")->required();
        add_out(c);
        c->callback([&] { g_exit = cmd_polar_face(spec, point, out); });
    }

    // polytope dualize | vertices | facets | slack
    CLI::App* polytope = app.add_subcommand("polytope", "exact polytope operations");
    polytope->require_subcommand(1);
    for (const char* op : {"dualize", "vertices", "facets", "slack"}) {
        CLI::App* c = polytope->add_subcommand(op);
        c->add_option("file", file, "polytope JSON file")->required();
        add_out(c);
        std::string opname = op;
        c->callback([&, opname] { g_exit = cmd_polytope(opname, file, out); });
    }
    polytope->get_subcommand("dualize")->description("polar dual inside lin(P)");
    polytope->get_subcommand("vertices")->description("vertex enumeration");
    polytope->get_subcommand("facets")->description("irredundant facets + affine hull");
    polytope->get_subcommand("slack")->description("slack matrix with rank / cover bounds");

    // lift build | verify | union | face
    CLI::App* lift = app.add_subcommand("lift", "extended formulations");
    lift->require_subcommand(1);
    {
        CLI::App* c = lift->add_subcommand("build", "structured lift for a family cell");
        c->add_option("--family", family, "Z, A, D, Astar, Dstar or cong")->required();
        c->add_option("--d", d, "dimension")->required();
        c->add_option("--a", a_str, "modulus for --family cong");
        c->add_flag("--zonotope", zonotope, "zonotope lift instead of the orbit lift (Astar)");
        add_out(c);
        c->callback([&] { g_exit = cmd_lift_build(family, d, a_str, zonotope, out); });
    }
    {
        CLI::App* c = lift->add_subcommand("verify", "certify proj(Q) == target by exact LP");
        c->add_option("file", file, "lift JSON file")->required();
        c->add_option("--jobs", jobs, "thread count (1 = serial, 0 = all cores)");
        add_out(c);
        c->callback([&] { g_exit = cmd_lift_verify(file, jobs, out); });
    }
    {
        CLI::App* c = lift->add_subcommand("union", "disjunctive lift of a union");
        c->add_option("files", files, "member lift JSON files")->required()->expected(-2);
        add_out(c);
        c->callback([&] { g_exit = cmd_lift_union(files, out); });
    }
    {
        CLI::App* c = lift->add_subcommand("face", "lift of an exposed face");
        c->add_option("file", file, "lift JSON file")->required();
        c->add_option("--normal", normal, "facet normal, comma-separated rationals")->required();
        c->add_option("--rhs", rhs, "right-hand side")->required();
        add_out(c);
        c->callback([&] { g_exit = cmd_lift_face(file, normal, rhs, out); });
    }

    // gadget stable-set | correlation | raw
    CLI::App* gadget = app.add_subcommand("gadget", "equal-norm reduction instances");
    gadget->require_subcommand(1);
    {
        CLI::App* c = gadget->add_subcommand("stable-set", "instance from a graph");
        c->add_option("graph", file, "edge-list file (\"u v\" lines) or JSON {n, edges}")
            ->required();
        c->add_flag("--verify", verify, "run the three consistency checks");
        add_out(c);
        c->callback([&] { g_exit = cmd_gadget_stable_set(file, verify, out); });
    }
    {
        CLI::App* c = gadget->add_subcommand("correlation", "correlation-polytope instance");
        c->add_option("--n", n, "number of items")->required();
        c->add_flag("--verify", verify, "run the three consistency checks");
        add_out(c);
        c->callback([&] { g_exit = cmd_gadget_correlation(n, verify, out); });
    }
    {
        CLI::App* c = gadget->add_subcommand("raw", "recover an instance from raw affine data");
        c->add_option("file", file, "gadget JSON file")->required();
        c->add_flag("--verify", verify, "run the three consistency checks");
        add_out(c);
        c->callback([&] { g_exit = cmd_gadget_raw(file, verify, out); });
    }

    // verify suite
    CLI::App* vrf = app.add_subcommand("verify", "cross-module verification");
    vrf->require_subcommand(1);
    {
        CLI::App* c = vrf->add_subcommand("suite", "run the eight-criterion suite");
        c->add_option("--families", families, "comma-separated subset of Z,A,D,Astar,Dstar,E8");
        c->add_option("--max-d", max_d, "clamp every per-check dimension cap");
        c->add_option("--criteria", criteria, "comma-separated subset of 1..8");
        c->add_option("--seed", seed, "seed for the randomized criteria");
        c->add_option("--jobs", jobs, "thread count (1 = serial, 0 = all cores)");
        c->add_option("-o,--output", out, "also write the JSON report here");
        c->callback([&] {
            std::string o = out == "-" ? std::string() : out;
            g_exit = cmd_verify_suite(families, max_d, criteria, seed, jobs, o,
                                      self_path(argv[0]));
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::domain_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_exit;
}
