#include "vxc/json_io.hpp"

#include <climits>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace vxc {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json rat_json(const Rat& q) { return rat_to_string(q); }

Rat rat_of_json(const Json& j) {
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    bad("expected a rational (\"p/q\" string or integer)");
}

Json int_json(const Int& v) {
    if (v >= LLONG_MIN && v <= LLONG_MAX) return v.convert_to<long long>();
    return v.str();
}

Int int_of_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    bad("expected an integer (number or decimal string)");
}

Json qvec_json(const QVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rat_json(x));
    return a;
}

QVec qvec_of_json(const Json& j) {
    if (!j.is_array()) bad("expected an array of rationals");
    QVec v;
    v.reserve(j.size());
    for (const Json& x : j) v.push_back(rat_of_json(x));
    return v;
}

Json qmat_json(const QMat& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.m; ++i) rows.push_back(qvec_json(a.row(i)));
    return rows;
}

QMat qmat_of_json(const Json& j) {
    if (!j.is_array()) bad("expected an array of matrix rows");
    std::vector<QVec> rows;
    for (const Json& r : j) rows.push_back(qvec_of_json(r));
    std::size_t n = rows.empty() ? 0 : rows[0].size();
    QMat a(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) bad("ragged matrix rows");
        for (std::size_t c = 0; c < n; ++c) a(i, c) = rows[i][c];
    }
    return a;
}

Json zvec_json(const ZVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(int_json(x));
    return a;
}

ZVec zvec_of_json(const Json& j) {
    if (!j.is_array()) bad("expected an array of integers");
    ZVec v;
    v.reserve(j.size());
    for (const Json& x : j) v.push_back(int_of_json(x));
    return v;
}

Json zmat_json(const ZMat& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.m; ++i) rows.push_back(zvec_json(a.row(i)));
    return rows;
}

ZMat zmat_of_json(const Json& j) {
    if (!j.is_array()) bad("expected an array of integer rows");
    std::vector<ZVec> rows;
    for (const Json& r : j) rows.push_back(zvec_of_json(r));
    std::size_t n = rows.empty() ? 0 : rows[0].size();
    ZMat a(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) bad("ragged matrix rows");
        for (std::size_t c = 0; c < n; ++c) a(i, c) = rows[i][c];
    }
    return a;
}

Json lattice_json(const Lattice& L) {
    Json j;
    j["label"] = L.label;
    j["rank"] = L.rank;
    j["gram"] = qmat_json(L.gram);
    if (L.has_embedding) j["embedding"] = qmat_json(L.basis);
    return j;
}

Lattice lattice_of_json(const Json& j) {
    const std::string label = j.contains("label") ? field(j, "label").get<std::string>() : "";
    if (j.contains("embedding")) {
        Lattice L = make_lattice(label, qmat_of_json(field(j, "embedding")));
        QMat gram = qmat_of_json(field(j, "gram"));
        if (gram != L.gram) bad("gram does not match the embedding");
        return L;
    }
    Lattice L = make_lattice_gram(label, qmat_of_json(field(j, "gram")));
    if (j.contains("rank") && field(j, "rank").get<std::size_t>() != L.rank)
        bad("rank does not match the gram matrix");
    return L;
}

Json hdesc_json(const HDesc& H) {
    Json j;
    j["dim"] = H.dim;
    j["A"] = qmat_json(H.A);
    j["b"] = qvec_json(H.b);
    j["E"] = qmat_json(H.E);
    j["f"] = qvec_json(H.f);
    return j;
}

HDesc hdesc_of_json(const Json& j) {
    HDesc H(field(j, "dim").get<std::size_t>());
    QMat A = qmat_of_json(field(j, "A"));
    QVec b = qvec_of_json(field(j, "b"));
    if (A.m != b.size()) bad("inequality sides disagree");
    for (std::size_t i = 0; i < A.m; ++i) H.add_ineq(A.row(i), b[i]);
    QMat E = qmat_of_json(field(j, "E"));
    QVec f = qvec_of_json(field(j, "f"));
    if (E.m != f.size()) bad("equation sides disagree");
    for (std::size_t i = 0; i < E.m; ++i) H.add_eq(E.row(i), f[i]);
    return H;
}

Json polytope_json(const Polytope& P) {
    Json j;
    j["dim"] = P.dim;
    if (P.h) j["h"] = hdesc_json(*P.h);
    if (P.v) {
        Json verts = Json::array();
        for (const QVec& x : *P.v) verts.push_back(qvec_json(x));
        j["v"] = verts;
    }
    return j;
}

Polytope polytope_of_json(const Json& j) {
    Polytope P;
    P.dim = field(j, "dim").get<std::size_t>();
    if (j.contains("h")) {
        P.h = hdesc_of_json(j.at("h"));
        if (P.h->dim != P.dim) bad("h-description dimension mismatch");
    }
    if (j.contains("v")) {
        std::vector<QVec> verts;
        for (const Json& x : j.at("v")) {
            verts.push_back(qvec_of_json(x));
            if (verts.back().size() != P.dim) bad("vertex dimension mismatch");
        }
        P.v = std::move(verts);
    }
    if (!P.h && !P.v) bad("polytope needs an h or v description");
    return P;
}

Json lift_json(const Lift& l) {
    Json j;
    j["q"] = polytope_json(l.q);
    Json proj;
    proj["matrix"] = qmat_json(l.proj.M);
    proj["offset"] = qvec_json(l.proj.t);
    j["proj"] = std::move(proj);
    if (l.target) j["target"] = polytope_json(*l.target);
    j["meta"] = l.note;
    if (!l.balas_blocks.empty()) {
        Json blocks = Json::array();
        for (const BalasBlock& b : l.balas_blocks) {
            Json jb;
            jb["yBegin"] = b.y_begin;
            jb["yDim"] = b.y_dim;
            jb["lambda"] = b.lambda;
            blocks.push_back(std::move(jb));
        }
        j["balasBlocks"] = std::move(blocks);
    }
    return j;
}

Lift lift_of_json(const Json& j) {
    Lift l;
    l.q = polytope_of_json(field(j, "q"));
    const Json& proj = field(j, "proj");
    l.proj.M = qmat_of_json(field(proj, "matrix"));
    l.proj.t = qvec_of_json(field(proj, "offset"));
    if (l.proj.M.n != l.q.dim || l.proj.t.size() != l.proj.M.m)
        bad("projection shape mismatch");
    if (j.contains("target")) l.target = polytope_of_json(j.at("target"));
    if (j.contains("meta")) l.note = j.at("meta").get<std::string>();
    if (j.contains("balasBlocks")) {
        for (const Json& jb : j.at("balasBlocks")) {
            BalasBlock b;
            b.y_begin = field(jb, "yBegin").get<std::size_t>();
            b.y_dim = field(jb, "yDim").get<std::size_t>();
            b.lambda = field(jb, "lambda").get<std::size_t>();
            if (b.y_begin + b.y_dim > l.q.dim || b.lambda >= l.q.dim)
                bad("balas block out of range");
            l.balas_blocks.push_back(b);
        }
    }
    return l;
}

Json lift_report_json(const LiftReport& rep) {
    Json j;
    j["exact"] = rep.exact;
    j["facetCount"] = rep.facet_count;
    Json missed = Json::array();
    for (const QVec& x : rep.missed_vertices) missed.push_back(qvec_json(x));
    j["missedVertices"] = std::move(missed);
    Json escaped = Json::array();
    for (const QVec& x : rep.escaped_vertices) escaped.push_back(qvec_json(x));
    j["escapedVertices"] = std::move(escaped);
    return j;
}

Json gadget_json(const GadgetInstance& g) {
    Json j;
    j["label"] = g.label;
    j["alphaSq"] = int_json(g.alpha_sq);
    j["h"] = zvec_json(g.h);
    j["directionBasis"] = qmat_json(g.direction_basis);
    if (g.k > 0) {
        j["k"] = g.k;
        j["m"] = g.m;
        j["A"] = qmat_json(g.A);
        j["b"] = qvec_json(g.b);
        j["X"] = zmat_json([&] {
            ZMat x(g.X.size(), g.k);
            for (std::size_t i = 0; i < g.X.size(); ++i)
                for (std::size_t c = 0; c < g.k; ++c) x(i, c) = g.X[i][c];
            return x;
        }());
    }
    Json xp = Json::array();
    for (const ZVec& y : g.Xprime) xp.push_back(zvec_json(y));
    j["Xprime"] = std::move(xp);
    j["lattice"] = lattice_json(g.lattice);
    j["ztBasis"] = zmat_json(g.zt_basis);
    j["p"] = qvec_json(g.p);
    j["defect"] = rat_json(g.defect);
    return j;
}

GadgetInstance gadget_of_raw_json(const Json& j) {
    QMat basis = qmat_of_json(field(j, "directionBasis"));
    QVec h = qvec_of_json(field(j, "h"));
    Int alpha_sq = int_of_json(field(j, "alphaSq"));
    return gadget_from_raw(basis, h, alpha_sq);
}

Json gadget_report_json(const GadgetReport& rep) {
    Json j;
    j["ok"] = rep.ok();
    j["closestOk"] = rep.closest_ok;
    j["faceOk"] = rep.face_ok;
    j["projectionOk"] = rep.projection_ok;
    j["distSq"] = rat_json(rep.dist_sq);
    j["closestCount"] = rep.closest_count;
    j["faceVertexCount"] = rep.face_vertex_count;
    auto zlist = [](const std::vector<ZVec>& vs) {
        Json a = Json::array();
        for (const ZVec& v : vs) a.push_back(zvec_json(v));
        return a;
    };
    auto qlist = [](const std::vector<QVec>& vs) {
        Json a = Json::array();
        for (const QVec& v : vs) a.push_back(qvec_json(v));
        return a;
    };
    j["unexpectedClosest"] = zlist(rep.unexpected_closest);
    j["missingClosest"] = zlist(rep.missing_closest);
    j["unexpectedFaceVertices"] = qlist(rep.unexpected_face_vertices);
    j["missingFaceVertices"] = qlist(rep.missing_face_vertices);
    j["badProjections"] = qlist(rep.bad_projections);
    return j;
}

Json suite_json_report(const SuiteResult& r) {
    Json j;
    j["pass"] = r.pass;
    Json opts;
    Json fams = Json::array();
    for (RootFamily f : r.options.families) fams.push_back(family_name(f));
    opts["families"] = std::move(fams);
    opts["maxD"] = r.options.max_d;
    opts["seed"] = r.options.seed;
    Json crits = Json::array();
    for (int c : r.options.criteria) crits.push_back(c);
    opts["criteria"] = std::move(crits);
    j["options"] = std::move(opts);
    Json rows = Json::array();
    for (const CriterionResult& c : r.criteria) {
        Json row;
        row["id"] = c.id;
        row["name"] = c.name;
        row["pass"] = c.pass;
        Json checks = Json::array();
        for (const std::string& line : c.lines) checks.push_back(line);
        row["checks"] = std::move(checks);
        rows.push_back(std::move(row));
    }
    j["criteria"] = std::move(rows);
    return j;
}

GraphInput parse_graph_text(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) bad("empty graph input");
    GraphInput g;
    if (text[first] == '{') {
        Json j = Json::parse(text);
        g.n = field(j, "n").get<std::size_t>();
        for (const Json& e : field(j, "edges")) {
            if (!e.is_array() || e.size() != 2) bad("edge entries must be [u, v] pairs");
            g.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
        }
        return g;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t max_node = 0;
    bool any = false;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::size_t u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v)) bad("edge line needs two node indices: \"" + line + "\"");
        std::string junk;
        if (ls >> junk) bad("trailing tokens on edge line: \"" + line + "\"");
        g.edges.emplace_back(u, v);
        max_node = std::max({max_node, u, v});
        any = true;
    }
    if (!any) bad("no edges: use the JSON form {n, edges} for edgeless graphs");
    g.n = max_node + 1;
    return g;
}

Lattice lattice_from_spec(const std::string& spec) {
    static const std::regex family_re("^(Z|A|D|E|Astar|Dstar)([0-9]+)$");
    static const std::regex cong_re("^cong:d=([0-9]+),a=([0-9]+)$");
    std::smatch m;
    if (std::regex_match(spec, m, family_re)) {
        std::size_t d = std::stoul(m[2]);
        const std::string fam = m[1];
        if (fam == "Z") return root_lattice(RootFamily::Zd, d);
        if (fam == "A") return root_lattice(RootFamily::A, d);
        if (fam == "D") return root_lattice(RootFamily::D, d);
        if (fam == "Astar") return root_lattice(RootFamily::Astar, d);
        if (fam == "Dstar") return root_lattice(RootFamily::Dstar_scaled, d);
        if (d == 6) return root_lattice(RootFamily::E6, 6);
        if (d == 7) return root_lattice(RootFamily::E7, 7);
        if (d == 8) return root_lattice(RootFamily::E8, 8);
        bad("exceptional families are E6, E7, E8");
    }
    if (std::regex_match(spec, m, cong_re))
        return congruence_lattice(std::stoul(m[1]), Int(std::string(m[2])));
    return lattice_of_json(read_json_file(spec));
}

QVec qvec_from_arg(const std::string& arg) {
    QVec v;
    std::string item;
    std::istringstream in(arg);
    while (std::getline(in, item, ',')) {
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) bad("empty coordinate in \"" + arg + "\"");
        v.push_back(rat_from_string(item.substr(a, b - a + 1)));
    }
    if (v.empty()) bad("empty vector argument");
    return v;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& doc) {
    const std::string text = dump_json(doc);
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) bad(path + ": cannot open for writing");
    out << text;
    if (!out) bad(path + ": write failed");
}

}  // namespace vxc
