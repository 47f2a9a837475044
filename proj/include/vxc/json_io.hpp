#pragma once

#include "vxc/gadgets.hpp"
#include "vxc/lifts.hpp"
#include "vxc/suite.hpp"

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace vxc {

/// Insertion-ordered documents so identical inputs dump byte-identically.
using Json = nlohmann::ordered_json;

// Scalars: rationals serialize as "p/q" strings with "/q" omitted for
// integers; lattice integers as JSON numbers while they fit, strings beyond.
Json rat_json(const Rat& q);
Rat rat_of_json(const Json& j);
Json int_json(const Int& v);
Int int_of_json(const Json& j);

Json qvec_json(const QVec& v);
QVec qvec_of_json(const Json& j);
Json qmat_json(const QMat& a);
QMat qmat_of_json(const Json& j);
Json zvec_json(const ZVec& v);
ZVec zvec_of_json(const Json& j);
Json zmat_json(const ZMat& a);
ZMat zmat_of_json(const Json& j);

// {rank, gram, embedding?, label}
Json lattice_json(const Lattice& L);
Lattice lattice_of_json(const Json& j);

// {dim, h?: {A, b, E, f}, v?}
Json hdesc_json(const HDesc& H);
HDesc hdesc_of_json(const Json& j);
Json polytope_json(const Polytope& P);
Polytope polytope_of_json(const Json& j);

// {q, proj: {matrix, offset}, target?, meta, balasBlocks?}
Json lift_json(const Lift& l);
Lift lift_of_json(const Json& j);
Json lift_report_json(const LiftReport& rep);

// Full instance document; gadget_of_raw_json reads back only the raw triple
// (directionBasis, h, alphaSq) and re-derives everything through the
// recovery pipeline, so a tampered document fails verification rather than
// being trusted.
Json gadget_json(const GadgetInstance& g);
GadgetInstance gadget_of_raw_json(const Json& j);
Json gadget_report_json(const GadgetReport& rep);

// {pass, options, criteria: [{id, name, pass, checks}]}. Timings live in the
// text report only so identical runs dump byte-identically.
Json suite_json_report(const SuiteResult& r);

struct GraphInput {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Plain edge-list lines "u v" (node count inferred, '#' comments allowed)
/// or a JSON object {n, edges: [[u,v], ...]}.
GraphInput parse_graph_text(const std::string& text);

/// Family shorthands "Z3" / "A3" / "D4" / "E6|E7|E8" / "Astar4" / "Dstar4" /
/// "cong:d=4,a=2", or a path to a lattice JSON file.
Lattice lattice_from_spec(const std::string& spec);

/// Comma-separated rationals: "1/2,-3,0".
QVec qvec_from_arg(const std::string& arg);

Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
/// Canonical dump: two-space indent, trailing newline.
std::string dump_json(const Json& doc);
/// path "-" writes to stdout.
void write_json_file(const std::string& path, const Json& doc);

}  // namespace vxc
