#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gmoduli/algnum.hpp"
#include "gmoduli/groupoid.hpp"
#include "gmoduli/lattice.hpp"
#include "gmoduli/surface.hpp"

namespace gmoduli {

/// Reports preserve key insertion order so that identical runs produce
/// byte-identical files.
using Json = nlohmann::ordered_json;

/// Malformed input files and schema violations.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& value);

/// Groupoid files: either explicit tables
///   {"objects": n, "arrows": [{"id","src","tgt"},...], "identity": [...],
///    "inverse": [...], "compose": [[g,h,gh],...]}
/// or one of the shorthands {"pair": n}, {"group": {"table": [[...]]}},
/// {"action": {"group": {"table": [[...]]}, "points": n, "act": [[...]]}}.
GroupoidData parse_groupoid_data(const Json& j);
FiniteGroupoid parse_groupoid(const Json& j);
Json groupoid_to_json(const GroupoidData& data);

/// Surface files: {"closed": g}, {"bordered": g[, "subdivide": true]},
/// {"torus_grid": n}, or
/// {"cw": {"vertices", "edges": [[s,t],...], "faces": [[letters],...],
///         "base", "boundary_edges": [...]}}.
/// Face letters are signed 1-based edge ids.
CWSurface parse_surface(const Json& j);

/// Subgroupoid files: {"base": true}, {"full": true}, or
/// {"objects": [...], "arrows": [...]}.
Subgroupoid parse_subgroupoid(const Json& j, const FiniteGroupoid& parent);

/// {"vertex_map": [...], "edge_map": [...]}
LatticeMorphism parse_lattice_field(const Json& j);
Json lattice_field_to_json(const LatticeMorphism& m);

/// {"dim_M": m, "rank_E": r, "rho": [[expr]], "f": [[[expr]]]} with
/// expressions in x1..xm (numbers allowed). The named forms
/// {"tangent": n}, {"so3": true}, {"so3_lie_poisson": true},
/// {"so3_lie_poisson_broken": true} are also accepted.
AlgebroidData parse_algebroid(const Json& j);

/// {"dim_M": m, "alpha": [[expr]]} or {"so3_lie_poisson": true}.
PoissonData parse_poisson(const Json& j);

/// {"grid": {"n1", "n2", "h", "origin": [o1,o2]}, "dim_M", "rank_E",
///  "X": [expr per mu], "j": [[expr, expr] per A]} in variables u1, u2.
MorphismField parse_morphism_field(const Json& j);

/// {"beta": [expr per A]} sampled on the given grid.
std::vector<double> parse_gauge_parameter(const Json& j, const Grid2& grid, int rank_e);

}  // namespace gmoduli
