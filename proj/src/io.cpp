#include "gmoduli/io.hpp"

#include <algorithm>
#include <fstream>

namespace gmoduli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

int get_int(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer()) bad("missing integer field '" + key + "'");
  return j[key].get<int>();
}

std::vector<int> get_int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) bad(what + " must contain integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> get_table(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of rows");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) out.push_back(get_int_list(row, what + " row"));
  return out;
}

std::string expr_text(const Json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return std::to_string(j.get<double>());
  bad(what + " must be an expression string or a number");
}

int int_value(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<int>();
}

bool bool_value(const Json& j, const std::string& what) {
  if (!j.is_boolean()) bad(what + " must be a boolean");
  return j.get<bool>();
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    bad("cannot parse JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << value.dump(2) << "\n";
}

GroupoidData parse_groupoid_data(const Json& j) {
  if (!j.is_object()) bad("groupoid file must hold a JSON object");
  try {
    if (j.contains("pair")) return pair_groupoid(int_value(j["pair"], "'pair'")).data();
    if (j.contains("group")) {
      if (!j["group"].is_object() || !j["group"].contains("table"))
        bad("'group' must be an object with a 'table'");
      return group_as_groupoid(get_table(j["group"]["table"], "group table")).data();
    }
    if (j.contains("action")) {
      const Json& act = j["action"];
      if (!act.is_object() || !act.contains("group") || !act.contains("act"))
        bad("'action' needs 'group' and 'act'");
      if (!act["group"].is_object() || !act["group"].contains("table"))
        bad("'action.group' must be an object with a 'table'");
      auto rows = get_table(act["act"], "action table");
      if (act.contains("points") &&
          (rows.empty() || int_value(act["points"], "'points'") !=
                               static_cast<int>(rows.front().size())))
        bad("'points' disagrees with the action table");
      return action_groupoid(get_table(act["group"]["table"], "action group table"),
                             std::move(rows))
          .data();
    }
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }

  GroupoidData data;
  data.objects = get_int(j, "objects");
  if (!j.contains("arrows") || !j["arrows"].is_array()) bad("missing 'arrows' array");
  data.arrows.resize(j["arrows"].size());
  std::vector<char> seen(j["arrows"].size(), 0);
  for (const auto& a : j["arrows"]) {
    int id = get_int(a, "id");
    if (id < 0 || id >= static_cast<int>(data.arrows.size()) || seen[static_cast<size_t>(id)])
      bad("arrow ids must be a permutation of 0..n-1");
    seen[static_cast<size_t>(id)] = 1;
    data.arrows[static_cast<size_t>(id)] = Arrow{get_int(a, "src"), get_int(a, "tgt")};
  }
  if (!j.contains("identity")) bad("missing 'identity'");
  data.identity = get_int_list(j["identity"], "'identity'");
  if (!j.contains("inverse")) bad("missing 'inverse'");
  data.inverse = get_int_list(j["inverse"], "'inverse'");
  if (!j.contains("compose") || !j["compose"].is_array()) bad("missing 'compose' array");
  for (const auto& e : j["compose"]) {
    std::vector<int> triple = get_int_list(e, "compose entry");
    if (triple.size() != 3) bad("compose entries must be [g,h,gh] triples");
    data.compose.push_back({triple[0], triple[1], triple[2]});
  }
  return data;
}

FiniteGroupoid parse_groupoid(const Json& j) {
  try {
    return FiniteGroupoid(parse_groupoid_data(j));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

Json groupoid_to_json(const GroupoidData& data) {
  Json j;
  j["objects"] = data.objects;
  Json arrows = Json::array();
  for (size_t a = 0; a < data.arrows.size(); ++a) {
    Json entry;
    entry["id"] = a;
    entry["src"] = data.arrows[a].src;
    entry["tgt"] = data.arrows[a].tgt;
    arrows.push_back(entry);
  }
  j["arrows"] = arrows;
  j["identity"] = data.identity;
  j["inverse"] = data.inverse;
  Json compose = Json::array();
  for (const auto& e : data.compose) compose.push_back(Json::array({e.g, e.h, e.gh}));
  j["compose"] = compose;
  return j;
}

CWSurface parse_surface(const Json& j) {
  if (!j.is_object()) bad("surface file must hold a JSON object");
  try {
    if (j.contains("closed")) {
      int g = int_value(j["closed"], "'closed'");
      return g == 0 ? sphere_cw() : genus_g_cw(g);
    }
    if (j.contains("torus_grid")) return torus_grid(int_value(j["torus_grid"], "'torus_grid'"));
    if (j.contains("bordered")) {
      bool subdivide = j.contains("subdivide") && bool_value(j["subdivide"], "'subdivide'");
      return bordered_cw(int_value(j["bordered"], "'bordered'"), subdivide);
    }
    if (j.contains("cw")) {
      const Json& c = j["cw"];
      CWSurface out;
      out.vertices = get_int(c, "vertices");
      if (!c.contains("edges") || !c["edges"].is_array()) bad("cw surface needs 'edges'");
      for (const auto& e : c["edges"]) {
        std::vector<int> pair = get_int_list(e, "edge");
        if (pair.size() != 2) bad("edges must be [src,tgt] pairs");
        out.edges.emplace_back(pair[0], pair[1]);
      }
      if (!c.contains("faces") || !c["faces"].is_array()) bad("cw surface needs 'faces'");
      for (const auto& w : c["faces"]) out.faces.push_back(get_int_list(w, "face word"));
      if (c.contains("base")) out.base = int_value(c["base"], "'base'");
      if (c.contains("boundary_edges")) {
        out.boundary_edges = get_int_list(c["boundary_edges"], "'boundary_edges'");
        for (int e : out.boundary_edges) {
          if (e < 0 || e >= out.edge_count()) bad("boundary edge out of range");
          out.boundary_vertices.push_back(out.edges[static_cast<size_t>(e)].first);
          out.boundary_vertices.push_back(out.edges[static_cast<size_t>(e)].second);
        }
        std::sort(out.boundary_vertices.begin(), out.boundary_vertices.end());
        out.boundary_vertices.erase(
            std::unique(out.boundary_vertices.begin(), out.boundary_vertices.end()),
            out.boundary_vertices.end());
        out.boundary_components = 1;
      }
      validate_cw(out);
      return out;
    }
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  bad("surface file needs one of 'closed', 'bordered', 'torus_grid', 'cw'");
}

Subgroupoid parse_subgroupoid(const Json& j, const FiniteGroupoid& parent) {
  if (!j.is_object()) bad("subgroupoid file must hold a JSON object");
  try {
    if (j.contains("base") && bool_value(j["base"], "'base'")) return Subgroupoid::base(parent);
    if (j.contains("full") && bool_value(j["full"], "'full'")) return Subgroupoid::full(parent);
    if (j.contains("objects") && j.contains("arrows"))
      return Subgroupoid(parent, get_int_list(j["objects"], "'objects'"),
                         get_int_list(j["arrows"], "'arrows'"));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  bad("subgroupoid file needs 'base', 'full', or 'objects'+'arrows'");
}

LatticeMorphism parse_lattice_field(const Json& j) {
  if (!j.is_object() || !j.contains("vertex_map") || !j.contains("edge_map"))
    bad("field file needs 'vertex_map' and 'edge_map'");
  LatticeMorphism m;
  m.vertex_map = get_int_list(j["vertex_map"], "'vertex_map'");
  m.edge_map = get_int_list(j["edge_map"], "'edge_map'");
  return m;
}

Json lattice_field_to_json(const LatticeMorphism& m) {
  Json j;
  j["vertex_map"] = m.vertex_map;
  j["edge_map"] = m.edge_map;
  return j;
}

AlgebroidData parse_algebroid(const Json& j) {
  if (!j.is_object()) bad("algebroid file must hold a JSON object");
  try {
    if (j.contains("tangent")) return tangent_algebroid(int_value(j["tangent"], "'tangent'"));
    if (j.contains("so3") && bool_value(j["so3"], "'so3'"))
      return lie_algebra_algebroid(so3_structure_constants(), 3);
    if (j.contains("so3_lie_poisson") && bool_value(j["so3_lie_poisson"], "'so3_lie_poisson'"))
      return poisson_to_algebroid(so3_lie_poisson());
    if (j.contains("so3_lie_poisson_broken") &&
        bool_value(j["so3_lie_poisson_broken"], "'so3_lie_poisson_broken'"))
      return so3_lie_poisson_algebroid_broken();

    int dim_m = get_int(j, "dim_M");
    int rank_e = get_int(j, "rank_E");
    if (!j.contains("rho") || !j.contains("f")) bad("algebroid file needs 'rho' and 'f'");
    std::vector<std::vector<std::string>> rho;
    for (const auto& row : j["rho"]) {
      std::vector<std::string> r;
      for (const auto& cell : row) r.push_back(expr_text(cell, "rho entry"));
      rho.push_back(std::move(r));
    }
    std::vector<std::vector<std::vector<std::string>>> f;
    for (const auto& slab : j["f"]) {
      std::vector<std::vector<std::string>> s;
      for (const auto& row : slab) {
        std::vector<std::string> r;
        for (const auto& cell : row) r.push_back(expr_text(cell, "f entry"));
        s.push_back(std::move(r));
      }
      f.push_back(std::move(s));
    }
    return algebroid_from_exprs(dim_m, rank_e, rho, f);
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

PoissonData parse_poisson(const Json& j) {
  if (!j.is_object()) bad("poisson file must hold a JSON object");
  try {
    if (j.contains("so3_lie_poisson") && bool_value(j["so3_lie_poisson"], "'so3_lie_poisson'"))
      return so3_lie_poisson();
    int dim_m = get_int(j, "dim_M");
    if (!j.contains("alpha")) bad("poisson file needs 'alpha'");
    std::vector<std::vector<std::string>> alpha;
    for (const auto& row : j["alpha"]) {
      std::vector<std::string> r;
      for (const auto& cell : row) r.push_back(expr_text(cell, "alpha entry"));
      alpha.push_back(std::move(r));
    }
    return poisson_from_exprs(dim_m, alpha);
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

MorphismField parse_morphism_field(const Json& j) {
  if (!j.is_object() || !j.contains("grid")) bad("field file needs a 'grid'");
  const Json& gj = j["grid"];
  Grid2 grid;
  grid.n1 = get_int(gj, "n1");
  grid.n2 = get_int(gj, "n2");
  if (!gj.contains("h") || !gj["h"].is_number()) bad("grid needs a numeric 'h'");
  grid.h = gj["h"].get<double>();
  if (grid.h <= 0) bad("grid spacing must be positive");
  if (gj.contains("origin")) {
    if (!gj["origin"].is_array() || gj["origin"].size() != 2 || !gj["origin"][0].is_number() ||
        !gj["origin"][1].is_number())
      bad("'origin' must be a pair of numbers");
    grid.o1 = gj["origin"][0].get<double>();
    grid.o2 = gj["origin"][1].get<double>();
  }
  int dim_m = get_int(j, "dim_M");
  int rank_e = get_int(j, "rank_E");
  if (!j.contains("X") || !j.contains("j")) bad("field file needs 'X' and 'j'");
  std::vector<std::string> x_exprs;
  for (const auto& cell : j["X"]) x_exprs.push_back(expr_text(cell, "X entry"));
  std::vector<std::vector<std::string>> j_exprs;
  for (const auto& row : j["j"]) {
    std::vector<std::string> r;
    for (const auto& cell : row) r.push_back(expr_text(cell, "j entry"));
    j_exprs.push_back(std::move(r));
  }
  try {
    return sample_morphism_field(grid, dim_m, rank_e, x_exprs, j_exprs);
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

std::vector<double> parse_gauge_parameter(const Json& j, const Grid2& grid, int rank_e) {
  if (!j.is_object() || !j.contains("beta")) bad("gauge parameter file needs 'beta'");
  std::vector<std::string> exprs;
  for (const auto& cell : j["beta"]) exprs.push_back(expr_text(cell, "beta entry"));
  try {
    return sample_gauge_parameter(grid, rank_e, exprs);
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

}  // namespace gmoduli
