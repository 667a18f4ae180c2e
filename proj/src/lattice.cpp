#include "gmoduli/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gmoduli/parallel.hpp"

namespace gmoduli {

std::string FlatnessReport::summary() const {
  if (pass()) return "pass";
  std::ostringstream out;
  for (const auto& e : structural_errors) out << "structural: " << e << "\n";
  for (const auto& v : violations) {
    const char* kind = v.kind == FlatnessViolation::Kind::Face ? "face" : "edge";
    out << kind << " " << v.index << ": " << v.detail << "\n";
  }
  return out.str();
}

FlatnessReport check_flatness(const CWSurface& c, const LatticeMorphism& m,
                              const FiniteGroupoid& g) {
  FlatnessReport rep;
  if (static_cast<int>(m.vertex_map.size()) != c.vertices)
    rep.structural_errors.push_back("vertex_map size != vertex count");
  if (static_cast<int>(m.edge_map.size()) != c.edge_count())
    rep.structural_errors.push_back("edge_map size != edge count");
  for (int x : m.vertex_map)
    if (x < 0 || x >= g.objects()) {
      rep.structural_errors.push_back("vertex_map entry out of range");
      break;
    }
  for (int a : m.edge_map)
    if (a < 0 || a >= g.arrow_count()) {
      rep.structural_errors.push_back("edge_map entry out of range");
      break;
    }
  if (!rep.structural_errors.empty()) return rep;

  bool anchored = true;
  for (int e = 0; e < c.edge_count(); ++e) {
    auto [u, v] = c.edges[static_cast<size_t>(e)];
    int a = m.edge_map[static_cast<size_t>(e)];
    if (g.src(a) != m.vertex_map[static_cast<size_t>(u)]) {
      rep.violations.push_back({FlatnessViolation::Kind::EdgeSource, e,
                                "source of edge arrow disagrees with the vertex object"});
      anchored = false;
    }
    if (g.tgt(a) != m.vertex_map[static_cast<size_t>(v)]) {
      rep.violations.push_back({FlatnessViolation::Kind::EdgeTarget, e,
                                "target of edge arrow disagrees with the vertex object"});
      anchored = false;
    }
  }
  if (!anchored) return rep;

  for (int fi = 0; fi < c.face_count(); ++fi) {
    const auto& word = c.faces[static_cast<size_t>(fi)];
    if (word.empty()) continue;
    int value = evaluate_word(g, m, word);
    int start = m.vertex_map[static_cast<size_t>(letter_tail(c, word.front()))];
    if (value != g.identity(start))
      rep.violations.push_back({FlatnessViolation::Kind::Face, fi,
                                "face word composes to arrow " + std::to_string(value) +
                                    ", not the identity"});
  }
  return rep;
}

int evaluate_word(const FiniteGroupoid& g, const LatticeMorphism& m,
                  std::span<const int> word) {
  if (word.empty()) throw std::invalid_argument("evaluate_word: empty word");
  int acc = -1;
  for (int letter : word) {
    int a = m.edge_map[static_cast<size_t>(letter_index(letter))];
    if (letter_reversed(letter)) a = g.inverse(a);
    acc = (acc == -1) ? a : g.compose(a, acc);
    if (acc == -1) throw std::logic_error("evaluate_word: word does not chain under the field");
  }
  return acc;
}

LatticeMorphism apply_gauge(const CWSurface& c, const FiniteGroupoid& g,
                            const LatticeMorphism& m, const GaugeElement& phi) {
  if (static_cast<int>(phi.phi.size()) != c.vertices)
    throw std::invalid_argument("apply_gauge: phi size != vertex count");
  for (int v = 0; v < c.vertices; ++v) {
    int a = phi.phi[static_cast<size_t>(v)];
    if (a < 0 || a >= g.arrow_count() || g.src(a) != m.vertex_map[static_cast<size_t>(v)])
      throw std::invalid_argument("apply_gauge: phi is not anchored at vertex " +
                                  std::to_string(v));
  }
  LatticeMorphism out;
  out.vertex_map.resize(m.vertex_map.size());
  out.edge_map.resize(m.edge_map.size());
  for (int v = 0; v < c.vertices; ++v)
    out.vertex_map[static_cast<size_t>(v)] = g.tgt(phi.phi[static_cast<size_t>(v)]);
  for (int e = 0; e < c.edge_count(); ++e) {
    auto [u, v] = c.edges[static_cast<size_t>(e)];
    int a = m.edge_map[static_cast<size_t>(e)];
    out.edge_map[static_cast<size_t>(e)] =
        g.compose(g.compose(phi.phi[static_cast<size_t>(v)], a),
                  g.inverse(phi.phi[static_cast<size_t>(u)]));
  }
  return out;
}

GaugeElement compose_gauge(const FiniteGroupoid& g, const GaugeElement& later,
                           const GaugeElement& earlier) {
  if (later.phi.size() != earlier.phi.size())
    throw std::invalid_argument("compose_gauge: size mismatch");
  GaugeElement out;
  out.phi.resize(later.phi.size());
  for (size_t v = 0; v < later.phi.size(); ++v) {
    int composed = g.compose(later.phi[v], earlier.phi[v]);
    if (composed == -1) throw std::invalid_argument("compose_gauge: factors not composable");
    out.phi[v] = composed;
  }
  return out;
}

namespace {

struct EnumerationPlan {
  std::vector<int> edge_order;           // edge ids, tree edges first
  std::vector<char> is_tree_edge;        // by edge id
  std::vector<std::vector<int>> faces_closing_at;  // by position in edge_order
};

EnumerationPlan make_plan(const CWSurface& c) {
  EnumerationPlan plan;
  SpanningTree tree = spanning_tree(c);
  plan.is_tree_edge = tree.in_tree;
  plan.edge_order = tree.tree_edges;
  for (int e : tree.loop_edges) plan.edge_order.push_back(e);

  std::vector<int> position_of(c.edges.size(), -1);
  for (size_t p = 0; p < plan.edge_order.size(); ++p)
    position_of[static_cast<size_t>(plan.edge_order[p])] = static_cast<int>(p);

  plan.faces_closing_at.assign(plan.edge_order.size() + 1, {});
  for (int fi = 0; fi < c.face_count(); ++fi) {
    const auto& word = c.faces[static_cast<size_t>(fi)];
    if (word.empty()) continue;  // no constraint
    int last = 0;
    for (int letter : word)
      last = std::max(last, position_of[static_cast<size_t>(letter_index(letter))]);
    plan.faces_closing_at[static_cast<size_t>(last)].push_back(fi);
  }
  return plan;
}

long long pow_clamped(long long base, int exp, long long cap) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / std::max<long long>(base, 1)) return cap + 1;
    v *= base;
  }
  return v;
}

class Enumerator {
public:
  Enumerator(const CWSurface& c, const FiniteGroupoid& g, const EnumerateOptions& opts,
             const EnumerationPlan& plan)
      : c_(c), g_(g), opts_(opts), plan_(plan) {}

  // Candidate arrows for the edge at `pos` given the partial state. Tree
  // edges may be discovered against their orientation, so either endpoint
  // can be the undetermined one.
  std::vector<int> candidates(const LatticeMorphism& state, int pos) const {
    int e = plan_.edge_order[static_cast<size_t>(pos)];
    auto [u, v] = c_.edges[static_cast<size_t>(e)];
    int ou = state.vertex_map[static_cast<size_t>(u)];
    int ov = state.vertex_map[static_cast<size_t>(v)];
    std::vector<int> out;
    if (opts_.gauge_fixed && plan_.is_tree_edge[static_cast<size_t>(e)]) {
      out.push_back(g_.identity(ou >= 0 ? ou : ov));
      return out;
    }
    const std::vector<int>& pool = (ou >= 0 && ov >= 0) ? g_.arrows_between(ou, ov)
                                   : ou >= 0            ? g_.arrows_from(ou)
                                                        : g_.arrows_into(ov);
    for (int a : pool) {
      if (opts_.boundary) {
        if (c_.is_boundary_edge(e) && !opts_.boundary->has_arrow(a)) continue;
        if (ov < 0 && c_.is_boundary_vertex(v) && !opts_.boundary->has_object(g_.tgt(a)))
          continue;
        if (ou < 0 && c_.is_boundary_vertex(u) && !opts_.boundary->has_object(g_.src(a)))
          continue;
      }
      out.push_back(a);
    }
    return out;
  }

  void extend(LatticeMorphism& state, int pos, std::vector<LatticeMorphism>& out) const {
    if (pos == static_cast<int>(plan_.edge_order.size())) {
      out.push_back(state);
      return;
    }
    int fresh = fresh_vertex(state, pos);
    for (int a : candidates(state, pos)) {
      place(state, pos, a, fresh);
      if (faces_hold(state, pos)) extend(state, pos + 1, out);
      unplace(state, pos, fresh);
    }
  }

  // the endpoint still unassigned, or -1 when both are known
  int fresh_vertex(const LatticeMorphism& state, int pos) const {
    int e = plan_.edge_order[static_cast<size_t>(pos)];
    auto [u, v] = c_.edges[static_cast<size_t>(e)];
    if (state.vertex_map[static_cast<size_t>(u)] < 0) return u;
    if (state.vertex_map[static_cast<size_t>(v)] < 0) return v;
    return -1;
  }

  void place(LatticeMorphism& state, int pos, int arrow, int fresh) const {
    int e = plan_.edge_order[static_cast<size_t>(pos)];
    state.edge_map[static_cast<size_t>(e)] = arrow;
    if (fresh >= 0)
      state.vertex_map[static_cast<size_t>(fresh)] =
          fresh == c_.edges[static_cast<size_t>(e)].first ? g_.src(arrow) : g_.tgt(arrow);
  }

  void unplace(LatticeMorphism& state, int pos, int fresh) const {
    int e = plan_.edge_order[static_cast<size_t>(pos)];
    state.edge_map[static_cast<size_t>(e)] = -1;
    if (fresh >= 0) state.vertex_map[static_cast<size_t>(fresh)] = -1;
  }

  bool faces_hold(const LatticeMorphism& state, int pos) const {
    for (int fi : plan_.faces_closing_at[static_cast<size_t>(pos)]) {
      const auto& word = c_.faces[static_cast<size_t>(fi)];
      int value = evaluate_word(g_, state, word);
      int start = state.vertex_map[static_cast<size_t>(letter_tail(c_, word.front()))];
      if (value != g_.identity(start)) return false;
    }
    return true;
  }

  const CWSurface& c_;
  const FiniteGroupoid& g_;
  const EnumerateOptions& opts_;
  const EnumerationPlan& plan_;
};

}  // namespace

std::vector<LatticeMorphism> enumerate_flat(const CWSurface& c, const FiniteGroupoid& g,
                                            const EnumerateOptions& opts) {
  validate_cw(c);
  if (opts.boundary && opts.gauge_fixed)
    throw std::invalid_argument("enumerate_flat: gauge fixing under boundary conditions "
                                "is not supported");
  EnumerationPlan plan = make_plan(c);

  int free_edges = c.edge_count();
  if (opts.gauge_fixed)
    free_edges -= static_cast<int>(std::count(plan.is_tree_edge.begin(),
                                              plan.is_tree_edge.end(), 1));
  long long bound = pow_clamped(g.arrow_count(), free_edges, opts.limit);
  if (opts.gauge_fixed && bound <= opts.limit) {
    if (bound > opts.limit / std::max(1, g.objects()))
      bound = opts.limit + 1;
    else
      bound *= g.objects();
  }
  if (bound > opts.limit)
    throw std::runtime_error("enumerate_flat: candidate count exceeds the size limit");

  Enumerator enumerator(c, g, opts, plan);

  // Top-level branches: base object, and (when edges exist) the first
  // edge's arrow. Keyed so results merge in a deterministic order.
  struct Task {
    int base_object;
    int first_arrow;  // -1 when there are no edges
  };
  std::vector<Task> tasks;
  for (int x = 0; x < g.objects(); ++x) {
    if (opts.boundary && c.is_boundary_vertex(c.base) && !opts.boundary->has_object(x)) continue;
    if (plan.edge_order.empty()) {
      tasks.push_back({x, -1});
      continue;
    }
    LatticeMorphism probe;
    probe.vertex_map.assign(static_cast<size_t>(c.vertices), -1);
    probe.edge_map.assign(static_cast<size_t>(c.edge_count()), -1);
    probe.vertex_map[static_cast<size_t>(c.base)] = x;
    for (int a : enumerator.candidates(probe, 0)) tasks.push_back({x, a});
  }

  std::vector<std::vector<LatticeMorphism>> results(tasks.size());
  run_tasks(static_cast<int>(tasks.size()), opts.threads, [&](int ti) {
    const Task& task = tasks[static_cast<size_t>(ti)];
    LatticeMorphism state;
    state.vertex_map.assign(static_cast<size_t>(c.vertices), -1);
    state.edge_map.assign(static_cast<size_t>(c.edge_count()), -1);
    state.vertex_map[static_cast<size_t>(c.base)] = task.base_object;
    if (task.first_arrow == -1) {
      if (c.vertices == 1) results[static_cast<size_t>(ti)].push_back(state);
      return;  // disconnected multi-vertex complexes were rejected by make_plan
    }
    int fresh = enumerator.fresh_vertex(state, 0);
    enumerator.place(state, 0, task.first_arrow, fresh);
    if (enumerator.faces_hold(state, 0))
      enumerator.extend(state, 1, results[static_cast<size_t>(ti)]);
  });

  std::vector<LatticeMorphism> fields;
  for (auto& part : results)
    fields.insert(fields.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  std::sort(fields.begin(), fields.end());
  return fields;
}

std::vector<GaugeOrbit> gauge_orbits(const CWSurface& c, const FiniteGroupoid& g,
                                     const std::vector<LatticeMorphism>& fields,
                                     const Subgroupoid* boundary) {
  if (!std::is_sorted(fields.begin(), fields.end()))
    throw std::invalid_argument("gauge_orbits: fields must be sorted");

  // incidence lists: (edge, +1 source / -1 target / 0 loop)
  std::vector<std::vector<std::pair<int, int>>> incident(static_cast<size_t>(c.vertices));
  for (int e = 0; e < c.edge_count(); ++e) {
    auto [u, v] = c.edges[static_cast<size_t>(e)];
    if (u == v) {
      incident[static_cast<size_t>(u)].emplace_back(e, 0);
    } else {
      incident[static_cast<size_t>(u)].emplace_back(e, +1);
      incident[static_cast<size_t>(v)].emplace_back(e, -1);
    }
  }

  auto index_of = [&fields](const LatticeMorphism& m) -> int {
    auto it = std::lower_bound(fields.begin(), fields.end(), m);
    if (it == fields.end() || *it != m) return -1;
    return static_cast<int>(it - fields.begin());
  };

  Partition leaf_partition = leaves(g);
  std::vector<char> visited(fields.size(), 0);
  std::vector<GaugeOrbit> orbits;

  for (int start = 0; start < static_cast<int>(fields.size()); ++start) {
    if (visited[static_cast<size_t>(start)]) continue;
    std::vector<int> members{start};
    visited[static_cast<size_t>(start)] = 1;
    for (size_t q = 0; q < members.size(); ++q) {
      const LatticeMorphism& m = fields[static_cast<size_t>(members[q])];
      for (int v = 0; v < c.vertices; ++v) {
        int obj = m.vertex_map[static_cast<size_t>(v)];
        const std::vector<int>& moves =
            (boundary && c.is_boundary_vertex(v)) ? boundary->arrows_from(obj)
                                                  : g.arrows_from(obj);
        for (int a : moves) {
          LatticeMorphism next = m;
          next.vertex_map[static_cast<size_t>(v)] = g.tgt(a);
          for (auto [e, role] : incident[static_cast<size_t>(v)]) {
            int old = next.edge_map[static_cast<size_t>(e)];
            if (role == 0)
              next.edge_map[static_cast<size_t>(e)] = g.conjugate(a, old);
            else if (role == +1)
              next.edge_map[static_cast<size_t>(e)] = g.compose(old, g.inverse(a));
            else
              next.edge_map[static_cast<size_t>(e)] = g.compose(a, old);
          }
          int ni = index_of(next);
          if (ni < 0)
            throw std::logic_error("gauge_orbits: gauge image is not in the field list");
          if (!visited[static_cast<size_t>(ni)]) {
            visited[static_cast<size_t>(ni)] = 1;
            members.push_back(ni);
          }
        }
      }
    }
    std::sort(members.begin(), members.end());
    GaugeOrbit orbit;
    orbit.representative = fields[static_cast<size_t>(members.front())];
    orbit.member_indices = std::move(members);
    orbit.leaf = leaf_partition.class_of[static_cast<size_t>(
        orbit.representative.vertex_map[static_cast<size_t>(c.base)])];
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

Holonomy holonomy(const CWSurface& c, const FiniteGroupoid& g, const LatticeMorphism& m,
                  const SpanningTree& tree) {
  Holonomy h;
  h.base_object = m.vertex_map[static_cast<size_t>(c.base)];
  h.loop_values.reserve(tree.loop_words.size());
  for (const auto& word : tree.loop_words) {
    int value = evaluate_word(g, m, word);
    if (g.src(value) != h.base_object || g.tgt(value) != h.base_object)
      throw std::logic_error("holonomy: loop value is not in the base isotropy group");
    h.loop_values.push_back(value);
  }
  return h;
}

}  // namespace gmoduli
