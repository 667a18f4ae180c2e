#include "gmoduli/moduli.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gmoduli/parallel.hpp"

namespace gmoduli {

namespace {

/// Value of a generator word at a tuple of isotropy arrows (letters are
/// applied first to last, composition "after").
int word_value(const FiniteGroupoid& g, int base, const std::vector<int>& word,
               const std::vector<int>& tuple) {
  int acc = g.identity(base);
  for (int letter : word) {
    int a = tuple[static_cast<size_t>(letter_index(letter))];
    if (letter_reversed(letter)) a = g.inverse(a);
    acc = g.compose(a, acc);
  }
  return acc;
}

/// Tuples in iso^k at `base` for which `accept` holds, ascending.
template <typename Accept>
void enumerate_tuples(const FiniteGroupoid& g, int base, int k, long long limit,
                      const Accept& accept, std::vector<FlatRep>& out) {
  std::vector<int> iso = isotropy_arrows(g, base);
  long long total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > limit / std::max<long long>(1, static_cast<long long>(iso.size())))
      throw std::runtime_error("moduli: tuple count exceeds the size limit");
    total *= static_cast<long long>(iso.size());
  }
  std::vector<int> tuple(static_cast<size_t>(k), -1);
  auto rec = [&](auto&& self, int slot) -> void {
    if (slot == k) {
      if (accept(tuple)) out.push_back(FlatRep{base, tuple});
      return;
    }
    for (int a : iso) {
      tuple[static_cast<size_t>(slot)] = a;
      self(self, slot + 1);
    }
  };
  rec(rec, 0);
}

FlatRep conjugate_rep(const FiniteGroupoid& g, const FlatRep& rep, int gamma) {
  FlatRep out;
  out.base = g.tgt(gamma);
  out.tuple.reserve(rep.tuple.size());
  for (int a : rep.tuple) out.tuple.push_back(g.conjugate(gamma, a));
  return out;
}

int rep_index(const std::vector<FlatRep>& reps, const FlatRep& r) {
  auto it = std::lower_bound(reps.begin(), reps.end(), r);
  if (it == reps.end() || *it != r) return -1;
  return static_cast<int>(it - reps.begin());
}

/// Conjugation-orbit partition of a sorted rep list. `moves(base)` yields
/// the arrows allowed to conjugate a rep based at `base`.
template <typename Moves>
std::vector<std::vector<int>> conjugation_orbits(const FiniteGroupoid& g,
                                                 const std::vector<FlatRep>& reps,
                                                 const Moves& moves) {
  std::vector<char> visited(reps.size(), 0);
  std::vector<std::vector<int>> orbits;
  for (int start = 0; start < static_cast<int>(reps.size()); ++start) {
    if (visited[static_cast<size_t>(start)]) continue;
    std::vector<int> members{start};
    visited[static_cast<size_t>(start)] = 1;
    for (size_t q = 0; q < members.size(); ++q) {
      const FlatRep& r = reps[static_cast<size_t>(members[q])];
      for (int gamma : moves(r.base)) {
        int ni = rep_index(reps, conjugate_rep(g, r, gamma));
        if (ni < 0) throw std::logic_error("moduli: conjugate left the representation set");
        if (!visited[static_cast<size_t>(ni)]) {
          visited[static_cast<size_t>(ni)] = 1;
          members.push_back(ni);
        }
      }
    }
    std::sort(members.begin(), members.end());
    orbits.push_back(std::move(members));
  }
  return orbits;
}

std::vector<LeafModuli> group_by_leaf(const std::vector<FlatRep>& reps,
                                      const std::vector<std::vector<int>>& orbits,
                                      const std::vector<std::vector<int>>& leaf_classes,
                                      const std::vector<int>& leaf_of_object) {
  std::vector<LeafModuli> out;
  out.reserve(leaf_classes.size());
  for (size_t li = 0; li < leaf_classes.size(); ++li) {
    LeafModuli lm;
    lm.leaf = static_cast<int>(li);
    lm.leaf_objects = leaf_classes[li];
    out.push_back(std::move(lm));
  }
  for (const FlatRep& r : reps)
    out[static_cast<size_t>(leaf_of_object[static_cast<size_t>(r.base)])].rep_count += 1;
  for (const auto& members : orbits) {
    const FlatRep& rep = reps[static_cast<size_t>(members.front())];
    int leaf = leaf_of_object[static_cast<size_t>(rep.base)];
    out[static_cast<size_t>(leaf)].classes.push_back(
        ModuliClass{rep, static_cast<long long>(members.size()), leaf});
  }
  return out;
}

}  // namespace

std::vector<LeafModuli> moduli_closed(const FiniteGroupoid& g, int genus,
                                      const ModuliOptions& opts) {
  if (genus < 0) throw std::invalid_argument("moduli_closed: genus must be non-negative");
  const std::vector<int> relator = commutator_product_word(genus);

  std::vector<std::vector<FlatRep>> per_object(static_cast<size_t>(g.objects()));
  run_tasks(g.objects(), opts.threads, [&](int x) {
    enumerate_tuples(
        g, x, 2 * genus, opts.limit,
        [&](const std::vector<int>& tuple) {
          return word_value(g, x, relator, tuple) == g.identity(x);
        },
        per_object[static_cast<size_t>(x)]);
  });
  std::vector<FlatRep> reps;
  for (auto& part : per_object)
    reps.insert(reps.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  std::sort(reps.begin(), reps.end());

  auto orbits = conjugation_orbits(g, reps,
                                   [&g](int base) -> const std::vector<int>& {
                                     return g.arrows_from(base);
                                   });
  Partition part = leaves(g);
  return group_by_leaf(reps, orbits, part.classes, part.class_of);
}

std::vector<LeafModuli> moduli_open(const FiniteGroupoid& g, int genus, const Subgroupoid& sub,
                                    const ModuliOptions& opts) {
  if (genus < 0) throw std::invalid_argument("moduli_open: genus must be non-negative");
  if (&sub.parent() != &g)
    throw std::invalid_argument("moduli_open: subgroupoid of a different parent");
  const std::vector<int> boundary = commutator_product_word(genus);

  const std::vector<int>& bases = sub.objects();
  std::vector<std::vector<FlatRep>> per_base(bases.size());
  run_tasks(static_cast<int>(bases.size()), opts.threads, [&](int i) {
    int x = bases[static_cast<size_t>(i)];
    enumerate_tuples(
        g, x, 2 * genus, opts.limit,
        [&](const std::vector<int>& tuple) {
          return sub.has_arrow(word_value(g, x, boundary, tuple));
        },
        per_base[static_cast<size_t>(i)]);
  });
  std::vector<FlatRep> reps;
  for (auto& part : per_base)
    reps.insert(reps.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  std::sort(reps.begin(), reps.end());

  auto orbits = conjugation_orbits(g, reps,
                                   [&sub](int base) -> const std::vector<int>& {
                                     return sub.arrows_from(base);
                                   });

  Subgroupoid::SubPartition sub_leaves = sub.leaves();
  std::vector<int> leaf_of(static_cast<size_t>(g.objects()), -1);
  for (size_t li = 0; li < sub_leaves.classes.size(); ++li)
    for (int x : sub_leaves.classes[li]) leaf_of[static_cast<size_t>(x)] = static_cast<int>(li);
  return group_by_leaf(reps, orbits, sub_leaves.classes, leaf_of);
}

std::vector<DoubleCosetClass> moduli_interval(const FiniteGroupoid& g, const Subgroupoid& sub0,
                                              const Subgroupoid& sub1) {
  return double_coset(g, sub0, sub1);
}

long long count_morphisms(const FiniteGroupoid& g, int genus, const std::vector<int>& objects,
                          long long limit) {
  if (genus < 0) throw std::invalid_argument("count_morphisms: genus must be non-negative");
  const std::vector<int> relator = commutator_product_word(genus);
  long long count = 0;
  for (int x : objects) {
    std::vector<FlatRep> reps;
    enumerate_tuples(
        g, x, 2 * genus, limit,
        [&](const std::vector<int>& tuple) {
          return word_value(g, x, relator, tuple) == g.identity(x);
        },
        reps);
    count += static_cast<long long>(reps.size());
  }
  return count;
}

namespace {

/// Conjugation classes of a sorted rep list plus the index of each rep's
/// class and each class's canonical representative.
struct RepClasses {
  std::vector<FlatRep> reps;
  std::vector<int> class_of;
  std::vector<FlatRep> canonical;  // per class
  std::vector<long long> sizes;
};

template <typename Moves>
RepClasses classify(const FiniteGroupoid& g, std::vector<FlatRep> reps, const Moves& moves) {
  RepClasses out;
  out.reps = std::move(reps);
  auto orbits = conjugation_orbits(g, out.reps, moves);
  out.class_of.assign(out.reps.size(), -1);
  for (size_t ci = 0; ci < orbits.size(); ++ci) {
    for (int member : orbits[ci]) out.class_of[static_cast<size_t>(member)] = static_cast<int>(ci);
    out.canonical.push_back(out.reps[static_cast<size_t>(orbits[ci].front())]);
    out.sizes.push_back(static_cast<long long>(orbits[ci].size()));
  }
  return out;
}

int surface_genus_from_euler(const CWSurface& c) {
  // closed: chi = 2 - 2g; one boundary: chi = 1 - 2g
  int chi = c.euler_characteristic();
  int twice_genus = c.boundary_components == 0 ? 2 - chi : 1 - chi;
  if (twice_genus < 0 || twice_genus % 2 != 0)
    throw std::invalid_argument("surface does not have integral genus");
  return twice_genus / 2;
}

}  // namespace

CompareReport compare_lattice_vs_holonomy(const CWSurface& c, const FiniteGroupoid& g,
                                          const CompareOptions& opts) {
  validate_cw(c);
  if (!c.boundary_edges.empty())
    throw std::invalid_argument("compare_lattice_vs_holonomy: surface has boundary");

  CompareReport report;
  report.genus = surface_genus_from_euler(c);

  EnumerateOptions eopts;
  eopts.limit = opts.limit;
  eopts.threads = opts.threads;
  std::vector<LatticeMorphism> fields = enumerate_flat(c, g, eopts);
  report.field_count = static_cast<long long>(fields.size());
  std::vector<GaugeOrbit> orbits = gauge_orbits(c, g, fields);

  // Holonomy side, same complex: loop-generator tuples satisfying the face
  // relations = flat fields with tree edges pinned to identities.
  SpanningTree tree = spanning_tree(c);
  EnumerateOptions fixed = eopts;
  fixed.gauge_fixed = true;
  std::vector<LatticeMorphism> pinned = enumerate_flat(c, g, fixed);
  std::vector<FlatRep> reps;
  reps.reserve(pinned.size());
  for (const LatticeMorphism& m : pinned) {
    FlatRep r;
    r.base = m.vertex_map[static_cast<size_t>(c.base)];
    for (int e : tree.loop_edges) r.tuple.push_back(m.edge_map[static_cast<size_t>(e)]);
    reps.push_back(std::move(r));
  }
  std::sort(reps.begin(), reps.end());
  report.rep_count = static_cast<long long>(reps.size());
  RepClasses classes = classify(g, std::move(reps),
                                [&g](int base) -> const std::vector<int>& {
                                  return g.arrows_from(base);
                                });

  Partition leaf_partition = leaves(g);
  std::vector<long long> orbit_count(static_cast<size_t>(leaf_partition.size()), 0);
  std::vector<long long> class_count(static_cast<size_t>(leaf_partition.size()), 0);
  for (const GaugeOrbit& o : orbits) orbit_count[static_cast<size_t>(o.leaf)] += 1;
  for (const FlatRep& r : classes.canonical)
    class_count[static_cast<size_t>(leaf_partition.class_of[static_cast<size_t>(r.base)])] += 1;

  // orbit -> class via the holonomy of the orbit representative
  std::vector<char> hit(classes.canonical.size(), 0);
  bool bijective = true;
  for (const GaugeOrbit& o : orbits) {
    Holonomy h = holonomy(c, g, o.representative, tree);
    int ri = rep_index(classes.reps, FlatRep{h.base_object, h.loop_values});
    if (ri < 0) {
      bijective = false;
      report.failure = "holonomy of an orbit representative is not a valid representation";
      break;
    }
    int ci = classes.class_of[static_cast<size_t>(ri)];
    if (hit[static_cast<size_t>(ci)]) {
      bijective = false;
      report.failure = "two gauge orbits map to one holonomy class";
      break;
    }
    hit[static_cast<size_t>(ci)] = 1;
    report.bijection.push_back(
        BijectionEntry{o.representative, classes.canonical[static_cast<size_t>(ci)]});
  }
  if (bijective && std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    bijective = false;
    report.failure = "a holonomy class is not reached by any gauge orbit";
  }

  // Standard-presentation moduli for the same genus.
  ModuliOptions mopts;
  mopts.limit = opts.limit;
  mopts.threads = opts.threads;
  std::vector<LeafModuli> standard = moduli_closed(g, report.genus, mopts);

  bool counts_ok = true;
  for (int li = 0; li < leaf_partition.size(); ++li) {
    CompareLeaf row;
    row.leaf = li;
    row.lattice_orbits = orbit_count[static_cast<size_t>(li)];
    row.holonomy_classes = class_count[static_cast<size_t>(li)];
    row.presentation_classes =
        static_cast<long long>(standard[static_cast<size_t>(li)].classes.size());
    counts_ok = counts_ok && row.match();
    report.per_leaf.push_back(row);
  }
  if (!counts_ok && report.failure.empty()) report.failure = "per-leaf counts disagree";
  report.ok = bijective && counts_ok;
  return report;
}

CompareReport compare_open(const CWSurface& c, const FiniteGroupoid& g, const Subgroupoid& sub,
                           const CompareOptions& opts) {
  validate_cw(c);
  if (c.boundary_components != 1)
    throw std::invalid_argument("compare_open: surface must have one boundary component");
  if (static_cast<int>(c.handle_edges.size()) % 2 != 0)
    throw std::invalid_argument("compare_open: surface lacks handle-edge metadata");

  CompareReport report;
  report.genus = surface_genus_from_euler(c);
  if (static_cast<int>(c.handle_edges.size()) != 2 * report.genus)
    throw std::invalid_argument("compare_open: handle-edge metadata disagrees with genus");

  EnumerateOptions eopts;
  eopts.limit = opts.limit;
  eopts.threads = opts.threads;
  eopts.boundary = &sub;
  std::vector<LatticeMorphism> fields = enumerate_flat(c, g, eopts);
  report.field_count = static_cast<long long>(fields.size());
  std::vector<GaugeOrbit> orbits = gauge_orbits(c, g, fields, &sub);

  ModuliOptions mopts;
  mopts.limit = opts.limit;
  mopts.threads = opts.threads;
  std::vector<LeafModuli> open = moduli_open(g, report.genus, sub, mopts);
  for (const LeafModuli& lm : open) report.rep_count += lm.rep_count;

  // Rebuild the open rep set with its class structure for lookups.
  std::vector<FlatRep> reps;
  const std::vector<int> boundary_word = commutator_product_word(report.genus);
  for (const LeafModuli& lm : open)
    for (int x : lm.leaf_objects) {
      std::vector<FlatRep> local;
      enumerate_tuples(
          g, x, 2 * report.genus, opts.limit,
          [&](const std::vector<int>& tuple) {
            return sub.has_arrow(word_value(g, x, boundary_word, tuple));
          },
          local);
      reps.insert(reps.end(), local.begin(), local.end());
    }
  std::sort(reps.begin(), reps.end());
  RepClasses classes = classify(g, std::move(reps),
                                [&sub](int base) -> const std::vector<int>& {
                                  return sub.arrows_from(base);
                                });

  Subgroupoid::SubPartition sub_leaves = sub.leaves();
  std::vector<int> leaf_of(static_cast<size_t>(g.objects()), -1);
  for (size_t li = 0; li < sub_leaves.classes.size(); ++li)
    for (int x : sub_leaves.classes[li]) leaf_of[static_cast<size_t>(x)] = static_cast<int>(li);

  std::vector<long long> orbit_count(sub_leaves.classes.size(), 0);
  for (const GaugeOrbit& o : orbits) {
    int base_obj = o.representative.vertex_map[static_cast<size_t>(c.base)];
    orbit_count[static_cast<size_t>(leaf_of[static_cast<size_t>(base_obj)])] += 1;
  }

  // orbit -> open class via the holonomy of the handle loops
  SpanningTree tree = spanning_tree(c);
  std::vector<int> handle_slot;  // positions of handle loops in loop_edges
  for (int e : c.handle_edges) {
    auto it = std::find(tree.loop_edges.begin(), tree.loop_edges.end(), e);
    if (it == tree.loop_edges.end())
      throw std::invalid_argument("compare_open: a handle edge landed in the spanning tree");
    handle_slot.push_back(static_cast<int>(it - tree.loop_edges.begin()));
  }

  std::vector<char> hit(classes.canonical.size(), 0);
  bool bijective = true;
  for (const GaugeOrbit& o : orbits) {
    Holonomy h = holonomy(c, g, o.representative, tree);
    FlatRep r;
    r.base = h.base_object;
    for (int slot : handle_slot)
      r.tuple.push_back(h.loop_values[static_cast<size_t>(slot)]);
    int ri = rep_index(classes.reps, r);
    if (ri < 0) {
      bijective = false;
      report.failure = "handle holonomy violates the boundary condition";
      break;
    }
    int ci = classes.class_of[static_cast<size_t>(ri)];
    if (hit[static_cast<size_t>(ci)]) {
      bijective = false;
      report.failure = "two gauge orbits map to one holonomy class";
      break;
    }
    hit[static_cast<size_t>(ci)] = 1;
    report.bijection.push_back(
        BijectionEntry{o.representative, classes.canonical[static_cast<size_t>(ci)]});
  }
  if (bijective && std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    bijective = false;
    report.failure = "a holonomy class is not reached by any gauge orbit";
  }

  bool counts_ok = true;
  for (size_t li = 0; li < sub_leaves.classes.size(); ++li) {
    CompareLeaf row;
    row.leaf = static_cast<int>(li);
    row.lattice_orbits = orbit_count[li];
    row.holonomy_classes = static_cast<long long>(open[li].classes.size());
    row.presentation_classes = row.holonomy_classes;
    counts_ok = counts_ok && row.match();
    report.per_leaf.push_back(row);
  }
  if (!counts_ok && report.failure.empty()) report.failure = "per-leaf counts disagree";
  report.ok = bijective && counts_ok;
  return report;
}

}  // namespace gmoduli
