#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "gmoduli/lattice.hpp"
#include "support.hpp"

using namespace gmoduli;
using namespace testsupport;

namespace {

LatticeMorphism identity_field(const CWSurface& c, const FiniteGroupoid& g, int object) {
  LatticeMorphism m;
  m.vertex_map.assign(static_cast<size_t>(c.vertices), object);
  m.edge_map.assign(static_cast<size_t>(c.edge_count()), g.identity(object));
  return m;
}

/// One-object groupoid: the field on torus_grid(1) assigning (a, b).
LatticeMorphism one_vertex_field(int a, int b) {
  LatticeMorphism m;
  m.vertex_map = {0};
  m.edge_map = {a, b};
  return m;
}

GaugeElement random_gauge(const CWSurface& c, const FiniteGroupoid& g, const LatticeMorphism& m,
                          std::mt19937& rng) {
  GaugeElement phi;
  phi.phi.resize(static_cast<size_t>(c.vertices));
  for (int v = 0; v < c.vertices; ++v) {
    const auto& pool = g.arrows_from(m.vertex_map[static_cast<size_t>(v)]);
    phi.phi[static_cast<size_t>(v)] =
        pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
  }
  return phi;
}

}  // namespace

TEST_CASE("check_flatness basics") {
  FiniteGroupoid z2 = group_as_groupoid(z2_table());
  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  CWSurface t1 = torus_grid(1);

  for (const CWSurface& c : {torus_grid(1), torus_grid(2), sphere_cw(), genus_g_cw(2)})
    for (int x = 0; x < 3; ++x) CHECK(check_flatness(c, identity_field(c, pair_groupoid(3), x),
                                                     pair_groupoid(3)).pass());

  // abelian commutator closes
  CHECK(check_flatness(t1, one_vertex_field(1, 1), z2).pass());

  // S3: a -> (12), b -> (123); the commutator is not the identity
  int swap01 = 2, cycle = 3;  // lexicographic permutation ids: 102 and 120
  FlatnessReport rep = check_flatness(t1, one_vertex_field(swap01, cycle), s3);
  CHECK_FALSE(rep.pass());
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == FlatnessViolation::Kind::Face);
  // independent route: the commutator in the table
  Table t = s3_table();
  auto inv = [&t](int p) {
    for (int q = 0; q < 6; ++q)
      if (t[static_cast<size_t>(p)][static_cast<size_t>(q)] == 0) return q;
    return -1;
  };
  int comm = t[static_cast<size_t>(t[static_cast<size_t>(t[static_cast<size_t>(inv(cycle))]
                                                          [static_cast<size_t>(inv(swap01))])]
                                   [static_cast<size_t>(cycle)])]
              [static_cast<size_t>(swap01)];
  CHECK(comm != 0);

  // structural problems are reported separately
  LatticeMorphism bad = one_vertex_field(0, 0);
  bad.edge_map.pop_back();
  CHECK_FALSE(check_flatness(t1, bad, z2).structural_errors.empty());

  // compatibility violations are flagged per edge
  FiniteGroupoid p2 = pair_groupoid(2);
  LatticeMorphism skew = identity_field(t1, p2, 0);
  skew.edge_map[0] = 1;  // arrow 0 -> 1 on a loop at object 0
  FlatnessReport skew_rep = check_flatness(t1, skew, p2);
  CHECK_FALSE(skew_rep.pass());
  CHECK(skew_rep.violations[0].kind == FlatnessViolation::Kind::EdgeTarget);
}

TEST_CASE("apply_gauge identity and conjugation") {
  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  CWSurface t2 = torus_grid(2);
  EnumerateOptions opts;
  auto fields = enumerate_flat(t2, s3, opts);

  GaugeElement identity_phi;
  identity_phi.phi.assign(4, s3.identity(0));
  CHECK(apply_gauge(t2, s3, fields[17], identity_phi) == fields[17]);

  // constant gauge on a one-object groupoid conjugates every edge
  int h = 3;
  GaugeElement const_phi;
  const_phi.phi.assign(4, h);
  LatticeMorphism gauged = apply_gauge(t2, s3, fields[17], const_phi);
  for (int e = 0; e < t2.edge_count(); ++e)
    CHECK(gauged.edge_map[static_cast<size_t>(e)] ==
          s3.conjugate(h, fields[17].edge_map[static_cast<size_t>(e)]));

  // anchoring violations throw
  FiniteGroupoid p2 = pair_groupoid(2);
  LatticeMorphism m = identity_field(t2, p2, 0);
  GaugeElement wrong;
  wrong.phi.assign(4, p2.identity(1));
  CHECK_THROWS_AS(apply_gauge(t2, p2, m, wrong), std::invalid_argument);
}

TEST_CASE("apply_gauge is a groupoid action and preserves flatness") {
  std::mt19937 rng(7);
  FiniteGroupoid groupoids[] = {group_as_groupoid(z2_table()), pair_groupoid(2),
                                action_groupoid(z2_table(), swap_action_z2())};
  for (const FiniteGroupoid& g : groupoids) {
    CWSurface c = torus_grid(2);
    auto fields = enumerate_flat(c, g, {});
    for (const auto& m : fields) {
      GaugeElement phi1 = random_gauge(c, g, m, rng);
      LatticeMorphism m1 = apply_gauge(c, g, m, phi1);
      CHECK(check_flatness(c, m1, g).pass());
      GaugeElement phi2 = random_gauge(c, g, m1, rng);
      LatticeMorphism m2 = apply_gauge(c, g, m1, phi2);
      CHECK(m2 == apply_gauge(c, g, m, compose_gauge(g, phi2, phi1)));
    }
  }
}

TEST_CASE("enumerate_flat counts on the one-vertex torus") {
  CWSurface t1 = torus_grid(1);
  // |Hom(Z^2, G)| equals the commuting-pair count, by the double loop
  std::vector<Table> tables = {z2_table(), z3_table(), s3_table(), klein_table()};
  std::vector<long long> expected = {4, 9, 18, 16};
  for (size_t i = 0; i < tables.size(); ++i) {
    FiniteGroupoid g = group_as_groupoid(tables[i]);
    auto fields = enumerate_flat(t1, g, {});
    CHECK(static_cast<long long>(fields.size()) == expected[i]);
    CHECK(static_cast<long long>(fields.size()) == commuting_pair_count(tables[i]));
    for (const auto& m : fields) CHECK(check_flatness(t1, m, g).pass());
  }

  CHECK(enumerate_flat(t1, pair_groupoid(3), {}).size() == 3);
  // sphere: the single loop generator is forced to the identity, so fields
  // are exactly the object choices
  CHECK(enumerate_flat(sphere_cw(), pair_groupoid(3), {}).size() == 3);
  CHECK(enumerate_flat(sphere_cw(), group_as_groupoid(s3_table()), {}).size() == 1);
  CHECK(enumerate_flat(sphere_cw(), action_groupoid(z2_table(), trivial_action_z2()), {}).size() ==
        2);

  EnumerateOptions tiny;
  tiny.limit = 10;
  CHECK_THROWS_AS(enumerate_flat(torus_grid(2), group_as_groupoid(s3_table()), tiny),
                  std::runtime_error);
}

TEST_CASE("enumeration handles tree edges discovered against their orientation") {
  // two-vertex sphere whose edges both point towards the base vertex
  CWSurface pillow;
  pillow.vertices = 2;
  pillow.edges = {{1, 0}, {1, 0}};
  pillow.faces = {{1, -2}, {2, -1}};
  pillow.base = 0;
  validate_cw(pillow);

  FiniteGroupoid p3 = pair_groupoid(3);
  auto fields = enumerate_flat(pillow, p3, {});
  CHECK(fields.size() == 9);  // any object pair, the two edges forced equal
  for (const auto& m : fields) {
    CHECK(check_flatness(pillow, m, p3).pass());
    CHECK(m.edge_map[0] == m.edge_map[1]);
  }
  CHECK(gauge_orbits(pillow, p3, fields).size() == 1);

  FiniteGroupoid triv = action_groupoid(z2_table(), trivial_action_z2());
  auto triv_fields = enumerate_flat(pillow, triv, {});
  CHECK(triv_fields.size() == 4);  // per leaf: both vertices pinned, 2 loop values... forced id
  CHECK(gauge_orbits(pillow, triv, triv_fields).size() == 2);

  EnumerateOptions fixed;
  fixed.gauge_fixed = true;
  CHECK(enumerate_flat(pillow, p3, fixed).size() == 3);
}

TEST_CASE("enumeration is deterministic across thread counts") {
  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  CWSurface t2 = torus_grid(2);
  EnumerateOptions serial, parallel;
  parallel.threads = 4;
  auto a = enumerate_flat(t2, s3, serial);
  auto b = enumerate_flat(t2, s3, parallel);
  CHECK(a == b);
  CHECK(a.size() == 3888);
}

TEST_CASE("gauge-fixed enumeration agrees with the full one") {
  for (const FiniteGroupoid& g :
       {group_as_groupoid(z2_table()), pair_groupoid(2),
        action_groupoid(z2_table(), trivial_action_z2())}) {
    CWSurface c = torus_grid(2);
    EnumerateOptions full_opts, fixed_opts;
    fixed_opts.gauge_fixed = true;
    auto full_fields = enumerate_flat(c, g, full_opts);
    auto fixed_fields = enumerate_flat(c, g, fixed_opts);
    CHECK(std::includes(full_fields.begin(), full_fields.end(), fixed_fields.begin(),
                        fixed_fields.end()));
    auto orbits = gauge_orbits(c, g, full_fields);
    // every orbit carries at least one gauge-fixed field, and the pinned
    // fields reach every orbit
    std::set<LatticeMorphism> fixed_set(fixed_fields.begin(), fixed_fields.end());
    long long orbits_hit = 0;
    for (const auto& orbit : orbits) {
      bool hit = false;
      for (int idx : orbit.member_indices)
        hit = hit || fixed_set.count(full_fields[static_cast<size_t>(idx)]) > 0;
      orbits_hit += hit ? 1 : 0;
    }
    CHECK(orbits_hit == static_cast<long long>(orbits.size()));
  }
}

TEST_CASE("gauge orbits") {
  CWSurface t1 = torus_grid(1);

  // conjugation is trivial in an abelian group
  FiniteGroupoid z2 = group_as_groupoid(z2_table());
  auto z2_fields = enumerate_flat(t1, z2, {});
  CHECK(gauge_orbits(t1, z2, z2_fields).size() == 4);

  // the pair groupoid collapses to a point
  for (int n : {2, 3}) {
    FiniteGroupoid p = pair_groupoid(n);
    auto fields = enumerate_flat(t1, p, {});
    auto orbits = gauge_orbits(t1, p, fields);
    CHECK(orbits.size() == 1);
    CHECK(orbits[0].member_indices.size() == fields.size());
  }

  // transitive action with trivial isotropy: a single orbit on the 2x2 grid
  FiniteGroupoid swap = action_groupoid(z2_table(), swap_action_z2());
  CWSurface t2 = torus_grid(2);
  auto swap_fields = enumerate_flat(t2, swap, {});
  CHECK(gauge_orbits(t2, swap, swap_fields).size() == 1);

  // orbit sizes always partition the field list
  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  auto s3_fields = enumerate_flat(t2, s3, {});
  auto s3_orbits = gauge_orbits(t2, s3, s3_fields);
  long long total = 0;
  for (const auto& orbit : s3_orbits) {
    total += static_cast<long long>(orbit.member_indices.size());
    CHECK(orbit.representative ==
          s3_fields[static_cast<size_t>(orbit.member_indices.front())]);
  }
  CHECK(total == static_cast<long long>(s3_fields.size()));
}

TEST_CASE("holonomy") {
  CWSurface t1 = torus_grid(1);
  SpanningTree tree1 = spanning_tree(t1);
  FiniteGroupoid z2 = group_as_groupoid(z2_table());

  Holonomy id_hol = holonomy(t1, z2, identity_field(t1, z2, 0), tree1);
  CHECK(id_hol.loop_values == std::vector<int>{0, 0});

  Holonomy mixed = holonomy(t1, z2, one_vertex_field(1, 0), tree1);
  CHECK(mixed.loop_values == std::vector<int>{1, 0});

  // gauge transforms conjugate the holonomy by the base move
  std::mt19937 rng(11);
  for (const FiniteGroupoid& g :
       {group_as_groupoid(s3_table()), action_groupoid(z2_table(), swap_action_z2())}) {
    CWSurface t2 = torus_grid(2);
    SpanningTree tree2 = spanning_tree(t2);
    auto fields = enumerate_flat(t2, g, {});
    for (const auto& m : fields) {
      GaugeElement phi = random_gauge(t2, g, m, rng);
      Holonomy before = holonomy(t2, g, m, tree2);
      Holonomy after = holonomy(t2, g, apply_gauge(t2, g, m, phi), tree2);
      int mover = phi.phi[static_cast<size_t>(t2.base)];
      REQUIRE(before.loop_values.size() == after.loop_values.size());
      CHECK(after.base_object == g.tgt(mover));
      for (size_t i = 0; i < before.loop_values.size(); ++i)
        CHECK(after.loop_values[i] == g.conjugate(mover, before.loop_values[i]));
    }
  }
}

TEST_CASE("holonomy tuples satisfy the face relations") {
  // the loop values of any flat field, installed as a field of their own
  // with tree edges pinned to identities, are again flat
  for (const FiniteGroupoid& g :
       {group_as_groupoid(z2_table()), group_as_groupoid(s3_table()), pair_groupoid(2)}) {
    CWSurface c = torus_grid(2);
    SpanningTree tree = spanning_tree(c);
    for (const auto& m : enumerate_flat(c, g, {})) {
      Holonomy h = holonomy(c, g, m, tree);
      LatticeMorphism pinned;
      pinned.vertex_map.assign(static_cast<size_t>(c.vertices), h.base_object);
      pinned.edge_map.assign(static_cast<size_t>(c.edge_count()), g.identity(h.base_object));
      for (size_t i = 0; i < tree.loop_edges.size(); ++i)
        pinned.edge_map[static_cast<size_t>(tree.loop_edges[i])] = h.loop_values[i];
      CHECK(check_flatness(c, pinned, g).pass());
    }
  }
}

TEST_CASE("bordered enumeration respects the boundary condition") {
  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  Subgroupoid z2_in_s3(s3, {0}, {0, 1});
  CWSurface c = bordered_cw(1);
  EnumerateOptions opts;
  opts.boundary = &z2_in_s3;
  auto fields = enumerate_flat(c, s3, opts);
  // free pairs with commutator in the subgroup; the boundary edge is forced
  for (const auto& m : fields) {
    CHECK((m.edge_map[2] == 0 || m.edge_map[2] == 1));
    CHECK(check_flatness(c, m, s3).pass());
  }
  long long direct = 0;
  Table t = s3_table();
  auto inv = [&t](int p) {
    for (int q = 0; q < 6; ++q)
      if (t[static_cast<size_t>(p)][static_cast<size_t>(q)] == 0) return q;
    return -1;
  };
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int comm = t[static_cast<size_t>(t[static_cast<size_t>(t[static_cast<size_t>(inv(b))]
                                                              [static_cast<size_t>(inv(a))])]
                                       [static_cast<size_t>(b)])]
                  [static_cast<size_t>(a)];
      if (comm == 0 || comm == 1) ++direct;
    }
  CHECK(static_cast<long long>(fields.size()) == direct);
}
