#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gmoduli/groupoid.hpp"
#include "support.hpp"

using namespace gmoduli;
using namespace testsupport;

namespace {

GroupoidData z2_data() {
  GroupoidData d;
  d.objects = 1;
  d.arrows = {{0, 0}, {0, 0}};
  d.identity = {0};
  d.inverse = {0, 1};
  d.compose = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  return d;
}

std::vector<FiniteGroupoid> small_groupoid_suite() {
  std::vector<FiniteGroupoid> out;
  out.push_back(pair_groupoid(2));
  out.push_back(pair_groupoid(3));
  out.push_back(pair_groupoid(4));
  out.push_back(pair_groupoid(5));
  out.push_back(group_as_groupoid(z2_table()));
  out.push_back(group_as_groupoid(s3_table()));
  out.push_back(action_groupoid(z2_table(), swap_action_z2()));
  out.push_back(action_groupoid(z2_table(), trivial_action_z2()));
  out.push_back(disjoint_union(group_as_groupoid(z2_table()), group_as_groupoid(z2_table())));
  out.push_back(disjoint_union(group_as_groupoid(z2_table()), pair_groupoid(2)));
  return out;
}

}  // namespace

TEST_CASE("constructors validate for all desk-scale sizes") {
  for (int n = 1; n <= 8; ++n) CHECK(validate(pair_groupoid(n).data()).ok());
  for (int n = 1; n <= 12; ++n) CHECK(validate(group_as_groupoid(cyclic_table(n)).data()).ok());
  CHECK(validate(group_as_groupoid(klein_table()).data()).ok());
  CHECK(validate(group_as_groupoid(s3_table()).data()).ok());
  CHECK(validate(action_groupoid(z2_table(), swap_action_z2()).data()).ok());
  CHECK(validate(action_groupoid(z2_table(), trivial_action_z2()).data()).ok());
  CHECK(validate(action_groupoid(s3_table(), natural_action_s3()).data()).ok());
  CHECK(validate(action_groupoid(z4_table(), Table{{0, 1, 2, 3},
                                                   {1, 2, 3, 0},
                                                   {2, 3, 0, 1},
                                                   {3, 0, 1, 2}}).data()).ok());
}

TEST_CASE("validate flags a swapped inverse on the identity") {
  GroupoidData d = z2_data();
  d.inverse = {1, 0};  // id and the flip exchanged
  ValidationReport rep = validate(d);
  CHECK_FALSE(rep.ok());
  CHECK(rep.structural_errors.empty());
  CHECK(rep.has_axiom("inverse_law"));
}

TEST_CASE("validate separates structural errors from axiom failures") {
  GroupoidData d = z2_data();
  d.arrows[1].tgt = 7;  // out of range
  ValidationReport rep = validate(d);
  CHECK_FALSE(rep.structural_errors.empty());
  CHECK(rep.axiom_failures.empty());

  d = z2_data();
  d.compose.push_back({0, 1, 0});  // conflicting duplicate
  rep = validate(d);
  CHECK_FALSE(rep.structural_errors.empty());

  d = z2_data();
  d.compose.pop_back();  // missing product on a composable pair
  rep = validate(d);
  CHECK(rep.structural_errors.empty());
  CHECK(rep.has_axiom("compose_domain"));

  CHECK_THROWS_AS(FiniteGroupoid(std::move(d)), std::invalid_argument);
}

TEST_CASE("non-group and non-action tables are rejected") {
  CHECK_THROWS_AS(group_as_groupoid({{0, 1}, {0, 1}}), std::invalid_argument);  // no inverse row
  CHECK_THROWS_AS(group_as_groupoid({{1, 0}, {0, 0}}), std::invalid_argument);  // no identity
  // action rows must respect the group law
  CHECK_THROWS_AS(action_groupoid(z2_table(), Table{{0, 1}, {0, 1}, {1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(action_groupoid(z3_table(), Table{{0, 1}, {1, 0}, {0, 1}}),
                  std::invalid_argument);
}

TEST_CASE("pair groupoid shape") {
  FiniteGroupoid g = pair_groupoid(2);
  CHECK(g.arrow_count() == 4);
  CHECK(leaves(g).size() == 1);
  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  CHECK(s3.arrow_count() == 6);
  CHECK(s3.objects() == 1);
}

TEST_CASE("leaves") {
  CHECK(leaves(pair_groupoid(3)).classes == std::vector<std::vector<int>>{{0, 1, 2}});
  FiniteGroupoid two_z2 =
      disjoint_union(group_as_groupoid(z2_table()), group_as_groupoid(z2_table()));
  CHECK(leaves(two_z2).classes == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(leaves(action_groupoid(z2_table(), trivial_action_z2())).size() == 2);
}

TEST_CASE("leaves of an action groupoid equal the orbit partition") {
  std::vector<std::pair<Table, Table>> actions = {
      {z2_table(), swap_action_z2()},
      {z2_table(), trivial_action_z2()},
      {s3_table(), natural_action_s3()},
      {z3_table(), Table{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}},
      {z4_table(), Table{{0, 1}, {1, 0}, {0, 1}, {1, 0}}},
  };
  for (const auto& [group, act] : actions) {
    FiniteGroupoid g = action_groupoid(group, act);
    CHECK(leaves(g).classes == orbit_partition(act));
  }
}

TEST_CASE("isotropy groups") {
  CHECK(isotropy_arrows(pair_groupoid(3), 0).size() == 1);
  FiniteGroupoid swap = action_groupoid(z2_table(), swap_action_z2());
  CHECK(isotropy_arrows(swap, 0).size() == 1);
  FiniteGroupoid triv = action_groupoid(z2_table(), trivial_action_z2());
  IsotropyGroup iso = isotropy_group(triv, 0);
  CHECK(iso.arrow_ids.size() == 2);
  CHECK(tables_isomorphic(
      {{0, 1}, {1, 0}},
      Table{{iso.group.compose(0, 0), iso.group.compose(0, 1)},
            {iso.group.compose(1, 0), iso.group.compose(1, 1)}}));
}

TEST_CASE("isotropy of an action groupoid is the stabilizer subgroup") {
  std::vector<std::pair<Table, Table>> actions = {
      {s3_table(), natural_action_s3()},
      {z2_table(), trivial_action_z2()},
      {z4_table(), Table{{0, 1}, {1, 0}, {0, 1}, {1, 0}}},
      {cyclic_table(12), Table{{0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}}},
  };
  for (const auto& [group, act] : actions) {
    FiniteGroupoid g = action_groupoid(group, act);
    for (int point = 0; point < g.objects(); ++point) {
      IsotropyGroup iso = isotropy_group(g, point);
      Table iso_table(iso.arrow_ids.size(), std::vector<int>(iso.arrow_ids.size()));
      for (size_t i = 0; i < iso.arrow_ids.size(); ++i)
        for (size_t j = 0; j < iso.arrow_ids.size(); ++j)
          iso_table[i][j] = iso.group.compose(static_cast<int>(i), static_cast<int>(j));
      CHECK(tables_isomorphic(iso_table, stabilizer_table(group, act, point)));
    }
  }
}

TEST_CASE("conjugate_isotropy") {
  FiniteGroupoid p3 = pair_groupoid(3);
  // identity arrow maps the isotropy group to itself pointwise
  auto self = conjugate_isotropy(p3, 1, 1, p3.identity(1));
  REQUIRE(self.size() == 1);
  CHECK(self[0].first == self[0].second);
  // pair groupoid: trivial-group map
  auto across = conjugate_isotropy(p3, 0, 2, 0 * 3 + 2);
  REQUIRE(across.size() == 1);
  CHECK(across[0] == std::pair<int, int>(p3.identity(0), p3.identity(2)));
  CHECK_THROWS_AS(conjugate_isotropy(p3, 0, 1, p3.identity(0)), std::invalid_argument);

  // natural S3 action: (p, h) maps to (g·p, g h g^{-1}) under the arrow (p, g)
  Table s3 = s3_table();
  FiniteGroupoid g = action_groupoid(s3, natural_action_s3());
  const int n_g = 6;
  Table act = natural_action_s3();
  for (int p = 0; p < 3; ++p)
    for (int k = 0; k < n_g; ++k) {
      int q = act[static_cast<size_t>(k)][static_cast<size_t>(p)];
      auto map = conjugate_isotropy(g, p, q, p * n_g + k);
      for (auto [h_arrow, image] : map) {
        int h = h_arrow % n_g;
        int expected = s3[static_cast<size_t>(s3[static_cast<size_t>(k)][static_cast<size_t>(h)])]
                         [static_cast<size_t>(g.inverse(p * n_g + k) % n_g)];
        CHECK(image == q * n_g + expected);
      }
    }
}

TEST_CASE("conjugate_isotropy composes along composition") {
  FiniteGroupoid g = action_groupoid(s3_table(), natural_action_s3());
  for (int a = 0; a < g.arrow_count(); ++a)
    for (int b = 0; b < g.arrow_count(); ++b) {
      if (!g.composable(b, a)) continue;
      auto via_a = conjugate_isotropy(g, g.src(a), g.tgt(a), a);
      auto via_b = conjugate_isotropy(g, g.src(b), g.tgt(b), b);
      auto direct = conjugate_isotropy(g, g.src(a), g.tgt(b), g.compose(b, a));
      for (size_t i = 0; i < via_a.size(); ++i) {
        int mid = via_a[i].second;
        int chained = -1;
        for (auto [from, to] : via_b)
          if (from == mid) chained = to;
        CHECK(chained == direct[i].second);
      }
    }
}

TEST_CASE("bisections of standard examples") {
  // one-object group: Bis is the group itself, via sigma(0)
  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  auto bis_s3 = bisections(s3);
  REQUIRE(bis_s3.size() == 6);
  Table via_bis(6, std::vector<int>(6));
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j)
      via_bis[i][j] = compose_bisections(s3, bis_s3[i], bis_s3[j]).sigma[0];
  CHECK(via_bis == s3_table());  // sigma lists are ordered by the single arrow id

  // pair groupoid over 3 objects: the permutation group of the objects
  FiniteGroupoid p3 = pair_groupoid(3);
  auto bis_p3 = bisections(p3);
  CHECK(bis_p3.size() == 6);
  std::set<std::vector<int>> perms;
  for (const auto& b : bis_p3) perms.insert(bisection_permutation(p3, b));
  CHECK(perms.size() == 6);

  // disjoint union of two one-object Z2's
  FiniteGroupoid two_z2 =
      disjoint_union(group_as_groupoid(z2_table()), group_as_groupoid(z2_table()));
  CHECK(bisections(two_z2).size() == 4);
}

TEST_CASE("bisection group law, permutation homomorphism, leaf preservation") {
  for (const FiniteGroupoid& g : small_groupoid_suite()) {
    if (g.objects() > 5 || g.arrow_count() > 40) continue;
    auto bis = bisections(g);
    Partition leaf_partition = leaves(g);
    Bisection id = identity_bisection(g);
    for (const auto& s1 : bis) {
      CHECK(compose_bisections(g, s1, id) == s1);
      CHECK(compose_bisections(g, id, s1) == s1);
      Bisection inv = inverse_bisection(g, s1);
      CHECK(compose_bisections(g, s1, inv) == id);
      auto perm = bisection_permutation(g, s1);
      for (int x = 0; x < g.objects(); ++x)
        CHECK(leaf_partition.class_of[static_cast<size_t>(perm[static_cast<size_t>(x)])] ==
              leaf_partition.class_of[static_cast<size_t>(x)]);
      for (const auto& s2 : bis) {
        Bisection prod = compose_bisections(g, s1, s2);
        // psi is a homomorphism into object permutations
        auto p1 = bisection_permutation(g, s1);
        auto p2 = bisection_permutation(g, s2);
        auto pp = bisection_permutation(g, prod);
        for (int x = 0; x < g.objects(); ++x)
          CHECK(pp[static_cast<size_t>(x)] ==
                p1[static_cast<size_t>(p2[static_cast<size_t>(x)])]);
        for (const auto& s3 : bis)
          CHECK(compose_bisections(g, compose_bisections(g, s1, s2), s3) ==
                compose_bisections(g, s1, compose_bisections(g, s2, s3)));
      }
    }
  }
}

TEST_CASE("bisections size guard") {
  CHECK_THROWS_AS(bisections(pair_groupoid(8), 100), std::runtime_error);
}

TEST_CASE("subgroupoid validation") {
  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  CHECK_NOTHROW(Subgroupoid(s3, {0}, {0, 1}));
  CHECK_THROWS_AS(Subgroupoid(s3, {0}, {0, 3}), std::invalid_argument);  // 3 has inverse 4
  CHECK_THROWS_AS(Subgroupoid(s3, {0}, {1}), std::invalid_argument);     // missing identity
  FiniteGroupoid p3 = pair_groupoid(3);
  // arrows must stay over the object subset
  CHECK_THROWS_AS(Subgroupoid(p3, {0}, {0, 1}), std::invalid_argument);
  CHECK_NOTHROW(Subgroupoid::base(p3));
  CHECK(Subgroupoid::full(p3).is_full());
}

TEST_CASE("double cosets") {
  FiniteGroupoid p3 = pair_groupoid(3);
  auto base = Subgroupoid::base(p3);
  auto full = Subgroupoid::full(p3);
  CHECK(double_coset(p3, base, base).size() == 9);  // every arrow its own class
  CHECK(double_coset(p3, full, full).size() == 1);  // one class per leaf

  FiniteGroupoid two_z2 =
      disjoint_union(group_as_groupoid(z2_table()), group_as_groupoid(z2_table()));
  CHECK(double_coset(two_z2, Subgroupoid::full(two_z2), Subgroupoid::full(two_z2)).size() == 2);

  FiniteGroupoid s3 = group_as_groupoid(s3_table());
  Subgroupoid z2_in_s3(s3, {0}, {0, 1});
  auto classes = double_coset(s3, z2_in_s3, z2_in_s3);
  REQUIRE(classes.size() == 2);
  std::multiset<size_t> sizes{classes[0].members.size(), classes[1].members.size()};
  CHECK(sizes == std::multiset<size_t>{2, 4});
  CHECK(classes[0].representative == 0);

  // cross-check against the closure oracle on several shapes
  std::vector<int> all_s3 = {0, 1, 2, 3, 4, 5};
  CHECK(double_coset_count_oracle(s3, {0, 1}, {0, 1}, all_s3) == 2);
  std::vector<int> all_p3(9);
  for (int i = 0; i < 9; ++i) all_p3[static_cast<size_t>(i)] = i;
  CHECK(double_coset_count_oracle(p3, base.arrows(), base.arrows(), all_p3) == 9);
  CHECK(double_coset_count_oracle(p3, full.arrows(), full.arrows(), all_p3) == 1);

  // mixed boundary conditions on a disconnected groupoid
  FiniteGroupoid triv = action_groupoid(z2_table(), trivial_action_z2());
  auto base_t = Subgroupoid::base(triv);
  auto full_t = Subgroupoid::full(triv);
  auto mixed = double_coset(triv, base_t, full_t);
  std::vector<int> all_t(static_cast<size_t>(triv.arrow_count()));
  for (int i = 0; i < triv.arrow_count(); ++i) all_t[static_cast<size_t>(i)] = i;
  CHECK(static_cast<long long>(mixed.size()) ==
        double_coset_count_oracle(triv, base_t.arrows(), full_t.arrows(), all_t));
}

TEST_CASE("subgroupoid leaves") {
  FiniteGroupoid p3 = pair_groupoid(3);
  CHECK(Subgroupoid::base(p3).leaves().classes.size() == 3);
  CHECK(Subgroupoid::full(p3).leaves().classes.size() == 1);
}
