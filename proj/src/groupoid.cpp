#include "gmoduli/groupoid.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gmoduli {

namespace {

constexpr int kMaxArrows = 4096;

bool in_range(int v, int n) { return v >= 0 && v < n; }

}  // namespace

bool ValidationReport::has_axiom(const std::string& name) const {
  for (const auto& f : axiom_failures)
    if (f.axiom == name) return true;
  return false;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  if (ok()) {
    out << "pass";
    return out.str();
  }
  for (const auto& e : structural_errors) out << "structural: " << e << "\n";
  for (const auto& f : axiom_failures) {
    out << "axiom " << f.axiom << ": " << f.detail << " (witnesses:";
    for (int w : f.witnesses) out << ' ' << w;
    out << ")\n";
  }
  return out.str();
}

ValidationReport validate(const GroupoidData& raw) {
  ValidationReport rep;
  auto structural = [&rep](const std::string& msg) { rep.structural_errors.push_back(msg); };

  const int n_obj = raw.objects;
  const int n_arr = static_cast<int>(raw.arrows.size());

  if (n_obj <= 0) structural("object count must be positive");
  if (n_arr > kMaxArrows) structural("arrow count exceeds the desk-scale cap");
  for (int a = 0; a < n_arr; ++a) {
    if (!in_range(raw.arrows[static_cast<size_t>(a)].src, n_obj) ||
        !in_range(raw.arrows[static_cast<size_t>(a)].tgt, n_obj))
      structural("arrow " + std::to_string(a) + " has out-of-range endpoint");
  }
  if (static_cast<int>(raw.identity.size()) != n_obj)
    structural("identity table size != object count");
  if (static_cast<int>(raw.inverse.size()) != n_arr)
    structural("inverse table size != arrow count");
  for (int x = 0; x < static_cast<int>(raw.identity.size()); ++x)
    if (!in_range(raw.identity[static_cast<size_t>(x)], n_arr))
      structural("identity of object " + std::to_string(x) + " out of range");
  for (int a = 0; a < static_cast<int>(raw.inverse.size()); ++a)
    if (!in_range(raw.inverse[static_cast<size_t>(a)], n_arr))
      structural("inverse of arrow " + std::to_string(a) + " out of range");
  for (const auto& e : raw.compose)
    if (!in_range(e.g, n_arr) || !in_range(e.h, n_arr) || !in_range(e.gh, n_arr))
      structural("compose entry with out-of-range id");
  if (!rep.structural_errors.empty()) return rep;

  // Flat product table; duplicates and products on non-composable pairs are
  // structural, not axiom, problems.
  std::vector<int> table(static_cast<size_t>(n_arr) * static_cast<size_t>(n_arr), -1);
  auto at = [&table, n_arr](int g, int h) -> int& {
    return table[static_cast<size_t>(g) * static_cast<size_t>(n_arr) + static_cast<size_t>(h)];
  };
  auto src = [&raw](int a) { return raw.arrows[static_cast<size_t>(a)].src; };
  auto tgt = [&raw](int a) { return raw.arrows[static_cast<size_t>(a)].tgt; };

  for (const auto& e : raw.compose) {
    if (tgt(e.h) != src(e.g)) {
      structural("compose defined on non-composable pair (" + std::to_string(e.g) + "," +
                 std::to_string(e.h) + ")");
      continue;
    }
    int& slot = at(e.g, e.h);
    if (slot != -1 && slot != e.gh)
      structural("conflicting compose entries for (" + std::to_string(e.g) + "," +
                 std::to_string(e.h) + ")");
    slot = e.gh;
  }
  if (!rep.structural_errors.empty()) return rep;

  auto fail = [&rep](std::string axiom, std::vector<int> witnesses, std::string detail) {
    rep.axiom_failures.push_back({std::move(axiom), std::move(witnesses), std::move(detail)});
  };

  // identity arrows sit at their object
  for (int x = 0; x < n_obj; ++x) {
    int e = raw.identity[static_cast<size_t>(x)];
    if (src(e) != x || tgt(e) != x)
      fail("identity_endpoints", {x, e}, "id(" + std::to_string(x) + ") is not a loop at it");
  }

  // the product is defined exactly on composable pairs, with the right
  // endpoints
  bool domain_ok = true;
  for (int g = 0; g < n_arr; ++g) {
    for (int h = 0; h < n_arr; ++h) {
      int gh = at(g, h);
      if (tgt(h) == src(g)) {
        if (gh == -1) {
          fail("compose_domain", {g, h}, "product of a composable pair is missing");
          domain_ok = false;
        } else if (src(gh) != src(h) || tgt(gh) != tgt(g)) {
          fail("product_endpoints", {g, h, gh}, "src/tgt of product disagree with factors");
        }
      }
    }
  }

  for (int g = 0; g < n_arr; ++g) {
    int e_s = raw.identity[static_cast<size_t>(src(g))];
    int e_t = raw.identity[static_cast<size_t>(tgt(g))];
    if (at(g, e_s) != -1 && at(g, e_s) != g)
      fail("identity_neutral", {g}, "g∘id(src(g)) != g");
    if (at(e_t, g) != -1 && at(e_t, g) != g)
      fail("identity_neutral", {g}, "id(tgt(g))∘g != g");
    int gi = raw.inverse[static_cast<size_t>(g)];
    if (src(gi) != tgt(g) || tgt(gi) != src(g)) {
      fail("inverse_law", {g, gi}, "inverse does not reverse endpoints");
      continue;
    }
    if (at(g, gi) != -1 && at(g, gi) != raw.identity[static_cast<size_t>(tgt(g))])
      fail("inverse_law", {g, gi}, "g∘g⁻¹ != id(tgt(g))");
    if (at(gi, g) != -1 && at(gi, g) != raw.identity[static_cast<size_t>(src(g))])
      fail("inverse_law", {g, gi}, "g⁻¹∘g != id(src(g))");
  }

  if (domain_ok) {
    // associativity over all composable triples (f∘g)∘h == f∘(g∘h)
    long long triples = 0;
    std::vector<int> from_count(static_cast<size_t>(n_obj), 0);
    for (int a = 0; a < n_arr; ++a) ++from_count[static_cast<size_t>(src(a))];
    for (int g = 0; g < n_arr; ++g)
      for (int h = 0; h < n_arr; ++h)
        if (tgt(h) == src(g)) triples += from_count[static_cast<size_t>(tgt(g))];
    if (triples > 200'000'000) {
      rep.structural_errors.push_back("too many composable triples to check associativity");
      return rep;
    }
    for (int f = 0; f < n_arr; ++f) {
      for (int g = 0; g < n_arr; ++g) {
        if (tgt(g) != src(f)) continue;
        int fg = at(f, g);
        for (int h = 0; h < n_arr; ++h) {
          if (tgt(h) != src(g)) continue;
          int gh = at(g, h);
          if (fg == -1 || gh == -1) continue;
          if (at(fg, h) != at(f, gh)) {
            fail("associativity", {f, g, h}, "(f∘g)∘h != f∘(g∘h)");
          }
        }
      }
    }
  }

  return rep;
}

FiniteGroupoid::FiniteGroupoid(GroupoidData data) : data_(std::move(data)) {
  ValidationReport rep = validate(data_);
  if (!rep.ok()) throw std::invalid_argument("invalid groupoid: " + rep.summary());

  const size_t n_arr = data_.arrows.size();
  table_.assign(n_arr * n_arr, -1);
  for (const auto& e : data_.compose)
    table_[static_cast<size_t>(e.g) * n_arr + static_cast<size_t>(e.h)] = e.gh;

  from_.assign(static_cast<size_t>(data_.objects), {});
  into_.assign(static_cast<size_t>(data_.objects), {});
  between_.assign(static_cast<size_t>(data_.objects) * static_cast<size_t>(data_.objects), {});
  for (int a = 0; a < static_cast<int>(n_arr); ++a) {
    const Arrow& ar = data_.arrows[static_cast<size_t>(a)];
    from_[static_cast<size_t>(ar.src)].push_back(a);
    into_[static_cast<size_t>(ar.tgt)].push_back(a);
    between_[static_cast<size_t>(ar.src) * static_cast<size_t>(data_.objects) +
             static_cast<size_t>(ar.tgt)]
        .push_back(a);
  }
}

Partition leaves(const FiniteGroupoid& g) {
  const int n = g.objects();
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int a = 0; a < g.arrow_count(); ++a) {
    int rs = find(g.src(a)), rt = find(g.tgt(a));
    if (rs != rt) parent[static_cast<size_t>(std::max(rs, rt))] = std::min(rs, rt);
  }

  Partition part;
  part.class_of.assign(static_cast<size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (part.class_of[static_cast<size_t>(r)] == -1) {
      part.class_of[static_cast<size_t>(r)] = static_cast<int>(part.classes.size());
      part.classes.push_back({});
    }
    int c = part.class_of[static_cast<size_t>(r)];
    part.class_of[static_cast<size_t>(x)] = c;
    part.classes[static_cast<size_t>(c)].push_back(x);
  }
  return part;
}

std::vector<int> isotropy_arrows(const FiniteGroupoid& g, int x) {
  return g.arrows_between(x, x);
}

IsotropyGroup isotropy_group(const FiniteGroupoid& g, int x) {
  std::vector<int> ids = isotropy_arrows(g, x);
  std::vector<int> index_of(static_cast<size_t>(g.arrow_count()), -1);
  for (int i = 0; i < static_cast<int>(ids.size()); ++i)
    index_of[static_cast<size_t>(ids[static_cast<size_t>(i)])] = i;

  GroupoidData data;
  data.objects = 1;
  data.arrows.assign(ids.size(), Arrow{0, 0});
  data.identity = {index_of[static_cast<size_t>(g.identity(x))]};
  data.inverse.resize(ids.size());
  for (size_t i = 0; i < ids.size(); ++i)
    data.inverse[i] = index_of[static_cast<size_t>(g.inverse(ids[i]))];
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = 0; j < ids.size(); ++j)
      data.compose.push_back({static_cast<int>(i), static_cast<int>(j),
                              index_of[static_cast<size_t>(g.compose(ids[i], ids[j]))]});
  return IsotropyGroup{FiniteGroupoid(std::move(data)), std::move(ids)};
}

std::vector<std::pair<int, int>> conjugate_isotropy(const FiniteGroupoid& g, int x, int y, int a) {
  if (g.src(a) != x || g.tgt(a) != y)
    throw std::invalid_argument("conjugate_isotropy: arrow does not connect the given objects");
  std::vector<int> source = isotropy_arrows(g, x);
  std::vector<std::pair<int, int>> map;
  map.reserve(source.size());
  std::vector<char> seen(static_cast<size_t>(g.arrow_count()), 0);
  for (int h : source) {
    int image = g.conjugate(a, h);
    if (g.src(image) != y || g.tgt(image) != y || seen[static_cast<size_t>(image)])
      throw std::logic_error("conjugate_isotropy: map is not injective into the target isotropy");
    seen[static_cast<size_t>(image)] = 1;
    map.emplace_back(h, image);
  }
  // multiplicativity
  auto image_of = [&map](int h) {
    for (const auto& [from, to] : map)
      if (from == h) return to;
    return -1;
  };
  for (int h1 : source)
    for (int h2 : source)
      if (image_of(g.compose(h1, h2)) != g.compose(image_of(h1), image_of(h2)))
        throw std::logic_error("conjugate_isotropy: map is not multiplicative");
  return map;
}

std::vector<Bisection> bisections(const FiniteGroupoid& g, long long limit) {
  const int n = g.objects();
  long long candidates = 1;
  for (int x = 0; x < n; ++x) {
    candidates *= static_cast<long long>(g.arrows_from(x).size());
    if (candidates > limit)
      throw std::runtime_error("bisections: candidate count exceeds limit");
  }

  std::vector<Bisection> out;
  std::vector<int> sigma(static_cast<size_t>(n), -1);
  std::vector<char> target_used(static_cast<size_t>(n), 0);
  auto rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      out.push_back(Bisection{sigma});
      return;
    }
    for (int a : g.arrows_from(x)) {
      int y = g.tgt(a);
      if (target_used[static_cast<size_t>(y)]) continue;
      target_used[static_cast<size_t>(y)] = 1;
      sigma[static_cast<size_t>(x)] = a;
      self(self, x + 1);
      sigma[static_cast<size_t>(x)] = -1;
      target_used[static_cast<size_t>(y)] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

Bisection compose_bisections(const FiniteGroupoid& g, const Bisection& s1, const Bisection& s2) {
  const int n = g.objects();
  Bisection out;
  out.sigma.resize(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    int a2 = s2.sigma[static_cast<size_t>(x)];
    int a1 = s1.sigma[static_cast<size_t>(g.tgt(a2))];
    out.sigma[static_cast<size_t>(x)] = g.compose(a1, a2);
  }
  return out;
}

Bisection identity_bisection(const FiniteGroupoid& g) {
  Bisection out;
  out.sigma.resize(static_cast<size_t>(g.objects()));
  for (int x = 0; x < g.objects(); ++x) out.sigma[static_cast<size_t>(x)] = g.identity(x);
  return out;
}

Bisection inverse_bisection(const FiniteGroupoid& g, const Bisection& s) {
  Bisection out;
  out.sigma.resize(s.sigma.size());
  for (int x = 0; x < g.objects(); ++x) {
    int a = s.sigma[static_cast<size_t>(x)];
    out.sigma[static_cast<size_t>(g.tgt(a))] = g.inverse(a);
  }
  return out;
}

std::vector<int> bisection_permutation(const FiniteGroupoid& g, const Bisection& s) {
  std::vector<int> perm(s.sigma.size());
  for (size_t x = 0; x < s.sigma.size(); ++x) perm[x] = g.tgt(s.sigma[x]);
  return perm;
}

Subgroupoid::Subgroupoid(const FiniteGroupoid& parent, std::vector<int> object_subset,
                         std::vector<int> arrow_subset)
    : parent_(&parent), objects_(std::move(object_subset)), arrows_(std::move(arrow_subset)) {
  std::sort(objects_.begin(), objects_.end());
  objects_.erase(std::unique(objects_.begin(), objects_.end()), objects_.end());
  std::sort(arrows_.begin(), arrows_.end());
  arrows_.erase(std::unique(arrows_.begin(), arrows_.end()), arrows_.end());

  object_mask_.assign(static_cast<size_t>(parent.objects()), 0);
  arrow_mask_.assign(static_cast<size_t>(parent.arrow_count()), 0);
  for (int x : objects_) {
    if (x < 0 || x >= parent.objects())
      throw std::invalid_argument("subgroupoid: object id out of range");
    object_mask_[static_cast<size_t>(x)] = 1;
  }
  for (int a : arrows_) {
    if (a < 0 || a >= parent.arrow_count())
      throw std::invalid_argument("subgroupoid: arrow id out of range");
    arrow_mask_[static_cast<size_t>(a)] = 1;
  }
  for (int a : arrows_) {
    if (!has_object(parent.src(a)) || !has_object(parent.tgt(a)))
      throw std::invalid_argument("subgroupoid: arrow " + std::to_string(a) +
                                  " leaves the object subset");
    if (!has_arrow(parent.inverse(a)))
      throw std::invalid_argument("subgroupoid: not closed under inverse (arrow " +
                                  std::to_string(a) + ")");
  }
  for (int x : objects_)
    if (!has_arrow(parent.identity(x)))
      throw std::invalid_argument("subgroupoid: missing identity of object " + std::to_string(x));
  for (int a : arrows_)
    for (int b : arrows_)
      if (parent.composable(a, b) && !has_arrow(parent.compose(a, b)))
        throw std::invalid_argument("subgroupoid: not closed under composition (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");

  from_.assign(static_cast<size_t>(parent.objects()), {});
  for (int a : arrows_) from_[static_cast<size_t>(parent.src(a))].push_back(a);
}

Subgroupoid Subgroupoid::base(const FiniteGroupoid& parent) {
  std::vector<int> objects(static_cast<size_t>(parent.objects()));
  std::iota(objects.begin(), objects.end(), 0);
  std::vector<int> arrows;
  arrows.reserve(objects.size());
  for (int x : objects) arrows.push_back(parent.identity(x));
  return Subgroupoid(parent, std::move(objects), std::move(arrows));
}

Subgroupoid Subgroupoid::full(const FiniteGroupoid& parent) {
  std::vector<int> objects(static_cast<size_t>(parent.objects()));
  std::iota(objects.begin(), objects.end(), 0);
  std::vector<int> arrows(static_cast<size_t>(parent.arrow_count()));
  std::iota(arrows.begin(), arrows.end(), 0);
  return Subgroupoid(parent, std::move(objects), std::move(arrows));
}

bool Subgroupoid::is_full() const {
  return static_cast<int>(arrows_.size()) == parent_->arrow_count() &&
         static_cast<int>(objects_.size()) == parent_->objects();
}

Subgroupoid::SubPartition Subgroupoid::leaves() const {
  std::vector<int> parent_of(object_mask_.size());
  std::iota(parent_of.begin(), parent_of.end(), 0);
  auto find = [&parent_of](int x) {
    while (parent_of[static_cast<size_t>(x)] != x) x = parent_of[static_cast<size_t>(x)];
    return x;
  };
  for (int a : arrows_) {
    int rs = find(parent_->src(a)), rt = find(parent_->tgt(a));
    if (rs != rt) parent_of[static_cast<size_t>(std::max(rs, rt))] = std::min(rs, rt);
  }
  SubPartition part;
  std::vector<int> class_of(object_mask_.size(), -1);
  for (int x : objects_) {
    int r = find(x);
    if (class_of[static_cast<size_t>(r)] == -1) {
      class_of[static_cast<size_t>(r)] = static_cast<int>(part.classes.size());
      part.classes.push_back({});
    }
    part.classes[static_cast<size_t>(class_of[static_cast<size_t>(r)])].push_back(x);
  }
  return part;
}

std::vector<DoubleCosetClass> double_coset(const FiniteGroupoid& g, const Subgroupoid& h0,
                                           const Subgroupoid& h1) {
  if (&h0.parent() != &g || &h1.parent() != &g)
    throw std::invalid_argument("double_coset: subgroupoids of a different parent");

  std::vector<int> candidates;
  for (int a = 0; a < g.arrow_count(); ++a)
    if (h0.has_object(g.src(a)) && h1.has_object(g.tgt(a))) candidates.push_back(a);

  std::vector<int> slot_of(static_cast<size_t>(g.arrow_count()), -1);
  for (size_t i = 0; i < candidates.size(); ++i)
    slot_of[static_cast<size_t>(candidates[i])] = static_cast<int>(i);

  std::vector<int> parent(candidates.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[static_cast<size_t>(std::max(ra, rb))] = std::min(ra, rb);
  };

  for (int a : candidates) {
    for (int b1 : h1.arrows_from(g.tgt(a)))
      unite(slot_of[static_cast<size_t>(a)],
            slot_of[static_cast<size_t>(g.compose(b1, a))]);
    // right moves a -> a∘b0⁻¹, i.e. a∘b for every sub-arrow b into src(a)
    for (int b0 : h0.arrows())
      if (g.tgt(b0) == g.src(a))
        unite(slot_of[static_cast<size_t>(a)],
              slot_of[static_cast<size_t>(g.compose(a, b0))]);
  }

  std::vector<DoubleCosetClass> classes;
  std::vector<int> class_of(candidates.size(), -1);
  for (size_t i = 0; i < candidates.size(); ++i) {
    int r = find(static_cast<int>(i));
    if (class_of[static_cast<size_t>(r)] == -1) {
      class_of[static_cast<size_t>(r)] = static_cast<int>(classes.size());
      classes.push_back({candidates[static_cast<size_t>(r)], {}});
    }
    classes[static_cast<size_t>(class_of[static_cast<size_t>(r)])].members.push_back(
        candidates[i]);
  }
  return classes;
}

FiniteGroupoid group_as_groupoid(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw std::invalid_argument("group table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("group table is not square");
    for (int v : row)
      if (!in_range(v, n)) throw std::invalid_argument("group table entry out of range");
  }
  int e = -1;
  for (int cand = 0; cand < n; ++cand) {
    bool neutral = true;
    for (int a = 0; a < n; ++a)
      neutral = neutral && table[static_cast<size_t>(cand)][static_cast<size_t>(a)] == a &&
                table[static_cast<size_t>(a)][static_cast<size_t>(cand)] == a;
    if (neutral) {
      e = cand;
      break;
    }
  }
  if (e == -1) throw std::invalid_argument("group table has no identity element");

  GroupoidData data;
  data.objects = 1;
  data.arrows.assign(static_cast<size_t>(n), Arrow{0, 0});
  data.identity = {e};
  data.inverse.assign(static_cast<size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[static_cast<size_t>(a)][static_cast<size_t>(b)] == e &&
          table[static_cast<size_t>(b)][static_cast<size_t>(a)] == e)
        data.inverse[static_cast<size_t>(a)] = b;
    if (data.inverse[static_cast<size_t>(a)] == -1)
      throw std::invalid_argument("group table element without inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      data.compose.push_back({a, b, table[static_cast<size_t>(a)][static_cast<size_t>(b)]});
  return FiniteGroupoid(std::move(data));  // validation rejects non-associative tables
}

FiniteGroupoid pair_groupoid(int n) {
  if (n <= 0) throw std::invalid_argument("pair_groupoid: need at least one object");
  GroupoidData data;
  data.objects = n;
  data.arrows.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
  data.identity.resize(static_cast<size_t>(n));
  data.inverse.resize(data.arrows.size());
  for (int x = 0; x < n; ++x) {
    data.identity[static_cast<size_t>(x)] = x * n + x;
    for (int y = 0; y < n; ++y) {
      data.arrows[static_cast<size_t>(x * n + y)] = Arrow{x, y};
      data.inverse[static_cast<size_t>(x * n + y)] = y * n + x;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        data.compose.push_back({y * n + z, x * n + y, x * n + z});
  return FiniteGroupoid(std::move(data));
}

FiniteGroupoid action_groupoid(const std::vector<std::vector<int>>& table,
                               const std::vector<std::vector<int>>& act) {
  FiniteGroupoid group = group_as_groupoid(table);  // validates the group
  const int n_g = group.arrow_count();
  const int e = group.identity(0);
  if (static_cast<int>(act.size()) != n_g)
    throw std::invalid_argument("action table must have one row per group element");
  const int n_pts = act.empty() ? 0 : static_cast<int>(act[0].size());
  if (n_pts == 0) throw std::invalid_argument("action table has no points");
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != n_pts)
      throw std::invalid_argument("action table rows have unequal length");
    for (int v : row)
      if (!in_range(v, n_pts)) throw std::invalid_argument("action table entry out of range");
  }
  for (int p = 0; p < n_pts; ++p)
    if (act[static_cast<size_t>(e)][static_cast<size_t>(p)] != p)
      throw std::invalid_argument("action table: identity does not fix point " +
                                  std::to_string(p));
  for (int k1 = 0; k1 < n_g; ++k1)
    for (int k2 = 0; k2 < n_g; ++k2)
      for (int p = 0; p < n_pts; ++p) {
        int lhs = act[static_cast<size_t>(table[static_cast<size_t>(k1)][static_cast<size_t>(k2)])]
                     [static_cast<size_t>(p)];
        int rhs = act[static_cast<size_t>(k1)]
                     [static_cast<size_t>(act[static_cast<size_t>(k2)][static_cast<size_t>(p)])];
        if (lhs != rhs)
          throw std::invalid_argument("action table is not a group action");
      }

  // arrow (p, k): p -> k·p, id = p*|G| + k
  GroupoidData data;
  data.objects = n_pts;
  data.arrows.resize(static_cast<size_t>(n_pts) * static_cast<size_t>(n_g));
  data.identity.resize(static_cast<size_t>(n_pts));
  data.inverse.resize(data.arrows.size());
  auto id_of = [n_g](int p, int k) { return p * n_g + k; };
  for (int p = 0; p < n_pts; ++p) {
    data.identity[static_cast<size_t>(p)] = id_of(p, e);
    for (int k = 0; k < n_g; ++k) {
      int q = act[static_cast<size_t>(k)][static_cast<size_t>(p)];
      data.arrows[static_cast<size_t>(id_of(p, k))] = Arrow{p, q};
      data.inverse[static_cast<size_t>(id_of(p, k))] =
          id_of(q, group.inverse(k));
    }
  }
  for (int p = 0; p < n_pts; ++p)
    for (int k1 = 0; k1 < n_g; ++k1) {
      int q = act[static_cast<size_t>(k1)][static_cast<size_t>(p)];
      for (int k2 = 0; k2 < n_g; ++k2)
        data.compose.push_back({id_of(q, k2), id_of(p, k1),
                                id_of(p, table[static_cast<size_t>(k2)][static_cast<size_t>(k1)])});
    }
  return FiniteGroupoid(std::move(data));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  GroupoidData data;
  data.objects = a.objects() + b.objects();
  const int obj_off = a.objects();
  const int arr_off = a.arrow_count();
  data.arrows = a.data().arrows;
  for (const Arrow& ar : b.data().arrows)
    data.arrows.push_back(Arrow{ar.src + obj_off, ar.tgt + obj_off});
  data.identity = a.data().identity;
  for (int e : b.data().identity) data.identity.push_back(e + arr_off);
  data.inverse = a.data().inverse;
  for (int i : b.data().inverse) data.inverse.push_back(i + arr_off);
  data.compose = a.data().compose;
  for (const auto& e : b.data().compose)
    data.compose.push_back({e.g + arr_off, e.h + arr_off, e.gh + arr_off});
  return FiniteGroupoid(std::move(data));
}

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
  return t;
}

std::vector<std::vector<int>> klein_table() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = i ^ j;
  return t;
}

std::vector<std::vector<int>> s3_table() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p = {0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  auto index_of = [&perms](const std::array<int, 3>& q) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == q) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      std::array<int, 3> comp;
      for (int k = 0; k < 3; ++k)
        comp[static_cast<size_t>(k)] =
            perms[i][static_cast<size_t>(perms[j][static_cast<size_t>(k)])];
      t[i][j] = index_of(comp);
    }
  return t;
}

}  // namespace gmoduli
