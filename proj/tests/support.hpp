#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the library code paths they are used to check.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "gmoduli/groupoid.hpp"

namespace testsupport {

using Table = std::vector<std::vector<int>>;

inline Table z2_table() { return gmoduli::cyclic_table(2); }
inline Table z3_table() { return gmoduli::cyclic_table(3); }
inline Table z4_table() { return gmoduli::cyclic_table(4); }

inline Table swap_action_z2() { return {{0, 1}, {1, 0}}; }
inline Table trivial_action_z2() { return {{0, 1}, {0, 1}}; }
/// Natural S3 action on three points (the coset action of a point
/// stabilizer), rows indexed like gmoduli::s3_table().
inline Table natural_action_s3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p = {0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  Table act(6, std::vector<int>(3));
  for (int k = 0; k < 6; ++k)
    for (int m = 0; m < 3; ++m) act[k][m] = perms[static_cast<size_t>(k)][static_cast<size_t>(m)];
  return act;
}

/// Orbit partition of a group action, computed directly from the table.
inline std::vector<std::vector<int>> orbit_partition(const Table& act) {
  const int points = act.empty() ? 0 : static_cast<int>(act[0].size());
  std::vector<int> orbit_of(points, -1);
  std::vector<std::vector<int>> orbits;
  for (int p = 0; p < points; ++p) {
    if (orbit_of[p] != -1) continue;
    std::vector<int> orbit;
    std::set<int> seen{p};
    std::vector<int> stack{p};
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      orbit.push_back(q);
      for (const auto& row : act)
        if (!seen.count(row[static_cast<size_t>(q)])) {
          seen.insert(row[static_cast<size_t>(q)]);
          stack.push_back(row[static_cast<size_t>(q)]);
        }
    }
    std::sort(orbit.begin(), orbit.end());
    for (int q : orbit) orbit_of[q] = static_cast<int>(orbits.size());
    orbits.push_back(orbit);
  }
  return orbits;
}

/// Stabilizer subgroup of a point, as a multiplication table over the
/// stabilizing elements (in ascending element order).
inline Table stabilizer_table(const Table& group, const Table& act, int point) {
  std::vector<int> elements;
  for (int k = 0; k < static_cast<int>(group.size()); ++k)
    if (act[static_cast<size_t>(k)][static_cast<size_t>(point)] == point) elements.push_back(k);
  std::map<int, int> index;
  for (size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<int>(i);
  Table t(elements.size(), std::vector<int>(elements.size()));
  for (size_t i = 0; i < elements.size(); ++i)
    for (size_t j = 0; j < elements.size(); ++j)
      t[i][j] = index.at(group[static_cast<size_t>(elements[i])][static_cast<size_t>(elements[j])]);
  return t;
}

/// Backtracking isomorphism search between small group tables.
inline bool tables_isomorphic(const Table& a, const Table& b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) return false;
  std::vector<int> map(static_cast<size_t>(n), -1), inv(static_cast<size_t>(n), -1);
  auto consistent = [&]() {
    for (int x = 0; x < n; ++x) {
      if (map[static_cast<size_t>(x)] < 0) continue;
      for (int y = 0; y < n; ++y) {
        if (map[static_cast<size_t>(y)] < 0) continue;
        int prod = a[static_cast<size_t>(x)][static_cast<size_t>(y)];
        int target = b[static_cast<size_t>(map[static_cast<size_t>(x)])]
                      [static_cast<size_t>(map[static_cast<size_t>(y)])];
        if (map[static_cast<size_t>(prod)] >= 0) {
          if (map[static_cast<size_t>(prod)] != target) return false;
        } else if (inv[static_cast<size_t>(target)] >= 0) {
          return false;  // target already taken by a different element
        }
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int target = 0; target < n; ++target) {
      if (inv[static_cast<size_t>(target)] >= 0) continue;
      map[static_cast<size_t>(i)] = target;
      inv[static_cast<size_t>(target)] = i;
      if (consistent() && self(self, i + 1)) return true;
      inv[static_cast<size_t>(target)] = -1;
      map[static_cast<size_t>(i)] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

/// Number of commuting pairs in a group table, by the double loop.
inline long long commuting_pair_count(const Table& t) {
  long long count = 0;
  for (size_t a = 0; a < t.size(); ++a)
    for (size_t b = 0; b < t.size(); ++b)
      if (t[a][b] == t[b][a]) ++count;
  return count;
}

/// Conjugation-orbit count of a list of arrow tuples over one base object
/// of a one-object groupoid, by full closure (independent of the library's
/// breadth-first search).
inline long long tuple_conjugation_classes(const gmoduli::FiniteGroupoid& group,
                                           const std::vector<std::vector<int>>& tuples) {
  std::set<std::vector<int>> pending(tuples.begin(), tuples.end());
  long long classes = 0;
  while (!pending.empty()) {
    ++classes;
    std::vector<int> seed = *pending.begin();
    for (int k = 0; k < group.arrow_count(); ++k) {
      std::vector<int> image;
      image.reserve(seed.size());
      for (int a : seed) image.push_back(group.conjugate(k, a));
      pending.erase(image);
    }
    pending.erase(seed);
  }
  return classes;
}

/// Double cosets of `candidates` under b1 * c * b0_inverse moves, computed
/// by repeated set closure.
inline long long double_coset_count_oracle(const gmoduli::FiniteGroupoid& g,
                                           const std::vector<int>& h0_arrows,
                                           const std::vector<int>& h1_arrows,
                                           const std::vector<int>& candidates) {
  std::set<int> pending(candidates.begin(), candidates.end());
  long long classes = 0;
  while (!pending.empty()) {
    ++classes;
    std::set<int> orbit{*pending.begin()};
    for (;;) {
      std::set<int> grown = orbit;
      for (int c : orbit) {
        for (int b1 : h1_arrows)
          if (g.composable(b1, c)) grown.insert(g.compose(b1, c));
        for (int b0 : h0_arrows) {
          int b0_inv = g.inverse(b0);
          if (g.composable(c, b0_inv)) grown.insert(g.compose(c, b0_inv));
        }
      }
      if (grown == orbit) break;
      orbit.swap(grown);
    }
    for (int c : orbit) pending.erase(c);
  }
  return classes;
}

/// Rank of an integer matrix by fraction-free elimination.
inline int integer_rank(std::vector<std::vector<long long>> m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[static_cast<size_t>(pivot)], m[static_cast<size_t>(rank)]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      long long a = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (a == 0) continue;
      long long p = m[static_cast<size_t>(rank)][static_cast<size_t>(col)];
      for (int cc = 0; cc < cols; ++cc)
        m[static_cast<size_t>(r)][static_cast<size_t>(cc)] =
            m[static_cast<size_t>(r)][static_cast<size_t>(cc)] * p -
            m[static_cast<size_t>(rank)][static_cast<size_t>(cc)] * a;
    }
    ++rank;
  }
  return rank;
}

}  // namespace testsupport
