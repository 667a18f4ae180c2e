#pragma once

#include <string>
#include <vector>

namespace gmoduli {

/// One arrow of a finite groupoid. The arrow id is its index in the table.
struct Arrow {
  int src = 0;
  int tgt = 0;
};

struct ComposeEntry {
  int g = 0, h = 0, gh = 0;
};

/// Raw groupoid tables as loaded from a file or assembled by a constructor.
///
/// Composition convention, used everywhere in this codebase: the product
/// g∘h means "g after h" and is defined exactly when tgt(h) == src(g),
/// with src(g∘h) = src(h) and tgt(g∘h) = tgt(g). The opposite convention
/// is also common elsewhere; files written for one convention are not
/// valid for the other.
struct GroupoidData {
  int objects = 0;
  std::vector<Arrow> arrows;
  std::vector<int> identity;          // object -> arrow id
  std::vector<int> inverse;           // arrow id -> arrow id
  std::vector<ComposeEntry> compose;  // every defined product
};

struct AxiomFailure {
  std::string axiom;           // e.g. "inverse_law"
  std::vector<int> witnesses;  // arrow ids (object ids for identity checks)
  std::string detail;
};

struct ValidationReport {
  std::vector<std::string> structural_errors;
  std::vector<AxiomFailure> axiom_failures;
  bool ok() const { return structural_errors.empty() && axiom_failures.empty(); }
  bool has_axiom(const std::string& name) const;
  std::string summary() const;
};

/// Checks the groupoid axioms on raw tables. Structural problems
/// (out-of-range ids, products defined on non-composable pairs, duplicate
/// entries) are reported separately from axiom violations and suppress the
/// axiom checks they would confuse.
ValidationReport validate(const GroupoidData& raw);

/// A validated, immutable finite groupoid with O(1) composition lookup.
/// Instances are safe to share across threads.
class FiniteGroupoid {
public:
  /// Validates the tables; throws std::invalid_argument with the report
  /// summary if they do not define a groupoid.
  explicit FiniteGroupoid(GroupoidData data);

  int objects() const { return data_.objects; }
  int arrow_count() const { return static_cast<int>(data_.arrows.size()); }
  int src(int a) const { return data_.arrows[static_cast<size_t>(a)].src; }
  int tgt(int a) const { return data_.arrows[static_cast<size_t>(a)].tgt; }
  int identity(int x) const { return data_.identity[static_cast<size_t>(x)]; }
  int inverse(int a) const { return data_.inverse[static_cast<size_t>(a)]; }

  /// g∘h ("g after h"); -1 when tgt(h) != src(g).
  int compose(int g, int h) const {
    return table_[static_cast<size_t>(g) * data_.arrows.size() + static_cast<size_t>(h)];
  }
  bool composable(int g, int h) const { return tgt(h) == src(g); }
  /// a∘h∘a⁻¹
  int conjugate(int a, int h) const { return compose(compose(a, h), inverse(a)); }

  const std::vector<int>& arrows_from(int x) const { return from_[static_cast<size_t>(x)]; }
  const std::vector<int>& arrows_into(int y) const { return into_[static_cast<size_t>(y)]; }
  const std::vector<int>& arrows_between(int x, int y) const {
    return between_[static_cast<size_t>(x) * static_cast<size_t>(data_.objects) +
                    static_cast<size_t>(y)];
  }
  const GroupoidData& data() const { return data_; }

private:
  GroupoidData data_;
  std::vector<int> table_;  // arrow_count^2, -1 where undefined
  std::vector<std::vector<int>> from_;
  std::vector<std::vector<int>> into_;
  std::vector<std::vector<int>> between_;
};

/// Partition of 0..n-1 into classes ordered by least member.
struct Partition {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  int size() const { return static_cast<int>(classes.size()); }
};

/// Connectivity classes of objects: x ~ y iff some arrow runs x -> y.
Partition leaves(const FiniteGroupoid& g);

/// Arrows h with src(h) == tgt(h) == x, sorted by id.
std::vector<int> isotropy_arrows(const FiniteGroupoid& g, int x);

/// The isotropy group at x packaged as a one-object groupoid.
/// arrow_ids[i] is the parent arrow behind the group's arrow i.
struct IsotropyGroup {
  FiniteGroupoid group;
  std::vector<int> arrow_ids;
};
IsotropyGroup isotropy_group(const FiniteGroupoid& g, int x);

/// The conjugation isomorphism h -> a∘h∘a⁻¹ from the isotropy group at x
/// to the one at y, for an arrow a: x -> y. Verified bijective and
/// multiplicative before returning; entries sorted by source arrow id.
std::vector<std::pair<int, int>> conjugate_isotropy(const FiniteGroupoid& g, int x, int y, int a);

/// A bisection: sigma[x] is an arrow with source x, and x -> tgt(sigma[x])
/// permutes the objects.
struct Bisection {
  std::vector<int> sigma;
  friend bool operator==(const Bisection&, const Bisection&) = default;
};

/// All bisections, enumerated by backtracking, in lexicographic order.
/// Throws std::runtime_error when the candidate count exceeds `limit`.
std::vector<Bisection> bisections(const FiniteGroupoid& g, long long limit = 1'000'000);

/// Group law (s1*s2)(x) = s1(tgt(s2(x))) ∘ s2(x).
Bisection compose_bisections(const FiniteGroupoid& g, const Bisection& s1, const Bisection& s2);
Bisection identity_bisection(const FiniteGroupoid& g);
Bisection inverse_bisection(const FiniteGroupoid& g, const Bisection& s);
/// x -> tgt(sigma[x])
std::vector<int> bisection_permutation(const FiniteGroupoid& g, const Bisection& s);

/// A subgroupoid: subsets of objects and arrows closed under composition,
/// inverse and the identities of the object subset. Holds a pointer to the
/// parent, which must outlive the subgroupoid.
class Subgroupoid {
public:
  Subgroupoid(const FiniteGroupoid& parent, std::vector<int> object_subset,
              std::vector<int> arrow_subset);
  static Subgroupoid base(const FiniteGroupoid& parent);  // identities only
  static Subgroupoid full(const FiniteGroupoid& parent);

  const FiniteGroupoid& parent() const { return *parent_; }
  const std::vector<int>& objects() const { return objects_; }
  const std::vector<int>& arrows() const { return arrows_; }
  bool has_object(int x) const { return object_mask_[static_cast<size_t>(x)] != 0; }
  bool has_arrow(int a) const { return arrow_mask_[static_cast<size_t>(a)] != 0; }
  const std::vector<int>& arrows_from(int x) const { return from_[static_cast<size_t>(x)]; }
  bool is_full() const;

  /// Leaves of the subgroupoid, as a partition of objects() (indices into
  /// the parent's object range restricted to the sub-base).
  struct SubPartition {
    std::vector<std::vector<int>> classes;  // parent object ids, by least member
  };
  SubPartition leaves() const;

private:
  const FiniteGroupoid* parent_;
  std::vector<int> objects_, arrows_;
  std::vector<char> object_mask_, arrow_mask_;
  std::vector<std::vector<int>> from_;
};

struct DoubleCosetClass {
  int representative = 0;    // least member arrow id
  std::vector<int> members;  // sorted
};

/// Classes of arrows γ with src(γ) in h0's base and tgt(γ) in h1's base,
/// under γ ~ b1∘γ∘b0⁻¹ for b1 in h1, b0 in h0. Sorted by representative.
std::vector<DoubleCosetClass> double_coset(const FiniteGroupoid& g, const Subgroupoid& h0,
                                           const Subgroupoid& h1);

// --- constructors ---------------------------------------------------------

/// One-object groupoid from a group multiplication table
/// (table[a][b] = a∘b). Throws std::invalid_argument on non-group tables.
FiniteGroupoid group_as_groupoid(const std::vector<std::vector<int>>& table);

/// Objects 0..n-1 with exactly one arrow between any two; arrow (x -> y)
/// has id x*n + y.
FiniteGroupoid pair_groupoid(int n);

/// Action groupoid of the group given by `table` acting on points 0..m-1,
/// act[k][p] = k·p. Arrows are pairs (p, k): p -> act[k][p], with id
/// p*|G| + k. Throws std::invalid_argument when act is not an action.
FiniteGroupoid action_groupoid(const std::vector<std::vector<int>>& table,
                               const std::vector<std::vector<int>>& act);

/// Disjoint union, objects and arrows of `a` first.
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

// --- small multiplication tables ------------------------------------------

std::vector<std::vector<int>> cyclic_table(int n);
std::vector<std::vector<int>> klein_table();
/// S3 with elements the permutations of {0,1,2} in lexicographic order and
/// (p∘q)(i) = p(q(i)).
std::vector<std::vector<int>> s3_table();

}  // namespace gmoduli
