#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "gmoduli/groupoid.hpp"
#include "gmoduli/surface.hpp"

namespace gmoduli {

/// A groupoid-valued lattice field on a CWSurface: an object per vertex and
/// an arrow per oriented edge. It represents a morphism of the surface's
/// path groupoid when it is anchored (edge arrows run between the objects
/// of their endpoints) and flat (every face word composes to an identity).
struct LatticeMorphism {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  friend auto operator<=>(const LatticeMorphism&, const LatticeMorphism&) = default;
};

/// Pointwise gauge transformation: an arrow per vertex whose source is the
/// vertex's current object.
struct GaugeElement {
  std::vector<int> phi;
};

struct FlatnessViolation {
  enum class Kind { EdgeSource, EdgeTarget, Face } kind;
  int index = 0;   // edge or face id
  std::string detail;
};

struct FlatnessReport {
  std::vector<std::string> structural_errors;
  std::vector<FlatnessViolation> violations;
  bool pass() const { return structural_errors.empty() && violations.empty(); }
  std::string summary() const;
};

FlatnessReport check_flatness(const CWSurface& c, const LatticeMorphism& m,
                              const FiniteGroupoid& g);

/// Composite arrow of a non-empty edge word under the field (later letters
/// applied after earlier ones). Requires an anchored field.
int evaluate_word(const FiniteGroupoid& g, const LatticeMorphism& m, std::span<const int> word);

/// New field: vertex v moves to tgt(phi[v]); an edge u -> v picks up
/// phi[v] on the left and phi[u]⁻¹ on the right. Throws
/// std::invalid_argument when phi is not anchored at m.
LatticeMorphism apply_gauge(const CWSurface& c, const FiniteGroupoid& g,
                            const LatticeMorphism& m, const GaugeElement& phi);

GaugeElement compose_gauge(const FiniteGroupoid& g, const GaugeElement& later,
                           const GaugeElement& earlier);

struct EnumerateOptions {
  long long limit = 100'000'000;  // raw candidate bound before pruning
  bool gauge_fixed = false;       // pin spanning-tree edges to identities
  int threads = 1;
  const Subgroupoid* boundary = nullptr;  // boundary condition, bordered case
};

/// All anchored flat fields, sorted. Enumeration assigns spanning-tree
/// edges first and prunes on each face as soon as its last edge is set.
std::vector<LatticeMorphism> enumerate_flat(const CWSurface& c, const FiniteGroupoid& g,
                                            const EnumerateOptions& opts = {});

struct GaugeOrbit {
  LatticeMorphism representative;   // lexicographically least member
  std::vector<int> member_indices;  // into the input field list, sorted
  int leaf = 0;                     // leaf of the representative's objects
};

/// Partition of `fields` (sorted, as produced by enumerate_flat) into gauge
/// orbits. Orbits are generated by single-vertex moves, which reach the
/// full pointwise gauge action. With a boundary condition, moves at
/// boundary vertices are restricted to the subgroupoid.
std::vector<GaugeOrbit> gauge_orbits(const CWSurface& c, const FiniteGroupoid& g,
                                     const std::vector<LatticeMorphism>& fields,
                                     const Subgroupoid* boundary = nullptr);

struct Holonomy {
  int base_object = 0;
  std::vector<int> loop_values;  // per loop generator, in loop_edges order
};

/// Values of the spanning-tree loop generators; each lies in the isotropy
/// group at the base vertex's object.
Holonomy holonomy(const CWSurface& c, const FiniteGroupoid& g, const LatticeMorphism& m,
                  const SpanningTree& tree);

}  // namespace gmoduli
