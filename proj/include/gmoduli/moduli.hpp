#pragma once

#include <compare>
#include <vector>

#include "gmoduli/groupoid.hpp"
#include "gmoduli/lattice.hpp"
#include "gmoduli/surface.hpp"

namespace gmoduli {

/// A representation of the surface group at a base object: a tuple of
/// isotropy arrows, one per generator (or per loop generator of a CW
/// presentation).
struct FlatRep {
  int base = 0;
  std::vector<int> tuple;
  friend auto operator<=>(const FlatRep&, const FlatRep&) = default;
};

struct ModuliClass {
  FlatRep representative;  // least member of the conjugation orbit
  long long orbit_size = 0;
  int leaf = 0;
};

struct LeafModuli {
  int leaf = 0;
  std::vector<int> leaf_objects;
  long long rep_count = 0;
  std::vector<ModuliClass> classes;
};

struct ModuliOptions {
  long long limit = 100'000'000;  // tuples enumerated per object
  int threads = 1;
};

/// Closed-surface moduli: per object, tuples (z1,w1,...,zg,wg) of isotropy
/// arrows whose commutator-product word is the identity, quotiented by
/// conjugation with every arrow of the groupoid (which moves base objects
/// within a leaf). Grouped by leaf.
std::vector<LeafModuli> moduli_closed(const FiniteGroupoid& g, int genus,
                                      const ModuliOptions& opts = {});

/// One-boundary moduli: free 2g-tuples of isotropy arrows with the boundary
/// word landing in the subgroupoid, quotiented by conjugation with the
/// subgroupoid's arrows only. Grouped by leaves of the subgroupoid.
std::vector<LeafModuli> moduli_open(const FiniteGroupoid& g, int genus, const Subgroupoid& sub,
                                    const ModuliOptions& opts = {});

/// Square-with-boundary moduli; classes of arrows between the two
/// subgroupoids' bases under their two-sided action.
std::vector<DoubleCosetClass> moduli_interval(const FiniteGroupoid& g, const Subgroupoid& sub0,
                                              const Subgroupoid& sub1);

/// Number of commutator-product solutions summed over the given objects.
long long count_morphisms(const FiniteGroupoid& g, int genus, const std::vector<int>& objects,
                          long long limit = 100'000'000);

struct CompareLeaf {
  int leaf = 0;
  long long lattice_orbits = 0;
  long long holonomy_classes = 0;
  long long presentation_classes = 0;  // from the standard 2g-generator presentation
  bool match() const {
    return lattice_orbits == holonomy_classes && holonomy_classes == presentation_classes;
  }
};

struct BijectionEntry {
  LatticeMorphism orbit_representative;
  FlatRep class_representative;
};

struct CompareReport {
  int genus = 0;
  long long field_count = 0;
  long long rep_count = 0;
  std::vector<CompareLeaf> per_leaf;
  std::vector<BijectionEntry> bijection;
  bool ok = false;
  std::string failure;
};

struct CompareOptions {
  long long limit = 100'000'000;
  int threads = 1;
};

/// Closed case: gauge orbits of flat lattice fields on `c` against
/// conjugation classes of loop-generator holonomies, with an explicit
/// orbit -> class bijection, and against the standard-presentation moduli
/// count for the surface's genus. Throws std::invalid_argument when `c` has
/// boundary; sets ok=false and `failure` on any mismatch.
CompareReport compare_lattice_vs_holonomy(const CWSurface& c, const FiniteGroupoid& g,
                                          const CompareOptions& opts = {});

/// Bordered case of the comparison, for the standard bordered models (the
/// handle edges of `c` identify the a/b loop generators). Lattice fields and
/// gauge moves respect the boundary subgroupoid; the holonomy side is
/// moduli_open. Leaves are leaves of the subgroupoid.
CompareReport compare_open(const CWSurface& c, const FiniteGroupoid& g, const Subgroupoid& sub,
                           const CompareOptions& opts = {});

}  // namespace gmoduli
