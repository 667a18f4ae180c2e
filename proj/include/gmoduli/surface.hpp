#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gmoduli {

/// Words over oriented edges (or generators) are sequences of nonzero
/// letters: +(k+1) traverses edge/generator k forwards, -(k+1) backwards.
/// Words are read first letter first; the composite arrow of a word applies
/// later letters after earlier ones.
inline int letter_index(int letter) { return (letter > 0 ? letter : -letter) - 1; }
inline bool letter_reversed(int letter) { return letter < 0; }
inline int make_letter(int index, bool reversed) { return reversed ? -(index + 1) : index + 1; }
std::vector<int> invert_word(const std::vector<int>& word);

/// Presentation of the fundamental group of an orientable surface: 2g
/// generators a1,b1,...,ag,bg with either the commutator-product relator
/// (closed case) or a free group with the same word marking the boundary
/// (one boundary component).
struct SurfacePresentation {
  int genus = 0;
  int boundary_components = 0;
  std::vector<std::string> generator_names;  // a1, b1, ...
  std::vector<int> relator;                  // closed case only
  std::vector<int> boundary_word;            // bordered case only
  int generator_count() const { return static_cast<int>(generator_names.size()); }
};

SurfacePresentation closed_presentation(int genus);
SurfacePresentation bordered_presentation(int genus);
/// [a1,b1][a2,b2]...[ag,bg] as a word over 2g generators.
std::vector<int> commutator_product_word(int genus);

/// Combinatorial closed or one-boundary surface: vertices, oriented edges,
/// and faces given by closed edge words. Face words of interior edges use
/// each edge once per orientation; boundary edges appear in exactly one
/// face word.
struct CWSurface {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (src, tgt)
  std::vector<std::vector<int>> faces;     // edge words
  int base = 0;

  std::vector<int> boundary_edges;     // empty for closed surfaces
  std::vector<int> boundary_vertices;  // endpoints of boundary edges
  std::vector<int> handle_edges;       // a/b loop edges of the standard models
  int genus = -1;                      // advertised; -1 when unknown
  int boundary_components = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  int euler_characteristic() const { return vertices - edge_count() + face_count(); }
  bool is_boundary_edge(int e) const;
  bool is_boundary_vertex(int v) const;
};

/// Structural validation: ranges, face words chain and close, edge-use
/// counts, Euler characteristic against the advertised genus/boundary.
/// Throws std::invalid_argument on the first problem found.
void validate_cw(const CWSurface& c);

/// Start vertex of a face word letter.
int letter_tail(const CWSurface& c, int letter);
int letter_head(const CWSurface& c, int letter);

/// n x n grid torus: V = n^2, E = 2 n^2, F = n^2 squares. torus_grid(1) is
/// the one-vertex torus with face word a b a⁻¹ b⁻¹.
CWSurface torus_grid(int n);
/// One vertex, one loop, two disk faces glued along it; χ = 2.
CWSurface sphere_cw();
/// One-vertex model of the closed genus-g surface: 2g loop edges, one
/// 4g-gon face. g = 0 gives one vertex, no edges, one empty face.
CWSurface genus_g_cw(int g);
/// One-vertex genus-g surface with one boundary circle: loop edges
/// a1,b1,...,ag,bg plus a boundary loop d, one face forcing d to equal the
/// commutator product. With subdivide_boundary the boundary circle gets a
/// second vertex and splits into two edges.
CWSurface bordered_cw(int g, bool subdivide_boundary = false);

/// Spanning tree of the 1-skeleton rooted at the base vertex, plus one loop
/// generator per non-tree edge: tree path to the edge's source, the edge,
/// tree path back. Throws std::invalid_argument when disconnected.
struct SpanningTree {
  std::vector<int> tree_edges;  // in discovery order
  std::vector<char> in_tree;    // by edge id
  std::vector<int> loop_edges;  // non-tree edges, ascending
  std::vector<std::vector<int>> loop_words;
  std::vector<std::vector<int>> path_from_base;  // per vertex, as letters
};
SpanningTree spanning_tree(const CWSurface& c);

}  // namespace gmoduli
