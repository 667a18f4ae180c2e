#include "gmoduli/surface.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace gmoduli {

std::vector<int> invert_word(const std::vector<int>& word) {
  std::vector<int> out(word.rbegin(), word.rend());
  for (int& l : out) l = -l;
  return out;
}

std::vector<int> commutator_product_word(int genus) {
  std::vector<int> word;
  word.reserve(static_cast<size_t>(4 * genus));
  for (int i = 0; i < genus; ++i) {
    int a = 2 * i, b = 2 * i + 1;
    word.push_back(make_letter(a, false));
    word.push_back(make_letter(b, false));
    word.push_back(make_letter(a, true));
    word.push_back(make_letter(b, true));
  }
  return word;
}

namespace {

std::vector<std::string> handle_generator_names(int genus) {
  std::vector<std::string> names;
  for (int i = 1; i <= genus; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("b" + std::to_string(i));
  }
  return names;
}

}  // namespace

SurfacePresentation closed_presentation(int genus) {
  if (genus < 0) throw std::invalid_argument("genus must be non-negative");
  SurfacePresentation p;
  p.genus = genus;
  p.boundary_components = 0;
  p.generator_names = handle_generator_names(genus);
  p.relator = commutator_product_word(genus);
  return p;
}

SurfacePresentation bordered_presentation(int genus) {
  if (genus < 0) throw std::invalid_argument("genus must be non-negative");
  SurfacePresentation p;
  p.genus = genus;
  p.boundary_components = 1;
  p.generator_names = handle_generator_names(genus);
  p.boundary_word = commutator_product_word(genus);
  return p;
}

bool CWSurface::is_boundary_edge(int e) const {
  return std::find(boundary_edges.begin(), boundary_edges.end(), e) != boundary_edges.end();
}

bool CWSurface::is_boundary_vertex(int v) const {
  return std::find(boundary_vertices.begin(), boundary_vertices.end(), v) !=
         boundary_vertices.end();
}

int letter_tail(const CWSurface& c, int letter) {
  const auto& e = c.edges[static_cast<size_t>(letter_index(letter))];
  return letter_reversed(letter) ? e.second : e.first;
}

int letter_head(const CWSurface& c, int letter) {
  const auto& e = c.edges[static_cast<size_t>(letter_index(letter))];
  return letter_reversed(letter) ? e.first : e.second;
}

void validate_cw(const CWSurface& c) {
  if (c.vertices <= 0) throw std::invalid_argument("cw surface: need at least one vertex");
  if (c.base < 0 || c.base >= c.vertices)
    throw std::invalid_argument("cw surface: base vertex out of range");
  for (const auto& [s, t] : c.edges)
    if (s < 0 || s >= c.vertices || t < 0 || t >= c.vertices)
      throw std::invalid_argument("cw surface: edge endpoint out of range");

  std::vector<int> fwd_uses(c.edges.size(), 0), bwd_uses(c.edges.size(), 0);
  for (size_t fi = 0; fi < c.faces.size(); ++fi) {
    const auto& word = c.faces[fi];
    for (size_t i = 0; i < word.size(); ++i) {
      int l = word[i];
      if (l == 0 || letter_index(l) >= c.edge_count())
        throw std::invalid_argument("cw surface: bad letter in face " + std::to_string(fi));
      (letter_reversed(l) ? bwd_uses : fwd_uses)[static_cast<size_t>(letter_index(l))] += 1;
      int next = word[(i + 1) % word.size()];
      if (letter_head(c, l) != letter_tail(c, next))
        throw std::invalid_argument("cw surface: face " + std::to_string(fi) +
                                    " does not chain at position " + std::to_string(i));
    }
  }

  for (int e = 0; e < c.edge_count(); ++e) {
    int f = fwd_uses[static_cast<size_t>(e)], b = bwd_uses[static_cast<size_t>(e)];
    if (c.is_boundary_edge(e)) {
      if (f + b != 1)
        throw std::invalid_argument("cw surface: boundary edge " + std::to_string(e) +
                                    " must appear exactly once in face words");
    } else if (f != 1 || b != 1) {
      throw std::invalid_argument("cw surface: interior edge " + std::to_string(e) +
                                  " must appear once per orientation in face words");
    }
  }

  for (int e : c.boundary_edges) {
    if (e < 0 || e >= c.edge_count())
      throw std::invalid_argument("cw surface: boundary edge id out of range");
    if (!c.is_boundary_vertex(c.edges[static_cast<size_t>(e)].first) ||
        !c.is_boundary_vertex(c.edges[static_cast<size_t>(e)].second))
      throw std::invalid_argument("cw surface: boundary edge with non-boundary endpoint");
  }

  if (c.genus >= 0) {
    int expected = c.boundary_components == 0 ? 2 - 2 * c.genus : 2 - 2 * c.genus - c.boundary_components;
    if (c.euler_characteristic() != expected)
      throw std::invalid_argument("cw surface: Euler characteristic disagrees with genus");
  }
}

CWSurface torus_grid(int n) {
  if (n < 1) throw std::invalid_argument("torus_grid: n must be >= 1");
  CWSurface c;
  c.vertices = n * n;
  c.genus = 1;
  auto vtx = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
  auto h_edge = [vtx](int i, int j) { return 2 * vtx(i, j); };
  auto v_edge = [vtx](int i, int j) { return 2 * vtx(i, j) + 1; };
  c.edges.resize(static_cast<size_t>(2 * n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      c.edges[static_cast<size_t>(h_edge(i, j))] = {vtx(i, j), vtx(i, j + 1)};
      c.edges[static_cast<size_t>(v_edge(i, j))] = {vtx(i, j), vtx(i + 1, j)};
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c.faces.push_back({make_letter(h_edge(i, j), false), make_letter(v_edge(i, j + 1), false),
                         make_letter(h_edge(i + 1, j), true), make_letter(v_edge(i, j), true)});
  validate_cw(c);
  return c;
}

CWSurface sphere_cw() {
  CWSurface c;
  c.vertices = 1;
  c.genus = 0;
  c.edges = {{0, 0}};
  c.faces = {{make_letter(0, false)}, {make_letter(0, true)}};
  validate_cw(c);
  return c;
}

CWSurface genus_g_cw(int g) {
  if (g < 0) throw std::invalid_argument("genus_g_cw: genus must be non-negative");
  CWSurface c;
  c.vertices = 1;
  c.genus = g;
  c.edges.assign(static_cast<size_t>(2 * g), {0, 0});
  c.faces = {commutator_product_word(g)};
  for (int e = 0; e < 2 * g; ++e) c.handle_edges.push_back(e);
  validate_cw(c);
  return c;
}

CWSurface bordered_cw(int g, bool subdivide_boundary) {
  if (g < 0) throw std::invalid_argument("bordered_cw: genus must be non-negative");
  CWSurface c;
  c.genus = g;
  c.boundary_components = 1;
  for (int e = 0; e < 2 * g; ++e) c.handle_edges.push_back(e);
  std::vector<int> word = commutator_product_word(g);
  if (!subdivide_boundary) {
    c.vertices = 1;
    c.edges.assign(static_cast<size_t>(2 * g), {0, 0});
    c.edges.push_back({0, 0});  // boundary loop d
    int d = 2 * g;
    word.push_back(make_letter(d, true));  // the face reads P d⁻¹, so d = P
    c.boundary_edges = {d};
    c.boundary_vertices = {0};
  } else {
    c.vertices = 2;
    c.edges.assign(static_cast<size_t>(2 * g), {0, 0});
    c.edges.push_back({0, 1});  // d1
    c.edges.push_back({1, 0});  // d2
    int d1 = 2 * g, d2 = 2 * g + 1;
    word.push_back(make_letter(d2, true));
    word.push_back(make_letter(d1, true));
    c.boundary_edges = {d1, d2};
    c.boundary_vertices = {0, 1};
  }
  c.faces = {word};
  validate_cw(c);
  return c;
}

SpanningTree spanning_tree(const CWSurface& c) {
  SpanningTree tree;
  tree.in_tree.assign(c.edges.size(), 0);
  tree.path_from_base.assign(static_cast<size_t>(c.vertices), {});

  std::vector<std::vector<std::pair<int, int>>> adjacency(static_cast<size_t>(c.vertices));
  for (int e = 0; e < c.edge_count(); ++e) {
    auto [s, t] = c.edges[static_cast<size_t>(e)];
    adjacency[static_cast<size_t>(s)].emplace_back(t, make_letter(e, false));
    if (t != s) adjacency[static_cast<size_t>(t)].emplace_back(s, make_letter(e, true));
  }

  std::vector<char> visited(static_cast<size_t>(c.vertices), 0);
  std::deque<int> queue{c.base};
  visited[static_cast<size_t>(c.base)] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto [w, letter] : adjacency[static_cast<size_t>(v)]) {
      if (visited[static_cast<size_t>(w)]) continue;
      visited[static_cast<size_t>(w)] = 1;
      tree.in_tree[static_cast<size_t>(letter_index(letter))] = 1;
      tree.tree_edges.push_back(letter_index(letter));
      tree.path_from_base[static_cast<size_t>(w)] = tree.path_from_base[static_cast<size_t>(v)];
      tree.path_from_base[static_cast<size_t>(w)].push_back(letter);
      queue.push_back(w);
    }
  }
  for (int v = 0; v < c.vertices; ++v)
    if (!visited[static_cast<size_t>(v)])
      throw std::invalid_argument("spanning_tree: complex is not connected");

  for (int e = 0; e < c.edge_count(); ++e) {
    if (tree.in_tree[static_cast<size_t>(e)]) continue;
    tree.loop_edges.push_back(e);
    auto [u, v] = c.edges[static_cast<size_t>(e)];
    std::vector<int> word = tree.path_from_base[static_cast<size_t>(u)];
    word.push_back(make_letter(e, false));
    std::vector<int> back = invert_word(tree.path_from_base[static_cast<size_t>(v)]);
    word.insert(word.end(), back.begin(), back.end());
    tree.loop_words.push_back(std::move(word));
  }
  return tree;
}

}  // namespace gmoduli
