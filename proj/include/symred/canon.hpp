#ifndef SYMRED_CANON_HPP
#define SYMRED_CANON_HPP

#include "symred/perm.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace symred {

using Vertex = int;
using Color = int;

/*
  Undirected simple graph with one color per vertex. Adjacency is kept as
  sorted neighbor lists, so two graphs compare equal exactly when their
  orders, color arrays and edge sets agree.
*/
class ColoredGraph {
public:
  ColoredGraph() = default;
  explicit ColoredGraph(int order, Color color = 0);
  explicit ColoredGraph(std::vector<Color> colors);
  /// Bulk construction. Throws InputError on loops, duplicate or
  /// out-of-range edges.
  ColoredGraph(std::vector<Color> colors, std::span<const std::pair<Vertex, Vertex>> edges);

  int order() const { return static_cast<int>(colors_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  Vertex add_vertex(Color color);
  /// Returns false if the edge was already present. Throws InputError on
  /// loops or out-of-range endpoints.
  bool add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  Color color(Vertex v) const { return colors_[static_cast<std::size_t>(v)]; }
  void set_color(Vertex v, Color c);
  const std::vector<Color>& colors() const { return colors_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }

  /// All edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;

private:
  std::vector<Color> colors_;
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

/// G^gamma: vertex v of g becomes vertex v^gamma.
ColoredGraph relabel(const ColoredGraph& g, const Permutation& gamma);

/// True when gamma maps g onto itself (colors and edges).
bool is_automorphism(const ColoredGraph& g, const Permutation& gamma);

struct CanonResult {
  /// kappa(G): vertex v is placed at position labeling[v] of the canonical form.
  Permutation labeling;
  ColoredGraph canonical;
  GeneratorSet aut_generators;
  /// Product of the first-path orbit sizes; exact for the search performed.
  double aut_order_estimate = 1.0;
};

/// Canonical labeling with automorphism group generators, computed by
/// individualization-refinement. Isomorphic inputs yield equal canonical
/// graphs.
CanonResult canonical_form(const ColoredGraph& g);

/// Canonical form of g with extra edges added (not already present in g).
/// With build_canonical false, result.canonical is left empty.
CanonResult canonical_form(const ColoredGraph& g, std::span<const std::pair<Vertex, Vertex>> extra_edges,
                           bool build_canonical = true);

/*
  Precomputed data for canonizing many graphs that share the base graph g and
  differ only in extra edges. Copies are cheap and share state.
*/
class CanonBase {
public:
  CanonBase() = default;
  explicit CanonBase(const ColoredGraph& g);

  bool empty() const { return !data_; }
  const ColoredGraph& graph() const;

  struct Data;
  const Data& data() const { return *data_; }

private:
  std::shared_ptr<const Data> data_;
};

/// Vertex hashes of base.graph() plus extra edges after the given number of
/// color-refinement rounds. Isomorphisms of such graphs preserve them.
void refinement_hashes(const CanonBase& base, std::span<const std::pair<Vertex, Vertex>> extra_edges,
                       int rounds, std::vector<std::uint64_t>& out);

/*
  Two-phase canonical labeling of g plus extra edges. Construction refines
  the color partition to an equitable one; run() completes the search.
  Canonical positions respect the order of the refined cells, so
  root_cell() already ranks vertices of different cells.
*/
class Canonizer {
public:
  Canonizer(const ColoredGraph& g, std::span<const std::pair<Vertex, Vertex>> extra_edges = {});
  Canonizer(const CanonBase& base, std::span<const std::pair<Vertex, Vertex>> extra_edges = {});
  ~Canonizer();
  Canonizer(const Canonizer&) = delete;
  Canonizer& operator=(const Canonizer&) = delete;

  /// Start position of v's cell in the refined color partition.
  int root_cell(Vertex v) const;
  /// May be called once.
  CanonResult run(bool build_canonical = true);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

using OrderedPartition = std::vector<std::vector<Vertex>>;

/// Coarsest equitable refinement of an ordered partition whose cells respect
/// the vertex colors. Cells of the result are returned with sorted members.
OrderedPartition refine(const ColoredGraph& g, const OrderedPartition& partition);

/// Restricts every automorphism generator to the given vertices, re-indexed
/// densely by their position in the list. Throws EncodingError if some
/// generator maps a listed vertex outside the list.
GeneratorSet induced_variable_action(const CanonResult& result, std::span<const Vertex> var_vertices);

} // namespace symred

#endif
