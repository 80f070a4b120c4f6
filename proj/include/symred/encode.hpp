#ifndef SYMRED_ENCODE_HPP
#define SYMRED_ENCODE_HPP

#include "symred/assignment.hpp"
#include "symred/canon.hpp"

#include <span>
#include <vector>

namespace symred {

/// CNF over variables 1..num_vars; literals are signed DIMACS integers.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

enum class ValueMode {
  /// Symmetries permute variables only; one uniquely colored vertex per value.
  global_values,
  /// Symmetries may also permute the values of each variable independently,
  /// realized with one vertex per (variable, value) literal.
  per_variable_values,
};

/*
  A vertex-colored graph whose automorphism group, projected to the variable
  vertices, is the symmetry group of a constraint system.

  Projected group elements act on the "action domain": points 0..n-1 are the
  variables; in per_variable_values mode they are followed by the n*|R|
  (variable, value) pairs, pair (u, r) at n + u*|R| + r. Ordering points by
  index orders pairs lexicographically.
*/
struct SymmetryModel {
  ColoredGraph graph;
  ValueMode value_mode = ValueMode::global_values;
  int num_vars = 0;
  int num_values = 2;
  std::vector<Vertex> var_vertex;
  std::vector<Vertex> value_vertex;    // global_values: one per value
  std::vector<Vertex> literal_vertex;  // per_variable_values: index u*|R| + r
  Vertex marker_vertex = -1;           // per_variable_values only

  int action_degree() const;
  std::vector<Vertex> action_vertices() const;
  int pair_point(Var u, Value r) const { return num_vars + u * num_values + r; }
};

/// Builds the clause graph: variable, negative-literal and clause vertices.
/// Values are {0 = false, 1 = true}. Throws InputError on bad literals.
SymmetryModel cnf_to_model(const Cnf& f, ValueMode mode);

/// Wraps a user graph whose first num_vars vertices are the variables, and
/// appends value (or literal and marker) vertices. Throws EncodingError if a
/// variable vertex shares its color with a non-variable vertex.
SymmetryModel load_aux_model(const ColoredGraph& g, int num_vars, ValueMode mode, int num_values = 2);

/// G joined to mark the variable set W; its projected automorphism group is
/// the setwise stabilizer of W.
ColoredGraph attach_set(const SymmetryModel& m, std::span<const Var> w);

/// G joined to encode the partial assignment x.
ColoredGraph attach_assignment(const SymmetryModel& m, const PartialAssignment& x);

/// The edges attach_assignment adds to m.graph.
std::vector<std::pair<Vertex, Vertex>> assignment_edges(const SymmetryModel& m, const PartialAssignment& x);

struct AssignmentLabel {
  /// Canonical form of the assignment graph; equal keys iff isomorphic.
  ColoredGraph key;
  /// Canonical position of each variable vertex.
  std::vector<int> position;
  /// Variables ranked by canonical position.
  Permutation kappa_u;
  /// Aut(x) on the action domain.
  GeneratorSet aut;
};

/// Label of an assignment from the canonical labeling of its graph.
AssignmentLabel assignment_label(const SymmetryModel& m, CanonResult c);

/// With with_key false the canonical graph is not materialized.
AssignmentLabel kappa_of_assignment(const SymmetryModel& m, const PartialAssignment& x, bool with_key = true);

/// Projected automorphism group of the given graph (typically m.graph or an
/// attach_* result) on the action domain.
GeneratorSet projected_group(const SymmetryModel& m, const ColoredGraph& g);

/// Throws EncodingError if the variable colors are not separated from the
/// colors of all other vertices.
void check_color_separation(const SymmetryModel& m);

} // namespace symred

#endif
