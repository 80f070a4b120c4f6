#include "symred/encode.hpp"
#include "symred/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace symred {

int SymmetryModel::action_degree() const {
  if (value_mode == ValueMode::per_variable_values) return num_vars + num_vars * num_values;
  return num_vars;
}

std::vector<Vertex> SymmetryModel::action_vertices() const {
  std::vector<Vertex> out = var_vertex;
  if (value_mode == ValueMode::per_variable_values)
    out.insert(out.end(), literal_vertex.begin(), literal_vertex.end());
  return out;
}

namespace {

Color max_color(const ColoredGraph& g) {
  Color c = -1;
  for (Color x : g.colors()) c = std::max(c, x);
  return c;
}

// Adds one vertex per (variable, value), joined to its variable vertex, and
// the marker. All literal vertices share one fresh color.
void add_literals(SymmetryModel& m, Color literal_color, Color marker_color) {
  m.literal_vertex.assign(static_cast<std::size_t>(m.num_vars * m.num_values), -1);
  for (int u = 0; u < m.num_vars; ++u)
    for (int r = 0; r < m.num_values; ++r) {
      Vertex v = m.graph.add_vertex(literal_color);
      m.graph.add_edge(v, m.var_vertex[static_cast<std::size_t>(u)]);
      m.literal_vertex[static_cast<std::size_t>(u * m.num_values + r)] = v;
    }
  m.marker_vertex = m.graph.add_vertex(marker_color);
}

void check_disjoint(const ColoredGraph& g, const std::vector<Vertex>& inside, const char* what) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  std::set<Color> colors;
  for (Vertex v : inside) {
    in[static_cast<std::size_t>(v)] = 1;
    colors.insert(g.color(v));
  }
  std::string bad;
  int count = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (in[static_cast<std::size_t>(v)] || !colors.count(g.color(v))) continue;
    if (count < 10) bad += (bad.empty() ? "" : ", ") + std::to_string(v + 1);
    ++count;
  }
  if (count)
    throw EncodingError(std::string("vertices share a color with ") + what + " vertices: " + bad +
                        (count > 10 ? ", ..." : ""));
}

} // namespace

void check_color_separation(const SymmetryModel& m) {
  check_disjoint(m.graph, m.var_vertex, "variable");
  if (m.value_mode == ValueMode::per_variable_values) check_disjoint(m.graph, m.literal_vertex, "literal");
}

SymmetryModel cnf_to_model(const Cnf& f, ValueMode mode) {
  if (f.num_vars < 0) throw InputError("negative variable count");
  SymmetryModel m;
  m.value_mode = mode;
  m.num_vars = f.num_vars;
  m.num_values = 2;
  const int n = f.num_vars;
  for (int u = 0; u < n; ++u) m.var_vertex.push_back(m.graph.add_vertex(0));

  // lit[0][u]: vertex of the negative literal, lit[1][u]: positive literal.
  std::vector<Vertex> lit[2];
  if (mode == ValueMode::global_values) {
    lit[1] = m.var_vertex;
    for (int u = 0; u < n; ++u) {
      Vertex v = m.graph.add_vertex(1);
      m.graph.add_edge(v, m.var_vertex[static_cast<std::size_t>(u)]);
      lit[0].push_back(v);
    }
  } else {
    add_literals(m, 1, 3);
    for (int u = 0; u < n; ++u)
      for (int r = 0; r < 2; ++r) lit[r].push_back(m.literal_vertex[static_cast<std::size_t>(2 * u + r)]);
  }
  for (const auto& clause : f.clauses) {
    Vertex c = m.graph.add_vertex(2);
    for (int l : clause) {
      if (l == 0 || std::abs(l) > n)
        throw InputError("literal " + std::to_string(l) + " out of range 1.." + std::to_string(n));
      m.graph.add_edge(c, lit[l > 0 ? 1 : 0][static_cast<std::size_t>(std::abs(l) - 1)]);
    }
  }
  if (mode == ValueMode::global_values) {
    m.value_vertex.push_back(m.graph.add_vertex(3));
    m.value_vertex.push_back(m.graph.add_vertex(4));
  }
  check_color_separation(m);
  return m;
}

SymmetryModel load_aux_model(const ColoredGraph& g, int num_vars, ValueMode mode, int num_values) {
  if (num_vars < 0 || num_vars > g.order())
    throw InputError("graph has " + std::to_string(g.order()) + " vertices, fewer than the " +
                     std::to_string(num_vars) + " variables");
  if (num_values < 1) throw InputError("value set must be nonempty");
  SymmetryModel m;
  m.graph = g;
  m.value_mode = mode;
  m.num_vars = num_vars;
  m.num_values = num_values;
  for (int u = 0; u < num_vars; ++u) m.var_vertex.push_back(u);
  // Checked before anything is appended so errors name user vertices only.
  check_disjoint(m.graph, m.var_vertex, "variable");
  Color c = max_color(g) + 1;
  if (mode == ValueMode::global_values) {
    for (int r = 0; r < num_values; ++r) m.value_vertex.push_back(m.graph.add_vertex(c + r));
  } else {
    add_literals(m, c, c + 1);
  }
  check_color_separation(m);
  return m;
}

ColoredGraph attach_set(const SymmetryModel& m, std::span<const Var> w) {
  ColoredGraph g = m.graph;
  Vertex hub = m.value_mode == ValueMode::global_values ? m.value_vertex.at(0) : m.marker_vertex;
  for (Var u : w) g.add_edge(m.var_vertex.at(static_cast<std::size_t>(u)), hub);
  return g;
}

std::vector<std::pair<Vertex, Vertex>> assignment_edges(const SymmetryModel& m, const PartialAssignment& x) {
  std::vector<std::pair<Vertex, Vertex>> e;
  e.reserve(x.bindings().size());
  for (const auto& [u, r] : x.bindings()) {
    if (u < 0 || u >= m.num_vars || r < 0 || r >= m.num_values)
      throw InputError("binding (" + std::to_string(u) + ", " + std::to_string(r) + ") out of range");
    if (m.value_mode == ValueMode::global_values)
      e.emplace_back(m.var_vertex[static_cast<std::size_t>(u)], m.value_vertex[static_cast<std::size_t>(r)]);
    else
      e.emplace_back(m.literal_vertex[static_cast<std::size_t>(u * m.num_values + r)], m.marker_vertex);
  }
  return e;
}

ColoredGraph attach_assignment(const SymmetryModel& m, const PartialAssignment& x) {
  ColoredGraph g = m.graph;
  for (auto [a, b] : assignment_edges(m, x)) g.add_edge(a, b);
  return g;
}

AssignmentLabel kappa_of_assignment(const SymmetryModel& m, const PartialAssignment& x, bool with_key) {
  auto extra = assignment_edges(m, x);
  return assignment_label(m, canonical_form(m.graph, extra, with_key));
}

AssignmentLabel assignment_label(const SymmetryModel& m, CanonResult c) {
  AssignmentLabel out;
  out.position.resize(static_cast<std::size_t>(m.num_vars));
  for (int u = 0; u < m.num_vars; ++u)
    out.position[static_cast<std::size_t>(u)] = c.labeling[m.var_vertex[static_cast<std::size_t>(u)]];
  std::vector<Point> order(static_cast<std::size_t>(m.num_vars));
  for (int u = 0; u < m.num_vars; ++u) order[static_cast<std::size_t>(u)] = u;
  std::sort(order.begin(), order.end(), [&](Point a, Point b) {
    return out.position[static_cast<std::size_t>(a)] < out.position[static_cast<std::size_t>(b)];
  });
  std::vector<Point> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<Point>(i);
  out.kappa_u = Permutation(std::move(rank));
  auto av = m.action_vertices();
  out.aut = induced_variable_action(c, av);
  out.key = std::move(c.canonical);
  return out;
}

GeneratorSet projected_group(const SymmetryModel& m, const ColoredGraph& g) {
  auto av = m.action_vertices();
  return induced_variable_action(canonical_form(g), av);
}

} // namespace symred
