// Shared fixtures and brute-force helpers for the test binaries. Nothing here
// calls the search engine; the helpers are deliberately naive.
#ifndef SYMRED_TESTS_SUPPORT_HPP
#define SYMRED_TESTS_SUPPORT_HPP

#include "symred/canon.hpp"
#include "symred/encode.hpp"
#include "symred/perm.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace support {

using namespace symred;

/// (x1 v x2)(x1 v -x3 v -x5)(x2 v -x4 v -x6).
inline Cnf sample_cnf() { return Cnf{6, {{1, 2}, {1, -3, -5}, {2, -4, -6}}}; }

inline Permutation random_perm(int n, std::mt19937_64& rng) {
  std::vector<Point> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(img[static_cast<std::size_t>(i)], img[rng() % static_cast<std::uint64_t>(i + 1)]);
  return Permutation(std::move(img));
}

inline ColoredGraph random_graph(int n, int colors, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  ColoredGraph g(n);
  for (int v = 0; v < n; ++v) g.set_color(v, static_cast<Color>(rng() % static_cast<std::uint64_t>(colors)));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p) g.add_edge(u, v);
  return g;
}

struct RandomCase {
  SymmetryModel model;
  std::vector<Var> prefix;
};

/// Auxiliary graph on at most 8 vertices whose first K vertices are the
/// variables, a prefix of at most 4 of them in random order, Boolean values.
inline RandomCase random_case(std::mt19937_64& rng, ValueMode mode) {
  const int n = 2 + static_cast<int>(rng() % 7);
  const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(n, 6)));
  ColoredGraph g = random_graph(n, 2, 0.4, rng);
  for (int v = k; v < n; ++v) g.set_color(v, g.color(v) + 2);
  RandomCase c;
  c.model = load_aux_model(g, k, mode);
  std::vector<Var> vars(static_cast<std::size_t>(k));
  std::iota(vars.begin(), vars.end(), 0);
  for (int i = k - 1; i > 0; --i) std::swap(vars[static_cast<std::size_t>(i)], vars[rng() % static_cast<std::uint64_t>(i + 1)]);
  vars.resize(std::min<std::size_t>(vars.size(), 1 + rng() % 4));
  c.prefix = std::move(vars);
  return c;
}

/// Every element of the group, by naive breadth-first multiplication.
inline std::set<std::vector<int>> closure(const GeneratorSet& gens) {
  std::vector<int> id(static_cast<std::size_t>(gens.degree));
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& x : frontier)
      for (const auto& g : gens.generators) {
        std::vector<int> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = g[x[i]];
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return seen;
}

/// |Aut(g)| by trying all n! vertex permutations.
inline std::uint64_t brute_force_aut_order(const ColoredGraph& g) {
  const int n = g.order();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      if (g.color(p[static_cast<std::size_t>(v)]) != g.color(v)) ok = false;
      for (int x : g.neighbors(v))
        if (ok && !g.has_edge(p[static_cast<std::size_t>(v)], p[static_cast<std::size_t>(x)])) ok = false;
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// All |R|^k assignments of the given variables, first variable least significant.
inline std::vector<PartialAssignment> all_assignments(const std::vector<Var>& vars, int values) {
  std::vector<PartialAssignment> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<std::uint64_t>(values);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Binding> b;
    std::uint64_t c = code;
    for (Var u : vars) {
      b.push_back({u, static_cast<Value>(c % static_cast<std::uint64_t>(values))});
      c /= static_cast<std::uint64_t>(values);
    }
    out.emplace_back(std::move(b));
  }
  return out;
}

/// Image of an assignment under an action-domain element given as an image
/// vector (variables first, then pairs in phase mode).
inline PartialAssignment apply(const std::vector<int>& g, const PartialAssignment& x, const SymmetryModel& m) {
  std::vector<Binding> b;
  for (auto [u, r] : x.bindings()) {
    if (m.value_mode == ValueMode::global_values) {
      b.push_back({g[static_cast<std::size_t>(u)], r});
    } else {
      int q = g[static_cast<std::size_t>(m.pair_point(u, r))] - m.num_vars;
      b.push_back({q / m.num_values, q % m.num_values});
    }
  }
  return PartialAssignment(std::move(b));
}

/// Orbit count of R^prefix under the elements of the full group that fix the
/// prefix setwise, by explicit enumeration.
inline std::uint64_t naive_orbit_count(const SymmetryModel& m, const std::vector<Var>& prefix) {
  auto group = closure(projected_group(m, m.graph));
  std::set<Var> w(prefix.begin(), prefix.end());
  std::vector<std::vector<int>> stab;
  for (const auto& g : group) {
    bool fixes = true;
    for (Var u : prefix) fixes = fixes && w.count(g[static_cast<std::size_t>(u)]);
    if (fixes) stab.push_back(g);
  }
  std::set<PartialAssignment> seen;
  std::uint64_t orbits = 0;
  for (const auto& x : all_assignments(prefix, m.num_values)) {
    if (seen.count(x)) continue;
    ++orbits;
    for (const auto& g : stab) seen.insert(apply(g, x, m));
  }
  return orbits;
}

} // namespace support

#endif
