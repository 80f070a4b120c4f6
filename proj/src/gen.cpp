#include "symred/gen.hpp"
#include "symred/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace symred {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

} // namespace

SymmetryModel instance_model(const Instance& inst, ValueMode mode) {
  if (inst.aux) return load_aux_model(*inst.aux, inst.aux_vars, mode);
  return cnf_to_model(inst.cnf, mode);
}

std::vector<int> tensor_target(int m, int ones, std::uint64_t seed) {
  const int cells = m * m * m;
  require(m >= 1 && ones >= 1 && ones <= cells, "tensor needs m >= 1 and 1 <= n <= m^3");
  std::vector<int> idx(static_cast<std::size_t>(cells));
  std::iota(idx.begin(), idx.end(), 0);
  // Explicit Fisher-Yates: std::shuffle is not specified bit-for-bit.
  std::mt19937_64 rng(seed);
  for (int i = cells - 1; i > 0; --i) {
    auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  std::vector<int> t(static_cast<std::size_t>(cells), 0);
  for (int i = 0; i < ones; ++i) t[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1;
  return t;
}

Instance gen_tensor(int m, int r, int ones, std::uint64_t seed) {
  require(r >= 1, "tensor rank r must be at least 1");
  std::vector<int> target = tensor_target(m, ones, seed);
  Instance inst;
  inst.name = "t" + std::to_string(m) + "_" + std::to_string(r) + "_" + std::to_string(ones);
  const int mr = m * r;
  auto a = [&](int i, int l) { return i * r + l + 1; };
  auto b = [&](int j, int l) { return mr + j * r + l + 1; };
  auto c = [&](int k, int l) { return 2 * mr + k * r + l + 1; };
  int next = 3 * mr;
  auto& cl = inst.cnf.clauses;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        std::vector<int> w;
        for (int l = 0; l < r; ++l) {
          int x = ++next;
          w.push_back(x);
          cl.push_back({-x, a(i, l)});
          cl.push_back({-x, b(j, l)});
          cl.push_back({-x, c(k, l)});
          cl.push_back({x, -a(i, l), -b(j, l), -c(k, l)});
        }
        int acc = w[0];
        for (int l = 1; l < r; ++l) {
          int s = ++next, y = w[static_cast<std::size_t>(l)];
          cl.push_back({-s, acc, y});
          cl.push_back({-s, -acc, -y});
          cl.push_back({s, -acc, y});
          cl.push_back({s, acc, -y});
          acc = s;
        }
        cl.push_back({target[static_cast<std::size_t>((i * m + j) * m + k)] ? acc : -acc});
      }
  inst.cnf.num_vars = next;

  // Matrix variables (one color per matrix), then per equation r product
  // vertices and a sum vertex, then the constants 0 and 1.
  ColoredGraph g;
  for (int v = 0; v < 3 * mr; ++v) g.add_vertex(v / mr);
  const Vertex zero = 3 * mr + m * m * m * (r + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        std::vector<Vertex> prods;
        for (int l = 0; l < r; ++l) {
          Vertex p = g.add_vertex(3);
          g.add_edge(p, a(i, l) - 1);
          g.add_edge(p, b(j, l) - 1);
          g.add_edge(p, c(k, l) - 1);
          prods.push_back(p);
        }
        Vertex s = g.add_vertex(4);
        for (Vertex p : prods) g.add_edge(s, p);
      }
  g.add_vertex(5);
  g.add_vertex(6);
  for (int e = 0; e < m * m * m; ++e) {
    Vertex s = 3 * mr + e * (r + 1) + r;
    g.add_edge(s, zero + target[static_cast<std::size_t>(e)]);
  }
  inst.aux = std::move(g);
  inst.aux_vars = 3 * mr;
  for (int i = 0; i < std::min(3, m); ++i)
    for (int l = 0; l < r; ++l) inst.prefix.push_back(a(i, l) - 1);
  return inst;
}

Instance gen_ccp(int n, int s, int t) {
  require(n >= s && s >= 1 && t >= 1, "ccp needs n >= s >= 1 and t >= 1");
  Instance inst;
  inst.name = "ccp" + std::to_string(n) + "_" + std::to_string(s) + "_" + std::to_string(t);
  // x index for ordered pair (i, j), i != j, row-major skipping the diagonal.
  auto x = [&](int i, int j) { return i * (n - 1) + (j < i ? j : j - 1) + 1; };
  const int nx = n * (n - 1);
  auto y = [&](int p, int j) { return nx + p * n + j + 1; };
  auto z = [&](int i, int k) { return nx + s * n + i * t + k + 1; };
  inst.cnf.num_vars = nx + s * n + t * n;
  auto& cl = inst.cnf.clauses;
  for (int p = 0; p < s; ++p) {
    std::vector<int> c;
    for (int j = 0; j < n; ++j) c.push_back(y(p, j));
    cl.push_back(std::move(c));
  }
  for (int p = 0; p < s; ++p)
    for (int q = 0; q < s; ++q)
      if (p != q)
        for (int j = 0; j < n; ++j) cl.push_back({-y(p, j), -y(q, j)});
  for (int p = 0; p < s; ++p)
    for (int q = 0; q < s; ++q)
      if (p != q)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j) cl.push_back({-y(p, i), -y(q, j), x(i, j)});
  for (int k = 0; k < t; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) cl.push_back({-z(i, k), -z(j, k), -x(i, j)});
  for (int i = 0; i < n; ++i) {
    std::vector<int> c;
    for (int k = 0; k < t; ++k) c.push_back(z(i, k));
    cl.push_back(std::move(c));
  }

  ColoredGraph g;
  for (int v = 0; v < nx; ++v) g.add_vertex(0);
  for (int v = 0; v < s * n; ++v) g.add_vertex(1);
  for (int v = 0; v < t * n; ++v) g.add_vertex(2);
  const Vertex node0 = g.order();
  for (int v = 0; v < n; ++v) g.add_vertex(3);
  const Vertex slot0 = g.order();
  for (int v = 0; v < s; ++v) g.add_vertex(4);
  const Vertex col0 = g.order();
  for (int v = 0; v < t; ++v) g.add_vertex(5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        g.add_edge(x(i, j) - 1, node0 + i);
        g.add_edge(x(i, j) - 1, node0 + j);
      }
  for (int p = 0; p < s; ++p)
    for (int j = 0; j < n; ++j) {
      g.add_edge(y(p, j) - 1, slot0 + p);
      g.add_edge(y(p, j) - 1, node0 + j);
    }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < t; ++k) {
      g.add_edge(z(i, k) - 1, node0 + i);
      g.add_edge(z(i, k) - 1, col0 + k);
    }
  inst.aux = std::move(g);
  inst.aux_vars = inst.cnf.num_vars;
  for (int j = 0; j < n; ++j) inst.prefix.push_back(y(0, j) - 1);
  return inst;
}

std::vector<std::pair<int, int>> complete_graph_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

int edge_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

Instance gen_ramsey(int n, int k) {
  require(n >= k && k >= 2, "ramsey needs n >= k >= 2");
  Instance inst;
  inst.name = "r" + std::to_string(k) + "_" + std::to_string(n);
  inst.cnf.num_vars = n * (n - 1) / 2;
  std::vector<int> sub(static_cast<std::size_t>(k));
  std::iota(sub.begin(), sub.end(), 0);
  for (;;) {
    std::vector<int> neg, pos;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) {
        int v = edge_index(n, sub[static_cast<std::size_t>(a)], sub[static_cast<std::size_t>(b)]) + 1;
        neg.push_back(-v);
        pos.push_back(v);
      }
    inst.cnf.clauses.push_back(std::move(neg));
    inst.cnf.clauses.push_back(std::move(pos));
    int i = k - 1;
    while (i >= 0 && sub[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++sub[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) sub[static_cast<std::size_t>(j)] = sub[static_cast<std::size_t>(j - 1)] + 1;
  }
  const int len = std::min(2 * n - 3, inst.cnf.num_vars);
  for (int v = 0; v < len; ++v) inst.prefix.push_back(v);
  return inst;
}

Instance gen_a000088(int n, EdgeOrder order) {
  require(n >= 1, "a000088 needs n >= 1");
  Instance inst;
  inst.name = "a" + std::to_string(n);
  auto edges = complete_graph_edges(n);
  const int ne = static_cast<int>(edges.size());
  inst.cnf.num_vars = ne;
  ColoredGraph g;
  for (int e = 0; e < ne; ++e) g.add_vertex(0);
  for (int v = 0; v < n; ++v) g.add_vertex(1);
  for (int e = 0; e < ne; ++e) {
    g.add_edge(e, ne + edges[static_cast<std::size_t>(e)].first);
    g.add_edge(e, ne + edges[static_cast<std::size_t>(e)].second);
  }
  inst.aux = std::move(g);
  inst.aux_vars = ne;
  for (int e = 0; e < ne; ++e) inst.prefix.push_back(e);
  if (order == EdgeOrder::vertex_incremental)
    std::stable_sort(inst.prefix.begin(), inst.prefix.end(), [&](int x, int y) {
      return edges[static_cast<std::size_t>(x)].second < edges[static_cast<std::size_t>(y)].second;
    });
  return inst;
}

} // namespace symred
