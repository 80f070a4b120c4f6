#include "support.hpp"

#include "symred/errors.hpp"
#include "symred/gen.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace symred;

namespace {

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

bool satisfies(const Cnf& f, const std::vector<int>& val) {
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (int l : c) sat = sat || (val[static_cast<std::size_t>(std::abs(l))] == (l > 0));
    if (!sat) return false;
  }
  return true;
}

std::uint64_t factorial(int r) { return r <= 1 ? 1 : static_cast<std::uint64_t>(r) * factorial(r - 1); }

} // namespace

TEST_CASE("ramsey") {
  auto r = gen_ramsey(18, 4);
  CHECK(r.cnf.num_vars == 153);
  CHECK(r.cnf.clauses.size() == 2 * binom(18, 4));
  CHECK(r.cnf.clauses.size() == 6120);
  for (const auto& c : r.cnf.clauses) CHECK(c.size() == 6);
  CHECK(r.prefix.size() == 33);
  CHECK_FALSE(r.aux);
  CHECK(edge_index(18, 0, 1) == 0);
  CHECK(edge_index(18, 2, 1) == 17);
  auto e = complete_graph_edges(18);
  for (int i = 0; i < static_cast<int>(e.size()); ++i) CHECK(edge_index(18, e[i].first, e[i].second) == i);
  CHECK_THROWS_AS(gen_ramsey(3, 4), InputError);

  // R(3,3) = 6: K5 has a good coloring, K6 has none.
  auto has_model = [](const Cnf& f) {
    std::vector<int> val(static_cast<std::size_t>(f.num_vars + 1));
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << f.num_vars); ++code) {
      for (int v = 1; v <= f.num_vars; ++v) val[static_cast<std::size_t>(v)] = (code >> (v - 1)) & 1;
      if (satisfies(f, val)) return true;
    }
    return false;
  };
  CHECK(has_model(gen_ramsey(5, 3).cnf));
  CHECK_FALSE(has_model(gen_ramsey(6, 3).cnf));
}

TEST_CASE("clique coloring") {
  auto c = gen_ccp(12, 6, 5);
  REQUIRE(c.aux);
  CHECK(c.aux->order() == 287);
  CHECK(c.cnf.num_vars == 12 * 11 + 6 * 12 + 12 * 5);
  CHECK(c.aux_vars == c.cnf.num_vars);
  CHECK(c.prefix.size() == 12);
  auto m = instance_model(c, ValueMode::global_values);
  CHECK(m.num_vars == c.cnf.num_vars);
  CHECK_THROWS_AS(gen_ccp(3, 4, 2), InputError);
}

TEST_CASE("graph enumeration instance") {
  auto a = gen_a000088(5);
  CHECK(a.cnf.num_vars == 10);
  CHECK(a.cnf.clauses.empty());
  REQUIRE(a.aux);
  CHECK(a.aux->order() == 15);
  CHECK(a.aux->edge_count() == 20);
  // Aut of the subdivided K_n is Sym(n).
  auto m = instance_model(a, ValueMode::global_values);
  CHECK(support::closure(projected_group(m, m.graph)).size() == 120);

  auto inc = gen_a000088(5, EdgeOrder::vertex_incremental);
  auto e = complete_graph_edges(5);
  CHECK(std::is_permutation(inc.prefix.begin(), inc.prefix.end(), a.prefix.begin()));
  for (std::size_t i = 1; i < inc.prefix.size(); ++i)
    CHECK(e[static_cast<std::size_t>(inc.prefix[i - 1])].second <= e[static_cast<std::size_t>(inc.prefix[i])].second);
}

TEST_CASE("tensor") {
  CHECK(tensor_target(3, 4, 7) == tensor_target(3, 4, 7));
  auto t = tensor_target(3, 5, 11);
  CHECK(std::count(t.begin(), t.end(), 1) == 5);
  CHECK_THROWS_AS(tensor_target(2, 9, 1), InputError);

  for (int r = 1; r <= 4; ++r) {
    auto inst = gen_tensor(2, r, 3, 5);
    CHECK(inst.prefix.size() == static_cast<std::size_t>(2 * r));
    auto m = instance_model(inst, ValueMode::global_values);
    auto group = projected_group(m, m.graph);
    const auto need = factorial(r);
    bool large = false;
    try {
      large = group_closure(group, need).size() >= need;
    } catch (const CapacityError&) {
      large = true;
    }
    CHECK(large);
  }

  // Factor matrices extend to a model exactly when their product is the target.
  // Three ones have rank at most 3, so some factors must succeed.
  const int m = 2, r = 3;
  auto inst = gen_tensor(m, r, 3, 9);
  auto target = tensor_target(m, 3, 9);
  int hits = 0;
  for (int trial = 0; trial < (1 << (3 * m * r)); ++trial) {
    std::vector<int> val(static_cast<std::size_t>(inst.cnf.num_vars + 1));
    const std::uint64_t code = static_cast<std::uint64_t>(trial);
    for (int v = 0; v < 3 * m * r; ++v) val[static_cast<std::size_t>(v + 1)] = (code >> v) & 1;
    auto at = [&](int mat, int i, int l) { return val[static_cast<std::size_t>(mat * m * r + i * r + l + 1)]; };
    int next = 3 * m * r;
    bool product_ok = true;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          int sum = 0;
          std::vector<int> w;
          for (int l = 0; l < r; ++l) {
            int p = at(0, i, l) & at(1, j, l) & at(2, k, l);
            val[static_cast<std::size_t>(++next)] = p;
            w.push_back(p);
            sum ^= p;
          }
          int acc = w[0];
          for (int l = 1; l < r; ++l) {
            acc ^= w[static_cast<std::size_t>(l)];
            val[static_cast<std::size_t>(++next)] = acc;
          }
          product_ok = product_ok && sum == target[static_cast<std::size_t>((i * m + j) * m + k)];
        }
    REQUIRE(next == inst.cnf.num_vars);
    CHECK(satisfies(inst.cnf, val) == product_ok);
    hits += product_ok;
  }
  CHECK(hits > 0);
}
