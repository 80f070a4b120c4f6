#include "symred/wreath.hpp"
#include "symred/errors.hpp"

namespace symred {

namespace {

void check_shape(const WreathElement& g) {
  if (g.sigma.size() != static_cast<std::size_t>(g.pi.degree()))
    throw InputError("wreath element needs one value permutation per variable");
  for (const auto& s : g.sigma)
    if (s.degree() != g.sigma.front().degree())
      throw InputError("value permutations differ in degree");
}

} // namespace

WreathElement wreath_identity(int num_vars, int num_values) {
  return {Permutation(num_vars), std::vector<Permutation>(static_cast<std::size_t>(num_vars), Permutation(num_values))};
}

WreathElement wreath_compose(const WreathElement& g, const WreathElement& h) {
  check_shape(g);
  check_shape(h);
  if (g.num_vars() != h.num_vars() || g.num_values() != h.num_values())
    throw InputError("wreath elements of different shape");
  WreathElement out;
  out.pi = compose(g.pi, h.pi);
  Permutation hinv = h.pi.inverse();
  out.sigma.reserve(g.sigma.size());
  for (int u = 0; u < g.num_vars(); ++u)
    out.sigma.push_back(compose(g.sigma[static_cast<std::size_t>(hinv[u])], h.sigma[static_cast<std::size_t>(u)]));
  return out;
}

WreathElement wreath_inverse(const WreathElement& g) {
  check_shape(g);
  WreathElement out;
  out.pi = g.pi.inverse();
  out.sigma.reserve(g.sigma.size());
  for (int u = 0; u < g.num_vars(); ++u) out.sigma.push_back(g.sigma[static_cast<std::size_t>(g.pi[u])].inverse());
  return out;
}

std::pair<int, int> wreath_apply(const WreathElement& g, int u, int r) {
  int v = g.pi[u];
  return {v, g.sigma[static_cast<std::size_t>(v)][r]};
}

Permutation to_action_permutation(const WreathElement& g) {
  check_shape(g);
  const int n = g.num_vars(), k = g.num_values();
  std::vector<Point> img(static_cast<std::size_t>(n + n * k));
  for (int u = 0; u < n; ++u) {
    img[static_cast<std::size_t>(u)] = g.pi[u];
    for (int r = 0; r < k; ++r) {
      auto [v, s] = wreath_apply(g, u, r);
      img[static_cast<std::size_t>(n + u * k + r)] = n + v * k + s;
    }
  }
  return Permutation(std::move(img));
}

WreathElement from_action_permutation(const Permutation& p, int num_vars, int num_values) {
  const int n = num_vars, k = num_values;
  if (p.degree() != n + n * k) throw InputError("action permutation has wrong degree");
  WreathElement g;
  std::vector<Point> pi(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    if (p[u] >= n) throw InputError("action permutation maps a variable to a pair");
    pi[static_cast<std::size_t>(u)] = p[u];
  }
  g.pi = Permutation(std::move(pi));
  g.sigma.assign(static_cast<std::size_t>(n), Permutation(k));
  for (int u = 0; u < n; ++u) {
    const int v = g.pi[u];
    std::vector<Point> s(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) {
      int q = p[n + u * k + r] - n;
      if (q < 0 || q / k != v) throw InputError("action permutation breaks the pair blocks");
      s[static_cast<std::size_t>(r)] = q % k;
    }
    g.sigma[static_cast<std::size_t>(v)] = Permutation(std::move(s));
  }
  return g;
}

} // namespace symred
