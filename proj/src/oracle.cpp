#include "symred/oracle.hpp"
#include "symred/errors.hpp"

#include <algorithm>
#include <numeric>

namespace symred {

OrbitClasses orbit_classes(const SymmetryModel& m, const std::vector<Var>& prefix) {
  const int n = m.num_vars, R = m.num_values;
  const int k = static_cast<int>(prefix.size());
  std::uint64_t space = 1;
  for (int i = 0; i < k; ++i) {
    space *= static_cast<std::uint64_t>(R);
    if (space > oracle_cap) throw CapacityError("oracle: too many assignments");
  }
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < k; ++i) slot[static_cast<std::size_t>(prefix[static_cast<std::size_t>(i)])] = i;

  std::vector<Permutation> group = group_closure(projected_group(m, m.graph), oracle_cap / space);
  std::vector<Permutation> stab;
  for (auto& g : group) {
    bool keeps = true;
    for (Var u : prefix) keeps = keeps && slot[static_cast<std::size_t>(g[u])] >= 0;
    if (keeps) stab.push_back(std::move(g));
  }

  OrbitClasses out;
  out.prefix = prefix;
  out.num_values = R;
  out.group_order = stab.size();
  const auto none = static_cast<std::uint32_t>(-1);
  out.class_of.assign(static_cast<std::size_t>(space), none);
  std::vector<int> digits(static_cast<std::size_t>(k)), image(static_cast<std::size_t>(k));
  for (std::uint64_t code = 0; code < space; ++code) {
    if (out.class_of[code] != none) continue;
    auto cls = static_cast<std::uint32_t>(out.count++);
    std::uint64_t c = code;
    for (int i = 0; i < k; ++i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::uint64_t>(R));
      c /= static_cast<std::uint64_t>(R);
    }
    for (const auto& g : stab) {
      for (int i = 0; i < k; ++i) {
        Var u = prefix[static_cast<std::size_t>(i)];
        int r = digits[static_cast<std::size_t>(i)];
        if (m.value_mode == ValueMode::global_values) {
          image[static_cast<std::size_t>(slot[static_cast<std::size_t>(g[u])])] = r;
        } else {
          int q = g[m.pair_point(u, r)] - n;
          image[static_cast<std::size_t>(slot[static_cast<std::size_t>(q / R)])] = q % R;
        }
      }
      std::uint64_t img = 0;
      for (int i = k - 1; i >= 0; --i) img = img * static_cast<std::uint64_t>(R) + static_cast<std::uint64_t>(image[static_cast<std::size_t>(i)]);
      out.class_of[img] = cls;
    }
  }
  return out;
}

std::uint64_t orbit_count_exhaustive(const SymmetryModel& m, const std::vector<Var>& prefix) {
  return orbit_classes(m, prefix).count;
}

std::uint64_t burnside_graph_count(int n) {
  if (n < 0 || n > 10) throw InputError("burnside_graph_count supports 0 <= n <= 10");
  if (n <= 1) return 1;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const int pairs = n * (n - 1) / 2;
  std::vector<int> id(static_cast<std::size_t>(n * n), -1);
  for (int i = 0, e = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++e) id[static_cast<std::size_t>(i * n + j)] = id[static_cast<std::size_t>(j * n + i)] = e;
  std::vector<std::pair<int, int>> ends;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ends.emplace_back(i, j);
  unsigned __int128 total = 0, perms = 0;
  std::vector<char> seen(static_cast<std::size_t>(pairs));
  do {
    std::fill(seen.begin(), seen.end(), 0);
    int cycles = 0;
    for (int e = 0; e < pairs; ++e) {
      if (seen[static_cast<std::size_t>(e)]) continue;
      ++cycles;
      for (int f = e; !seen[static_cast<std::size_t>(f)];) {
        seen[static_cast<std::size_t>(f)] = 1;
        auto [a, b] = ends[static_cast<std::size_t>(f)];
        f = id[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)] * n + perm[static_cast<std::size_t>(b)])];
      }
    }
    total += static_cast<unsigned __int128>(1) << cycles;
    ++perms;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (total % perms != 0) throw InvariantError("burnside sum not divisible by group order");
  return static_cast<std::uint64_t>(total / perms);
}

CoverReport exact_cover_check(const std::vector<PartialAssignment>& emitted, const OrbitClasses& classes) {
  CoverReport rep;
  rep.classes = classes.count;
  rep.emitted = emitted.size();
  std::vector<int> hits(static_cast<std::size_t>(classes.count), 0);
  const int k = static_cast<int>(classes.prefix.size());
  for (const auto& x : emitted) {
    std::uint64_t code = 0;
    bool ok = x.level() == k;
    for (int i = k - 1; i >= 0 && ok; --i) {
      auto r = x.get(classes.prefix[static_cast<std::size_t>(i)]);
      if (!r || *r < 0 || *r >= classes.num_values) ok = false;
      else code = code * static_cast<std::uint64_t>(classes.num_values) + static_cast<std::uint64_t>(*r);
    }
    if (!ok) {
      rep.violations.push_back("emitted assignment is not on the prefix");
      continue;
    }
    ++hits[classes.class_of[code]];
  }
  for (std::size_t c = 0; c < hits.size(); ++c)
    if (hits[c] != 1)
      rep.violations.push_back("orbit " + std::to_string(c) + " hit " + std::to_string(hits[c]) + " times");
  rep.ok = rep.violations.empty();
  return rep;
}

} // namespace symred
