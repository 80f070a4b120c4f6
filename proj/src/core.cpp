#include "symred/core.hpp"
#include "symred/errors.hpp"

#include <algorithm>
#include <string>

namespace symred {

namespace {

std::size_t ix(int i) { return static_cast<std::size_t>(i); }

constexpr int hash_rounds = 3;

bool is_minimal(const std::vector<Point>& minima, const WorkItem& item, const PrefixPlan& plan) {
  if (plan.mode == ValueMode::global_values) return minima[ix(item.p)] == item.p;
  auto r = item.assignment.get(item.p);
  if (!r) throw InvariantError("extension variable is unassigned");
  Point pt = plan.num_vars + item.p * plan.num_values + *r;
  return minima[ix(pt)] == pt;
}

} // namespace

PrefixPlan build_prefix_plan(const SymmetryModel& m, std::vector<Var> prefix) {
  if (m.num_values < 1) throw InputError("value set must be nonempty");
  std::vector<char> seen(ix(m.num_vars), 0);
  for (Var u : prefix) {
    if (u < 0 || u >= m.num_vars)
      throw InputError("prefix variable " + std::to_string(u + 1) + " out of range");
    if (seen[ix(u)]) throw InputError("prefix variable " + std::to_string(u + 1) + " repeated");
    seen[ix(u)] = 1;
  }
  PrefixPlan plan;
  plan.num_vars = m.num_vars;
  plan.num_values = m.num_values;
  plan.mode = m.value_mode;
  plan.prefix = std::move(prefix);
  plan.base = CanonBase(m.graph);

  const int k = plan.depth();
  GeneratorSet prev = projected_group(m, m.graph);
  for (int j = 1; j <= k; ++j) {
    std::span<const Var> uj(plan.prefix.data(), ix(j));
    GeneratorSet cur = projected_group(m, attach_set(m, uj));
    PrefixLevel lvl;
    lvl.var = plan.prefix[ix(j - 1)];
    lvl.orbit_prev = orbit_with_transversal(prev, lvl.var);
    lvl.normalizer.resize(ix(m.num_vars));
    for (Point p : lvl.orbit_prev.members()) lvl.normalizer[ix(p)] = lvl.orbit_prev.witness(p).inverse();
    lvl.cur_orbit.assign(ix(m.num_vars), 0);
    for (Point q : orbit(cur, lvl.var)) lvl.cur_orbit[ix(q)] = 1;
    lvl.aut_prev = std::move(prev);
    plan.levels.push_back(std::move(lvl));
    prev = std::move(cur);
  }
  plan.final_aut = std::move(prev);
  return plan;
}

WorkItem root_item(const PrefixPlan& plan) {
  WorkItem w;
  w.parent_aut = GeneratorSet(plan.levels.empty() ? plan.final_aut.degree : plan.levels[0].aut_prev.degree);
  return w;
}

PartialAssignment act(const Permutation& gamma, const PartialAssignment& x, int num_vars, int num_values,
                      ValueMode mode) {
  std::vector<Binding> out;
  out.reserve(x.bindings().size());
  for (const auto& [u, r] : x.bindings()) {
    if (mode == ValueMode::global_values) {
      out.push_back({gamma[u], r});
    } else {
      Point q = gamma[num_vars + u * num_values + r] - num_vars;
      out.push_back({q / num_values, q % num_values});
    }
  }
  return PartialAssignment(std::move(out));
}

PartialAssignment act(const Permutation& gamma, const PartialAssignment& x, const PrefixPlan& plan) {
  return act(gamma, x, plan.num_vars, plan.num_values, plan.mode);
}

bool test_minimal_extension(const WorkItem& item, const PrefixPlan& plan) {
  return is_minimal(orbit_minima(item.parent_aut), item, plan);
}

ParentTest test_canonical_parent(const WorkItem& item, const PrefixPlan& plan, const SymmetryModel& m) {
  const int j = item.level();
  if (j < 1 || j > plan.depth()) throw InvariantError("item level outside the prefix plan");
  const PrefixLevel& lvl = plan.levels[ix(j - 1)];
  if (!lvl.orbit_prev.contains(item.p))
    throw InvariantError("extension variable " + std::to_string(item.p + 1) + " not in the orbit of u_" +
                         std::to_string(j));
  const Permutation& nu = lvl.normalizer[ix(item.p)];
  auto extra = assignment_edges(m, item.assignment);
  ParentTest t;

  // The canonical parent is taken among the candidates of least hash, then
  // least canonical position. Both orders are invariant, so most rejections
  // are settled before any labeling.
  thread_local std::vector<std::uint64_t> h;
  if (plan.base.empty() || plan.base.graph().order() != m.graph.order())
    throw InvariantError("prefix plan was not built for this model");
  refinement_hashes(plan.base, extra, hash_rounds, h);
  std::uint64_t least = 0;
  bool have = false;
  for (const auto& b : item.assignment.bindings()) {
    if (!lvl.cur_orbit[ix(nu[b.var])]) continue;
    std::uint64_t x = h[ix(m.var_vertex[ix(b.var)])];
    if (!have || x < least) least = x;
    have = true;
  }
  if (!have) throw InvariantError("no canonical-parent candidate at level " + std::to_string(j));
  if (h[ix(m.var_vertex[ix(item.p)])] != least) return t;
  auto in_play = [&](Var v) { return lvl.cur_orbit[ix(nu[v])] && h[ix(m.var_vertex[ix(v)])] == least; };
  Canonizer canon(plan.base, extra);

  // Canonical positions follow the refined cells, so if p is outside the
  // first cell holding a candidate it cannot be in the orbit of the winner.
  int first_cell = -1;
  for (const auto& b : item.assignment.bindings()) {
    if (!in_play(b.var)) continue;
    int c = canon.root_cell(m.var_vertex[ix(b.var)]);
    if (first_cell < 0 || c < first_cell) first_cell = c;
  }
  if (first_cell < 0) throw InvariantError("no canonical-parent candidate at level " + std::to_string(j));
  if (canon.root_cell(m.var_vertex[ix(item.p)]) != first_cell) return t;

  AssignmentLabel label = assignment_label(m, canon.run(false));
  Var best = -1;
  for (const auto& b : item.assignment.bindings()) {
    if (!in_play(b.var)) continue;
    if (best < 0 || label.position[ix(b.var)] < label.position[ix(best)]) best = b.var;
  }

  t.canonical_parent = best;
  t.accepted = best == item.p || same_orbit(label.aut, item.p, best);
  if (!t.accepted) return t;
  t.normalized = act(nu, item.assignment, plan);
  t.aut = GeneratorSet(label.aut.degree);
  for (const auto& g : label.aut.generators) t.aut.generators.push_back(conjugate(g, nu));
  return t;
}

Expansion expand(const WorkItem& item, const PrefixPlan& plan, const SymmetryModel& m) {
  Expansion e;
  const int l = item.level();
  PartialAssignment s;
  GeneratorSet aut_s;
  if (l == 0) {
    aut_s = plan.levels.empty() ? plan.final_aut : plan.levels[0].aut_prev;
  } else {
    ParentTest t = test_canonical_parent(item, plan, m);
    if (!t.accepted) return e;
    s = std::move(t.normalized);
    aut_s = std::move(t.aut);
  }
  e.accepted = true;
  if (l == plan.depth()) {
    e.emitted = std::move(s);
    return e;
  }
  const PrefixLevel& next = plan.levels[ix(l)];
  std::vector<Point> minima = orbit_minima(aut_s);
  std::vector<Point> cands = next.orbit_prev.members();
  std::sort(cands.begin(), cands.end());
  for (Var p : cands) {
    for (Value r = 0; r < plan.num_values; ++r) {
      WorkItem child;
      child.assignment = s;
      child.assignment.set(p, r);
      child.p = p;
      if (!is_minimal(minima, child, plan)) {
        ++e.minimality_rejected;
        continue;
      }
      child.parent_aut = aut_s;
      e.children.push_back(std::move(child));
    }
  }
  return e;
}

void SearchStats::record(int level, const Expansion& e) {
  if (ix(level) >= levels.size()) levels.resize(ix(level + 1));
  LevelStats& s = levels[ix(level)];
  ++s.popped;
  if (e.accepted) ++s.accepted; else ++s.parent_rejected;
  if (e.emitted) ++s.emitted;
  if (e.minimality_rejected) {
    if (ix(level + 1) >= levels.size()) levels.resize(ix(level + 2));
    levels[ix(level + 1)].minimality_rejected += static_cast<std::uint64_t>(e.minimality_rejected);
  }
}

void SearchStats::merge(const SearchStats& other) {
  if (other.levels.size() > levels.size()) levels.resize(other.levels.size());
  for (std::size_t i = 0; i < other.levels.size(); ++i) {
    levels[i].popped += other.levels[i].popped;
    levels[i].accepted += other.levels[i].accepted;
    levels[i].parent_rejected += other.levels[i].parent_rejected;
    levels[i].minimality_rejected += other.levels[i].minimality_rejected;
    levels[i].emitted += other.levels[i].emitted;
  }
}

std::vector<PartialAssignment> run_sequential(const SymmetryModel& m, const PrefixPlan& plan, SearchStats* stats) {
  std::vector<PartialAssignment> out;
  if (stats) stats->resize(plan.depth());
  std::vector<WorkItem> stack{root_item(plan)};
  while (!stack.empty()) {
    WorkItem item = std::move(stack.back());
    stack.pop_back();
    Expansion e = expand(item, plan, m);
    if (stats) stats->record(item.level(), e);
    if (e.emitted) out.push_back(std::move(*e.emitted));
    for (auto it = e.children.rbegin(); it != e.children.rend(); ++it) stack.push_back(std::move(*it));
  }
  return out;
}

} // namespace symred
