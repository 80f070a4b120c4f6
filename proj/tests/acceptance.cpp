// Acceptance suite: one PASS/FAIL line per criterion. Arguments select
// criteria by number; no arguments runs all of them.
#include "support.hpp"
#include "wreath_laws.hpp"

#include "symred/core.hpp"
#include "symred/dist.hpp"
#include "symred/errors.hpp"
#include "symred/gen.hpp"
#include "symred/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

using namespace symred;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  " << what << '\n';
    }
  }
};

std::vector<PartialAssignment> sorted(std::vector<PartialAssignment> v) {
  std::sort(v.begin(), v.end());
  return v;
}

WorkItem make_item(std::vector<Binding> b, Var p, GeneratorSet parent) {
  WorkItem w;
  w.assignment = PartialAssignment(std::move(b));
  w.p = p;
  w.parent_aut = std::move(parent);
  return w;
}

std::string level_table(const SearchStats& s, const std::vector<std::uint64_t>& want) {
  std::ostringstream os;
  os << "  level\twant\tgot\n";
  for (std::size_t l = 1; l <= want.size(); ++l) {
    std::uint64_t got = l < s.levels.size() ? s.levels[l].accepted : 0;
    os << "  " << l << '\t' << want[l - 1] << '\t' << got << (got == want[l - 1] ? "" : "\t<--") << '\n';
  }
  return os.str();
}

void c1(Outcome& o) {
  auto m = cnf_to_model(support::sample_cnf(), ValueMode::global_values);
  auto out = run_sequential(m, build_prefix_plan(m, {0, 1}));
  o.require(out.size() == 3, "emitted " + std::to_string(out.size()) + " cubes, want 3");
  auto rep = exact_cover_check(out, orbit_classes(m, {0, 1}));
  o.require(rep.ok && rep.classes == 3, "emitted set is not a transversal of 3 orbits");
}

void c2(Outcome& o) {
  auto m = cnf_to_model(support::sample_cnf(), ValueMode::global_values);
  const std::vector<Var> prefix{2, 3, 4, 5};
  auto plan = build_prefix_plan(m, prefix);
  auto out = run_sequential(m, plan);
  auto want = orbit_count_exhaustive(m, prefix);
  o.require(out.size() == want, "leaves " + std::to_string(out.size()) + ", oracle " + std::to_string(want));
  o.require(exact_cover_check(out, orbit_classes(m, prefix)).ok, "exact cover fails");

  // The children of the accepted level-1 node {x3 -> 0}.
  auto root = expand(root_item(plan), plan, m);
  const WorkItem* neg3 = nullptr;
  for (const auto& c : root.children)
    if (c.assignment == PartialAssignment({{2, 0}})) neg3 = &c;
  if (!neg3) {
    o.require(false, "no level-1 item for x3 -> 0");
    return;
  }
  auto e = expand(*neg3, plan, m);
  o.require(e.accepted, "x3 -> 0 not accepted");
  if (e.children.empty()) {
    o.require(false, "x3 -> 0 has no children");
    return;
  }
  const auto& aut = e.children.front().parent_aut;
  auto t1 = test_canonical_parent(make_item({{2, 0}, {3, 1}}, 3, aut), plan, m);
  o.require(!t1.accepted, "extension x3=0 x4=1 passes the canonical-parent test");
  o.require(orbit(aut, 5) == std::vector<Point>{3, 5}, "orbit of x6 under Aut(x3=0) is not {x4, x6}");
  o.require(!test_minimal_extension(make_item({{2, 0}, {5, 0}}, 5, aut), plan),
            "extension x3=0 x6=0 passes the minimality test");
  for (const auto& c : e.children)
    o.require(!(c.p == 5 && c.assignment == PartialAssignment({{2, 0}, {5, 0}})), "x3=0 x6=0 was queued");
}

void c3(Outcome& o) {
  for (int n = 4; n <= 7; ++n) {
    auto a = gen_a000088(n);
    auto m = instance_model(a, ValueMode::global_values);
    auto got = run_sequential(m, build_prefix_plan(m, a.prefix)).size();
    auto want = burnside_graph_count(n);
    o.require(got == want, "n=" + std::to_string(n) + ": " + std::to_string(got) + ", want " + std::to_string(want));
  }
  auto a9 = gen_a000088(9);
  auto m9 = instance_model(a9, ValueMode::global_values);
  auto got = run_sequential(m9, build_prefix_plan(m9, a9.prefix)).size();
  o.require(got == 274668, "n=9: " + std::to_string(got) + ", want 274668");
}

void level_profile(Outcome& o, const Instance& inst, int depth, const std::vector<std::uint64_t>& want) {
  auto prefix = inst.prefix;
  prefix.resize(static_cast<std::size_t>(depth));
  auto m = instance_model(inst, ValueMode::global_values);
  SearchStats s;
  run_sequential(m, build_prefix_plan(m, prefix), &s);
  bool same = true;
  for (std::size_t l = 1; l <= want.size(); ++l) same = same && l < s.levels.size() && s.levels[l].accepted == want[l - 1];
  o.require(same, "level counts differ\n" + level_table(s, want));
}

void c4(Outcome& o) {
  level_profile(o, gen_a000088(9), 10, {2, 3, 4, 5, 6, 7, 8, 9, 42, 120});
}

void c5(Outcome& o) {
  std::vector<std::uint64_t> want;
  for (std::uint64_t c = 2; c <= 18; ++c) want.push_back(c);
  want.push_back(96);
  level_profile(o, gen_ramsey(18, 4), 18, want);
}

void c6(Outcome& o) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    auto mode = t % 2 ? ValueMode::per_variable_values : ValueMode::global_values;
    auto c = support::random_case(rng, mode);
    auto out = run_sequential(c.model, build_prefix_plan(c.model, c.prefix));
    auto rep = exact_cover_check(out, orbit_classes(c.model, c.prefix));
    std::string why;
    for (const auto& v : rep.violations) why += "; " + v;
    o.require(rep.ok, "case " + std::to_string(t) + why);
  }
}

void c7(Outcome& o) {
  std::mt19937_64 rng(7);
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    int n = 1 + static_cast<int>(rng() % 12);
    int colors = 1 + static_cast<int>(rng() % 3);
    double p = 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
    auto g = support::random_graph(n, colors, p, rng);
    auto gamma = support::random_perm(n, rng);
    auto a = canonical_form(g);
    auto b = canonical_form(relabel(g, gamma));
    bool ok = a.canonical == b.canonical && relabel(g, a.labeling) == a.canonical;
    for (const auto& x : a.aut_generators.generators) ok = ok && is_automorphism(g, x);
    bad += !ok;
  }
  o.require(bad == 0, std::to_string(bad) + " fuzz failures");
  int incomplete = 0;
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng() % 7);
    auto g = support::random_graph(n, 1 + static_cast<int>(rng() % 2), 0.5, rng);
    incomplete += support::closure(canonical_form(g).aut_generators).size() != support::brute_force_aut_order(g);
  }
  o.require(incomplete == 0, std::to_string(incomplete) + " automorphism groups incomplete");
}

void c8(Outcome& o) {
  auto err = support::check_wreath_laws(1000, 8);
  o.require(err.empty(), err);
}

// Runs f on a detached thread; a run that outlives the watchdog ends the
// process, since the hung workers cannot be reclaimed.
std::vector<PartialAssignment> watched(std::function<std::vector<PartialAssignment>()> f) {
  auto task = std::make_shared<std::packaged_task<std::vector<PartialAssignment>()>>(std::move(f));
  auto fut = task->get_future();
  std::thread([task] { (*task)(); }).detach();
  if (fut.wait_for(std::chrono::minutes(5)) != std::future_status::ready) {
    std::cout << "FAIL 9 parallel invariance: run exceeded the 5 minute watchdog" << std::endl;
    std::_Exit(1);
  }
  return fut.get();
}

void c9(Outcome& o) {
  struct Case {
    std::string name;
    SymmetryModel m;
    std::vector<Var> prefix;
  };
  std::vector<Case> cases;
  auto small = cnf_to_model(support::sample_cnf(), ValueMode::global_values);
  cases.push_back({"sample x1,x2", small, {0, 1}});
  cases.push_back({"sample x3..x6", small, {2, 3, 4, 5}});
  for (int n = 4; n <= 6; ++n) {
    auto a = gen_a000088(n);
    cases.push_back({a.name, instance_model(a, ValueMode::global_values), a.prefix});
  }
  for (const auto& c : cases) {
    auto plan = build_prefix_plan(c.m, c.prefix);
    auto want = sorted(run_sequential(c.m, plan));
    for (int workers : {1, 2, 4, 8})
      for (auto mode : {StackMode::master, StackMode::hierarchical}) {
        StackPolicy policy{mode, 2, 1};
        auto got = watched([&] { return run_parallel(c.m, plan, policy, workers); });
        o.require(got == want, c.name + ": workers=" + std::to_string(workers) +
                                   (mode == StackMode::master ? " master" : " hier") + " differs");
      }
  }
}

void c10(Outcome& o) {
  auto ccp = gen_ccp(12, 6, 5);
  o.require(ccp.aux && ccp.aux->order() == 287, "ccp(12,6,5) aux graph order is not 287");
  auto r = gen_ramsey(18, 4);
  o.require(r.cnf.num_vars == 153, "ramsey(18,4) variables: " + std::to_string(r.cnf.num_vars));
  o.require(r.cnf.clauses.size() == 6120, "ramsey(18,4) clauses: " + std::to_string(r.cnf.clauses.size()));
  std::uint64_t fact = 1;
  for (int rank = 1; rank <= 4; ++rank) {
    fact *= static_cast<std::uint64_t>(rank);
    auto t = gen_tensor(3, rank, 5, 10 + static_cast<std::uint64_t>(rank));
    auto m = instance_model(t, ValueMode::global_values);
    auto group = projected_group(m, m.graph);
    bool large;
    try {
      large = group_closure(group, fact).size() >= fact;
    } catch (const CapacityError&) {
      large = true;
    }
    o.require(large, "tensor rank " + std::to_string(rank) + ": symmetry group smaller than r!");
  }
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Outcome&);
};

const Criterion criteria[] = {
    {1, "sample formula, two-variable prefix", c1},
    {2, "sample formula, rejections", c2},
    {3, "graph counting ladder", c3},
    {4, "graph prefix profile", c4},
    {5, "ramsey prefix profile", c5},
    {6, "exactly-once on random models", c6},
    {7, "canonical labeling contract", c7},
    {8, "wreath group laws", c8},
    {9, "parallel invariance", c9},
    {10, "generator counts", c10},
};

} // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs);
    std::cout << o.detail.str() << std::flush;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
