#include "support.hpp"

#include "symred/core.hpp"
#include "symred/errors.hpp"
#include "symred/gen.hpp"
#include "symred/oracle.hpp"

#include <doctest.h>

using namespace symred;

TEST_CASE("burnside counts") {
  const std::uint64_t known[] = {1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668};
  for (int n = 0; n <= 9; ++n) CHECK(burnside_graph_count(n) == known[n]);
  CHECK_THROWS(burnside_graph_count(-1));
}

TEST_CASE("orbit classes") {
  ColoredGraph rigid;
  for (int c = 0; c < 3; ++c) rigid.add_vertex(c);
  auto r = load_aux_model(rigid, 3, ValueMode::global_values);
  auto oc = orbit_classes(r, {0, 1, 2});
  CHECK(oc.count == 8);
  CHECK(oc.group_order == 1);
  CHECK(oc.class_of.size() == 8);

  auto m = cnf_to_model(support::sample_cnf(), ValueMode::global_values);
  CHECK(orbit_count_exhaustive(m, {0, 1}) == 3);
  CHECK(orbit_count_exhaustive(m, {2, 3, 4, 5}) == support::naive_orbit_count(m, {2, 3, 4, 5}));
  CHECK(orbit_count_exhaustive(m, {}) == 1);

  for (int n = 1; n <= 4; ++n) {
    auto a = gen_a000088(n);
    auto am = instance_model(a, ValueMode::global_values);
    CHECK(orbit_count_exhaustive(am, a.prefix) == burnside_graph_count(n));
  }

  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    auto mode = i % 2 ? ValueMode::per_variable_values : ValueMode::global_values;
    auto c = support::random_case(rng, mode);
    CHECK(orbit_count_exhaustive(c.model, c.prefix) == support::naive_orbit_count(c.model, c.prefix));
  }

  auto big = instance_model(gen_a000088(7), ValueMode::global_values);
  CHECK_THROWS_AS(orbit_classes(big, gen_a000088(7).prefix), CapacityError);
}

TEST_CASE("exact cover") {
  auto m = cnf_to_model(support::sample_cnf(), ValueMode::global_values);
  auto oc = orbit_classes(m, {0, 1});
  auto good = run_sequential(m, build_prefix_plan(m, {0, 1}));
  auto rep = exact_cover_check(good, oc);
  CHECK(rep.ok);
  CHECK(rep.classes == 3);
  CHECK(rep.emitted == 3);

  auto missing = good;
  missing.pop_back();
  CHECK_FALSE(exact_cover_check(missing, oc).ok);

  // x1=1,x2=0 and x1=0,x2=1 are swapped by the symmetry of the sample formula.
  std::vector<PartialAssignment> twice{PartialAssignment({{0, 1}, {1, 0}}), PartialAssignment({{0, 0}, {1, 1}}),
                                       PartialAssignment({{0, 0}, {1, 0}}), PartialAssignment({{0, 1}, {1, 1}})};
  auto bad = exact_cover_check(twice, oc);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.violations.empty());

  CHECK_FALSE(exact_cover_check({PartialAssignment({{0, 1}})}, oc).ok);
}
