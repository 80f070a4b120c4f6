#include "wreath_laws.hpp"

#include "symred/errors.hpp"

#include <doctest.h>

using namespace symred;

TEST_CASE("wreath identity and shapes") {
  auto id = wreath_identity(3, 2);
  std::mt19937_64 rng(1);
  auto g = support::random_wreath(3, 2, rng);
  CHECK(wreath_compose(id, g) == g);
  CHECK(wreath_compose(g, id) == g);
  CHECK(to_action_permutation(id).is_identity());
  CHECK_THROWS_AS(wreath_compose(id, wreath_identity(2, 2)), InputError);
  auto bad = Permutation::from_cycles(9, {{0, 3}});  // variable onto a pair
  CHECK_THROWS_AS(from_action_permutation(bad, 3, 2), InputError);
}

TEST_CASE("value swap example") {
  // pi = (x1 x2) with the value swap on both variables sends {x1 -> 0} to {x2 -> 1}.
  WreathElement g{Permutation::from_cycles(2, {{0, 1}}),
                  {Permutation::from_cycles(2, {{0, 1}}), Permutation::from_cycles(2, {{0, 1}})}};
  auto y = act(to_action_permutation(g), PartialAssignment({{0, 0}}), 2, 2, ValueMode::per_variable_values);
  CHECK(y == PartialAssignment({{1, 1}}));
}

TEST_CASE("wreath laws on 1000 random triples") {
  CHECK(support::check_wreath_laws(1000, 42) == "");
}
