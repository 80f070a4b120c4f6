#ifndef SYMRED_WREATH_HPP
#define SYMRED_WREATH_HPP

#include "symred/perm.hpp"

#include <utility>
#include <vector>

namespace symred {

/*
  Element (pi, sigma) of Sym(R) wr Sym(U): pi permutes the n variables and
  sigma[u] permutes the values of variable u. Acts on pairs by
  (u, r) -> (u^pi, r^sigma[u^pi]).
*/
struct WreathElement {
  Permutation pi;
  std::vector<Permutation> sigma;

  int num_vars() const { return pi.degree(); }
  int num_values() const { return sigma.empty() ? 0 : sigma.front().degree(); }

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

WreathElement wreath_identity(int num_vars, int num_values);

/// g then h. Throws InputError on shape mismatch.
WreathElement wreath_compose(const WreathElement& g, const WreathElement& h);
WreathElement wreath_inverse(const WreathElement& g);

std::pair<int, int> wreath_apply(const WreathElement& g, int u, int r);

/// The same element as a permutation of the action domain: variables first,
/// then pair (u, r) at n + u*|R| + r.
Permutation to_action_permutation(const WreathElement& g);

/// Inverse of to_action_permutation. Throws InputError if p does not preserve
/// the block structure.
WreathElement from_action_permutation(const Permutation& p, int num_vars, int num_values);

} // namespace symred

#endif
