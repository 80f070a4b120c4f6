#ifndef SYMRED_CORE_HPP
#define SYMRED_CORE_HPP

#include "symred/assignment.hpp"
#include "symred/encode.hpp"
#include "symred/perm.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace symred {

/// Precomputed group data for extending level j-1 to level j.
struct PrefixLevel {
  Var var = 0;                           // u_j
  GeneratorSet aut_prev;                 // stabilizer of U_{j-1}
  OrbitTransversal orbit_prev;           // u_j under aut_prev
  std::vector<Permutation> normalizer;   // by variable; maps p to u_j for p in orbit_prev
  std::vector<char> cur_orbit;           // by variable; orbit of u_j under the stabilizer of U_j
};

struct PrefixPlan {
  std::vector<Var> prefix;
  std::vector<PrefixLevel> levels;       // levels[j-1] describes level j
  GeneratorSet final_aut;                // stabilizer of the whole prefix
  int num_vars = 0;
  int num_values = 2;
  ValueMode mode = ValueMode::global_values;
  CanonBase base;                        // m.graph prepared for repeated labeling

  int depth() const { return static_cast<int>(prefix.size()); }
};

/// Throws InputError on repeated or out-of-range prefix variables.
PrefixPlan build_prefix_plan(const SymmetryModel& m, std::vector<Var> prefix);

/// A search node: a level-l assignment on U_{l-1} plus the extension
/// variable p, together with the automorphisms of its normalized parent.
struct WorkItem {
  PartialAssignment assignment;
  Var p = -1;                    // -1 for the root
  GeneratorSet parent_aut;
  std::uint64_t id = 0;          // delivery tracking in dist

  int level() const { return assignment.level(); }
  friend bool operator==(const WorkItem&, const WorkItem&) = default;
};

WorkItem root_item(const PrefixPlan& plan);

/// x^gamma for gamma on the action domain: bindings move with their
/// variables, and in per_variable_values mode values move with the pairs.
PartialAssignment act(const Permutation& gamma, const PartialAssignment& x, int num_vars, int num_values,
                      ValueMode mode);
PartialAssignment act(const Permutation& gamma, const PartialAssignment& x, const PrefixPlan& plan);

/// Orbit-minimality of the extension: p (or the pair (p, x(p))) must be the
/// smallest point of its orbit under parent_aut.
bool test_minimal_extension(const WorkItem& item, const PrefixPlan& plan);

struct ParentTest {
  bool accepted = false;
  PartialAssignment normalized;  // on U_j, valid when accepted
  GeneratorSet aut;              // automorphisms of normalized
  Var canonical_parent = -1;     // the variable whose removal is canonical
};

/// Canonical-parent test: accepts iff p lies in the Aut(x) orbit of the
/// candidate variable of smallest canonical position.
ParentTest test_canonical_parent(const WorkItem& item, const PrefixPlan& plan, const SymmetryModel& m);

struct Expansion {
  bool accepted = false;
  std::optional<PartialAssignment> emitted;
  std::vector<WorkItem> children;   // in (p, r) lexicographic order
  int minimality_rejected = 0;
};

Expansion expand(const WorkItem& item, const PrefixPlan& plan, const SymmetryModel& m);

struct LevelStats {
  std::uint64_t popped = 0;
  std::uint64_t accepted = 0;
  std::uint64_t parent_rejected = 0;
  std::uint64_t minimality_rejected = 0;
  std::uint64_t emitted = 0;
};

struct SearchStats {
  std::vector<LevelStats> levels;   // index = level, 0..k
  void resize(int depth) { levels.resize(static_cast<std::size_t>(depth + 1)); }
  void record(int level, const Expansion& e);
  void merge(const SearchStats& other);
};

/// Depth-first search from the root; emitted assignments in visit order.
std::vector<PartialAssignment> run_sequential(const SymmetryModel& m, const PrefixPlan& plan,
                                              SearchStats* stats = nullptr);

} // namespace symred

#endif
