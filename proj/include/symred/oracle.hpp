#ifndef SYMRED_ORACLE_HPP
#define SYMRED_ORACLE_HPP

#include "symred/encode.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace symred {

/// Upper bound on |R|^k * |group| for the exhaustive oracles.
inline constexpr std::uint64_t oracle_cap = 10'000'000;

/// Orbits of all assignments R^prefix under the setwise stabilizer of the
/// prefix, found by closing the projected group of the bare model and
/// filtering. Throws CapacityError beyond oracle_cap.
struct OrbitClasses {
  std::vector<Var> prefix;
  int num_values = 2;
  /// class_of[code] for the assignment whose value at prefix[i] is digit i
  /// (base |R|, prefix[0] least significant).
  std::vector<std::uint32_t> class_of;
  std::uint64_t count = 0;
  std::uint64_t group_order = 0;
};

OrbitClasses orbit_classes(const SymmetryModel& m, const std::vector<Var>& prefix);
std::uint64_t orbit_count_exhaustive(const SymmetryModel& m, const std::vector<Var>& prefix);

/// Number of graphs on n unlabeled nodes, by Burnside over all of Sym(n).
std::uint64_t burnside_graph_count(int n);

struct CoverReport {
  bool ok = false;
  std::uint64_t classes = 0;
  std::uint64_t emitted = 0;
  std::vector<std::string> violations;
};

/// Checks that every orbit contains exactly one emitted assignment.
CoverReport exact_cover_check(const std::vector<PartialAssignment>& emitted, const OrbitClasses& classes);

} // namespace symred

#endif
