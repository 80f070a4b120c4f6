#ifndef SYMRED_ASSIGNMENT_HPP
#define SYMRED_ASSIGNMENT_HPP

#include <compare>
#include <optional>
#include <vector>

namespace symred {

/// Variables and values are dense 0-based indices.
using Var = int;
using Value = int;

struct Binding {
  Var var;
  Value value;
  friend auto operator<=>(const Binding&, const Binding&) = default;
};

/// Map from a subset of variables to values, kept sorted by variable.
class PartialAssignment {
public:
  PartialAssignment() = default;
  /// Throws InputError if a variable is bound twice.
  explicit PartialAssignment(std::vector<Binding> bindings);

  /// Binds var to value, replacing any previous binding.
  void set(Var var, Value value);
  std::optional<Value> get(Var var) const;
  bool contains(Var var) const { return get(var).has_value(); }

  int level() const { return static_cast<int>(bindings_.size()); }
  bool empty() const { return bindings_.empty(); }
  const std::vector<Binding>& bindings() const { return bindings_; }
  std::vector<Var> domain() const;

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;
  friend auto operator<=>(const PartialAssignment&, const PartialAssignment&) = default;

private:
  std::vector<Binding> bindings_;
};

} // namespace symred

#endif
