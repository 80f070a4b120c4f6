#include "symred/assignment.hpp"
#include "symred/errors.hpp"

#include <algorithm>
#include <string>

namespace symred {

PartialAssignment::PartialAssignment(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
  std::sort(bindings_.begin(), bindings_.end());
  for (std::size_t i = 1; i < bindings_.size(); ++i)
    if (bindings_[i].var == bindings_[i - 1].var)
      throw InputError("variable " + std::to_string(bindings_[i].var) + " bound twice");
}

void PartialAssignment::set(Var var, Value value) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                             [](const Binding& b, Var v) { return b.var < v; });
  if (it != bindings_.end() && it->var == var)
    it->value = value;
  else
    bindings_.insert(it, Binding{var, value});
}

std::optional<Value> PartialAssignment::get(Var var) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                             [](const Binding& b, Var v) { return b.var < v; });
  if (it != bindings_.end() && it->var == var) return it->value;
  return std::nullopt;
}

std::vector<Var> PartialAssignment::domain() const {
  std::vector<Var> d;
  d.reserve(bindings_.size());
  for (const auto& b : bindings_) d.push_back(b.var);
  return d;
}

} // namespace symred
