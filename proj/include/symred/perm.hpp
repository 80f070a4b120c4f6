#ifndef SYMRED_PERM_HPP
#define SYMRED_PERM_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace symred {

/// Index of a point in a permutation domain {0, ..., degree-1}.
using Point = int;

/*
  Permutation of {0,...,n-1}, acting on the right: i^p is images()[i].
  compose(p, q) applies p first, then q.
*/
class Permutation {
public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(int degree);

  /// Throws InputError unless images is a bijection.
  explicit Permutation(std::vector<Point> images);

  /// Builds a permutation from disjoint cycles, e.g. {{0,1},{2,3}}.
  static Permutation from_cycles(int degree,
                                 std::initializer_list<std::initializer_list<Point>> cycles);
  static Permutation from_cycles(int degree, const std::vector<std::vector<Point>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  Point operator[](Point i) const { return images_[static_cast<std::size_t>(i)]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<Point> images_;
};

/// Maps i to (i^p)^q. Throws InputError on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);

/// p^{-1} g p: the conjugate of g by p.
Permutation conjugate(const Permutation& g, const Permutation& p);

struct GeneratorSet {
  int degree = 0;
  std::vector<Permutation> generators;

  GeneratorSet() = default;
  explicit GeneratorSet(int degree) : degree(degree) {}
  GeneratorSet(int degree, std::vector<Permutation> gens);

  bool trivial() const;
  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;
};

/// Orbit of a point with one group element per member carrying the
/// representative onto that member.
class OrbitTransversal {
public:
  Point representative() const { return representative_; }
  /// Members in breadth-first discovery order (representative first).
  const std::vector<Point>& members() const { return members_; }
  bool contains(Point m) const;
  /// g with representative^g = m. Throws InputError if m is not a member.
  const Permutation& witness(Point m) const;
  std::size_t size() const { return members_.size(); }

private:
  friend OrbitTransversal orbit_with_transversal(const GeneratorSet&, Point);
  Point representative_ = 0;
  std::vector<Point> members_;
  std::vector<int> slot_;  // point -> index in members_ or -1
  std::vector<Permutation> witnesses_;
};

OrbitTransversal orbit_with_transversal(const GeneratorSet& gens, Point point);

/// Orbit of a point, sorted ascending.
std::vector<Point> orbit(const GeneratorSet& gens, Point point);

bool same_orbit(const GeneratorSet& gens, Point u, Point v);

Point min_in_orbit(const GeneratorSet& gens, Point point);

/// For every point, the minimum point of its orbit. Orbits of the whole
/// domain in one pass; the workhorse behind repeated min/same-orbit queries.
std::vector<Point> orbit_minima(const GeneratorSet& gens);

/// Every element of <gens>, identity first, then breadth-first by
/// right multiplication with the generators in order.
/// Throws CapacityError when the group has more than cap elements.
std::vector<Permutation> group_closure(const GeneratorSet& gens, std::size_t cap);

} // namespace symred

#endif
