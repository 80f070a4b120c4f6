#include "symred/perm.hpp"

#include "symred/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

namespace symred {

Permutation::Permutation(int degree) : images_(static_cast<std::size_t>(degree)) {
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (Point x : images_) {
    if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || seen[static_cast<std::size_t>(x)])
      throw InputError("not a permutation: image " + std::to_string(x) + " out of range or repeated");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Permutation Permutation::from_cycles(int degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] >= degree)
        throw InputError("cycle point " + std::to_string(c[i]) + " out of range");
      img[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int degree,
                                     std::initializer_list<std::initializer_list<Point>> cycles) {
  std::vector<std::vector<Point>> cs;
  for (auto c : cycles)
    cs.emplace_back(c);
  return from_cycles(degree, cs);
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<Point>(i))
      return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[static_cast<std::size_t>(images_[i])] = static_cast<Point>(i);
  return r;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw InputError("compose: degree mismatch (" + std::to_string(p.degree()) + " vs " +
                     std::to_string(q.degree()) + ")");
  std::vector<Point> img(static_cast<std::size_t>(p.degree()));
  for (Point i = 0; i < p.degree(); ++i)
    img[static_cast<std::size_t>(i)] = q[p[i]];
  return Permutation(std::move(img));
}

Permutation conjugate(const Permutation& g, const Permutation& p) {
  return compose(compose(p.inverse(), g), p);
}

GeneratorSet::GeneratorSet(int degree, std::vector<Permutation> gens)
    : degree(degree), generators(std::move(gens)) {
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw InputError("generator degree " + std::to_string(g.degree()) +
                       " does not match group degree " + std::to_string(degree));
}

bool GeneratorSet::trivial() const {
  return std::all_of(generators.begin(), generators.end(),
                     [](const Permutation& g) { return g.is_identity(); });
}

namespace {

void check_point(const GeneratorSet& gens, Point p) {
  if (p < 0 || p >= gens.degree)
    throw InputError("point " + std::to_string(p) + " outside domain of degree " +
                     std::to_string(gens.degree));
}

} // namespace

bool OrbitTransversal::contains(Point m) const {
  return m >= 0 && static_cast<std::size_t>(m) < slot_.size() && slot_[static_cast<std::size_t>(m)] >= 0;
}

const Permutation& OrbitTransversal::witness(Point m) const {
  if (!contains(m))
    throw InputError("point " + std::to_string(m) + " is not in the orbit of " +
                     std::to_string(representative_));
  return witnesses_[static_cast<std::size_t>(slot_[static_cast<std::size_t>(m)])];
}

OrbitTransversal orbit_with_transversal(const GeneratorSet& gens, Point point) {
  check_point(gens, point);
  OrbitTransversal t;
  t.representative_ = point;
  t.slot_.assign(static_cast<std::size_t>(gens.degree), -1);
  t.members_.push_back(point);
  t.witnesses_.emplace_back(gens.degree);
  t.slot_[static_cast<std::size_t>(point)] = 0;
  for (std::size_t head = 0; head < t.members_.size(); ++head) {
    Point m = t.members_[head];
    for (const auto& g : gens.generators) {
      Point im = g[m];
      if (t.slot_[static_cast<std::size_t>(im)] >= 0)
        continue;
      t.slot_[static_cast<std::size_t>(im)] = static_cast<int>(t.members_.size());
      t.members_.push_back(im);
      t.witnesses_.push_back(compose(t.witnesses_[head], g));
    }
  }
  return t;
}

std::vector<Point> orbit(const GeneratorSet& gens, Point point) {
  check_point(gens, point);
  std::vector<char> seen(static_cast<std::size_t>(gens.degree), 0);
  std::vector<Point> out{point};
  seen[static_cast<std::size_t>(point)] = 1;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (const auto& g : gens.generators) {
      Point im = g[out[head]];
      if (!seen[static_cast<std::size_t>(im)]) {
        seen[static_cast<std::size_t>(im)] = 1;
        out.push_back(im);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_orbit(const GeneratorSet& gens, Point u, Point v) {
  check_point(gens, v);
  auto o = orbit(gens, u);
  return std::binary_search(o.begin(), o.end(), v);
}

Point min_in_orbit(const GeneratorSet& gens, Point point) {
  return orbit(gens, point).front();
}

std::vector<Point> orbit_minima(const GeneratorSet& gens) {
  const auto n = static_cast<std::size_t>(gens.degree);
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Point x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      Point& px = parent[static_cast<std::size_t>(x)];
      px = parent[static_cast<std::size_t>(px)];
      x = px;
    }
    return x;
  };
  for (const auto& g : gens.generators)
    for (Point i = 0; i < gens.degree; ++i) {
      Point a = find(i), b = find(g[i]);
      if (a != b)
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<Point> mins(n);
  for (Point i = 0; i < gens.degree; ++i)
    mins[static_cast<std::size_t>(i)] = find(i);
  return mins;
}

std::vector<Permutation> group_closure(const GeneratorSet& gens, std::size_t cap) {
  std::vector<Permutation> elems{Permutation(gens.degree)};
  std::set<Permutation> seen{elems.front()};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens.generators) {
      Permutation h = compose(elems[head], g);
      if (seen.insert(h).second) {
        if (elems.size() >= cap)
          throw CapacityError("group order exceeds cap of " + std::to_string(cap));
        elems.push_back(std::move(h));
      }
    }
  }
  return elems;
}

} // namespace symred
