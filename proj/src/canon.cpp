#include "symred/canon.hpp"

#include "symred/errors.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>

namespace symred {

/************************************************************ ColoredGraph. */

ColoredGraph::ColoredGraph(int order, Color color)
    : colors_(static_cast<std::size_t>(order), color), adj_(static_cast<std::size_t>(order)) {}

ColoredGraph::ColoredGraph(std::vector<Color> colors)
    : colors_(std::move(colors)), adj_(colors_.size()) {}

ColoredGraph::ColoredGraph(std::vector<Color> colors, std::span<const std::pair<Vertex, Vertex>> edges)
    : colors_(std::move(colors)), adj_(colors_.size()) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= order() || v >= order())
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside 0.." + std::to_string(order() - 1));
    if (u == v)
      throw InputError("loop at vertex " + std::to_string(u));
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw InputError("duplicate edge");
  }
  edge_count_ = edges.size();
}

Vertex ColoredGraph::add_vertex(Color color) {
  colors_.push_back(color);
  adj_.emplace_back();
  return order() - 1;
}

bool ColoredGraph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= order() || v >= order())
    throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") has an endpoint outside 0.." + std::to_string(order() - 1));
  if (u == v)
    throw InputError("loop at vertex " + std::to_string(u));
  auto& au = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v)
    return false;
  au.insert(it, v);
  auto& av = adj_[static_cast<std::size_t>(v)];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
  return true;
}

bool ColoredGraph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= order() || v >= order())
    return false;
  const auto& a = adj_[static_cast<std::size_t>(u)];
  const auto& b = adj_[static_cast<std::size_t>(v)];
  return a.size() <= b.size() ? std::binary_search(a.begin(), a.end(), v)
                              : std::binary_search(b.begin(), b.end(), u);
}

void ColoredGraph::set_color(Vertex v, Color c) {
  colors_.at(static_cast<std::size_t>(v)) = c;
}

std::vector<std::pair<Vertex, Vertex>> ColoredGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u)
    for (Vertex v : adj_[static_cast<std::size_t>(u)])
      if (u < v)
        out.emplace_back(u, v);
  return out;
}

ColoredGraph relabel(const ColoredGraph& g, const Permutation& gamma) {
  if (gamma.degree() != g.order())
    throw InputError("relabel: permutation degree does not match graph order");
  std::vector<Color> colors(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v)
    colors[static_cast<std::size_t>(gamma[v])] = g.color(v);
  auto edges = g.edges();
  for (auto& [u, v] : edges) {
    u = gamma[u];
    v = gamma[v];
  }
  return ColoredGraph(std::move(colors), edges);
}

bool is_automorphism(const ColoredGraph& g, const Permutation& gamma) {
  if (gamma.degree() != g.order())
    return false;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.color(gamma[v]) != g.color(v))
      return false;
    for (Vertex x : g.neighbors(v))
      if (v < x && !g.has_edge(gamma[v], gamma[x]))
        return false;
  }
  return true;
}

/************************************** Individualization-refinement engine. */

namespace {

// Cells are identified by the index of their first element in `elems`.
struct Partition {
  std::vector<Vertex> elems;
  std::vector<int> pos;
  std::vector<int> cell;  // vertex -> start of its cell
  std::vector<int> end;   // start -> one past the last element of that cell
  int cells = 0;

  int size() const { return static_cast<int>(elems.size()); }
  bool discrete() const { return cells == size(); }
};

inline std::size_t ix(int i) { return static_cast<std::size_t>(i); }

// Neighbor lists are unsorted: refinement only counts, and automorphism
// checks use marks.
struct Csr {
  int n = 0;
  const int* off = nullptr;
  const Vertex* adj = nullptr;

  std::size_t arcs() const { return static_cast<std::size_t>(off[n]); }
  std::span<const Vertex> nb(Vertex v) const {
    return {adj + off[v], static_cast<std::size_t>(off[v + 1] - off[v])};
  }
};

struct CsrStore {
  std::vector<int> off;
  std::vector<Vertex> adj;

  Csr view() const { return {static_cast<int>(off.size()) - 1, off.data(), adj.data()}; }
};

void build_csr(const ColoredGraph& g, CsrStore& out) {
  const int n = g.order();
  out.off.assign(ix(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v)
    out.off[ix(v) + 1] = out.off[ix(v)] + static_cast<int>(g.neighbors(v).size());
  out.adj.resize(ix(out.off.back()));
  for (Vertex v = 0; v < n; ++v)
    std::copy(g.neighbors(v).begin(), g.neighbors(v).end(), out.adj.begin() + out.off[ix(v)]);
}

// base with the extra edges appended to the neighbor lists.
void build_csr(const ColoredGraph& g, const CsrStore& base, std::span<const std::pair<Vertex, Vertex>> extra,
               CsrStore& out, std::vector<int>& fill, std::vector<std::pair<Vertex, Vertex>>& sorted) {
  const int n = g.order();
  fill.assign(ix(n), 0);
  for (auto [u, v] : extra) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v || g.has_edge(u, v))
      throw InputError("extra edge (" + std::to_string(u) + "," + std::to_string(v) + ") is invalid");
    ++fill[ix(u)];
    ++fill[ix(v)];
  }
  if (extra.size() > 1) {
    sorted.assign(extra.begin(), extra.end());
    for (auto& [u, v] : sorted)
      if (u > v)
        std::swap(u, v);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("repeated extra edge");
  }
  out.off.resize(ix(n) + 1);
  out.off[0] = 0;
  for (Vertex v = 0; v < n; ++v)
    out.off[ix(v) + 1] = out.off[ix(v)] + (base.off[ix(v) + 1] - base.off[ix(v)]) + fill[ix(v)];
  out.adj.resize(ix(out.off.back()));
  for (Vertex v = 0; v < n; ++v) {
    auto first = base.adj.begin() + base.off[ix(v)];
    auto last = base.adj.begin() + base.off[ix(v) + 1];
    std::copy(first, last, out.adj.begin() + out.off[ix(v)]);
    fill[ix(v)] = out.off[ix(v)] + static_cast<int>(last - first);
  }
  for (auto [u, v] : extra) {
    out.adj[ix(fill[ix(u)]++)] = v;
    out.adj[ix(fill[ix(v)]++)] = u;
  }
}

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 31);
}

class Refiner {
public:
  // Scratch arrays are kept all-zero between calls, so one set of buffers
  // can serve successive graphs.
  struct Buffers {
    std::vector<int> count, front;
    std::vector<char> marked, queued;
    std::vector<int> queue, touched, cells, frags;
  };

  Refiner(Csr g, Buffers& b)
      : g_(g), count_(b.count), front_(b.front), marked_(b.marked), queued_(b.queued), queue_(b.queue),
        touched_(b.touched), cells_(b.cells), frags_(b.frags) {
    if (count_.size() < ix(g.n)) {
      count_.resize(ix(g.n), 0);
      front_.resize(ix(g.n), 0);
      marked_.resize(ix(g.n), 0);
      queued_.resize(ix(g.n), 0);
    }
  }

  // Refines p to the coarsest equitable partition below it, using the given
  // cells as initial splitters. The returned trace depends only on cell
  // positions and counts, never on vertex names.
  std::uint64_t run(Partition& p, std::span<const int> splitters) {
    std::uint64_t h = 0x12345678ULL;
    queue_.clear();
    for (int s : splitters) {
      queue_.push_back(s);
      queued_[ix(s)] = 1;
    }
    std::size_t head = 0;
    while (head < queue_.size()) {
      int w = queue_[head++];
      queued_[ix(w)] = 0;
      if (p.discrete())
        continue;
      split_by(p, w, h);
    }
    queue_.clear();
    return mix(h, static_cast<std::uint64_t>(p.cells));
  }

private:
  void enqueue(int s) {
    if (!queued_[ix(s)]) {
      queued_[ix(s)] = 1;
      queue_.push_back(s);
    }
  }

  void split_by(Partition& p, int w, std::uint64_t& h) {
    touched_.clear();
    cells_.clear();
    const int we = p.end[ix(w)];
    for (int i = w; i < we; ++i)
      for (Vertex x : g_.nb(p.elems[ix(i)])) {
        if (count_[ix(x)]++ == 0) {
          touched_.push_back(x);
          int s = p.cell[ix(x)];
          if (!marked_[ix(s)]) {
            marked_[ix(s)] = 1;
            front_[ix(s)] = s;
            cells_.push_back(s);
          }
        }
      }
    // Move touched vertices to the front of their cells.
    for (Vertex x : touched_) {
      int s = p.cell[ix(x)];
      int to = front_[ix(s)]++;
      int from = p.pos[ix(x)];
      Vertex y = p.elems[ix(to)];
      p.elems[ix(to)] = x;
      p.pos[ix(x)] = to;
      p.elems[ix(from)] = y;
      p.pos[ix(y)] = from;
    }
    std::sort(cells_.begin(), cells_.end());
    bool any = false;
    for (int s : cells_) {
      marked_[ix(s)] = 0;
      const int e = p.end[ix(s)];
      const int f = front_[ix(s)];
      if (e - s == 1)
        continue;
      int lo = count_[ix(p.elems[ix(s)])], hi = lo;
      for (int i = s + 1; i < f; ++i) {
        int c = count_[ix(p.elems[ix(i)])];
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      if (lo != hi) {
        auto first = p.elems.begin() + s;
        auto mid = p.elems.begin() + f;
        std::sort(first, mid, [&](Vertex a, Vertex b) { return count_[ix(a)] > count_[ix(b)]; });
        for (int i = s; i < f; ++i)
          p.pos[ix(p.elems[ix(i)])] = i;
      } else if (f == e) {
        continue;
      }
      // Fragment boundaries: runs of equal count, then the untouched tail.
      frags_.clear();
      frags_.push_back(s);
      for (int i = s + 1; i < f; ++i)
        if (count_[ix(p.elems[ix(i)])] != count_[ix(p.elems[ix(i - 1)])])
          frags_.push_back(i);
      if (f < e && f > s)
        frags_.push_back(f);
      frags_.push_back(e);
      const int nfrag = static_cast<int>(frags_.size()) - 1;
      if (nfrag == 1)
        continue;
      any = true;
      h = mix(h, static_cast<std::uint64_t>(s));
      h = mix(h, static_cast<std::uint64_t>(nfrag));
      int largest = 0;
      for (int k = 0; k < nfrag; ++k) {
        int fs = frags_[ix(k)], fe = frags_[ix(k + 1)];
        p.end[ix(fs)] = fe;
        for (int i = fs; i < fe; ++i) {
          Vertex v = p.elems[ix(i)];
          p.pos[ix(v)] = i;
          p.cell[ix(v)] = fs;
        }
        h = mix(h, static_cast<std::uint64_t>(fe - fs));
        h = mix(h, static_cast<std::uint64_t>(fs < f ? count_[ix(p.elems[ix(fs)])] : 0));
        if (fe - fs > frags_[ix(largest + 1)] - frags_[ix(largest)])
          largest = k;
      }
      p.cells += nfrag - 1;
      if (queued_[ix(s)]) {
        for (int k = 1; k < nfrag; ++k)
          enqueue(frags_[ix(k)]);
      } else {
        for (int k = 0; k < nfrag; ++k)
          if (k != largest)
            enqueue(frags_[ix(k)]);
      }
    }
    for (Vertex x : touched_)
      count_[ix(x)] = 0;
    if (any)
      h = mix(h, static_cast<std::uint64_t>(w) + 0x100000000ULL);
  }

  Csr g_;
  std::vector<int>& count_;
  std::vector<int>& front_;
  std::vector<char>& marked_;
  std::vector<char>& queued_;
  std::vector<int>& queue_;
  std::vector<int>& touched_;
  std::vector<int>& cells_;
  std::vector<int>& frags_;
};

Partition color_partition(const ColoredGraph& g) {
  const int n = g.order();
  Partition p;
  p.elems.resize(ix(n));
  std::iota(p.elems.begin(), p.elems.end(), 0);
  std::stable_sort(p.elems.begin(), p.elems.end(),
                   [&](Vertex a, Vertex b) { return g.color(a) < g.color(b); });
  p.pos.resize(ix(n));
  p.cell.resize(ix(n));
  p.end.assign(ix(n), 0);
  int s = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && g.color(p.elems[ix(i)]) != g.color(p.elems[ix(i - 1)])) {
      p.end[ix(s)] = i;
      s = i;
      ++p.cells;
    }
    p.pos[ix(p.elems[ix(i)])] = i;
    p.cell[ix(p.elems[ix(i)])] = s;
  }
  if (n > 0) {
    p.end[ix(s)] = n;
    ++p.cells;
  }
  return p;
}

std::vector<int> cell_starts(const Partition& p) {
  std::vector<int> out;
  for (int s = 0; s < p.size(); s = p.end[ix(s)])
    out.push_back(s);
  return out;
}

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(ix(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[ix(x)] != x) {
      parent_[ix(x)] = parent_[ix(parent_[ix(x)])];
      x = parent_[ix(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent_[ix(std::max(a, b))] = std::min(a, b);
  }
  void absorb(const std::vector<Vertex>& perm) {
    for (int i = 0; i < static_cast<int>(perm.size()); ++i)
      unite(i, perm[ix(i)]);
  }

private:
  std::vector<int> parent_;
};

struct Scratch {
  Partition part;  // partition of a node at this depth (depth >= 1)
  std::vector<Vertex> children, done;
  std::vector<int> orbit_of;
};

struct SearchState {
  std::vector<std::uint64_t> first_trace, best_trace, best_edges, path_trace;
  std::vector<Vertex> first_ind, first_elems, best_ind, best_elems, cur_ind, gamma;
  std::vector<int> best_pos;
  std::vector<std::vector<Vertex>> autos;

  void clear() {
    first_trace.clear();
    best_trace.clear();
    best_edges.clear();
    path_trace.clear();
    first_ind.clear();
    first_elems.clear();
    best_ind.clear();
    best_elems.clear();
    cur_ind.clear();
    best_pos.clear();
    autos.clear();
  }
};

struct Workspace {
  Refiner::Buffers refiner;
  std::vector<Scratch> scratch;
  std::vector<unsigned> mark;
  unsigned stamp = 0;
  CsrStore csr;
  std::vector<int> fill;
  std::vector<std::pair<Vertex, Vertex>> sorted;
  Partition root;
  SearchState state;
};

// Buffers are recycled per thread; live searches never share one.
class WorkspacePool {
public:
  static std::unique_ptr<Workspace> acquire() {
    auto& free = list();
    if (free.empty())
      return std::make_unique<Workspace>();
    auto w = std::move(free.back());
    free.pop_back();
    return w;
  }
  static void release(std::unique_ptr<Workspace> w) { list().push_back(std::move(w)); }

private:
  static std::vector<std::unique_ptr<Workspace>>& list() {
    thread_local std::vector<std::unique_ptr<Workspace>> free;
    return free;
  }
};

} // namespace

struct CanonBase::Data {
  ColoredGraph own;
  const ColoredGraph* g = nullptr;
  CsrStore csr;
  Partition colors;
  std::vector<int> starts;

  explicit Data(const ColoredGraph& graph, bool copy) {
    if (copy) {
      own = graph;
      g = &own;
    } else {
      g = &graph;
    }
    build_csr(*g, csr);
    colors = color_partition(*g);
    starts = cell_starts(colors);
  }
};

namespace {

Csr prepare_csr(Workspace& ws, const CanonBase::Data& d, std::span<const std::pair<Vertex, Vertex>> extra) {
  if (extra.empty())
    return d.csr.view();
  build_csr(*d.g, d.csr, extra, ws.csr, ws.fill, ws.sorted);
  return ws.csr.view();
}

class Search {
public:
  Search(const CanonBase::Data& d, std::span<const std::pair<Vertex, Vertex>> extra)
      : ws_(WorkspacePool::acquire()), g_(*d.g), csr_(prepare_csr(*ws_, d, extra)), ref_(csr_, ws_->refiner),
        n_(g_.order()), scratch_(ws_->scratch), root_(ws_->root) {
    if (scratch_.size() < ix(n_ + 2))
      scratch_.resize(ix(n_ + 2));
    if (ws_->mark.size() < ix(n_))
      ws_->mark.resize(ix(n_), 0);
    ws_->state.clear();
    root_ = d.colors;
    root_trace_ = ref_.run(root_, d.starts);
  }
  ~Search() { WorkspacePool::release(std::move(ws_)); }
  Search(const Search&) = delete;
  Search& operator=(const Search&) = delete;

  int root_cell(Vertex v) const { return root_.cell.at(ix(v)); }

  CanonResult run(bool build) {
    if (ran_)
      throw InvariantError("canonical search run twice");
    ran_ = true;
    build_ = build;
    node(root_, 0, root_trace_, true, 0);
    return finish();
  }

private:
  // Explores the subtree rooted at partition p (at the given depth, with the
  // given trace). Returns the depth of the ancestor that should resume; a
  // normal return is depth - 1.
  int node(Partition& p, int depth, std::uint64_t trace, bool eq_first, int cmp) {
    if (!have_first_) {
      first_trace_.push_back(trace);
    } else {
      eq_first = eq_first && depth < static_cast<int>(first_trace_.size()) &&
                 trace == first_trace_[ix(depth)];
      if (cmp == 0) {
        if (depth >= static_cast<int>(best_trace_.size()))
          cmp = 1;
        else if (trace != best_trace_[ix(depth)])
          cmp = trace < best_trace_[ix(depth)] ? -1 : 1;
      }
      if (!eq_first && cmp > 0)
        return depth - 1;
    }
    path_trace_.resize(ix(depth));
    path_trace_.push_back(trace);

    if (p.discrete())
      return leaf(p, depth, eq_first, cmp);

    // First largest non-singleton cell.
    int target = -1, best_size = 1;
    for (int s = 0; s < p.size(); s = p.end[ix(s)])
      if (p.end[ix(s)] - s > best_size) {
        best_size = p.end[ix(s)] - s;
        target = s;
      }
    auto& children = scratch_[ix(depth)].children;
    auto& done = scratch_[ix(depth)].done;
    auto& orbit_of = scratch_[ix(depth)].orbit_of;
    children.assign(p.elems.begin() + target, p.elems.begin() + p.end[ix(target)]);
    std::sort(children.begin(), children.end());
    done.clear();

    const bool on_first = !have_first_;
    if (on_first)
      first_ind_.push_back(children.front());

    std::size_t autos_seen = static_cast<std::size_t>(-1);
    int my_cmp = cmp;
    for (Vertex c : children) {
      if (!done.empty()) {
        if (autos_seen != autos_.size()) {
          stabilizer_orbits(depth, orbit_of);
          autos_seen = autos_.size();
        }
        bool skip = false;
        for (Vertex d : done)
          if (orbit_of[ix(d)] == orbit_of[ix(c)]) {
            skip = true;
            break;
          }
        if (skip)
          continue;
      }
      done.push_back(c);
      Partition& child = scratch_[ix(depth + 1)].part;
      child = p;
      individualize(child, target, c);
      const int cell = target;
      std::uint64_t t = mix(ref_.run(child, std::span<const int>(&cell, 1)), trace);
      cur_ind_.resize(ix(depth));
      cur_ind_.push_back(c);
      const std::size_t epoch = best_epoch_;
      int r = node(child, depth + 1, t, eq_first, my_cmp);
      if (best_epoch_ != epoch)
        my_cmp = 0;  // this node now lies on the best path
      if (r < depth)
        return r;
    }
    return depth - 1;
  }

  int leaf(const Partition& p, int depth, bool eq_first, int cmp) {
    if (!have_first_) {
      have_first_ = true;
      first_elems_ = p.elems;
      cur_ind_.resize(ix(depth));
      set_best(p);
      return depth - 1;
    }
    if (eq_first) {
      if (try_automorphism(p, first_elems_))
        return common_prefix(first_ind_);
    }
    if (cmp == 0) {
      if (best_elems_ != first_elems_ && try_automorphism(p, best_elems_))
        return common_prefix(best_ind_);
      auto edges = canonical_edges(p.pos);
      if (!best_edges_valid_) {
        best_edges_ = canonical_edges(best_pos_);
        best_edges_valid_ = true;
      }
      if (edges < best_edges_) {
        set_best(p);
        best_edges_ = std::move(edges);
        best_edges_valid_ = true;
      }
    } else if (cmp < 0) {
      set_best(p);
    }
    return depth - 1;
  }

  int common_prefix(const std::vector<Vertex>& other) const {
    int k = 0;
    while (k < static_cast<int>(other.size()) && k < static_cast<int>(cur_ind_.size()) &&
           other[ix(k)] == cur_ind_[ix(k)])
      ++k;
    return k;
  }

  bool try_automorphism(const Partition& p, const std::vector<Vertex>& target_elems) {
    auto& gamma = st_.gamma;
    gamma.resize(ix(n_));
    for (Vertex v = 0; v < n_; ++v)
      gamma[ix(v)] = target_elems[ix(p.pos[ix(v)])];
    auto& mark = ws_->mark;
    for (Vertex v = 0; v < n_; ++v) {
      auto a = csr_.nb(v), b = csr_.nb(gamma[ix(v)]);
      if (a.size() != b.size())
        return false;
      if (++ws_->stamp == 0) {
        std::fill(mark.begin(), mark.end(), 0);
        ws_->stamp = 1;
      }
      for (Vertex y : b)
        mark[ix(y)] = ws_->stamp;
      for (Vertex x : a)
        if (mark[ix(gamma[ix(x)])] != ws_->stamp)
          return false;
    }
    bool identity = true;
    for (Vertex v = 0; v < n_ && identity; ++v)
      identity = gamma[ix(v)] == v;
    if (!identity)
      autos_.push_back(gamma);
    return true;
  }

  std::vector<std::uint64_t> canonical_edges(const std::vector<int>& pos) const {
    std::vector<std::uint64_t> e;
    e.reserve(csr_.arcs() / 2);
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex x : csr_.nb(v))
        if (v < x) {
          auto a = static_cast<std::uint64_t>(pos[ix(v)]);
          auto b = static_cast<std::uint64_t>(pos[ix(x)]);
          if (a > b)
            std::swap(a, b);
          e.push_back(a * static_cast<std::uint64_t>(n_) + b);
        }
    std::sort(e.begin(), e.end());
    return e;
  }

  void set_best(const Partition& p) {
    best_elems_ = p.elems;
    best_pos_ = p.pos;
    best_edges_valid_ = false;
    best_trace_ = path_trace_;
    best_ind_ = cur_ind_;
    ++best_epoch_;
  }

  static void individualize(Partition& p, int s, Vertex v) {
    const int e = p.end[ix(s)];
    int from = p.pos[ix(v)];
    Vertex y = p.elems[ix(s)];
    p.elems[ix(s)] = v;
    p.pos[ix(v)] = s;
    p.elems[ix(from)] = y;
    p.pos[ix(y)] = from;
    p.end[ix(s)] = s + 1;
    p.end[ix(s + 1)] = e;
    for (int i = s + 1; i < e; ++i)
      p.cell[ix(p.elems[ix(i)])] = s + 1;
    ++p.cells;
  }

  // Orbit labels of the group generated by the automorphisms found so far
  // that fix the current individualized prefix of the given length.
  void stabilizer_orbits(int depth, std::vector<int>& lab) const {
    UnionFind uf(n_);
    for (const auto& a : autos_) {
      bool fixes = true;
      for (int k = 0; k < depth && fixes; ++k)
        fixes = a[ix(cur_ind_[ix(k)])] == cur_ind_[ix(k)];
      if (fixes)
        uf.absorb(a);
    }
    lab.resize(ix(n_));
    for (int v = 0; v < n_; ++v)
      lab[ix(v)] = uf.find(v);
  }

  CanonResult finish() {
    CanonResult r;
    r.labeling = Permutation(best_pos_);
    if (build_) {
      if (!best_edges_valid_)
        best_edges_ = canonical_edges(best_pos_);
      std::vector<Color> colors(ix(n_));
      for (Vertex v = 0; v < n_; ++v)
        colors[ix(best_pos_[ix(v)])] = g_.color(v);
      std::vector<std::pair<Vertex, Vertex>> edges;
      edges.reserve(best_edges_.size());
      for (std::uint64_t e : best_edges_)
        edges.emplace_back(static_cast<Vertex>(e / static_cast<std::uint64_t>(n_)),
                           static_cast<Vertex>(e % static_cast<std::uint64_t>(n_)));
      r.canonical = ColoredGraph(std::move(colors), edges);
    }
    r.aut_generators.degree = n_;
    for (const auto& a : autos_)
      r.aut_generators.generators.emplace_back(a);
    // |Aut| as the product of orbit lengths along the first path.
    double order = 1.0;
    for (std::size_t level = 0; level < first_ind_.size(); ++level) {
      UnionFind uf(n_);
      for (const auto& a : autos_) {
        bool fixes = true;
        for (std::size_t k = 0; k < level && fixes; ++k)
          fixes = a[ix(first_ind_[k])] == first_ind_[k];
        if (fixes)
          uf.absorb(a);
      }
      int root = uf.find(first_ind_[level]);
      int size = 0;
      for (Vertex v = 0; v < n_; ++v)
        size += uf.find(v) == root;
      order *= size;
    }
    r.aut_order_estimate = order;
    return r;
  }

  std::unique_ptr<Workspace> ws_;
  const ColoredGraph& g_;
  Csr csr_;
  Refiner ref_;
  int n_;
  std::vector<Scratch>& scratch_;
  Partition& root_;
  std::uint64_t root_trace_ = 0;
  bool ran_ = false;
  bool build_ = true;
  bool best_edges_valid_ = false;

  bool have_first_ = false;
  std::size_t best_epoch_ = 0;
  SearchState& st_ = ws_->state;
  std::vector<std::uint64_t>& first_trace_ = st_.first_trace;
  std::vector<Vertex>& first_ind_ = st_.first_ind;
  std::vector<Vertex>& first_elems_ = st_.first_elems;
  std::vector<std::uint64_t>& best_trace_ = st_.best_trace;
  std::vector<std::uint64_t>& best_edges_ = st_.best_edges;
  std::vector<Vertex>& best_ind_ = st_.best_ind;
  std::vector<Vertex>& best_elems_ = st_.best_elems;
  std::vector<int>& best_pos_ = st_.best_pos;
  std::vector<std::uint64_t>& path_trace_ = st_.path_trace;
  std::vector<Vertex>& cur_ind_ = st_.cur_ind;
  std::vector<std::vector<Vertex>>& autos_ = st_.autos;
};

} // namespace

CanonResult canonical_form(const ColoredGraph& g) { return canonical_form(g, {}, true); }

CanonResult canonical_form(const ColoredGraph& g, std::span<const std::pair<Vertex, Vertex>> extra_edges,
                           bool build_canonical) {
  return Canonizer(g, extra_edges).run(build_canonical);
}

CanonBase::CanonBase(const ColoredGraph& g) : data_(std::make_shared<const Data>(g, true)) {}

const ColoredGraph& CanonBase::graph() const {
  if (!data_)
    throw InputError("empty canonization base");
  return *data_->g;
}

namespace {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

void refinement_hashes(const CanonBase& base, std::span<const std::pair<Vertex, Vertex>> extra_edges,
                       int rounds, std::vector<std::uint64_t>& out) {
  const auto& d = base.data();
  const ColoredGraph& g = *d.g;
  const int n = g.order();
  for (auto [u, v] : extra_edges)
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw InputError("extra edge (" + std::to_string(u) + "," + std::to_string(v) + ") is invalid");
  thread_local std::vector<std::uint64_t> term;
  out.resize(ix(n));
  term.resize(ix(n));
  for (Vertex v = 0; v < n; ++v)
    out[ix(v)] = splitmix(static_cast<std::uint64_t>(g.color(v)));
  const Csr c = d.csr.view();
  std::uint64_t* h = out.data();
  std::uint64_t* t = term.data();
  for (int r = 0; r < rounds; ++r) {
    for (Vertex v = 0; v < n; ++v)
      t[v] = splitmix(h[v]);
    for (Vertex v = 0; v < n; ++v) {
      std::uint64_t a = 0;
      for (int i = c.off[v]; i < c.off[v + 1]; ++i)
        a += t[c.adj[i]];
      h[v] = h[v] * 0x2545f4914f6cdd1dULL + a;
    }
    for (auto [u, v] : extra_edges) {
      h[u] += t[v];
      h[v] += t[u];
    }
  }
}

struct Canonizer::Impl {
  std::unique_ptr<const CanonBase::Data> borrowed;
  Search search;

  Impl(std::unique_ptr<const CanonBase::Data> b, std::span<const std::pair<Vertex, Vertex>> extra)
      : borrowed(std::move(b)), search(*borrowed, extra) {}
  Impl(const CanonBase::Data& d, std::span<const std::pair<Vertex, Vertex>> extra) : search(d, extra) {}
};

Canonizer::Canonizer(const ColoredGraph& g, std::span<const std::pair<Vertex, Vertex>> extra_edges) {
  if (g.order() > 0)
    impl_ = std::make_unique<Impl>(std::make_unique<const CanonBase::Data>(g, false), extra_edges);
}

Canonizer::Canonizer(const CanonBase& base, std::span<const std::pair<Vertex, Vertex>> extra_edges) {
  if (base.empty())
    throw InputError("empty canonization base");
  if (base.graph().order() > 0)
    impl_ = std::make_unique<Impl>(base.data(), extra_edges);
}

Canonizer::~Canonizer() = default;

int Canonizer::root_cell(Vertex v) const {
  if (!impl_)
    throw InputError("root_cell on the empty graph");
  return impl_->search.root_cell(v);
}

CanonResult Canonizer::run(bool build_canonical) {
  if (!impl_) {
    CanonResult r;
    r.labeling = Permutation(0);
    return r;
  }
  return impl_->search.run(build_canonical);
}

OrderedPartition refine(const ColoredGraph& g, const OrderedPartition& partition) {
  const int n = g.order();
  Partition p;
  p.elems.reserve(ix(n));
  p.pos.assign(ix(n), -1);
  p.cell.assign(ix(n), 0);
  p.end.assign(ix(n), 0);
  for (const auto& c : partition) {
    if (c.empty())
      throw InputError("refine: empty cell");
    int s = static_cast<int>(p.elems.size());
    for (Vertex v : c) {
      if (v < 0 || v >= n || p.pos[ix(v)] >= 0)
        throw InputError("refine: cells must partition the vertex set");
      if (g.color(v) != g.color(c.front()))
        throw InputError("refine: cell mixes colors");
      p.pos[ix(v)] = static_cast<int>(p.elems.size());
      p.cell[ix(v)] = s;
      p.elems.push_back(v);
    }
    p.end[ix(s)] = static_cast<int>(p.elems.size());
    ++p.cells;
  }
  if (p.size() != n)
    throw InputError("refine: cells must partition the vertex set");
  CsrStore csr;
  build_csr(g, csr);
  Refiner::Buffers buffers;
  Refiner ref(csr.view(), buffers);
  auto starts = cell_starts(p);
  ref.run(p, starts);
  OrderedPartition out;
  for (int s : cell_starts(p)) {
    std::vector<Vertex> cell(p.elems.begin() + s, p.elems.begin() + p.end[ix(s)]);
    std::sort(cell.begin(), cell.end());
    out.push_back(std::move(cell));
  }
  return out;
}

GeneratorSet induced_variable_action(const CanonResult& result, std::span<const Vertex> var_vertices) {
  const int n = result.aut_generators.degree;
  std::vector<int> index(ix(std::max(n, result.labeling.degree())), -1);
  for (std::size_t i = 0; i < var_vertices.size(); ++i)
    index.at(ix(var_vertices[i])) = static_cast<int>(i);
  GeneratorSet out(static_cast<int>(var_vertices.size()));
  for (const auto& a : result.aut_generators.generators) {
    std::vector<Point> img(var_vertices.size());
    for (std::size_t i = 0; i < var_vertices.size(); ++i) {
      int j = index[ix(a[var_vertices[i]])];
      if (j < 0)
        throw EncodingError("automorphism maps variable vertex " + std::to_string(var_vertices[i]) +
                            " to non-variable vertex " + std::to_string(a[var_vertices[i]]));
      img[i] = j;
    }
    Permutation q(std::move(img));
    if (!q.is_identity())
      out.generators.push_back(std::move(q));
  }
  return out;
}

} // namespace symred
