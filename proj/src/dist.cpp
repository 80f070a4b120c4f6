#include "symred/dist.hpp"
#include "symred/errors.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>

namespace symred {

unsigned level_class(const StackPolicy& policy, int level) {
  if (policy.mode == StackMode::master || level <= policy.threshold) return low_class;
  return high_class;
}

std::vector<unsigned> worker_classes(const StackPolicy& policy, int workers) {
  if (workers < 1) throw InputError("need at least one worker");
  std::vector<unsigned> c(static_cast<std::size_t>(workers), any_class);
  if (policy.mode == StackMode::hierarchical && workers > 1) {
    int low = std::clamp(policy.low_level_workers, 1, workers - 1);
    for (int w = 0; w < workers; ++w) c[static_cast<std::size_t>(w)] = w < low ? low_class : high_class;
  }
  return c;
}

Destination route(const StackPolicy& policy, unsigned worker_mask, const WorkItem& item) {
  if (policy.mode == StackMode::master) return Destination::global;
  return (level_class(policy, item.level()) & worker_mask) ? Destination::local : Destination::global;
}

std::vector<std::int32_t> serialize(const WorkItem& item) {
  std::vector<std::int32_t> d;
  d.push_back(static_cast<std::int32_t>(item.id & 0xffffffffu));
  d.push_back(static_cast<std::int32_t>(item.id >> 32));
  d.push_back(item.p);
  d.push_back(item.assignment.level());
  for (const auto& b : item.assignment.bindings()) {
    d.push_back(b.var);
    d.push_back(b.value);
  }
  d.push_back(item.parent_aut.degree);
  d.push_back(static_cast<std::int32_t>(item.parent_aut.generators.size()));
  for (const auto& g : item.parent_aut.generators)
    for (Point x : g.images()) d.push_back(x);
  return d;
}

WorkItem deserialize_work_item(std::span<const std::int32_t> d) {
  std::size_t at = 0;
  auto next = [&]() -> std::int32_t {
    if (at >= d.size()) throw InputError("truncated work item");
    return d[at++];
  };
  WorkItem w;
  std::uint64_t lo = static_cast<std::uint32_t>(next());
  std::uint64_t hi = static_cast<std::uint32_t>(next());
  w.id = lo | (hi << 32);
  w.p = next();
  int nb = next();
  if (nb < 0) throw InputError("negative binding count");
  std::vector<Binding> bs;
  for (int i = 0; i < nb; ++i) {
    Var v = next();
    bs.push_back({v, next()});
  }
  w.assignment = PartialAssignment(std::move(bs));
  int degree = next(), ngens = next();
  if (degree < 0 || ngens < 0) throw InputError("negative group size");
  std::vector<Permutation> gens;
  for (int g = 0; g < ngens; ++g) {
    std::vector<Point> img(static_cast<std::size_t>(degree));
    for (auto& x : img) x = next();
    gens.emplace_back(std::move(img));
  }
  w.parent_aut = GeneratorSet(degree, std::move(gens));
  if (at != d.size()) throw InputError("trailing data after work item");
  return w;
}

Coordinator::Coordinator(StackPolicy policy, std::vector<unsigned> worker_classes, bool check_unique)
    : policy_(policy), classes_(std::move(worker_classes)), waiting_(classes_.size(), 0),
      local_empty_(classes_.size(), 1), check_unique_(check_unique) {}

std::size_t Coordinator::idle_count() const {
  return static_cast<std::size_t>(std::count(waiting_.begin(), waiting_.end(), 1));
}

void Coordinator::push(WorkItem item) {
  item.id = next_id_++;
  unsigned c = level_class(policy_, item.level());
  stacks_[c == low_class ? 0 : 1].push_back(std::move(item));
}

void Coordinator::seed(WorkItem root) { push(std::move(root)); }

void Coordinator::service(Outgoing& out) {
  for (std::size_t w = 0; w < classes_.size(); ++w) {
    if (!waiting_[w]) continue;
    // Deeper class first keeps a lone worker close to depth-first order.
    for (int s : {1, 0}) {
      unsigned bit = s == 0 ? low_class : high_class;
      if (!(classes_[w] & bit) || stacks_[s].empty()) continue;
      WorkItem item = std::move(stacks_[s].back());
      stacks_[s].pop_back();
      if (check_unique_) {
        if (delivered_ids_.size() <= item.id) delivered_ids_.resize(item.id + 1, 0);
        if (delivered_ids_[item.id]) throw InvariantError("work item delivered twice");
        delivered_ids_[item.id] = 1;
      }
      ++works_;
      waiting_[w] = 0;
      local_empty_[w] = 0;
      ControlMessage m;
      m.kind = ControlMessage::Kind::work;
      m.worker = static_cast<int>(w);
      m.item = std::move(item);
      out.emplace_back(static_cast<int>(w), std::move(m));
      break;
    }
  }
}

void Coordinator::broadcast_exit(Outgoing& out) {
  terminated_ = true;
  for (std::size_t w = 0; w < classes_.size(); ++w) {
    ControlMessage m;
    m.kind = ControlMessage::Kind::exit;
    m.worker = static_cast<int>(w);
    out.emplace_back(static_cast<int>(w), std::move(m));
  }
}

void Coordinator::check_termination(Outgoing& out) {
  if (terminated_ || global_size() != 0) return;
  for (std::size_t w = 0; w < classes_.size(); ++w)
    if (!waiting_[w] || !local_empty_[w]) return;
  broadcast_exit(out);
}

Coordinator::Outgoing Coordinator::handle(ControlMessage msg) {
  if (msg.worker < 0 || static_cast<std::size_t>(msg.worker) >= classes_.size())
    throw InvariantError("message from unknown worker " + std::to_string(msg.worker));
  const auto w = static_cast<std::size_t>(msg.worker);
  Outgoing out;
  if (terminated_) return out;
  using K = ControlMessage::Kind;
  switch (msg.kind) {
  case K::push_request:
    if (!msg.item) throw InvariantError("push request without item");
    push(std::move(*msg.item));
    ++pushes_;
    service(out);
    break;
  case K::pop_request:
    waiting_[w] = 1;
    service(out);
    check_termination(out);
    break;
  case K::idle:
    local_empty_[w] = 1;
    check_termination(out);
    break;
  case K::emit:
    if (!msg.assignment) throw InvariantError("emit without assignment");
    emitted_.push_back(std::move(*msg.assignment));
    break;
  case K::fail:
    failure_ = msg.error.empty() ? "worker failed" : msg.error;
    broadcast_exit(out);
    break;
  default:
    throw InvariantError("unexpected message kind from worker");
  }
  return out;
}

namespace {

template <class T>
class Mailbox {
public:
  void put(T v) {
    {
      std::lock_guard lk(mu_);
      q_.push_back(std::move(v));
    }
    cv_.notify_one();
  }
  T take() {
    std::unique_lock lk(mu_);
    cv_.wait(lk, [&] { return !q_.empty(); });
    T v = std::move(q_.front());
    q_.pop_front();
    return v;
  }

private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> q_;
};

struct Shared {
  const SymmetryModel& model;
  const PrefixPlan& plan;
  const StackPolicy& policy;
  Mailbox<ControlMessage> inbox;
  std::vector<Mailbox<ControlMessage>> boxes;
  std::vector<SearchStats> stats;
  std::vector<std::exception_ptr> errors;
  std::atomic<bool> stop{false};
};

ControlMessage make(ControlMessage::Kind k, int w) {
  ControlMessage m;
  m.kind = k;
  m.worker = w;
  return m;
}

void worker_main(Shared& sh, int w, unsigned mask) {
  using K = ControlMessage::Kind;
  auto& stats = sh.stats[static_cast<std::size_t>(w)];
  stats.resize(sh.plan.depth());
  try {
    std::vector<WorkItem> local;
    for (;;) {
      ControlMessage pop = make(K::pop_request, w);
      pop.classes = mask;
      sh.inbox.put(std::move(pop));
      ControlMessage got = sh.boxes[static_cast<std::size_t>(w)].take();
      if (got.kind == K::exit) return;
      if (got.kind != K::work || !got.item) throw InvariantError("worker expected work");
      local.push_back(std::move(*got.item));
      while (!local.empty() && !sh.stop.load(std::memory_order_relaxed)) {
        WorkItem item = std::move(local.back());
        local.pop_back();
        Expansion e = expand(item, sh.plan, sh.model);
        stats.record(item.level(), e);
        if (e.emitted) {
          ControlMessage em = make(K::emit, w);
          em.assignment = std::move(*e.emitted);
          sh.inbox.put(std::move(em));
        }
        for (auto it = e.children.rbegin(); it != e.children.rend(); ++it) {
          if (route(sh.policy, mask, *it) == Destination::local) {
            local.push_back(std::move(*it));
          } else {
            ControlMessage push = make(K::push_request, w);
            push.item = std::move(*it);
            sh.inbox.put(std::move(push));
          }
        }
      }
      local.clear();
      sh.inbox.put(make(K::idle, w));
    }
  } catch (const std::exception& ex) {
    sh.errors[static_cast<std::size_t>(w)] = std::current_exception();
    ControlMessage f = make(K::fail, w);
    f.error = ex.what();
    sh.inbox.put(std::move(f));
  }
}

} // namespace

std::vector<PartialAssignment> run_parallel(const SymmetryModel& m, const PrefixPlan& plan,
                                            const StackPolicy& policy, int workers, ParallelReport* report) {
  if (policy.mode == StackMode::hierarchical && policy.threshold < 1)
    throw InputError("hierarchical threshold must be at least 1");
  auto classes = worker_classes(policy, workers);
  Shared sh{m, plan, policy, {}, std::vector<Mailbox<ControlMessage>>(classes.size()),
            std::vector<SearchStats>(classes.size()), std::vector<std::exception_ptr>(classes.size()), {}};
  Coordinator coord(policy, classes);
  coord.seed(root_item(plan));

  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back(worker_main, std::ref(sh), w, classes[static_cast<std::size_t>(w)]);

  std::uint64_t messages = 0;
  std::exception_ptr coord_error;
  try {
    while (!coord.terminated()) {
      ControlMessage msg = sh.inbox.take();
      ++messages;
      for (auto& [w, out] : coord.handle(std::move(msg))) {
        ++messages;
        sh.boxes[static_cast<std::size_t>(w)].put(std::move(out));
      }
    }
  } catch (...) {
    coord_error = std::current_exception();
    sh.stop = true;
    for (int w = 0; w < workers; ++w) sh.boxes[static_cast<std::size_t>(w)].put(make(ControlMessage::Kind::exit, w));
  }
  if (coord.failed()) sh.stop = true;
  for (auto& t : threads) t.join();
  if (coord_error) std::rethrow_exception(coord_error);
  for (auto& e : sh.errors)
    if (e) std::rethrow_exception(e);
  if (coord.works_delivered() != coord.pushes_accepted() + 1)
    throw InvariantError("work conservation violated");

  if (report) {
    report->search = SearchStats{};
    report->search.resize(plan.depth());
    for (const auto& s : sh.stats) report->search.merge(s);
    report->works_delivered = coord.works_delivered();
    report->pushes_accepted = coord.pushes_accepted();
    report->messages = messages;
  }
  auto out = std::move(coord.emitted());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace symred
