#ifndef SYMRED_DIST_HPP
#define SYMRED_DIST_HPP

#include "symred/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace symred {

enum class StackMode { master, hierarchical };

struct StackPolicy {
  StackMode mode = StackMode::master;
  /// Hierarchical mode: levels 0..threshold belong to the low class.
  int threshold = 1;
  int low_level_workers = 1;
};

/// Bit mask of level classes a worker serves.
enum ClassMask : unsigned { low_class = 1u, high_class = 2u, any_class = 3u };

/// Class bit of an item at the given level.
unsigned level_class(const StackPolicy& policy, int level);

/// Class masks of the workers: all any_class in master mode; in hierarchical
/// mode the first low_level_workers serve the low class and the rest the
/// high class (a lone worker serves both).
std::vector<unsigned> worker_classes(const StackPolicy& policy, int workers);

enum class Destination { local, global };

/// Where a worker serving worker_mask puts a freshly created item.
Destination route(const StackPolicy& policy, unsigned worker_mask, const WorkItem& item);

struct ControlMessage {
  enum class Kind { push_request, pop_request, work, emit, idle, exit, fail };
  Kind kind = Kind::exit;
  int worker = -1;
  unsigned classes = any_class;                 // pop_request
  std::optional<WorkItem> item;                 // push_request, work
  std::optional<PartialAssignment> assignment;  // emit
  std::string error;                            // fail
};

/// Flat wire format for work items.
std::vector<std::int32_t> serialize(const WorkItem& item);
/// Throws InputError on a malformed buffer.
WorkItem deserialize_work_item(std::span<const std::int32_t> data);

/*
  Owner of the global stacks. Consumes worker messages one at a time and
  returns the messages to deliver, as (worker id, message) pairs. A worker
  is idle from an unserviced pop request until it is sent work; it reports
  its local stack empty with an idle beacon. The run is over when the
  global stacks are empty and every worker is idle with an empty local
  stack.
*/
class Coordinator {
public:
  using Outgoing = std::vector<std::pair<int, ControlMessage>>;

  Coordinator(StackPolicy policy, std::vector<unsigned> worker_classes, bool check_unique = true);

  /// Places the root item on the global stack.
  void seed(WorkItem root);
  /// Throws InvariantError on messages from unknown workers or of kinds
  /// workers never send.
  Outgoing handle(ControlMessage msg);

  bool terminated() const { return terminated_; }
  bool failed() const { return !failure_.empty(); }
  const std::string& failure() const { return failure_; }
  std::size_t idle_count() const;
  std::size_t global_size() const { return stacks_[0].size() + stacks_[1].size(); }

  std::uint64_t works_delivered() const { return works_; }
  std::uint64_t pushes_accepted() const { return pushes_; }
  std::vector<PartialAssignment>& emitted() { return emitted_; }

private:
  void push(WorkItem item);
  void service(Outgoing& out);
  void check_termination(Outgoing& out);
  void broadcast_exit(Outgoing& out);

  StackPolicy policy_;
  std::vector<unsigned> classes_;
  std::vector<char> waiting_;      // unserviced pop request
  std::vector<char> local_empty_;  // last beacon
  std::vector<WorkItem> stacks_[2];
  std::vector<std::uint64_t> delivered_ids_;
  bool check_unique_;
  std::uint64_t next_id_ = 1;
  std::uint64_t works_ = 0, pushes_ = 0;
  bool terminated_ = false;
  std::string failure_;
  std::vector<PartialAssignment> emitted_;
};

struct ParallelReport {
  SearchStats search;
  std::uint64_t works_delivered = 0;
  std::uint64_t pushes_accepted = 0;
  std::uint64_t messages = 0;
};

/// Runs the search on worker threads. Output is sorted, so it equals the
/// sorted output of run_sequential. Rethrows the first worker error.
std::vector<PartialAssignment> run_parallel(const SymmetryModel& m, const PrefixPlan& plan,
                                            const StackPolicy& policy, int workers,
                                            ParallelReport* report = nullptr);

} // namespace symred

#endif
