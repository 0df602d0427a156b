#ifndef HGPO_GROUPING_HPP_
#define HGPO_GROUPING_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hgpo/rollout.hpp"

namespace hgpo {

// Addresses one step inside a batch: trajectory and step index, both 1-based.
struct StepId {
  int trajectory = 1;
  int step = 1;
  friend bool operator==(const StepId&, const StepId&) = default;
};

// Context window of a step at level k: the current state plus up to k
// predecessors. Steps earlier than k keep their full available prefix, so
// the tuple has k+1 states when t > k and t states otherwise. Windows of
// different length never compare equal.
struct ContextKey {
  int level = 0;
  std::vector<StateKey> states;
  friend bool operator==(const ContextKey&, const ContextKey&) = default;
};

// Rejects t or k out of range.
ContextKey context_of(const Trajectory& trajectory, int t, int k);

// Per-level partitions of a batch's step set. Level k groups steps with
// elementwise-equal level-k context windows; levels are nested, so the
// level-(k+1) group of a step is contained in its level-k group and group
// sizes are non-increasing in k. Groups are numbered in first-appearance
// order scanning trajectories in index order, steps in temporal order.
// Immutable after construction.
class HierarchicalIndex {
 public:
  HierarchicalIndex(std::vector<StepId> steps, std::vector<int> traj_offsets,
                    std::vector<std::vector<int>> group_of,
                    std::vector<std::vector<std::vector<int>>> members);

  int max_level() const { return static_cast<int>(group_of_.size()) - 1; }
  int num_levels() const { return static_cast<int>(group_of_.size()); }
  int total_steps() const { return static_cast<int>(steps_.size()); }

  const StepId& step_id(int flat) const { return steps_[flat]; }
  int flat_index(const StepId& id) const;

  int group_of(int level, int flat) const { return group_of_[level][flat]; }
  int group_count(int level) const {
    return static_cast<int>(members_[level].size());
  }
  std::span<const int> members(int level, int group) const {
    return members_[level][group];
  }
  int group_size(int level, int flat) const {
    return static_cast<int>(members_[level][group_of_[level][flat]].size());
  }

 private:
  std::vector<StepId> steps_;        // flat order
  std::vector<int> traj_offsets_;    // flat offset of each trajectory
  std::vector<std::vector<int>> group_of_;               // [level][flat]
  std::vector<std::vector<std::vector<int>>> members_;   // [level][group]
};

// True when both indexes induce the same groups with the same numbering at
// every level.
bool same_partitions(const HierarchicalIndex& a, const HierarchicalIndex& b);

// Production builder: one hashmap pass per level over the existing
// rollouts. Steps only share a group after a full elementwise comparison
// of their context windows; the hash is a shortcut, never a proof.
HierarchicalIndex build_hierarchy(const RolloutBatch& batch, int max_context);

// Hash of one encoded context window; injectable for tests so bucket
// verification can be exercised under deliberate collisions.
using WindowHashFn = std::function<std::uint64_t(std::string_view)>;
HierarchicalIndex build_hierarchy_with_hash(const RolloutBatch& batch,
                                            int max_context,
                                            const WindowHashFn& hash);

// Reference builder: O(|I|^2) pairwise window comparison per level.
// Rejects batches with more than 10,000 steps.
HierarchicalIndex build_hierarchy_bruteforce(const RolloutBatch& batch,
                                             int max_context);

struct LevelStats {
  int group_count = 0;
  double avg_group_size = 0.0;  // steps / groups
  std::vector<std::pair<int, int>> size_histogram;  // (size, groups), ascending
  double utilization = 0.0;  // fraction of steps in groups of size >= 2
};

struct GroupStats {
  std::vector<LevelStats> levels;  // 0..K
  double oracle_step_ratio = 0.0;  // utilization at level K
};

GroupStats group_stats(const HierarchicalIndex& index);

}  // namespace hgpo

#endif  // HGPO_GROUPING_HPP_
