#include "hgpo/grouping.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace hgpo {
namespace {

// Flat view of a batch: step f lives at steps[f]; its trajectory occupies
// the contiguous flat range [traj_offsets[i-1], traj_offsets[i]).
struct FlatBatch {
  std::vector<StepId> steps;
  std::vector<int> traj_offsets;          // size N+1, last entry = total
  std::vector<const StateKey*> states;    // state of each flat step

  int window_begin(int flat, int level) const {
    const int traj = steps[flat].trajectory;
    const int start = traj_offsets[traj - 1];
    return std::max(start, flat - level);
  }

  bool windows_equal(int a, int b, int level) const {
    const int begin_a = window_begin(a, level);
    const int begin_b = window_begin(b, level);
    if (a - begin_a != b - begin_b) return false;  // truncated prefix differs
    for (int off = a - begin_a; off >= 0; --off) {
      if (!(*states[begin_a + off] == *states[begin_b + off])) return false;
    }
    return true;
  }
};

FlatBatch flatten(const RolloutBatch& batch) {
  FlatBatch flat;
  flat.traj_offsets.push_back(0);
  for (const Trajectory& trajectory : batch.trajectories) {
    for (int t = 1; t <= trajectory.length(); ++t) {
      flat.steps.push_back(StepId{trajectory.index, t});
      flat.states.push_back(&trajectory.steps[t - 1].state);
    }
    flat.traj_offsets.push_back(static_cast<int>(flat.steps.size()));
  }
  return flat;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

HierarchicalIndex assemble(FlatBatch flat,
                           std::vector<std::vector<int>> group_of) {
  std::vector<std::vector<std::vector<int>>> members(group_of.size());
  for (std::size_t level = 0; level < group_of.size(); ++level) {
    const std::vector<int>& assignment = group_of[level];
    int groups = 0;
    for (int g : assignment) groups = std::max(groups, g + 1);
    members[level].resize(groups);
    for (std::size_t f = 0; f < assignment.size(); ++f) {
      members[level][assignment[f]].push_back(static_cast<int>(f));
    }
  }
  return HierarchicalIndex(std::move(flat.steps), std::move(flat.traj_offsets),
                           std::move(group_of), std::move(members));
}

void check_builder_args(const RolloutBatch& batch, int max_context) {
  if (max_context < 0) {
    throw std::invalid_argument("build_hierarchy: max_context must be >= 0");
  }
  for (const Trajectory& trajectory : batch.trajectories) {
    if (trajectory.steps.empty()) {
      throw std::invalid_argument("build_hierarchy: empty trajectory");
    }
  }
}

}  // namespace

ContextKey context_of(const Trajectory& trajectory, int t, int k) {
  if (t < 1 || t > trajectory.length()) {
    throw std::out_of_range("context_of: step index out of range");
  }
  if (k < 0) {
    throw std::out_of_range("context_of: level must be >= 0");
  }
  ContextKey key;
  key.level = k;
  const int first = std::max(1, t - k);
  key.states.reserve(t - first + 1);
  for (int j = first; j <= t; ++j) {
    key.states.push_back(trajectory.steps[j - 1].state);
  }
  return key;
}

HierarchicalIndex::HierarchicalIndex(
    std::vector<StepId> steps, std::vector<int> traj_offsets,
    std::vector<std::vector<int>> group_of,
    std::vector<std::vector<std::vector<int>>> members)
    : steps_(std::move(steps)),
      traj_offsets_(std::move(traj_offsets)),
      group_of_(std::move(group_of)),
      members_(std::move(members)) {}

int HierarchicalIndex::flat_index(const StepId& id) const {
  if (id.trajectory < 1 ||
      id.trajectory >= static_cast<int>(traj_offsets_.size())) {
    throw std::out_of_range("flat_index: trajectory out of range");
  }
  const int offset = traj_offsets_[id.trajectory - 1] + id.step - 1;
  if (id.step < 1 || offset >= traj_offsets_[id.trajectory]) {
    throw std::out_of_range("flat_index: step out of range");
  }
  return offset;
}

bool same_partitions(const HierarchicalIndex& a, const HierarchicalIndex& b) {
  if (a.num_levels() != b.num_levels()) return false;
  if (a.total_steps() != b.total_steps()) return false;
  for (int level = 0; level < a.num_levels(); ++level) {
    if (a.group_count(level) != b.group_count(level)) return false;
    for (int f = 0; f < a.total_steps(); ++f) {
      if (a.group_of(level, f) != b.group_of(level, f)) return false;
    }
    for (int g = 0; g < a.group_count(level); ++g) {
      const auto ma = a.members(level, g);
      const auto mb = b.members(level, g);
      if (!std::equal(ma.begin(), ma.end(), mb.begin(), mb.end())) {
        return false;
      }
    }
  }
  return true;
}

HierarchicalIndex build_hierarchy_with_hash(const RolloutBatch& batch,
                                            int max_context,
                                            const WindowHashFn& hash) {
  check_builder_args(batch, max_context);
  FlatBatch flat = flatten(batch);
  const int total = static_cast<int>(flat.steps.size());

  std::vector<std::vector<int>> group_of(max_context + 1);
  std::string window_bytes;
  for (int level = 0; level <= max_context; ++level) {
    std::vector<int>& assignment = group_of[level];
    assignment.assign(total, -1);
    // hash -> group ids whose windows hashed alike; membership is decided
    // by full window comparison against each group's first member
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    std::vector<int> representative;
    for (int f = 0; f < total; ++f) {
      window_bytes.clear();
      const int begin = flat.window_begin(f, level);
      for (int j = begin; j <= f; ++j) {
        flat.states[j]->append_encoded(window_bytes);
      }
      std::vector<int>& bucket = buckets[hash(window_bytes)];
      int group = -1;
      for (int candidate : bucket) {
        if (flat.windows_equal(representative[candidate], f, level)) {
          group = candidate;
          break;
        }
      }
      if (group < 0) {
        group = static_cast<int>(representative.size());
        representative.push_back(f);
        bucket.push_back(group);
      }
      assignment[f] = group;
    }
  }
  return assemble(std::move(flat), std::move(group_of));
}

HierarchicalIndex build_hierarchy(const RolloutBatch& batch, int max_context) {
  return build_hierarchy_with_hash(batch, max_context, fnv1a);
}

HierarchicalIndex build_hierarchy_bruteforce(const RolloutBatch& batch,
                                             int max_context) {
  check_builder_args(batch, max_context);
  FlatBatch flat = flatten(batch);
  const int total = static_cast<int>(flat.steps.size());
  if (total > 10000) {
    throw std::invalid_argument(
        "build_hierarchy_bruteforce: batch exceeds the 10,000-step guard");
  }

  std::vector<std::vector<int>> group_of(max_context + 1);
  for (int level = 0; level <= max_context; ++level) {
    std::vector<int>& assignment = group_of[level];
    assignment.assign(total, -1);
    std::vector<int> representative;
    for (int f = 0; f < total; ++f) {
      int group = -1;
      for (std::size_t g = 0; g < representative.size(); ++g) {
        if (flat.windows_equal(representative[g], f, level)) {
          group = static_cast<int>(g);
          break;
        }
      }
      if (group < 0) {
        group = static_cast<int>(representative.size());
        representative.push_back(f);
      }
      assignment[f] = group;
    }
  }
  return assemble(std::move(flat), std::move(group_of));
}

GroupStats group_stats(const HierarchicalIndex& index) {
  GroupStats stats;
  const int total = index.total_steps();
  stats.levels.reserve(index.num_levels());
  for (int level = 0; level < index.num_levels(); ++level) {
    LevelStats level_stats;
    level_stats.group_count = index.group_count(level);
    if (level_stats.group_count > 0) {
      level_stats.avg_group_size =
          static_cast<double>(total) / level_stats.group_count;
    }
    std::map<int, int> histogram;
    int steps_in_shared_groups = 0;
    for (int g = 0; g < level_stats.group_count; ++g) {
      const int size = static_cast<int>(index.members(level, g).size());
      histogram[size] += 1;
      if (size >= 2) steps_in_shared_groups += size;
    }
    level_stats.size_histogram.assign(histogram.begin(), histogram.end());
    if (total > 0) {
      level_stats.utilization =
          static_cast<double>(steps_in_shared_groups) / total;
    }
    stats.levels.push_back(std::move(level_stats));
  }
  stats.oracle_step_ratio = stats.levels.back().utilization;
  return stats;
}

}  // namespace hgpo
