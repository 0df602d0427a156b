#ifndef HGPO_ESTIMATORS_HPP_
#define HGPO_ESTIMATORS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hgpo/grouping.hpp"
#include "hgpo/rollout.hpp"

namespace hgpo {

enum class EstimatorKind { grpo, gigpo, hgpo, oracle };

std::string to_string(EstimatorKind kind);
std::optional<EstimatorKind> estimator_from_string(std::string_view name);

// w_k = (k+1)^alpha / sum_j (j+1)^alpha for k in 0..max_level. Uniform at
// alpha = 0, non-decreasing in k otherwise; always sums to 1.
struct WeightVector {
  std::vector<double> weights;
};

WeightVector adaptive_weights(int max_level, double alpha);

// Group-relative normalization (v - mean) / std with the population
// standard deviation. Singleton groups and groups whose std falls below
// sigma_epsilon are degenerate and yield all zeros. Rejects non-finite
// values and empty input.
std::vector<double> normalize_group(std::span<const double> values,
                                    double sigma_epsilon);

// Per-step output of one estimator. level_advantages and contributing
// hold one entry per level the estimator evaluated: levels 0..K for hgpo
// (with the trajectory-level ablation an extra entry is prepended), a
// single entry for grpo/gigpo/oracle. A level contributes when its group
// is non-degenerate; if no level contributes the final advantage is 0.
struct AdvantageRecord {
  std::vector<double> level_advantages;
  std::vector<bool> contributing;
  double final_advantage = 0.0;
};

struct AdvantageSet {
  EstimatorKind tag = EstimatorKind::hgpo;
  std::vector<AdvantageRecord> records;  // flat step order

  std::vector<double> finals() const;
};

// Trajectory-level estimator: the group-normalized episode return of each
// trajectory, broadcast to all of its steps.
AdvantageSet grpo_advantages(const RolloutBatch& batch);

// Step-level estimator: group-normalized discounted returns within each
// level-0 group (steps sharing the current state).
AdvantageSet gigpo_advantages(const RolloutBatch& batch,
                              const HierarchicalIndex& index);

// Normalized discounted returns within each level-k group. Level K is the
// Oracle estimator: groups require identical historical contexts.
std::vector<double> hgpo_level_advantages(const RolloutBatch& batch,
                                          const HierarchicalIndex& index,
                                          int level);

// Weighted aggregate over levels 0..max_context. Degenerate levels are
// omitted and the remaining weights renormalized; when
// batch.config.include_trajectory_level is set the trajectory-level value
// joins as one extra lowest level with weights recomputed over K+2
// entries. Rejects max_context mismatching the index.
AdvantageSet hgpo_advantages(const RolloutBatch& batch,
                             const HierarchicalIndex& index, int max_context,
                             double alpha);

// Level-K estimator alone.
AdvantageSet oracle_advantages(const RolloutBatch& batch,
                               const HierarchicalIndex& index);

AdvantageSet compute_advantages(EstimatorKind kind, const RolloutBatch& batch,
                                const HierarchicalIndex& index);

}  // namespace hgpo

#endif  // HGPO_ESTIMATORS_HPP_
