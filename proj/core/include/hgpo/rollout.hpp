#ifndef HGPO_ROLLOUT_HPP_
#define HGPO_ROLLOUT_HPP_

#include <string>
#include <vector>

namespace hgpo {

// Canonical identifier of one observation. Equality is byte equality of
// the observation text; environments must keep the text injective over
// their observation space. encoded() is the length-prefixed form used
// when hashing state sequences (the prefix keeps concatenation injective).
class StateKey {
 public:
  StateKey() = default;
  explicit StateKey(std::string observation) : text_(std::move(observation)) {}

  const std::string& text() const { return text_; }
  std::string encoded() const;
  void append_encoded(std::string& out) const;

  friend bool operator==(const StateKey&, const StateKey&) = default;

 private:
  std::string text_;
};

enum class TerminalFlag { success, failure, truncated };

std::string to_string(TerminalFlag flag);

// One environment transition as stored in a rollout. old_logprob is the
// log-probability of the action under the policy that sampled it.
struct Step {
  StateKey state;
  std::string action;
  double raw_reward = 0.0;
  double old_logprob = 0.0;
};

// One episode. Steps are in temporal order; step t observes state s_t,
// indexed from t = 1 (the reset observation is s_1).
struct Trajectory {
  int index = 1;  // 1-based position within its batch
  std::vector<Step> steps;
  TerminalFlag terminal = TerminalFlag::truncated;

  int length() const { return static_cast<int>(steps.size()); }
  // undiscounted episode return R(tau): plain sum of raw rewards
  double episode_return() const;
};

// Scalar knobs of the advantage estimators.
struct EstimatorConfig {
  int max_context = 2;          // K: historical states per grouping level
  double alpha = 1.0;           // adaptive weight exponent
  double gamma = 0.95;          // discount for stepwise returns, in (0, 1]
  double sigma_epsilon = 1e-8;  // group std below this counts as degenerate
  bool include_trajectory_level = false;  // fold the trajectory-level
                                          // advantage in as an extra level

  friend bool operator==(const EstimatorConfig&,
                         const EstimatorConfig&) = default;
};

// N trajectories rolled out from identically reset environments for one
// task: the unit over which all grouping and advantages are computed.
struct RolloutBatch {
  std::string task_id;
  std::vector<Trajectory> trajectories;
  EstimatorConfig config;

  int total_steps() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the batch invariants. Pure: reports violations, never mutates
// and never throws.
ValidationReport validate_batch(const RolloutBatch& batch);

// Discounted return-to-go per step: out[t] = sum_{j>=t} gamma^(j-t) * r_j.
// Rejects gamma outside (0, 1] and empty trajectories.
std::vector<double> discounted_returns(const Trajectory& trajectory,
                                       double gamma);

}  // namespace hgpo

#endif  // HGPO_ROLLOUT_HPP_
