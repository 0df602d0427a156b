#include "hgpo/rollout.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hgpo {

std::string StateKey::encoded() const {
  std::string out;
  append_encoded(out);
  return out;
}

void StateKey::append_encoded(std::string& out) const {
  out += std::to_string(text_.size());
  out += ':';
  out += text_;
}

std::string to_string(TerminalFlag flag) {
  switch (flag) {
    case TerminalFlag::success:
      return "success";
    case TerminalFlag::failure:
      return "failure";
    case TerminalFlag::truncated:
      return "truncated";
  }
  return "truncated";
}

double Trajectory::episode_return() const {
  double total = 0.0;
  for (const Step& step : steps) total += step.raw_reward;
  return total;
}

int RolloutBatch::total_steps() const {
  int total = 0;
  for (const Trajectory& trajectory : trajectories) {
    total += trajectory.length();
  }
  return total;
}

ValidationReport validate_batch(const RolloutBatch& batch) {
  ValidationReport report;
  auto flag = [&report](std::string message) {
    report.violations.push_back(std::move(message));
  };

  if (batch.task_id.empty()) flag("inconsistent task_id: empty");
  if (batch.trajectories.size() < 2) flag("group size below 2");

  const EstimatorConfig& cfg = batch.config;
  if (cfg.max_context < 0) flag("config: max_context K must be >= 0");
  if (cfg.alpha < 0.0) flag("config: alpha must be >= 0");
  if (!(cfg.gamma > 0.0) || cfg.gamma > 1.0) {
    flag("config: gamma must lie in (0, 1]");
  }
  if (!(cfg.sigma_epsilon > 0.0)) flag("config: sigma_epsilon must be > 0");

  for (std::size_t i = 0; i < batch.trajectories.size(); ++i) {
    const Trajectory& trajectory = batch.trajectories[i];
    const std::string where = "trajectory at index " + std::to_string(i + 1);
    if (trajectory.index != static_cast<int>(i) + 1) {
      flag("misnumbered " + where + ": index " +
           std::to_string(trajectory.index));
    }
    if (trajectory.steps.empty()) {
      flag("empty " + where);
      continue;
    }
    for (std::size_t t = 0; t < trajectory.steps.size(); ++t) {
      const Step& step = trajectory.steps[t];
      const std::string at =
          where + ", step " + std::to_string(t + 1);
      if (!std::isfinite(step.raw_reward)) {
        flag("non-finite reward in " + at);
      }
      if (!(step.old_logprob <= 0.0)) {
        flag("positive old_logprob in " + at);
      }
    }
  }
  return report;
}

std::vector<double> discounted_returns(const Trajectory& trajectory,
                                       double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw std::invalid_argument("discounted_returns: gamma must be in (0, 1]");
  }
  if (trajectory.steps.empty()) {
    throw std::invalid_argument("discounted_returns: empty trajectory");
  }
  std::vector<double> returns(trajectory.steps.size());
  double running = 0.0;
  for (std::size_t t = trajectory.steps.size(); t-- > 0;) {
    running = trajectory.steps[t].raw_reward + gamma * running;
    returns[t] = running;
  }
  return returns;
}

}  // namespace hgpo
