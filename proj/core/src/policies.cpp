#include "optrack/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optrack {

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
  if (name == "optrack") return Algorithm::OPTrack;
  if (name == "clip_smt") return Algorithm::ClipSMT;
  if (name == "clip_sdt") return Algorithm::ClipSDT;
  if (name == "uniform") return Algorithm::Uniform;
  if (name == "oracle_est_reward") return Algorithm::OracleNeymanEstReward;
  if (name == "oracle_true_reward") return Algorithm::OracleNeymanTrueReward;
  return std::nullopt;
}

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::OPTrack: return "optrack";
    case Algorithm::ClipSMT: return "clip_smt";
    case Algorithm::ClipSDT: return "clip_sdt";
    case Algorithm::Uniform: return "uniform";
    case Algorithm::OracleNeymanEstReward: return "oracle_est_reward";
    case Algorithm::OracleNeymanTrueReward: return "oracle_true_reward";
    case Algorithm::ClipOGD: return "clip_ogd";
  }
  return "unknown";
}

double optimistic_choice(const Interval& cs) {
  if (cs.hi < 0.5) return cs.hi;
  if (cs.lo > 0.5) return cs.lo;
  return 0.5;
}

double clip_allocation(double pihat, std::uint64_t round, double exponent) {
  const double c =
      std::min(0.5, std::pow(static_cast<double>(round), -exponent));
  return std::min(1.0 - c, std::max(c, pihat));
}

namespace {

bool is_oracle(Algorithm kind) {
  return kind == Algorithm::OracleNeymanEstReward ||
         kind == Algorithm::OracleNeymanTrueReward;
}

}  // namespace

PolicyState::PolicyState(Algorithm kind, CsParams params, double clip_exponent,
                         BoundaryTimeMode boundary_mode,
                         const Environment* oracle_env)
    : kind_(kind),
      params_(params),
      clip_exponent_(clip_exponent),
      boundary_mode_(boundary_mode),
      truth_(is_oracle(kind) ? oracle_env : nullptr) {
  if (is_oracle(kind) && oracle_env == nullptr) {
    throw std::invalid_argument(
        "PolicyState: oracle kinds need the true environment");
  }
}

RewardModel PolicyState::reward_model() const {
  if (kind_ == Algorithm::OracleNeymanTrueReward) {
    return {truth_->mu0, truth_->mu1};
  }
  return {stats0_.count > 0 ? stats0_.mean : 0.5,
          stats1_.count > 0 ? stats1_.mean : 0.5};
}

double PolicyState::select() {
  const CsParams per_arm{params_.delta / 5.0, params_.lower_c, params_.upper_c};
  const std::uint64_t n_total = stats0_.count + stats1_.count;
  if (boundary_mode_ == BoundaryTimeMode::ArmCount) {
    cs0_ = stdev_cs(stats0_, per_arm);
    cs1_ = stdev_cs(stats1_, per_arm);
  } else {
    cs0_ = stdev_cs(stats0_, per_arm, n_total);
    cs1_ = stdev_cs(stats1_, per_arm, n_total);
  }

  double pi = 0.5;
  switch (kind_) {
    case Algorithm::OPTrack:
      pi = select_optrack();
      break;
    case Algorithm::ClipSMT:
    case Algorithm::ClipSDT:
      pi = select_clip();
      break;
    case Algorithm::Uniform:
      pi = 0.5;
      break;
    case Algorithm::OracleNeymanEstReward:
    case Algorithm::OracleNeymanTrueReward:
      pi = truth_->neyman();
      break;
    case Algorithm::ClipOGD:
      throw std::logic_error("clip_ogd is reserved but not implemented");
  }
  return std::clamp(pi, kAllocationFloor, 1.0 - kAllocationFloor);
}

double PolicyState::select_optrack() const {
  return optimistic_choice(neyman_cs(cs0_, cs1_));
}

double PolicyState::select_clip() const {
  double pihat = 0.5;
  if (stats0_.count >= 2 && stats1_.count >= 2) {
    const double s0 = stats0_.stdev();
    const double s1 = stats1_.stdev();
    if (s0 + s1 > 0.0) {
      pihat = s1 / (s0 + s1);
    }
  }
  return clip_allocation(pihat, round_, clip_exponent_);
}

void PolicyState::observe(int action, double outcome) {
  if (action == 1) {
    stats1_.add(outcome);
  } else {
    stats0_.add(outcome);
  }
  ++round_;
}

}  // namespace optrack
