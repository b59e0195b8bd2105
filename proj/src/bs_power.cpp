#include "ecoiot/bs_power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecoiot/errors.hpp"
#include "ecoiot/text.hpp"

namespace ecoiot {

void PowerProfile::validate() const {
  for (const double v : {p_active, p_idle_awake, p_sleep, t_transition, min_sleep}) {
    if (!std::isfinite(v)) {
      throw ValidationError("PowerProfile: all fields must be finite");
    }
  }
  if (!(p_active >= p_idle_awake && p_idle_awake >= p_sleep && p_sleep >= 0.0)) {
    throw ValidationError(
        "PowerProfile: requires p_active >= p_idle_awake >= p_sleep >= 0");
  }
  if (t_transition < 0.0) {
    throw ValidationError("PowerProfile: t_transition must be >= 0");
  }
  if (min_sleep < 0.0) {
    throw ValidationError("PowerProfile: min_sleep must be >= 0");
  }
}

SleepSimResult simulate_idle(const FrameGrid& grid, const PowerProfile& profile) {
  profile.validate();
  const double tau = grid.config().symbol_duration;
  const double period = grid.size() * tau;
  const auto counts = signal_counts(grid);
  const std::int64_t free_count = counts[signal_index(SignalType::Free)];
  const double transmit_time = static_cast<double>(grid.size() - free_count) * tau;

  double energy = transmit_time * profile.p_active;
  double sleep_time = 0.0;
  double awake_idle_time = 0.0;
  for (const FreeInterval& interval : free_intervals(grid)) {
    const double d = interval.duration;
    if (d >= profile.t_transition + profile.min_sleep) {
      energy += profile.t_transition * profile.p_idle_awake +
                (d - profile.t_transition) * profile.p_sleep;
      awake_idle_time += profile.t_transition;
      sleep_time += d - profile.t_transition;
    } else {
      energy += d * profile.p_idle_awake;
      awake_idle_time += d;
    }
  }

  SleepSimResult result;
  result.energy_per_hyperperiod = energy;
  result.avg_power = energy / period;
  result.sleep_fraction = sleep_time / period;
  result.transmit_fraction = transmit_time / period;
  result.awake_idle_fraction = awake_idle_time / period;
  return result;
}

double idle_penalty(const FrameGrid& grid, const PowerProfile& profile) {
  const double e_grid = simulate_idle(grid, profile).energy_per_hyperperiod;
  const double e_empty =
      simulate_idle(FrameGrid::all_free(grid.config()), profile).energy_per_hyperperiod;
  if (e_empty == 0.0) {
    throw ValidationError("idle_penalty: baseline energy is zero, penalty undefined");
  }
  return (e_grid - e_empty) / e_empty;
}

CalibrationResult calibrate_profile(const FrameGrid& grid, const PowerProfile& tmpl,
                                    double target_penalty, double ratio_min,
                                    double ratio_max) {
  if (!std::isfinite(target_penalty) || target_penalty < 0.0) {
    throw ValidationError("calibrate_profile: target_penalty must be finite and >= 0");
  }
  if (!(tmpl.p_active > 0.0) || !std::isfinite(tmpl.p_active)) {
    throw ValidationError("calibrate_profile: template p_active must be > 0");
  }
  if (!(ratio_min >= 1.0) || !(ratio_max >= ratio_min)) {
    throw ValidationError("calibrate_profile: ratio bounds must satisfy 1 <= min <= max");
  }
  const double idle_fraction = tmpl.p_idle_awake / tmpl.p_active;
  if (!(idle_fraction >= 0.0 && idle_fraction <= 1.0)) {
    throw ValidationError("calibrate_profile: template needs p_idle_awake in [0, p_active]");
  }

  // The ordering invariant caps p_sleep at p_idle_awake, so only ratios
  // >= p_active / p_idle_awake produce valid profiles.
  const double lowest_valid =
      idle_fraction > 0.0 ? 1.0 / idle_fraction : std::numeric_limits<double>::infinity();
  const double lo = std::max(ratio_min, lowest_valid);
  if (!(lo <= ratio_max)) {
    throw CalibrationError(
        "calibrate_profile: no ratio in bounds keeps p_sleep <= p_idle_awake");
  }

  const auto profile_at = [&](double ratio) {
    PowerProfile p = tmpl;
    p.p_sleep = std::min(tmpl.p_active / ratio, tmpl.p_idle_awake);
    return p;
  };
  const auto penalty_at = [&](double ratio) {
    return idle_penalty(grid, profile_at(ratio));
  };

  const double penalty_lo = penalty_at(lo);
  const double penalty_hi = penalty_at(ratio_max);
  constexpr double kFeasibilityEps = 1e-9;
  if (target_penalty < penalty_lo - kFeasibilityEps ||
      target_penalty > penalty_hi + kFeasibilityEps) {
    throw CalibrationError("calibrate_profile: target " + format_number(target_penalty) +
                           " outside reachable penalty range [" +
                           format_number(penalty_lo) + ", " + format_number(penalty_hi) +
                           "] for ratio bounds [" + format_number(lo) + ", " +
                           format_number(ratio_max) + "]");
  }

  double a = lo;
  double b = ratio_max;
  for (int i = 0; i < 200 && (b - a) > 1e-13 * b; ++i) {
    const double mid = 0.5 * (a + b);
    if (penalty_at(mid) < target_penalty) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double ratio = 0.5 * (a + b);

  CalibrationResult result;
  result.profile = profile_at(ratio);
  result.active_sleep_ratio = ratio;
  const double achieved = idle_penalty(grid, result.profile);
  if (std::abs(achieved - target_penalty) > 1e-4) {
    throw CalibrationError("calibrate_profile: converged ratio misses target by " +
                           format_number(achieved - target_penalty));
  }
  return result;
}

}  // namespace ecoiot
