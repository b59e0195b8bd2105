#pragma once

#include "ecoiot/frame_model.hpp"

namespace ecoiot {

// Base-station power states around idle mode. Energy is charged per symbol:
// signalling symbols at p_active; a free interval of duration d sleeps iff
// d >= t_transition + min_sleep, paying t_transition at p_idle_awake and the
// remainder at p_sleep; shorter intervals stay awake at p_idle_awake.
struct PowerProfile {
  double p_active = 1.0;      // W while transmitting a signalling symbol
  double p_idle_awake = 1.0;  // W awake, not transmitting, not sleeping
  double p_sleep = 1.0;       // W in the sleep state
  double t_transition = 1e-3 / 14.0;  // s, ramp-down + ramp-up per sleep episode
  double min_sleep = 1e-3 / 14.0;     // s, minimum useful time asleep

  void validate() const;  // p_active >= p_idle_awake >= p_sleep >= 0
};

struct SleepSimResult {
  double energy_per_hyperperiod = 0.0;  // J over one grid cycle
  double avg_power = 0.0;               // W
  double sleep_fraction = 0.0;
  double transmit_fraction = 0.0;
  double awake_idle_fraction = 0.0;
};

SleepSimResult simulate_idle(const FrameGrid& grid, const PowerProfile& profile);

// Relative extra idle-mode energy versus the same profile on an empty,
// fully sleep-eligible carrier of the same dimensions.
double idle_penalty(const FrameGrid& grid, const PowerProfile& profile);

struct CalibrationResult {
  PowerProfile profile;
  double active_sleep_ratio = 1.0;  // resolved p_active / p_sleep
};

// Resolves p_sleep so that idle_penalty(grid, profile) hits target_penalty.
// Every other template field is kept; p_idle_awake stays at its declared
// fraction of p_active. Bisection on the p_active/p_sleep ratio, which the
// penalty is monotone in.
CalibrationResult calibrate_profile(const FrameGrid& grid, const PowerProfile& tmpl,
                                    double target_penalty, double ratio_min = 1.0,
                                    double ratio_max = 1e6);

}  // namespace ecoiot
