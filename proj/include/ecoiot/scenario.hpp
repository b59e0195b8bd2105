#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecoiot/bs_power.hpp"
#include "ecoiot/fleet.hpp"
#include "ecoiot/frame_model.hpp"
#include "ecoiot/lca_node.hpp"

namespace ecoiot {

struct FrameSection {
  FrameConfig config;
  // Published shares to compare the grid against; reporting data only.
  std::optional<OccupancyShares> reference_shares;
};

struct PowerSection {
  PowerProfile profile;
  // When set, p_sleep is calibrated so the idle penalty hits this value;
  // the given profile acts as the calibration template.
  std::optional<double> target_penalty;
};

struct TransportEntry {
  TransportMode mode;
  // Published break-even marker to report deltas against; data only.
  std::optional<double> reference_break_even_km;
};

struct LightingSection {
  double standby_power = 0.0;  // W
  double lamp_power = 0.0;     // W
  std::optional<double> hub_annual_kwh;
};

// One scenario file drives a full reproduction run; sections are optional
// and independent.
struct Scenario {
  std::optional<FrameSection> frame;
  std::optional<PowerSection> power;
  std::optional<DeviceProfile> device;
  std::vector<TransportEntry> transports;
  std::vector<ProvisioningPlan> plans;
  std::optional<FleetStats> fleet;
  std::optional<LightingSection> lighting;
  std::string input_hash;  // fnv1a64 of the source bytes

  static Scenario from_json_text(std::string_view text);
  static Scenario from_file(const std::string& path);
};

}  // namespace ecoiot
