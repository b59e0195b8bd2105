#pragma once

#include <cstdint>

namespace ecoiot {

// Registration vs. online statistics of a crowdsourced gateway network.
struct FleetStats {
  std::int64_t registered = 0;
  std::int64_t online = 0;
  double gwp_per_gateway = 0.0;  // kgCO2eq embodied per gateway

  void validate() const;  // 0 <= online <= registered
};

// Offline gateways counted as fully stranded embodied carbon.
struct FleetWaste {
  std::int64_t offline_count = 0;
  double offline_fraction = 0.0;  // in [0, 1]
  double stranded_gwp = 0.0;      // kgCO2eq
};

FleetWaste fleet_waste(const FleetStats& stats);

}  // namespace ecoiot
