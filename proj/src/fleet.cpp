#include "ecoiot/fleet.hpp"

#include <cmath>
#include <string>

#include "ecoiot/errors.hpp"

namespace ecoiot {

void FleetStats::validate() const {
  if (registered < 0) {
    throw ValidationError("FleetStats: registered must be >= 0");
  }
  if (online < 0 || online > registered) {
    throw ValidationError("FleetStats: online must be in [0, registered], got " +
                          std::to_string(online) + " of " + std::to_string(registered));
  }
  if (!std::isfinite(gwp_per_gateway) || gwp_per_gateway < 0.0) {
    throw ValidationError("FleetStats: gwp_per_gateway must be finite and >= 0");
  }
}

FleetWaste fleet_waste(const FleetStats& stats) {
  stats.validate();
  FleetWaste waste;
  waste.offline_count = stats.registered - stats.online;
  waste.offline_fraction =
      stats.registered > 0
          ? static_cast<double>(waste.offline_count) / static_cast<double>(stats.registered)
          : 0.0;
  waste.stranded_gwp = static_cast<double>(waste.offline_count) * stats.gwp_per_gateway;
  return waste;
}

}  // namespace ecoiot
