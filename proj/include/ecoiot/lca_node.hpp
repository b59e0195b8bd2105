#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace ecoiot {

// Cradle-to-gate footprint and operating demand of one IoT node.
struct DeviceProfile {
  std::string name = "device";
  double production_gwp = 0.0;  // kgCO2eq
  std::map<std::string, double> component_breakdown;  // kgCO2eq per component
  std::optional<double> water_use;  // liters over the life cycle
  double daily_energy = 0.0;        // J/day
  double design_lifetime = 0.0;     // years

  void validate() const;  // breakdown, when present, must sum to production_gwp
};

// Either a ground mode priced per km or an aerial mode priced per flight hour.
struct TransportMode {
  std::string name;
  std::optional<double> gwp_per_km;    // kgCO2eq/km
  std::optional<double> gwp_per_hour;  // kgCO2eq/h

  bool is_ground() const { return gwp_per_km.has_value(); }
  void validate() const;  // exactly one rate, rate >= 0
};

struct BatteryProfile {
  double capacity = 0.0;      // Wh
  bool rechargeable = false;
  double gwp_per_unit = 0.0;  // kgCO2eq per battery
  double lifetime = 0.0;      // years between swaps or recharges

  void validate() const;
};

enum class ProvisioningMethod { ECarSwap, SolarPanel, UavWireless, UavContacts };

std::string_view method_token(ProvisioningMethod m);
std::optional<ProvisioningMethod> method_from_token(std::string_view token);

// How a node's energy budget is serviced over a deployment horizon.
// Swap methods (ECarSwap, UavContacts) replace a non-rechargeable battery
// each visit; recharge methods (SolarPanel, UavWireless) keep one battery
// for the whole horizon. SolarPanel needs no visits at all.
struct ProvisioningPlan {
  ProvisioningMethod method = ProvisioningMethod::ECarSwap;
  double overhead_gwp = 0.0;  // kgCO2eq, one-time
  std::optional<double> solar_gwp_per_wp;  // kgCO2eq/Wp, SolarPanel only
  std::optional<double> panel_wp;          // Wp, SolarPanel only
  BatteryProfile battery;
  std::optional<TransportMode> transport;
  std::optional<double> visit_duration;  // hours per visit, aerial modes
  std::optional<double> visit_distance;  // km per visit, ground modes
  double horizon = 0.0;                  // years

  void validate() const;
};

struct TotalsRow {
  std::string method;
  double overhead = 0.0;       // kgCO2eq
  double battery_total = 0.0;  // kgCO2eq
  double service_total = 0.0;  // kgCO2eq
  double n_visits = 0.0;       // fractional visits allowed
  double grand_total = 0.0;    // kgCO2eq
};

// Cumulative transport footprint of n service interventions at a distance.
double manual_service_gwp(const TransportMode& mode, double distance_km,
                          double n_interventions);

// Distance at which cumulative servicing transport equals the device's
// production footprint.
double break_even_distance(double device_gwp, const TransportMode& mode,
                           double n_interventions);

TotalsRow provisioning_totals(const ProvisioningPlan& plan);

// Years a battery lasts at a constant daily draw; a planning helper, not a
// substitute for an explicitly declared plan lifetime.
double battery_lifetime_estimate(const BatteryProfile& battery, double daily_energy,
                                 double usable_fraction);

// Minimum end-to-end wireless-power-transfer efficiency at which grid-fed
// charging beats replacing primary batteries, per delivered Wh.
double wpt_breakeven_efficiency(double grid_gwp_per_wh, double battery_gwp_per_wh);

// Daily lamp-off hours needed to offset an always-on standby draw.
double standby_offset_hours(double standby_power, double lamp_power);

double annual_standby_kwh(double standby_power);

}  // namespace ecoiot
