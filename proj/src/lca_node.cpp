#include "ecoiot/lca_node.hpp"

#include <array>
#include <cmath>

#include "ecoiot/errors.hpp"
#include "ecoiot/text.hpp"

namespace ecoiot {

namespace {

void require_clean_name(const std::string& name, const char* what) {
  if (name.empty()) {
    throw ValidationError(std::string(what) + ": name must not be empty");
  }
  for (const char c : name) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      throw ValidationError(std::string(what) + ": name '" + name +
                            "' must not contain commas, quotes, or line breaks");
    }
  }
}

void require_finite_nonneg(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ValidationError(std::string(field) + " must be finite and >= 0");
  }
}

}  // namespace

void DeviceProfile::validate() const {
  require_clean_name(name, "DeviceProfile");
  require_finite_nonneg(production_gwp, "DeviceProfile: production_gwp");
  require_finite_nonneg(daily_energy, "DeviceProfile: daily_energy");
  require_finite_nonneg(design_lifetime, "DeviceProfile: design_lifetime");
  if (water_use) require_finite_nonneg(*water_use, "DeviceProfile: water_use");
  if (!component_breakdown.empty()) {
    double sum = 0.0;
    for (const auto& [component, gwp] : component_breakdown) {
      require_clean_name(component, "DeviceProfile: component");
      require_finite_nonneg(gwp, "DeviceProfile: component gwp");
      sum += gwp;
    }
    if (std::abs(sum - production_gwp) > 1e-3 * production_gwp) {
      throw ValidationError("DeviceProfile: component_breakdown sums to " +
                            format_number(sum) + " but production_gwp is " +
                            format_number(production_gwp));
    }
  }
}

void TransportMode::validate() const {
  require_clean_name(name, "TransportMode");
  if (gwp_per_km.has_value() == gwp_per_hour.has_value()) {
    throw ValidationError("TransportMode '" + name +
                          "': exactly one of gwp_per_km or gwp_per_hour must be set");
  }
  if (gwp_per_km) require_finite_nonneg(*gwp_per_km, "TransportMode: gwp_per_km");
  if (gwp_per_hour) require_finite_nonneg(*gwp_per_hour, "TransportMode: gwp_per_hour");
}

void BatteryProfile::validate() const {
  if (!(capacity > 0.0) || !std::isfinite(capacity)) {
    throw ValidationError("BatteryProfile: capacity must be > 0");
  }
  require_finite_nonneg(gwp_per_unit, "BatteryProfile: gwp_per_unit");
  if (!(lifetime > 0.0) || !std::isfinite(lifetime)) {
    throw ValidationError("BatteryProfile: lifetime must be > 0");
  }
}

namespace {

constexpr std::array<std::string_view, 4> kMethodTokens = {
    "ECarSwap", "SolarPanel", "UavWireless", "UavContacts"};

}  // namespace

std::string_view method_token(ProvisioningMethod m) {
  return kMethodTokens[static_cast<std::size_t>(m)];
}

std::optional<ProvisioningMethod> method_from_token(std::string_view token) {
  for (std::size_t i = 0; i < kMethodTokens.size(); ++i) {
    if (kMethodTokens[i] == token) return static_cast<ProvisioningMethod>(i);
  }
  return std::nullopt;
}

void ProvisioningPlan::validate() const {
  battery.validate();
  require_finite_nonneg(overhead_gwp, "ProvisioningPlan: overhead_gwp");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ValidationError("ProvisioningPlan: horizon must be > 0");
  }
  switch (method) {
    case ProvisioningMethod::SolarPanel:
      if (!solar_gwp_per_wp) {
        throw ValidationError("ProvisioningPlan(SolarPanel): missing solar_gwp_per_wp");
      }
      if (!panel_wp) {
        throw ValidationError("ProvisioningPlan(SolarPanel): missing panel_wp");
      }
      require_finite_nonneg(*solar_gwp_per_wp, "ProvisioningPlan: solar_gwp_per_wp");
      require_finite_nonneg(*panel_wp, "ProvisioningPlan: panel_wp");
      break;
    case ProvisioningMethod::ECarSwap:
      if (!transport || !transport->gwp_per_km) {
        throw ValidationError("ProvisioningPlan(ECarSwap): needs a per-km transport");
      }
      transport->validate();
      if (!visit_distance) {
        throw ValidationError("ProvisioningPlan(ECarSwap): missing visit_distance");
      }
      require_finite_nonneg(*visit_distance, "ProvisioningPlan: visit_distance");
      break;
    case ProvisioningMethod::UavWireless:
    case ProvisioningMethod::UavContacts:
      if (!transport || !transport->gwp_per_hour) {
        throw ValidationError("ProvisioningPlan(" + std::string(method_token(method)) +
                              "): needs a per-hour transport");
      }
      transport->validate();
      if (!visit_duration) {
        throw ValidationError("ProvisioningPlan(" + std::string(method_token(method)) +
                              "): missing visit_duration");
      }
      require_finite_nonneg(*visit_duration, "ProvisioningPlan: visit_duration");
      break;
  }
}

double manual_service_gwp(const TransportMode& mode, double distance_km,
                          double n_interventions) {
  mode.validate();
  if (!mode.gwp_per_km) {
    throw ValidationError("manual_service_gwp: transport '" + mode.name +
                          "' is priced per hour, not per km");
  }
  require_finite_nonneg(distance_km, "manual_service_gwp: distance_km");
  require_finite_nonneg(n_interventions, "manual_service_gwp: n_interventions");
  return *mode.gwp_per_km * distance_km * n_interventions;
}

double break_even_distance(double device_gwp, const TransportMode& mode,
                           double n_interventions) {
  mode.validate();
  if (!mode.gwp_per_km) {
    throw ValidationError("break_even_distance: transport '" + mode.name +
                          "' is priced per hour, not per km");
  }
  require_finite_nonneg(device_gwp, "break_even_distance: device_gwp");
  if (!(*mode.gwp_per_km > 0.0) || !(n_interventions > 0.0)) {
    throw ValidationError(
        "break_even_distance: rate and n_interventions must both be > 0");
  }
  return device_gwp / (*mode.gwp_per_km * n_interventions);
}

TotalsRow provisioning_totals(const ProvisioningPlan& plan) {
  plan.validate();
  TotalsRow row;
  row.method = std::string(method_token(plan.method));
  const double visits = plan.horizon / plan.battery.lifetime;
  switch (plan.method) {
    case ProvisioningMethod::SolarPanel:
      // Recharged in place; nothing travels to the node.
      row.overhead = *plan.solar_gwp_per_wp * *plan.panel_wp + plan.overhead_gwp;
      row.battery_total = plan.battery.gwp_per_unit;
      row.service_total = 0.0;
      row.n_visits = 0.0;
      break;
    case ProvisioningMethod::ECarSwap:
      row.overhead = plan.overhead_gwp;
      row.battery_total = plan.battery.gwp_per_unit * visits;
      row.service_total = *plan.transport->gwp_per_km * *plan.visit_distance * visits;
      row.n_visits = visits;
      break;
    case ProvisioningMethod::UavWireless:
      row.overhead = plan.overhead_gwp;
      row.battery_total = plan.battery.gwp_per_unit;  // one battery, recharged per visit
      row.service_total = *plan.transport->gwp_per_hour * *plan.visit_duration * visits;
      row.n_visits = visits;
      break;
    case ProvisioningMethod::UavContacts:
      row.overhead = plan.overhead_gwp;
      row.battery_total = plan.battery.gwp_per_unit * visits;  // swapped per visit
      row.service_total = *plan.transport->gwp_per_hour * *plan.visit_duration * visits;
      row.n_visits = visits;
      break;
  }
  row.grand_total = row.overhead + row.battery_total + row.service_total;
  return row;
}

double battery_lifetime_estimate(const BatteryProfile& battery, double daily_energy,
                                 double usable_fraction) {
  battery.validate();
  if (!(daily_energy > 0.0) || !std::isfinite(daily_energy)) {
    throw ValidationError("battery_lifetime_estimate: daily_energy must be > 0");
  }
  if (!(usable_fraction > 0.0 && usable_fraction <= 1.0)) {
    throw ValidationError("battery_lifetime_estimate: usable_fraction must be in (0, 1]");
  }
  const double days = battery.capacity * 3600.0 * usable_fraction / daily_energy;
  return days / 365.0;
}

double wpt_breakeven_efficiency(double grid_gwp_per_wh, double battery_gwp_per_wh) {
  require_finite_nonneg(grid_gwp_per_wh, "wpt_breakeven_efficiency: grid_gwp_per_wh");
  if (!(battery_gwp_per_wh > 0.0) || !std::isfinite(battery_gwp_per_wh)) {
    throw ValidationError("wpt_breakeven_efficiency: battery_gwp_per_wh must be > 0");
  }
  return grid_gwp_per_wh / battery_gwp_per_wh;
}

double standby_offset_hours(double standby_power, double lamp_power) {
  require_finite_nonneg(standby_power, "standby_offset_hours: standby_power");
  if (!(lamp_power > 0.0) || !std::isfinite(lamp_power)) {
    throw ValidationError("standby_offset_hours: lamp_power must be > 0");
  }
  return standby_power * 24.0 / lamp_power;
}

double annual_standby_kwh(double standby_power) {
  require_finite_nonneg(standby_power, "annual_standby_kwh: standby_power");
  return standby_power * 8760.0 / 1000.0;
}

}  // namespace ecoiot
