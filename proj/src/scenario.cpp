#include "ecoiot/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "ecoiot/errors.hpp"
#include "ecoiot/text.hpp"

namespace ecoiot {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError("scenario: " + where + ": " + what);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void require_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const std::string_view key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(where, "unknown field '" + it.key() + "'");
  }
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "must be finite");
  return x;
}

double require_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return as_number(obj.at(key), where + "." + key);
}

std::optional<double> optional_number(const json& obj, const std::string& where,
                                      const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return as_number(obj.at(key), where + "." + key);
}

std::int64_t require_count(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(where + "." + key, "expected a non-negative integer");
  }
  return v.get<std::int64_t>();
}

int optional_int(const json& obj, const std::string& where, const char* key,
                 int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

std::string require_string(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

std::string optional_string(const json& obj, const std::string& where, const char* key,
                            const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

bool require_bool(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(where + "." + key, "expected a boolean");
  return v.get<bool>();
}

FrameSection parse_frame(const json& j) {
  const std::string where = "frame";
  require_object(j, where);
  check_keys(j, where,
             {"frames", "subframes_per_frame", "symbols_per_subframe",
              "symbol_duration", "reference_shares"});
  FrameSection section;
  FrameConfig defaults;
  section.config.frames = optional_int(j, where, "frames", defaults.frames);
  section.config.subframes_per_frame =
      optional_int(j, where, "subframes_per_frame", defaults.subframes_per_frame);
  section.config.symbols_per_subframe =
      optional_int(j, where, "symbols_per_subframe", defaults.symbols_per_subframe);
  section.config.symbol_duration =
      optional_number(j, where, "symbol_duration").value_or(defaults.symbol_duration);
  section.config.validate();

  if (j.contains("reference_shares")) {
    const json& ref = j.at("reference_shares");
    require_object(ref, where + ".reference_shares");
    OccupancyShares shares;
    for (const SignalType s : kSignalTypes) {
      const std::string token(signal_token(s));
      if (!ref.contains(token)) {
        fail(where + ".reference_shares", "missing share for '" + token + "'");
      }
      const double v = as_number(ref.at(token), where + ".reference_shares." + token);
      if (v < 0.0 || v > 1.0) {
        fail(where + ".reference_shares." + token, "share must lie in [0, 1]");
      }
      shares.shares[signal_index(s)] = v;
    }
    check_keys(ref, where + ".reference_shares", {"NPSS", "NSSS", "NPBCH", "NRS", "FREE"});
    section.reference_shares = shares;
  }
  return section;
}

PowerSection parse_power(const json& j, const FrameConfig& frame_config) {
  const std::string where = "power";
  require_object(j, where);
  check_keys(j, where,
             {"p_active", "p_idle_awake", "p_sleep", "t_transition", "min_sleep",
              "target_penalty"});
  PowerSection section;
  PowerProfile& p = section.profile;
  p.p_active = optional_number(j, where, "p_active").value_or(1.0);
  p.p_idle_awake = optional_number(j, where, "p_idle_awake").value_or(p.p_active);
  p.p_sleep = optional_number(j, where, "p_sleep").value_or(p.p_active);
  p.t_transition =
      optional_number(j, where, "t_transition").value_or(frame_config.symbol_duration);
  p.min_sleep =
      optional_number(j, where, "min_sleep").value_or(frame_config.symbol_duration);
  section.target_penalty = optional_number(j, where, "target_penalty");
  // With a calibration target the given p_sleep is only a template
  // placeholder; calibration validates what it actually uses.
  if (!section.target_penalty) p.validate();
  return section;
}

DeviceProfile parse_device(const json& j) {
  const std::string where = "device";
  require_object(j, where);
  check_keys(j, where,
             {"name", "production_gwp", "component_breakdown", "water_use",
              "daily_energy", "design_lifetime"});
  DeviceProfile device;
  device.name = optional_string(j, where, "name", "device");
  device.production_gwp = require_number(j, where, "production_gwp");
  device.daily_energy = optional_number(j, where, "daily_energy").value_or(0.0);
  device.design_lifetime = require_number(j, where, "design_lifetime");
  if (!(device.design_lifetime > 0.0)) {
    fail(where + ".design_lifetime", "must be > 0");
  }
  device.water_use = optional_number(j, where, "water_use");
  if (j.contains("component_breakdown")) {
    const json& bd = j.at("component_breakdown");
    require_object(bd, where + ".component_breakdown");
    for (auto it = bd.begin(); it != bd.end(); ++it) {
      device.component_breakdown[it.key()] =
          as_number(it.value(), where + ".component_breakdown." + it.key());
    }
  }
  device.validate();
  return device;
}

std::vector<TransportEntry> parse_transports(const json& j) {
  const std::string where = "transports";
  require_array(j, where);
  std::vector<TransportEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& t = j.at(i);
    require_object(t, at);
    check_keys(t, at, {"name", "gwp_per_km", "gwp_per_hour", "reference_break_even_km"});
    TransportEntry entry;
    entry.mode.name = require_string(t, at, "name");
    entry.mode.gwp_per_km = optional_number(t, at, "gwp_per_km");
    entry.mode.gwp_per_hour = optional_number(t, at, "gwp_per_hour");
    entry.reference_break_even_km = optional_number(t, at, "reference_break_even_km");
    entry.mode.validate();
    for (const TransportEntry& prior : out) {
      if (prior.mode.name == entry.mode.name) {
        fail(at, "duplicate transport name '" + entry.mode.name + "'");
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

BatteryProfile parse_battery(const json& j, const std::string& where) {
  require_object(j, where);
  check_keys(j, where, {"capacity", "rechargeable", "gwp_per_unit", "lifetime"});
  BatteryProfile battery;
  battery.capacity = require_number(j, where, "capacity");
  battery.rechargeable = require_bool(j, where, "rechargeable");
  battery.gwp_per_unit = require_number(j, where, "gwp_per_unit");
  battery.lifetime = require_number(j, where, "lifetime");
  battery.validate();
  return battery;
}

std::vector<ProvisioningPlan> parse_plans(const json& j,
                                          const std::vector<TransportEntry>& transports) {
  const std::string where = "plans";
  require_array(j, where);
  std::vector<ProvisioningPlan> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& p = j.at(i);
    require_object(p, at);
    check_keys(p, at,
               {"method", "overhead_gwp", "solar_gwp_per_wp", "panel_wp", "battery",
                "transport", "visit_duration", "visit_distance", "horizon"});
    ProvisioningPlan plan;
    const std::string token = require_string(p, at, "method");
    const auto method = method_from_token(token);
    if (!method) {
      fail(at + ".method",
           "unknown method '" + token +
               "' (expected ECarSwap, SolarPanel, UavWireless, or UavContacts)");
    }
    plan.method = *method;
    plan.overhead_gwp = optional_number(p, at, "overhead_gwp").value_or(0.0);
    plan.solar_gwp_per_wp = optional_number(p, at, "solar_gwp_per_wp");
    plan.panel_wp = optional_number(p, at, "panel_wp");
    if (!p.contains("battery")) fail(at, "missing field 'battery'");
    plan.battery = parse_battery(p.at("battery"), at + ".battery");
    if (p.contains("transport")) {
      const std::string ref = require_string(p, at, "transport");
      bool found = false;
      for (const TransportEntry& t : transports) {
        if (t.mode.name == ref) {
          plan.transport = t.mode;
          found = true;
          break;
        }
      }
      if (!found) fail(at + ".transport", "unknown transport '" + ref + "'");
    }
    plan.visit_duration = optional_number(p, at, "visit_duration");
    plan.visit_distance = optional_number(p, at, "visit_distance");
    plan.horizon = require_number(p, at, "horizon");
    plan.validate();
    out.push_back(std::move(plan));
  }
  return out;
}

FleetStats parse_fleet(const json& j) {
  const std::string where = "fleet";
  require_object(j, where);
  check_keys(j, where, {"registered", "online", "gwp_per_gateway"});
  FleetStats stats;
  stats.registered = require_count(j, where, "registered");
  stats.online = require_count(j, where, "online");
  stats.gwp_per_gateway = require_number(j, where, "gwp_per_gateway");
  stats.validate();
  return stats;
}

LightingSection parse_lighting(const json& j) {
  const std::string where = "lighting";
  require_object(j, where);
  check_keys(j, where, {"standby_power", "lamp_power", "hub_annual_kwh"});
  LightingSection section;
  section.standby_power = require_number(j, where, "standby_power");
  section.lamp_power = require_number(j, where, "lamp_power");
  section.hub_annual_kwh = optional_number(j, where, "hub_annual_kwh");
  if (section.standby_power < 0.0) fail(where + ".standby_power", "must be >= 0");
  if (!(section.lamp_power > 0.0)) fail(where + ".lamp_power", "must be > 0");
  if (section.hub_annual_kwh && *section.hub_annual_kwh < 0.0) {
    fail(where + ".hub_annual_kwh", "must be >= 0");
  }
  return section;
}

}  // namespace

Scenario Scenario::from_json_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = e.byte > 0 ? e.byte - 1 : 0;
    for (std::size_t i = 0; i < limit && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError("scenario: JSON parse error at line " + std::to_string(line) +
                          ", column " + std::to_string(column) + ": " + e.what());
  }
  require_object(root, "top level");
  check_keys(root, "top level",
             {"frame", "power", "device", "transports", "plans", "fleet", "lighting"});

  Scenario scenario;
  scenario.input_hash = fnv1a64_hex(text);
  if (root.contains("frame")) scenario.frame = parse_frame(root.at("frame"));
  const FrameConfig frame_config =
      scenario.frame ? scenario.frame->config : FrameConfig{};
  if (root.contains("power")) {
    scenario.power = parse_power(root.at("power"), frame_config);
  }
  if (root.contains("device")) scenario.device = parse_device(root.at("device"));
  if (root.contains("transports")) {
    scenario.transports = parse_transports(root.at("transports"));
  }
  if (root.contains("plans")) {
    scenario.plans = parse_plans(root.at("plans"), scenario.transports);
  }
  if (root.contains("fleet")) scenario.fleet = parse_fleet(root.at("fleet"));
  if (root.contains("lighting")) scenario.lighting = parse_lighting(root.at("lighting"));
  return scenario;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("scenario: cannot open file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

}  // namespace ecoiot
