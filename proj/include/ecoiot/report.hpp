#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecoiot/scenario.hpp"

namespace ecoiot {

struct FrameReport {
  std::array<std::int64_t, 5> counts{};
  OccupancyShares shares;
  std::optional<OccupancyShares> reference;
  std::int64_t n_free_intervals = 0;
  int max_free_run_symbols = 0;
  double max_free_run_seconds = 0.0;
  double hyperperiod_seconds = 0.0;
};

struct PowerReport {
  PowerProfile profile;  // calibrated when a target was requested
  SleepSimResult sim;
  double penalty = 0.0;
  double active_sleep_ratio = 1.0;
  bool calibrated = false;
};

struct BreakevenRow {
  std::string mode;
  double gwp_per_km = 0.0;
  double n_interventions = 0.0;
  double break_even_km = 0.0;
  std::optional<double> reference_km;
};

// Long-format plot series: cumulative servicing GWP over distance, plus the
// constant device-production line.
struct ComparisonSeries {
  std::string series;
  std::vector<std::pair<double, double>> points;
};

struct LightingReport {
  double standby_power = 0.0;
  double lamp_power = 0.0;
  double annual_standby_kwh = 0.0;
  double offset_hours_per_day = 0.0;
  std::optional<double> hub_annual_kwh;
};

struct ScenarioReport {
  std::string tool_version;
  std::string input_hash;
  std::optional<FrameReport> frame;
  std::optional<PowerReport> power;
  std::optional<DeviceProfile> device;
  std::vector<BreakevenRow> breakeven;
  std::vector<ComparisonSeries> comparison;
  std::vector<TotalsRow> servicing;
  std::optional<FleetWaste> fleet;
  std::optional<LightingReport> lighting;
};

enum class ReportFormat { Csv, Ascii, Plotdata };

std::optional<ReportFormat> format_from_token(std::string_view token);

// Deterministic: a given scenario always produces the same report, and a
// given report always emits byte-identical output.
ScenarioReport run_scenario(const Scenario& scenario);
void emit(const ScenarioReport& report, ReportFormat format, std::ostream& out);

}  // namespace ecoiot
