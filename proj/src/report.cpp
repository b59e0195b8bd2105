#include "ecoiot/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ecoiot/errors.hpp"
#include "ecoiot/text.hpp"
#include "ecoiot/version.hpp"

namespace ecoiot {

namespace {

// x range of the comparison plot, km.
constexpr int kComparisonMaxKm = 20;

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string opt_sig(const std::optional<double>& v, int digits) {
  return v ? format_sig(*v, digits) : std::string("-");
}

}  // namespace

std::optional<ReportFormat> format_from_token(std::string_view token) {
  if (token == "csv") return ReportFormat::Csv;
  if (token == "ascii") return ReportFormat::Ascii;
  if (token == "plotdata") return ReportFormat::Plotdata;
  return std::nullopt;
}

ScenarioReport run_scenario(const Scenario& scenario) {
  ScenarioReport report;
  report.tool_version = std::string(kToolVersion);
  report.input_hash = scenario.input_hash;

  std::optional<FrameGrid> grid;
  if (scenario.frame) {
    grid = build_grid(scenario.frame->config);
    FrameReport fr;
    fr.counts = signal_counts(*grid);
    fr.shares = occupancy_shares(*grid);
    fr.reference = scenario.frame->reference_shares;
    const auto intervals = free_intervals(*grid);
    fr.n_free_intervals = static_cast<std::int64_t>(intervals.size());
    for (const FreeInterval& iv : intervals) {
      fr.max_free_run_symbols = std::max(fr.max_free_run_symbols, iv.length);
    }
    fr.max_free_run_seconds =
        fr.max_free_run_symbols * scenario.frame->config.symbol_duration;
    fr.hyperperiod_seconds = scenario.frame->config.hyperperiod();
    report.frame = fr;
  }

  if (scenario.power) {
    if (!grid) grid = build_grid(FrameConfig{});
    PowerReport pr;
    if (scenario.power->target_penalty) {
      const CalibrationResult cal =
          calibrate_profile(*grid, scenario.power->profile,
                            *scenario.power->target_penalty);
      pr.profile = cal.profile;
      pr.active_sleep_ratio = cal.active_sleep_ratio;
      pr.calibrated = true;
    } else {
      pr.profile = scenario.power->profile;
      pr.active_sleep_ratio = pr.profile.p_sleep > 0.0
                                  ? pr.profile.p_active / pr.profile.p_sleep
                                  : std::numeric_limits<double>::quiet_NaN();
      pr.calibrated = false;
    }
    pr.sim = simulate_idle(*grid, pr.profile);
    pr.penalty = idle_penalty(*grid, pr.profile);
    report.power = pr;
  }

  if (scenario.device) {
    report.device = *scenario.device;
  }

  if (scenario.device && !scenario.transports.empty()) {
    // One intervention per year over the device's service life.
    const double interventions = scenario.device->design_lifetime;
    for (const TransportEntry& entry : scenario.transports) {
      if (!entry.mode.gwp_per_km) continue;  // aerial modes have no distance break-even
      BreakevenRow row;
      row.mode = entry.mode.name;
      row.gwp_per_km = *entry.mode.gwp_per_km;
      row.n_interventions = interventions;
      row.break_even_km =
          break_even_distance(scenario.device->production_gwp, entry.mode, interventions);
      row.reference_km = entry.reference_break_even_km;
      report.breakeven.push_back(std::move(row));
    }

    ComparisonSeries device_series;
    device_series.series = "device";
    for (int x = 0; x <= kComparisonMaxKm; ++x) {
      device_series.points.emplace_back(x, scenario.device->production_gwp);
    }
    report.comparison.push_back(std::move(device_series));
    for (const TransportEntry& entry : scenario.transports) {
      if (!entry.mode.gwp_per_km) continue;
      ComparisonSeries series;
      series.series = entry.mode.name;
      for (int x = 0; x <= kComparisonMaxKm; ++x) {
        series.points.emplace_back(x, manual_service_gwp(entry.mode, x, interventions));
      }
      report.comparison.push_back(std::move(series));
    }
  }

  for (const ProvisioningPlan& plan : scenario.plans) {
    report.servicing.push_back(provisioning_totals(plan));
  }

  if (scenario.fleet) {
    report.fleet = fleet_waste(*scenario.fleet);
  }

  if (scenario.lighting) {
    LightingReport lr;
    lr.standby_power = scenario.lighting->standby_power;
    lr.lamp_power = scenario.lighting->lamp_power;
    lr.annual_standby_kwh = annual_standby_kwh(lr.standby_power);
    lr.offset_hours_per_day = standby_offset_hours(lr.standby_power, lr.lamp_power);
    lr.hub_annual_kwh = scenario.lighting->hub_annual_kwh;
    report.lighting = lr;
  }

  return report;
}

namespace {

void emit_provenance_csv(const ScenarioReport& r, std::ostream& out) {
  out << "# " << kToolName << ' ' << r.tool_version << " report\n";
  out << "# input "
      << (r.input_hash.empty() ? std::string("none") : "fnv1a64:" + r.input_hash)
      << '\n';
}

// Sections appear in alphabetical block-name order:
// breakeven, device.breakdown, device.profile, fleet, frame.occupancy,
// frame.summary, lighting, power.sim, power.summary, servicing.
void emit_csv(const ScenarioReport& r, std::ostream& out) {
  emit_provenance_csv(r, out);

  if (!r.breakeven.empty()) {
    out << "\n# section: breakeven\n";
    out << "mode,gwp_per_km,n_interventions,break_even_km,reference_km,delta_km\n";
    for (const BreakevenRow& row : r.breakeven) {
      out << row.mode << ',' << format_number(row.gwp_per_km) << ','
          << format_number(row.n_interventions) << ','
          << format_number(row.break_even_km) << ',';
      if (row.reference_km) {
        out << format_number(*row.reference_km) << ','
            << format_number(row.break_even_km - *row.reference_km);
      } else {
        out << ',';
      }
      out << '\n';
    }
  }

  if (r.device && !r.device->component_breakdown.empty()) {
    out << "\n# section: device.breakdown\n";
    out << "component,kgco2eq\n";
    for (const auto& [component, gwp] : r.device->component_breakdown) {
      out << component << ',' << format_number(gwp) << '\n';
    }
  }

  if (r.device) {
    out << "\n# section: device.profile\n";
    out << "name,production_gwp,water_use,daily_energy,design_lifetime\n";
    out << r.device->name << ',' << format_number(r.device->production_gwp) << ','
        << opt_cell(r.device->water_use) << ',' << format_number(r.device->daily_energy)
        << ',' << format_number(r.device->design_lifetime) << '\n';
  }

  if (r.fleet) {
    out << "\n# section: fleet\n";
    out << "offline_count,offline_fraction,stranded_kgco2eq\n";
    out << format_number(r.fleet->offline_count) << ','
        << format_number(r.fleet->offline_fraction) << ','
        << format_number(r.fleet->stranded_gwp) << '\n';
  }

  if (r.frame) {
    out << "\n# section: frame.occupancy\n";
    out << "signal,count,share,reference_share,delta\n";
    for (const SignalType s : kSignalTypes) {
      out << signal_token(s) << ',' << format_number(r.frame->counts[signal_index(s)])
          << ',' << format_number(r.frame->shares.share(s)) << ',';
      if (r.frame->reference) {
        const double ref = r.frame->reference->share(s);
        out << format_number(ref) << ',' << format_number(r.frame->shares.share(s) - ref);
      } else {
        out << ',';
      }
      out << '\n';
    }

    out << "\n# section: frame.summary\n";
    out << "signalling_share,free_share,n_free_intervals,max_free_run_symbols,"
           "max_free_run_seconds,hyperperiod_seconds\n";
    out << format_number(r.frame->shares.signalling_total()) << ','
        << format_number(r.frame->shares.share(SignalType::Free)) << ','
        << format_number(r.frame->n_free_intervals) << ','
        << format_number(static_cast<std::int64_t>(r.frame->max_free_run_symbols)) << ','
        << format_number(r.frame->max_free_run_seconds) << ','
        << format_number(r.frame->hyperperiod_seconds) << '\n';
  }

  if (r.lighting) {
    out << "\n# section: lighting\n";
    out << "standby_power,lamp_power,annual_standby_kwh,offset_hours_per_day,"
           "hub_annual_kwh\n";
    out << format_number(r.lighting->standby_power) << ','
        << format_number(r.lighting->lamp_power) << ','
        << format_number(r.lighting->annual_standby_kwh) << ','
        << format_number(r.lighting->offset_hours_per_day) << ','
        << opt_cell(r.lighting->hub_annual_kwh) << '\n';
  }

  if (r.power) {
    out << "\n# section: power.sim\n";
    out << "energy_j,avg_power_w,sleep_frac,tx_frac,idle_frac\n";
    out << format_number(r.power->sim.energy_per_hyperperiod) << ','
        << format_number(r.power->sim.avg_power) << ','
        << format_number(r.power->sim.sleep_fraction) << ','
        << format_number(r.power->sim.transmit_fraction) << ','
        << format_number(r.power->sim.awake_idle_fraction) << '\n';

    out << "\n# section: power.summary\n";
    out << "idle_penalty,active_sleep_ratio,calibrated,p_active,p_idle_awake,p_sleep,"
           "t_transition,min_sleep\n";
    out << format_number(r.power->penalty) << ',';
    if (std::isfinite(r.power->active_sleep_ratio)) {
      out << format_number(r.power->active_sleep_ratio);
    }
    out << ',' << (r.power->calibrated ? '1' : '0') << ','
        << format_number(r.power->profile.p_active) << ','
        << format_number(r.power->profile.p_idle_awake) << ','
        << format_number(r.power->profile.p_sleep) << ','
        << format_number(r.power->profile.t_transition) << ','
        << format_number(r.power->profile.min_sleep) << '\n';
  }

  if (!r.servicing.empty()) {
    out << "\n# section: servicing\n";
    out << "method,overhead,battery_total,service_total,n_visits,grand_total\n";
    for (const TotalsRow& row : r.servicing) {
      out << row.method << ',' << format_number(row.overhead) << ','
          << format_number(row.battery_total) << ',' << format_number(row.service_total)
          << ',' << format_number(row.n_visits) << ',' << format_number(row.grand_total)
          << '\n';
    }
  }
}

void emit_plotdata(const ScenarioReport& r, std::ostream& out) {
  emit_provenance_csv(r, out);
  out << "series,x,y\n";
  for (const ComparisonSeries& series : r.comparison) {
    for (const auto& [x, y] : series.points) {
      out << series.series << ',' << format_number(x) << ',' << format_number(y) << '\n';
    }
  }
}

void print_table(const std::vector<std::vector<std::string>>& rows, std::ostream& out) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) {
        line.append(widths[i] - row[i].size() + 2, ' ');
      }
    }
    out << line << '\n';
  }
}

void emit_ascii(const ScenarioReport& r, std::ostream& out) {
  out << kToolName << ' ' << r.tool_version << " report (input "
      << (r.input_hash.empty() ? std::string("none") : "fnv1a64:" + r.input_hash)
      << ")\n";
  constexpr int kDigits = 6;

  if (!r.breakeven.empty()) {
    out << "\n[breakeven]\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"mode", "gwp_per_km", "n_interventions", "break_even_km",
                    "reference_km", "delta_km"});
    for (const BreakevenRow& row : r.breakeven) {
      rows.push_back({row.mode, format_sig(row.gwp_per_km, kDigits),
                      format_sig(row.n_interventions, kDigits),
                      format_sig(row.break_even_km, kDigits),
                      opt_sig(row.reference_km, kDigits),
                      row.reference_km
                          ? format_sig(row.break_even_km - *row.reference_km, kDigits)
                          : std::string("-")});
    }
    print_table(rows, out);
  }

  if (r.device) {
    out << "\n[device]\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"name", "production_gwp", "water_use", "daily_energy",
                    "design_lifetime"});
    rows.push_back({r.device->name, format_sig(r.device->production_gwp, kDigits),
                    opt_sig(r.device->water_use, kDigits),
                    format_sig(r.device->daily_energy, kDigits),
                    format_sig(r.device->design_lifetime, kDigits)});
    print_table(rows, out);
    if (!r.device->component_breakdown.empty()) {
      out << "\n[device breakdown]\n";
      std::vector<std::vector<std::string>> bd;
      bd.push_back({"component", "kgco2eq"});
      for (const auto& [component, gwp] : r.device->component_breakdown) {
        bd.push_back({component, format_sig(gwp, kDigits)});
      }
      print_table(bd, out);
    }
  }

  if (r.fleet) {
    out << "\n[fleet]\n";
    print_table({{"offline_count", "offline_fraction", "stranded_kgco2eq"},
                 {format_number(r.fleet->offline_count),
                  format_sig(r.fleet->offline_fraction, kDigits),
                  format_sig(r.fleet->stranded_gwp, 9)}},
                out);
  }

  if (r.frame) {
    out << "\n[frame occupancy]\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"signal", "count", "share", "reference", "delta"});
    for (const SignalType s : kSignalTypes) {
      std::vector<std::string> row = {std::string(signal_token(s)),
                                      format_number(r.frame->counts[signal_index(s)]),
                                      format_sig(r.frame->shares.share(s), kDigits)};
      if (r.frame->reference) {
        const double ref = r.frame->reference->share(s);
        row.push_back(format_sig(ref, kDigits));
        row.push_back(format_sig(r.frame->shares.share(s) - ref, 3));
      } else {
        row.push_back("-");
        row.push_back("-");
      }
      rows.push_back(std::move(row));
    }
    print_table(rows, out);
    out << "signalling total " << format_sig(r.frame->shares.signalling_total(), kDigits)
        << ", free intervals " << r.frame->n_free_intervals << ", longest free run "
        << r.frame->max_free_run_symbols << " symbols ("
        << format_sig(r.frame->max_free_run_seconds * 1e3, 3) << " ms)\n";
  }

  if (r.lighting) {
    out << "\n[lighting]\n";
    print_table(
        {{"standby_power", "lamp_power", "annual_standby_kwh", "offset_hours_per_day",
          "hub_annual_kwh"},
         {format_sig(r.lighting->standby_power, kDigits),
          format_sig(r.lighting->lamp_power, kDigits),
          format_sig(r.lighting->annual_standby_kwh, kDigits),
          format_sig(r.lighting->offset_hours_per_day, kDigits),
          opt_sig(r.lighting->hub_annual_kwh, kDigits)}},
        out);
  }

  if (r.power) {
    out << "\n[power]\n";
    print_table({{"energy_j", "avg_power_w", "sleep_frac", "tx_frac", "idle_frac"},
                 {format_sig(r.power->sim.energy_per_hyperperiod, kDigits),
                  format_sig(r.power->sim.avg_power, kDigits),
                  format_sig(r.power->sim.sleep_fraction, kDigits),
                  format_sig(r.power->sim.transmit_fraction, kDigits),
                  format_sig(r.power->sim.awake_idle_fraction, kDigits)}},
                out);
    out << "idle penalty " << format_sig(r.power->penalty, kDigits);
    if (std::isfinite(r.power->active_sleep_ratio)) {
      out << ", p_active/p_sleep " << format_sig(r.power->active_sleep_ratio, kDigits);
    }
    out << (r.power->calibrated ? " (calibrated)" : "") << '\n';
    print_table({{"p_active", "p_idle_awake", "p_sleep", "t_transition", "min_sleep"},
                 {format_sig(r.power->profile.p_active, kDigits),
                  format_sig(r.power->profile.p_idle_awake, kDigits),
                  format_sig(r.power->profile.p_sleep, kDigits),
                  format_sig(r.power->profile.t_transition, kDigits),
                  format_sig(r.power->profile.min_sleep, kDigits)}},
                out);
  }

  if (!r.servicing.empty()) {
    out << "\n[servicing]\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back(
        {"method", "overhead", "battery_total", "service_total", "n_visits",
         "grand_total"});
    for (const TotalsRow& row : r.servicing) {
      rows.push_back({row.method, format_sig(row.overhead, kDigits),
                      format_sig(row.battery_total, kDigits),
                      format_sig(row.service_total, kDigits),
                      format_sig(row.n_visits, kDigits),
                      format_sig(row.grand_total, kDigits)});
    }
    print_table(rows, out);
  }
}

}  // namespace

void emit(const ScenarioReport& report, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::Csv:
      emit_csv(report, out);
      return;
    case ReportFormat::Ascii:
      emit_ascii(report, out);
      return;
    case ReportFormat::Plotdata:
      emit_plotdata(report, out);
      return;
  }
  throw ValidationError("emit: unsupported format token");
}

}  // namespace ecoiot
