#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ecoiot/errors.hpp"
#include "ecoiot/report.hpp"
#include "ecoiot/scenario.hpp"
#include "ecoiot/text.hpp"
#include "ecoiot/version.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCalibration = 3;

struct GlobalOptions {
  std::string scenario_path;
  std::string format_token = "ascii";
  std::string out_path;
};

ecoiot::ReportFormat resolve_format(const GlobalOptions& g) {
  const auto format = ecoiot::format_from_token(g.format_token);
  if (!format) {
    throw ecoiot::ValidationError("unsupported format token '" + g.format_token +
                                  "' (expected csv, ascii, or plotdata)");
  }
  return *format;
}

void write_output(const GlobalOptions& g,
                  const std::function<void(std::ostream&)>& writer) {
  if (g.out_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream file(g.out_path, std::ios::binary);
  if (!file) {
    throw ecoiot::ValidationError("cannot open output file '" + g.out_path + "'");
  }
  writer(file);
}

void emit_report(const GlobalOptions& g, const ecoiot::Scenario& scenario) {
  const ecoiot::ReportFormat format = resolve_format(g);
  const ecoiot::ScenarioReport report = ecoiot::run_scenario(scenario);
  write_output(g, [&](std::ostream& out) { ecoiot::emit(report, format, out); });
}

ecoiot::Scenario load_scenario(const GlobalOptions& g) {
  return ecoiot::Scenario::from_file(g.scenario_path);
}

void require_no_flag_mix(bool scenario_given, bool flags_given, const char* sub) {
  if (scenario_given && flags_given) {
    throw ecoiot::ValidationError(std::string(sub) +
                                  ": pass either --scenario or direct flags, not both");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(ecoiot::kToolName) +
               " - deterministic IoT carbon and NB-IoT idle-energy modeling"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--scenario", global.scenario_path, "scenario JSON file");
  app.add_option("--format", global.format_token, "output format: csv|ascii|plotdata")
      ->capture_default_str();
  app.add_option("--out", global.out_path, "output path (default: stdout)");

  // frame
  auto* frame_cmd =
      app.add_subcommand("frame", "downlink grid occupancy and sleep windows");
  int frame_frames = 2;
  double frame_symbol_duration = 1e-3 / 14.0;
  bool frame_grid = false;
  auto* frames_opt = frame_cmd->add_option("--frames", frame_frames, "window length in frames");
  auto* symdur_opt =
      frame_cmd->add_option("--symbol-duration", frame_symbol_duration, "seconds per symbol");
  frame_cmd->add_flag("--grid", frame_grid, "emit the full per-symbol grid");

  // power
  auto* power_cmd =
      app.add_subcommand("power", "idle-mode sleep simulation and penalty");
  double p_active = 1.0;
  double p_idle_awake = -1.0;
  double p_sleep = -1.0;
  double t_transition = -1.0;
  double min_sleep = -1.0;
  double target_penalty = -1.0;
  int power_frames = 2;
  auto* pa_opt = power_cmd->add_option("--p-active", p_active, "W while transmitting");
  auto* pi_opt = power_cmd->add_option("--p-idle-awake", p_idle_awake,
                                       "W awake idle (default: p_active)");
  auto* ps_opt =
      power_cmd->add_option("--p-sleep", p_sleep, "W asleep (default: p_active)");
  auto* tt_opt = power_cmd->add_option("--t-transition", t_transition,
                                       "s per sleep transition (default: one symbol)");
  auto* ms_opt = power_cmd->add_option("--min-sleep", min_sleep,
                                       "s minimum useful sleep (default: one symbol)");
  auto* target_opt = power_cmd->add_option("--target", target_penalty,
                                           "calibrate p_sleep to this idle penalty");
  auto* pframes_opt =
      power_cmd->add_option("--frames", power_frames, "window length in frames");

  // breakeven
  auto* breakeven_cmd =
      app.add_subcommand("breakeven", "servicing-transport break-even distances");
  double be_gwp = 0.0;
  double be_rate = 0.0;
  double be_interventions = 0.0;
  std::string be_name = "transport";
  auto* be_gwp_opt =
      breakeven_cmd->add_option("--gwp", be_gwp, "device production GWP, kgCO2eq");
  auto* be_rate_opt =
      breakeven_cmd->add_option("--rate", be_rate, "transport rate, kgCO2eq/km");
  auto* be_n_opt = breakeven_cmd->add_option("--interventions", be_interventions,
                                             "number of service interventions");
  breakeven_cmd->add_option("--name", be_name, "transport label");

  // servicing
  auto* servicing_cmd =
      app.add_subcommand("servicing", "provisioning-method GWP totals (scenario-driven)");

  // fleet
  auto* fleet_cmd = app.add_subcommand("fleet", "stranded embodied carbon of a gateway fleet");
  std::int64_t fleet_registered = 0;
  std::int64_t fleet_online = 0;
  double fleet_gwp = 0.0;
  auto* fr_opt = fleet_cmd->add_option("--registered", fleet_registered, "registered gateways");
  auto* fo_opt = fleet_cmd->add_option("--online", fleet_online, "online gateways");
  auto* fg_opt = fleet_cmd->add_option("--gwp-per-gateway", fleet_gwp,
                                       "embodied kgCO2eq per gateway");

  // wpt
  auto* wpt_cmd =
      app.add_subcommand("wpt", "wireless-power-transfer break-even efficiency");
  double wpt_grid_g_per_kwh = 250.0;  // mixed-grid default, overridable
  double wpt_battery_gwp = 0.8;
  double wpt_battery_wh = 22.5;
  wpt_cmd->add_option("--grid-g-per-kwh", wpt_grid_g_per_kwh,
                      "grid carbon intensity, gCO2eq/kWh")
      ->capture_default_str();
  wpt_cmd->add_option("--battery-gwp", wpt_battery_gwp, "kgCO2eq per battery")
      ->capture_default_str();
  wpt_cmd->add_option("--battery-wh", wpt_battery_wh, "battery capacity, Wh")
      ->capture_default_str();

  // lighting
  auto* lighting_cmd =
      app.add_subcommand("lighting", "standby-power offsets for smart lighting");
  double standby_w = 0.0;
  double lamp_w = 0.0;
  double hub_kwh = -1.0;
  auto* sw_opt = lighting_cmd->add_option("--standby-w", standby_w, "standby draw, W");
  auto* lw_opt = lighting_cmd->add_option("--lamp-w", lamp_w, "lamp power, W");
  auto* hub_opt =
      lighting_cmd->add_option("--hub-kwh", hub_kwh, "dedicated hub energy, kWh/year");

  // report
  auto* report_cmd = app.add_subcommand("report", "run every section of a scenario file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  const bool has_scenario = !global.scenario_path.empty();

  try {
    if (*frame_cmd) {
      const bool flags_given = frames_opt->count() > 0 || symdur_opt->count() > 0;
      require_no_flag_mix(has_scenario, flags_given, "frame");
      ecoiot::Scenario scenario;
      if (has_scenario) {
        scenario = load_scenario(global);
        if (!scenario.frame) scenario.frame = ecoiot::FrameSection{};
      } else {
        ecoiot::FrameSection section;
        section.config.frames = frame_frames;
        section.config.symbol_duration = frame_symbol_duration;
        scenario.frame = section;
      }
      if (frame_grid) {
        const ecoiot::FrameGrid grid = ecoiot::build_grid(scenario.frame->config);
        const ecoiot::ReportFormat format = resolve_format(global);
        if (format == ecoiot::ReportFormat::Csv) {
          write_output(global, [&](std::ostream& out) { write_grid_csv(grid, out); });
        } else if (format == ecoiot::ReportFormat::Ascii) {
          write_output(global,
                       [&](std::ostream& out) { out << render_grid_ascii(grid); });
        } else {
          throw ecoiot::ValidationError("frame --grid supports csv and ascii output");
        }
        return 0;
      }
      ecoiot::Scenario only_frame;
      only_frame.frame = scenario.frame;
      only_frame.input_hash = scenario.input_hash;
      emit_report(global, only_frame);
      return 0;
    }

    if (*power_cmd) {
      const bool flags_given = pa_opt->count() > 0 || pi_opt->count() > 0 ||
                               ps_opt->count() > 0 || tt_opt->count() > 0 ||
                               ms_opt->count() > 0 || target_opt->count() > 0 ||
                               pframes_opt->count() > 0;
      require_no_flag_mix(has_scenario, flags_given, "power");
      ecoiot::Scenario scenario;
      if (has_scenario) {
        const ecoiot::Scenario loaded = load_scenario(global);
        if (!loaded.power) {
          throw ecoiot::ValidationError("power: scenario file has no power section");
        }
        scenario.frame = loaded.frame;
        scenario.power = loaded.power;
        scenario.input_hash = loaded.input_hash;
      } else {
        ecoiot::FrameSection frame_section;
        frame_section.config.frames = power_frames;
        scenario.frame = frame_section;
        const double tau = frame_section.config.symbol_duration;
        ecoiot::PowerSection section;
        section.profile.p_active = p_active;
        section.profile.p_idle_awake = pi_opt->count() > 0 ? p_idle_awake : p_active;
        section.profile.p_sleep = ps_opt->count() > 0 ? p_sleep : p_active;
        section.profile.t_transition = tt_opt->count() > 0 ? t_transition : tau;
        section.profile.min_sleep = ms_opt->count() > 0 ? min_sleep : tau;
        if (target_opt->count() > 0) section.target_penalty = target_penalty;
        scenario.power = section;
      }
      emit_report(global, scenario);
      return 0;
    }

    if (*breakeven_cmd) {
      const bool flags_given = be_gwp_opt->count() > 0 || be_rate_opt->count() > 0 ||
                               be_n_opt->count() > 0;
      require_no_flag_mix(has_scenario, flags_given, "breakeven");
      ecoiot::Scenario scenario;
      if (has_scenario) {
        const ecoiot::Scenario loaded = load_scenario(global);
        if (!loaded.device || loaded.transports.empty()) {
          throw ecoiot::ValidationError(
              "breakeven: scenario needs device and transports sections");
        }
        scenario.device = loaded.device;
        scenario.transports = loaded.transports;
        scenario.input_hash = loaded.input_hash;
      } else {
        if (be_gwp_opt->count() == 0 || be_rate_opt->count() == 0 ||
            be_n_opt->count() == 0) {
          throw ecoiot::ValidationError(
              "breakeven: --gwp, --rate, and --interventions are required without "
              "--scenario");
        }
        ecoiot::DeviceProfile device;
        device.production_gwp = be_gwp;
        device.design_lifetime = be_interventions;  // one intervention per year
        scenario.device = device;
        ecoiot::TransportEntry entry;
        entry.mode.name = be_name;
        entry.mode.gwp_per_km = be_rate;
        scenario.transports.push_back(entry);
      }
      emit_report(global, scenario);
      return 0;
    }

    if (*servicing_cmd) {
      if (!has_scenario) {
        throw ecoiot::ValidationError("servicing: --scenario is required");
      }
      const ecoiot::Scenario loaded = load_scenario(global);
      if (loaded.plans.empty()) {
        throw ecoiot::ValidationError("servicing: scenario file has no plans section");
      }
      ecoiot::Scenario scenario;
      scenario.plans = loaded.plans;
      scenario.input_hash = loaded.input_hash;
      emit_report(global, scenario);
      return 0;
    }

    if (*fleet_cmd) {
      const bool flags_given =
          fr_opt->count() > 0 || fo_opt->count() > 0 || fg_opt->count() > 0;
      require_no_flag_mix(has_scenario, flags_given, "fleet");
      ecoiot::Scenario scenario;
      if (has_scenario) {
        const ecoiot::Scenario loaded = load_scenario(global);
        if (!loaded.fleet) {
          throw ecoiot::ValidationError("fleet: scenario file has no fleet section");
        }
        scenario.fleet = loaded.fleet;
        scenario.input_hash = loaded.input_hash;
      } else {
        ecoiot::FleetStats stats;
        stats.registered = fleet_registered;
        stats.online = fleet_online;
        stats.gwp_per_gateway = fleet_gwp;
        scenario.fleet = stats;
      }
      emit_report(global, scenario);
      return 0;
    }

    if (*wpt_cmd) {
      const double grid_gwp_per_wh = wpt_grid_g_per_kwh * 1e-6;  // g/kWh -> kg/Wh
      const double battery_gwp_per_wh = wpt_battery_gwp / wpt_battery_wh;
      const double threshold =
          ecoiot::wpt_breakeven_efficiency(grid_gwp_per_wh, battery_gwp_per_wh);
      const ecoiot::ReportFormat format = resolve_format(global);
      write_output(global, [&](std::ostream& out) {
        if (format == ecoiot::ReportFormat::Csv) {
          out << "# " << ecoiot::kToolName << ' ' << ecoiot::kToolVersion << " report\n";
          out << "# input none\n\n# section: wpt\n";
          out << "grid_gwp_per_wh,battery_gwp_per_wh,breakeven_efficiency\n";
          out << ecoiot::format_number(grid_gwp_per_wh) << ','
              << ecoiot::format_number(battery_gwp_per_wh) << ','
              << ecoiot::format_number(threshold) << '\n';
        } else if (format == ecoiot::ReportFormat::Ascii) {
          out << "wpt break-even efficiency: " << ecoiot::format_sig(threshold * 100.0, 6)
              << "% (grid " << ecoiot::format_sig(wpt_grid_g_per_kwh, 6)
              << " g/kWh, battery " << ecoiot::format_sig(wpt_battery_gwp, 6) << " kg / "
              << ecoiot::format_sig(wpt_battery_wh, 6) << " Wh)\n";
        } else {
          out << "series,x,y\n";
          for (int g = 150; g <= 300; g += 5) {
            const double t =
                ecoiot::wpt_breakeven_efficiency(g * 1e-6, battery_gwp_per_wh);
            out << "wpt_breakeven," << ecoiot::format_number(static_cast<double>(g))
                << ',' << ecoiot::format_number(t) << '\n';
          }
        }
      });
      return 0;
    }

    if (*lighting_cmd) {
      const bool flags_given =
          sw_opt->count() > 0 || lw_opt->count() > 0 || hub_opt->count() > 0;
      require_no_flag_mix(has_scenario, flags_given, "lighting");
      ecoiot::Scenario scenario;
      if (has_scenario) {
        const ecoiot::Scenario loaded = load_scenario(global);
        if (!loaded.lighting) {
          throw ecoiot::ValidationError("lighting: scenario file has no lighting section");
        }
        scenario.lighting = loaded.lighting;
        scenario.input_hash = loaded.input_hash;
      } else {
        if (sw_opt->count() == 0 || lw_opt->count() == 0) {
          throw ecoiot::ValidationError(
              "lighting: --standby-w and --lamp-w are required without --scenario");
        }
        ecoiot::LightingSection section;
        section.standby_power = standby_w;
        section.lamp_power = lamp_w;
        if (hub_opt->count() > 0) section.hub_annual_kwh = hub_kwh;
        scenario.lighting = section;
      }
      emit_report(global, scenario);
      return 0;
    }

    if (*report_cmd) {
      if (!has_scenario) {
        throw ecoiot::ValidationError("report: --scenario is required");
      }
      emit_report(global, load_scenario(global));
      return 0;
    }
  } catch (const ecoiot::CalibrationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCalibration;
  } catch (const ecoiot::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  return 0;
}
