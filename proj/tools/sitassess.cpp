// Command-line front end: simulate a fire world, capture scenarios from a
// replayed event log, and assess later situations against the base.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sitassess/json_io.hpp"
#include "sitassess/report.hpp"
#include "sitassess/scenario_store.hpp"
#include "sitassess/sim_harness.hpp"

namespace fs = std::filesystem;
using namespace sitassess;

namespace {

constexpr int kExitGeneric = 1;
constexpr int kExitSimulate = 2;
constexpr int kExitCapture = 3;
constexpr int kExitEmptyBase = 4;

DomainConfig domain_config(const std::string& path) {
  return path.empty() ? DomainConfig::fire_domain() : load_domain_config(path);
}

int cmd_simulate(const std::string& script_path, const std::string& out,
                 std::optional<Tick> ticks) {
  try {
    sim::WorldScript script = sim::load_script(script_path);
    if (ticks) {
      script.ticks = *ticks;
      script.validate();
    }
    const auto log = sim::run(script);
    save_event_log(log, out);
    std::cout << "wrote " << log.size() << " events over " << script.ticks << " ticks to "
              << out << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "simulate: " << e.what() << "\n";
    return kExitSimulate;
  }
}

int cmd_capture(const std::string& events, Tick tick, const std::string& groups,
                const std::string& base_path, const std::string& name,
                const std::string& config_path, const std::string& out) {
  try {
    const auto log = load_event_log(events);
    const auto snapshot = replay_until(log, domain_config(config_path), tick);
    ScenarioBase base;
    if (fs::exists(base_path)) base = load_scenario_base(base_path);
    if (base.find(name) != nullptr) {
      throw CaptureError("scenario '" + name + "' already exists in " + base_path);
    }
    base.scenarios.push_back(capture_scenario(snapshot, load_groups(groups), name));
    save_scenario_base(base, out.empty() ? base_path : out);
    std::cout << "captured '" << name << "' at tick " << tick << " with "
              << base.scenarios.back().clusters.size() << " clusters; base holds "
              << base.scenarios.size() << " scenarios\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "capture: " << e.what() << "\n";
    return kExitCapture;
  }
}

int cmd_assess(const std::string& events, const std::string& base_path, std::vector<Tick> ticks,
               std::optional<Tick> every, std::optional<Tick> until, double theta,
               const std::string& config_path, const std::string& out) {
  try {
    if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("--theta must lie in (0,1]");
    const auto log = load_event_log(events);
    const DomainConfig config = domain_config(config_path);
    const ScenarioBase base = load_scenario_base(base_path);
    if (base.scenarios.empty()) {
      std::cerr << "assess: scenario base " << base_path << " holds no scenarios\n";
      return kExitEmptyBase;
    }
    if (every) {
      if (*every < 1) throw ConfigError("--every must be >= 1");
      const Tick last = until ? *until : (log.empty() ? 0 : log.back().tick);
      for (Tick t = 0; t <= last; t += *every) ticks.push_back(t);
    }
    if (ticks.empty()) throw ConfigError("give --tick or --every");
    std::sort(ticks.begin(), ticks.end());
    ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());

    AssessmentOptions options;
    options.min_max_scaling = config.min_max_scaling;
    std::vector<AssessmentSection> sections;
    for (auto& snap : replay(log, config, ticks)) {
      sections.push_back(assess_section(std::move(snap), base, theta, options));
    }
    for (std::size_t i = 0; i < sections.size(); ++i) {
      if (i > 0) std::cout << "\n";
      std::cout << render_table(sections[i]);
    }
    write_text_file(out, report_document(sections).dump(2) + "\n");
    return 0;
  } catch (const Error& e) {
    std::cerr << "assess: " << e.what() << "\n";
    return kExitGeneric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Situation assessment over factual-agent organizations"};
  app.require_subcommand(1);

  std::string script, events, base, groups, name, config, out;
  std::vector<Tick> ticks;
  std::optional<Tick> sim_ticks, every, until;
  Tick capture_tick = 0;
  double theta = 0.9;

  auto* simulate = app.add_subcommand("simulate", "Run a world script and write its event log");
  simulate->add_option("--script", script, "World script (JSON)")->required();
  simulate->add_option("--out", out, "Event log to write")->required();
  simulate->add_option("--ticks", sim_ticks, "Override the script duration");

  auto* capture = app.add_subcommand("capture", "Capture a scenario from a replayed snapshot");
  capture->add_option("--events", events, "Event log")->required();
  capture->add_option("--tick", capture_tick, "Snapshot tick")->required();
  capture->add_option("--groups", groups, "Groups file naming agent ids per cluster")->required();
  capture->add_option("--base", base, "Scenario base; created if missing")->required();
  capture->add_option("--name", name, "Name of the new scenario")->required();
  capture->add_option("--domain-config", config, "Domain configuration (JSON)");
  capture->add_option("--out", out, "Write the updated base here instead of --base");

  auto* assess = app.add_subcommand("assess", "Assess snapshots against the scenario base");
  assess->add_option("--events", events, "Event log")->required();
  assess->add_option("--base", base, "Scenario base")->required();
  auto* tick_opt = assess->add_option("--tick", ticks, "Tick to assess (repeatable)");
  auto* every_opt = assess->add_option("--every", every, "Assess every k ticks from 0");
  every_opt->excludes(tick_opt);
  assess->add_option("--until", until, "Last tick for --every (default: last event)")
      ->needs(every_opt);
  assess->add_option("--theta", theta, "Coverage threshold in (0,1]")->capture_default_str();
  assess->add_option("--domain-config", config, "Domain configuration (JSON)");
  std::string report_out = "report.json";
  assess->add_option("--out", report_out, "JSON report to write")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (simulate->parsed()) {
    if (sim_ticks && *sim_ticks < 1) {
      std::cerr << "simulate: --ticks must be >= 1\n";
      return kExitSimulate;
    }
    return cmd_simulate(script, out, sim_ticks);
  }
  if (capture->parsed()) {
    return cmd_capture(events, capture_tick, groups, base, name, config, out);
  }
  if (assess->parsed()) {
    return cmd_assess(events, base, ticks, every, until, theta, config, report_out);
  }
  return kExitGeneric;
}
