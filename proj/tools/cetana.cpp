#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cetana/metrics.hpp"
#include "cetana/runner.hpp"
#include "cetana/trace_io.hpp"

#include <nlohmann/json.hpp>

namespace {

int cmd_run(const std::string& scenario_path, const std::optional<std::uint64_t>& seed,
            const std::optional<std::int64_t>& steps, const std::optional<std::string>& out_dir,
            bool strict) {
  cetana::RunOverrides overrides;
  overrides.seed = seed;
  overrides.steps = steps;
  overrides.strict = strict;
  return cetana::run_scenario_files(scenario_path, overrides,
                                    cetana::resolve_out_dir(out_dir), std::cout, std::cerr);
}

int cmd_replay(const std::string& trace_path, const std::string& scenario_path) {
  try {
    const cetana::ReplayResult r = cetana::replay_verify(trace_path, scenario_path);
    nlohmann::json j;
    j["ok"] = r.ok;
    if (!r.ok) j["mismatchTick"] = r.mismatch_tick;
    std::cout << j.dump() << "\n";
    return r.ok ? 0 : 2;
  } catch (const cetana::ScenarioParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

int cmd_metrics(const std::string& trace_path, const std::optional<std::string>& window_arg,
                const std::vector<std::string>& self_ids, double theta) {
  try {
    const cetana::Trace tr = cetana::trace_from_csv(cetana::read_file(trace_path));
    cetana::TickWindow window = cetana::full_window(tr);
    if (window_arg) {
      const auto dots = window_arg->find("..");
      if (dots == std::string::npos) {
        std::cerr << "window expects a..b\n";
        return 1;
      }
      window.first = std::stoll(window_arg->substr(0, dots));
      window.last = std::stoll(window_arg->substr(dots + 2));
    }
    const std::set<std::string> self(self_ids.begin(), self_ids.end());
    cetana::LackOptions lack;
    lack.theta = theta;

    nlohmann::json j;
    j["window"] = {window.first, window.last};
    j["pain"] = cetana::pain_metric(tr, window);
    j["lackEvents"] = cetana::lack_event_count(tr, window, lack);
    j["selfing"] = cetana::selfing_score(tr, window, self);
    const std::int64_t ticks =
        std::min(window.last, tr.last_tick()) - std::max(window.first, tr.t0) + 1;
    if (ticks >= 2) {
      j["rigidity"] = cetana::rigidity_metric(tr, window);
      const auto tc = cetana::three_characteristics(tr, window, self, theta);
      j["threeCharacteristics"] = {{"compoundness", tc.compoundness},
                                   {"fluctuation", tc.fluctuation},
                                   {"impersonality", tc.impersonality}};
    }
    std::cout << j.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cetana: deterministic agent-world simulator with attention, associative memory, "
               "and trace analytics"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string trace_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> steps;
  std::optional<std::string> out_dir;
  std::optional<std::string> window_arg;
  std::vector<std::string> self_ids;
  double theta = cetana::kPresenceTheta;
  bool strict = true;

  auto* run = app.add_subcommand("run", "run a scenario file and emit artifacts");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--steps", steps, "override the step count");
  run->add_option("--out", out_dir, "output directory (default: $CETANA_OUT or cwd)");
  run->add_flag("--strict,!--no-strict", strict, "strict scenario parsing (default on)");

  auto* replay = app.add_subcommand("replay", "regenerate a run and compare against a trace");
  replay->add_option("trace", trace_path, "trace.csv to verify")->required();
  replay->add_option("scenario", scenario_path, "scenario file")->required();

  auto* metrics = app.add_subcommand("metrics", "compute trace metrics");
  metrics->add_option("trace", trace_path, "trace.csv to analyze")->required();
  metrics->add_option("--window", window_arg, "tick window a..b (default: whole trace)");
  metrics->add_option("--self", self_ids, "self-tagged concept ids")->delimiter(',');
  metrics->add_option("--theta", theta, "factor presence threshold");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(scenario_path, seed, steps, out_dir, strict);
  if (replay->parsed()) return cmd_replay(trace_path, scenario_path);
  return cmd_metrics(trace_path, window_arg, self_ids, theta);
}
