#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cetana/composition.hpp"
#include "cetana/contemplative.hpp"
#include "cetana/core.hpp"
#include "cetana/dynamics.hpp"
#include "cetana/metrics.hpp"
#include "cetana/mindfulness.hpp"
#include "cetana/scenario.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cetana {

// Everything needed to run a parsed scenario.
struct BuiltScenario {
  AgentSpec agent;
  WorldSpec world;
  Ceta c0;
  WorldState w0;
  MindfulnessConfig mindfulness;
  ConcentrationConfig concentration;
  bool concentration_enabled = false;
};

BuiltScenario build_scenario(const Scenario& s);

// In-memory result of one orchestrated run: the trace with concentration,
// mindfulness and the reset monitor applied per tick, plus the analyses.
struct Execution {
  Trace trace;
  std::optional<Trace> trace_b;          // composed runs only
  std::vector<bool> applied_mask;        // mindfulness applications per offset
  std::optional<LoopReport> loop;        // over the mind-state stream
  std::optional<ResetEvent> reset;
  AssocMemory final_memory;
};

Execution execute_scenario(const Scenario& s);

nlohmann::json build_report(const Scenario& s, const Execution& ex);

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> steps;
  bool strict = true;
};

// Exit codes: 0 ok, 1 scenario error (nothing written), 2 runtime error.
// Writes trace.csv, report.json, run.meta (and trace_b.csv for composed
// runs) into out_dir; prints a one-line JSON summary to `out` and
// diagnostics to `err`.
int run_scenario_files(const std::filesystem::path& scenario_path, const RunOverrides& overrides,
                       std::filesystem::path out_dir, std::ostream& out, std::ostream& err);

struct ReplayResult {
  bool ok = true;
  std::int64_t mismatch_tick = 0;
};

// Regenerates the run from the scenario and compares tick by tick.
ReplayResult replay_verify(const std::filesystem::path& trace_path,
                           const std::filesystem::path& scenario_path);

// Output directory resolution: explicit flag beats CETANA_OUT beats cwd.
std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag_value);

}  // namespace cetana
