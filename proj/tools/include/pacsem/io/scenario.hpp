#pragma once

// Scenario files: "key = value" lines driving one DecidePAC run.
//
//   system  = res-space | res-k-width | pc | pcr | cp
//   epsilon, gamma, delta  (rationals)
//   s | k, w | d | w, L    (backend parameters, per system)
//   kb, query              (paths, relative to the scenario file)
//   samples = <pasgn path>, or dist = <path>, mask = <spec>, seed = <int>
//   m        (optional; defaults to the required sample size)
//   threads, per_example, early_exit  (optional run options)

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pacsem/decide_pac.hpp"
#include "pacsem/sampling.hpp"

namespace pacsem::io {

struct ScenarioConfig {
  std::string system;
  PacParams params;
  std::optional<std::size_t> s, k, w, d;
  std::optional<Integer> L;
  std::filesystem::path kb, query;
  std::optional<std::filesystem::path> samples, dist;
  std::optional<std::string> mask;
  std::optional<Seed> seed;
  std::optional<std::size_t> m;
  std::size_t threads = 1;
  bool per_example = false;
  bool early_exit = true;
  std::filesystem::path base_dir;  // for the table: mask path
};

// Throws InputError on unknown keys, duplicates, missing or surplus
// parameters for the chosen system.
ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {},
                              const std::string& source = "<scenario>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Builds the backend for system/parameters from already-resolved files.
// Backend parameters absent from the config are rejected.
std::unique_ptr<DecisionBackend> make_backend(const ScenarioConfig& config);

std::vector<PartialAssignment> load_examples(const ScenarioConfig& config, std::size_t n);

struct ScenarioRun {
  ScenarioConfig config;
  std::size_t n = 0;
  std::string backend;
  PacOutcome outcome;
};

ScenarioRun run_scenario(const ScenarioConfig& config);

// Deterministic plain-text and JSON reports (no timing).
std::string format_report(const ScenarioRun& run, bool per_example);
std::string format_report_json(const ScenarioRun& run, bool per_example);

}  // namespace pacsem::io
