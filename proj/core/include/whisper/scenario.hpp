#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "whisper/experiment.hpp"

namespace whisper {

// Flat key=value scenario description, one key per line, '#' comments.
// Recognized keys: name, protocol, power (0dbm | -10dbm), topology (path,
// "{power}" substituted; empty selects the bundled graph), ideal_links,
// senders (comma-separated ids), rotate, rotation_period, floods, reps,
// no_signal_slots, n_tx, t_slot_us, t_guard_us, seed.
struct ScenarioSpec {
  std::string name = "custom";
  std::string protocol = "whisper";
  std::string power = "0dbm";
  std::string topology_path;  // empty -> bundled flocklab-like graph
  bool ideal_links = false;
  std::vector<int> senders;   // empty -> named-scenario default
  bool rotate = false;
  int rotation_period = 1000;
  int floods = 10000;
  int reps = 3;
  int no_signal_slots = 0;
  int n_tx = 3;
  std::int64_t t_slot_us = 5000;
  std::int64_t t_guard_us = 130;
  std::uint64_t seed = 1;

  static ScenarioSpec parse(std::istream& in);
  static ScenarioSpec parse_file(const std::string& path);
  void serialize(std::ostream& out) const;
  bool operator==(const ScenarioSpec& other) const = default;
};

// Fills the sender set and flags of the six named scenarios when left
// unspecified. Unknown names with an explicit sender set stay custom;
// unknown names without senders throw.
ScenarioSpec apply_scenario_defaults(ScenarioSpec spec);

// Materializes the runnable configuration: loads or synthesizes the
// topology, maps the protocol name and copies the tuning knobs.
ExperimentConfig build_experiment(const ScenarioSpec& spec);

}  // namespace whisper
