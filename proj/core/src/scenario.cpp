#include "whisper/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace whisper {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_ids(const std::string& s) {
  std::vector<int> ids;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) ids.push_back(std::stoi(item));
  }
  return ids;
}

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ids[i]);
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::runtime_error("scenario: bad boolean value: " + v);
}

std::string substitute_power(std::string path, const std::string& power) {
  const std::string token = "{power}";
  const auto pos = path.find(token);
  if (pos != std::string::npos) path.replace(pos, token.size(), power);
  return path;
}

}  // namespace

ScenarioSpec ScenarioSpec::parse(std::istream& in) {
  ScenarioSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("scenario: missing '=' at line " + std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "name") spec.name = value;
    else if (key == "protocol") spec.protocol = value;
    else if (key == "power") spec.power = value;
    else if (key == "topology") spec.topology_path = value;
    else if (key == "ideal_links") spec.ideal_links = parse_bool(value);
    else if (key == "senders") spec.senders = parse_ids(value);
    else if (key == "rotate") spec.rotate = parse_bool(value);
    else if (key == "rotation_period") spec.rotation_period = std::stoi(value);
    else if (key == "floods") spec.floods = std::stoi(value);
    else if (key == "reps") spec.reps = std::stoi(value);
    else if (key == "no_signal_slots") spec.no_signal_slots = std::stoi(value);
    else if (key == "n_tx") spec.n_tx = std::stoi(value);
    else if (key == "t_slot_us") spec.t_slot_us = std::stoll(value);
    else if (key == "t_guard_us") spec.t_guard_us = std::stoll(value);
    else if (key == "seed") spec.seed = std::stoull(value);
    else throw std::runtime_error("scenario: unknown key '" + key + "'");
  }
  return spec;
}

ScenarioSpec ScenarioSpec::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return parse(in);
}

void ScenarioSpec::serialize(std::ostream& out) const {
  out << "name=" << name << "\n";
  out << "protocol=" << protocol << "\n";
  out << "power=" << power << "\n";
  out << "topology=" << topology_path << "\n";
  out << "ideal_links=" << (ideal_links ? 1 : 0) << "\n";
  out << "senders=" << join_ids(senders) << "\n";
  out << "rotate=" << (rotate ? 1 : 0) << "\n";
  out << "rotation_period=" << rotation_period << "\n";
  out << "floods=" << floods << "\n";
  out << "reps=" << reps << "\n";
  out << "no_signal_slots=" << no_signal_slots << "\n";
  out << "n_tx=" << n_tx << "\n";
  out << "t_slot_us=" << t_slot_us << "\n";
  out << "t_guard_us=" << t_guard_us << "\n";
  out << "seed=" << seed << "\n";
}

ScenarioSpec apply_scenario_defaults(ScenarioSpec spec) {
  if (!spec.senders.empty() || spec.name == "custom") return spec;
  // Sender sets follow the testbed layout qualitatively: node 1 sits in a
  // corner, "close" senders cluster, "far" senders spread across the floor.
  if (spec.name == "diss.fixed") {
    spec.senders = {1};
  } else if (spec.name == "diss.diff") {
    spec.senders = {10, 22, 11, 16, 23, 19, 20, 27, 26, 7};
    spec.rotate = true;
  } else if (spec.name == "diss.close") {
    spec.senders = {4, 2, 8, 1};
  } else if (spec.name == "diss.far") {
    spec.senders = {16, 19, 7, 1};
  } else if (spec.name == "coll.close") {
    spec.senders = {18, 27, 24, 23};
  } else if (spec.name == "coll.far") {
    spec.senders = {16, 19, 7, 4};
  } else {
    throw std::runtime_error("unknown scenario name: " + spec.name);
  }
  return spec;
}

ExperimentConfig build_experiment(const ScenarioSpec& raw) {
  const ScenarioSpec spec = apply_scenario_defaults(raw);
  if (spec.power != "0dbm" && spec.power != "-10dbm") {
    throw std::runtime_error("unknown power label: " + spec.power);
  }
  ExperimentConfig cfg;
  cfg.scenario_name = spec.name;
  cfg.protocol = protocol_from_name(spec.protocol);
  if (spec.topology_path.empty()) {
    cfg.topology = make_flocklab_like_topology(
        spec.power == "0dbm" ? TxPower::ZeroDbm : TxPower::MinusTenDbm, spec.ideal_links);
  } else {
    cfg.topology = Topology::load_file(substitute_power(spec.topology_path, spec.power));
  }
  cfg.senders = spec.senders;
  cfg.rotate_senders = spec.rotate;
  cfg.rotation_period = spec.rotation_period;
  cfg.collection = spec.name.rfind("coll.", 0) == 0;
  cfg.n_floods = spec.floods;
  cfg.n_repetitions = spec.reps;
  cfg.no_signal_slots = spec.no_signal_slots;
  cfg.seed = spec.seed;

  switch (cfg.protocol) {
    case Protocol::Whisper: cfg.whisper = WhisperConfig::standard(); break;
    case Protocol::WhisperLazy: cfg.whisper = WhisperConfig::lazy(); break;
    case Protocol::WhisperCompliant: cfg.whisper = WhisperConfig::compliant(); break;
    case Protocol::Glossy: cfg.glossy = GlossyConfig::standard(); break;
    case Protocol::Glossy2b: cfg.glossy = GlossyConfig::two_byte_preamble(); break;
  }
  if (cfg.protocol != Protocol::WhisperCompliant) cfg.whisper.n_tx = spec.n_tx;
  cfg.whisper.t_slot = us(spec.t_slot_us);
  cfg.whisper.t_guard = us(spec.t_guard_us);
  cfg.glossy.n_tx = spec.n_tx;
  cfg.glossy.t_guard = us(spec.t_guard_us);
  return cfg;
}

}  // namespace whisper
