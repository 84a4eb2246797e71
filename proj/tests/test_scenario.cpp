#include <doctest.h>

#include <sstream>
#include <string>

#include "whisper/report.hpp"
#include "whisper/scenario.hpp"

using namespace whisper;

TEST_CASE("scenario files round trip through serialize and parse") {
  ScenarioSpec spec;
  spec.name = "diss.far";
  spec.protocol = "whisper-lazy";
  spec.power = "-10dbm";
  spec.ideal_links = true;
  spec.senders = {16, 19, 7, 1};
  spec.rotate = true;
  spec.rotation_period = 250;
  spec.floods = 123;
  spec.reps = 2;
  spec.no_signal_slots = 7;
  spec.n_tx = 5;
  spec.t_slot_us = 6000;
  spec.t_guard_us = 150;
  spec.seed = 987654321;

  std::stringstream buf;
  spec.serialize(buf);
  const ScenarioSpec parsed = ScenarioSpec::parse(buf);
  CHECK(parsed == spec);
}

TEST_CASE("parser accepts comments, blank lines and rejects junk") {
  std::stringstream in(
      "# a scenario\n"
      "name = diss.fixed\n"
      "\n"
      "protocol= glossy\n"
      "floods =5\n");
  const ScenarioSpec spec = ScenarioSpec::parse(in);
  CHECK(spec.name == "diss.fixed");
  CHECK(spec.protocol == "glossy");
  CHECK(spec.floods == 5);

  std::stringstream bad("name = x\nnot-a-kv-line\n");
  CHECK_THROWS(ScenarioSpec::parse(bad));
  std::stringstream unknown("nonsense_key = 1\n");
  CHECK_THROWS(ScenarioSpec::parse(unknown));
}

TEST_CASE("named scenarios fill their sender sets") {
  ScenarioSpec spec;
  spec.name = "diss.fixed";
  const auto fixed = apply_scenario_defaults(spec);
  CHECK(fixed.senders == std::vector<int>{1});

  spec.name = "diss.diff";
  const auto diff = apply_scenario_defaults(spec);
  CHECK(diff.rotate);
  CHECK(diff.senders.size() == 10);

  spec.name = "coll.far";
  const auto far = apply_scenario_defaults(spec);
  CHECK(far.senders.size() == 4);

  spec.name = "no.such.scenario";
  CHECK_THROWS_WITH_AS(apply_scenario_defaults(spec),
                       doctest::Contains("unknown scenario name"), std::exception);

  spec.name = "my.custom";
  spec.senders = {3, 4};
  CHECK_NOTHROW(apply_scenario_defaults(spec));
}

TEST_CASE("building an experiment maps protocol, power and collection mode") {
  ScenarioSpec spec;
  spec.name = "coll.close";
  spec.protocol = "whisper";
  spec.floods = 10;
  const ExperimentConfig cfg = build_experiment(spec);
  CHECK(cfg.collection);
  CHECK(cfg.sink_id == 1);
  CHECK(cfg.protocol == Protocol::Whisper);
  CHECK(cfg.topology.node_count() == 27);

  ScenarioSpec g2 = spec;
  g2.name = "diss.fixed";
  g2.protocol = "glossy-2b";
  const ExperimentConfig gcfg = build_experiment(g2);
  CHECK(gcfg.protocol == Protocol::Glossy2b);
  CHECK_FALSE(gcfg.collection);

  ScenarioSpec bad = spec;
  bad.protocol = "carrier-pigeon";
  CHECK_THROWS(build_experiment(bad));

  ScenarioSpec missing = spec;
  missing.topology_path = "/nonexistent/{power}.topo";
  CHECK_THROWS_WITH_AS(build_experiment(missing),
                       doctest::Contains("cannot open topology file"), std::exception);
}

TEST_CASE("fixed-point formatting is stable at three decimals") {
  CHECK(format_fixed3(0.0) == "0.000");
  CHECK(format_fixed3(99.98049) == "99.980");
  CHECK(format_fixed3(1.0005) == "1.000");  // round-half-even under binary fp
  CHECK(format_fixed3(5.0) == "5.000");
  CHECK(format_fixed3(-0.1239) == "-0.124");
}

TEST_CASE("summary rows are sorted by scenario then protocol") {
  MetricsReport b;
  b.config_echo.scenario_name = "diss.fixed";
  b.config_echo.protocol = Protocol::Whisper;
  MetricsReport a;
  a.config_echo.scenario_name = "coll.far";
  a.config_echo.protocol = Protocol::Glossy;
  MetricsReport c;
  c.config_echo.scenario_name = "diss.fixed";
  c.config_echo.protocol = Protocol::Glossy;

  std::stringstream out;
  write_summary_csv(out, {b, a, c}, {"0dbm", "0dbm", "0dbm"});
  std::string line;
  std::getline(out, line);  // header
  std::getline(out, line);
  CHECK(line.rfind("coll.far,glossy,", 0) == 0);
  std::getline(out, line);
  CHECK(line.rfind("diss.fixed,glossy,", 0) == 0);
  std::getline(out, line);
  CHECK(line.rfind("diss.fixed,whisper,", 0) == 0);
}
