#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace whisper {

struct CheckResult {
  std::string id;        // stable check number
  std::string name;
  bool pass = false;
  std::string measured;
  std::string expected;
  std::string note;
};

// Suites: timing, codec, ratio, idle, concurrent, compliant, preamble, all.
// The first two are exact and fast; the rest are seeded Monte-Carlo band
// checks at evaluation scale. Throws on unknown suite names.
std::vector<CheckResult> run_acceptance_suite(const std::string& suite);

const std::vector<std::string>& acceptance_suite_names();

// Prints one line per check; returns the number of failures.
int print_check_results(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace whisper
