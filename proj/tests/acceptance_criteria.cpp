// Acceptance harness: runs every acceptance suite and prints one line per
// criterion. Exits nonzero if any criterion fails.
#include <iostream>

#include "whisper/acceptance.hpp"

int main() {
  try {
    const auto results = whisper::run_acceptance_suite("all");
    const int failures = whisper::print_check_results(std::cout, results);
    if (failures != 0) {
      std::cout << failures << " criteria failed\n";
      return 1;
    }
    std::cout << "all " << results.size() << " criteria passed\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
