#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "whisper/experiment.hpp"

namespace whisper {

// Fixed-point with exactly three decimals; all ms and % columns use it so
// reruns with the same seed are byte-identical.
std::string format_fixed3(double value);

// One summary row per report: scenario, protocol, power label, reliability %
// (mean and std), radio-on ms with and without signaling (mean and std).
void write_summary_csv(std::ostream& out, const std::vector<MetricsReport>& reports,
                       const std::vector<std::string>& power_labels);

// Per-node rows sorted by (scenario, protocol, node id).
void write_per_node_csv(std::ostream& out, const std::vector<MetricsReport>& reports);

// Plot-ready first-counter histogram: hop, counter, count.
void write_hop_histogram_csv(std::ostream& out, const MetricsReport& report);

}  // namespace whisper
