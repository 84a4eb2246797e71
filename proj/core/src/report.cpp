#include "whisper/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace whisper {

std::string format_fixed3(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

namespace {

std::vector<std::size_t> sorted_order(const std::vector<MetricsReport>& reports) {
  std::vector<std::size_t> order(reports.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = reports[a].config_echo;
    const auto& cb = reports[b].config_echo;
    if (ca.scenario_name != cb.scenario_name) return ca.scenario_name < cb.scenario_name;
    return std::string(protocol_name(ca.protocol)) < protocol_name(cb.protocol);
  });
  return order;
}

}  // namespace

void write_summary_csv(std::ostream& out, const std::vector<MetricsReport>& reports,
                       const std::vector<std::string>& power_labels) {
  if (power_labels.size() != reports.size()) {
    throw std::invalid_argument("one power label per report required");
  }
  out << "scenario,protocol,tx_power,reliability_pct,reliability_std_pct,"
         "radio_on_ms,radio_on_std_ms,radio_on_idle_ms,radio_on_idle_std_ms\n";
  for (std::size_t i : sorted_order(reports)) {
    const MetricsReport& r = reports[i];
    out << r.config_echo.scenario_name << "," << protocol_name(r.config_echo.protocol) << ","
        << power_labels[i] << "," << format_fixed3(100.0 * r.network_reliability_mean) << ","
        << format_fixed3(100.0 * r.network_reliability_std) << ","
        << format_fixed3(r.radio_on_ms_mean) << "," << format_fixed3(r.radio_on_ms_std) << ","
        << format_fixed3(r.radio_on_idle_ms_mean) << ","
        << format_fixed3(r.radio_on_idle_ms_std) << "\n";
  }
}

void write_per_node_csv(std::ostream& out, const std::vector<MetricsReport>& reports) {
  out << "scenario,protocol,node,reliability_pct,radio_on_ms,radio_on_idle_ms\n";
  for (std::size_t i : sorted_order(reports)) {
    const MetricsReport& r = reports[i];
    for (const NodeMetrics& nm : r.node_means()) {  // node_means is id-sorted
      out << r.config_echo.scenario_name << "," << protocol_name(r.config_echo.protocol)
          << "," << nm.node_id << "," << format_fixed3(100.0 * nm.reliability) << ","
          << format_fixed3(nm.radio_on_ms) << "," << format_fixed3(nm.radio_on_idle_ms)
          << "\n";
    }
  }
}

void write_hop_histogram_csv(std::ostream& out, const MetricsReport& report) {
  out << "hop,first_counter,count\n";
  std::map<int, std::map<int, std::int64_t>> pooled;
  for (const auto& rep : report.repetitions) {
    for (const auto& [hop, hist] : rep.first_counter_by_hop) {
      for (const auto& [counter, count] : hist) pooled[hop][counter] += count;
    }
  }
  for (const auto& [hop, hist] : pooled) {
    for (const auto& [counter, count] : hist) {
      out << hop << "," << counter << "," << count << "\n";
    }
  }
}

}  // namespace whisper
