#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "whisper/units.hpp"

namespace whisper {

struct Link {
  int src = 0;
  int dst = 0;
  double prr = 1.0;
  ns_t propagation_delay = 0;
};

// Directed per-link packet-reception-ratio graph. Node ids are arbitrary
// non-negative integers (the bundled graphs use testbed-style ids 1..27).
class Topology {
 public:
  Topology() = default;
  explicit Topology(std::vector<int> node_ids);
  // Adjacency caches point into links_, so copies and moves drop them; they
  // are rebuilt lazily.
  Topology(const Topology& other) : ids_(other.ids_), links_(other.links_) {}
  Topology& operator=(const Topology& other) {
    ids_ = other.ids_;
    links_ = other.links_;
    adj_valid_ = false;
    in_adj_.clear();
    out_adj_.clear();
    return *this;
  }
  Topology(Topology&& other) noexcept
      : ids_(std::move(other.ids_)), links_(std::move(other.links_)) {
    other.adj_valid_ = false;
  }
  Topology& operator=(Topology&& other) noexcept {
    ids_ = std::move(other.ids_);
    links_ = std::move(other.links_);
    adj_valid_ = false;
    in_adj_.clear();
    out_adj_.clear();
    other.adj_valid_ = false;
    return *this;
  }

  void add_link(int src, int dst, double prr, ns_t delay = 0);
  void add_symmetric_link(int a, int b, double prr, ns_t delay = 0);

  const std::vector<int>& node_ids() const { return ids_; }
  int node_count() const { return static_cast<int>(ids_.size()); }
  int index_of(int node_id) const;  // -1 when unknown
  int id_of(int index) const { return ids_[static_cast<std::size_t>(index)]; }

  const std::vector<Link>& links() const { return links_; }
  // Incoming links per node index (the links a receiver can hear).
  const std::vector<std::vector<const Link*>>& in_links() const;
  const std::vector<std::vector<const Link*>>& out_links() const;

  // BFS hop distance from `source_id` over links with prr > threshold;
  // -1 for unreachable nodes.
  std::vector<int> hops_from(int source_id, double prr_threshold = 0.5) const;

  // Eccentricity of the source over qualifying links. Disconnected nodes are
  // reported through `disconnected` (when non-null) and excluded.
  int compute_diameter(int source_id, double prr_threshold = 0.5,
                       std::vector<int>* disconnected = nullptr) const;

  // Text format: `nodes N` header declaring node ids 1..N, then one directed
  // edge per line `src dst prr [delay_ns]`; '#' starts a comment.
  static Topology load(std::istream& in);
  static Topology load_file(const std::string& path);
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;

 private:
  void invalidate_adjacency();
  std::vector<int> ids_;
  std::vector<Link> links_;
  mutable std::vector<std::vector<const Link*>> in_adj_;
  mutable std::vector<std::vector<const Link*>> out_adj_;
  mutable bool adj_valid_ = false;
};

// Bundled synthetic graphs.
Topology make_line_topology(int n_nodes, double prr = 1.0);
Topology make_complete_topology(int n_nodes, double prr = 1.0);

enum class TxPower { ZeroDbm, MinusTenDbm };

// 27-node office-floor style graph with node 1 on the outer edge. The two
// power labels select link densities tuned to diameters of 5-6 (0 dBm) and
// 3-4 (-10 dBm) from node 1, with per-link PRR in [0.85, 0.99].
// `ideal_links` forces every PRR to 1 for deterministic checks.
Topology make_flocklab_like_topology(TxPower power, bool ideal_links = false);

}  // namespace whisper
