#include "whisper/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace whisper {

Topology::Topology(std::vector<int> node_ids) : ids_(std::move(node_ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw std::invalid_argument("duplicate node id");
  }
}

int Topology::index_of(int node_id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), node_id);
  if (it == ids_.end() || *it != node_id) return -1;
  return static_cast<int>(it - ids_.begin());
}

void Topology::add_link(int src, int dst, double prr, ns_t delay) {
  if (src == dst) throw std::invalid_argument("self-links are not allowed");
  if (prr < 0.0 || prr > 1.0) throw std::invalid_argument("prr outside [0,1]");
  if (index_of(src) < 0 || index_of(dst) < 0) throw std::invalid_argument("unknown node id");
  links_.push_back({src, dst, prr, delay});
  invalidate_adjacency();
}

void Topology::add_symmetric_link(int a, int b, double prr, ns_t delay) {
  add_link(a, b, prr, delay);
  add_link(b, a, prr, delay);
}

void Topology::invalidate_adjacency() { adj_valid_ = false; }

const std::vector<std::vector<const Link*>>& Topology::in_links() const {
  if (!adj_valid_) {
    in_adj_.assign(ids_.size(), {});
    out_adj_.assign(ids_.size(), {});
    for (const auto& l : links_) {
      in_adj_[static_cast<std::size_t>(index_of(l.dst))].push_back(&l);
      out_adj_[static_cast<std::size_t>(index_of(l.src))].push_back(&l);
    }
    adj_valid_ = true;
  }
  return in_adj_;
}

const std::vector<std::vector<const Link*>>& Topology::out_links() const {
  in_links();
  return out_adj_;
}

std::vector<int> Topology::hops_from(int source_id, double prr_threshold) const {
  const int src = index_of(source_id);
  if (src < 0) throw std::invalid_argument("source node not in topology");
  std::vector<int> dist(ids_.size(), -1);
  std::deque<int> q;
  dist[static_cast<std::size_t>(src)] = 0;
  q.push_back(src);
  const auto& out = out_links();
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (const Link* l : out[static_cast<std::size_t>(u)]) {
      if (l->prr <= prr_threshold) continue;
      const int v = index_of(l->dst);
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

int Topology::compute_diameter(int source_id, double prr_threshold,
                               std::vector<int>* disconnected) const {
  const auto dist = hops_from(source_id, prr_threshold);
  int diameter = 0;
  if (disconnected) disconnected->clear();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] < 0) {
      if (disconnected) disconnected->push_back(ids_[i]);
    } else {
      diameter = std::max(diameter, dist[i]);
    }
  }
  return diameter;
}

Topology Topology::load(std::istream& in) {
  std::string line;
  int n_nodes = -1;
  Topology topo;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "nodes") {
      if (n_nodes >= 0 || !(ls >> n_nodes) || n_nodes < 1) {
        throw std::runtime_error("topology: bad or repeated 'nodes' header");
      }
      std::vector<int> ids(static_cast<std::size_t>(n_nodes));
      std::iota(ids.begin(), ids.end(), 1);
      topo = Topology(std::move(ids));
      continue;
    }
    if (n_nodes < 0) throw std::runtime_error("topology: edge before 'nodes' header");
    int src = 0, dst = 0;
    double prr = 0.0;
    ns_t delay = 0;
    std::istringstream es(line);
    if (!(es >> src >> dst >> prr)) {
      throw std::runtime_error("topology: malformed edge at line " + std::to_string(line_no));
    }
    es >> delay;  // optional
    topo.add_link(src, dst, prr, delay);
  }
  if (n_nodes < 0) throw std::runtime_error("topology: missing 'nodes' header");
  return topo;
}

Topology Topology::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topology file: " + path);
  return load(in);
}

void Topology::save(std::ostream& out) const {
  out << "nodes " << node_count() << "\n";
  for (const auto& l : links_) {
    out << l.src << " " << l.dst << " " << l.prr;
    if (l.propagation_delay != 0) out << " " << l.propagation_delay;
    out << "\n";
  }
}

void Topology::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write topology file: " + path);
  save(out);
}

Topology make_line_topology(int n_nodes, double prr) {
  std::vector<int> ids(static_cast<std::size_t>(n_nodes));
  std::iota(ids.begin(), ids.end(), 1);
  Topology topo(std::move(ids));
  for (int i = 1; i < n_nodes; ++i) topo.add_symmetric_link(i, i + 1, prr);
  return topo;
}

Topology make_complete_topology(int n_nodes, double prr) {
  std::vector<int> ids(static_cast<std::size_t>(n_nodes));
  std::iota(ids.begin(), ids.end(), 1);
  Topology topo(std::move(ids));
  for (int i = 1; i <= n_nodes; ++i) {
    for (int j = i + 1; j <= n_nodes; ++j) topo.add_symmetric_link(i, j, prr);
  }
  return topo;
}

Topology make_flocklab_like_topology(TxPower power, bool ideal_links) {
  // 3 x 9 office-floor layout, node 1 in a corner; node k (1-based) sits at
  // column (k-1)/3, row (k-1)%3. Columns bunch up near node 1 and spread out
  // toward the far end, which gives the dense core plus sparse tail that
  // produces the reported hop-diameter bands at the two powers.
  constexpr int kCols = 9;
  constexpr int kRows = 3;
  constexpr double kRowPitch = 0.9;
  constexpr double kColX[kCols] = {0.0, 0.7, 1.4, 2.1, 2.8, 4.0, 5.2, 6.4, 7.6};
  const double radius = power == TxPower::ZeroDbm ? 2.1 : 2.5;

  std::vector<int> ids(kCols * kRows);
  std::iota(ids.begin(), ids.end(), 1);
  Topology topo(std::move(ids));
  auto pos = [&](int id) {
    const int k = id - 1;
    return std::pair<double, double>{kColX[k / kRows], (k % kRows) * kRowPitch};
  };
  for (int a = 1; a <= kCols * kRows; ++a) {
    for (int b = a + 1; b <= kCols * kRows; ++b) {
      const auto [ax, ay] = pos(a);
      const auto [bx, by] = pos(b);
      const double d = std::hypot(ax - bx, ay - by);
      if (d > radius) continue;
      const double ratio = d / radius;
      const double prr = ideal_links ? 1.0 : 0.99 - 0.14 * ratio * ratio;
      topo.add_symmetric_link(a, b, prr);
    }
  }
  return topo;
}

}  // namespace whisper
