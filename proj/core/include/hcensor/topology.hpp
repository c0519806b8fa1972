#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hcensor {

// Routing layout for the multi-hop network. Nodes are numbered 1..n; the
// sink is one of them and sends nothing. next_hop[i] is where node i forwards
// (next_hop[sink] = 0). Every route must reach the sink without cycles.
struct Topology {
  int n = 0;
  int sink = 0;
  std::vector<int> next_hop;  // 1-based; index 0 unused

  int hops_to_sink(int node) const;
  void validate() const;  // throws BadTopology
};

// Random tree: node i forwards to a uniform j in (i, n]; node n is the sink.
// Requires n >= 2.
Topology random_tree(int n, std::uint64_t seed);

// rows x cols grid, row-major node ids starting at 1; each node forwards one
// grid step along a shortest path to the sink (ties pick the lowest node id).
Topology grid(int rows, int cols, int sink_id);

// "tree:<n>" or "grid:<rows>x<cols>:<sink_id>".
Topology parse_topology(const std::string& text, std::uint64_t seed);
std::string describe_topology(const Topology& t);

}  // namespace hcensor
