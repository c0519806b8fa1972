#include "hcensor/topology.hpp"

#include <deque>
#include <sstream>

#include "hcensor/errors.hpp"
#include "hcensor/rng.hpp"

namespace hcensor {

int Topology::hops_to_sink(int node) const {
  int hops = 0;
  int cur = node;
  while (cur != sink) {
    cur = next_hop[static_cast<size_t>(cur)];
    ++hops;
    if (hops > n) throw BadTopology("hops_to_sink: cycle at node " + std::to_string(node));
  }
  return hops;
}

void Topology::validate() const {
  if (n < 2) throw BadTopology("topology: need at least 2 nodes");
  if (sink < 1 || sink > n) throw BadTopology("topology: sink outside 1..n");
  if (next_hop.size() != static_cast<size_t>(n) + 1)
    throw BadTopology("topology: next_hop must have n+1 entries");
  for (int i = 1; i <= n; ++i) {
    if (i == sink) continue;
    int hop = next_hop[static_cast<size_t>(i)];
    if (hop < 1 || hop > n || hop == i)
      throw BadTopology("topology: node " + std::to_string(i) + " has no valid next hop");
  }
  for (int i = 1; i <= n; ++i) hops_to_sink(i);  // throws on cycles
}

Topology random_tree(int n, std::uint64_t seed) {
  if (n < 2) throw BadTopology("random_tree: need at least 2 nodes");
  Topology t;
  t.n = n;
  t.sink = n;
  t.next_hop.assign(static_cast<size_t>(n) + 1, 0);
  RngStream rng = RngStream::derive(seed, 0, 0x746f706fULL);
  for (int i = 1; i < n; ++i) t.next_hop[static_cast<size_t>(i)] = rng.uniform_int(i + 1, n);
  t.validate();
  return t;
}

Topology grid(int rows, int cols, int sink_id) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw BadTopology("grid: need at least 2 nodes");
  int n = rows * cols;
  if (sink_id < 1 || sink_id > n) throw BadTopology("grid: sink outside the grid");
  Topology t;
  t.n = n;
  t.sink = sink_id;
  t.next_hop.assign(static_cast<size_t>(n) + 1, 0);

  // BFS distances from the sink over the 4-neighbour lattice
  std::vector<int> dist(static_cast<size_t>(n) + 1, -1);
  std::deque<int> queue{sink_id};
  dist[static_cast<size_t>(sink_id)] = 0;
  auto neighbours = [&](int id) {
    std::vector<int> out;
    int r = (id - 1) / cols, c = (id - 1) % cols;
    if (r > 0) out.push_back(id - cols);
    if (r + 1 < rows) out.push_back(id + cols);
    if (c > 0) out.push_back(id - 1);
    if (c + 1 < cols) out.push_back(id + 1);
    return out;
  };
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    for (int nb : neighbours(id)) {
      if (dist[static_cast<size_t>(nb)] < 0) {
        dist[static_cast<size_t>(nb)] = dist[static_cast<size_t>(id)] + 1;
        queue.push_back(nb);
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    if (i == sink_id) continue;
    int best = 0;
    for (int nb : neighbours(i)) {
      if (dist[static_cast<size_t>(nb)] != dist[static_cast<size_t>(i)] - 1) continue;
      if (best == 0 || nb < best) best = nb;  // ties: lowest id
    }
    t.next_hop[static_cast<size_t>(i)] = best;
  }
  t.validate();
  return t;
}

Topology parse_topology(const std::string& text, std::uint64_t seed) {
  if (text.rfind("tree:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(text.substr(5));
    } catch (...) {
      throw BadTopology("parse_topology: bad tree size in '" + text + "'");
    }
    return random_tree(n, seed);
  }
  if (text.rfind("grid:", 0) == 0) {
    std::string rest = text.substr(5);
    size_t x = rest.find('x'), colon = rest.find(':');
    if (x == std::string::npos || colon == std::string::npos || colon < x)
      throw BadTopology("parse_topology: expected grid:<rows>x<cols>:<sink>");
    try {
      int rows = std::stoi(rest.substr(0, x));
      int cols = std::stoi(rest.substr(x + 1, colon - x - 1));
      int sink = std::stoi(rest.substr(colon + 1));
      return grid(rows, cols, sink);
    } catch (const BadTopology&) {
      throw;
    } catch (...) {
      throw BadTopology("parse_topology: bad grid numbers in '" + text + "'");
    }
  }
  throw BadTopology("parse_topology: unknown layout '" + text + "'");
}

std::string describe_topology(const Topology& t) {
  std::ostringstream os;
  os << "n=" << t.n << " sink=" << t.sink << " next_hop=[";
  for (int i = 1; i <= t.n; ++i) {
    if (i > 1) os << ",";
    os << t.next_hop[static_cast<size_t>(i)];
  }
  os << "]";
  return os.str();
}

}  // namespace hcensor
