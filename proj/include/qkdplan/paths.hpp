#ifndef QKDPLAN_PATHS_HPP
#define QKDPLAN_PATHS_HPP

#include <cstdint>
#include <vector>

#include "qkdplan/topology.hpp"

namespace qkdplan {

struct Path {
  std::vector<NodeId> nodes;           // source..destination
  std::vector<int> link_indices;       // into Topology::links()
  std::int64_t length_tenth_km = 0;

  bool empty() const { return nodes.empty(); }
  int hop_count() const { return static_cast<int>(link_indices.size()); }
};

bool path_less(const Path& a, const Path& b);  // (length, node sequence)

// Shortest simple path by length, ties broken by lexicographically smallest
// node sequence. Empty path when d is unreachable.
Path shortest_path(const Topology& t, NodeId s, NodeId d);

// Up to k loopless paths in ascending (length, node sequence) order.
std::vector<Path> k_shortest_paths(const Topology& t, NodeId s, NodeId d, int k);

// Every simple s->d path, sorted by (length, node sequence). Throws once
// more than `limit` paths exist. Intended for small validation instances.
std::vector<Path> enumerate_simple_paths(const Topology& t, NodeId s, NodeId d,
                                         std::size_t limit = 1u << 20);

}  // namespace qkdplan

#endif
