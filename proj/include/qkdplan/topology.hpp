#ifndef QKDPLAN_TOPOLOGY_HPP
#define QKDPLAN_TOPOLOGY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qkdplan/rational.hpp"

namespace qkdplan {

using NodeId = int;

// One directed fiber link. Lengths are stored in tenths of a kilometre so
// that path-length comparison and serialization are exact.
struct Link {
  NodeId tail = 0;
  NodeId head = 0;
  std::int64_t length_tenth_km = 0;
  int qkd_capacity = 0;  // wavelengths available for QKD channels
  int km_capacity = 0;   // wavelengths available for key-manager channels

  Rational length_km() const { return Rational(length_tenth_km, 10); }
};

// Immutable directed network. Nodes are 1..node_count; at most one link per
// ordered node pair. Both directions of a fibre must be listed explicitly,
// which keeps asymmetric capacities expressible.
class Topology {
 public:
  Topology(int node_count, std::vector<Link> links);

  int node_count() const { return node_count_; }
  const std::vector<Link>& links() const { return links_; }

  bool has_node(NodeId n) const { return n >= 1 && n <= node_count_; }

  // Links leaving n, ordered by head id.
  const std::vector<int>& out_links(NodeId n) const;
  // Links entering n, ordered by tail id.
  const std::vector<int>& in_links(NodeId n) const;

  // Index of the link tail->head, or -1.
  int find_link(NodeId tail, NodeId head) const;

 private:
  void check_node(NodeId n) const;

  int node_count_;
  std::vector<Link> links_;             // sorted by (tail, head)
  std::vector<std::vector<int>> out_;   // per node, link indices
  std::vector<std::vector<int>> in_;
};

// Parses the plain-text edge list format:
//   # comment
//   nodes: <count>
//   <tail> <head> <length_km> <qkd_capacity> <km_capacity>
// Lengths must be positive with at most one decimal digit.
Topology load_topology(const std::string& path);
Topology parse_topology(std::istream& in, const std::string& origin);

// Canonical form: header, then records sorted by (tail, head), lengths with
// one decimal place, fields single-space separated, LF line endings.
std::string serialize_topology(const Topology& t);
void save_topology(const Topology& t, const std::string& path);

std::vector<Link> neighbors_out(const Topology& t, NodeId n);

}  // namespace qkdplan

#endif
