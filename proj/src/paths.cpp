#include "qkdplan/paths.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace qkdplan {

bool path_less(const Path& a, const Path& b) {
  if (a.length_tenth_km != b.length_tenth_km)
    return a.length_tenth_km < b.length_tenth_km;
  return a.nodes < b.nodes;
}

namespace {

constexpr std::int64_t kUnreachable = -1;

// Exact distance from every node to `d` over non-banned links/nodes.
std::vector<std::int64_t> distances_to(const Topology& t, NodeId d,
                                       const std::set<NodeId>& banned_nodes,
                                       const std::set<int>& banned_links) {
  std::vector<std::int64_t> dist(static_cast<std::size_t>(t.node_count()) + 1,
                                 kUnreachable);
  using Item = std::pair<std::int64_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[d] = 0;
  queue.push({0, d});
  while (!queue.empty()) {
    auto [len, at] = queue.top();
    queue.pop();
    if (len != dist[at]) continue;
    for (int idx : t.in_links(at)) {
      if (banned_links.count(idx)) continue;
      const Link& l = t.links()[idx];
      if (l.tail != d && banned_nodes.count(l.tail)) continue;
      std::int64_t cand = len + l.length_tenth_km;
      if (dist[l.tail] == kUnreachable || cand < dist[l.tail]) {
        dist[l.tail] = cand;
        queue.push({cand, l.tail});
      }
    }
  }
  return dist;
}

// Shortest s->d path avoiding the banned sets, lexicographically smallest
// node sequence among shortest: walk greedily along distance-tight links,
// always to the smallest head. Link lengths are strictly positive, so the
// walk cannot cycle.
Path restricted_shortest(const Topology& t, NodeId s, NodeId d,
                         const std::set<NodeId>& banned_nodes,
                         const std::set<int>& banned_links) {
  std::vector<std::int64_t> dist = distances_to(t, d, banned_nodes, banned_links);
  if (dist[s] == kUnreachable) return Path{};
  Path p;
  p.nodes.push_back(s);
  NodeId at = s;
  while (at != d) {
    bool stepped = false;
    for (int idx : t.out_links(at)) {  // heads ascending
      if (banned_links.count(idx)) continue;
      const Link& l = t.links()[idx];
      if (l.head != d && banned_nodes.count(l.head)) continue;
      if (dist[l.head] == kUnreachable) continue;
      if (l.length_tenth_km + dist[l.head] == dist[at]) {
        p.nodes.push_back(l.head);
        p.link_indices.push_back(idx);
        p.length_tenth_km += l.length_tenth_km;
        at = l.head;
        stepped = true;
        break;
      }
    }
    if (!stepped) return Path{};  // cannot happen when dist[s] is finite
  }
  return p;
}

}  // namespace

Path shortest_path(const Topology& t, NodeId s, NodeId d) {
  if (!t.has_node(s) || !t.has_node(d))
    throw std::out_of_range("shortest_path: unknown endpoint");
  if (s == d) throw std::invalid_argument("shortest_path: source equals destination");
  return restricted_shortest(t, s, d, {}, {});
}

std::vector<Path> k_shortest_paths(const Topology& t, NodeId s, NodeId d, int k) {
  if (k <= 0) throw std::invalid_argument("k_shortest_paths: k must be positive");
  if (!t.has_node(s) || !t.has_node(d))
    throw std::out_of_range("k_shortest_paths: unknown endpoint");
  if (s == d)
    throw std::invalid_argument("k_shortest_paths: source equals destination");

  std::vector<Path> found;
  Path first = restricted_shortest(t, s, d, {}, {});
  if (first.empty()) return found;
  found.push_back(std::move(first));

  auto candidate_less = [](const Path& a, const Path& b) { return path_less(a, b); };
  std::set<Path, decltype(candidate_less)> candidates(candidate_less);

  while (static_cast<int>(found.size()) < k) {
    const Path& prev = found.back();
    std::set<NodeId> banned_nodes;
    std::int64_t root_length = 0;
    for (std::size_t spur = 0; spur < prev.link_indices.size(); ++spur) {
      NodeId spur_node = prev.nodes[spur];
      // Paths already produced that share the root must not be rediscovered:
      // drop their next edge out of the spur node.
      std::set<int> banned_links;
      for (const Path& p : found) {
        if (p.link_indices.size() <= spur) continue;
        if (std::equal(prev.nodes.begin(), prev.nodes.begin() + spur + 1,
                       p.nodes.begin()))
          banned_links.insert(p.link_indices[spur]);
      }
      Path tail = restricted_shortest(t, spur_node, d, banned_nodes, banned_links);
      if (!tail.empty()) {
        Path full;
        full.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + spur);
        full.nodes.insert(full.nodes.end(), tail.nodes.begin(), tail.nodes.end());
        full.link_indices.assign(prev.link_indices.begin(),
                                 prev.link_indices.begin() + spur);
        full.link_indices.insert(full.link_indices.end(), tail.link_indices.begin(),
                                 tail.link_indices.end());
        full.length_tenth_km = root_length + tail.length_tenth_km;
        candidates.insert(std::move(full));
      }
      banned_nodes.insert(spur_node);
      root_length += t.links()[prev.link_indices[spur]].length_tenth_km;
    }
    bool took = false;
    while (!candidates.empty()) {
      Path next = *candidates.begin();
      candidates.erase(candidates.begin());
      bool duplicate = false;
      for (const Path& p : found)
        if (p.nodes == next.nodes) {
          duplicate = true;
          break;
        }
      if (!duplicate) {
        found.push_back(std::move(next));
        took = true;
        break;
      }
    }
    if (!took) break;
  }
  return found;
}

std::vector<Path> enumerate_simple_paths(const Topology& t, NodeId s, NodeId d,
                                         std::size_t limit) {
  if (!t.has_node(s) || !t.has_node(d))
    throw std::out_of_range("enumerate_simple_paths: unknown endpoint");
  if (s == d)
    throw std::invalid_argument("enumerate_simple_paths: source equals destination");
  std::vector<Path> all;
  std::vector<char> visited(static_cast<std::size_t>(t.node_count()) + 1, 0);
  Path current;
  current.nodes.push_back(s);
  visited[s] = 1;

  struct Dfs {
    const Topology& t;
    NodeId d;
    std::size_t limit;
    std::vector<Path>& all;
    std::vector<char>& visited;
    Path& current;

    void run(NodeId at) {
      if (at == d) {
        if (all.size() >= limit)
          throw std::length_error("enumerate_simple_paths: path limit exceeded");
        all.push_back(current);
        return;
      }
      for (int idx : t.out_links(at)) {
        const Link& l = t.links()[idx];
        if (visited[l.head]) continue;
        visited[l.head] = 1;
        current.nodes.push_back(l.head);
        current.link_indices.push_back(idx);
        current.length_tenth_km += l.length_tenth_km;
        run(l.head);
        current.length_tenth_km -= l.length_tenth_km;
        current.link_indices.pop_back();
        current.nodes.pop_back();
        visited[l.head] = 0;
      }
    }
  } dfs{t, d, limit, all, visited, current};

  dfs.run(s);
  std::sort(all.begin(), all.end(), path_less);
  return all;
}

}  // namespace qkdplan
