#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"
#include "qkdplan/paths.hpp"
#include "qkdplan/rng.hpp"
#include "qkdplan/topology.hpp"

using namespace qkdplan;

namespace {

Link mk(NodeId a, NodeId b, std::int64_t tenth_km) {
  Link l;
  l.tail = a;
  l.head = b;
  l.length_tenth_km = tenth_km;
  l.qkd_capacity = 1;
  l.km_capacity = 1;
  return l;
}

const std::string kUsnetPath = std::string(QKDPLAN_DATA_DIR) + "/usnet.topology";

// Exhaustive (length, sequence)-minimum over all simple paths, tracking the
// best without storing the rest. Independent of the library's Dijkstra/Yen
// route.
struct BestPathSearch {
  const Topology& t;
  NodeId d;
  std::vector<char> visited;
  std::vector<NodeId> current;
  std::int64_t length = 0;
  bool found = false;
  std::int64_t best_length = 0;
  std::vector<NodeId> best_nodes;
  std::size_t paths_seen = 0;

  BestPathSearch(const Topology& t_, NodeId d_)
      : t(t_), d(d_), visited(static_cast<std::size_t>(t_.node_count()) + 1, 0) {}

  void run(NodeId at) {
    if (at == d) {
      ++paths_seen;
      if (!found || length < best_length ||
          (length == best_length && current < best_nodes)) {
        found = true;
        best_length = length;
        best_nodes = current;
      }
      return;
    }
    for (int idx : t.out_links(at)) {
      const Link& l = t.links()[idx];
      if (visited[l.head]) continue;
      visited[l.head] = 1;
      current.push_back(l.head);
      length += l.length_tenth_km;
      run(l.head);
      length -= l.length_tenth_km;
      current.pop_back();
      visited[l.head] = 0;
    }
  }
};

Topology random_graph(std::mt19937_64& rng) {
  int n = 3 + static_cast<int>(uniform_below(rng, 4));  // 3..6 nodes
  std::vector<Link> links;
  for (NodeId a = 1; a <= n; ++a)
    for (NodeId b = 1; b <= n; ++b)
      if (a != b && uniform_below(rng, 100) < 45)
        links.push_back(mk(a, b, 10 + static_cast<std::int64_t>(uniform_below(rng, 200))));
  return Topology(n, std::move(links));
}

}  // namespace

TEST_CASE("two parallel routes come back shortest first") {
  Topology t{4, {mk(1, 2, 500), mk(2, 4, 500), mk(1, 3, 600), mk(3, 4, 600)}};
  auto paths = k_shortest_paths(t, 1, 4, 2);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes == std::vector<NodeId>{1, 2, 4});
  CHECK(paths[0].length_tenth_km == 1000);
  CHECK(paths[1].nodes == std::vector<NodeId>{1, 3, 4});
}

TEST_CASE("unreachable destination yields nothing") {
  Topology t{3, {mk(1, 2, 100)}};
  CHECK(k_shortest_paths(t, 1, 3, 4).empty());
  CHECK(shortest_path(t, 1, 3).empty());
  CHECK(enumerate_simple_paths(t, 1, 3).empty());
}

TEST_CASE("equal lengths break ties lexicographically") {
  Topology t{4, {mk(1, 2, 100), mk(1, 3, 100), mk(2, 4, 100), mk(3, 4, 100)}};
  auto paths = k_shortest_paths(t, 1, 4, 4);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes == std::vector<NodeId>{1, 2, 4});
  CHECK(paths[1].nodes == std::vector<NodeId>{1, 3, 4});
}

TEST_CASE("argument checks") {
  Topology t{2, {mk(1, 2, 100)}};
  CHECK_THROWS_AS(k_shortest_paths(t, 1, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(k_shortest_paths(t, 1, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(k_shortest_paths(t, 1, 9, 2), std::out_of_range);
}

TEST_CASE("reference instance shortest route matches exhaustive search") {
  Topology t = load_topology(kUsnetPath);
  BestPathSearch search{t, 23};
  search.current.push_back(1);
  search.run(1);
  REQUIRE(search.found);
  auto paths = k_shortest_paths(t, 1, 23, 1);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].length_tenth_km == search.best_length);
  CHECK(paths[0].nodes == search.best_nodes);
  CHECK(search.paths_seen > 0);
}

TEST_CASE("k shortest agrees with sorted enumeration on random graphs") {
  std::mt19937_64 rng{23};
  for (int i = 0; i < 60; ++i) {
    Topology t = random_graph(rng);
    NodeId s = 1 + static_cast<NodeId>(uniform_below(rng, t.node_count()));
    NodeId d = 1 + static_cast<NodeId>(uniform_below(rng, t.node_count()));
    if (s == d) continue;
    auto all = enumerate_simple_paths(t, s, d);
    for (int k : {1, 2, 5, 32}) {
      auto got = k_shortest_paths(t, s, d, k);
      std::size_t expect = std::min<std::size_t>(all.size(), static_cast<std::size_t>(k));
      REQUIRE(got.size() == expect);
      for (std::size_t j = 0; j < expect; ++j) {
        CHECK(got[j].nodes == all[j].nodes);
        CHECK(got[j].length_tenth_km == all[j].length_tenth_km);
      }
    }
  }
}

TEST_CASE("best path search has no duplicate nodes") {
  std::mt19937_64 rng{29};
  for (int i = 0; i < 20; ++i) {
    Topology t = random_graph(rng);
    NodeId s = 1, d = t.node_count();
    if (s == d) continue;
    for (const Path& p : k_shortest_paths(t, s, d, 16)) {
      std::vector<NodeId> sorted = p.nodes;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      std::int64_t len = 0;
      for (int idx : p.link_indices) len += t.links()[idx].length_tenth_km;
      CHECK(len == p.length_tenth_km);
    }
  }
}
