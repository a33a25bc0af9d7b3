#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qkdplan/topology.hpp"

using namespace qkdplan;

namespace {

Topology from_string(const std::string& text) {
  std::istringstream in{text};
  return parse_topology(in, "<test>");
}

const std::string kUsnetPath = std::string(QKDPLAN_DATA_DIR) + "/usnet.topology";

}  // namespace

TEST_CASE("three-node file loads") {
  Topology t = from_string(
      "nodes: 3\n"
      "1 2 100.0 5 2\n"
      "2 1 100.0 5 2\n");
  CHECK(t.node_count() == 3);
  CHECK(t.links().size() == 2);
  CHECK(t.links()[0].length_tenth_km == 1000);
  CHECK(t.links()[0].length_km() == Rational(100));
}

TEST_CASE("bundled reference instance") {
  Topology t = load_topology(kUsnetPath);
  CHECK(t.node_count() == 24);

  // Link count must agree with the raw record count of the shipped file.
  std::ifstream raw{kUsnetPath};
  REQUIRE(raw);
  std::size_t records = 0;
  std::string line;
  while (std::getline(raw, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls{line};
    std::string first;
    if (!(ls >> first) || first == "nodes:") continue;
    ++records;
  }
  CHECK(t.links().size() == records);
  CHECK(records == 86);  // 43 fibre pairs

  // Every fibre is listed in both directions with equal length.
  for (const Link& l : t.links()) {
    int back = t.find_link(l.head, l.tail);
    REQUIRE(back >= 0);
    CHECK(t.links()[back].length_tenth_km == l.length_tenth_km);
  }
}

TEST_CASE("validation errors") {
  CHECK_THROWS_WITH_AS(from_string("nodes: 3\n1 9 10.0 1 1\n"),
                       doctest::Contains("undeclared node"), std::runtime_error);
  CHECK_THROWS_WITH_AS(from_string("nodes: 2\n1 2 0.0 1 1\n"),
                       doctest::Contains("length"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      from_string("nodes: 2\n1 2 10.0 1 1\n1 2 20.0 1 1\n"),
      doctest::Contains("duplicate link"), std::runtime_error);
  CHECK_THROWS_WITH_AS(from_string("nodes: 2\n1 2 10.0\n"),
                       doctest::Contains("<test>:2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(from_string("1 2 10.0 1 1\n"),
                       doctest::Contains("nodes:"), std::runtime_error);
  CHECK_THROWS_WITH_AS(from_string("nodes: 2\n1 2 10.05 1 1\n"),
                       doctest::Contains("decimal"), std::runtime_error);
}

TEST_CASE("outgoing neighbours") {
  Topology t = load_topology(kUsnetPath);
  std::vector<Link> out = neighbors_out(t, 1);
  // Independent scan over the link list.
  std::vector<NodeId> heads;
  for (const Link& l : t.links())
    if (l.tail == 1) heads.push_back(l.head);
  REQUIRE(out.size() == heads.size());
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i].head == heads[i]);
  for (std::size_t i = 1; i < out.size(); ++i)
    CHECK(out[i - 1].head < out[i].head);  // sorted by head

  CHECK_THROWS_AS((void)neighbors_out(t, 999), std::out_of_range);

  Topology sink = from_string("nodes: 2\n1 2 10.0 1 1\n");
  CHECK(neighbors_out(sink, 2).empty());
}

TEST_CASE("degree sums match the link count") {
  Topology t = load_topology(kUsnetPath);
  std::size_t out_sum = 0, in_sum = 0;
  for (NodeId n = 1; n <= t.node_count(); ++n) {
    out_sum += t.out_links(n).size();
    in_sum += t.in_links(n).size();
  }
  CHECK(out_sum == t.links().size());
  CHECK(in_sum == t.links().size());
}

TEST_CASE("canonical serialization round-trips") {
  Topology t = load_topology(kUsnetPath);
  std::string first = serialize_topology(t);
  std::istringstream in{first};
  Topology reloaded = parse_topology(in, "<roundtrip>");
  CHECK(serialize_topology(reloaded) == first);
  CHECK(reloaded.node_count() == t.node_count());
  REQUIRE(reloaded.links().size() == t.links().size());
  for (std::size_t i = 0; i < t.links().size(); ++i) {
    CHECK(reloaded.links()[i].tail == t.links()[i].tail);
    CHECK(reloaded.links()[i].head == t.links()[i].head);
    CHECK(reloaded.links()[i].length_tenth_km == t.links()[i].length_tenth_km);
    CHECK(reloaded.links()[i].qkd_capacity == t.links()[i].qkd_capacity);
    CHECK(reloaded.links()[i].km_capacity == t.links()[i].km_capacity);
  }
}
