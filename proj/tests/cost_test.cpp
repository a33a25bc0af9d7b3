#include <random>
#include <sstream>

#include "doctest.h"
#include "qkdplan/cost.hpp"
#include "qkdplan/rng.hpp"

using namespace qkdplan;

namespace {

Link make_link(NodeId a, NodeId b, std::int64_t tenth_km) {
  Link l;
  l.tail = a;
  l.head = b;
  l.length_tenth_km = tenth_km;
  l.qkd_capacity = 150;
  l.km_capacity = 50;
  return l;
}

// Random simple directed path of `hops` links starting at node 1.
std::vector<Link> random_path(std::mt19937_64& rng, int hops) {
  std::vector<Link> path;
  for (int i = 0; i < hops; ++i)
    path.push_back(make_link(i + 1, i + 2,
                             100 + static_cast<std::int64_t>(uniform_below(rng, 5000))));
  return path;
}

}  // namespace

TEST_CASE("segment count") {
  CHECK(segments(1600, 1600) == 1);
  CHECK(segments(1610, 1600) == 2);
  CHECK(segments(800, 1600) == 1);
  CHECK_THROWS(segments(0, 1600));
  CHECK_THROWS(segments(1600, 0));
}

TEST_CASE("single link worked example") {
  PhysicsParams physics;  // 160 km spacing
  ComponentCounts c = component_counts({make_link(1, 2, 1600)}, 2, physics);
  CHECK(c.tx == 4);
  CHECK(c.rx == 2);
  CHECK(c.km == 2);
  CHECK(c.si == 0);
  CHECK(c.md == 1);
  CHECK(c.ch == Rational(1120));
}

TEST_CASE("empty route") {
  PhysicsParams physics;
  ComponentCounts c = component_counts({}, 5, physics);
  CHECK(c == ComponentCounts{});
}

TEST_CASE("two equal links at one chain") {
  PhysicsParams physics;
  ComponentCounts c =
      component_counts({make_link(1, 2, 1600), make_link(2, 3, 1600)}, 1, physics);
  CHECK(c.tx == 4);
  CHECK(c.rx == 2);
  CHECK(c.km == 4);
  CHECK(c.si == 0);
  CHECK(c.md == 2);
  CHECK(c.ch == Rational(1280));
}

TEST_CASE("interior relay counts never go negative") {
  PhysicsParams physics;
  ComponentCounts c = component_counts({make_link(1, 2, 400)}, 1, physics);
  CHECK(c.si == 0);
  CHECK(c.km == 2);  // ceil(0.25 + 1)
  CHECK(c.md == 1);
}

TEST_CASE("non-path routes are rejected") {
  PhysicsParams physics;
  CHECK_THROWS(component_counts({make_link(1, 2, 100), make_link(3, 4, 100)}, 1,
                                physics));
  CHECK_THROWS(component_counts(
      {make_link(1, 2, 100), make_link(2, 3, 100), make_link(3, 1, 100)}, 1,
      physics));
}

TEST_CASE("phase pricing worked examples") {
  CostTable table;
  ComponentCounts c;
  CHECK(phase_cost(c, table, Phase::kReservation) == Rational(0));
  c.tx = 4;
  c.rx = 2;
  c.km = 2;
  c.si = 0;
  c.md = 1;
  c.ch = Rational(1120);
  CHECK(phase_cost(c, table, Phase::kReservation) == Rational(14320));
  CHECK(phase_cost(c, table, Phase::kUtilization) == Rational(14320));
  CHECK(phase_cost(c, table, Phase::kOnDemand) == Rational(53380));
}

TEST_CASE("additivity over route concatenation") {
  PhysicsParams physics;
  std::mt19937_64 rng{11};
  for (int i = 0; i < 1000; ++i) {
    int hops = 1 + static_cast<int>(uniform_below(rng, 6));
    std::vector<Link> path = random_path(rng, hops);
    std::int64_t chains = static_cast<std::int64_t>(uniform_below(rng, 5));
    std::size_t cut = uniform_below(rng, hops + 1);
    std::vector<Link> a(path.begin(), path.begin() + cut);
    std::vector<Link> b(path.begin() + cut, path.end());
    CHECK(component_counts(path, chains, physics) ==
          component_counts(a, chains, physics) + component_counts(b, chains, physics));
  }
}

TEST_CASE("chain-count homogeneity") {
  PhysicsParams physics;
  std::mt19937_64 rng{13};
  for (int i = 0; i < 1000; ++i) {
    std::vector<Link> path = random_path(rng, 1 + static_cast<int>(uniform_below(rng, 5)));
    std::int64_t chains = 1 + static_cast<std::int64_t>(uniform_below(rng, 6));
    ComponentCounts one = component_counts(path, chains, physics);
    ComponentCounts two = component_counts(path, 2 * chains, physics);
    CHECK(two.tx == 2 * one.tx);
    CHECK(two.rx == 2 * one.rx);
    CHECK(one.tx == 2 * one.rx);
    CHECK(two.km == one.km);
    CHECK(two.si == one.si);
    CHECK(two.md == one.md);
  }
}

TEST_CASE("phase cost is linear and ordered") {
  CostTable table;
  std::mt19937_64 rng{17};
  PhysicsParams physics;
  for (int i = 0; i < 200; ++i) {
    std::vector<Link> path = random_path(rng, 1 + static_cast<int>(uniform_below(rng, 5)));
    std::int64_t chains = uniform_below(rng, 5);
    ComponentCounts c = component_counts(path, chains, physics);
    Rational use = phase_cost(c, table, Phase::kUtilization);
    Rational od = phase_cost(c, table, Phase::kOnDemand);
    CHECK(use >= Rational(0));
    CHECK(od >= use);
    ComponentCounts doubled = c + c;
    CHECK(phase_cost(doubled, table, Phase::kUtilization) == use + use);
  }
}

TEST_CASE("cost table files") {
  std::istringstream in{
      "# override one price\n"
      "beta_o_ch = 8\n"
      "beta_r_tx = 1200.5\n"};
  CostTable t = parse_cost_table(in, "<test>");
  CHECK(t.price(Phase::kOnDemand, Component::kCh) == Rational(8));
  CHECK(t.price(Phase::kReservation, Component::kTx) == Rational(2401, 2));
  CHECK(t.price(Phase::kOnDemand, Component::kTx) == Rational(6000));  // default

  std::istringstream unknown{"beta_x_tx = 5\n"};
  CHECK_THROWS_WITH_AS(parse_cost_table(unknown, "<t>"),
                       doctest::Contains("unknown key"), std::runtime_error);
  std::istringstream inverted{"beta_o_tx = 10\nbeta_e_tx = 20\n"};
  CHECK_THROWS_WITH_AS(parse_cost_table(inverted, "<t>"),
                       doctest::Contains("on-demand"), std::runtime_error);
  std::istringstream negative{"beta_r_tx = -1\n"};
  CHECK_THROWS(parse_cost_table(negative, "<t>"));
}
