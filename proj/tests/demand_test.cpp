#include <random>
#include <sstream>

#include "doctest.h"
#include "qkdplan/demand.hpp"
#include "qkdplan/rng.hpp"

using namespace qkdplan;

namespace {

PhysicsParams physics_with_rate(std::int64_t kd) {
  PhysicsParams p;
  p.max_rate_at_spacing_kbps = kd;
  return p;
}

}  // namespace

TEST_CASE("parallel chain count") {
  CHECK(parallel_links(0, physics_with_rate(2)) == 0);
  CHECK(parallel_links(5, physics_with_rate(2)) == 3);
  CHECK(parallel_links(4, physics_with_rate(2)) == 2);
  CHECK_THROWS(parallel_links(-1, physics_with_rate(2)));
}

TEST_CASE("ceiling bounds and monotonicity") {
  std::mt19937_64 rng{7};
  for (int i = 0; i < 500; ++i) {
    std::int64_t kappa = static_cast<std::int64_t>(uniform_below(rng, 1000));
    std::int64_t kd = 1 + static_cast<std::int64_t>(uniform_below(rng, 9));
    PhysicsParams p = physics_with_rate(kd);
    std::int64_t chains = parallel_links(kappa, p);
    CHECK(kd * chains >= kappa);
    if (kappa > 0) CHECK(kd * (chains - 1) < kappa);
    CHECK(parallel_links(kappa + 1, p) >= chains);
    CHECK(parallel_links(kappa, physics_with_rate(kd + 1)) <= chains);
  }
}

TEST_CASE("uniform requests") {
  ChainRequest r0 = uniform_request(1, 1, 2, 0);
  REQUIRE(r0.scenario_count() == 1);
  CHECK(r0.probability(0) == Rational(1));

  ChainRequest r4 = uniform_request(2, 1, 2, 4);
  REQUIRE(r4.scenario_count() == 5);
  for (int w = 0; w <= 4; ++w) CHECK(r4.probability(w) == Rational(1, 5));

  CHECK_THROWS(uniform_request(3, 3, 3, 2));
}

TEST_CASE("point requests") {
  ChainRequest r = point_request(1, 1, 2, 3);
  REQUIRE(r.scenario_count() == 4);
  CHECK(r.probability(3) == Rational(1));
  CHECK(r.probability(0) == Rational(0));
}

TEST_CASE("expected chain count is exact") {
  CHECK(expected_parallel_links(uniform_request(1, 1, 2, 0), physics_with_rate(1)) ==
        Rational(0));
  CHECK(expected_parallel_links(uniform_request(1, 1, 2, 2), physics_with_rate(1)) ==
        Rational(1));
  CHECK(expected_parallel_links(uniform_request(1, 1, 2, 3), physics_with_rate(2)) ==
        Rational(1));
}

TEST_CASE("expected chain count equals direct summation up to K=50") {
  for (std::int64_t kd : {1, 2, 3, 7}) {
    PhysicsParams p = physics_with_rate(kd);
    for (int k = 0; k <= 50; ++k) {
      // Independent route: integer numerator over the fixed denominator.
      std::int64_t numerator = 0;
      for (int w = 0; w <= k; ++w) numerator += (w + kd - 1) / kd;
      CHECK(expected_parallel_links(uniform_request(1, 1, 2, k), p) ==
            Rational(numerator, k + 1));
    }
  }
}

TEST_CASE("nominal scenario") {
  CHECK(nominal_scenario(uniform_request(1, 1, 2, 2), physics_with_rate(1)) == 1);
  CHECK(nominal_scenario(point_request(1, 1, 2, 4), physics_with_rate(1)) == 4);
  // Expectation exactly between chain counts rounds up.
  ChainRequest half;
  half.id = 1;
  half.source = 1;
  half.destination = 2;
  half.max_rate_kbps = 1;
  half.scenario_probabilities = {Rational(1, 2), Rational(1, 2)};
  CHECK(nominal_scenario(half, physics_with_rate(1)) == 1);
}

TEST_CASE("scenario bookkeeping") {
  PhysicsParams p;
  std::vector<ChainRequest> requests{uniform_request(1, 1, 2, 2),
                                     uniform_request(2, 2, 1, 4)};
  ScenarioSet s{requests, p};
  CHECK(s.shared_scenario_count() == 5);
  CHECK(s.joint_scenario_count() == 15);
  CHECK(s.nominal() == std::vector<int>{1, 2});
}

TEST_CASE("request validation") {
  ChainRequest bad = uniform_request(1, 1, 2, 1);
  bad.scenario_probabilities[0] = Rational(1, 3);
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("sum"),
                       std::invalid_argument);
  bad.scenario_probabilities = {Rational(1)};
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("0..max_rate"),
                       std::invalid_argument);
}

TEST_CASE("request file parsing") {
  Topology t{3, {Link{1, 2, 1000, 5, 5}, Link{2, 3, 1000, 5, 5}}};
  std::istringstream good{
      "# two requests\n"
      "1 1 2 4\n"
      "2 2 3 0 dist=uniform\n"};
  auto reqs = parse_requests(good, "<test>", t);
  REQUIRE(reqs.size() == 2);
  CHECK(reqs[0].max_rate_kbps == 4);
  CHECK(reqs[1].probability(0) == Rational(1));

  std::istringstream bad_dist{"1 1 2 4 dist=normal\n"};
  CHECK_THROWS_WITH_AS(parse_requests(bad_dist, "<t>", t),
                       doctest::Contains("unsupported distribution"),
                       std::runtime_error);
  std::istringstream dup{"1 1 2 4\n1 2 3 1\n"};
  CHECK_THROWS_WITH_AS(parse_requests(dup, "<t>", t),
                       doctest::Contains("duplicate request id"),
                       std::invalid_argument);
  std::istringstream loop{"1 2 2 4\n"};
  CHECK_THROWS(parse_requests(loop, "<t>", t));
  std::istringstream outside{"1 1 9 4\n"};
  CHECK_THROWS_WITH_AS(parse_requests(outside, "<t>", t),
                       doctest::Contains("endpoint"), std::invalid_argument);
}

TEST_CASE("physics validation") {
  PhysicsParams p = PhysicsParams::from_spacing_km(Rational(160));
  CHECK(p.spacing_tenth_km == 1600);
  CHECK(PhysicsParams::from_receiver_offset_km(Rational(80)).spacing_tenth_km ==
        1600);
  CHECK(p.receiver_offset_km() == Rational(80));
  CHECK_THROWS(PhysicsParams::from_spacing_km(Rational(0)));
  PhysicsParams bad;
  bad.max_rate_at_spacing_kbps = 0;
  CHECK_THROWS(bad.validate());
}
