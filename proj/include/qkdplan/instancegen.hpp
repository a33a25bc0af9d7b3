#ifndef QKDPLAN_INSTANCEGEN_HPP
#define QKDPLAN_INSTANCEGEN_HPP

#include <random>

#include "qkdplan/program.hpp"

namespace qkdplan {

// Seeded generator of tiny instances (<= 5 nodes, <= 2 requests, rates
// <= 2) sized for the exhaustive reference optimum. Covers binding and
// slack capacities, skewed probabilities, node energy weights and scaled
// price tables; some instances are deliberately disconnected.
struct TinyInstance {
  Topology topology;
  std::vector<ChainRequest> requests;
  PhysicsParams physics;
  CostTable cost_table;
  BuildOptions options;
  int oracle_bound = 6;
};

TinyInstance random_tiny_instance(std::mt19937_64& rng);

// Endpoint pairs drawn uniformly without replacement over ordered node
// pairs, with uniform demand distributions over [rate_min, rate_max]-drawn
// maxima. Request ids are 1..count.
std::vector<ChainRequest> sample_uniform_requests(const Topology& t, int count,
                                                  int rate_min, int rate_max,
                                                  std::mt19937_64& rng);

}  // namespace qkdplan

#endif
