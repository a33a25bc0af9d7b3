#include "qkdplan/instancegen.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qkdplan/rng.hpp"

namespace qkdplan {

TinyInstance random_tiny_instance(std::mt19937_64& rng) {
  const int n = 2 + static_cast<int>(uniform_below(rng, 4));  // 2..5 nodes

  std::set<std::pair<NodeId, NodeId>> pairs;
  std::vector<Link> links;
  auto add_link = [&](NodeId a, NodeId b) {
    if (a == b || !pairs.insert({a, b}).second) return;
    Link l;
    l.tail = a;
    l.head = b;
    l.length_tenth_km = 50 + static_cast<std::int64_t>(uniform_below(rng, 4951));
    l.qkd_capacity = static_cast<int>(uniform_below(rng, 7));   // 0..6
    l.km_capacity = static_cast<int>(uniform_below(rng, 4));    // 0..3
    links.push_back(l);
  };

  // Usually seed a random directed spanning path so requests tend to be
  // routable; one in five instances skips it and may be disconnected.
  if (uniform_below(rng, 5) != 0) {
    std::vector<NodeId> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    shuffle_prefix(perm, perm.size(), rng);
    for (int i = 0; i + 1 < n; ++i) add_link(perm[i], perm[i + 1]);
  }
  for (NodeId a = 1; a <= n; ++a)
    for (NodeId b = 1; b <= n; ++b)
      if (a != b && uniform_below(rng, 100) < 35) add_link(a, b);

  TinyInstance inst{Topology(n, std::move(links)), {}, {}, {}, {}, 6};

  inst.physics.spacing_tenth_km =
      std::vector<std::int64_t>{1000, 1600, 2500}[uniform_below(rng, 3)];
  inst.physics.max_rate_at_spacing_kbps = 1 + static_cast<std::int64_t>(uniform_below(rng, 3));

  const int request_count = n >= 2 ? 1 + static_cast<int>(uniform_below(rng, 2)) : 0;
  for (int f = 0; f < request_count; ++f) {
    NodeId s = 1 + static_cast<NodeId>(uniform_below(rng, n));
    NodeId d = 1 + static_cast<NodeId>(uniform_below(rng, n));
    while (d == s) d = 1 + static_cast<NodeId>(uniform_below(rng, n));
    int k = static_cast<int>(uniform_below(rng, 3));  // 0..2
    ChainRequest r;
    r.id = f + 1;
    r.source = s;
    r.destination = d;
    r.max_rate_kbps = k;
    std::vector<std::int64_t> weights(k + 1);
    std::int64_t sum = 0;
    for (auto& w : weights) {
      w = static_cast<std::int64_t>(uniform_below(rng, 5));
      sum += w;
    }
    if (sum == 0) {
      weights[uniform_below(rng, weights.size())] = 1;
      sum = 1;
    }
    for (int w = 0; w <= k; ++w)
      r.scenario_probabilities.push_back(Rational(weights[w], sum));
    r.validate();
    inst.requests.push_back(std::move(r));
  }

  if (uniform_below(rng, 2) == 0) {
    // Randomized prices; on-demand stays at least as expensive as
    // utilization per the table invariant.
    for (Component c : kAllComponents) {
      Rational res{static_cast<std::int64_t>(uniform_below(rng, 21))};
      Rational use{static_cast<std::int64_t>(uniform_below(rng, 21))};
      Rational od = use + Rational(static_cast<std::int64_t>(uniform_below(rng, 21)));
      inst.cost_table.set_price(Phase::kReservation, c, res);
      inst.cost_table.set_price(Phase::kUtilization, c, use);
      inst.cost_table.set_price(Phase::kOnDemand, c, od);
    }
  }

  if (uniform_below(rng, 2) == 0)
    for (NodeId node = 1; node <= n; ++node)
      inst.options.node_energy[node] =
          Rational(static_cast<std::int64_t>(uniform_below(rng, 101)));

  return inst;
}

std::vector<ChainRequest> sample_uniform_requests(const Topology& t, int count,
                                                  int rate_min, int rate_max,
                                                  std::mt19937_64& rng) {
  if (rate_min < 0 || rate_max < rate_min)
    throw std::invalid_argument("bad secret-key-rate range");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 1; a <= t.node_count(); ++a)
    for (NodeId b = 1; b <= t.node_count(); ++b)
      if (a != b) pairs.emplace_back(a, b);
  if (count > static_cast<int>(pairs.size()))
    throw std::invalid_argument("more requests than ordered node pairs");
  shuffle_prefix(pairs, static_cast<std::size_t>(count), rng);
  std::vector<ChainRequest> requests;
  for (int f = 0; f < count; ++f) {
    int k = rate_min +
            static_cast<int>(uniform_below(
                rng, static_cast<std::uint64_t>(rate_max - rate_min) + 1));
    requests.push_back(
        uniform_request(f + 1, pairs[f].first, pairs[f].second, k));
  }
  return requests;
}

}  // namespace qkdplan
