#include "qkdplan/demand.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qkdplan {

PhysicsParams PhysicsParams::from_spacing_km(const Rational& d_km) {
  PhysicsParams p;
  Rational tenths = d_km * Rational(10);
  if (!tenths.is_integer())
    throw std::invalid_argument("spacing must be a multiple of 0.1 km");
  p.spacing_tenth_km = tenths.num();
  p.validate();
  return p;
}

PhysicsParams PhysicsParams::from_receiver_offset_km(const Rational& theta_km) {
  return from_spacing_km(theta_km * Rational(2));
}

void PhysicsParams::validate() const {
  if (spacing_tenth_km <= 0)
    throw std::invalid_argument("transmitter spacing must be positive");
  if (max_rate_at_spacing_kbps <= 0)
    throw std::invalid_argument("max rate at spacing must be positive");
  if (qkd_wavelengths_per_chain <= 0 || km_wavelengths_per_chain <= 0)
    throw std::invalid_argument("wavelengths per chain must be positive");
}

void ChainRequest::validate() const {
  if (source == destination)
    throw std::invalid_argument("request " + std::to_string(id) +
                                ": source equals destination");
  if (max_rate_kbps < 0)
    throw std::invalid_argument("request " + std::to_string(id) +
                                ": negative max rate");
  if (static_cast<int>(scenario_probabilities.size()) != max_rate_kbps + 1)
    throw std::invalid_argument("request " + std::to_string(id) +
                                ": scenario set must be exactly 0..max_rate");
  Rational sum;
  for (const Rational& p : scenario_probabilities) {
    if (p < Rational(0))
      throw std::invalid_argument("request " + std::to_string(id) +
                                  ": negative probability");
    sum += p;
  }
  if (sum != Rational(1))
    throw std::invalid_argument("request " + std::to_string(id) +
                                ": probabilities sum to " +
                                sum.to_fraction_string() + ", not 1");
}

std::int64_t parallel_links(std::int64_t kappa_kbps, const PhysicsParams& physics) {
  if (kappa_kbps < 0) throw std::invalid_argument("negative secret-key rate");
  return ceil_div_clamped(kappa_kbps, physics.max_rate_at_spacing_kbps);
}

ChainRequest uniform_request(int id, NodeId source, NodeId destination,
                             int max_rate_kbps) {
  ChainRequest r;
  r.id = id;
  r.source = source;
  r.destination = destination;
  r.max_rate_kbps = max_rate_kbps;
  r.scenario_probabilities.assign(static_cast<std::size_t>(max_rate_kbps) + 1,
                                  Rational(1, max_rate_kbps + 1));
  r.validate();
  return r;
}

ChainRequest point_request(int id, NodeId source, NodeId destination,
                           int rate_kbps) {
  ChainRequest r;
  r.id = id;
  r.source = source;
  r.destination = destination;
  r.max_rate_kbps = rate_kbps;
  r.scenario_probabilities.assign(static_cast<std::size_t>(rate_kbps) + 1,
                                  Rational(0));
  r.scenario_probabilities.back() = Rational(1);
  r.validate();
  return r;
}

Rational expected_parallel_links(const ChainRequest& r, const PhysicsParams& physics) {
  Rational sum;
  for (int rate = 0; rate <= r.max_rate_kbps; ++rate)
    sum += r.probability(rate) * Rational(parallel_links(rate, physics));
  return sum;
}

int nominal_scenario(const ChainRequest& r, const PhysicsParams& physics) {
  std::int64_t target = expected_parallel_links(r, physics).round_half_up();
  for (int rate = 0; rate <= r.max_rate_kbps; ++rate)
    if (parallel_links(rate, physics) == target) return rate;
  // The expectation rounds into [min chains, max chains] and the ceiling
  // walks through every integer in between, so this is unreachable.
  throw std::logic_error("nominal scenario not found");
}

ScenarioSet::ScenarioSet(const std::vector<ChainRequest>& requests,
                         const PhysicsParams& physics) {
  for (const ChainRequest& r : requests) {
    sizes_.push_back(r.scenario_count());
    nominal_.push_back(nominal_scenario(r, physics));
    shared_count_ = std::max(shared_count_, r.scenario_count());
  }
}

std::int64_t ScenarioSet::joint_scenario_count() const {
  __int128 prod = 1;
  for (int s : sizes_) {
    prod *= s;
    if (prod > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("joint scenario space exceeds 2^63");
  }
  return static_cast<std::int64_t>(prod);
}

std::vector<ChainRequest> parse_requests(std::istream& in, const std::string& origin,
                                         const Topology& t) {
  std::vector<ChainRequest> requests;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv{line};
    auto hash = sv.find('#');
    if (hash != std::string_view::npos) sv = sv.substr(0, hash);
    std::istringstream ls{std::string(sv)};
    int id, s, d, k;
    if (!(ls >> id)) continue;
    if (!(ls >> s >> d >> k))
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected `id source destination max_rate`");
    std::string dist = "uniform";
    std::string tok;
    if (ls >> tok) {
      if (tok.rfind("dist=", 0) != 0)
        throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                 ": unexpected field '" + tok + "'");
      dist = tok.substr(5);
    }
    if (dist != "uniform")
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": unsupported distribution '" + dist + "'");
    try {
      requests.push_back(uniform_request(id, s, d, k));
    } catch (const std::exception& e) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
  validate_requests(requests, t);
  return requests;
}

std::vector<ChainRequest> load_requests(const std::string& path, const Topology& t) {
  std::ifstream in{path};
  if (!in) throw std::runtime_error("cannot open request file " + path);
  return parse_requests(in, path, t);
}

void validate_requests(const std::vector<ChainRequest>& requests, const Topology& t) {
  std::set<int> ids;
  for (const ChainRequest& r : requests) {
    r.validate();
    if (!ids.insert(r.id).second)
      throw std::invalid_argument("duplicate request id " + std::to_string(r.id));
    if (!t.has_node(r.source) || !t.has_node(r.destination))
      throw std::invalid_argument("request " + std::to_string(r.id) +
                                  ": endpoint not in topology");
  }
}

}  // namespace qkdplan
