#ifndef QKDPLAN_DEMAND_HPP
#define QKDPLAN_DEMAND_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qkdplan/rational.hpp"
#include "qkdplan/topology.hpp"

namespace qkdplan {

// Physical-layer constants for sizing QKD hardware along a route.
//
// spacing_tenth_km is the transmitter-to-transmitter distance (twice the
// receiver offset); max_rate_at_spacing_kbps is the secret-key rate one
// parallel QKD chain delivers at that spacing. A "parallel chain" occupies
// qkd_wavelengths_per_chain wavelengths on every QKD link of the route and
// km_wavelengths_per_chain on every key-manager link.
struct PhysicsParams {
  std::int64_t spacing_tenth_km = 1600;        // 160 km
  std::int64_t max_rate_at_spacing_kbps = 1;   // keeps chains == kbps
  int qkd_wavelengths_per_chain = 3;
  int km_wavelengths_per_chain = 1;

  static PhysicsParams from_spacing_km(const Rational& d_km);
  static PhysicsParams from_receiver_offset_km(const Rational& theta_km);

  Rational spacing_km() const { return Rational(spacing_tenth_km, 10); }
  Rational receiver_offset_km() const { return Rational(spacing_tenth_km, 20); }

  void validate() const;
};

// A source-destination security demand with a discrete distribution over
// integer secret-key rates 0..max_rate_kbps.
struct ChainRequest {
  int id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  int max_rate_kbps = 0;
  std::vector<Rational> scenario_probabilities;  // index = rate, size K+1

  int scenario_count() const { return max_rate_kbps + 1; }
  const Rational& probability(int rate) const {
    return scenario_probabilities.at(static_cast<std::size_t>(rate));
  }
  void validate() const;
};

// Number of parallel QKD chains needed to carry `kappa_kbps`.
std::int64_t parallel_links(std::int64_t kappa_kbps, const PhysicsParams& physics);

// Uniform distribution over rates 0..max_rate_kbps.
ChainRequest uniform_request(int id, NodeId source, NodeId destination,
                             int max_rate_kbps);

// All probability mass on max_rate_kbps; lower rates stay in the scenario
// set with probability zero.
ChainRequest point_request(int id, NodeId source, NodeId destination,
                           int rate_kbps);

// Exact expectation of parallel_links over the request's scenario set.
Rational expected_parallel_links(const ChainRequest& r, const PhysicsParams& physics);

// The scenario whose chain count equals the rounded expectation
// (ties up); smallest such rate. Used as the nominal scenario for
// first-stage coefficients.
int nominal_scenario(const ChainRequest& r, const PhysicsParams& physics);

// Derived per-request-set scenario bookkeeping. Demands are mutually
// independent across requests, so the joint space is the product of the
// per-request sets.
class ScenarioSet {
 public:
  ScenarioSet(const std::vector<ChainRequest>& requests, const PhysicsParams& physics);

  int shared_scenario_count() const { return shared_count_; }  // max K + 1
  const std::vector<int>& nominal() const { return nominal_; }

  // |product of per-request scenario sets|; throws on overflow past 2^63.
  std::int64_t joint_scenario_count() const;

 private:
  std::vector<int> sizes_;
  std::vector<int> nominal_;
  int shared_count_ = 1;
};

// One request per line: `id source destination max_rate [dist=uniform]`.
std::vector<ChainRequest> load_requests(const std::string& path, const Topology& t);
std::vector<ChainRequest> parse_requests(std::istream& in, const std::string& origin,
                                         const Topology& t);

void validate_requests(const std::vector<ChainRequest>& requests, const Topology& t);

}  // namespace qkdplan

#endif
