#ifndef QKDPLAN_COST_HPP
#define QKDPLAN_COST_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qkdplan/demand.hpp"
#include "qkdplan/rational.hpp"
#include "qkdplan/topology.hpp"

namespace qkdplan {

enum class Phase { kReservation = 0, kUtilization = 1, kOnDemand = 2 };
inline constexpr std::array<Phase, 3> kAllPhases = {
    Phase::kReservation, Phase::kUtilization, Phase::kOnDemand};

enum class Component { kTx = 0, kRx, kKm, kSi, kMd, kCh };
inline constexpr std::array<Component, 6> kAllComponents = {
    Component::kTx, Component::kRx, Component::kKm,
    Component::kSi, Component::kMd, Component::kCh};

const char* component_name(Component c);
const char* phase_name(Phase p);

// Unit prices per component and phase. `ch` is priced per km of occupied
// wavelength, the rest per hardware unit.
class CostTable {
 public:
  CostTable();  // reference prices

  const Rational& price(Phase p, Component c) const {
    return prices_[static_cast<int>(p)][static_cast<int>(c)];
  }
  void set_price(Phase p, Component c, Rational value);

  // On-demand must not undercut utilization, otherwise reserving can never
  // pay off and the two-stage trade-off degenerates.
  void validate() const;

  CostTable scaled(const Rational& factor) const;

 private:
  std::array<std::array<Rational, 6>, 3> prices_;
};

// Cost-table file: `beta_{r|e|o}_{tx|rx|km|si|md|ch} = value` lines; keys
// not present keep the reference defaults.
CostTable load_cost_table(const std::string& path);
CostTable parse_cost_table(std::istream& in, const std::string& origin);

// Hardware and channel totals for one route carrying `chains` parallel QKD
// chains on every link.
struct ComponentCounts {
  std::int64_t tx = 0;
  std::int64_t rx = 0;
  std::int64_t km = 0;
  std::int64_t si = 0;
  std::int64_t md = 0;
  Rational ch;  // km * wavelengths

  ComponentCounts& operator+=(const ComponentCounts& o);
  friend ComponentCounts operator+(ComponentCounts a, const ComponentCounts& b) {
    a += b;
    return a;
  }
  friend bool operator==(const ComponentCounts&, const ComponentCounts&) = default;
};

// Relay segments on a link of length e at transmitter spacing d: ceil(e/d).
std::int64_t segments(std::int64_t e_tenth_km, std::int64_t spacing_tenth_km);

// Per-link counts at `chains` parallel chains, summed over the route.
// Per link with s = ceil(e/D):
//   tx = 2*chains*s, rx = chains*s, km = ceil(e/D + 1),
//   si = max(0, ceil(e/D - 1)), md = s + si, ch = 3*chains*e + e.
// The route must be a simple directed path.
ComponentCounts component_counts(const std::vector<Link>& route, std::int64_t chains,
                                 const PhysicsParams& physics);

ComponentCounts link_component_counts(const Link& link, std::int64_t chains,
                                      const PhysicsParams& physics);

// Plain price-weighted total of the counts under one phase's prices. No
// wavelength weighting here; the program objective applies that separately.
Rational phase_cost(const ComponentCounts& counts, const CostTable& table, Phase phase);

}  // namespace qkdplan

#endif
