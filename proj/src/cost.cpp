#include "qkdplan/cost.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qkdplan {

const char* component_name(Component c) {
  switch (c) {
    case Component::kTx: return "tx";
    case Component::kRx: return "rx";
    case Component::kKm: return "km";
    case Component::kSi: return "si";
    case Component::kMd: return "md";
    case Component::kCh: return "ch";
  }
  return "?";
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::kReservation: return "reservation";
    case Phase::kUtilization: return "utilization";
    case Phase::kOnDemand: return "on_demand";
  }
  return "?";
}

CostTable::CostTable() {
  auto set = [this](Phase p, Component c, std::int64_t v) {
    prices_[static_cast<int>(p)][static_cast<int>(c)] = Rational(v);
  };
  // Reservation and utilization share unit prices; on-demand is the
  // expensive tier.
  for (Phase p : {Phase::kReservation, Phase::kUtilization}) {
    set(p, Component::kTx, 1500);
    set(p, Component::kRx, 2250);
    set(p, Component::kKm, 1200);
    set(p, Component::kSi, 150);
    set(p, Component::kMd, 300);
    set(p, Component::kCh, 1);
  }
  set(Phase::kOnDemand, Component::kTx, 6000);
  set(Phase::kOnDemand, Component::kRx, 9000);
  set(Phase::kOnDemand, Component::kKm, 3000);
  set(Phase::kOnDemand, Component::kSi, 500);
  set(Phase::kOnDemand, Component::kMd, 900);
  set(Phase::kOnDemand, Component::kCh, 4);
}

void CostTable::set_price(Phase p, Component c, Rational value) {
  prices_[static_cast<int>(p)][static_cast<int>(c)] = std::move(value);
}

void CostTable::validate() const {
  for (Component c : kAllComponents) {
    for (Phase p : kAllPhases)
      if (price(p, c) < Rational(0))
        throw std::invalid_argument(std::string("negative price for ") +
                                    component_name(c));
    if (price(Phase::kOnDemand, c) < price(Phase::kUtilization, c))
      throw std::invalid_argument(
          std::string("on-demand price below utilization price for ") +
          component_name(c));
  }
}

CostTable CostTable::scaled(const Rational& factor) const {
  CostTable t = *this;
  for (Phase p : kAllPhases)
    for (Component c : kAllComponents)
      t.set_price(p, c, price(p, c) * factor);
  return t;
}

CostTable parse_cost_table(std::istream& in, const std::string& origin) {
  CostTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv{line};
    auto hash = sv.find('#');
    if (hash != std::string_view::npos) sv = sv.substr(0, hash);
    std::string cleaned{sv};
    for (char& c : cleaned)
      if (c == '=') c = ' ';
    std::istringstream ls{cleaned};
    std::string key, value;
    if (!(ls >> key)) continue;
    if (!(ls >> value))
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": missing value for " + key);
    if (key.rfind("beta_", 0) != 0 || key.size() < 8)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": unknown key " + key);
    Phase phase;
    switch (key[5]) {
      case 'r': phase = Phase::kReservation; break;
      case 'e': phase = Phase::kUtilization; break;
      case 'o': phase = Phase::kOnDemand; break;
      default:
        throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                 ": unknown key " + key);
    }
    std::string comp = key.substr(7);
    bool found = false;
    for (Component c : kAllComponents) {
      if (comp == component_name(c)) {
        try {
          table.set_price(phase, c, Rational::from_decimal_string(value));
        } catch (const std::exception& e) {
          throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " +
                                   e.what());
        }
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": unknown key " + key);
  }
  try {
    table.validate();
  } catch (const std::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  return table;
}

CostTable load_cost_table(const std::string& path) {
  std::ifstream in{path};
  if (!in) throw std::runtime_error("cannot open cost table " + path);
  return parse_cost_table(in, path);
}

ComponentCounts& ComponentCounts::operator+=(const ComponentCounts& o) {
  tx += o.tx;
  rx += o.rx;
  km += o.km;
  si += o.si;
  md += o.md;
  ch += o.ch;
  return *this;
}

std::int64_t segments(std::int64_t e_tenth_km, std::int64_t spacing_tenth_km) {
  if (e_tenth_km <= 0 || spacing_tenth_km <= 0)
    throw std::invalid_argument("segments: lengths must be positive");
  return ceil_div_clamped(e_tenth_km, spacing_tenth_km);
}

ComponentCounts link_component_counts(const Link& link, std::int64_t chains,
                                      const PhysicsParams& physics) {
  if (chains < 0) throw std::invalid_argument("negative chain count");
  const std::int64_t d = physics.spacing_tenth_km;
  const std::int64_t e = link.length_tenth_km;
  const std::int64_t s = segments(e, d);
  ComponentCounts c;
  c.tx = 2 * chains * s;
  c.rx = chains * s;
  c.km = ceil_div_clamped(e + d, d);       // ceil(e/D + 1)
  c.si = ceil_div_clamped(e - d, d);       // ceil(e/D - 1), floored at 0
  c.md = s + c.si;
  c.ch = Rational(3 * chains + 1) * link.length_km();
  return c;
}

ComponentCounts component_counts(const std::vector<Link>& route, std::int64_t chains,
                                 const PhysicsParams& physics) {
  ComponentCounts total;
  for (std::size_t i = 0; i < route.size(); ++i) {
    if (i > 0 && route[i].tail != route[i - 1].head)
      throw std::invalid_argument("route is not a connected directed path");
    total += link_component_counts(route[i], chains, physics);
  }
  // Reject repeated nodes; component formulas assume a simple path.
  std::vector<NodeId> seen;
  for (std::size_t i = 0; i < route.size(); ++i) {
    seen.push_back(route[i].tail);
    if (i + 1 == route.size()) seen.push_back(route[i].head);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("route revisits a node");
  return total;
}

Rational phase_cost(const ComponentCounts& counts, const CostTable& table, Phase phase) {
  Rational total;
  total += Rational(counts.tx) * table.price(phase, Component::kTx);
  total += Rational(counts.rx) * table.price(phase, Component::kRx);
  total += Rational(counts.km) * table.price(phase, Component::kKm);
  total += Rational(counts.si) * table.price(phase, Component::kSi);
  total += Rational(counts.md) * table.price(phase, Component::kMd);
  total += counts.ch * table.price(phase, Component::kCh);
  return total;
}

}  // namespace qkdplan
