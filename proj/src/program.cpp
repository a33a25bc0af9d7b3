#include "qkdplan/program.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qkdplan {

namespace {

const char* var_prefix(VarKind kind) {
  switch (kind) {
    case VarKind::kRoute: return "x";
    case VarKind::kReserveQkd: return "yr";
    case VarKind::kReserveKm: return "zr";
    case VarKind::kUtilizeQkd: return "ye";
    case VarKind::kUtilizeKm: return "ze";
    case VarKind::kOnDemandQkd: return "yo";
    case VarKind::kOnDemandKm: return "zo";
  }
  return "?";
}

bool scenario_free(VarKind kind) {
  return kind == VarKind::kRoute || kind == VarKind::kReserveQkd ||
         kind == VarKind::kReserveKm;
}

}  // namespace

DeterministicProgram::DeterministicProgram(Topology topology,
                                           std::vector<ChainRequest> requests,
                                           CostTable cost_table,
                                           PhysicsParams physics,
                                           BuildOptions options)
    : topology_(std::move(topology)),
      requests_(std::move(requests)),
      cost_table_(std::move(cost_table)),
      physics_(physics),
      options_(std::move(options)) {
  physics_.validate();
  cost_table_.validate();
  validate_requests(requests_, topology_);
  for (const auto& [node, value] : options_.node_energy)
    if (!topology_.has_node(node))
      throw std::invalid_argument("energy weight for unknown node " +
                                  std::to_string(node));

  scenario_offset_.assign(requests_.size() + 1, 0);
  for (std::size_t f = 0; f < requests_.size(); ++f) {
    scenario_offset_[f + 1] = scenario_offset_[f] + requests_[f].scenario_count();
    shared_scenarios_ = std::max(shared_scenarios_, requests_[f].scenario_count());
    nominal_.push_back(nominal_scenario(requests_[f], physics_));
  }
  if (requests_.empty()) shared_scenarios_ = 0;

  // Per-link, per-phase price of one wavelength.
  const int qkd_wl = physics_.qkd_wavelengths_per_chain;
  for (const Link& l : topology_.links()) {
    const std::int64_t s = segments(l.length_tenth_km, physics_.spacing_tenth_km);
    ComponentCounts unit = link_component_counts(l, 1, physics_);
    LinkWavelengthPrice price;
    for (Phase phase : kAllPhases) {
      const int p = static_cast<int>(phase);
      price.qkd_tx[p] =
          Rational(2 * s) * cost_table_.price(phase, Component::kTx) / Rational(qkd_wl);
      price.qkd_rx[p] =
          Rational(s) * cost_table_.price(phase, Component::kRx) / Rational(qkd_wl);
      price.qkd_ch[p] = l.length_km() * cost_table_.price(phase, Component::kCh);
      price.qkd_total[p] = price.qkd_tx[p] + price.qkd_rx[p] + price.qkd_ch[p];
      price.km_km[p] = Rational(unit.km) * cost_table_.price(phase, Component::kKm);
      price.km_si[p] = Rational(unit.si) * cost_table_.price(phase, Component::kSi);
      price.km_md[p] = Rational(unit.md) * cost_table_.price(phase, Component::kMd);
      price.km_ch[p] = l.length_km() * cost_table_.price(phase, Component::kCh);
      price.km_total[p] =
          price.km_km[p] + price.km_si[p] + price.km_md[p] + price.km_ch[p];
    }
    link_prices_.push_back(std::move(price));
  }

  index_variables();
  build_constraints();
  build_objective();
}

void DeterministicProgram::index_variables() {
  const std::size_t L = topology_.links().size();
  auto name_of = [&](VarKind kind, int link, int request, int scenario) {
    const Link& l = topology_.links()[link];
    std::string n = std::string(var_prefix(kind)) + "_" + std::to_string(l.tail) +
                    "_" + std::to_string(l.head) + "_" +
                    std::to_string(requests_[request].id);
    if (!scenario_free(kind)) n += "_" + std::to_string(scenario);
    return n;
  };
  auto push = [&](VarKind kind, int link, int request, int scenario) {
    Variable v;
    v.name = name_of(kind, link, request, scenario);
    v.binary = kind == VarKind::kRoute;
    v.kind = kind;
    v.link = link;
    v.request = request;
    v.scenario = scenario;
    variables_.push_back(std::move(v));
  };
  for (VarKind kind : {VarKind::kRoute, VarKind::kReserveQkd, VarKind::kReserveKm})
    for (std::size_t f = 0; f < requests_.size(); ++f)
      for (std::size_t l = 0; l < L; ++l)
        push(kind, static_cast<int>(l), static_cast<int>(f), -1);
  for (VarKind kind : {VarKind::kUtilizeQkd, VarKind::kUtilizeKm,
                       VarKind::kOnDemandQkd, VarKind::kOnDemandKm})
    for (std::size_t f = 0; f < requests_.size(); ++f)
      for (int w = 0; w < requests_[f].scenario_count(); ++w)
        for (std::size_t l = 0; l < L; ++l)
          push(kind, static_cast<int>(l), static_cast<int>(f), w);
}

int DeterministicProgram::var_index(VarKind kind, int link, int request,
                                    int scenario) const {
  const std::int64_t L = static_cast<std::int64_t>(topology_.links().size());
  const std::int64_t F = static_cast<std::int64_t>(requests_.size());
  if (link < 0 || link >= L || request < 0 || request >= F)
    throw std::out_of_range("var_index: bad link or request");
  switch (kind) {
    case VarKind::kRoute: return static_cast<int>(request * L + link);
    case VarKind::kReserveQkd: return static_cast<int>(F * L + request * L + link);
    case VarKind::kReserveKm: return static_cast<int>(2 * F * L + request * L + link);
    default: break;
  }
  if (scenario < 0 || scenario >= requests_[request].scenario_count())
    throw std::out_of_range("var_index: bad scenario");
  const std::int64_t total = scenario_offset_.back();
  const std::int64_t block = scenario_offset_[request] + scenario;
  std::int64_t group;
  switch (kind) {
    case VarKind::kUtilizeQkd: group = 0; break;
    case VarKind::kUtilizeKm: group = 1; break;
    case VarKind::kOnDemandQkd: group = 2; break;
    case VarKind::kOnDemandKm: group = 3; break;
    default: throw std::logic_error("var_index: bad kind");
  }
  return static_cast<int>(3 * F * L + group * total * L + block * L + link);
}

std::int64_t DeterministicProgram::qkd_demand([[maybe_unused]] int request,
                                              int rate) const {
  return parallel_links(rate, physics_) * physics_.qkd_wavelengths_per_chain;
}

std::int64_t DeterministicProgram::km_demand([[maybe_unused]] int request,
                                             int rate) const {
  return parallel_links(rate, physics_) * physics_.km_wavelengths_per_chain;
}

std::int64_t DeterministicProgram::qkd_demand_rhs(int request, int rate) const {
  if (options_.demand_form == DemandForm::kPerScenario)
    return qkd_demand(request, rate);
  std::int64_t sum = 0;
  for (int w = 0; w < requests_[request].scenario_count(); ++w)
    sum += qkd_demand(request, w);
  return sum;
}

std::int64_t DeterministicProgram::km_demand_rhs(int request, int rate) const {
  if (options_.demand_form == DemandForm::kPerScenario)
    return km_demand(request, rate);
  std::int64_t sum = 0;
  for (int w = 0; w < requests_[request].scenario_count(); ++w)
    sum += km_demand(request, w);
  return sum;
}

const Rational& DeterministicProgram::node_energy(NodeId n) const {
  auto it = options_.node_energy.find(n);
  return it == options_.node_energy.end() ? zero_ : it->second;
}

void DeterministicProgram::build_constraints() {
  const auto& links = topology_.links();
  const int L = static_cast<int>(links.size());
  const int F = static_cast<int>(requests_.size());

  auto add = [&](std::string tag, std::vector<LinearTerm> terms, Sense sense,
                 Rational rhs) {
    constraints_.push_back(
        Constraint{std::move(tag), std::move(terms), sense, std::move(rhs)});
  };

  // Route-flow structure, one block per request.
  for (int f = 0; f < F; ++f) {
    const ChainRequest& r = requests_[f];
    std::vector<LinearTerm> src;
    for (int idx : topology_.out_links(r.source))
      src.push_back({var_index(VarKind::kRoute, idx, f), Rational(1)});
    for (int idx : topology_.in_links(r.source))
      src.push_back({var_index(VarKind::kRoute, idx, f), Rational(-1)});
    add("flow-source", std::move(src), Sense::kEq, Rational(1));
  }
  for (int f = 0; f < F; ++f) {
    const ChainRequest& r = requests_[f];
    std::vector<LinearTerm> dst;
    for (int idx : topology_.in_links(r.destination))
      dst.push_back({var_index(VarKind::kRoute, idx, f), Rational(1)});
    for (int idx : topology_.out_links(r.destination))
      dst.push_back({var_index(VarKind::kRoute, idx, f), Rational(-1)});
    add("flow-dest", std::move(dst), Sense::kEq, Rational(1));
  }
  for (int f = 0; f < F; ++f) {
    const ChainRequest& r = requests_[f];
    for (NodeId n = 1; n <= topology_.node_count(); ++n) {
      if (n == r.source || n == r.destination) continue;
      std::vector<LinearTerm> terms;
      for (int idx : topology_.out_links(n))
        terms.push_back({var_index(VarKind::kRoute, idx, f), Rational(1)});
      for (int idx : topology_.in_links(n))
        terms.push_back({var_index(VarKind::kRoute, idx, f), Rational(-1)});
      add("flow-transit", std::move(terms), Sense::kEq, Rational(0));
    }
  }
  for (int f = 0; f < F; ++f)
    for (NodeId n = 1; n <= topology_.node_count(); ++n) {
      std::vector<LinearTerm> terms;
      for (int idx : topology_.out_links(n))
        terms.push_back({var_index(VarKind::kRoute, idx, f), Rational(1)});
      add("no-loop", std::move(terms), Sense::kLe, Rational(1));
    }

  // Shared utilized-wavelength capacity.
  if (options_.scenario_policy == ScenarioPolicy::kSharedIndex) {
    for (auto [kind, tag, cap] :
         {std::tuple{VarKind::kUtilizeQkd, "capacity-qkd", &Link::qkd_capacity},
          std::tuple{VarKind::kUtilizeKm, "capacity-km", &Link::km_capacity}}) {
      for (int l = 0; l < L; ++l)
        for (int w = 0; w < shared_scenarios_; ++w) {
          std::vector<LinearTerm> terms;
          for (int f = 0; f < F; ++f) {
            int own = std::min(w, requests_[f].max_rate_kbps);
            terms.push_back({var_index(kind, l, f, own), Rational(1)});
          }
          add(tag, std::move(terms), Sense::kLe, Rational(links[l].*cap));
        }
    }
  } else {
    ScenarioSet scen{requests_, physics_};
    std::int64_t joint = requests_.empty() ? 0 : scen.joint_scenario_count();
    if (joint > options_.joint_scenario_limit)
      throw std::invalid_argument(
          "joint scenario space of size " + std::to_string(joint) +
          " exceeds the configured limit " +
          std::to_string(options_.joint_scenario_limit));
    for (auto [kind, tag, cap] :
         {std::tuple{VarKind::kUtilizeQkd, "capacity-qkd", &Link::qkd_capacity},
          std::tuple{VarKind::kUtilizeKm, "capacity-km", &Link::km_capacity}}) {
      for (int l = 0; l < L; ++l) {
        std::vector<int> tuple(requests_.size(), 0);
        for (std::int64_t J = 0; J < joint; ++J) {
          std::vector<LinearTerm> terms;
          for (int f = 0; f < F; ++f)
            terms.push_back({var_index(kind, l, f, tuple[f]), Rational(1)});
          add(tag, std::move(terms), Sense::kLe, Rational(links[l].*cap));
          for (int f = F - 1; f >= 0; --f) {
            if (++tuple[f] < requests_[f].scenario_count()) break;
            tuple[f] = 0;
          }
        }
      }
    }
  }

  // Utilized <= reserved.
  for (auto [ukind, rkind, tag] :
       {std::tuple{VarKind::kUtilizeQkd, VarKind::kReserveQkd, "couple-qkd"},
        std::tuple{VarKind::kUtilizeKm, VarKind::kReserveKm, "couple-km"}})
    for (int f = 0; f < F; ++f)
      for (int w = 0; w < requests_[f].scenario_count(); ++w)
        for (int l = 0; l < L; ++l)
          add(tag,
              {{var_index(ukind, l, f, w), Rational(1)},
               {var_index(rkind, l, f), Rational(-1)}},
              Sense::kLe, Rational(0));

  // Utilized wavelengths only exist on route links; the bound equals the
  // physical capacity, which keeps the product form and this linear form
  // interchangeable.
  for (auto [ukind, tag, cap] :
       {std::tuple{VarKind::kUtilizeQkd, "linearize-qkd", &Link::qkd_capacity},
        std::tuple{VarKind::kUtilizeKm, "linearize-km", &Link::km_capacity}})
    for (int f = 0; f < F; ++f)
      for (int w = 0; w < requests_[f].scenario_count(); ++w)
        for (int l = 0; l < L; ++l)
          add(tag,
              {{var_index(ukind, l, f, w), Rational(1)},
               {var_index(VarKind::kRoute, l, f), Rational(-(links[l].*cap))}},
              Sense::kLe, Rational(0));

  // Demand cover on route links, per scenario (or the summed audit form).
  for (auto [ukind, okind, tag, qkd] :
       {std::tuple{VarKind::kUtilizeQkd, VarKind::kOnDemandQkd, "demand-qkd", true},
        std::tuple{VarKind::kUtilizeKm, VarKind::kOnDemandKm, "demand-km", false}})
    for (int f = 0; f < F; ++f)
      for (int w = 0; w < requests_[f].scenario_count(); ++w) {
        std::int64_t demand = qkd ? qkd_demand_rhs(f, w) : km_demand_rhs(f, w);
        for (int l = 0; l < L; ++l)
          add(tag,
              {{var_index(ukind, l, f, w), Rational(1)},
               {var_index(okind, l, f, w), Rational(1)},
               {var_index(VarKind::kRoute, l, f), Rational(-demand)}},
              Sense::kGe, Rational(0));
      }

  if (options_.bound_reservations_by_capacity) {
    for (auto [rkind, tag, cap] : {std::tuple{VarKind::kReserveQkd,
                                              "reserve-capacity-qkd",
                                              &Link::qkd_capacity},
                                   std::tuple{VarKind::kReserveKm,
                                              "reserve-capacity-km",
                                              &Link::km_capacity}})
      for (int l = 0; l < L; ++l) {
        std::vector<LinearTerm> terms;
        for (int f = 0; f < F; ++f)
          terms.push_back({var_index(rkind, l, f), Rational(1)});
        add(tag, std::move(terms), Sense::kLe, Rational(links[l].*cap));
      }
  }
}

void DeterministicProgram::build_objective() {
  objective_by_var_.assign(variables_.size(), Rational(0));
  const int L = static_cast<int>(topology_.links().size());
  const int F = static_cast<int>(requests_.size());

  for (int f = 0; f < F; ++f)
    for (int l = 0; l < L; ++l) {
      const Link& link = topology_.links()[l];
      const LinkWavelengthPrice& price = link_prices_[l];
      const Rational& energy = node_energy(link.head);
      if (!energy.is_zero())
        objective_by_var_[var_index(VarKind::kRoute, l, f)] = energy;
      constexpr int kRes = static_cast<int>(Phase::kReservation);
      objective_by_var_[var_index(VarKind::kReserveQkd, l, f)] = price.qkd_total[kRes];
      objective_by_var_[var_index(VarKind::kReserveKm, l, f)] = price.km_total[kRes];
      for (int w = 0; w < requests_[f].scenario_count(); ++w) {
        const Rational& prob = requests_[f].probability(w);
        if (prob.is_zero()) continue;
        constexpr int kUse = static_cast<int>(Phase::kUtilization);
        constexpr int kOd = static_cast<int>(Phase::kOnDemand);
        objective_by_var_[var_index(VarKind::kUtilizeQkd, l, f, w)] =
            prob * price.qkd_total[kUse];
        objective_by_var_[var_index(VarKind::kUtilizeKm, l, f, w)] =
            prob * price.km_total[kUse];
        objective_by_var_[var_index(VarKind::kOnDemandQkd, l, f, w)] =
            prob * price.qkd_total[kOd];
        objective_by_var_[var_index(VarKind::kOnDemandKm, l, f, w)] =
            prob * price.km_total[kOd];
      }
    }
  for (std::size_t v = 0; v < objective_by_var_.size(); ++v)
    if (!objective_by_var_[v].is_zero())
      objective_.push_back({static_cast<int>(v), objective_by_var_[v]});
}

const Rational& DeterministicProgram::objective_coefficient(int var) const {
  return objective_by_var_.at(static_cast<std::size_t>(var));
}

std::size_t DeterministicProgram::count_constraints(const std::string& tag) const {
  std::size_t n = 0;
  for (const Constraint& c : constraints_)
    if (c.tag == tag) ++n;
  return n;
}

Rational DeterministicProgram::evaluate_objective(
    const std::vector<std::int64_t>& assignment) const {
  if (assignment.size() != variables_.size())
    throw std::invalid_argument("assignment size mismatch");
  Rational total;
  for (const LinearTerm& t : objective_)
    if (assignment[t.var] != 0) total += t.coeff * Rational(assignment[t.var]);
  return total;
}

std::string DeterministicProgram::check_assignment(
    const std::vector<std::int64_t>& assignment) const {
  if (assignment.size() != variables_.size())
    throw std::invalid_argument("assignment size mismatch");
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    if (assignment[v] < 0) return "negative value for " + variables_[v].name;
    if (variables_[v].binary && assignment[v] > 1)
      return "non-binary value for " + variables_[v].name;
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const Constraint& c = constraints_[i];
    Rational lhs;
    for (const LinearTerm& t : c.terms)
      if (assignment[t.var] != 0) lhs += t.coeff * Rational(assignment[t.var]);
    bool ok = c.sense == Sense::kLe   ? lhs <= c.rhs
              : c.sense == Sense::kGe ? lhs >= c.rhs
                                      : lhs == c.rhs;
    if (!ok) return c.tag + "[" + std::to_string(i) + "]";
  }
  return {};
}

DeterministicProgram build(Topology topology, std::vector<ChainRequest> requests,
                           CostTable cost_table, PhysicsParams physics,
                           BuildOptions options) {
  return DeterministicProgram(std::move(topology), std::move(requests),
                              std::move(cost_table), physics, std::move(options));
}

namespace {

// LP coefficients are decimal text; rationals with non-terminating decimal
// expansions are emitted at 12 fractional digits, which is far inside the
// 1e-6 cross-check tolerance.
std::string lp_number(const Rational& r) {
  if (r.is_integer()) return std::to_string(r.num());
  std::string s = r.to_fixed_string(12);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

void write_terms(std::ostream& out, const DeterministicProgram& p,
                 const std::vector<LinearTerm>& terms) {
  bool first = true;
  for (const LinearTerm& t : terms) {
    Rational c = t.coeff;
    if (c.is_zero()) continue;
    bool neg = c < Rational(0);
    if (neg) c = -c;
    out << (first ? (neg ? "- " : "") : (neg ? " - " : " + "));
    out << lp_number(c) << " " << p.variables()[t.var].name;
    first = false;
  }
  if (first) out << "0 dummy_zero";
}

}  // namespace

void export_lp(const DeterministicProgram& p, std::ostream& out) {
  std::set<std::string> names;
  for (const Variable& v : p.variables())
    if (!names.insert(v.name).second)
      throw std::runtime_error("duplicate variable name " + v.name);

  out << "\\ deterministic two-stage wavelength plan\n";
  out << "Minimize\n obj: ";
  write_terms(out, p, p.objective());
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < p.constraints().size(); ++i) {
    const Constraint& c = p.constraints()[i];
    out << " " << c.tag << "_" << i << ": ";
    write_terms(out, p, c.terms);
    switch (c.sense) {
      case Sense::kLe: out << " <= "; break;
      case Sense::kGe: out << " >= "; break;
      case Sense::kEq: out << " = "; break;
    }
    out << lp_number(c.rhs) << "\n";
  }
  bool any_general = false;
  for (const Variable& v : p.variables())
    if (!v.binary) any_general = true;
  out << "Bounds\n dummy_zero = 0\n";
  if (any_general) {
    out << "Generals\n";
    for (const Variable& v : p.variables())
      if (!v.binary) out << " " << v.name << "\n";
  }
  out << "Binaries\n";
  for (const Variable& v : p.variables())
    if (v.binary) out << " " << v.name << "\n";
  out << "End\n";
}

void export_lp(const DeterministicProgram& p, const std::string& path) {
  std::ofstream out{path, std::ios::binary};
  if (!out) throw std::runtime_error("cannot write LP file " + path);
  export_lp(p, out);
}

}  // namespace qkdplan
