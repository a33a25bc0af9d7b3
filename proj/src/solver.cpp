#include "qkdplan/solver.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace qkdplan {

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kIncumbent: return "incumbent";
    case SolveStatus::kInfeasible: return "infeasible";
  }
  return "?";
}

Rational CostLedger::first_stage() const {
  return energy + qkd_by_phase[static_cast<int>(Phase::kReservation)] +
         km_by_phase[static_cast<int>(Phase::kReservation)];
}

Rational CostLedger::second_stage() const {
  Rational r;
  for (Phase p : {Phase::kUtilization, Phase::kOnDemand})
    r += qkd_by_phase[static_cast<int>(p)] + km_by_phase[static_cast<int>(p)];
  return r;
}

Rational CostLedger::total() const { return first_stage() + second_stage(); }

namespace {

struct WorkBudget {
  std::int64_t used = 0;
  std::int64_t limit = 0;

  void charge(std::int64_t amount) {
    used += amount;
    if (used > limit)
      throw std::runtime_error(
          "inner allocation work limit exceeded; reduce the instance or use "
          "the LP export with an external solver");
  }
};

// The wavelength subproblem of one (link, resource) for fixed routes:
// requests sharing the link, their per-scenario demands and probabilities,
// the per-wavelength phase prices and the shared utilization capacity.
struct GroupProblem {
  Rational reserve_price;
  Rational use_price;
  Rational od_price;
  int capacity = 0;
  bool joint_policy = false;
  bool strict_reservations = false;
  std::optional<int> pin;
  std::vector<int> members;  // request indices, ascending
  std::vector<std::vector<std::int64_t>> demand;  // per member, per scenario
  std::vector<std::vector<Rational>> prob;

  int scenario_count(int m) const { return static_cast<int>(demand[m].size()); }
  std::int64_t max_demand(int m) const {
    return *std::max_element(demand[m].begin(), demand[m].end());
  }
};

struct MemberAllocation {
  std::int64_t reserved = 0;
  std::vector<std::int64_t> utilized;
};

struct GroupSolution {
  Rational cost;
  std::vector<MemberAllocation> alloc;
};

Rational member_cost(const GroupProblem& g, int m, const MemberAllocation& a) {
  Rational cost = g.reserve_price * Rational(a.reserved);
  for (int w = 0; w < g.scenario_count(m); ++w) {
    const Rational& p = g.prob[m][w];
    if (p.is_zero()) continue;
    std::int64_t u = a.utilized[w];
    std::int64_t od = std::max<std::int64_t>(0, g.demand[m][w] - u);
    cost += p * (g.use_price * Rational(u) + g.od_price * Rational(od));
  }
  return cost;
}

// Capacity-free optimum for one member: evaluates every reservation
// candidate (zero and each demand level) and keeps the smallest minimizer.
std::int64_t independent_reservation(const GroupProblem& g, int m, WorkBudget& work) {
  if (g.pin) return *g.pin;
  std::vector<std::int64_t> candidates{0};
  for (std::int64_t d : g.demand[m]) candidates.push_back(d);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  std::int64_t best_r = 0;
  Rational best_cost;
  bool first = true;
  for (std::int64_t r : candidates) {
    work.charge(static_cast<std::int64_t>(g.scenario_count(m)) + 1);
    MemberAllocation a;
    a.reserved = r;
    a.utilized.resize(g.scenario_count(m));
    for (int w = 0; w < g.scenario_count(m); ++w)
      a.utilized[w] = std::min<std::int64_t>(r, g.demand[m][w]);
    Rational c = member_cost(g, m, a);
    if (first || c < best_cost) {
      first = false;
      best_cost = c;
      best_r = r;
    }
  }
  return best_r;
}

// Shared-index capacity rows restricted to this group: row w sums each
// member's variable at its own scenario min(w, K_m). Rows past the group's
// largest scenario repeat the last pattern.
bool fits_capacity(const GroupProblem& g, const std::vector<MemberAllocation>& alloc) {
  if (g.members.empty()) return true;
  if (g.strict_reservations) {
    std::int64_t reserved = 0;
    for (const auto& a : alloc) reserved += a.reserved;
    if (reserved > g.capacity) return false;
  }
  if (g.joint_policy) {
    std::int64_t sum = 0;
    for (std::size_t m = 0; m < alloc.size(); ++m)
      sum += *std::max_element(alloc[m].utilized.begin(), alloc[m].utilized.end());
    return sum <= g.capacity;
  }
  int rows = 0;
  for (std::size_t m = 0; m < alloc.size(); ++m)
    rows = std::max(rows, static_cast<int>(alloc[m].utilized.size()));
  for (int w = 0; w < rows; ++w) {
    std::int64_t sum = 0;
    for (std::size_t m = 0; m < alloc.size(); ++m) {
      int own = std::min<int>(w, static_cast<int>(alloc[m].utilized.size()) - 1);
      sum += alloc[m].utilized[own];
    }
    if (sum > g.capacity) return false;
  }
  return true;
}

// Given fixed reservations, grant capped utilization row by row: within one
// row every member's wavelength saves the same od-minus-use margin weighted
// by its scenario probability, so granting in descending probability order
// is exact.
std::vector<MemberAllocation> capped_utilization(
    const GroupProblem& g, const std::vector<std::int64_t>& reserved,
    const std::vector<std::int64_t>& top_values, WorkBudget& work) {
  const int n = static_cast<int>(g.members.size());
  int rows = 0;
  for (int m = 0; m < n; ++m) rows = std::max(rows, g.scenario_count(m));
  std::vector<MemberAllocation> alloc(n);
  for (int m = 0; m < n; ++m) {
    alloc[m].reserved = reserved[m];
    alloc[m].utilized.assign(g.scenario_count(m), 0);
    if (g.scenario_count(m) < rows)
      alloc[m].utilized[g.scenario_count(m) - 1] = top_values[m];
  }
  std::vector<int> order(n);
  for (int w = 0; w < rows; ++w) {
    work.charge(n + 1);
    std::int64_t remaining = g.capacity;
    for (int m = 0; m < n; ++m)
      if (g.scenario_count(m) - 1 <= w && g.scenario_count(m) < rows)
        remaining -= top_values[m];
    if (remaining < 0) return {};  // top values alone overflow this row
    int cnt = 0;
    for (int m = 0; m < n; ++m) {
      bool top_is_free = g.scenario_count(m) == rows && w == rows - 1;
      if (g.scenario_count(m) - 1 > w || top_is_free) order[cnt++] = m;
    }
    std::sort(order.begin(), order.begin() + cnt, [&](int a, int b) {
      if (g.prob[a][w] != g.prob[b][w]) return g.prob[b][w] < g.prob[a][w];
      return g.members[a] < g.members[b];
    });
    for (int i = 0; i < cnt; ++i) {
      int m = order[i];
      std::int64_t u =
          std::min({reserved[m], g.demand[m][w], remaining});
      alloc[m].utilized[w] = u;
      remaining -= u;
    }
  }
  return alloc;
}

Rational group_cost(const GroupProblem& g, const std::vector<MemberAllocation>& alloc) {
  Rational total;
  for (std::size_t m = 0; m < alloc.size(); ++m)
    total += member_cost(g, static_cast<int>(m), alloc[m]);
  return total;
}

// Exhaustive search over reservation vectors (and, with mixed scenario
// counts, over the clamped top-scenario utilizations) once the shared
// capacity binds.
GroupSolution exhaustive_group(const GroupProblem& g, WorkBudget& work) {
  const int n = static_cast<int>(g.members.size());
  int rows = 0;
  for (int m = 0; m < n; ++m) rows = std::max(rows, g.scenario_count(m));

  std::vector<std::int64_t> r_max(n), r(n);
  for (int m = 0; m < n; ++m) r_max[m] = g.pin ? *g.pin : g.max_demand(m);
  if (g.pin)
    for (int m = 0; m < n; ++m) r[m] = *g.pin;

  GroupSolution best;
  bool have_best = false;

  auto consider = [&](const std::vector<MemberAllocation>& alloc) {
    if (alloc.empty() || !fits_capacity(g, alloc)) return;
    Rational c = group_cost(g, alloc);
    if (!have_best || c < best.cost) {
      have_best = true;
      best.cost = c;
      best.alloc = alloc;
    }
  };

  while (true) {
    bool strict_ok = true;
    if (g.strict_reservations) {
      std::int64_t sum = 0;
      for (int m = 0; m < n; ++m) sum += r[m];
      strict_ok = sum <= g.capacity;
    }
    if (strict_ok) {
      if (g.joint_policy) {
        // Per-member utilization cap vectors; utilization below the cap is
        // min(cap, demand).
        std::vector<std::int64_t> cap(n, 0), cap_max(n);
        for (int m = 0; m < n; ++m)
          cap_max[m] = std::min(r[m], g.max_demand(m));
        while (true) {
          std::int64_t sum = 0;
          for (int m = 0; m < n; ++m) sum += cap[m];
          if (sum <= g.capacity) {
            work.charge(n * rows + 1);
            std::vector<MemberAllocation> alloc(n);
            for (int m = 0; m < n; ++m) {
              alloc[m].reserved = r[m];
              alloc[m].utilized.resize(g.scenario_count(m));
              for (int w = 0; w < g.scenario_count(m); ++w)
                alloc[m].utilized[w] = std::min(cap[m], g.demand[m][w]);
            }
            consider(alloc);
          }
          int i = n - 1;
          while (i >= 0 && cap[i] == cap_max[i]) cap[i--] = 0;
          if (i < 0) break;
          ++cap[i];
        }
      } else {
        // Members whose scenario set is shorter than the group's share
        // their top variable across the remaining rows; enumerate those,
        // the rest is row-wise greedy.
        std::vector<int> tops;
        for (int m = 0; m < n; ++m)
          if (g.scenario_count(m) < rows) tops.push_back(m);
        std::vector<std::int64_t> t(n, 0), t_max(n, 0);
        for (int m : tops) t_max[m] = std::min(r[m], g.demand[m].back());
        while (true) {
          work.charge(1);
          auto alloc = capped_utilization(g, r, t, work);
          consider(alloc);
          int i = static_cast<int>(tops.size()) - 1;
          while (i >= 0 && t[tops[i]] == t_max[tops[i]]) t[tops[i--]] = 0;
          if (i < 0) break;
          ++t[tops[i]];
        }
      }
    }
    if (g.pin) break;
    int i = n - 1;
    while (i >= 0 && r[i] == r_max[i]) r[i--] = 0;
    if (i < 0) break;
    ++r[i];
  }
  if (!have_best)
    throw std::runtime_error("no feasible wavelength allocation found");
  return best;
}

GroupSolution solve_group(const GroupProblem& g, WorkBudget& work) {
  const int n = static_cast<int>(g.members.size());
  std::vector<MemberAllocation> alloc(n);
  for (int m = 0; m < n; ++m) {
    alloc[m].reserved = independent_reservation(g, m, work);
    alloc[m].utilized.resize(g.scenario_count(m));
    for (int w = 0; w < g.scenario_count(m); ++w)
      alloc[m].utilized[w] = std::min(alloc[m].reserved, g.demand[m][w]);
  }
  if (fits_capacity(g, alloc))
    return GroupSolution{group_cost(g, alloc), std::move(alloc)};
  return exhaustive_group(g, work);
}

constexpr int kRes = static_cast<int>(Phase::kReservation);
constexpr int kUse = static_cast<int>(Phase::kUtilization);
constexpr int kOd = static_cast<int>(Phase::kOnDemand);

GroupProblem make_group(const DeterministicProgram& p, int link, bool qkd,
                        std::vector<int> members, const SolveOptions& options) {
  const LinkWavelengthPrice& price = p.link_price(link);
  GroupProblem g;
  g.reserve_price = qkd ? price.qkd_total[kRes] : price.km_total[kRes];
  g.use_price = qkd ? price.qkd_total[kUse] : price.km_total[kUse];
  g.od_price = qkd ? price.qkd_total[kOd] : price.km_total[kOd];
  const Link& l = p.topology().links()[link];
  g.capacity = qkd ? l.qkd_capacity : l.km_capacity;
  g.joint_policy = p.options().scenario_policy == ScenarioPolicy::kJointProduct;
  g.strict_reservations = p.options().bound_reservations_by_capacity;
  g.pin = qkd ? options.pin_qkd_reservation : options.pin_km_reservation;
  g.members = std::move(members);
  for (int f : g.members) {
    const ChainRequest& r = p.requests()[f];
    std::vector<std::int64_t> demand(r.scenario_count());
    std::vector<Rational> prob(r.scenario_count());
    for (int w = 0; w < r.scenario_count(); ++w) {
      demand[w] = qkd ? p.qkd_demand_rhs(f, w) : p.km_demand_rhs(f, w);
      prob[w] = r.probability(w);
    }
    g.demand.push_back(std::move(demand));
    g.prob.push_back(std::move(prob));
  }
  return g;
}

}  // namespace

void price_solution(const DeterministicProgram& p, PlanSolution& sol) {
  sol.ledger = CostLedger{};
  for (const Path& route : sol.routes)
    for (int l : route.link_indices)
      sol.ledger.energy += p.node_energy(p.topology().links()[l].head);

  auto account = [&](const std::vector<LinkAllocation>& allocs, bool qkd) {
    for (const LinkAllocation& la : allocs) {
      const LinkWavelengthPrice& price = p.link_price(la.link);
      const ChainRequest& req = p.requests()[la.request];
      auto add = [&](Phase phase, const Rational& wavelengths) {
        const int ph = static_cast<int>(phase);
        if (qkd) {
          sol.ledger.qkd_by_phase[ph] += price.qkd_total[ph] * wavelengths;
          sol.ledger.by_phase_component[ph][static_cast<int>(Component::kTx)] +=
              price.qkd_tx[ph] * wavelengths;
          sol.ledger.by_phase_component[ph][static_cast<int>(Component::kRx)] +=
              price.qkd_rx[ph] * wavelengths;
          sol.ledger.by_phase_component[ph][static_cast<int>(Component::kCh)] +=
              price.qkd_ch[ph] * wavelengths;
        } else {
          sol.ledger.km_by_phase[ph] += price.km_total[ph] * wavelengths;
          sol.ledger.by_phase_component[ph][static_cast<int>(Component::kKm)] +=
              price.km_km[ph] * wavelengths;
          sol.ledger.by_phase_component[ph][static_cast<int>(Component::kSi)] +=
              price.km_si[ph] * wavelengths;
          sol.ledger.by_phase_component[ph][static_cast<int>(Component::kMd)] +=
              price.km_md[ph] * wavelengths;
          sol.ledger.by_phase_component[ph][static_cast<int>(Component::kCh)] +=
              price.km_ch[ph] * wavelengths;
        }
      };
      add(Phase::kReservation, Rational(la.reserved));
      Rational used, od;
      for (std::size_t w = 0; w < la.utilized.size(); ++w) {
        const Rational& pr = req.probability(static_cast<int>(w));
        if (pr.is_zero()) continue;
        used += pr * Rational(la.utilized[w]);
        od += pr * Rational(la.on_demand[w]);
      }
      add(Phase::kUtilization, used);
      add(Phase::kOnDemand, od);
    }
  };
  account(sol.qkd, true);
  account(sol.km, false);
  sol.first_stage_cost = sol.ledger.first_stage();
  sol.second_stage_cost = sol.ledger.second_stage();
  sol.total_cost = sol.ledger.total();
}

PlanSolution inner_allocate(const DeterministicProgram& p,
                            const std::vector<Path>& routes,
                            const SolveOptions& options) {
  const auto& requests = p.requests();
  if (routes.size() != requests.size())
    throw std::invalid_argument("inner_allocate: route count mismatch");
  if (options.pin_qkd_reservation && *options.pin_qkd_reservation < 0)
    throw std::invalid_argument("negative reservation pin");
  if (options.pin_km_reservation && *options.pin_km_reservation < 0)
    throw std::invalid_argument("negative reservation pin");

  WorkBudget work{0, options.inner_work_limit};
  PlanSolution sol;
  sol.status = SolveStatus::kOptimal;
  sol.optimal = true;
  sol.routes = routes;

  // Users per link, ascending request index.
  std::map<int, std::vector<int>> users;
  for (std::size_t f = 0; f < routes.size(); ++f) {
    if (routes[f].empty() || routes[f].nodes.front() != requests[f].source ||
        routes[f].nodes.back() != requests[f].destination)
      throw std::invalid_argument("inner_allocate: route does not connect request " +
                                  std::to_string(requests[f].id));
    for (int l : routes[f].link_indices) users[l].push_back(static_cast<int>(f));
  }

  for (auto& [link, members] : users) {
    for (bool qkd : {true, false}) {
      GroupProblem g = make_group(p, link, qkd, members, options);
      GroupSolution gs = solve_group(g, work);
      for (std::size_t m = 0; m < members.size(); ++m) {
        LinkAllocation a;
        a.link = link;
        a.request = members[m];
        a.reserved = static_cast<int>(gs.alloc[m].reserved);
        a.utilized.assign(gs.alloc[m].utilized.begin(), gs.alloc[m].utilized.end());
        a.on_demand.resize(a.utilized.size());
        for (std::size_t w = 0; w < a.utilized.size(); ++w)
          a.on_demand[w] = static_cast<int>(std::max<std::int64_t>(
              0, g.demand[m][w] - gs.alloc[m].utilized[w]));
        (qkd ? sol.qkd : sol.km).push_back(std::move(a));
      }
    }
  }

  price_solution(p, sol);
  return sol;
}

namespace {

// Capacity-relaxed cost of routing request f over `path`, including energy.
Rational relaxed_route_cost(const DeterministicProgram& p, int f, const Path& path,
                            const SolveOptions& options, WorkBudget& work) {
  Rational total;
  for (int l : path.link_indices) {
    total += p.node_energy(p.topology().links()[l].head);
    for (bool qkd : {true, false}) {
      GroupProblem g = make_group(p, l, qkd, {f}, options);
      std::int64_t r = independent_reservation(g, 0, work);
      MemberAllocation a;
      a.reserved = r;
      a.utilized.resize(g.scenario_count(0));
      for (int w = 0; w < g.scenario_count(0); ++w)
        a.utilized[w] = std::min<std::int64_t>(r, g.demand[0][w]);
      total += member_cost(g, 0, a);
    }
  }
  return total;
}

}  // namespace

PlanSolution solve(const DeterministicProgram& p, const SolveOptions& options) {
  const auto& requests = p.requests();
  const int F = static_cast<int>(requests.size());
  WorkBudget work{0, options.inner_work_limit};

  if (F == 0) {
    PlanSolution sol;
    sol.status = SolveStatus::kOptimal;
    sol.optimal = true;
    return sol;
  }

  // Candidate routes; one extra probe tells whether k truncated the set.
  bool restricted = false;
  std::vector<std::vector<Path>> candidates(F);
  for (int f = 0; f < F; ++f) {
    candidates[f] = k_shortest_paths(p.topology(), requests[f].source,
                                     requests[f].destination,
                                     options.candidates_per_request + 1);
    if (candidates[f].empty()) {
      PlanSolution sol;
      sol.status = SolveStatus::kInfeasible;
      return sol;
    }
    if (static_cast<int>(candidates[f].size()) >
        options.candidates_per_request) {
      candidates[f].pop_back();
      restricted = true;
    }
  }

  std::vector<std::vector<Rational>> relaxed(F);
  std::vector<Rational> suffix_min(F + 1);
  for (int f = 0; f < F; ++f)
    for (const Path& c : candidates[f])
      relaxed[f].push_back(relaxed_route_cost(p, f, c, options, work));
  for (int f = F - 1; f >= 0; --f) {
    Rational m = relaxed[f][0];
    for (const Rational& c : relaxed[f])
      if (c < m) m = c;
    suffix_min[f] = suffix_min[f + 1] + m;
  }

  std::vector<int> choice(F, 0);
  std::vector<Path> routes(F);
  std::vector<int> best_choice;
  Rational best_cost;
  bool have_best = false;
  std::int64_t nodes = 0;
  bool budget_hit = false;

  // Depth-first over candidate indices in (length, node sequence) order, so
  // the first incumbent among equal-cost optima is the lexicographically
  // smallest route tuple.
  auto dfs = [&](auto&& self, int depth, Rational prefix) -> void {
    if (budget_hit) return;
    if (depth == F) {
      for (int f = 0; f < F; ++f) routes[f] = candidates[f][choice[f]];
      PlanSolution leaf = inner_allocate(p, routes, options);
      if (!have_best || leaf.total_cost < best_cost) {
        have_best = true;
        best_cost = leaf.total_cost;
        best_choice = choice;
      }
      return;
    }
    for (int c = 0; c < static_cast<int>(candidates[depth].size()); ++c) {
      ++nodes;
      if (nodes > options.node_budget && have_best) {
        budget_hit = true;
        return;
      }
      Rational bound = prefix + relaxed[depth][c] + suffix_min[depth + 1];
      if (have_best && bound >= best_cost) continue;
      choice[depth] = c;
      self(self, depth + 1, prefix + relaxed[depth][c]);
      if (budget_hit) return;
    }
  };
  dfs(dfs, 0, Rational(0));

  if (!have_best) {
    PlanSolution sol;
    sol.status = SolveStatus::kInfeasible;
    sol.nodes_explored = nodes;
    return sol;
  }
  for (int f = 0; f < F; ++f) routes[f] = candidates[f][best_choice[f]];
  PlanSolution sol = inner_allocate(p, routes, options);
  sol.status = budget_hit ? SolveStatus::kIncumbent : SolveStatus::kOptimal;
  sol.optimal = !budget_hit;
  sol.restricted = restricted;
  sol.nodes_explored = nodes;
  return sol;
}

std::vector<std::int64_t> assignment_from_solution(const DeterministicProgram& p,
                                                   const PlanSolution& sol) {
  std::vector<std::int64_t> a(p.variables().size(), 0);
  for (std::size_t f = 0; f < sol.routes.size(); ++f)
    for (int l : sol.routes[f].link_indices)
      a[p.var_index(VarKind::kRoute, l, static_cast<int>(f))] = 1;
  auto fill = [&](const std::vector<LinkAllocation>& allocs, VarKind reserve,
                  VarKind use, VarKind od) {
    for (const LinkAllocation& la : allocs) {
      a[p.var_index(reserve, la.link, la.request)] = la.reserved;
      for (std::size_t w = 0; w < la.utilized.size(); ++w) {
        a[p.var_index(use, la.link, la.request, static_cast<int>(w))] =
            la.utilized[w];
        a[p.var_index(od, la.link, la.request, static_cast<int>(w))] =
            la.on_demand[w];
      }
    }
  };
  fill(sol.qkd, VarKind::kReserveQkd, VarKind::kUtilizeQkd, VarKind::kOnDemandQkd);
  fill(sol.km, VarKind::kReserveKm, VarKind::kUtilizeKm, VarKind::kOnDemandKm);
  return a;
}

std::int64_t total_reserved(const std::vector<LinkAllocation>& allocs) {
  std::int64_t sum = 0;
  for (const LinkAllocation& a : allocs) sum += a.reserved;
  return sum;
}

std::int64_t total_on_demand_at_top(const std::vector<LinkAllocation>& allocs,
                                    const DeterministicProgram& p) {
  (void)p;
  std::int64_t sum = 0;
  for (const LinkAllocation& a : allocs)
    if (!a.on_demand.empty()) sum += a.on_demand.back();
  return sum;
}

void write_report(const DeterministicProgram& p, const PlanSolution& sol,
                  std::ostream& out) {
  out << "status: " << solve_status_name(sol.status) << "\n";
  out << "optimal: " << (sol.optimal ? "true" : "false") << "\n";
  out << "restricted: " << (sol.restricted ? "true" : "false") << "\n";
  out << "requests: " << p.requests().size() << "\n";
  out << "nodes_explored: " << sol.nodes_explored << "\n";
  if (sol.status == SolveStatus::kInfeasible) return;
  out << "total_cost: " << sol.total_cost.to_fixed_string(6) << "\n";
  out << "first_stage_cost: " << sol.first_stage_cost.to_fixed_string(6) << "\n";
  out << "second_stage_cost: " << sol.second_stage_cost.to_fixed_string(6) << "\n";
  out << "energy_cost: " << sol.ledger.energy.to_fixed_string(6) << "\n";
  for (Phase ph : kAllPhases) {
    out << "qkd_cost[" << phase_name(ph)
        << "]: " << sol.ledger.qkd_by_phase[static_cast<int>(ph)].to_fixed_string(6)
        << "\n";
    out << "km_cost[" << phase_name(ph)
        << "]: " << sol.ledger.km_by_phase[static_cast<int>(ph)].to_fixed_string(6)
        << "\n";
  }
  for (Phase ph : kAllPhases)
    for (Component c : kAllComponents) {
      const Rational& v =
          sol.ledger.by_phase_component[static_cast<int>(ph)][static_cast<int>(c)];
      if (!v.is_zero())
        out << "cost[" << phase_name(ph) << "][" << component_name(c)
            << "]: " << v.to_fixed_string(6) << "\n";
    }
  for (std::size_t f = 0; f < sol.routes.size(); ++f) {
    out << "route[" << p.requests()[f].id << "]:";
    for (std::size_t i = 0; i < sol.routes[f].nodes.size(); ++i)
      out << (i == 0 ? " " : " -> ") << sol.routes[f].nodes[i];
    out << " (length_km "
        << Rational(sol.routes[f].length_tenth_km, 10).to_fixed_string(1) << ")\n";
  }
  auto table = [&](const char* name, const std::vector<LinkAllocation>& allocs) {
    for (const LinkAllocation& a : allocs) {
      const Link& l = p.topology().links()[a.link];
      out << name << " " << l.tail << "->" << l.head << " request "
          << p.requests()[a.request].id << ": reserved " << a.reserved
          << " utilized";
      for (int u : a.utilized) out << " " << u;
      out << " on_demand";
      for (int o : a.on_demand) out << " " << o;
      out << "\n";
    }
  };
  table("alloc[qkd]", sol.qkd);
  table("alloc[km]", sol.km);
}

}  // namespace qkdplan
