#include <algorithm>
#include <map>
#include <stdexcept>

#include "qkdplan/solver.hpp"

namespace qkdplan {

namespace {

// Per-(link, member-set, resource) optimum found by plain enumeration,
// priced straight off the program's objective coefficients.
struct GroupBest {
  bool feasible = false;
  Rational cost;
  std::vector<std::int64_t> reserved;              // per member
  std::vector<std::vector<std::int64_t>> utilized;  // per member, per scenario
};

struct OracleContext {
  const DeterministicProgram& p;
  int bound;
  std::map<std::tuple<int, unsigned, bool>, GroupBest> memo;

  const Rational& coeff(VarKind kind, int link, int f, int w = -1) {
    return p.objective_coefficient(p.var_index(kind, link, f, w));
  }

  std::int64_t demand(bool qkd, int f, int w) {
    return qkd ? p.qkd_demand_rhs(f, w) : p.km_demand_rhs(f, w);
  }

  // On-demand coefficients are nonnegative, so the smallest feasible
  // on-demand value max(0, demand - utilized) is optimal and is not
  // enumerated separately.
  Rational usage_cost(bool qkd, int link, int f, int w, std::int64_t u) {
    VarKind use = qkd ? VarKind::kUtilizeQkd : VarKind::kUtilizeKm;
    VarKind od = qkd ? VarKind::kOnDemandQkd : VarKind::kOnDemandKm;
    std::int64_t shortfall = std::max<std::int64_t>(0, demand(qkd, f, w) - u);
    return coeff(use, link, f, w) * Rational(u) +
           coeff(od, link, f, w) * Rational(shortfall);
  }

  GroupBest solve_group(int link, const std::vector<int>& members, bool qkd);
};

// Enumerates an integer vector 0..max (component-wise) via odometer; calls
// fn for every value including all-zeros. fn may return false to stop.
template <typename Fn>
void for_each_vector(const std::vector<std::int64_t>& maxima, Fn&& fn) {
  std::vector<std::int64_t> v(maxima.size(), 0);
  while (true) {
    fn(v);
    std::size_t i = v.size();
    while (i > 0 && v[i - 1] == maxima[i - 1]) v[--i] = 0;
    if (i == 0) break;
    ++v[i - 1];
  }
}

GroupBest OracleContext::solve_group(int link, const std::vector<int>& members,
                                     bool qkd) {
  unsigned mask = 0;
  for (int f : members) mask |= 1u << f;
  auto key = std::make_tuple(link, mask, qkd);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const int n = static_cast<int>(members.size());
  const Link& l = p.topology().links()[link];
  const int capacity = qkd ? l.qkd_capacity : l.km_capacity;
  const bool joint = p.options().scenario_policy == ScenarioPolicy::kJointProduct;
  const bool strict = p.options().bound_reservations_by_capacity;
  VarKind rkind = qkd ? VarKind::kReserveQkd : VarKind::kReserveKm;

  std::vector<int> scen(n);
  int rows = 0;
  for (int m = 0; m < n; ++m) {
    scen[m] = p.requests()[members[m]].scenario_count();
    rows = std::max(rows, scen[m]);
  }

  GroupBest best;

  // Reserving past the maximum demand and utilizing past a scenario's
  // demand only add cost, so the enumeration boxes stop there; the optimum
  // stays inside.
  std::vector<std::int64_t> max_demand(n, 0);
  for (int m = 0; m < n; ++m)
    for (int w = 0; w < scen[m]; ++w)
      max_demand[m] = std::max(max_demand[m], demand(qkd, members[m], w));
  std::vector<std::int64_t> r_max(n);
  for (int m = 0; m < n; ++m) r_max[m] = std::min<std::int64_t>(bound, max_demand[m]);

  // usage_table[m][w][u]
  std::vector<std::vector<std::vector<Rational>>> usage_table(n);
  for (int m = 0; m < n; ++m) {
    usage_table[m].resize(scen[m]);
    for (int w = 0; w < scen[m]; ++w)
      for (std::int64_t u = 0; u <= r_max[m]; ++u)
        usage_table[m][w].push_back(usage_cost(qkd, link, members[m], w, u));
  }

  for_each_vector(r_max, [&](const std::vector<std::int64_t>& r) {
    if (strict) {
      std::int64_t sum = 0;
      for (int m = 0; m < n; ++m) sum += r[m];
      if (sum > capacity) return;
    }
    Rational reserve_cost;
    for (int m = 0; m < n; ++m)
      reserve_cost += coeff(rkind, link, members[m]) * Rational(r[m]);

    if (joint) {
      // Flatten every member's full utilization vector and enumerate it.
      std::vector<std::int64_t> maxima;
      for (int m = 0; m < n; ++m)
        for (int w = 0; w < scen[m]; ++w)
          maxima.push_back(std::min(r[m], demand(qkd, members[m], w)));
      for_each_vector(maxima, [&](const std::vector<std::int64_t>& u) {
        std::int64_t peak_sum = 0;
        std::size_t at = 0;
        for (int m = 0; m < n; ++m) {
          std::int64_t peak = 0;
          for (int w = 0; w < scen[m]; ++w) peak = std::max(peak, u[at + w]);
          peak_sum += peak;
          at += scen[m];
        }
        if (peak_sum > capacity) return;
        Rational cost = reserve_cost;
        at = 0;
        for (int m = 0; m < n; ++m) {
          for (int w = 0; w < scen[m]; ++w)
            cost += usage_table[m][w][u[at + w]];
          at += scen[m];
        }
        if (!best.feasible || cost < best.cost) {
          best.feasible = true;
          best.cost = cost;
          best.reserved = r;
          best.utilized.assign(n, {});
          at = 0;
          for (int m = 0; m < n; ++m) {
            best.utilized[m].assign(u.begin() + at, u.begin() + at + scen[m]);
            at += scen[m];
          }
        }
      });
      return;
    }

    // Shared scenario index: members with fewer scenarios keep their last
    // variable in every later row, so those top values are enumerated and
    // the remaining single-row variables are enumerated row by row.
    std::vector<int> tops;
    for (int m = 0; m < n; ++m)
      if (scen[m] < rows) tops.push_back(m);
    std::vector<std::int64_t> t_max;
    for (int m : tops)
      t_max.push_back(std::min(r[m], demand(qkd, members[m], scen[m] - 1)));

    for_each_vector(t_max, [&](const std::vector<std::int64_t>& t) {
      Rational cost = reserve_cost;
      std::vector<std::vector<std::int64_t>> util(n);
      for (int m = 0; m < n; ++m) util[m].assign(scen[m], 0);
      for (std::size_t i = 0; i < tops.size(); ++i) {
        int m = tops[i];
        util[m][scen[m] - 1] = t[i];
        cost += usage_table[m][scen[m] - 1][t[i]];
      }
      for (int w = 0; w < rows; ++w) {
        std::int64_t fixed = 0;
        for (std::size_t i = 0; i < tops.size(); ++i)
          if (scen[tops[i]] - 1 <= w) fixed += t[i];
        if (fixed > capacity) return;
        std::vector<int> frees;
        for (int m = 0; m < n; ++m)
          if (scen[m] - 1 > w || (scen[m] == rows && w == rows - 1))
            frees.push_back(m);
        if (frees.empty()) continue;
        std::vector<std::int64_t> u_max;
        for (int m : frees)
          u_max.push_back(std::min(r[m], demand(qkd, members[m], w)));
        bool row_found = false;
        Rational row_best;
        std::vector<std::int64_t> row_best_u;
        for_each_vector(u_max, [&](const std::vector<std::int64_t>& u) {
          std::int64_t sum = fixed;
          for (std::int64_t x : u) sum += x;
          if (sum > capacity) return;
          Rational c;
          for (std::size_t i = 0; i < frees.size(); ++i)
            c += usage_table[frees[i]][w][u[i]];
          if (!row_found || c < row_best) {
            row_found = true;
            row_best = c;
            row_best_u = u;
          }
        });
        if (!row_found) return;  // even all-zero utilization is blocked
        cost += row_best;
        for (std::size_t i = 0; i < frees.size(); ++i)
          util[frees[i]][w] = row_best_u[i];
      }
      if (!best.feasible || cost < best.cost) {
        best.feasible = true;
        best.cost = cost;
        best.reserved = r;
        best.utilized = util;
      }
    });
  });

  memo.emplace(key, best);
  return best;
}

}  // namespace

OracleResult brute_force_oracle(const DeterministicProgram& p, int wavelength_bound) {
  const auto& requests = p.requests();
  if (p.topology().node_count() > 5)
    throw std::invalid_argument("oracle: more than 5 nodes");
  if (requests.size() > 2)
    throw std::invalid_argument("oracle: more than 2 requests");
  if (wavelength_bound <= 0 || wavelength_bound > 6)
    throw std::invalid_argument("oracle: wavelength bound must be in 1..6");
  for (std::size_t f = 0; f < requests.size(); ++f) {
    if (requests[f].max_rate_kbps > 2)
      throw std::invalid_argument("oracle: max rate above 2");
    for (int w = 0; w < requests[f].scenario_count(); ++w)
      if (p.qkd_demand_rhs(static_cast<int>(f), w) > wavelength_bound ||
          p.km_demand_rhs(static_cast<int>(f), w) > wavelength_bound)
        throw std::invalid_argument("oracle: wavelength bound below max demand");
  }

  OracleResult result;
  if (requests.empty()) {
    result.feasible = true;
    return result;
  }

  std::vector<std::vector<Path>> paths;
  for (const ChainRequest& r : requests) {
    paths.push_back(enumerate_simple_paths(p.topology(), r.source, r.destination));
    if (paths.back().empty()) return result;  // infeasible
  }

  OracleContext ctx{p, wavelength_bound, {}};

  std::vector<std::size_t> pick(requests.size(), 0);
  bool have_best = false;
  Rational best_cost;
  std::vector<std::size_t> best_pick;

  while (true) {
    // Route cost plus per-link group optima for this route combination.
    Rational cost;
    std::map<int, std::vector<int>> users;
    for (std::size_t f = 0; f < requests.size(); ++f)
      for (int l : paths[f][pick[f]].link_indices) {
        users[l].push_back(static_cast<int>(f));
        cost += p.objective_coefficient(
            p.var_index(VarKind::kRoute, l, static_cast<int>(f)));
      }
    for (const auto& [link, members] : users)
      for (bool qkd : {true, false})
        cost += ctx.solve_group(link, members, qkd).cost;
    if (!have_best || cost < best_cost) {
      have_best = true;
      best_cost = cost;
      best_pick = pick;
    }
    std::size_t i = pick.size();
    while (i > 0 && pick[i - 1] + 1 == paths[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
    ++pick[i - 1];
  }

  // Reassemble the winning assignment and re-check it against the program;
  // a violation would mean the enumeration and the builder disagree.
  std::vector<std::int64_t> assignment(p.variables().size(), 0);
  std::map<int, std::vector<int>> users;
  for (std::size_t f = 0; f < requests.size(); ++f)
    for (int l : paths[f][best_pick[f]].link_indices) {
      users[l].push_back(static_cast<int>(f));
      assignment[p.var_index(VarKind::kRoute, l, static_cast<int>(f))] = 1;
    }
  for (const auto& [link, members] : users)
    for (bool qkd : {true, false}) {
      GroupBest gb = ctx.solve_group(link, members, qkd);
      for (std::size_t m = 0; m < members.size(); ++m) {
        assignment[p.var_index(qkd ? VarKind::kReserveQkd : VarKind::kReserveKm,
                               link, members[m])] = gb.reserved[m];
        for (int w = 0; w < static_cast<int>(gb.utilized[m].size()); ++w) {
          std::int64_t u = gb.utilized[m][w];
          assignment[p.var_index(qkd ? VarKind::kUtilizeQkd : VarKind::kUtilizeKm,
                                 link, members[m], w)] = u;
          assignment[p.var_index(
              qkd ? VarKind::kOnDemandQkd : VarKind::kOnDemandKm, link,
              members[m], w)] =
              std::max<std::int64_t>(0, ctx.demand(qkd, members[m], w) - u);
        }
      }
    }
  std::string violated = p.check_assignment(assignment);
  if (!violated.empty())
    throw std::logic_error("oracle solution violates " + violated);
  if (p.evaluate_objective(assignment) != best_cost)
    throw std::logic_error("oracle cost disagrees with objective evaluation");

  result.feasible = true;
  result.objective = best_cost;
  return result;
}

}  // namespace qkdplan
