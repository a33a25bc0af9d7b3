#include "qkdplan/baseline.hpp"

#include <map>
#include <stdexcept>

namespace qkdplan {

const char* baseline_mode_name(BaselineMode mode) {
  switch (mode) {
    case BaselineMode::kOnDemandOnly: return "on_demand_only";
    case BaselineMode::kReserveMax: return "reserve_max";
  }
  return "?";
}

BaselineMode parse_baseline_mode(const std::string& name) {
  if (name == "on_demand_only") return BaselineMode::kOnDemandOnly;
  if (name == "reserve_max") return BaselineMode::kReserveMax;
  throw std::invalid_argument("unknown baseline mode '" + name + "'");
}

PlanSolution baseline_plan(const DeterministicProgram& p, BaselineMode mode) {
  const auto& requests = p.requests();
  PlanSolution sol;
  sol.status = SolveStatus::kOptimal;
  sol.optimal = true;
  sol.routes.resize(requests.size());

  std::map<int, std::vector<int>> users;
  for (std::size_t f = 0; f < requests.size(); ++f) {
    sol.routes[f] =
        shortest_path(p.topology(), requests[f].source, requests[f].destination);
    if (sol.routes[f].empty()) {
      sol = PlanSolution{};
      sol.status = SolveStatus::kInfeasible;
      return sol;
    }
    for (int l : sol.routes[f].link_indices) users[l].push_back(static_cast<int>(f));
  }

  const bool joint = p.options().scenario_policy == ScenarioPolicy::kJointProduct;
  for (auto& [link, members] : users) {
    const Link& l = p.topology().links()[link];
    for (bool qkd : {true, false}) {
      const int capacity = qkd ? l.qkd_capacity : l.km_capacity;
      const int n = static_cast<int>(members.size());
      std::vector<LinkAllocation> allocs(n);
      int rows = 0;
      for (int m = 0; m < n; ++m) {
        int f = members[m];
        const ChainRequest& req = requests[f];
        allocs[m].link = link;
        allocs[m].request = f;
        allocs[m].utilized.assign(req.scenario_count(), 0);
        allocs[m].on_demand.assign(req.scenario_count(), 0);
        rows = std::max(rows, req.scenario_count());
        if (mode == BaselineMode::kReserveMax) {
          std::int64_t maxd = 0;
          for (int w = 0; w < req.scenario_count(); ++w)
            maxd = std::max(maxd, qkd ? p.qkd_demand_rhs(f, w) : p.km_demand_rhs(f, w));
          allocs[m].reserved = static_cast<int>(maxd);
        }
      }
      if (mode == BaselineMode::kReserveMax) {
        if (joint) {
          // Per-request utilization budgets handed out in id order.
          std::int64_t remaining = capacity;
          for (int m = 0; m < n; ++m) {
            int f = members[m];
            std::int64_t budget = std::min<std::int64_t>(allocs[m].reserved, remaining);
            std::int64_t peak = 0;
            for (int w = 0; w < requests[f].scenario_count(); ++w) {
              std::int64_t d = qkd ? p.qkd_demand_rhs(f, w) : p.km_demand_rhs(f, w);
              std::int64_t u = std::min(budget, d);
              allocs[m].utilized[w] = static_cast<int>(u);
              peak = std::max(peak, u);
            }
            remaining -= peak;
          }
        } else {
          // Row by row in id order; a member's last-scenario value is fixed
          // the first time its row comes up and then keeps consuming
          // capacity in the rows after it.
          for (int w = 0; w < rows; ++w) {
            std::int64_t remaining = capacity;
            for (int m = 0; m < n; ++m) {
              int top = requests[members[m]].scenario_count() - 1;
              if (top < w) remaining -= allocs[m].utilized[top];
            }
            for (int m = 0; m < n; ++m) {
              int f = members[m];
              int top = requests[f].scenario_count() - 1;
              if (top < w) continue;
              std::int64_t d = qkd ? p.qkd_demand_rhs(f, w) : p.km_demand_rhs(f, w);
              std::int64_t u = std::min<std::int64_t>(
                  {static_cast<std::int64_t>(allocs[m].reserved), d,
                   std::max<std::int64_t>(0, remaining)});
              allocs[m].utilized[w] = static_cast<int>(u);
              remaining -= u;
            }
          }
        }
      }
      for (int m = 0; m < n; ++m) {
        int f = members[m];
        for (int w = 0; w < requests[f].scenario_count(); ++w) {
          std::int64_t d = qkd ? p.qkd_demand_rhs(f, w) : p.km_demand_rhs(f, w);
          allocs[m].on_demand[w] =
              static_cast<int>(std::max<std::int64_t>(0, d - allocs[m].utilized[w]));
        }
        (qkd ? sol.qkd : sol.km).push_back(allocs[m]);
      }
    }
  }

  price_solution(p, sol);
  return sol;
}

PlanSolution baseline_plan(const Topology& topology,
                           const std::vector<ChainRequest>& requests,
                           const CostTable& cost_table, const PhysicsParams& physics,
                           BaselineMode mode, const BuildOptions& options) {
  DeterministicProgram p = build(topology, requests, cost_table, physics, options);
  return baseline_plan(p, mode);
}

}  // namespace qkdplan
