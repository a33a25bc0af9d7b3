#ifndef QKDPLAN_SOLVER_HPP
#define QKDPLAN_SOLVER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qkdplan/paths.hpp"
#include "qkdplan/program.hpp"

namespace qkdplan {

enum class SolveStatus { kOptimal, kIncumbent, kInfeasible };
const char* solve_status_name(SolveStatus s);

struct SolveOptions {
  int candidates_per_request = 8;
  std::int64_t node_budget = 10'000'000;
  std::int64_t inner_work_limit = 200'000'000;
  // Force the reservation level on every route link of every request for
  // one resource; the other resource stays free. Used by the
  // pinned-reservation sweeps.
  std::optional<int> pin_qkd_reservation;
  std::optional<int> pin_km_reservation;
};

// Reservation and scenario-wise usage of one resource on one (link, request).
struct LinkAllocation {
  int link = -1;
  int request = -1;            // index into program.requests()
  int reserved = 0;
  std::vector<int> utilized;   // per own scenario 0..K
  std::vector<int> on_demand;  // per own scenario 0..K
};

// Expected cost by phase and resource plus the component split the report
// prints. Utilization/on-demand entries are probability-weighted.
struct CostLedger {
  Rational energy;
  Rational qkd_by_phase[3];
  Rational km_by_phase[3];
  Rational by_phase_component[3][6];

  Rational first_stage() const;
  Rational second_stage() const;
  Rational total() const;
};

struct PlanSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  bool optimal = false;
  bool restricted = false;
  std::vector<Path> routes;  // index-aligned with program.requests()
  std::vector<LinkAllocation> qkd;  // sorted by (link, request)
  std::vector<LinkAllocation> km;
  CostLedger ledger;
  Rational first_stage_cost;
  Rational second_stage_cost;
  Rational total_cost;
  std::int64_t nodes_explored = 0;
};

// Cost-minimal wavelength allocation for fixed routes. Per request and
// route link the reservation candidates are the demand levels; when the
// independent optimum violates a shared utilization capacity the search
// switches to exhaustive enumeration of reservation vectors (work-limited).
// On-demand is uncapacitated, so a feasible allocation always exists.
PlanSolution inner_allocate(const DeterministicProgram& p,
                            const std::vector<Path>& routes,
                            const SolveOptions& options = {});

// Branch-and-bound over the product of per-request candidate routes
// (k shortest loopless paths). Bound: sum of capacity-relaxed per-request
// optima. Returns the optimum over the candidate restriction;
// `restricted` reports whether the k limit truncated any candidate set.
PlanSolution solve(const DeterministicProgram& p, const SolveOptions& options = {});

struct OracleResult {
  bool feasible = false;
  Rational objective;
};

// Exhaustive reference optimum for tiny instances: enumerates every simple
// route combination and, per link, every reservation/utilization vector
// within `wavelength_bound`, pricing directly from the program objective.
// Guards: <= 5 nodes, <= 2 requests, K <= 2, bound <= 6 and >= max demand.
OracleResult brute_force_oracle(const DeterministicProgram& p, int wavelength_bound);

// Full variable assignment realizing the solution (zeros elsewhere).
std::vector<std::int64_t> assignment_from_solution(const DeterministicProgram& p,
                                                   const PlanSolution& sol);

// Recomputes the ledger and stage totals from routes and allocations.
void price_solution(const DeterministicProgram& p, PlanSolution& sol);

// Aggregate wavelength counts across (link, request) pairs.
std::int64_t total_reserved(const std::vector<LinkAllocation>& allocs);
// On-demand wavelengths in each request's top scenario.
std::int64_t total_on_demand_at_top(const std::vector<LinkAllocation>& allocs,
                                    const DeterministicProgram& p);

// Key-value header plus a per-link allocation table.
void write_report(const DeterministicProgram& p, const PlanSolution& sol,
                  std::ostream& out);

}  // namespace qkdplan

#endif
