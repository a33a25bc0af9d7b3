#ifndef QKDPLAN_BASELINE_HPP
#define QKDPLAN_BASELINE_HPP

#include "qkdplan/solver.hpp"

namespace qkdplan {

// Non-adaptive reference planner: every request takes its shortest path and
// provisioning ignores the demand distribution.
//   kOnDemandOnly: nothing reserved, every realized demand bought on demand.
//   kReserveMax:   reserve the maximum-scenario demand on every route link,
//                  utilize what capacity allows, buy the rest on demand.
// Solutions are feasible for, and priced by, the same program as solve().
enum class BaselineMode { kOnDemandOnly, kReserveMax };

const char* baseline_mode_name(BaselineMode mode);
BaselineMode parse_baseline_mode(const std::string& name);

PlanSolution baseline_plan(const DeterministicProgram& p, BaselineMode mode);

PlanSolution baseline_plan(const Topology& topology,
                           const std::vector<ChainRequest>& requests,
                           const CostTable& cost_table, const PhysicsParams& physics,
                           BaselineMode mode, const BuildOptions& options = {});

}  // namespace qkdplan

#endif
