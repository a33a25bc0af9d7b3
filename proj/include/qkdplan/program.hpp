#ifndef QKDPLAN_PROGRAM_HPP
#define QKDPLAN_PROGRAM_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qkdplan/cost.hpp"
#include "qkdplan/demand.hpp"
#include "qkdplan/rational.hpp"
#include "qkdplan/topology.hpp"

namespace qkdplan {

// Decision-variable families. kRoute is binary; the rest are nonnegative
// integers. Reservation variables are scenario-free; utilized and on-demand
// variables carry a scenario index.
enum class VarKind {
  kRoute = 0,       // x_i_n_f
  kReserveQkd,      // yr_i_n_f
  kReserveKm,       // zr_i_n_f
  kUtilizeQkd,      // ye_i_n_f_w
  kUtilizeKm,       // ze_i_n_f_w
  kOnDemandQkd,     // yo_i_n_f_w
  kOnDemandKm,      // zo_i_n_f_w
};

struct Variable {
  std::string name;
  bool binary = false;
  VarKind kind = VarKind::kRoute;
  int link = -1;      // index into Topology::links()
  int request = -1;   // index into the request vector
  int scenario = -1;  // rate value, or -1 for scenario-free variables
};

enum class Sense { kLe, kGe, kEq };

struct LinearTerm {
  int var = -1;
  Rational coeff;
};

struct Constraint {
  std::string tag;  // constraint family, e.g. "flow-source", "demand-qkd"
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLe;
  Rational rhs;
};

// How "for every scenario" is read in the shared capacity constraints.
// kSharedIndex: one capacity row per (link, scenario index 0..max K);
// requests with a smaller K contribute their last scenario's variable.
// kJointProduct: one row per element of the product scenario space; only
// sensible for small instances and guarded by joint_scenario_limit.
enum class ScenarioPolicy { kSharedIndex, kJointProduct };

// Right-hand side of the per-link demand constraints. kPerScenario couples
// each scenario's allocation to that scenario's own demand. kSummed keeps
// the alternative reading in which the RHS sums the chain counts over the
// whole scenario set; available for auditing, not used by the experiments.
enum class DemandForm { kPerScenario, kSummed };

struct BuildOptions {
  ScenarioPolicy scenario_policy = ScenarioPolicy::kSharedIndex;
  DemandForm demand_form = DemandForm::kPerScenario;
  bool bound_reservations_by_capacity = false;
  std::map<NodeId, Rational> node_energy;  // absent node => 0
  std::int64_t joint_scenario_limit = 4096;
};

// Per-link objective price of one wavelength in each phase, split by
// resource. The QKD price folds the transmitter/receiver hardware of one
// chain segment down to a single wavelength (one chain spans
// qkd_wavelengths_per_chain of them); the KM price carries the full
// relay-site hardware of the link.
struct LinkWavelengthPrice {
  Rational qkd_total[3];
  Rational km_total[3];
  // component split (same phase indexing) for ledger reporting
  Rational qkd_tx[3], qkd_rx[3], qkd_ch[3];
  Rational km_km[3], km_si[3], km_md[3], km_ch[3];
};

class DeterministicProgram {
 public:
  DeterministicProgram(Topology topology, std::vector<ChainRequest> requests,
                       CostTable cost_table, PhysicsParams physics,
                       BuildOptions options);

  const Topology& topology() const { return topology_; }
  const std::vector<ChainRequest>& requests() const { return requests_; }
  const CostTable& cost_table() const { return cost_table_; }
  const PhysicsParams& physics() const { return physics_; }
  const BuildOptions& options() const { return options_; }

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  // Objective coefficients; variables without a term have coefficient 0.
  const std::vector<LinearTerm>& objective() const { return objective_; }

  int var_index(VarKind kind, int link, int request, int scenario = -1) const;
  const Rational& objective_coefficient(int var) const;

  // Number of parallel chains request f needs in scenario `rate`, already
  // multiplied by the wavelengths of the resource.
  std::int64_t qkd_demand(int request, int rate) const;
  std::int64_t km_demand(int request, int rate) const;
  // Demand-constraint RHS coefficient under the configured DemandForm
  // (per-scenario value, or the scenario sum in the audit form).
  std::int64_t qkd_demand_rhs(int request, int rate) const;
  std::int64_t km_demand_rhs(int request, int rate) const;

  const LinkWavelengthPrice& link_price(int link) const { return link_prices_[link]; }
  const Rational& node_energy(NodeId n) const;

  const std::vector<int>& nominal_scenarios() const { return nominal_; }
  int shared_scenario_count() const { return shared_scenarios_; }

  std::size_t count_constraints(const std::string& tag) const;

  Rational evaluate_objective(const std::vector<std::int64_t>& assignment) const;
  // Name of the first violated constraint, or empty when feasible.
  std::string check_assignment(const std::vector<std::int64_t>& assignment) const;

 private:
  void index_variables();
  void build_constraints();
  void build_objective();

  Topology topology_;
  std::vector<ChainRequest> requests_;
  CostTable cost_table_;
  PhysicsParams physics_;
  BuildOptions options_;

  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<LinearTerm> objective_;
  std::vector<Rational> objective_by_var_;
  std::vector<LinkWavelengthPrice> link_prices_;
  std::vector<int> nominal_;
  std::vector<std::int64_t> scenario_offset_;  // per request, prefix sums
  int shared_scenarios_ = 1;
  Rational zero_;
};

DeterministicProgram build(Topology topology, std::vector<ChainRequest> requests,
                           CostTable cost_table, PhysicsParams physics,
                           BuildOptions options = {});

// Writes CPLEX-style LP text: Minimize / Subject To / Bounds / Generals /
// Binaries / End, with deterministic ordering. Throws if variable names
// collide.
void export_lp(const DeterministicProgram& p, std::ostream& out);
void export_lp(const DeterministicProgram& p, const std::string& path);

}  // namespace qkdplan

#endif
