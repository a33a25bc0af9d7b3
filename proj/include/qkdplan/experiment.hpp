#ifndef QKDPLAN_EXPERIMENT_HPP
#define QKDPLAN_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qkdplan/baseline.hpp"
#include "qkdplan/solver.hpp"

namespace qkdplan {

enum class SweepAxis { kReservedQkd, kReservedKm, kSecretKeyRate, kRequestCount };
const char* sweep_axis_name(SweepAxis axis);

// Parsed experiment description; see the bundled config files for the
// key-value syntax. Paths are resolved against the config file's directory.
struct ExperimentConfig {
  std::string topology_path;
  std::string cost_table_path;  // empty: reference prices
  std::string requests_path;    // empty: sampled request set
  int request_count = 0;
  int rate_min = 0;
  int rate_max = 0;
  PhysicsParams physics;
  SweepAxis axis = SweepAxis::kRequestCount;
  std::vector<std::int64_t> sweep_values;
  std::optional<std::uint64_t> seed;
  int solver_k = 8;
  std::int64_t solver_budget = 10'000'000;
  std::int64_t inner_work_limit = 200'000'000;
  BaselineMode baseline_mode = BaselineMode::kOnDemandOnly;
  std::optional<int> qkd_capacity_override;
  std::optional<int> km_capacity_override;
  Rational energy_uniform;
  ScenarioPolicy scenario_policy = ScenarioPolicy::kSharedIndex;
  DemandForm demand_form = DemandForm::kPerScenario;
  bool strict_reservations = false;

  void validate() const;
};

ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(std::istream& in, const std::string& origin,
                                         const std::string& base_dir);

// Loads the topology named by the config and applies capacity overrides.
Topology config_topology(const ExperimentConfig& cfg);
CostTable config_cost_table(const ExperimentConfig& cfg);
// File-backed or seed-sampled request set.
std::vector<ChainRequest> config_requests(const ExperimentConfig& cfg,
                                          const Topology& t);
BuildOptions config_build_options(const ExperimentConfig& cfg, const Topology& t);
SolveOptions config_solve_options(const ExperimentConfig& cfg);

struct CostStructureRow {
  std::optional<std::int64_t> pin;  // empty: unpinned reference row
  Rational first_stage;
  Rational second_stage;
  Rational total;
};

struct CostStructureResult {
  std::vector<CostStructureRow> rows;       // reference row first
  std::vector<PlanSolution> solutions;      // aligned with rows
  std::vector<std::string> reports;         // rendered solution reports
  std::string csv;
};

// Reservation sweep: the swept resource's reservation is forced to the pin
// value on every route link of every request (the other resource stays
// free); the unpinned optimum is emitted as a reference row.
CostStructureResult run_cost_structure_sweep(const ExperimentConfig& cfg);

struct UtilizationRow {
  std::int64_t rate = 0;
  std::int64_t reserved_qkd = 0;
  std::int64_t reserved_km = 0;
  std::int64_t on_demand_qkd = 0;  // at the realized (top) scenario
  std::int64_t on_demand_km = 0;
};

struct UtilizationResult {
  std::vector<UtilizationRow> rows;
  std::vector<PlanSolution> solutions;
  std::vector<std::string> reports;
  std::string csv;
};

// Wavelengths by phase under deterministic demand fixed to each sweep rate.
UtilizationResult run_utilization_sweep(const ExperimentConfig& cfg);

struct BaselineComparisonRow {
  std::int64_t request_count = 0;
  Rational sp_cost;
  Rational baseline_cost;
  std::optional<Rational> improvement_pct;  // empty when baseline cost is 0
};

struct BaselineComparisonResult {
  std::vector<BaselineComparisonRow> rows;
  std::vector<PlanSolution> sp_solutions;
  std::vector<PlanSolution> baseline_solutions;
  std::vector<std::string> sp_reports;
  std::vector<std::string> baseline_reports;
  std::optional<Rational> mean_improvement_pct;
  std::string csv;
};

// Both planners on identical seeded instances per request count.
BaselineComparisonResult run_baseline_comparison(const ExperimentConfig& cfg);

}  // namespace qkdplan

#endif
