#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "qkdplan/baseline.hpp"
#include "qkdplan/experiment.hpp"
#include "qkdplan/instancegen.hpp"
#include "qkdplan/program.hpp"
#include "qkdplan/solver.hpp"

namespace {

using namespace qkdplan;

struct InstanceArgs {
  std::string topology_path;
  std::string requests_path;
  std::string cost_table_path;
  double spacing_km = 160.0;
  std::int64_t chain_rate_kbps = 1;
  std::string scenario_policy = "shared";
  std::string demand_form = "per_scenario";
  bool strict_reservations = false;
  double energy_uniform = 0.0;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args) {
  cmd->add_option("--topology", args.topology_path, "edge-list topology file")
      ->required();
  cmd->add_option("--requests", args.requests_path, "chain request file")->required();
  cmd->add_option("--cost-table", args.cost_table_path,
                  "price file (default: built-in reference prices)");
  cmd->add_option("--spacing-km", args.spacing_km,
                  "transmitter spacing in km (default 160)");
  cmd->add_option("--chain-rate-kbps", args.chain_rate_kbps,
                  "secret-key rate one chain delivers (default 1)");
  cmd->add_option("--scenario-policy", args.scenario_policy, "shared|joint");
  cmd->add_option("--demand-form", args.demand_form, "per_scenario|summed");
  cmd->add_flag("--strict-reservations", args.strict_reservations,
                "also cap reservations by link capacity");
  cmd->add_option("--energy-uniform", args.energy_uniform,
                  "per-node energy weight on route links");
}

DeterministicProgram make_program(const InstanceArgs& args) {
  Topology t = load_topology(args.topology_path);
  std::vector<ChainRequest> requests = load_requests(args.requests_path, t);
  CostTable table = args.cost_table_path.empty()
                        ? CostTable{}
                        : load_cost_table(args.cost_table_path);
  PhysicsParams physics = PhysicsParams::from_spacing_km(
      Rational::from_decimal_string(std::to_string(args.spacing_km)));
  physics.max_rate_at_spacing_kbps = args.chain_rate_kbps;
  BuildOptions opts;
  if (args.scenario_policy == "joint")
    opts.scenario_policy = ScenarioPolicy::kJointProduct;
  else if (args.scenario_policy != "shared")
    throw std::invalid_argument("bad --scenario-policy");
  if (args.demand_form == "summed")
    opts.demand_form = DemandForm::kSummed;
  else if (args.demand_form != "per_scenario")
    throw std::invalid_argument("bad --demand-form");
  opts.bound_reservations_by_capacity = args.strict_reservations;
  if (args.energy_uniform != 0.0)
    for (NodeId n = 1; n <= t.node_count(); ++n)
      opts.node_energy[n] =
          Rational::from_decimal_string(std::to_string(args.energy_uniform));
  return build(t, requests, table, physics, opts);
}

int exit_code(const PlanSolution& sol) {
  switch (sol.status) {
    case SolveStatus::kOptimal: return 0;
    case SolveStatus::kIncumbent: return 2;
    case SolveStatus::kInfeasible: return 3;
  }
  return 1;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out{path, std::ios::binary};
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_plan(const InstanceArgs& args, int k, std::int64_t budget,
             const std::string& baseline, const std::string& out_path) {
  DeterministicProgram program = make_program(args);
  PlanSolution sol;
  if (baseline.empty()) {
    SolveOptions opts;
    opts.candidates_per_request = k;
    opts.node_budget = budget;
    sol = solve(program, opts);
  } else {
    sol = baseline_plan(program, parse_baseline_mode(baseline));
  }
  std::ostringstream report;
  if (!baseline.empty()) report << "planner: baseline " << baseline << "\n";
  write_report(program, sol, report);
  if (out_path.empty())
    std::cout << report.str();
  else
    write_text(out_path, report.str());
  return exit_code(sol);
}

int run_sweep(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override, bool dump_solutions) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (seed_override) {
    cfg.seed = seed_override;
    cfg.validate();
  }
  std::filesystem::create_directories(out_dir);
  auto dump = [&](const std::vector<std::string>& reports, const std::string& prefix) {
    if (!dump_solutions) return;
    for (std::size_t i = 0; i < reports.size(); ++i)
      write_text(out_dir + "/" + prefix + "_" + std::to_string(i) + ".txt",
                 reports[i]);
  };
  std::string csv_path = out_dir + "/" + sweep_axis_name(cfg.axis) + ".csv";
  switch (cfg.axis) {
    case SweepAxis::kReservedQkd:
    case SweepAxis::kReservedKm: {
      CostStructureResult result = run_cost_structure_sweep(cfg);
      write_text(csv_path, result.csv);
      dump(result.reports, sweep_axis_name(cfg.axis));
      break;
    }
    case SweepAxis::kSecretKeyRate: {
      UtilizationResult result = run_utilization_sweep(cfg);
      write_text(csv_path, result.csv);
      dump(result.reports, sweep_axis_name(cfg.axis));
      break;
    }
    case SweepAxis::kRequestCount: {
      BaselineComparisonResult result = run_baseline_comparison(cfg);
      write_text(csv_path, result.csv);
      dump(result.sp_reports, "sp");
      dump(result.baseline_reports, "baseline");
      std::cout << "baseline_mode: " << baseline_mode_name(cfg.baseline_mode)
                << "\n";
      if (result.mean_improvement_pct)
        std::cout << "mean_improvement_pct: "
                  << result.mean_improvement_pct->to_fixed_string(6) << "\n";
      break;
    }
  }
  std::cout << "wrote " << csv_path << "\n";
  return 0;
}

int run_export_lp(const InstanceArgs& args, const std::string& out_path) {
  DeterministicProgram program = make_program(args);
  export_lp(program, out_path);
  std::cout << "wrote " << out_path << " (" << program.variables().size()
            << " variables, " << program.constraints().size() << " constraints)\n";
  return 0;
}

int run_validate(int instances, std::uint64_t seed, bool verbose) {
  std::mt19937_64 rng{seed};
  int mismatches = 0;
  for (int i = 0; i < instances; ++i) {
    TinyInstance inst = random_tiny_instance(rng);
    DeterministicProgram program = build(inst.topology, inst.requests,
                                         inst.cost_table, inst.physics, inst.options);
    OracleResult oracle = brute_force_oracle(program, inst.oracle_bound);
    SolveOptions opts;
    opts.candidates_per_request = 32;
    PlanSolution sol = solve(program, opts);
    bool solver_feasible = sol.status != SolveStatus::kInfeasible;
    bool agree = solver_feasible == oracle.feasible &&
                 (!oracle.feasible || sol.total_cost == oracle.objective);
    if (!agree) ++mismatches;
    if (verbose || !agree)
      std::cout << "instance " << i << ": solver="
                << (solver_feasible ? sol.total_cost.to_fixed_string(6)
                                    : "infeasible")
                << " oracle="
                << (oracle.feasible ? oracle.objective.to_fixed_string(6)
                                    : "infeasible")
                << (agree ? " ok" : " MISMATCH") << "\n";
  }
  std::cout << instances << " instances, " << mismatches << " mismatches\n";
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-stage QKD/KM wavelength planning"};
  app.require_subcommand(1);

  InstanceArgs plan_args;
  int plan_k = 8;
  std::int64_t plan_budget = 10'000'000;
  std::string plan_baseline, plan_out;
  CLI::App* plan_cmd = app.add_subcommand("plan", "solve one instance");
  add_instance_options(plan_cmd, plan_args);
  plan_cmd->add_option("--k", plan_k, "candidate routes per request (default 8)");
  plan_cmd->add_option("--budget", plan_budget, "branch-and-bound node budget");
  plan_cmd->add_option("--baseline", plan_baseline,
                       "run the baseline planner instead: on_demand_only|reserve_max");
  plan_cmd->add_option("--out", plan_out, "write the report here instead of stdout");

  std::string sweep_config, sweep_out_dir = "out";
  std::uint64_t sweep_seed = 0;
  bool sweep_dump = false;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a configured experiment");
  sweep_cmd->add_option("--config", sweep_config, "experiment config file")
      ->required();
  sweep_cmd->add_option("--out-dir", sweep_out_dir, "output directory (default out)");
  CLI::Option* sweep_seed_opt =
      sweep_cmd->add_option("--seed", sweep_seed, "override the config seed");
  sweep_cmd->add_flag("--dump-solutions", sweep_dump,
                      "write per-row solution reports next to the CSV");

  InstanceArgs lp_args;
  std::string lp_out;
  CLI::App* lp_cmd = app.add_subcommand("export-lp", "write the program in LP format");
  add_instance_options(lp_cmd, lp_args);
  lp_cmd->add_option("--out", lp_out, "output LP file")->required();

  int validate_instances = 100;
  std::uint64_t validate_seed = 1;
  bool validate_verbose = false;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "cross-check the solver against the oracle");
  validate_cmd->add_option("--instances", validate_instances,
                           "number of random tiny instances (default 100)");
  validate_cmd->add_option("--seed", validate_seed, "generator seed (default 1)");
  validate_cmd->add_flag("--verbose", validate_verbose, "print every instance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan_cmd)
      return run_plan(plan_args, plan_k, plan_budget, plan_baseline, plan_out);
    if (*sweep_cmd)
      return run_sweep(sweep_config, sweep_out_dir,
                       sweep_seed_opt->count() > 0
                           ? std::optional<std::uint64_t>{sweep_seed}
                           : std::nullopt,
                       sweep_dump);
    if (*lp_cmd) return run_export_lp(lp_args, lp_out);
    if (*validate_cmd)
      return run_validate(validate_instances, validate_seed, validate_verbose);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
