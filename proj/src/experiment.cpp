#include "qkdplan/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qkdplan/instancegen.hpp"
#include "qkdplan/rng.hpp"

namespace qkdplan {

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kReservedQkd: return "reserved_qkd";
    case SweepAxis::kReservedKm: return "reserved_km";
    case SweepAxis::kSecretKeyRate: return "secret_key_rate";
    case SweepAxis::kRequestCount: return "request_count";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (topology_path.empty()) throw std::invalid_argument("config: topology missing");
  if (sweep_values.empty())
    throw std::invalid_argument("config: sweep_values missing");
  for (std::size_t i = 1; i < sweep_values.size(); ++i)
    if (sweep_values[i] <= sweep_values[i - 1])
      throw std::invalid_argument("config: sweep_values must be strictly increasing");
  for (std::int64_t v : sweep_values)
    if (v < 0) throw std::invalid_argument("config: negative sweep value");
  const bool randomized = requests_path.empty();
  if (randomized && !seed)
    throw std::invalid_argument("config: seed is mandatory with sampled requests");
  if (randomized && axis != SweepAxis::kRequestCount && request_count <= 0)
    throw std::invalid_argument("config: request_count missing");
  if (randomized && rate_max < rate_min)
    throw std::invalid_argument("config: bad rate range");
  if (solver_k <= 0) throw std::invalid_argument("config: solver_k must be positive");
  physics.validate();
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p{path};
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in, const std::string& origin,
                                         const std::string& base_dir) {
  ExperimentConfig cfg;
  std::optional<Rational> spacing, theta;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv{line};
    auto hash = sv.find('#');
    if (hash != std::string_view::npos) sv = sv.substr(0, hash);
    std::string cleaned{sv};
    for (char& c : cleaned)
      if (c == '=' || c == ',') c = ' ';
    std::istringstream ls{cleaned};
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& what) -> std::runtime_error {
      return std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + what);
    };
    auto value = [&]() {
      std::string v;
      if (!(ls >> v)) throw fail("missing value for " + key);
      return v;
    };
    try {
      if (key == "topology") cfg.topology_path = resolve(base_dir, value());
      else if (key == "cost_table") cfg.cost_table_path = resolve(base_dir, value());
      else if (key == "requests") cfg.requests_path = resolve(base_dir, value());
      else if (key == "request_count") cfg.request_count = std::stoi(value());
      else if (key == "rate_min") cfg.rate_min = std::stoi(value());
      else if (key == "rate_max") cfg.rate_max = std::stoi(value());
      else if (key == "spacing_km") spacing = Rational::from_decimal_string(value());
      else if (key == "theta_km") theta = Rational::from_decimal_string(value());
      else if (key == "chain_rate_kbps")
        cfg.physics.max_rate_at_spacing_kbps = std::stoll(value());
      else if (key == "sweep_axis") {
        std::string v = value();
        if (v == "reserved_qkd") cfg.axis = SweepAxis::kReservedQkd;
        else if (v == "reserved_km") cfg.axis = SweepAxis::kReservedKm;
        else if (v == "secret_key_rate") cfg.axis = SweepAxis::kSecretKeyRate;
        else if (v == "request_count") cfg.axis = SweepAxis::kRequestCount;
        else throw fail("unknown sweep_axis '" + v + "'");
      } else if (key == "sweep_values") {
        std::string v;
        while (ls >> v) cfg.sweep_values.push_back(std::stoll(v));
      } else if (key == "seed") cfg.seed = std::stoull(value());
      else if (key == "solver_k") cfg.solver_k = std::stoi(value());
      else if (key == "solver_budget") cfg.solver_budget = std::stoll(value());
      else if (key == "inner_work_limit") cfg.inner_work_limit = std::stoll(value());
      else if (key == "baseline_mode") cfg.baseline_mode = parse_baseline_mode(value());
      else if (key == "qkd_capacity") cfg.qkd_capacity_override = std::stoi(value());
      else if (key == "km_capacity") cfg.km_capacity_override = std::stoi(value());
      else if (key == "energy_uniform")
        cfg.energy_uniform = Rational::from_decimal_string(value());
      else if (key == "scenario_policy") {
        std::string v = value();
        if (v == "shared") cfg.scenario_policy = ScenarioPolicy::kSharedIndex;
        else if (v == "joint") cfg.scenario_policy = ScenarioPolicy::kJointProduct;
        else throw fail("unknown scenario_policy '" + v + "'");
      } else if (key == "demand_form") {
        std::string v = value();
        if (v == "per_scenario") cfg.demand_form = DemandForm::kPerScenario;
        else if (v == "summed") cfg.demand_form = DemandForm::kSummed;
        else throw fail("unknown demand_form '" + v + "'");
      } else if (key == "strict_reservations") {
        std::string v = value();
        if (v == "true") cfg.strict_reservations = true;
        else if (v == "false") cfg.strict_reservations = false;
        else throw fail("strict_reservations must be true or false");
      } else
        throw fail("unknown key '" + key + "'");
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& e) {
      throw fail(e.what());
    }
  }
  if (spacing && theta)
    throw std::runtime_error(origin + ": give spacing_km or theta_km, not both");
  std::int64_t keep_rate = cfg.physics.max_rate_at_spacing_kbps;
  if (spacing) cfg.physics = PhysicsParams::from_spacing_km(*spacing);
  if (theta) cfg.physics = PhysicsParams::from_receiver_offset_km(*theta);
  cfg.physics.max_rate_at_spacing_kbps = keep_rate;
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in{path};
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return parse_experiment_config(
      in, path, std::filesystem::path(path).parent_path().string());
}

Topology config_topology(const ExperimentConfig& cfg) {
  Topology t = load_topology(cfg.topology_path);
  if (!cfg.qkd_capacity_override && !cfg.km_capacity_override) return t;
  std::vector<Link> links = t.links();
  for (Link& l : links) {
    if (cfg.qkd_capacity_override) l.qkd_capacity = *cfg.qkd_capacity_override;
    if (cfg.km_capacity_override) l.km_capacity = *cfg.km_capacity_override;
  }
  return Topology(t.node_count(), std::move(links));
}

CostTable config_cost_table(const ExperimentConfig& cfg) {
  if (cfg.cost_table_path.empty()) return CostTable{};
  return load_cost_table(cfg.cost_table_path);
}

std::vector<ChainRequest> config_requests(const ExperimentConfig& cfg,
                                          const Topology& t) {
  if (!cfg.requests_path.empty()) return load_requests(cfg.requests_path, t);
  std::mt19937_64 rng{*cfg.seed};
  return sample_uniform_requests(t, cfg.request_count, cfg.rate_min, cfg.rate_max,
                                 rng);
}

BuildOptions config_build_options(const ExperimentConfig& cfg, const Topology& t) {
  BuildOptions opts;
  opts.scenario_policy = cfg.scenario_policy;
  opts.demand_form = cfg.demand_form;
  opts.bound_reservations_by_capacity = cfg.strict_reservations;
  if (!cfg.energy_uniform.is_zero())
    for (NodeId n = 1; n <= t.node_count(); ++n)
      opts.node_energy[n] = cfg.energy_uniform;
  return opts;
}

SolveOptions config_solve_options(const ExperimentConfig& cfg) {
  SolveOptions opts;
  opts.candidates_per_request = cfg.solver_k;
  opts.node_budget = cfg.solver_budget;
  opts.inner_work_limit = cfg.inner_work_limit;
  return opts;
}

namespace {

std::string money(const Rational& r) { return r.to_fixed_string(6); }

std::string render_report(const DeterministicProgram& program,
                          const PlanSolution& sol) {
  std::ostringstream text;
  write_report(program, sol, text);
  return text.str();
}

}  // namespace

CostStructureResult run_cost_structure_sweep(const ExperimentConfig& cfg) {
  if (cfg.axis != SweepAxis::kReservedQkd && cfg.axis != SweepAxis::kReservedKm)
    throw std::invalid_argument("cost-structure sweep needs a reservation axis");
  Topology t = config_topology(cfg);
  std::vector<ChainRequest> requests = config_requests(cfg, t);
  DeterministicProgram program = build(t, requests, config_cost_table(cfg),
                                       cfg.physics, config_build_options(cfg, t));
  SolveOptions solver = config_solve_options(cfg);

  CostStructureResult result;
  PlanSolution unpinned = solve(program, solver);
  if (unpinned.status == SolveStatus::kInfeasible)
    throw std::runtime_error("cost-structure sweep: instance is infeasible");
  result.rows.push_back(CostStructureRow{std::nullopt, unpinned.first_stage_cost,
                                         unpinned.second_stage_cost,
                                         unpinned.total_cost});
  result.reports.push_back(render_report(program, unpinned));
  result.solutions.push_back(unpinned);

  for (std::int64_t pin : cfg.sweep_values) {
    if (pin < 0) throw std::invalid_argument("reservation pin below zero");
    SolveOptions pinned = solver;
    if (cfg.axis == SweepAxis::kReservedQkd)
      pinned.pin_qkd_reservation = static_cast<int>(pin);
    else
      pinned.pin_km_reservation = static_cast<int>(pin);
    PlanSolution sol = solve(program, pinned);
    result.rows.push_back(CostStructureRow{pin, sol.first_stage_cost,
                                           sol.second_stage_cost, sol.total_cost});
    result.reports.push_back(render_report(program, sol));
    result.solutions.push_back(std::move(sol));
  }

  std::ostringstream csv;
  csv << "sweep_value,first_stage_cost,second_stage_cost,total_cost\n";
  for (const CostStructureRow& row : result.rows) {
    if (row.pin) csv << *row.pin;
    csv << "," << money(row.first_stage) << "," << money(row.second_stage) << ","
        << money(row.total) << "\n";
  }
  result.csv = csv.str();
  return result;
}

UtilizationResult run_utilization_sweep(const ExperimentConfig& cfg) {
  if (cfg.axis != SweepAxis::kSecretKeyRate)
    throw std::invalid_argument("utilization sweep needs the secret_key_rate axis");
  Topology t = config_topology(cfg);
  std::vector<ChainRequest> endpoints = config_requests(cfg, t);
  SolveOptions solver = config_solve_options(cfg);

  UtilizationResult result;
  for (std::int64_t rate : cfg.sweep_values) {
    std::vector<ChainRequest> requests;
    for (const ChainRequest& r : endpoints)
      requests.push_back(
          point_request(r.id, r.source, r.destination, static_cast<int>(rate)));
    DeterministicProgram program = build(t, requests, config_cost_table(cfg),
                                         cfg.physics, config_build_options(cfg, t));
    PlanSolution sol = solve(program, solver);
    if (sol.status == SolveStatus::kInfeasible)
      throw std::runtime_error("utilization sweep: instance is infeasible");
    UtilizationRow row;
    row.rate = rate;
    row.reserved_qkd = total_reserved(sol.qkd);
    row.reserved_km = total_reserved(sol.km);
    row.on_demand_qkd = total_on_demand_at_top(sol.qkd, program);
    row.on_demand_km = total_on_demand_at_top(sol.km, program);
    result.rows.push_back(row);
    result.reports.push_back(render_report(program, sol));
    result.solutions.push_back(std::move(sol));
  }

  std::ostringstream csv;
  csv << "secret_key_rate,reserved_qkd,reserved_km,on_demand_qkd,on_demand_km\n";
  for (const UtilizationRow& row : result.rows)
    csv << row.rate << "," << row.reserved_qkd << "," << row.reserved_km << ","
        << row.on_demand_qkd << "," << row.on_demand_km << "\n";
  result.csv = csv.str();
  return result;
}

BaselineComparisonResult run_baseline_comparison(const ExperimentConfig& cfg) {
  if (cfg.axis != SweepAxis::kRequestCount)
    throw std::invalid_argument("baseline comparison needs the request_count axis");
  if (!cfg.seed) throw std::invalid_argument("baseline comparison needs a seed");
  Topology t = config_topology(cfg);
  SolveOptions solver = config_solve_options(cfg);

  BaselineComparisonResult result;
  Rational improvement_sum;
  std::int64_t improvement_n = 0;
  for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
    const std::int64_t count = cfg.sweep_values[i];
    std::mt19937_64 rng{*cfg.seed + 1000003ull * i};
    std::vector<ChainRequest> requests = sample_uniform_requests(
        t, static_cast<int>(count), cfg.rate_min, cfg.rate_max, rng);
    DeterministicProgram program = build(t, requests, config_cost_table(cfg),
                                         cfg.physics, config_build_options(cfg, t));
    PlanSolution sp = solve(program, solver);
    if (sp.status == SolveStatus::kInfeasible)
      throw std::runtime_error("baseline comparison: instance is infeasible");
    PlanSolution base = baseline_plan(program, cfg.baseline_mode);

    BaselineComparisonRow row;
    row.request_count = count;
    row.sp_cost = sp.total_cost;
    row.baseline_cost = base.total_cost;
    if (!(base.total_cost == Rational(0))) {
      row.improvement_pct =
          (base.total_cost - sp.total_cost) / base.total_cost * Rational(100);
      improvement_sum += *row.improvement_pct;
      ++improvement_n;
    }
    result.rows.push_back(row);
    result.sp_reports.push_back(render_report(program, sp));
    result.baseline_reports.push_back(render_report(program, base));
    result.sp_solutions.push_back(std::move(sp));
    result.baseline_solutions.push_back(std::move(base));
  }
  if (improvement_n > 0)
    result.mean_improvement_pct = improvement_sum / Rational(improvement_n);

  std::ostringstream csv;
  csv << "request_count,sp_cost,baseline_cost,improvement_pct\n";
  for (const BaselineComparisonRow& row : result.rows) {
    csv << row.request_count << "," << money(row.sp_cost) << ","
        << money(row.baseline_cost) << ",";
    if (row.improvement_pct) csv << row.improvement_pct->to_fixed_string(6);
    csv << "\n";
  }
  result.csv = csv.str();
  return result;
}

}  // namespace qkdplan
