//===--- linleak_cli.cpp - command-line harness ------------------------------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// Subcommands:
//
//   fig3    success-rate grid at fixed total budget per curve
//   fig4    success-rate grid at fixed per-query budget per curve
//   attack  one membership-inference run against a dataset file
//   rate    evaluate the closed-form success rate
//
// Exit codes: attack reports its verdict as 0 = Out, 1 = In,
// 2 = In-via-abort; every subcommand uses 64 for configuration errors and
// 65 for data-format errors.
//
//===----------------------------------------------------------------------===//

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linleak/linleak.hpp"

namespace {

constexpr int kExitOut = 0;
constexpr int kExitIn = 1;
constexpr int kExitInViaAbort = 2;
constexpr int kExitConfig = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

struct GridOptions {
  double budget_min = 0.0;
  double budget_max = 0.0;
  int budget_steps = 10;
  int m_min = 4;
  int m_max = 29;
  int trials = 10000;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string svg_path;
  std::string s_divisor = "m";
};

void add_grid_options(CLI::App* cmd, GridOptions* opts, double default_min,
                      double default_max) {
  opts->budget_min = default_min;
  opts->budget_max = default_max;
  cmd->add_option("--budget-min", opts->budget_min, "Smallest budget value")
      ->capture_default_str();
  cmd->add_option("--budget-max", opts->budget_max, "Largest budget value")
      ->capture_default_str();
  cmd->add_option("--budget-steps", opts->budget_steps,
                  "Number of evenly spaced budget values")
      ->capture_default_str();
  cmd->add_option("--m-min", opts->m_min, "Smallest sample count")
      ->capture_default_str();
  cmd->add_option("--m-max", opts->m_max, "Largest sample count")
      ->capture_default_str();
  cmd->add_option("--trials", opts->trials, "Monte Carlo trials per grid cell")
      ->capture_default_str();
  cmd->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
  cmd->add_option("--out", opts->out_path, "CSV output path")->required();
  cmd->add_option("--svg", opts->svg_path, "Optional SVG chart path");
  cmd->add_option("--s-divisor", opts->s_divisor,
                  "Sample-spread divisor convention for the simulated t-test")
      ->check(CLI::IsMember({"m", "m-1"}))
      ->capture_default_str();
}

int run_grid_command(const std::string& mode, const GridOptions& opts) {
  linleak::GridSpec spec;
  spec.mode = mode;
  spec.budget_min = opts.budget_min;
  spec.budget_max = opts.budget_max;
  spec.budget_steps = opts.budget_steps;
  spec.m_min = opts.m_min;
  spec.m_max = opts.m_max;
  spec.trials = opts.trials;
  spec.seed = opts.seed;
  spec.s_divisor = opts.s_divisor == "m-1" ? linleak::VarianceDivisor::MMinus1
                                           : linleak::VarianceDivisor::M;
  const std::vector<linleak::ExperimentRow> rows = linleak::run_grid(spec);
  linleak::write_csv_file(rows, opts.out_path);
  if (!opts.svg_path.empty()) linleak::render_svg_file(rows, opts.svg_path);
  std::printf("%s: %zu cells, wrote %s\n", mode.c_str(), rows.size(),
              opts.out_path.c_str());
  return 0;
}

struct AttackOptions {
  std::string data_path;
  std::string target_id;
  std::vector<std::string> known_ids;
  int m = 0;
  double eps_total = 0.0;
  double alpha = 0.05;
  double abort_threshold = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
};

const char* decision_name(linleak::Decision d) {
  switch (d) {
    case linleak::Decision::In: return "In";
    case linleak::Decision::Out: return "Out";
    case linleak::Decision::InViaAbort: return "InViaAbort";
  }
  return "?";
}

const char* case_description(int c) {
  switch (c) {
    case 1: return "not enough background, target absent";
    case 2: return "not enough background, target present";
    case 3: return "enough background, target absent";
    case 4: return "enough background, target present";
  }
  return "?";
}

int run_attack_command(const AttackOptions& opts) {
  const linleak::Dataset dataset = linleak::load_dataset_file(opts.data_path);

  linleak::AttackConfig cfg;
  cfg.m = opts.m;
  cfg.eps_total = opts.eps_total;
  cfg.alpha = opts.alpha;
  cfg.target_id = opts.target_id;
  cfg.known_ids = opts.known_ids;
  cfg.validate();

  // The attacker's local copies come from the protected dataset itself:
  // background knowledge is, by definition, records of it.
  linleak::Dataset known_values;
  for (const auto& id : cfg.known_ids) {
    if (!dataset.contains(id))
      throw std::invalid_argument("known id not present in dataset: " + id);
    known_values.insert({id, dataset.value_of(id)});
  }
  if (cfg.known_ids.size() < static_cast<std::size_t>(cfg.m))
    throw std::invalid_argument("need at least m known ids");

  linleak::Mechanism mechanism(dataset, opts.abort_threshold, opts.seed);
  const linleak::LinearQuery query = linleak::LinearQuery::count();
  const linleak::Verdict v = linleak::attack(mechanism, query, cfg, known_values);

  const bool x_in_d = dataset.contains(cfg.target_id);
  const bool enough_background =
      std::isfinite(opts.abort_threshold) && opts.eps_total > opts.abort_threshold;
  const int fig2_case = linleak::classify_case(enough_background, x_in_d);

  std::printf("verdict: %s\n", decision_name(v.decision));
  std::printf("case: %d (%s)\n", fig2_case, case_description(fig2_case));
  if (v.t_test) {
    std::printf("T: %.6f\n", v.t_test->t_stat);
    std::printf("p: %.6f\n", v.t_test->p_value);
  } else {
    std::printf("T: n/a\np: n/a\n");
  }
  std::printf("samples:");
  for (double s : v.samples) std::printf(" %.6f", s);
  std::printf("\n");
  std::printf("attacker-view budget: %.6f\n", v.attacker_budget);
  std::printf("mechanism-view budget: %.6f\n", v.mechanism_budget);

  nlohmann::json record;
  record["verdict"] = decision_name(v.decision);
  record["case"] = fig2_case;
  if (v.t_test) {
    record["t"] = v.t_test->t_stat;
    record["p"] = v.t_test->p_value;
  } else {
    record["t"] = nullptr;
    record["p"] = nullptr;
  }
  record["samples"] = v.samples;
  record["attacker_budget"] = v.attacker_budget;
  record["mechanism_budget"] = v.mechanism_budget;
  record["degenerate"] = v.degenerate;
  std::printf("%s\n", record.dump().c_str());

  switch (v.decision) {
    case linleak::Decision::Out: return kExitOut;
    case linleak::Decision::In: return kExitIn;
    case linleak::Decision::InViaAbort: return kExitInViaAbort;
  }
  return kExitInternal;
}

struct RateOptions {
  std::string mode;
  int m = 0;
  double mu0 = 0.0;
  double mu1 = 1.0;
  double s = 0.0;
  double eps = 0.0;
  double eps_total = 0.0;
};

int run_rate_command(const RateOptions& opts) {
  linleak::RateSpec spec;
  spec.m = opts.m;
  if (opts.mode == "exact") {
    spec.mode = linleak::RateSpec::Mode::Exact;
    spec.mu0 = opts.mu0;
    spec.mu1 = opts.mu1;
    spec.s = opts.s;
  } else if (opts.mode == "per-query") {
    spec.mode = linleak::RateSpec::Mode::PerQuery;
    spec.eps = opts.eps;
  } else {
    spec.mode = linleak::RateSpec::Mode::Total;
    spec.eps_total = opts.eps_total;
  }
  std::printf("%.6f\n", linleak::evaluate_rate(spec));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "linleak: how linear queries leak membership through a Laplace "
      "mechanism's budget accounting"};
  app.require_subcommand(1);

  GridOptions fig3_opts;
  CLI::App* fig3 = app.add_subcommand(
      "fig3", "Success-rate grid over m at fixed total budgets");
  add_grid_options(fig3, &fig3_opts, 0.1, 1.0);

  GridOptions fig4_opts;
  CLI::App* fig4 = app.add_subcommand(
      "fig4", "Success-rate grid over m at fixed per-query budgets");
  add_grid_options(fig4, &fig4_opts, 0.01, 0.1);

  AttackOptions attack_opts;
  CLI::App* attack_cmd =
      app.add_subcommand("attack", "Run one membership-inference attack");
  attack_cmd->add_option("--data", attack_opts.data_path,
                         "Dataset file (JSON lines: {\"id\", \"value\"})")
      ->required();
  attack_cmd->add_option("--target", attack_opts.target_id,
                         "Record id whose membership is in question")
      ->required();
  attack_cmd
      ->add_option("--known", attack_opts.known_ids,
                   "Comma-separated ids the attacker already knows")
      ->required()
      ->delimiter(',');
  attack_cmd->add_option("--m", attack_opts.m, "Number of samples to harvest")
      ->required();
  attack_cmd
      ->add_option("--eps-total", attack_opts.eps_total,
                   "Attacker-perspective total budget")
      ->required();
  attack_cmd->add_option("--alpha", attack_opts.alpha, "t-test level")
      ->capture_default_str();
  attack_cmd->add_option("--abort-threshold", attack_opts.abort_threshold,
                         "Mechanism abort threshold (default: none)");
  attack_cmd->add_option("--seed", attack_opts.seed, "Mechanism noise seed")
      ->capture_default_str();

  RateOptions rate_opts;
  CLI::App* rate =
      app.add_subcommand("rate", "Evaluate the closed-form success rate");
  rate->add_option("--mode", rate_opts.mode, "exact | per-query | total")
      ->check(CLI::IsMember({"exact", "per-query", "total"}))
      ->required();
  rate->add_option("--m", rate_opts.m, "Number of samples")->required();
  rate->add_option("--mu0", rate_opts.mu0, "Null mean (exact mode)")
      ->capture_default_str();
  rate->add_option("--mu1", rate_opts.mu1, "Alternative mean (exact mode)")
      ->capture_default_str();
  rate->add_option("--S", rate_opts.s, "Sample spread (exact mode)");
  rate->add_option("--eps", rate_opts.eps, "Per-query budget (per-query mode)");
  rate->add_option("--eps-total", rate_opts.eps_total,
                   "Total budget (total mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (fig3->parsed()) return run_grid_command("fig3", fig3_opts);
    if (fig4->parsed()) return run_grid_command("fig4", fig4_opts);
    if (attack_cmd->parsed()) return run_attack_command(attack_opts);
    if (rate->parsed()) return run_rate_command(rate_opts);
    std::fprintf(stderr, "error: no subcommand\n");
    return kExitConfig;
  } catch (const linleak::DataFormatError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const linleak::InsufficientKnowledgeError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
}
