#include "rtct/edf.hpp"
#include "rtct/experiment.hpp"
#include "rtct/fp.hpp"
#include "rtct/lp.hpp"
#include "rtct/model.hpp"
#include "rtct/region.hpp"
#include "rtct/sim.hpp"
#include "rtct/task_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace rtct;

constexpr int kExitSchedulable = 0;
constexpr int kExitUnschedulable = 1;
constexpr int kExitUsage = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Policy parse_policy(const std::string& name) {
  if (name == "fp") return Policy::FixedPriority;
  if (name == "edf") return Policy::Edf;
  throw CliError("unknown policy '" + name + "' (expected fp or edf)");
}

PointSource parse_points(const std::string& name) {
  if (name == "lehoczky") return PointSource::Lehoczky;
  if (name == "reduced") return PointSource::Reduced;
  throw CliError("unknown point source '" + name + "' (expected lehoczky or reduced)");
}

std::vector<Rational> parse_weights(const std::string& text, std::size_t n) {
  std::vector<Rational> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) w.push_back(Rational::parse(item));
  if (w.size() != n)
    throw CliError("expected " + std::to_string(n) + " weights, got " + std::to_string(w.size()));
  return w;
}

TaskSet load_checked(const std::string& path, const std::string& model_override) {
  TaskSet ts = load_task_set(path);
  if (!model_override.empty()) {
    DeadlineModel model = model_override == "arbitrary" ? DeadlineModel::Arbitrary
                                                        : DeadlineModel::Constrained;
    if (model_override != "arbitrary" && model_override != "constrained")
      throw CliError("unknown deadline model '" + model_override + "'");
    ts = TaskSet(ts.tasks(), model);
  }
  ValidationReport report = validate(ts);
  if (!report.ok) {
    std::string message = "invalid task set:";
    for (const std::string& issue : report.issues) message += "\n  " + issue;
    throw CliError(message);
  }
  return ts;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CliError("cannot write to '" + path + "'");
  return out;
}

std::string exec_str(const ExecVector& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += c[i].str();
  }
  return s + ")";
}

int cmd_check(const TaskSet& ts, Policy policy, PointSource points) {
  ExecVector c = wcet_vector(ts);
  if (policy == Policy::Edf) {
    EdfVerdict v = edf_schedulable(ts, c);
    if (v.schedulable) {
      std::cout << "schedulable under EDF\n";
      return kExitSchedulable;
    }
    std::cout << "not schedulable under EDF: demand exceeds capacity at t="
              << v.violated_instant->str()
              << (v.violated_instant->sign() == 0 ? " (utilization above 1)" : "") << "\n";
    return kExitUnschedulable;
  }
  if (ts.deadline_model() == DeadlineModel::Arbitrary) {
    FpArbitraryVerdict v = fp_schedulable_arbitrary(ts, c);
    if (v.schedulable) {
      std::cout << "schedulable under FP (arbitrary deadlines)\n";
      return kExitSchedulable;
    }
    if (v.failure)
      std::cout << "not schedulable under FP: task " << v.failure->task + 1 << ", job "
                << v.failure->job << " misses its deadline\n";
    else
      std::cout << "not schedulable under FP: total utilization above 1\n";
    return kExitUnschedulable;
  }
  FpVerdict v = fp_schedulable(ts, c, points);
  if (v.schedulable) {
    std::cout << "schedulable under FP\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (v.witness[i])
        std::cout << "  task " << i + 1 << ": certified at t=" << v.witness[i]->str() << "\n";
    return kExitSchedulable;
  }
  std::cout << "not schedulable under FP: task " << *v.failing_task + 1
            << " has no certifying point\n";
  return kExitUnschedulable;
}

int cmd_region(const TaskSet& ts, Policy policy, PointSource points, const std::string& out,
               const std::string& svg) {
  auto dump = [&](const auto& region) {
    if (out.empty()) {
      write_region_csv(region, std::cout);
    } else {
      std::ofstream os = open_out(out);
      write_region_csv(region, os);
    }
    if (!svg.empty()) {
      std::ofstream os = open_out(svg);
      write_region_svg(region, os);
    }
  };
  if (policy == Policy::Edf)
    dump(edf_region(ts));
  else
    dump(fp_region(ts, points));
  return kExitSchedulable;
}

int cmd_minimize(const TaskSet& ts, const std::string& out) {
  MinimalDeadlines m = minimal_deadlines(ts);
  for (std::size_t i = 0; i < m.instants.size(); ++i) {
    if (i) std::cout << ' ';
    std::cout << m.instants[i].str();
  }
  std::cout << "\n";
  std::cerr << m.instants.size() << " of " << deadline_set(ts).instants.size()
            << " constraints retained (horizon " << m.horizon.str() << ")\n";
  if (!out.empty()) {
    std::ofstream os = open_out(out);
    write_region_csv(Polytope{ts.size(), m.rows}, os);
  }
  return kExitSchedulable;
}

int cmd_optimize(const TaskSet& ts, Policy policy, PointSource points,
                 const std::string& weights_text) {
  std::vector<Rational> w = parse_weights(weights_text, ts.size());
  LpOutcome outcome;
  std::vector<Rational> selected;
  if (policy == Policy::Edf) {
    outcome = max_reward_edf(ts, w);
  } else {
    FpOptimum opt = max_reward_fp(ts, w, points);
    outcome = std::move(opt.outcome);
    selected = std::move(opt.selected_points);
  }
  if (outcome.status != LpStatus::Optimal) throw CliError("optimization did not converge");
  std::cout << "optimum " << outcome.optimum->str() << " at C=" << exec_str(*outcome.argmax)
            << "\n";
  if (!selected.empty()) {
    std::cout << "selected points:";
    for (const Rational& t : selected) std::cout << ' ' << t.str();
    std::cout << "\n";
  }
  if (!outcome.binding_rows.empty()) {
    std::cout << "binding rows:";
    for (const std::string& label : outcome.binding_rows) std::cout << "  [" << label << "]";
    std::cout << "\n";
  }
  return kExitSchedulable;
}

int cmd_simulate(const TaskSet& ts, Policy policy, const std::string& horizon_text,
                 const std::string& out) {
  ExecVector c = wcet_vector(ts);
  Rational horizon =
      horizon_text.empty() ? default_horizon(ts, policy) : Rational::parse(horizon_text);
  Trace trace = simulate(ts, c, policy, horizon);
  if (!out.empty()) {
    std::ofstream os = open_out(out);
    write_trace_csv(trace, os);
  }
  ResponseTimes rt = response_times(trace, ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (rt.worst[i])
      std::cout << "task " << i + 1 << ": worst response " << rt.worst[i]->str() << "\n";
  if (!rt.unfinished.empty())
    std::cout << rt.unfinished.size() << " job(s) unfinished at the horizon\n";
  if (trace.first_miss) {
    std::cout << "deadline miss: task " << trace.first_miss->task + 1 << ", job "
              << trace.first_miss->job << " due at " << trace.first_miss->deadline.str();
    if (trace.first_miss->completion)
      std::cout << ", completed at " << trace.first_miss->completion->str();
    std::cout << "\n";
    return kExitUnschedulable;
  }
  std::cout << "no deadline miss in [0, " << horizon.str() << "]\n";
  return kExitSchedulable;
}

int cmd_experiment(const ExperimentConfig& cfg, const std::string& rule, bool serial,
                   const std::string& out) {
  ExperimentConfig config = cfg;
  if (rule == "equal_T")
    config.deadline_rule = DeadlineRule::EqualT;
  else if (rule == "uniform_1_to_T")
    config.deadline_rule = DeadlineRule::UniformOneToT;
  else
    throw CliError("unknown deadline rule '" + rule + "'");

  std::vector<ExperimentRecord> records = run_experiment(config, !serial);
  std::ofstream os = open_out(out);
  write_experiment_csv(config, records, os);

  auto buckets = hyperperiod_envelope(records);
  double fitted = fitted_log_coefficient(records);
  std::string envelope_path = out + ".envelope.csv";
  std::ofstream env = open_out(envelope_path);
  write_envelope_csv(buckets, fitted, env);

  std::cout << records.size() << " instances -> " << out << "\n";
  std::cout << "envelope (" << buckets.size() << " buckets) -> " << envelope_path << "\n";
  char fitted_text[64];
  std::snprintf(fitted_text, sizeof fitted_text, "%.6f", fitted);
  std::cout << "fitted c with |D_min| <= c*log2(H): " << fitted_text << "\n";
  return kExitSchedulable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact schedulability analysis and execution-time optimization for FP/EDF"};
  app.require_subcommand(1);

  std::string file, policy_name = "fp", points_name = "lehoczky", model_override;
  std::string out, svg, weights, horizon;

  auto add_file = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "task-set JSON file")->required();
    cmd->add_option("--deadline-model", model_override,
                    "override the file's deadline model (constrained|arbitrary)");
  };

  CLI::App* check = app.add_subcommand("check", "exact schedulability verdict");
  add_file(check);
  check->add_option("--policy", policy_name, "fp|edf");
  check->add_option("--points", points_name, "lehoczky|reduced (FP only)");

  CLI::App* region = app.add_subcommand("region", "export the schedulable region's constraints");
  add_file(region);
  region->add_option("--policy", policy_name, "fp|edf");
  region->add_option("--points", points_name, "lehoczky|reduced (FP only)");
  region->add_option("--out", out, "CSV output path (default stdout)");
  region->add_option("--svg", svg, "SVG output path (2-task regions)");

  CLI::App* minimize = app.add_subcommand("minimize", "minimal EDF deadline subset");
  add_file(minimize);
  minimize->add_option("--out", out, "retained-rows CSV path");

  CLI::App* optimize = app.add_subcommand("optimize", "maximize a linear reward over the region");
  add_file(optimize);
  optimize->add_option("--policy", policy_name, "fp|edf");
  optimize->add_option("--points", points_name, "lehoczky|reduced (FP only)");
  optimize->add_option("-w,--weights", weights, "comma-separated objective weights")->required();

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "run the discrete-event scheduler");
  add_file(simulate_cmd);
  simulate_cmd->add_option("--policy", policy_name, "fp|edf");
  simulate_cmd->add_option("--horizon", horizon, "simulation horizon (rational)");
  simulate_cmd->add_option("--out", out, "trace CSV path");

  ExperimentConfig cfg;
  std::string rule = "uniform_1_to_T";
  bool serial = false;
  CLI::App* experiment = app.add_subcommand("experiment",
                                            "random-instance survey of |D_min| against H");
  experiment->add_option("--tasks", cfg.task_count, "tasks per instance")->required();
  experiment->add_option("--period-min", cfg.period_lo, "smallest period (integer >= 2)");
  experiment->add_option("--period-max", cfg.period_hi, "largest period");
  experiment->add_option("--samples", cfg.sample_count, "instance count")->required();
  experiment->add_option("--seed", cfg.seed, "generator seed");
  experiment->add_option("--deadline-rule", rule, "uniform_1_to_T|equal_T");
  experiment->add_flag("--serial", serial, "use the serial reference path");
  experiment->add_option("--out", out, "records CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (experiment->parsed()) return cmd_experiment(cfg, rule, serial, out);

    TaskSet ts = load_checked(file, model_override);
    Policy policy = parse_policy(policy_name);
    PointSource points = parse_points(points_name);

    if (check->parsed()) return cmd_check(ts, policy, points);
    if (region->parsed()) return cmd_region(ts, policy, points, out, svg);
    if (minimize->parsed()) return cmd_minimize(ts, out);
    if (optimize->parsed()) return cmd_optimize(ts, policy, points, weights);
    if (simulate_cmd->parsed()) return cmd_simulate(ts, policy, horizon, out);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
