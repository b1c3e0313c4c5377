#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wahba/errors.hpp"
#include "wahba/io.hpp"
#include "wahba/simkit.hpp"
#include "wahba/solvers.hpp"

namespace {

using namespace wahba;

// exit codes: 0 success, 1 input/config error, 2 numerical failure

SolveReport dispatch_solve(const DavenportSystem& sys, const std::string& method, double tol,
                           int max_iter) {
  if (method == "q_method") return q_method(sys);
  if (method == "quest") return quest_classic(sys, tol, max_iter);
  if (method == "first_order") return first_order(sys);
  if (method == "recursive") return recursive_solve(sys, tol, max_iter);
  throw ConfigError("unknown method: " + method);
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  out << text;
}

int cmd_solve(const std::string& input, const std::string& output, const std::string& method,
              double tol, int max_iter, bool renormalize) {
  const MeasurementSet meas = io::read_measurements_file(input, renormalize);
  const DavenportSystem sys = build_system(meas);
  const SolveReport rep = dispatch_solve(sys, method, tol, max_iter);
  write_out(output, io::solve_report_json(rep));
  return 0;
}

int cmd_simulate(const CampaignConfig& config, unsigned workers, const std::string& output,
                 const std::string& format) {
  const Histogram h = run_campaign(config, workers);
  write_out(output, format == "csv" ? io::histogram_csv(h) : io::histogram_json(h, config));
  return 0;
}

int cmd_compare(const std::string& input, const std::string& output, double tol, int max_iter,
                bool renormalize, const std::string& format) {
  const MeasurementSet meas = io::read_measurements_file(input, renormalize);
  const DavenportSystem sys = build_system(meas);

  const SolveReport oracle = q_method(sys);  // a failing oracle is a hard error

  struct Row {
    std::string method;
    std::optional<SolveReport> rep;
    std::string error;
    long long wall_ns = 0;
  };
  std::vector<Row> rows;
  const std::string methods[] = {"q_method", "quest", "first_order", "recursive"};
  for (const auto& m : methods) {
    Row row{m, std::nullopt, "", 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      row.rep = dispatch_solve(sys, m, tol, max_iter);
    } catch (const NumericalError& e) {
      row.error = e.what();
    }
    row.wall_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    rows.push_back(std::move(row));
  }

  std::ostringstream out;
  if (format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json row{{"method", r.method}, {"wall_time_ns", r.wall_ns}};
      if (r.rep) {
        row["lambda"] = r.rep->lambda;
        row["lambda_gap"] = std::abs(r.rep->lambda - oracle.lambda);
        row["iterations"] = r.rep->iterations;
        row["residual"] = r.rep->residual;
        row["taste"] = r.rep->taste;
      } else {
        row["error"] = r.error;
      }
      j.push_back(row);
    }
    out << j.dump(2);
  } else {
    out << "method,lambda,lambda_gap,iterations,residual,taste,wall_time_ns,error\n";
    out.precision(17);
    for (const auto& r : rows) {
      out << r.method << ',';
      if (r.rep) {
        out << r.rep->lambda << ',' << std::abs(r.rep->lambda - oracle.lambda) << ','
            << r.rep->iterations << ',' << r.rep->residual << ',' << r.rep->taste << ','
            << r.wall_ns << ",\n";
      } else {
        out << ",,,,," << r.wall_ns << ',' << r.error << '\n';
      }
    }
  }
  write_out(output, out.str());
  return 0;
}

unsigned default_workers() {
  if (const char* env = std::getenv("WAHBA_KIT_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wahba's problem solvers and Monte Carlo harness"};
  app.require_subcommand(1);

  std::string input, output, format = "json";
  std::string method = "recursive";
  double tol = 1e-13;
  int max_iter = 50;
  bool renormalize = false;

  auto* solve = app.add_subcommand("solve", "Solve a measurement file");
  solve->add_option("-i,--input", input, "measurement file (.json or .csv)")->required();
  solve->add_option("-o,--output", output, "output file (default stdout)");
  solve->add_option("-m,--method", method, "q_method|quest|first_order|recursive");
  solve->add_option("--tol", tol, "eigenvalue convergence tolerance");
  solve->add_option("--max-iter", max_iter, "iteration cap");
  solve->add_flag("--renormalize", renormalize, "normalize input vectors before solving");

  CampaignConfig config{};
  config.weights = {1.0, 1.0};
  unsigned workers = default_workers();
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo campaign");
  simulate->add_option("--sigma1", config.noise.sigma1_deg, "noise sigma for vector 1 [deg]")
      ->required();
  simulate->add_option("--sigma2", config.noise.sigma2_deg, "noise sigma for vector 2 [deg]")
      ->required();
  simulate->add_option("--trials", config.n_trials, "number of trials")->required();
  simulate->add_option("--rho-h", config.rho_h, "histogram density (samples per bin)")->required();
  simulate->add_option("--seed", config.seed, "campaign seed")->required();
  simulate->add_option("--w1", config.weights.first, "weight of vector 1");
  simulate->add_option("--w2", config.weights.second, "weight of vector 2");
  simulate->add_option("--taste-gate", config.taste_gate,
                       "reject trials with taste > gate * lambda0 * sigma_bar^2 (0 = off)");
  simulate->add_option("--workers", workers, "worker threads (env WAHBA_KIT_WORKERS)");
  simulate->add_option("-o,--output", output, "output file (default stdout)");
  simulate->add_option("-f,--format", format, "json|csv");

  auto* compare = app.add_subcommand("compare", "Run all four solvers on one input");
  compare->add_option("-i,--input", input, "measurement file")->required();
  compare->add_option("-o,--output", output, "output file (default stdout)");
  compare->add_option("--tol", tol, "eigenvalue convergence tolerance");
  compare->add_option("--max-iter", max_iter, "iteration cap");
  compare->add_flag("--renormalize", renormalize, "normalize input vectors before solving");
  compare->add_option("-f,--format", format, "json|csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(input, output, method, tol, max_iter, renormalize);
    if (simulate->parsed()) return cmd_simulate(config, workers, output, format);
    if (compare->parsed()) return cmd_compare(input, output, tol, max_iter, renormalize, format);
  } catch (const NumericalError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 1;
}
