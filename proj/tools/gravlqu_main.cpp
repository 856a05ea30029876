// gravlqu: thermal local quantum uncertainty of two gravitational cat qubits.
//
//   gravlqu point --omega 0.05 --delta 0.05 --B 0.5 --b 0.5 --T 0.5 [--oracle]
//   gravlqu sweep --var T --from 0.01 --to 5 --steps 500 --out lqu.csv
//   gravlqu figure --name fig3a --out-dir figs
//   gravlqu selfcheck
//
// Exit codes: 0 success, 1 check/validation failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gravlqu/errors.hpp"
#include "gravlqu/selfcheck.hpp"
#include "gravlqu/sweep.hpp"

namespace {

using namespace gravlqu;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct FixedValues {
  double omega = 0.05;
  double delta = 0.05;
  double field_uniform = 0.5;
  double field_inhomo = 0.5;
  double temperature = 0.5;

  ModelParams params() const { return {omega, delta, field_uniform, field_inhomo}; }
};

void add_fixed_flags(CLI::App* cmd, FixedValues& f) {
  cmd->add_option("--omega", f.omega, "level splitting omega")->capture_default_str();
  cmd->add_option("--delta", f.delta, "gravitational coupling Delta")->capture_default_str();
  cmd->add_option("--B", f.field_uniform, "uniform magnetic field B")->capture_default_str();
  cmd->add_option("--b", f.field_inhomo, "field inhomogeneity b")->capture_default_str();
  cmd->add_option("--T", f.temperature, "temperature (k_B = 1)")->capture_default_str();
}

void print_point(const SweepRow& r, const std::string& mode) {
  auto line = [](const char* key, const std::string& value) {
    std::cout << key << " = " << value << "\n";
  };
  line("omega", format_number(r.params.omega_gap));
  line("delta", format_number(r.params.delta));
  line("B", format_number(r.params.field_uniform));
  line("b", format_number(r.params.field_inhomo));
  line("T", format_number(r.temperature));
  line("Z", r.z ? format_number(*r.z) : std::string("n/a (T = 0)"));
  if (mode != "paper") {
    line("lqu_exact", format_number(r.lqu_exact));
    line("branch_exact", std::string(to_string(r.branch_exact)));
    line("w1", format_number(r.w1));
    line("w3", format_number(r.w3));
  }
  if (mode != "exact") line("lqu_paper", format_number(r.lqu_paper));
  if (r.concurrence) line("concurrence", format_number(*r.concurrence));
  if (r.oracle_min) line("oracle_min", format_number(*r.oracle_min));
  line("purity", format_number(r.purity));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse curve value '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal local quantum uncertainty of two gravitational cat states"};
  app.require_subcommand(1);

  FixedValues fixed;
  bool oracle = false;
  std::string mode = "both";
  auto* point = app.add_subcommand("point", "evaluate one parameter point");
  add_fixed_flags(point, fixed);
  point->add_flag("--oracle", oracle, "also run the brute-force skew minimisation");
  point->add_option("--mode", mode, "which LQU to print")
      ->check(CLI::IsMember({"exact", "paper", "both"}))
      ->capture_default_str();

  std::string var = "T";
  double from = 0.01;
  double to = 5.0;
  int steps = 500;
  int workers = 1;
  std::string out_file;
  bool no_concurrence = false;
  auto* sweep = app.add_subcommand("sweep", "sweep one variable on an inclusive linear grid");
  add_fixed_flags(sweep, fixed);
  sweep->add_option("--var", var, "swept variable")
      ->check(CLI::IsMember({"T", "B", "b", "delta", "omega"}))
      ->capture_default_str();
  sweep->add_option("--from", from, "grid start")->capture_default_str();
  sweep->add_option("--to", to, "grid stop")->capture_default_str();
  sweep->add_option("--steps", steps, "grid points (>= 2)")->capture_default_str();
  sweep->add_option("--out", out_file, "CSV destination (stdout if omitted)");
  sweep->add_option("--workers", workers, "worker threads")->capture_default_str();
  sweep->add_flag("--oracle", oracle, "add the oracle_min column");
  sweep->add_flag("--no-concurrence", no_concurrence, "leave the concurrence column empty");

  std::string figure_name;
  std::string out_dir = ".";
  std::string curves;
  std::optional<int> fig_steps;
  std::optional<double> fig_from;
  std::optional<double> fig_to;
  auto* figure = app.add_subcommand("figure", "run a figure preset, write CSV per curve + gnuplot script");
  figure->add_option("--name", figure_name, "fig1a..fig4b")->required();
  figure->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  figure->add_option("--curves", curves, "comma-separated curve values overriding the preset");
  figure->add_option("--steps", fig_steps, "grid points per curve");
  figure->add_option("--from", fig_from, "grid start (use 0 on T sweeps to include the ground state)");
  figure->add_option("--to", fig_to, "grid stop");
  figure->add_option("--workers", workers, "worker threads")->capture_default_str();
  figure->add_flag("--oracle", oracle, "add the oracle_min column");

  std::string csv_out;
  auto* selfcheck = app.add_subcommand("selfcheck", "run the deterministic acceptance suite");
  selfcheck->add_option("--csv-out", csv_out, "also write the determinism CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*point) {
      PointOptions opts;
      opts.with_oracle = oracle;
      print_point(run_point(fixed.params(), fixed.temperature, opts), mode);
      return 0;
    }

    if (*sweep) {
      SweepSpec spec;
      spec.variable = parse_sweep_variable(var);
      spec.start = from;
      spec.stop = to;
      spec.steps = steps;
      spec.fixed = fixed.params();
      spec.temperature = fixed.temperature;
      spec.options.with_oracle = oracle;
      spec.options.with_concurrence = !no_concurrence;
      const std::vector<SweepRow> rows = run_sweep(spec, workers);
      if (out_file.empty()) {
        emit_csv(rows, std::cout);
      } else {
        write_csv(rows, out_file);
      }
      return 0;
    }

    if (*figure) {
      FigureOverrides ov;
      if (!curves.empty()) ov.curve_values = parse_list(curves);
      ov.steps = fig_steps;
      ov.start = fig_from;
      ov.stop = fig_to;
      ov.options.with_oracle = oracle;
      const FigureSpec fig = figure_preset(parse_figure_name(figure_name), ov);
      const FigureFiles files = write_figure(fig, out_dir, workers);
      for (const std::string& f : files.csv_files) std::cout << f << "\n";
      std::cout << files.script_file << "\n";
      return 0;
    }

    if (*selfcheck) {
      const SuiteReport report = run_acceptance_suite();
      print_report(report, std::cout);
      if (!csv_out.empty()) {
        std::ofstream f(csv_out, std::ios::binary);
        if (!f) throw IoError("cannot open '" + csv_out + "' for writing");
        f << report.determinism_csv;
      }
      return report.passed() ? 0 : kExitFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
