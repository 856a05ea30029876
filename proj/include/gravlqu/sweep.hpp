#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gravlqu/lqu.hpp"
#include "gravlqu/model.hpp"
#include "gravlqu/oracle.hpp"

namespace gravlqu {

enum class SweepVariable { T, B, b, Delta, Omega };

std::string_view to_string(SweepVariable v);
// Accepts "T", "B", "b", "delta", "omega"; throws UsageError otherwise.
SweepVariable parse_sweep_variable(std::string_view name);

struct PointOptions {
  bool with_oracle = false;
  bool with_concurrence = true;
  MinimizeConfig oracle_config{};
};

struct SweepRow {
  ModelParams params;
  double temperature = 0.0;
  std::optional<double> z;  // absent at T = 0
  double lqu_exact = 0.0;
  double lqu_paper = 0.0;
  Branch branch_exact = Branch::W3;
  double w1 = 0.0;
  double w2 = 0.0;  // not emitted; kept for the ordering check
  double w3 = 0.0;
  std::optional<double> concurrence;
  std::optional<double> oracle_min;
  double purity = 0.0;
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::T;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;  // inclusive grid, >= 2
  ModelParams fixed{};
  double temperature = 0.5;  // used unless variable == T
  PointOptions options{};

  void check() const;  // throws UsageError
};

/// Inclusive linear grid, x_i = (start (n-1-i) + stop i) / (n-1); exactly
/// antisymmetric when start == -stop.
std::vector<double> sweep_grid(const SweepSpec& spec);

/// Parameters and temperature at grid value x.
std::pair<ModelParams, double> sweep_point(const SweepSpec& spec, double x);

SweepRow run_point(const ModelParams& params, double temperature,
                   const PointOptions& options = {});

/// Rows in grid order. Grid points are split across `workers` threads; the
/// output does not depend on the worker count. A failing point aborts the
/// sweep with an Error naming the grid index.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers = 1);

// --- figure presets -------------------------------------------------------

enum class FigureName { Fig1a, Fig1b, Fig2a, Fig2b, Fig3a, Fig3b, Fig4a, Fig4b };

std::string_view to_string(FigureName f);
FigureName parse_figure_name(std::string_view name);  // throws UsageError
std::span<const FigureName> all_figures();

struct FigureSpec {
  FigureName name = FigureName::Fig1a;
  SweepVariable swept = SweepVariable::T;
  SweepVariable curve_variable = SweepVariable::B;
  std::vector<double> curve_values;
  std::vector<SweepSpec> curves;  // one per curve value
};

struct FigureOverrides {
  std::optional<std::vector<double>> curve_values;
  std::optional<int> steps;
  std::optional<double> start;
  std::optional<double> stop;
  PointOptions options{};
};

/// Figures 1-3 fix omega = Delta = 0.05; figure 4 fixes B = b = T = 0.5.
/// The remaining fixed value and the curve sets are chosen here (see README).
FigureSpec figure_preset(FigureName name, const FigureOverrides& overrides = {});

struct CurveRows {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

// --- output ---------------------------------------------------------------

inline constexpr std::string_view kCsvHeader =
    "omega,delta,B,b,T,Z,lqu_exact,lqu_paper,branch_exact,w1,w3,concurrence,"
    "oracle_min,purity";

/// Header kCsvHeader, then one line per row: 17 significant digits, no
/// locale, LF line ends, optional fields left empty. Rechecks
/// lqu_exact = 1 - max(w1, w3) to 1e-14 on every row and throws Error if it
/// fails.
void emit_csv(std::span<const SweepRow> rows, std::ostream& out);
std::string csv_string(std::span<const SweepRow> rows);
void write_csv(std::span<const SweepRow> rows, const std::string& path);

std::string format_number(double v);

/// gnuplot script drawing LQU against the swept variable, one series per
/// curve, each read from the matching entry of `csv_files`. Throws
/// UsageError when the curves do not belong to `figure`.
void emit_plot_script(std::span<const CurveRows> curves, FigureName figure,
                      std::span<const std::string> csv_files, std::ostream& out);

struct FigureFiles {
  std::vector<std::string> csv_files;
  std::string script_file;
};

/// Runs every curve of the preset and writes <name>_<var>_<value>.csv per
/// curve plus <name>.gp into out_dir (created if missing).
FigureFiles write_figure(const FigureSpec& figure, const std::string& out_dir,
                         int workers = 1);

std::string curve_file_name(const FigureSpec& figure, std::size_t curve);

}  // namespace gravlqu
