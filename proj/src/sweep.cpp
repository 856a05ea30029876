#include "gravlqu/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "gravlqu/errors.hpp"

namespace gravlqu {

namespace {

constexpr double kRowRecheck = 1e-14;

constexpr std::array<FigureName, 8> kFigures = {
    FigureName::Fig1a, FigureName::Fig1b, FigureName::Fig2a, FigureName::Fig2b,
    FigureName::Fig3a, FigureName::Fig3b, FigureName::Fig4a, FigureName::Fig4b};

// Default curve values. These are a free choice, not reference values; the
// README lists them per preset.
const std::vector<double> kDefaultCurves = {0.1, 0.5, 1.0, 2.0};

void set_variable(ModelParams& p, double& temperature, SweepVariable v, double x) {
  switch (v) {
    case SweepVariable::T: temperature = x; break;
    case SweepVariable::B: p.field_uniform = x; break;
    case SweepVariable::b: p.field_inhomo = x; break;
    case SweepVariable::Delta: p.delta = x; break;
    case SweepVariable::Omega: p.omega_gap = x; break;
  }
}

double get_variable(const SweepRow& row, SweepVariable v) {
  switch (v) {
    case SweepVariable::T: return row.temperature;
    case SweepVariable::B: return row.params.field_uniform;
    case SweepVariable::b: return row.params.field_inhomo;
    case SweepVariable::Delta: return row.params.delta;
    case SweepVariable::Omega: return row.params.omega_gap;
  }
  return 0.0;
}

std::string describe(const ModelParams& p, double t) {
  std::ostringstream s;
  s << "omega=" << format_number(p.omega_gap) << " delta=" << format_number(p.delta)
    << " B=" << format_number(p.field_uniform) << " b=" << format_number(p.field_inhomo)
    << " T=" << format_number(t);
  return s.str();
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::T: return "T";
    case SweepVariable::B: return "B";
    case SweepVariable::b: return "b";
    case SweepVariable::Delta: return "delta";
    case SweepVariable::Omega: return "omega";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  for (auto v : {SweepVariable::T, SweepVariable::B, SweepVariable::b,
                 SweepVariable::Delta, SweepVariable::Omega})
    if (to_string(v) == name) return v;
  throw UsageError("unknown sweep variable '" + std::string(name) +
                   "' (expected T, B, b, delta or omega)");
}

void SweepSpec::check() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop))
    throw UsageError("sweep: need finite start < stop");
  if (steps < 2) throw UsageError("sweep: steps must be >= 2");
  if (variable == SweepVariable::T && start < 0.0)
    throw UsageError("sweep: temperature grid must start at T >= 0");
  if (variable != SweepVariable::T && !(temperature >= 0.0))
    throw UsageError("sweep: fixed temperature must be >= 0");
  options.oracle_config.check();
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  spec.check();
  std::vector<double> g(static_cast<std::size_t>(spec.steps));
  const double n = spec.steps - 1;
  for (int i = 0; i < spec.steps; ++i)
    g[i] = (spec.start * (n - i) + spec.stop * i) / n;
  return g;
}

std::pair<ModelParams, double> sweep_point(const SweepSpec& spec, double x) {
  ModelParams p = spec.fixed;
  double t = spec.temperature;
  set_variable(p, t, spec.variable, x);
  return {p, t};
}

SweepRow run_point(const ModelParams& params, double temperature,
                   const PointOptions& options) {
  try {
    params.check();
    const ThermalPoint tp = ThermalPoint::from_temperature(temperature);
    const XState rho = thermal_state(params, tp);
    const LquResult exact = lqu(rho);
    const LquResult paper = lqu_paper_mode(rho);

    SweepRow row;
    row.params = params;
    row.temperature = temperature;
    if (!tp.is_zero_temperature()) row.z = partition_function(params, tp);
    row.lqu_exact = exact.value;
    row.lqu_paper = paper.value;
    row.branch_exact = exact.branch;
    row.w1 = exact.w.w1;
    row.w2 = exact.w.w2;
    row.w3 = exact.w.w3;
    if (options.with_concurrence) row.concurrence = concurrence(rho);
    if (options.with_oracle) row.oracle_min = minimize_skew(rho, options.oracle_config).min_value;
    row.purity = purity(rho);
    return row;
  } catch (const Error& e) {
    throw Error(std::string(e.what()) + " [at " + describe(params, temperature) + "]");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers) {
  const std::vector<double> grid = sweep_grid(spec);
  const std::size_t n = grid.size();
  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> errors(n);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      try {
        const auto [p, t] = sweep_point(spec, grid[i]);
        rows[i] = run_point(p, t, spec.options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t nthreads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, n);
  if (nthreads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(work, k, nthreads);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw Error("run_sweep: grid index " + std::to_string(i) + " (" +
                  std::string(to_string(spec.variable)) + "=" + format_number(grid[i]) +
                  ") failed: " + e.what());
    }
  }
  return rows;
}

std::string_view to_string(FigureName f) {
  switch (f) {
    case FigureName::Fig1a: return "fig1a";
    case FigureName::Fig1b: return "fig1b";
    case FigureName::Fig2a: return "fig2a";
    case FigureName::Fig2b: return "fig2b";
    case FigureName::Fig3a: return "fig3a";
    case FigureName::Fig3b: return "fig3b";
    case FigureName::Fig4a: return "fig4a";
    case FigureName::Fig4b: return "fig4b";
  }
  return "?";
}

FigureName parse_figure_name(std::string_view name) {
  for (FigureName f : kFigures)
    if (to_string(f) == name) return f;
  throw UsageError("unknown figure preset '" + std::string(name) + "' (expected fig1a..fig4b)");
}

std::span<const FigureName> all_figures() { return kFigures; }

FigureSpec figure_preset(FigureName name, const FigureOverrides& ov) {
  FigureSpec fig;
  fig.name = name;

  ModelParams fixed;
  double temperature = 0.5;
  double start = -3.0;
  double stop = 3.0;
  int steps = 601;

  using V = SweepVariable;
  // Figures 1-3 pin omega and Delta, figure 4 pins B, b and T; the other
  // background values are shared.
  fixed.omega_gap = 0.05;
  fixed.delta = 0.05;
  fixed.field_uniform = 0.5;
  fixed.field_inhomo = 0.5;

  std::vector<double> curves = kDefaultCurves;
  switch (name) {
    case FigureName::Fig1a: fig.swept = V::T; fig.curve_variable = V::B; break;
    case FigureName::Fig1b: fig.swept = V::T; fig.curve_variable = V::b; break;
    case FigureName::Fig2a: fig.swept = V::B; fig.curve_variable = V::b; break;
    case FigureName::Fig2b: fig.swept = V::B; fig.curve_variable = V::T; break;
    case FigureName::Fig3a:
      fig.swept = V::b;
      fig.curve_variable = V::B;
      curves = {0.0, 0.5, 1.0, 2.0};
      break;
    case FigureName::Fig3b: fig.swept = V::b; fig.curve_variable = V::T; break;
    case FigureName::Fig4a:
      fig.swept = V::Delta;
      fig.curve_variable = V::Omega;
      curves = {0.05, 0.5, 1.0, 2.0};
      break;
    case FigureName::Fig4b:
      fig.swept = V::Omega;
      fig.curve_variable = V::Delta;
      curves = {0.05, 0.5, 1.0, 2.0};
      break;
  }
  if (fig.swept == V::T) {
    start = 0.01;
    stop = 5.0;
    steps = 500;
  } else if (fig.swept == V::Omega) {
    start = 0.0;
    stop = 10.0;
    steps = 1001;
  }

  if (ov.curve_values) curves = *ov.curve_values;
  if (ov.steps) steps = *ov.steps;
  if (ov.start) start = *ov.start;
  if (ov.stop) stop = *ov.stop;
  if (curves.empty()) throw UsageError("figure: at least one curve value is required");

  fig.curve_values = curves;
  for (double c : curves) {
    SweepSpec s;
    s.variable = fig.swept;
    s.start = start;
    s.stop = stop;
    s.steps = steps;
    s.fixed = fixed;
    s.temperature = temperature;
    s.options = ov.options;
    set_variable(s.fixed, s.temperature, fig.curve_variable, c);
    s.check();
    fig.curves.push_back(s);
  }
  return fig;
}

// Shortest text that round-trips; used for labels and file names.
static std::string short_number(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void emit_csv(std::span<const SweepRow> rows, std::ostream& out) {
  if (rows.empty()) throw UsageError("emit_csv: no rows");
  std::string text;
  text.reserve(256 * (rows.size() + 1));
  text += kCsvHeader;
  text += '\n';
  auto field = [&](double v) {
    text += format_number(v);
    text += ',';
  };
  auto optional_field = [&](const std::optional<double>& v) {
    if (v) text += format_number(*v);
    text += ',';
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    const double expect = 1.0 - std::max(r.w1, r.w3);
    if (!(std::abs(r.lqu_exact - expect) <= kRowRecheck))
      throw Error("emit_csv: row " + std::to_string(i) +
                  " violates lqu_exact = 1 - max(w1, w3)");
    field(r.params.omega_gap);
    field(r.params.delta);
    field(r.params.field_uniform);
    field(r.params.field_inhomo);
    field(r.temperature);
    optional_field(r.z);
    field(r.lqu_exact);
    field(r.lqu_paper);
    text += to_string(r.branch_exact);
    text += ',';
    field(r.w1);
    field(r.w3);
    optional_field(r.concurrence);
    optional_field(r.oracle_min);
    text += format_number(r.purity);
    text += '\n';
  }
  out << text;
}

std::string csv_string(std::span<const SweepRow> rows) {
  std::ostringstream s;
  emit_csv(rows, s);
  return s.str();
}

void write_csv(std::span<const SweepRow> rows, const std::string& path) {
  const std::string text = csv_string(rows);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

void emit_plot_script(std::span<const CurveRows> curves, FigureName figure,
                      std::span<const std::string> csv_files, std::ostream& out) {
  const FigureSpec preset = figure_preset(figure);
  const std::string name(to_string(figure));
  if (curves.empty()) throw UsageError("plot script for " + name + ": no curves");
  if (curves.size() != csv_files.size())
    throw UsageError("plot script for " + name + ": curve/file count mismatch");

  // Values every preset of this figure holds fixed.
  std::vector<std::pair<SweepVariable, double>> pinned;
  if (figure == FigureName::Fig4a || figure == FigureName::Fig4b) {
    pinned = {{SweepVariable::B, 0.5}, {SweepVariable::b, 0.5}, {SweepVariable::T, 0.5}};
  } else {
    pinned = {{SweepVariable::Omega, 0.05}, {SweepVariable::Delta, 0.05}};
  }
  for (const CurveRows& c : curves) {
    if (c.rows.empty()) throw UsageError("plot script for " + name + ": empty curve");
    if (c.spec.variable != preset.swept)
      throw UsageError("plot script for " + name + ": curve sweeps " +
                       std::string(to_string(c.spec.variable)) + ", figure sweeps " +
                       std::string(to_string(preset.swept)));
    for (const SweepRow& r : c.rows)
      for (const auto& [var, value] : pinned)
        if (var != preset.swept && get_variable(r, var) != value)
          throw UsageError("plot script for " + name + ": row has " +
                           std::string(to_string(var)) + "=" +
                           format_number(get_variable(r, var)) + ", figure fixes " +
                           format_number(value));
  }

  const std::string x(to_string(preset.swept));
  const std::string cv(to_string(preset.curve_variable));
  std::ostringstream s;
  s << "# " << name << ": LQU versus " << x << ", one series per " << cv << " value\n"
    << "# Run: gnuplot " << name << ".gp\n"
    << "# Set column to \"lqu_paper\" to plot the density-matrix-element variant.\n"
    << "column_name = \"lqu_exact\"\n"
    << "set datafile separator \",\"\n"
    << "set terminal pngcairo size 900,600\n"
    << "set output " << quote(name + ".png") << "\n"
    << "set xlabel " << quote(x) << "\n"
    << "set ylabel \"LQU\"\n"
    << "set key outside right\n"
    << "plot";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    SweepRow fixed_row;
    fixed_row.params = curves[i].spec.fixed;
    fixed_row.temperature = curves[i].spec.temperature;
    const double value = get_variable(fixed_row, preset.curve_variable);
    s << (i == 0 ? " " : ", \\\n     ") << quote(csv_files[i])
      << " using (column(" << quote(x) << ")):(column(column_name)) with lines title "
      << quote(cv + " = " + short_number(value));
  }
  s << "\n";
  out << s.str();
}

std::string curve_file_name(const FigureSpec& figure, std::size_t curve) {
  return std::string(to_string(figure.name)) + "_" +
         std::string(to_string(figure.curve_variable)) + "_" +
         short_number(figure.curve_values.at(curve)) + ".csv";
}

FigureFiles write_figure(const FigureSpec& figure, const std::string& out_dir,
                         int workers) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory '" + out_dir + "': " + ec.message());

  FigureFiles files;
  std::vector<CurveRows> curves;
  for (std::size_t i = 0; i < figure.curves.size(); ++i) {
    CurveRows c{figure.curves[i], run_sweep(figure.curves[i], workers)};
    const std::string file = curve_file_name(figure, i);
    write_csv(c.rows, (fs::path(out_dir) / file).string());
    files.csv_files.push_back(file);
    curves.push_back(std::move(c));
  }

  const std::string script = std::string(to_string(figure.name)) + ".gp";
  std::ostringstream text;
  emit_plot_script(curves, figure.name, files.csv_files, text);
  const std::string path = (fs::path(out_dir) / script).string();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text.str();
  if (!f) throw IoError("write to '" + path + "' failed");
  files.script_file = script;
  return files;
}

}  // namespace gravlqu
