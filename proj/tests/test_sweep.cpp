#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gravlqu/errors.hpp"
#include "gravlqu/sweep.hpp"

using namespace gravlqu;

namespace {

std::vector<CurveRows> run_figure(const FigureSpec& fig) {
  std::vector<CurveRows> out;
  for (const SweepSpec& spec : fig.curves) out.push_back({spec, run_sweep(spec)});
  return out;
}

std::vector<std::string> file_names(const FigureSpec& fig) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < fig.curves.size(); ++i) names.push_back(curve_file_name(fig, i));
  return names;
}

int count_lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("sweep_grid") {
  SweepSpec spec;
  spec.variable = SweepVariable::T;
  spec.start = 0.01;
  spec.stop = 5.0;
  spec.steps = 500;
  const std::vector<double> grid = sweep_grid(spec);
  REQUIRE(grid.size() == 500);
  CHECK(grid.front() == 0.01);
  CHECK(grid.back() == 5.0);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());

  spec.steps = 2;
  CHECK(sweep_grid(spec) == std::vector<double>{0.01, 5.0});

  spec.variable = SweepVariable::b;
  spec.start = -2.0;
  spec.stop = 2.0;
  spec.steps = 401;
  const std::vector<double> sym = sweep_grid(spec);
  for (std::size_t i = 0; i < sym.size(); ++i) CHECK(sym[i] == -sym[sym.size() - 1 - i]);
}

TEST_CASE("SweepSpec validation") {
  SweepSpec spec;
  spec.steps = 1;
  CHECK_THROWS_AS(spec.check(), UsageError);
  spec.steps = 10;
  spec.start = 2.0;
  spec.stop = 1.0;
  CHECK_THROWS_AS(spec.check(), UsageError);
  spec.start = -1.0;
  spec.stop = 1.0;
  spec.variable = SweepVariable::T;
  CHECK_THROWS_AS(spec.check(), UsageError);
  CHECK_THROWS_AS(parse_sweep_variable("beta"), UsageError);
  CHECK(parse_sweep_variable("delta") == SweepVariable::Delta);
}

TEST_CASE("run_point") {
  const SweepRow row = run_point({0.05, 0.05, 0.5, 0.5}, 0.5, {true, true, {}});
  REQUIRE(row.z.has_value());
  CHECK(*row.z == doctest::Approx(6.447).epsilon(1e-4));
  CHECK(row.oracle_min.has_value());
  CHECK(std::abs(*row.oracle_min - row.lqu_exact) < 2e-6);
  CHECK(row.lqu_paper != row.lqu_exact);

  CHECK_FALSE(run_point({0.05, 0.05, 0.5, 0.5}, 0.5).oracle_min.has_value());

  const SweepRow hot = run_point({0.05, 0.05, 0.5, 0.5}, 1e6);
  CHECK(hot.lqu_exact < 1e-6);

  const SweepRow diag = run_point({0.05, 0.0, 0.5, 0.5}, 0.5);
  CHECK(diag.lqu_exact == 0.0);
  CHECK(*diag.concurrence == 0.0);

  const SweepRow ground = run_point({0.05, 0.05, 0.5, 0.5}, 0.0);
  CHECK_FALSE(ground.z.has_value());

  try {
    run_point({0.05, 0.05, 0.5, 0.5}, -1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("omega=0.050000000000000003") != std::string::npos);
  }
}

TEST_CASE("run_sweep") {
  SweepSpec spec;
  spec.variable = SweepVariable::T;
  spec.start = 0.01;
  spec.stop = 5.0;
  spec.steps = 500;
  spec.fixed = {0.05, 0.05, 0.5, 0.5};
  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 500);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].temperature > rows[i - 1].temperature);

  CHECK(csv_string(run_sweep(spec, 4)) == csv_string(rows));
  CHECK(csv_string(run_sweep(spec, 7)) == csv_string(rows));

  spec.variable = SweepVariable::b;
  spec.start = -2.0;
  spec.stop = 2.0;
  spec.steps = 401;
  const std::vector<SweepRow> sym = run_sweep(spec);
  for (std::size_t i = 0; i < sym.size(); ++i)
    CHECK(std::abs(sym[i].w3 - sym[sym.size() - 1 - i].w3) < 1e-10);

  SweepSpec bad = spec;
  bad.variable = SweepVariable::T;
  bad.start = 0.0;
  bad.stop = 1.0;
  bad.steps = 3;
  bad.fixed.omega_gap = NAN;
  try {
    run_sweep(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("grid index 0") != std::string::npos);
  }
}

TEST_CASE("figure presets") {
  CHECK(all_figures().size() == 8);
  CHECK_THROWS_AS(parse_figure_name("fig5a"), UsageError);

  for (FigureName name : all_figures()) {
    const FigureSpec fig = figure_preset(name);
    CHECK(fig.curves.size() >= 2);
    CHECK(fig.curves.size() == fig.curve_values.size());
    CHECK(parse_figure_name(to_string(name)) == name);
    for (const SweepSpec& spec : fig.curves) {
      CHECK(spec.variable == fig.swept);
      CHECK_NOTHROW(spec.check());
      if (name >= FigureName::Fig4a) {
        if (fig.curve_variable != SweepVariable::B) CHECK(spec.fixed.field_uniform == 0.5);
        CHECK(spec.fixed.field_inhomo == 0.5);
        CHECK(spec.temperature == 0.5);
      } else {
        CHECK(spec.fixed.omega_gap == 0.05);
        CHECK(spec.fixed.delta == 0.05);
      }
    }
  }

  const FigureSpec fig4a = figure_preset(FigureName::Fig4a);
  CHECK(fig4a.swept == SweepVariable::Delta);
  CHECK(fig4a.curves[0].start == -fig4a.curves[0].stop);
  CHECK(figure_preset(FigureName::Fig4b).curves[0].start == 0.0);

  FigureOverrides ov;
  ov.curve_values = std::vector<double>{0.25, 0.75};
  ov.steps = 11;
  const FigureSpec custom = figure_preset(FigureName::Fig1a, ov);
  REQUIRE(custom.curves.size() == 2);
  CHECK(custom.curves[1].fixed.field_uniform == 0.75);
  CHECK(custom.curves[0].steps == 11);
  CHECK(curve_file_name(custom, 0) == "fig1a_B_0.25.csv");

  ov.curve_values = std::vector<double>{};
  CHECK_THROWS_AS(figure_preset(FigureName::Fig1a, ov), UsageError);
}

TEST_CASE("emit_csv") {
  const SweepRow row = run_point({0.05, 0.05, 0.5, 0.5}, 0.5);
  const std::vector<SweepRow> one{row};
  const std::string text = csv_string(one);
  CHECK(count_lines(text) == 2);
  CHECK(text.rfind("omega,delta,B,b,T,Z,lqu_exact,", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.find(",w1,") != std::string::npos);  // branch column

  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_number(row.lqu_exact)) == row.lqu_exact);

  CHECK_THROWS_AS(csv_string(std::vector<SweepRow>{}), UsageError);

  SweepRow broken = row;
  broken.lqu_exact += 1e-10;
  CHECK_THROWS_AS(csv_string(std::vector<SweepRow>{broken}), Error);

  CHECK_THROWS_AS(write_csv(one, "/nonexistent-dir/x.csv"), IoError);
}

TEST_CASE("emit_plot_script") {
  FigureOverrides ov;
  ov.steps = 5;
  const FigureSpec fig = figure_preset(FigureName::Fig1a, ov);
  const std::vector<CurveRows> curves = run_figure(fig);
  const std::vector<std::string> names = file_names(fig);

  std::ostringstream a;
  emit_plot_script(curves, FigureName::Fig1a, names, a);
  const std::string script = a.str();
  CHECK(script.find("set xlabel \"T\"") != std::string::npos);
  CHECK(script.find("set ylabel \"LQU\"") != std::string::npos);
  for (const std::string& n : names) CHECK(script.find("\"" + n + "\"") != std::string::npos);

  std::ostringstream b;
  emit_plot_script(run_figure(fig), FigureName::Fig1a, names, b);
  CHECK(b.str() == script);

  SUBCASE("file count mismatch") {
    std::ostringstream out;
    const std::vector<std::string> short_names(names.begin(), names.end() - 1);
    CHECK_THROWS_AS(emit_plot_script(curves, FigureName::Fig1a, short_names, out), UsageError);
  }
  SUBCASE("rows from another figure") {
    std::ostringstream out;
    CHECK_THROWS_AS(emit_plot_script(curves, FigureName::Fig2a, names, out), UsageError);
    CHECK_THROWS_AS(emit_plot_script(curves, FigureName::Fig4a, names, out), UsageError);
  }
  SUBCASE("rows that break the figure's pinned values") {
    std::vector<CurveRows> moved = curves;
    moved[0].rows[2].params.delta = 0.07;
    std::ostringstream out;
    CHECK_THROWS_AS(emit_plot_script(moved, FigureName::Fig1a, names, out), UsageError);
  }
}
