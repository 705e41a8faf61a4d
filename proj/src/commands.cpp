#include "intercept/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "intercept/dubins.hpp"

namespace intercept::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

TableRow line_row(std::string label, double xi, double eta, double phi, double v, std::array<int, 3> s,
                  std::array<int, 3> d) {
  return {std::move(label), LineParams{xi, eta, phi, v}, s, d};
}

TableRow lissajous_row(std::string label, double xi, double eta, double wx, double wy, double v, std::array<int, 3> s,
                       std::array<int, 3> d) {
  return {std::move(label), io::LissajousSpec{{xi, eta, wx, wy, v}, std::nullopt}, s, d};
}

std::vector<TableRow> build_rows() {
  std::vector<TableRow> rows;
  const auto line = [&](const char* base, double xi, double eta, double phi, const char* vl, double v,
                        std::array<int, 3> s, std::array<int, 3> d) {
    rows.push_back(line_row(std::string(base) + " v=" + vl, xi, eta, phi, v, s, d));
  };
  line("line xi=0 eta=1 phi=0", 0, 1, 0, "1/4", 0.25, {5, 10, 15}, {5, 10, 15});
  line("line xi=0 eta=1 phi=0", 0, 1, 0, "1/2", 0.5, {10, 19, 29}, {11, 23, 34});
  line("line xi=0 eta=1 phi=0", 0, 1, 0, "3/4", 0.75, {22, 43, 65}, {48, 93, 137});
  line("line xi=1 eta=1 phi=pi/2", 1, 1, kPi / 2, "1/4", 0.25, {8, 15, 21}, {7, 14, 20});
  line("line xi=1 eta=1 phi=pi/2", 1, 1, kPi / 2, "1/2", 0.5, {17, 33, 48}, {17, 32, 47});
  line("line xi=1 eta=1 phi=pi/2", 1, 1, kPi / 2, "3/4", 0.75, {49, 90, 131}, {49, 89, 130});
  line("line xi=-1 eta=-2 phi=pi/4", -1, -2, kPi / 4, "1/2", 0.5, {3, 5, 7}, {11, 18, 25});
  line("line xi=-1 eta=-2 phi=pi/4", -1, -2, kPi / 4, "3/4", 0.75, {3, 5, 8}, {12, 20, 28});
  line("line xi=-1 eta=-2 phi=pi/4", -1, -2, kPi / 4, "1", 1.0, {3, 6, 9}, {14, 23, 33});
  line("line xi=-2 eta=0 phi=pi/4", -2, 0, kPi / 4, "1/2", 0.5, {5, 9, 13}, {19, 25, 30});
  line("line xi=-2 eta=0 phi=pi/4", -2, 0, kPi / 4, "3/4", 0.75, {6, 12, 18}, {12, 31, 51});
  line("line xi=-2 eta=0 phi=pi/4", -2, 0, kPi / 4, "1", 1.0, {9, 18, 27}, {5, 10, 15});

  const auto liss = [&](const char* base, double xi, double eta, double wx, double wy, const char* vl, double v,
                        std::array<int, 3> s, std::array<int, 3> d) {
    rows.push_back(lissajous_row(std::string(base) + " v=" + vl, xi, eta, wx, wy, v, s, d));
  };
  const char* a = "lissajous xi=1 eta=1 wx=1 wy=sqrt2";
  liss(a, 1, 1, 1, kSqrt2, "1/2", 0.5, {5, 8, 11}, {6, 9, 13});
  liss(a, 1, 1, 1, kSqrt2, "1", 1.0, {5, 7, 9}, {7, 11, 16});
  liss(a, 1, 1, 1, kSqrt2, "3/2", 1.5, {5, 7, 8}, {10, 20, 29});
  liss(a, 1, 1, 1, kSqrt2, "2", 2.0, {5, 7, 9}, {28, 46, 64});
  const char* b = "lissajous xi=-1 eta=-2 wx=1 wy=sqrt2";
  liss(b, -1, -2, 1, kSqrt2, "1/2", 0.5, {12, 26, 40}, {5, 8, 11});
  liss(b, -1, -2, 1, kSqrt2, "1", 1.0, {9, 21, 33}, {6, 8, 10});
  liss(b, -1, -2, 1, kSqrt2, "3/2", 1.5, {7, 17, 26}, {7, 10, 12});
  liss(b, -1, -2, 1, kSqrt2, "2", 2.0, {8, 20, 33}, {9, 13, 16});
  const char* c = "lissajous xi=-1 eta=-2 wx=1 wy=2";
  liss(c, -1, -2, 1, 2, "1/2", 0.5, {11, 21, 30}, {13, 23, 32});
  liss(c, -1, -2, 1, 2, "1", 1.0, {16, 26, 36}, {19, 29, 39});
  liss(c, -1, -2, 1, 2, "3/2", 1.5, {18, 26, 33}, {21, 28, 36});
  liss(c, -1, -2, 1, 2, "2", 2.0, {20, 26, 31}, {25, 31, 36});
  const char* d = "lissajous xi=0 eta=-1 wx=2 wy=1";
  liss(d, 0, -1, 2, 1, "1/2", 0.5, {3, 6, 9}, {9, 14, 18});
  liss(d, 0, -1, 2, 1, "1", 1.0, {6, 12, 19}, {12, 17, 22});
  liss(d, 0, -1, 2, 1, "3/2", 1.5, {17, 37, 57}, {17, 22, 27});
  liss(d, 0, -1, 2, 1, "2", 2.0, {21, 36, 51}, {9, 16, 23});
  return rows;
}

struct RowResult {
  std::array<std::optional<std::size_t>, 3> simple;
  std::array<std::optional<std::size_t>, 3> dubins;
  double reference_simple = 0.0;
  double reference_dubins = 0.0;
};

RowResult compute_row(const TableRow& row, EstimatorKind estimator) {
  const TargetTrajectory traj = io::build_trajectory(row.trajectory);
  const SimpleMotionPlant simple;
  const DubinsPlant dubins;
  RowResult r;
  r.reference_simple = refine_ground_truth(simple, traj, kTableEll);
  r.reference_dubins = refine_ground_truth(dubins, traj, kTableEll);
  r.simple = precision_counts(simple, traj, kTableEll, estimator, r.reference_simple);
  r.dubins = precision_counts(dubins, traj, kTableEll, estimator, r.reference_dubins);
  return r;
}

// ---------------------------------------------------------------------------
// Command plumbing

struct Overrides {
  std::string scenario_path;
  std::optional<std::string> estimator;
  std::optional<double> epsilon;
  std::optional<std::size_t> max_iterations;
  std::optional<double> horizon;
  std::optional<double> resolution;
  std::optional<std::string> out_path;
  std::string format = "text";
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

io::ScenarioFile load_scenario(const Overrides& o) {
  std::ifstream in(o.scenario_path, std::ios::binary);
  if (!in) throw InputError("cannot read scenario file '" + o.scenario_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  io::ScenarioFile s = io::parse_scenario(buf.str());

  if (o.estimator) {
    if (*o.estimator == "best") {
      s.estimator = EstimatorKind::Best;
    } else if (*o.estimator == "simple") {
      s.estimator = EstimatorKind::Simple;
    } else {
      throw io::ScenarioError("estimator", "unknown estimator \"" + *o.estimator + "\"");
    }
  }
  if (o.epsilon) {
    if (!(*o.epsilon > 0.0)) throw io::ScenarioError("epsilon", "must be > 0");
    s.epsilon = *o.epsilon;
  }
  if (o.max_iterations) s.max_iterations = *o.max_iterations;
  if (o.horizon) {
    if (!(*o.horizon > 0.0)) throw io::ScenarioError("horizon", "must be > 0");
    s.horizon = *o.horizon;
  }
  if (o.resolution) {
    if (!(*o.resolution > 0.0)) throw io::ScenarioError("resolution", "must be > 0");
    s.resolution = *o.resolution;
  }
  return s;
}

std::vector<std::string> scenario_notes(const TargetTrajectory& traj) {
  std::vector<std::string> notes;
  if (traj.speed_bound_is_nominal() && traj.speed_bound() > 0.0) {
    notes.emplace_back(
        "lissajous speed bound taken as the nominal v; the Euclidean speed of this curve reaches v*sqrt(2), "
        "set trajectory.speed_bound to override");
  }
  return notes;
}

SolveOptions solve_options(const io::ScenarioFile& s) {
  SolveOptions opts;
  opts.estimator = s.estimator;
  if (s.max_iterations) opts.max_iterations = *s.max_iterations;
  return opts;
}

void write_output(const Overrides& o, const std::string& text, std::ostream& out) {
  if (!o.out_path) {
    out << text;
    return;
  }
  std::ofstream f(*o.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + *o.out_path + "'");
  f << text;
}

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::string count_text(const std::optional<std::size_t>& n) { return n ? std::to_string(*n) : "-"; }

int cmd_solve(const Overrides& o, std::ostream& out, std::ostream& err) {
  const io::ScenarioFile s = load_scenario(o);
  const auto plant = io::make_plant(s.plant);
  const TargetTrajectory traj = io::build_trajectory(s.trajectory);
  const SolveResult result = solve(*plant, traj, io::build_capture(s), solve_options(s));
  for (const auto& n : scenario_notes(traj)) err << "note: " << n << '\n';
  write_output(o, io::emit_result(result, scenario_notes(traj)), out);
  if (result.status == SolveStatus::Intercepted) return 0;
  err << "error: " << to_string(result.status) << " after " << result.trace.iterations() << " iterations (t = "
      << io::format_number(result.t_star) << ")\n";
  return 2;
}

int cmd_trace(const Overrides& o, std::ostream& out, std::ostream& err) {
  const io::ScenarioFile s = load_scenario(o);
  const auto plant = io::make_plant(s.plant);
  const TargetTrajectory traj = io::build_trajectory(s.trajectory);
  const double reference = refine_ground_truth(*plant, traj, s.ell);
  const std::size_t cap = s.max_iterations.value_or(100000);
  const auto ts = iterate_towards(*plant, traj, s.ell, s.estimator, reference, kTablePrecisions.back(), cap);

  std::ostringstream text;
  text << "# plant " << s.plant << ", estimator " << to_string(s.estimator) << ", ell " << io::format_number(s.ell)
       << '\n';
  for (const auto& n : scenario_notes(traj)) text << "# note: " << n << '\n';
  text << "# reference T* = " << io::format_number(reference) << '\n';
  text << "n\tt_n\trho_n\tT*-t_n\n";
  for (std::size_t n = 0; n < ts.size(); ++n) {
    const double rho = plant->distance(ts[n], traj.position(ts[n]));
    text << n << '\t' << io::format_number(ts[n]) << '\t' << io::format_number(rho) << '\t'
         << fmt("%.3e", reference - ts[n]) << '\n';
  }
  for (double delta : kTablePrecisions) {
    text << "iterations to " << fmt("%.0e", delta) << ": " << count_text(iterations_to_precision(ts, reference, delta))
         << '\n';
  }
  write_output(o, text.str(), out);
  if (!iterations_to_precision(ts, reference, kTablePrecisions.back())) {
    err << "error: precision " << fmt("%.0e", kTablePrecisions.back()) << " not reached within " << cap
        << " iterations\n";
    return 2;
  }
  return 0;
}

int cmd_plot(const Overrides& o, std::ostream& out, std::ostream& err) {
  const io::ScenarioFile s = load_scenario(o);
  const auto plant = io::make_plant(s.plant);
  const TargetTrajectory traj = io::build_trajectory(s.trajectory);
  const SolveResult result = solve(*plant, traj, io::build_capture(s), solve_options(s));
  for (const auto& n : scenario_notes(traj)) err << "note: " << n << '\n';
  if (result.status != SolveStatus::Intercepted) {
    err << "error: nothing to plot, solve ended with status " << to_string(result.status) << '\n';
    return 2;
  }
  std::vector<double> times;
  for (const auto& it : result.trace.iterates) {
    if (times.empty() || it.t > times.back()) times.push_back(it.t);
  }
  write_output(o, io::render_svg(*plant, traj, s.ell, result, times), out);
  return 0;
}

int cmd_oracle(const Overrides& o, std::ostream& out, std::ostream& err) {
  const io::ScenarioFile s = load_scenario(o);
  const auto plant = io::make_plant(s.plant);
  const TargetTrajectory traj = io::build_trajectory(s.trajectory);
  const double resolution = s.resolution.value_or(1e-6);
  const auto hit = grid_oracle(*plant, traj, s.ell, s.horizon, resolution);

  std::string text = "{\n  \"status\": \"" + std::string(hit ? "found" : "not_found") + "\",\n";
  if (hit) text += "  \"t\": " + io::format_number(*hit) + ",\n";
  text += "  \"horizon\": " + io::format_number(s.horizon) + ",\n";
  text += "  \"resolution\": " + io::format_number(resolution) + "\n}\n";
  write_output(o, text, out);
  if (hit) return 0;
  err << "error: no interception found up to horizon " << io::format_number(s.horizon) << '\n';
  return 2;
}

int cmd_table(const Overrides& o, std::ostream& out) {
  EstimatorKind estimator = EstimatorKind::Simple;
  if (o.estimator) {
    if (*o.estimator == "best") {
      estimator = EstimatorKind::Best;
    } else if (*o.estimator != "simple") {
      throw io::ScenarioError("estimator", "unknown estimator \"" + *o.estimator + "\"");
    }
  }
  const TableReport report = reproduce_table(estimator);
  const auto& rows = table_rows();

  std::ostringstream text;
  if (o.format == "json") {
    text << "{\n  \"ell\": " << io::format_number(kTableEll) << ",\n  \"estimator\": \"" << to_string(estimator)
         << "\",\n  \"cells\": [";
    for (std::size_t i = 0; i < report.cells.size(); ++i) {
      const auto& c = report.cells[i];
      text << (i ? ",\n" : "\n") << "    {\"plant\": \"" << c.plant << "\", \"row\": \"" << rows[c.row].label
           << "\", \"delta\": " << fmt("%.0e", c.delta) << ", \"computed\": "
           << (c.computed ? std::to_string(*c.computed) : "null") << ", \"published\": " << c.published
           << ", \"match\": " << (c.matches() ? "true" : "false") << "}";
    }
    text << "\n  ]\n}\n";
  } else {
    text << "# ell = 1/10, estimator " << to_string(estimator) << ", counts: computed/published, '*' = off by more "
         << "than 1\n";
    char head[160];
    std::snprintf(head, sizeof head, "%-44s %-24s %s\n", "row", "simple 1e-3 1e-6 1e-9", "dubins 1e-3 1e-6 1e-9");
    text << head;
    std::size_t i = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::string line = rows[r].label;
      line.resize(std::max<std::size_t>(line.size(), 44), ' ');
      for (int p = 0; p < 2; ++p) {
        line += ' ';
        for (std::size_t k = 0; k < 3; ++k, ++i) {
          const auto& c = report.cells[i];
          std::string cell = count_text(c.computed) + "/" + std::to_string(c.published) + (c.matches() ? "" : "*");
          cell.resize(std::max<std::size_t>(cell.size(), 8), ' ');
          line += cell;
        }
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      text << line << '\n';
    }
    std::size_t simple_ok = 0, simple_n = 0, dubins_ok = 0, dubins_n = 0;
    for (const auto& c : report.cells) {
      (c.plant == "simple" ? simple_n : dubins_n)++;
      if (c.matches()) (c.plant == "simple" ? simple_ok : dubins_ok)++;
    }
    text << "# within +-1: simple " << simple_ok << '/' << simple_n << ", dubins " << dubins_ok << '/' << dubins_n
         << '\n';
  }
  write_output(o, text.str(), out);
  return 0;
}

}  // namespace

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = build_rows();
  return rows;
}

std::array<std::optional<std::size_t>, 3> precision_counts(const Plant& plant, const TargetTrajectory& trajectory,
                                                           double ell, EstimatorKind estimator, double reference) {
  const auto ts = iterate_towards(plant, trajectory, ell, estimator, reference, kTablePrecisions.back());
  std::array<std::optional<std::size_t>, 3> out;
  for (std::size_t k = 0; k < 3; ++k) out[k] = iterations_to_precision(ts, reference, kTablePrecisions[k]);
  return out;
}

TableReport reproduce_table(EstimatorKind estimator) {
  const auto& rows = table_rows();
  std::vector<std::future<RowResult>> jobs;
  jobs.reserve(rows.size());
  for (const auto& row : rows) jobs.push_back(std::async(std::launch::async, compute_row, std::cref(row), estimator));

  TableReport report;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const RowResult res = jobs[r].get();
    report.references_simple.push_back(res.reference_simple);
    report.references_dubins.push_back(res.reference_dubins);
    for (std::size_t k = 0; k < 3; ++k) {
      report.cells.push_back({"simple", r, kTablePrecisions[k], res.simple[k], rows[r].simple_counts[k]});
    }
    for (std::size_t k = 0; k < 3; ++k) {
      report.cells.push_back({"dubins", r, kTablePrecisions[k], res.dubins[k], rows[r].dubins_counts[k]});
    }
  }
  return report;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-time interception of a moving target", "intercept"};
  app.require_subcommand(1);

  Overrides o;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", o.scenario_path, "Scenario JSON file")->required();
    sub->add_option("--estimator", o.estimator, "best or simple");
    sub->add_option("--epsilon", o.epsilon, "Relative stopping tolerance");
    sub->add_option("--max-iterations", o.max_iterations, "Iteration budget");
    sub->add_option("--horizon", o.horizon, "Oracle scan horizon");
    sub->add_option("--resolution", o.resolution, "Oracle resolution");
    sub->add_option("--out", o.out_path, "Write output to this file instead of stdout");
  };
  auto* solve_cmd = app.add_subcommand("solve", "Run the fixed-point iteration and print the result document");
  auto* trace_cmd = app.add_subcommand("trace", "Print the iterates and iterations to each precision");
  auto* plot_cmd = app.add_subcommand("plot", "Render the interception as SVG");
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force first crossing by a Lipschitz scan");
  for (auto* sub : {solve_cmd, trace_cmd, plot_cmd, oracle_cmd}) add_common(sub);
  auto* table_cmd = app.add_subcommand("table", "Recompute the published iteration-count table");
  table_cmd->add_option("--estimator", o.estimator, "simple (default) or best");
  table_cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  table_cmd->add_option("--out", o.out_path, "Write output to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) return cmd_solve(o, out, err);
    if (*trace_cmd) return cmd_trace(o, out, err);
    if (*plot_cmd) return cmd_plot(o, out, err);
    if (*oracle_cmd) return cmd_oracle(o, out, err);
    return cmd_table(o, out);
  } catch (const io::ScenarioError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace intercept::cli
