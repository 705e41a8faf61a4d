// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and sample sizes are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "generators.hpp"
#include "intercept/commands.hpp"
#include "intercept/dubins.hpp"
#include "intercept/io.hpp"
#include "intercept/solver.hpp"
#include "oracles.hpp"
#include "xml_check.hpp"

using namespace intercept;
namespace tk = intercept::testkit;

namespace {

const SimpleMotionPlant kSimple;
const DubinsPlant kDubins;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string printf_string(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Runs body(i) for i in [0, n) on all cores; returns the per-index results.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& body) {
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<T> out(n);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = body(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

// 1. Published iteration counts, within one iteration.
Outcome table_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  const auto report = cli::reproduce_table(EstimatorKind::Simple);
  const double elapsed = seconds_since(start);
  const auto& rows = cli::table_rows();

  int simple_ok = 0, simple_n = 0, line_ok = 0, line_n = 0, liss_ok = 0, liss_n = 0;
  std::string misses;
  for (const auto& c : report.cells) {
    const bool is_line = std::holds_alternative<LineParams>(rows[c.row].trajectory);
    int* ok = c.plant == "simple" ? &simple_ok : (is_line ? &line_ok : &liss_ok);
    int* n = c.plant == "simple" ? &simple_n : (is_line ? &line_n : &liss_n);
    ++*n;
    if (c.matches()) {
      ++*ok;
    } else {
      misses += printf_string(" [%s %s delta=%.0e got %s want %d]", c.plant.c_str(), rows[c.row].label.c_str(),
                              c.delta, c.computed ? std::to_string(*c.computed).c_str() : "-", c.published);
    }
  }
  const bool pass = simple_ok == simple_n && line_ok == line_n && elapsed < 10.0;
  return {pass, printf_string("simple %d/%d, dubins line %d/%d within +-1; dubins lissajous %d/%d (reported); "
                              "%.2f s%s",
                              simple_ok, simple_n, line_ok, line_n, liss_ok, liss_n, elapsed, misses.c_str())};
}

// 2. Reference interception time against the quadratic root.
Outcome analytic_line_check() {
  double worst = 0.0;
  int rows = 0;
  for (const auto& row : cli::table_rows()) {
    const auto* line = std::get_if<LineParams>(&row.trajectory);
    if (!line) continue;
    ++rows;
    const auto traj = make_line_trajectory(line->xi, line->eta, line->phi, line->v);
    const double ref = refine_ground_truth(kSimple, traj, cli::kTableEll);
    const auto exact = tk::line_interception_root({line->xi, line->eta}, line->phi, line->v, cli::kTableEll);
    worst = std::max(worst, exact ? std::abs(ref - *exact) : INFINITY);
  }
  return {rows == 12 && worst <= 1e-10, printf_string("%d line rows, max |T*_ref - root| = %.3e (tol 1e-10)", rows, worst)};
}

// 3. Dubins distance against the dense-boundary oracle.
Outcome assumption_oracle() {
  constexpr std::size_t kSamples = 10000;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> tdist(0.0, 7.0), unit(0.0, 1.0);
  std::vector<std::pair<double, PlanarPoint>> inputs;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const double t = tdist(rng);
    const double r = 8.0 * std::sqrt(unit(rng));
    const double a = 2.0 * std::numbers::pi * unit(rng);
    inputs.push_back({t, {r * std::cos(a), r * std::sin(a)}});
  }
  const auto errors = parallel_map<double>(kSamples, [&](std::size_t i) {
    const auto [t, y] = inputs[i];
    const double want = dubins::contains(t, y) ? 0.0 : tk::dubins_boundary_distance(t, y);
    return std::abs(dubins::distance(t, y) - want);
  });
  const auto failures = std::count_if(errors.begin(), errors.end(), [](double e) { return !(e <= 1e-5); });
  const double worst = *std::max_element(errors.begin(), errors.end());
  return {failures == 0,
          printf_string("%zu samples, %ld failures, max error %.3e (tol 1e-5)", kSamples, static_cast<long>(failures), worst)};
}

// 4. Both Lipschitz inequalities for both plants.
Outcome lipschitz_suite() {
  constexpr int kPairs = 100000;
  std::string detail;
  bool pass = true;
  for (const Plant* plant : {static_cast<const Plant*>(&kSimple), static_cast<const Plant*>(&kDubins)}) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> tdist(0.0, 20.0), coord(-10.0, 10.0), near(-1e-3, 1e-3), unit(0.0, 1.0);
    int bad_t = 0, bad_y = 0;
    double worst = -INFINITY;
    for (int i = 0; i < kPairs; ++i) {
      // Half the pairs are close together, where kinks would show.
      const bool close = i % 2 == 1;
      const double t1 = tdist(rng);
      const double t2 = close ? std::max(0.0, t1 + near(rng)) : tdist(rng);
      const PlanarPoint y1{coord(rng), coord(rng)};
      const PlanarPoint y2 = close ? y1 + PlanarPoint{near(rng), near(rng)} : PlanarPoint{coord(rng), coord(rng)};
      const double dt = std::abs(plant->distance(t1, y1) - plant->distance(t2, y1)) - std::abs(t1 - t2);
      const double dy = std::abs(plant->distance(t1, y1) - plant->distance(t1, y2)) - distance_between(y1, y2);
      bad_t += dt > 1e-12;
      bad_y += dy > 1e-12;
      worst = std::max({worst, dt, dy});
    }
    pass = pass && bad_t == 0 && bad_y == 0;
    detail += printf_string("%s: %d pairs, violations t=%d y=%d, max excess %.2e; ", std::string(plant->name()).c_str(),
                            kPairs, bad_t, bad_y, worst);
  }
  detail += "slack 1e-12";
  return {pass, detail};
}

// 5 and 8. Random piecewise-linear targets: solve vs grid oracle, lower
// bound safety of every iterate, and path validity of every result.
struct ConvergenceStats {
  int runs = 0;
  int disagreements = 0;
  int unsafe_iterates = 0;
  int not_intercepted = 0;
  double worst_gap = 0.0;
  int bad_paths = 0;
  double worst_path_distance = 0.0;
  double worst_duration_error = 0.0;
  double worst_capture_error = 0.0;
};

ConvergenceStats run_convergence_suite() {
  constexpr int kTrajectories = 100;
  constexpr double kEll = 0.1;
  constexpr double kEpsilon = 1e-7;
  constexpr double kResolution = 1e-6;
  ConvergenceStats stats;
  for (const Plant* plant : {static_cast<const Plant*>(&kSimple), static_cast<const Plant*>(&kDubins)}) {
    std::mt19937_64 rng(plant->name() == "simple" ? 501 : 502);
    std::uniform_real_distribution<double> vdist(0.0, 0.9);
    std::vector<std::vector<TimedPoint>> samples;
    for (int i = 0; i < kTrajectories; ++i) samples.push_back(tk::random_polyline(rng, vdist(rng)));

    const auto parts = parallel_map<ConvergenceStats>(samples.size(), [&](std::size_t i) {
      ConvergenceStats s;
      const auto traj = make_piecewise_linear_trajectory(samples[i]);
      const double v = traj.speed_bound();
      const auto oracle = grid_oracle(*plant, traj, kEll, 500.0, kResolution);
      for (auto est : {EstimatorKind::Simple, EstimatorKind::Best}) {
        ++s.runs;
        const auto res = solve(*plant, traj, CaptureSpec(kEll, kEpsilon), {est, 1000000});
        if (res.status != SolveStatus::Intercepted || !oracle) {
          ++s.not_intercepted;
          continue;
        }
        const double tol = std::max(1e-6, kEll * kEpsilon / (1.0 + v));
        const double gap = std::abs(res.t_star - *oracle);
        s.worst_gap = std::max(s.worst_gap, gap);
        s.disagreements += gap > tol;
        for (const auto& it : res.trace.iterates) s.unsafe_iterates += it.t > *oracle + kResolution;

        const auto& path = *res.path;
        const double total = path.total_duration();
        const double reach = plant->distance(total, path.endpoint);
        const double dur = std::abs(total - res.t_star);
        const double capture = distance_between(path.endpoint, traj.position(res.t_star)) - kEll * (1.0 + kEpsilon);
        const auto pts = flatten_path(path);
        const double drift = distance_between(pts.back(), path.endpoint);
        s.worst_path_distance = std::max(s.worst_path_distance, reach);
        s.worst_duration_error = std::max(s.worst_duration_error, dur);
        s.worst_capture_error = std::max(s.worst_capture_error, capture);
        s.bad_paths += reach > 1e-6 || dur > 1e-9 || capture > 1e-6 || drift > 1e-9;
      }
      return s;
    });
    for (const auto& p : parts) {
      stats.runs += p.runs;
      stats.disagreements += p.disagreements;
      stats.unsafe_iterates += p.unsafe_iterates;
      stats.not_intercepted += p.not_intercepted;
      stats.worst_gap = std::max(stats.worst_gap, p.worst_gap);
      stats.bad_paths += p.bad_paths;
      stats.worst_path_distance = std::max(stats.worst_path_distance, p.worst_path_distance);
      stats.worst_duration_error = std::max(stats.worst_duration_error, p.worst_duration_error);
      stats.worst_capture_error = std::max(stats.worst_capture_error, p.worst_capture_error);
    }
  }
  return stats;
}

Outcome convergence(const ConvergenceStats& s) {
  const bool pass = s.runs == 400 && s.disagreements == 0 && s.unsafe_iterates == 0 && s.not_intercepted == 0;
  return {pass, printf_string("%d solves (2 plants x 100 trajectories x 2 estimators, eps 1e-7), %d outside "
                              "max(1e-6, ell*eps/(1+v)), max gap %.3e, %d iterates above oracle + 1e-6, %d not "
                              "intercepted",
                              s.runs, s.disagreements, s.worst_gap, s.unsafe_iterates, s.not_intercepted)};
}

// 6. Estimator dominance and the equality cases.
Outcome estimator_relations() {
  constexpr int kInputs = 100000;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> tdist(0.0, 7.0), coord(-8.0, 8.0), vdist(0.0, 2.0), ldist(0.0, 0.5);
  int dominance = 0, simple_eq = 0, closed_eq = 0, closed_n = 0;
  double worst_simple = 0.0, worst_closed = 0.0;
  for (int i = 0; i < kInputs; ++i) {
    const double t = tdist(rng), v = vdist(rng), ell = ldist(rng);
    const PlanarPoint y{coord(rng), coord(rng)};
    const Plant& plant = i % 2 == 0 ? static_cast<const Plant&>(kSimple) : static_cast<const Plant&>(kDubins);
    const double best = best_estimator(plant, t, y, v, ell);
    const double simple = simple_estimator(plant, t, y, v, ell);
    dominance += best < simple - 1e-12;
    const double ss = std::abs(best_estimator(kSimple, t, y, v, ell) - simple_estimator(kSimple, t, y, v, ell));
    worst_simple = std::max(worst_simple, ss);
    simple_eq += ss > 1e-12;
    if (dubins::cs_estimator_applies(t, y)) {
      ++closed_n;
      const double dd = std::abs(best_estimator(kDubins, t, y, v, ell) - simple_estimator(kDubins, t, y, v, ell));
      worst_closed = std::max(worst_closed, dd);
      closed_eq += dd > 1e-12;
    }
  }
  return {dominance == 0 && simple_eq == 0 && closed_eq == 0 && closed_n > 1000,
          printf_string("%d inputs: %d dominance violations; simple motions equality max %.2e (%d off); "
                        "%d Dubins inputs on the closed-form domain, max %.2e (%d off); tol 1e-12",
                        kInputs, dominance, worst_simple, simple_eq, closed_n, worst_closed, closed_eq)};
}

// 7. Figure caption counts.
Outcome figure_counts() {
  const auto traj = make_lissajous_trajectory(-1, -2, 1, std::numbers::sqrt2, 1);
  const auto count = [&](const Plant& plant, EstimatorKind est) {
    const double ref = refine_ground_truth(plant, traj, 0.1);
    return cli::precision_counts(plant, traj, 0.1, est, ref)[0];
  };
  const auto simple = count(kSimple, EstimatorKind::Simple);
  const auto dubins = count(kDubins, EstimatorKind::Simple);
  const auto dubins_best = count(kDubins, EstimatorKind::Best);
  const bool pass = simple == 9u && dubins == 6u;
  const auto show = [](const std::optional<std::size_t>& n) { return n ? std::to_string(*n) : std::string("-"); };
  return {pass, printf_string("iterations to 1e-3: simple motions %s (want 9), Dubins %s (want 6); Dubins with the "
                              "best estimator: %s",
                              show(simple).c_str(), show(dubins).c_str(), show(dubins_best).c_str())};
}

// 8. Path validity, collected from the criterion 5 runs and the table rows.
Outcome path_validity(const ConvergenceStats& s) {
  int bad = s.bad_paths;
  int checked = s.runs - s.not_intercepted;
  double worst_reach = s.worst_path_distance, worst_dur = s.worst_duration_error;
  for (const auto& row : cli::table_rows()) {
    const auto traj = io::build_trajectory(row.trajectory);
    for (const Plant* plant : {static_cast<const Plant*>(&kSimple), static_cast<const Plant*>(&kDubins)}) {
      const auto res = solve(*plant, traj, CaptureSpec(0.1, 1e-6));
      if (res.status != SolveStatus::Intercepted) {
        ++bad;
        continue;
      }
      ++checked;
      const double total = res.path->total_duration();
      const double reach = plant->distance(total, res.path->endpoint);
      const double dur = std::abs(total - res.t_star);
      worst_reach = std::max(worst_reach, reach);
      worst_dur = std::max(worst_dur, dur);
      bad += reach > 1e-6 || dur > 1e-9;
    }
  }
  return {bad == 0, printf_string("%d paths, %d invalid; max endpoint distance to R(T) %.2e (tol 1e-6), max "
                                  "|duration - t_star| %.2e (tol 1e-9), max capture excess %.2e",
                                  checked, bad, worst_reach, worst_dur, s.worst_capture_error)};
}

// 9. Scenario round trips and SVG well-formedness.
Outcome io_round_trip() {
  std::mt19937_64 rng(909);
  int identity_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const auto s = tk::random_scenario(rng);
    const std::string text = io::emit_scenario(s);
    const auto back = io::parse_scenario(text);
    identity_failures += !(back == s) || io::emit_scenario(back) != text;
  }
  int svgs = 0, malformed = 0;
  std::string first_error;
  for (int i = 0; i < 50; ++i) {
    const auto traj = make_piecewise_linear_trajectory(tk::random_polyline(rng, 0.8));
    for (const Plant* plant : {static_cast<const Plant*>(&kSimple), static_cast<const Plant*>(&kDubins)}) {
      const auto res = solve(*plant, traj, CaptureSpec(0.1, 1e-6));
      if (!res.path) continue;
      std::vector<double> times;
      for (const auto& it : res.trace.iterates) times.push_back(it.t);
      const auto check = tk::check_xml(io::render_svg(*plant, traj, 0.1, res, times));
      ++svgs;
      if (!check.ok) {
        ++malformed;
        if (first_error.empty()) first_error = check.error;
      }
    }
  }
  return {identity_failures == 0 && malformed == 0 && svgs == 100,
          printf_string("100 random scenarios, %d not identical after parse(emit); %d SVG documents, %d malformed %s",
                        identity_failures, svgs, malformed, first_error.c_str())};
}

}  // namespace

int main() {
  int failed = 0;
  const auto report = [&](int n, const char* name, const Outcome& o) {
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  };
  report(1, "table reproduction", table_reproduction());
  report(2, "simple motions analytic check", analytic_line_check());
  report(3, "Dubins distance oracle", assumption_oracle());
  report(4, "Lipschitz suite", lipschitz_suite());
  const auto conv = run_convergence_suite();
  report(5, "convergence and oracle equivalence", convergence(conv));
  report(6, "estimator relations", estimator_relations());
  report(7, "figure iteration counts", figure_counts());
  report(8, "path validity", path_validity(conv));
  report(9, "IO round trip", io_round_trip());
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
