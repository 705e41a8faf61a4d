#include "intercept/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "intercept/dubins.hpp"
#include "json.hpp"

namespace intercept::io {

using Json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Writing

void write_json(const Json& j, std::string& out, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent > 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += Json(key).dump();
        out += indent > 0 ? ": " : ":";
        write_json(value, out, indent, depth + 1);
      }
      pad(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) pad(depth + 1);
        write_json(e, out, indent, depth + 1);
      }
      if (!flat) pad(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string to_text(const Json& j) {
  std::string out;
  write_json(j, out, 2, 0);
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Reading

std::string join(const std::string& base, std::string_view key) {
  return base.empty() ? std::string(key) : base + "/" + std::string(key);
}

/// Field access on one JSON object; rejects keys that were never asked for.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ScenarioError(path_.empty() ? "/" : path_, "expected an object");
  }

  bool has(std::string_view key) {
    known_.emplace(key);
    return j_.contains(key);
  }

  const Json& at(std::string_view key) {
    if (!has(key)) throw ScenarioError(join(path_, key), "missing required field \"" + std::string(key) + "\"");
    return j_.at(std::string(key));
  }

  double number(std::string_view key) { return as_number(at(key), join(path_, key)); }

  std::optional<double> optional_number(std::string_view key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::string string(std::string_view key) {
    const Json& v = at(key);
    if (!v.is_string()) throw ScenarioError(join(path_, key), "expected a string");
    return v.get<std::string>();
  }

  std::string path(std::string_view key) const { return join(path_, key); }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!known_.contains(key)) throw ScenarioError(join(path_, key), "unknown field \"" + key + "\"");
    }
  }

  static double as_number(const Json& v, const std::string& path) {
    if (!v.is_number()) throw ScenarioError(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ScenarioError(path, "expected a finite number");
    return d;
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string, std::less<>> known_;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ScenarioError("", std::string("syntax error: ") + e.what(), line, column);
  }
}

EstimatorKind parse_estimator(const std::string& name, const std::string& path) {
  if (name == "best") return EstimatorKind::Best;
  if (name == "simple") return EstimatorKind::Simple;
  throw ScenarioError(path, "unknown estimator \"" + name + "\" (expected \"best\" or \"simple\")");
}

TrajectorySpec parse_trajectory(const Json& j) {
  ObjectReader r(j, "trajectory");
  const std::string kind = r.string("kind");
  TrajectorySpec spec;
  if (kind == "line") {
    spec = LineParams{r.number("xi"), r.number("eta"), r.number("phi"), r.number("v")};
  } else if (kind == "lissajous") {
    LissajousSpec s;
    s.params = {r.number("xi"), r.number("eta"), r.number("omega_x"), r.number("omega_y"), r.number("v")};
    s.speed_bound = r.optional_number("speed_bound");
    spec = s;
  } else if (kind == "piecewise_linear") {
    const Json& samples = r.at("samples");
    if (!samples.is_array()) throw ScenarioError(r.path("samples"), "expected an array");
    PiecewiseLinearParams p;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      ObjectReader s(samples[i], r.path("samples") + "/" + std::to_string(i));
      p.samples.push_back({s.number("t"), {s.number("x"), s.number("y")}});
      s.finish();
    }
    spec = std::move(p);
  } else {
    throw ScenarioError("trajectory/kind",
                        "unknown trajectory kind \"" + kind + "\" (expected line, lissajous or piecewise_linear)");
  }
  r.finish();
  try {
    (void)build_trajectory(spec);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("trajectory", e.what());
  }
  return spec;
}

Json trajectory_json(const TrajectorySpec& spec) {
  return std::visit(
      Overloaded{
          [](const LineParams& p) {
            Json j;
            j["kind"] = "line";
            j["xi"] = p.xi;
            j["eta"] = p.eta;
            j["phi"] = p.phi;
            j["v"] = p.v;
            return j;
          },
          [](const LissajousSpec& s) {
            Json j;
            j["kind"] = "lissajous";
            j["xi"] = s.params.xi;
            j["eta"] = s.params.eta;
            j["omega_x"] = s.params.omega_x;
            j["omega_y"] = s.params.omega_y;
            j["v"] = s.params.v;
            if (s.speed_bound) j["speed_bound"] = *s.speed_bound;
            return j;
          },
          [](const PiecewiseLinearParams& p) {
            Json j;
            j["kind"] = "piecewise_linear";
            Json samples = Json::array();
            for (const auto& s : p.samples) {
              Json e;
              e["t"] = s.t;
              e["x"] = s.point.x;
              e["y"] = s.point.y;
              samples.push_back(std::move(e));
            }
            j["samples"] = std::move(samples);
            return j;
          },
      },
      spec);
}

std::string_view segment_kind_name(PathSegment::Kind k) {
  switch (k) {
    case PathSegment::Kind::Arc: return "arc";
    case PathSegment::Kind::Straight: return "straight";
    case PathSegment::Kind::Wait: return "wait";
  }
  return "?";
}

}  // namespace

ScenarioError::ScenarioError(std::string field, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(line > 0 ? message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                  : (field.empty() ? message : field + ": " + message)),
      field_(std::move(field)),
      line_(line),
      column_(column) {}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ScenarioFile parse_scenario(std::string_view text) {
  const Json root = parse_json(text);
  ObjectReader r(root, "");
  ScenarioFile s;

  s.plant = r.string("plant");
  if (s.plant != "simple" && s.plant != "dubins") {
    throw ScenarioError("plant", "unknown plant \"" + s.plant + "\" (expected \"simple\" or \"dubins\")");
  }
  s.trajectory = parse_trajectory(r.at("trajectory"));

  {
    ObjectReader c(r.at("capture"), "capture");
    s.ell = c.number("ell");
    s.epsilon = c.number("epsilon");
    s.absolute_tolerance = c.optional_number("absolute_tolerance");
    c.finish();
    if (s.ell < 0.0) throw ScenarioError("capture/ell", "must be >= 0");
    if (s.epsilon <= 0.0) throw ScenarioError("capture/epsilon", "must be > 0");
    if (s.absolute_tolerance && *s.absolute_tolerance <= 0.0) {
      throw ScenarioError("capture/absolute_tolerance", "must be > 0");
    }
  }

  if (r.has("estimator")) s.estimator = parse_estimator(r.string("estimator"), "estimator");
  if (auto h = r.optional_number("horizon")) {
    if (*h <= 0.0) throw ScenarioError("horizon", "must be > 0");
    s.horizon = *h;
  }
  if (r.has("max_iterations")) {
    const Json& m = r.at("max_iterations");
    if (!m.is_number_unsigned()) throw ScenarioError("max_iterations", "expected a non-negative integer");
    s.max_iterations = m.get<std::size_t>();
  }
  if (auto res = r.optional_number("resolution")) {
    if (*res <= 0.0) throw ScenarioError("resolution", "must be > 0");
    s.resolution = *res;
  }
  r.finish();
  return s;
}

std::string emit_scenario(const ScenarioFile& s) {
  Json j;
  j["plant"] = s.plant;
  j["trajectory"] = trajectory_json(s.trajectory);
  Json capture;
  capture["ell"] = s.ell;
  capture["epsilon"] = s.epsilon;
  if (s.absolute_tolerance) capture["absolute_tolerance"] = *s.absolute_tolerance;
  j["capture"] = std::move(capture);
  j["estimator"] = std::string(to_string(s.estimator));
  j["horizon"] = s.horizon;
  if (s.max_iterations) j["max_iterations"] = *s.max_iterations;
  if (s.resolution) j["resolution"] = *s.resolution;
  return to_text(j);
}

TargetTrajectory build_trajectory(const TrajectorySpec& spec) {
  return std::visit(Overloaded{
                        [](const LineParams& p) { return make_line_trajectory(p.xi, p.eta, p.phi, p.v); },
                        [](const LissajousSpec& s) {
                          const auto& p = s.params;
                          return make_lissajous_trajectory(p.xi, p.eta, p.omega_x, p.omega_y, p.v, s.speed_bound);
                        },
                        [](const PiecewiseLinearParams& p) { return make_piecewise_linear_trajectory(p.samples); },
                    },
                    spec);
}

CaptureSpec build_capture(const ScenarioFile& s) {
  return CaptureSpec(s.ell, s.epsilon, s.absolute_tolerance.value_or(1e-9));
}

std::unique_ptr<Plant> make_plant(std::string_view name) {
  if (name == "simple") return std::make_unique<SimpleMotionPlant>();
  if (name == "dubins") return std::make_unique<DubinsPlant>();
  throw ScenarioError("plant", "unknown plant \"" + std::string(name) + "\"");
}

std::string emit_result(const SolveResult& result, const std::vector<std::string>& notes) {
  Json j;
  j["status"] = std::string(to_string(result.status));
  j["termination"] = std::string(to_string(result.trace.termination));
  j["t_star"] = result.t_star;
  j["iterations"] = result.trace.iterations();
  Json trace = Json::array();
  for (const auto& it : result.trace.iterates) trace.push_back(Json::array({it.t, it.rho}));
  j["trace"] = std::move(trace);
  if (result.path) {
    Json path;
    path["initial_heading"] = result.path->initial_heading;
    Json segments = Json::array();
    for (const auto& s : result.path->segments) {
      Json e;
      e["kind"] = std::string(segment_kind_name(s.kind));
      if (s.kind == PathSegment::Kind::Arc) e["direction"] = s.direction == TurnDirection::Left ? "left" : "right";
      e["duration"] = s.duration;
      segments.push_back(std::move(e));
    }
    path["segments"] = std::move(segments);
    path["endpoint"] = Json::array({result.path->endpoint.x, result.path->endpoint.y});
    path["total_duration"] = result.path->total_duration();
    j["path"] = std::move(path);
  }
  if (!notes.empty()) j["notes"] = notes;
  return to_text(j);
}

SolveResult parse_result(std::string_view text) {
  const Json root = parse_json(text);
  ObjectReader r(root, "");
  SolveResult out;

  const std::string status = r.string("status");
  if (status == "intercepted") {
    out.status = SolveStatus::Intercepted;
  } else if (status == "unreachable") {
    out.status = SolveStatus::Unreachable;
  } else if (status == "budget") {
    out.status = SolveStatus::Budget;
  } else {
    throw ScenarioError("status", "unknown status \"" + status + "\"");
  }
  const std::string termination = r.string("termination");
  if (termination == "captured") {
    out.trace.termination = Termination::Captured;
  } else if (termination == "max_iterations") {
    out.trace.termination = Termination::MaxIterations;
  } else if (termination == "step_underflow") {
    out.trace.termination = Termination::StepUnderflow;
  } else {
    throw ScenarioError("termination", "unknown termination \"" + termination + "\"");
  }
  out.t_star = r.number("t_star");
  (void)r.at("iterations");
  const Json& trace = r.at("trace");
  if (!trace.is_array()) throw ScenarioError("trace", "expected an array");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const std::string p = "trace/" + std::to_string(i);
    const Json& pair = trace[i];
    if (!pair.is_array() || pair.size() != 2) throw ScenarioError(p, "expected [t, rho]");
    out.trace.iterates.push_back({ObjectReader::as_number(pair[0], p), ObjectReader::as_number(pair[1], p)});
  }
  if (r.has("path")) {
    ObjectReader pr(r.at("path"), "path");
    InterceptionPath path;
    path.initial_heading = pr.number("initial_heading");
    const Json& segments = pr.at("segments");
    for (std::size_t i = 0; i < segments.size(); ++i) {
      ObjectReader sr(segments[i], "path/segments/" + std::to_string(i));
      const std::string kind = sr.string("kind");
      const double duration = sr.number("duration");
      if (kind == "arc") {
        const std::string d = sr.string("direction");
        path.segments.push_back(PathSegment::arc(d == "left" ? TurnDirection::Left : TurnDirection::Right, duration));
      } else if (kind == "straight") {
        path.segments.push_back(PathSegment::straight(duration));
      } else {
        path.segments.push_back(PathSegment::wait(duration));
      }
      sr.finish();
    }
    const Json& end = pr.at("endpoint");
    path.endpoint = {ObjectReader::as_number(end.at(0), "path/endpoint"),
                     ObjectReader::as_number(end.at(1), "path/endpoint")};
    (void)pr.at("total_duration");
    pr.finish();
    out.path = std::move(path);
  }
  (void)r.has("notes");
  r.finish();
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(PlanarPoint p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
};

std::string points_attr(const std::vector<PlanarPoint>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ' ';
    out += format_number(p.x);
    out += ',';
    out += format_number(p.y);
  }
  return out;
}

}  // namespace

std::string render_svg(const Plant& plant, const TargetTrajectory& trajectory, double ell, const SolveResult& result,
                       const std::vector<double>& times, const SvgOptions& options) {
  if (!result.path) throw std::invalid_argument("render_svg: result carries no interception path");
  const bool disks = plant.name() == "simple";

  Bounds box;
  box.add({0.0, 0.0});

  std::vector<PlanarPoint> target;
  const int n_target = std::max(2, options.trajectory_samples);
  for (int k = 0; k < n_target; ++k) {
    const PlanarPoint p = trajectory.position(result.t_star * k / (n_target - 1));
    target.push_back(p);
    box.add(p);
  }
  const auto route = flatten_path(*result.path, options.max_arc_turn);
  for (const auto& p : route) box.add(p);
  const PlanarPoint caught = trajectory.position(result.t_star);
  box.add({caught.x - ell, caught.y - ell});
  box.add({caught.x + ell, caught.y + ell});

  std::vector<std::string> reach;
  for (double t : times) {
    if (disks) {
      reach.push_back("<circle cx=\"0\" cy=\"0\" r=\"" + format_number(t) + "\"/>");
      box.add({-t, -t});
      box.add({t, t});
      continue;
    }
    std::string d;
    if (t > 0.0) {
      for (const auto& branch : plant.boundary_branches(t, options.boundary_samples)) {
        for (std::size_t i = 0; i < branch.size(); ++i) {
          d += i == 0 ? "M" : " L";
          d += format_number(branch[i].x) + "," + format_number(branch[i].y);
          box.add(branch[i]);
        }
        d += ' ';
      }
    } else {
      d = "M0,0 ";
    }
    d.pop_back();
    reach.push_back("<path d=\"" + d + "\"/>");
  }

  const double w = std::max(box.max_x - box.min_x, 1e-6);
  const double h = std::max(box.max_y - box.min_y, 1e-6);
  const double margin = 0.1 * std::max(w, h);
  const double stroke = 0.004 * std::max(w, h);
  // The outer group flips y so that mathematical +y points up.
  const double vx = box.min_x - margin;
  const double vy = -(box.max_y + margin);
  const double vw = w + 2.0 * margin;
  const double vh = h + 2.0 * margin;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\""
      << static_cast<int>(std::lround(800.0 * vh / vw)) << "\" viewBox=\"" << format_number(vx) << ' '
      << format_number(vy) << ' ' << format_number(vw) << ' ' << format_number(vh) << "\">\n"
      << "  <g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << format_number(stroke) << "\">\n"
      << "    <g id=\"reachable-sets\" stroke=\"#555555\" stroke-dasharray=\"" << format_number(4 * stroke) << ','
      << format_number(3 * stroke) << "\">\n";
  for (const auto& e : reach) svg << "      " << e << '\n';
  svg << "    </g>\n"
      << "    <polyline id=\"target\" stroke=\"#000000\" points=\"" << points_attr(target) << "\"/>\n"
      << "    <polyline id=\"path\" stroke=\"#d62728\" points=\"" << points_attr(route) << "\"/>\n"
      << "    <circle id=\"capture\" stroke=\"#d62728\" cx=\"" << format_number(caught.x) << "\" cy=\""
      << format_number(caught.y) << "\" r=\"" << format_number(ell) << "\"/>\n"
      << "  </g>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace intercept::io
