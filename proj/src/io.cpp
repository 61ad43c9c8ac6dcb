#include "heronwaist/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "heronwaist/errors.hpp"

namespace heronwaist {

using nlohmann::json;

namespace {

constexpr const char* kResultsFormat = "heronwaist-results/1";
constexpr double kObjectiveReloadTol = 1e-12;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    throw ParseError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(path, key), "missing required field");
  return *it;
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool found = false;
    for (const char* k : known) found = found || it.key() == k;
    if (!found) throw ParseError(child(path, it.key()), "unknown field");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<std::int64_t>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path, "expected true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], child(path, i)));
  return out;
}

Point as_point(const json& j, const std::string& path, int dimension) {
  const auto values = as_numbers(j, path);
  if (dimension > 0 && int(values.size()) != dimension) {
    throw ParseError(path, "expected " + std::to_string(dimension) + " coordinates, got " +
                               std::to_string(values.size()));
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), Eigen::Index(values.size()));
}

json to_json(const Point& p) { return json(std::vector<double>(p.data(), p.data() + p.size())); }

ConvexSet as_set(const json& j, const std::string& path, int n) {
  const std::string kind = as_string(require(j, path, "kind"), child(path, "kind"));
  try {
    if (kind == "ball") {
      reject_unknown(j, path, {"kind", "center", "radius"});
      return ConvexSet::ball(as_point(require(j, path, "center"), child(path, "center"), n),
                             as_number(require(j, path, "radius"), child(path, "radius")));
    }
    if (kind == "box") {
      reject_unknown(j, path, {"kind", "center", "half_widths"});
      return ConvexSet::box(as_point(require(j, path, "center"), child(path, "center"), n),
                            as_point(require(j, path, "half_widths"), child(path, "half_widths"), n));
    }
    if (kind == "halfspace") {
      reject_unknown(j, path, {"kind", "normal", "offset"});
      return ConvexSet::halfspace(as_point(require(j, path, "normal"), child(path, "normal"), n),
                                  as_number(require(j, path, "offset"), child(path, "offset")));
    }
    if (kind == "singleton") {
      reject_unknown(j, path, {"kind", "point"});
      return ConvexSet::singleton(as_point(require(j, path, "point"), child(path, "point"), n));
    }
  } catch (const InvalidInput& e) {
    throw StructuralError(path + ": " + e.what());
  }
  throw ParseError(child(path, "kind"), "unknown set kind '" + kind + "'");
}

json set_to_json(const ConvexSet& s) {
  json j;
  j["kind"] = to_string(s.kind());
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Ball>) {
          j["center"] = to_json(shape.center);
          j["radius"] = shape.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          j["center"] = to_json(shape.center);
          j["half_widths"] = to_json(shape.half_widths);
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          j["normal"] = to_json(shape.normal);
          j["offset"] = shape.offset;
        } else {
          j["point"] = to_json(shape.point);
        }
      },
      s.shape());
  return j;
}

Configuration as_configuration(const json& j, const std::string& path, int n) {
  const json& chain = require(j, path, "chain_points");
  if (!chain.is_array() || chain.empty()) throw ParseError(child(path, "chain_points"), "expected a nonempty array");
  std::vector<Point> points;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    points.push_back(as_point(chain[i], child(child(path, "chain_points"), i), n));
  }
  Point hub = as_point(require(j, path, "hub_point"), child(path, "hub_point"), n);
  try {
    return Configuration::from_points(points, hub);
  } catch (const InvalidInput& e) {
    throw ParseError(path, e.what());
  }
}

json configuration_to_json(const Configuration& u) {
  json chain = json::array();
  for (std::size_t i = 0; i < u.chain_length(); ++i) chain.push_back(to_json(u.chain(i)));
  return json{{"chain_points", chain}, {"hub_point", to_json(u.hub())}};
}

SolverConfig as_solver(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  reject_unknown(j, path, {"step_rule", "step_scale", "step_offset", "tolerance", "max_iter", "stop_on_gradient"});
  SolverConfig cfg;
  if (j.contains("step_rule")) {
    const std::string name = as_string(j["step_rule"], child(path, "step_rule"));
    auto rule = step_rule_from_string(name);
    if (!rule) throw ParseError(child(path, "step_rule"), "unknown step rule '" + name + "'");
    cfg.step_rule = *rule;
  }
  if (j.contains("step_scale")) cfg.step_scale = as_number(j["step_scale"], child(path, "step_scale"));
  if (j.contains("step_offset")) cfg.step_offset = as_number(j["step_offset"], child(path, "step_offset"));
  if (j.contains("tolerance")) cfg.tolerance = as_number(j["tolerance"], child(path, "tolerance"));
  if (j.contains("max_iter")) cfg.max_iter = as_integer(j["max_iter"], child(path, "max_iter"));
  if (j.contains("stop_on_gradient")) {
    cfg.stop_on_gradient = as_bool(j["stop_on_gradient"], child(path, "stop_on_gradient"));
  }
  if (!(cfg.step_scale > 0.0)) throw StructuralError(child(path, "step_scale") + ": must be positive");
  if (!(cfg.step_offset >= 0.0)) throw StructuralError(child(path, "step_offset") + ": must be nonnegative");
  if (!(cfg.tolerance > 0.0)) throw StructuralError(child(path, "tolerance") + ": must be positive");
  if (cfg.max_iter < 1) throw StructuralError(child(path, "max_iter") + ": must be positive");
  return cfg;
}

std::optional<std::int64_t> checkpoint_value(const json& j, const std::string& path) {
  if (j.is_null()) return std::nullopt;
  return as_integer(j, path);
}

}  // namespace

bool ProblemSpec::operator==(const ProblemSpec& other) const {
  const auto& a = solver;
  const auto& b = other.solver;
  return problem == other.problem && init == other.init && a.step_rule == b.step_rule &&
         a.step_scale == b.step_scale && a.step_offset == b.step_offset && a.tolerance == b.tolerance &&
         a.max_iter == b.max_iter && a.stop_on_gradient == b.stop_on_gradient &&
         problem.options().allow_two_vertex_chain == other.problem.options().allow_two_vertex_chain &&
         problem.options().allow_degenerate == other.problem.options().allow_degenerate;
}

ProblemSpec parse_problem(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("/", "expected a JSON object");
  reject_unknown(doc, "", {"dimension", "chain_sets", "hub_set", "rho", "omega", "init", "solver", "options"});

  const std::int64_t n = as_integer(require(doc, "", "dimension"), "/dimension");
  if (n < 1) throw StructuralError("/dimension: must be >= 1");

  const json& chain_json = require(doc, "", "chain_sets");
  if (!chain_json.is_array()) throw ParseError("/chain_sets", "expected an array of set records");
  std::vector<ConvexSet> chain_sets;
  for (std::size_t i = 0; i < chain_json.size(); ++i) {
    chain_sets.push_back(as_set(chain_json[i], child("/chain_sets", i), int(n)));
  }
  ConvexSet hub = as_set(require(doc, "", "hub_set"), "/hub_set", int(n));

  Weights weights{as_numbers(require(doc, "", "rho"), "/rho"), as_numbers(require(doc, "", "omega"), "/omega")};

  ProblemOptions options;
  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (!o.is_object()) throw ParseError("/options", "expected an object");
    reject_unknown(o, "/options", {"allow_two_vertex_chain", "allow_degenerate"});
    if (o.contains("allow_two_vertex_chain")) {
      options.allow_two_vertex_chain = as_bool(o["allow_two_vertex_chain"], "/options/allow_two_vertex_chain");
    }
    if (o.contains("allow_degenerate")) {
      options.allow_degenerate = as_bool(o["allow_degenerate"], "/options/allow_degenerate");
    }
  }

  ProblemSpec spec{Problem(std::move(chain_sets), std::move(hub), std::move(weights), options), std::nullopt, {}};

  if (doc.contains("init")) {
    const json& init = doc["init"];
    if (init.is_string()) {
      if (init.get<std::string>() != "anchors") throw ParseError("/init", "expected \"anchors\" or explicit points");
    } else {
      Configuration u = as_configuration(init, "/init", int(n));
      if (u.chain_length() != spec.problem.size()) {
        throw StructuralError("/init/chain_points: expected " + std::to_string(spec.problem.size()) + " points");
      }
      spec.init = std::move(u);
    }
  }
  if (doc.contains("solver")) spec.solver = as_solver(doc["solver"], "/solver");
  return spec;
}

ProblemSpec load_problem(const std::filesystem::path& path) { return parse_problem(read_file(path)); }

std::string serialize_problem(const ProblemSpec& spec) {
  const Problem& p = spec.problem;
  json doc;
  doc["dimension"] = p.dimension();
  json chain = json::array();
  for (const auto& s : p.chain_sets()) chain.push_back(set_to_json(s));
  doc["chain_sets"] = chain;
  doc["hub_set"] = set_to_json(p.hub_set());
  doc["rho"] = p.rho();
  doc["omega"] = p.omega();
  if (spec.init) {
    doc["init"] = configuration_to_json(*spec.init);
  } else {
    doc["init"] = "anchors";
  }
  const SolverConfig& cfg = spec.solver;
  doc["solver"] = {{"step_rule", to_string(cfg.step_rule)}, {"step_scale", cfg.step_scale},
                   {"step_offset", cfg.step_offset},        {"tolerance", cfg.tolerance},
                   {"max_iter", cfg.max_iter},              {"stop_on_gradient", cfg.stop_on_gradient}};
  if (p.options().allow_two_vertex_chain || p.options().allow_degenerate) {
    doc["options"] = {{"allow_two_vertex_chain", p.options().allow_two_vertex_chain},
                      {"allow_degenerate", p.options().allow_degenerate}};
  }
  return doc.dump(2) + "\n";
}

OptimalitySummary summarize(const OptimalityReport& report) {
  return OptimalitySummary{report.tolerance,         report.verdict,         report.global_balance_norm,
                           report.chain_normal_ok,   report.chain_indeterminate, report.hub_normal_ok,
                           report.hub_indeterminate, report.disjointness.pairs.size()};
}

ResultsDocument make_results(const SolveResult& result, const std::optional<OptimalityReport>& report,
                             std::string trace_file) {
  ResultsDocument doc;
  doc.best_config = result.best_config;
  doc.best_objective = result.best_objective;
  doc.iterations = result.iterations;
  doc.stop_reason = result.stop_reason;
  doc.initial_projected = result.initial_projected;
  doc.checkpoints = result.checkpoints;
  if (report) doc.optimality = summarize(*report);
  doc.trace_file = std::move(trace_file);
  return doc;
}

std::string serialize_results(const ResultsDocument& doc) {
  json j;
  j["format"] = kResultsFormat;
  j["best_objective"] = doc.best_objective;
  j["iterations"] = doc.iterations;
  j["stop_reason"] = to_string(doc.stop_reason);
  j["initial_projected"] = doc.initial_projected;
  j["best_config"] = configuration_to_json(doc.best_config);
  json checkpoints = json::array();
  for (const auto& cp : doc.checkpoints) {
    checkpoints.push_back({{"tolerance", cp.tolerance},
                           {"iteration", cp.iteration ? json(*cp.iteration) : json(nullptr)}});
  }
  j["checkpoints"] = checkpoints;
  if (doc.optimality) {
    const auto& o = *doc.optimality;
    j["optimality"] = {{"tolerance", o.tolerance},
                       {"verdict", to_string(o.verdict)},
                       {"global_balance_norm", o.global_balance_norm},
                       {"chain_normal_ok", o.chain_normal_ok},
                       {"chain_indeterminate", o.chain_indeterminate},
                       {"hub_normal_ok", o.hub_normal_ok},
                       {"hub_indeterminate", o.hub_indeterminate},
                       {"overlapping_pairs", o.overlapping_pairs}};
  }
  if (!doc.trace_file.empty()) j["trace_file"] = doc.trace_file;
  return j.dump(2) + "\n";
}

ResultsDocument parse_results(std::string_view text, const Problem& p) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("/", "expected a JSON object");
  if (as_string(require(j, "", "format"), "/format") != kResultsFormat) {
    throw ParseError("/format", "unsupported results format");
  }
  ResultsDocument doc;
  // Coordinates are read at the file's own dimension so that a mismatch with
  // the problem is reported as a shape error rather than a syntax error.
  const json& config = require(j, "", "best_config");
  int n = p.dimension();
  if (config.is_object() && config.contains("hub_point") && config["hub_point"].is_array() &&
      !config["hub_point"].empty()) {
    n = int(config["hub_point"].size());
  }
  doc.best_config = as_configuration(config, "/best_config", n);
  try {
    check_shape(p, doc.best_config);
  } catch (const InvalidInput& e) {
    throw StructuralError(std::string("/best_config: ") + e.what());
  }
  doc.best_objective = as_number(require(j, "", "best_objective"), "/best_objective");
  doc.iterations = as_integer(require(j, "", "iterations"), "/iterations");

  const std::string reason = as_string(require(j, "", "stop_reason"), "/stop_reason");
  bool known = false;
  for (auto r : {StopReason::objective_stagnation, StopReason::gradient_small, StopReason::max_iter}) {
    if (reason == to_string(r)) {
      doc.stop_reason = r;
      known = true;
    }
  }
  if (!known) throw ParseError("/stop_reason", "unknown stop reason '" + reason + "'");

  if (j.contains("initial_projected")) doc.initial_projected = as_bool(j["initial_projected"], "/initial_projected");
  if (j.contains("checkpoints")) {
    const json& cps = j["checkpoints"];
    if (!cps.is_array()) throw ParseError("/checkpoints", "expected an array");
    for (std::size_t i = 0; i < cps.size(); ++i) {
      const std::string path = child("/checkpoints", i);
      doc.checkpoints.push_back({as_number(require(cps[i], path, "tolerance"), child(path, "tolerance")),
                                 checkpoint_value(require(cps[i], path, "iteration"), child(path, "iteration"))});
    }
  }
  if (j.contains("optimality")) {
    const json& o = j["optimality"];
    OptimalitySummary s;
    s.tolerance = as_number(require(o, "/optimality", "tolerance"), "/optimality/tolerance");
    const std::string verdict = as_string(require(o, "/optimality", "verdict"), "/optimality/verdict");
    known = false;
    for (auto v : {Verdict::optimal_within_tol, Verdict::not_optimal, Verdict::indeterminate}) {
      if (verdict == to_string(v)) {
        s.verdict = v;
        known = true;
      }
    }
    if (!known) throw ParseError("/optimality/verdict", "unknown verdict '" + verdict + "'");
    s.global_balance_norm =
        as_number(require(o, "/optimality", "global_balance_norm"), "/optimality/global_balance_norm");
    s.chain_normal_ok = require(o, "/optimality", "chain_normal_ok").get<std::vector<bool>>();
    s.chain_indeterminate = require(o, "/optimality", "chain_indeterminate").get<std::vector<bool>>();
    s.hub_normal_ok = as_bool(require(o, "/optimality", "hub_normal_ok"), "/optimality/hub_normal_ok");
    s.hub_indeterminate = as_bool(require(o, "/optimality", "hub_indeterminate"), "/optimality/hub_indeterminate");
    s.overlapping_pairs =
        std::size_t(as_integer(require(o, "/optimality", "overlapping_pairs"), "/optimality/overlapping_pairs"));
    doc.optimality = std::move(s);
  }
  if (j.contains("trace_file")) doc.trace_file = as_string(j["trace_file"], "/trace_file");

  const double recomputed = objective(p, doc.best_config);
  if (std::abs(recomputed - doc.best_objective) > kObjectiveReloadTol) {
    throw StructuralError("/best_objective: stored value " + format_number(doc.best_objective) +
                          " disagrees with recomputed objective " + format_number(recomputed));
  }
  return doc;
}

ResultsDocument load_results(const std::filesystem::path& path, const Problem& p) {
  return parse_results(read_file(path), p);
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::string out = "k,J,J_best,alpha,grad_norm\n";
  for (const auto& r : trace) {
    out += std::to_string(r.k);
    for (double v : {r.objective, r.best_objective, r.step, r.grad_norm}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), std::streamsize(contents.size()));
    out.flush();
    if (!out) throw IoError("error while writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move results into '" + path.string() + "'");
  }
}

}  // namespace heronwaist
