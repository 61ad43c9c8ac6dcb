#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "heronwaist/errors.hpp"
#include "heronwaist/io.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace heronwaist;
using namespace heronwaist::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kData = HERONWAIST_DATA_DIR;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("heronwaist_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

template <class F>
std::string parse_error_where(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.where();
  }
  return "<no error>";
}

ConvexSet random_set(oracle::Sampler& s, int n) {
  switch (s.integer(0, 3)) {
    case 0: return ConvexSet::ball(s.vector(n, -5, 5), s.uniform(0.1, 3));
    case 1: return ConvexSet::box(s.vector(n, -5, 5), s.vector(n, 0.1, 3));
    case 2: return ConvexSet::halfspace(s.vector(n, 0.5, 1), s.uniform(-2, 2));
    default: return ConvexSet::singleton(s.vector(n, -5, 5));
  }
}

const char* kMinimal = R"({
  "dimension": 2,
  "chain_sets": [
    {"kind": "ball", "center": [0, 0], "radius": 1},
    {"kind": "ball", "center": [5, 0], "radius": 1},
    {"kind": "ball", "center": [0, 5], "radius": 1}
  ],
  "hub_set": {"kind": "singleton", "point": [2, 2]},
  "rho": [1, 1, 1],
  "omega": [1, 1, 1]
})";

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("bundled instances") {
    const auto one = load_problem(kData / "example1.json");
    CHECK(one.problem == example1());
    REQUIRE(one.init.has_value());
    CHECK(*one.init == example1_init());
    CHECK(one.solver.tolerance == 1e-12);
    CHECK(one.solver.step_rule == StepRule::harmonic);

    const auto two = load_problem(kData / "example2.json");
    CHECK(two.problem == example2());
    CHECK(two.problem.size() == 5);
    CHECK(two.problem.dimension() == 3);
    REQUIRE(two.init.has_value());
    CHECK(*two.init == example2_init());
  }

  TEST_CASE("defaults when init and solver are omitted") {
    const auto spec = parse_problem(kMinimal);
    CHECK_FALSE(spec.init.has_value());
    CHECK(spec.solver.tolerance == SolverConfig{}.tolerance);
    CHECK(spec.solver.max_iter == SolverConfig{}.max_iter);
  }

  TEST_CASE("syntax errors carry a line and column") {
    CHECK(parse_error_where([] { parse_problem("{\n  \"dimension\": 2,\n  \"rho\": [1, 2,,]\n}"); }) == "3:16");
    CHECK(parse_error_where([] { parse_problem(""); }).find(':') != std::string::npos);
  }

  TEST_CASE("schema errors name the field") {
    std::string text = kMinimal;
    auto edit = [&](const std::string& from, const std::string& to) {
      std::string t = text;
      t.replace(t.find(from), from.size(), to);
      return t;
    };
    CHECK(parse_error_where([&] { parse_problem(edit("\"radius\": 1}", "\"radius\": \"one\"}")); }) ==
          "/chain_sets/0/radius");
    CHECK(parse_error_where([&] { parse_problem(edit("\"kind\": \"singleton\"", "\"kind\": \"torus\"")); }) ==
          "/hub_set/kind");
    CHECK(parse_error_where([&] { parse_problem(edit("\"point\": [2, 2]", "\"point\": [2, 2, 2]")); }) ==
          "/hub_set/point");
    CHECK(parse_error_where([&] { parse_problem(edit("\"rho\"", "\"rhoo\"")); }) == "/rhoo");
    CHECK(parse_error_where([&] { parse_problem(edit("\"omega\": [1, 1, 1]", "\"omega\": [1, 1, 1], \"init\": 4")); })
              .rfind("/init", 0) == 0);
    CHECK(parse_error_where([&] {
            parse_problem(edit("\"omega\": [1, 1, 1]", "\"omega\": [1, 1, 1], \"solver\": {\"step_rule\": \"x\"}"));
          }) == "/solver/step_rule");
  }

  TEST_CASE("structural errors") {
    std::string text = kMinimal;
    text.replace(text.find("\"rho\": [1, 1, 1]"), 16, "\"rho\": [1, 1]");
    try {
      parse_problem(text);
      FAIL("expected a structural error");
    } catch (const StructuralError& e) {
      CHECK(std::string(e.what()).find("rho") != std::string::npos);
    }

    std::string negative = kMinimal;
    negative.replace(negative.find("\"radius\": 1}"), 12, "\"radius\": -1}");
    CHECK_THROWS_AS(parse_problem(negative), StructuralError);
  }

  TEST_CASE("problem round trip") {
    oracle::Sampler s(41);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = s.integer(1, 4);
      const std::size_t m = std::size_t(s.integer(3, 6));
      std::vector<ConvexSet> sets;
      for (std::size_t i = 0; i < m; ++i) sets.push_back(random_set(s, n));
      std::vector<double> rho(m), omega(m);
      for (std::size_t i = 0; i < m; ++i) {
        rho[i] = s.uniform(0.1, 3);
        omega[i] = s.uniform(0, 3);
      }
      ProblemSpec spec{Problem(sets, random_set(s, n), Weights{rho, omega}), std::nullopt, {}};
      if (trial % 2 == 0) {
        Configuration u(n, m);
        u.flat() = s.vector(int(u.flat().size()), -9, 9);
        spec.init = u;
      }
      spec.solver.tolerance = s.uniform(1e-12, 1e-3);
      spec.solver.step_scale = s.uniform(0.1, 3);
      spec.solver.max_iter = s.integer(1, 1000000);
      const std::string text = serialize_problem(spec);
      CHECK(parse_problem(text) == spec);
      CHECK(serialize_problem(parse_problem(text)) == text);
    }
  }

  TEST_CASE("results round trip and objective check") {
    SolverConfig cfg;
    cfg.tolerance = 1e-6;
    const auto result = solve(example1(), example1_init(), cfg);
    const auto report = verify(example1(), result.best_config, 1e-4);
    const auto doc = make_results(result, report, "trace.csv");
    const std::string text = serialize_results(doc);

    const auto back = parse_results(text, example1());
    CHECK(back.best_config == result.best_config);
    CHECK(back.best_objective == result.best_objective);
    CHECK(back.iterations == result.iterations);
    CHECK(back.stop_reason == result.stop_reason);
    REQUIRE(back.checkpoints.size() == 5);
    CHECK(back.checkpoints[0].iteration == result.checkpoints[0].iteration);
    CHECK_FALSE(back.checkpoints[4].iteration.has_value());
    REQUIRE(back.optimality.has_value());
    CHECK(back.optimality->verdict == report.verdict);
    CHECK(back.trace_file == "trace.csv");
    CHECK(serialize_results(back) == text);
    CHECK(std::abs(objective(example1(), back.best_config) - back.best_objective) <= 1e-12);

    std::string tampered = text;
    const std::string key = "\"best_objective\": ";
    const auto at = tampered.find(key) + key.size();
    tampered.replace(at, tampered.find(',', at) - at, "85.0");
    CHECK_THROWS_AS(parse_results(tampered, example1()), StructuralError);
    CHECK_THROWS_AS(parse_results(text, example2()), StructuralError);
    CHECK_THROWS_AS(parse_results("{\"format\": \"other\"}", example1()), ParseError);
  }

  TEST_CASE("trace csv") {
    SolverConfig cfg;
    cfg.tolerance = 1e-4;
    const auto result = solve(example1(), example1_init(), cfg);
    const std::string csv = trace_csv(result.trace);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,J,J_best,alpha,grad_norm");
    long previous_k = 0;
    double previous_best = std::numeric_limits<double>::infinity();
    int rows = 0;
    while (std::getline(in, line)) {
      long k;
      double j, best, alpha, g;
      REQUIRE(std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf,%lf", &k, &j, &best, &alpha, &g) == 5);
      CHECK(k > previous_k);
      CHECK(best <= previous_best);
      previous_k = k;
      previous_best = best;
      ++rows;
    }
    CHECK(rows == int(result.trace.size()));
    CHECK(format_number(85.277273078787) == "85.2772730788");
  }

  TEST_CASE("files") {
    const fs::path dir = scratch_dir("files");
    write_file_atomic(dir / "a.txt", "hello");
    CHECK(read_file(dir / "a.txt") == "hello");
    write_file_atomic(dir / "a.txt", "again");
    CHECK(read_file(dir / "a.txt") == "again");
    CHECK_FALSE(fs::exists(dir / "a.txt.tmp"));
    CHECK_THROWS_AS(read_file(dir / "missing.json"), IoError);
    CHECK_THROWS_AS(load_problem(dir / "missing.json"), IoError);
    CHECK_THROWS_AS(write_file_atomic(dir / "no" / "such" / "dir.txt", "x"), IoError);
    fs::remove_all(dir);
  }
}
