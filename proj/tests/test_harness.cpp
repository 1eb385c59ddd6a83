#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "crossres/checks.hpp"
#include "crossres/compare.hpp"
#include "crossres/config.hpp"
#include "crossres/errors.hpp"
#include "crossres/fit.hpp"
#include "crossres/parallel.hpp"
#include "crossres/report.hpp"
#include "support.hpp"

using namespace crossres;
using nlohmann::json;

namespace {

json minimal_config() {
  return json::parse(R"({
    "potentials": {
      "V1": {"kind": "shifted-sech-well", "asymptote": 2.0, "alpha": 1.0, "center": -0.5},
      "V2": {"kind": "tanh-step", "amplitude": 1.5, "alpha": 1.0, "center": 0.0}
    },
    "coupling": {"r0": 0.0, "r1": 1.0},
    "window": {"E0": 1.0, "delta0": 0.1, "C0": 2.0},
    "contour": {"theta": 0.3, "x_infty": 3.0, "ramp_width": 1.0, "box": [-8.0, 14.0]},
    "sweep": {"h_values": [0.02, 0.08, 0.04], "N": [1024, 2048, 4096], "theta_values": [0.3, 0.35],
              "methods": ["ecs", "wronskian"]}
  })");
}

std::vector<ComparisonRow> synthetic_rows(double power, bool im) {
  std::vector<ComparisonRow> rows;
  for (double h : {0.08, 0.04, 0.02, 0.01})
    for (int k : {3, 4}) {
      ComparisonRow r;
      r.h = h;
      r.k = k;
      r.method = OracleMethod::ecs;
      r.C = 1.0;
      const double v = (k == 3 ? 1.0 : 0.5) * std::pow(h, power);
      (im ? r.res_im : r.res_re) = v;
      (im ? r.res_re : r.res_im) = 1e-3 * h * h;
      r.oracle = cplx(1.0, -h * h);
      rows.push_back(r);
    }
  return rows;
}

ExperimentConfig small_run() {
  json j = minimal_config();
  j["sweep"]["h_values"] = {0.08};
  j["sweep"]["N"] = 2048;
  return parse_config(j);
}

std::string csv_of(const CompareResult& r) {
  std::ostringstream os;
  write_comparison_csv(os, r.rows);
  return os.str();
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config: parse, sort and round-trip") {
    const ExperimentConfig c = parse_config(minimal_config());
    REQUIRE(c.h_values.size() == 3);
    CHECK(c.h_values[0] == 0.08);
    CHECK(c.h_values[1] == 0.04);
    CHECK(c.h_values[2] == 0.02);
    CHECK(c.N_for(0) == 2048);
    CHECK(c.N_for(1) == 4096);
    CHECK(c.N_for(2) == 1024);
    CHECK(c.methods.size() == 2);
    CHECK(c.problem.coupling.r1(0.3) == 1.0);
    CHECK(c.problem.V1(0.0) == doctest::Approx(0.0).epsilon(1e-14));

    const ExperimentConfig back = parse_config(config_to_json(c));
    CHECK(back.h_values == c.h_values);
    CHECK(back.N == c.N);
    CHECK(back.theta_values == c.theta_values);
    for (double x : {-2.0, 0.0, 1.3}) {
      CHECK(back.problem.V1(x) == c.problem.V1(x));
      CHECK(back.problem.V2(x) == c.problem.V2(x));
    }
    CHECK(config_to_json(back) == config_to_json(c));
  }

  TEST_CASE("config: polynomial coefficients and defaults") {
    json j = minimal_config();
    j["coupling"]["r0"] = json::parse(R"({"kind": "polynomial", "coefficients": [0.5, 2.0]})");
    j["sweep"].erase("theta_values");
    const ExperimentConfig c = parse_config(j);
    CHECK(c.problem.coupling.r0(1.0) == 2.5);
    CHECK(c.thetas() == std::vector<double>{0.3, 0.3 + 0.05});
  }

  TEST_CASE("config: errors") {
    json j = minimal_config();
    j["potentials"].erase("V2");
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = minimal_config();
    j["potentials"]["V1"]["kind"] = "gaussian";
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = minimal_config();
    j["sweep"]["h_values"] = {0.1, -0.2};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = minimal_config();
    j["coupling"] = json::parse(R"({"r0": 0.0, "r1": 0.0})");
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j["coupling"]["degenerate"] = true;
    CHECK_NOTHROW(parse_config(j));
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
    CHECK_THROWS_AS(oracle_method_from_string("arnoldi"), ConfigError);
  }

  TEST_CASE("shipped configs load") {
    for (const char* name : {"reference.json", "decoupled.json", "vanishing.json"}) {
      INFO(name);
      const ExperimentConfig c = load_config(testing::config_path(name));
      CHECK_FALSE(c.h_values.empty());
      CHECK(std::is_sorted(c.h_values.rbegin(), c.h_values.rend()));
    }
  }

  TEST_CASE("fixtures file matches a fresh computation and the closed forms") {
    const ExperimentConfig c = load_config(testing::config_path("reference.json"));
    const json fresh = fixtures_json(c.problem);
    std::ifstream in(testing::config_path("reference_fixtures.json"));
    REQUIRE(in);
    const json stored = json::parse(in);
    for (const char* group : {"turning_points", "crossing_slopes", "actions"})
      for (const auto& [key, value] : fresh.at(group).items()) {
        INFO(group << "." << key);
        CHECK(stored.at(group).at(key).get<double>() == doctest::Approx(value.get<double>()).epsilon(1e-12));
      }
    const double D = testing::pt_depth();
    const double w = std::acosh(std::sqrt(D / (2.0 - 1.0)));
    CHECK(fresh["turning_points"]["a"].get<double>() == doctest::Approx(-0.5 - w).epsilon(1e-12));
    CHECK(fresh["turning_points"]["c"].get<double>() == doctest::Approx(-0.5 + w).epsilon(1e-12));
    CHECK(fresh["turning_points"]["b"].get<double>() == doctest::Approx(-std::atanh(1.0 / 1.5)).epsilon(1e-12));
    CHECK(fresh["actions"]["A"].get<double>() == doctest::Approx(testing::pt_A(1.0)).epsilon(1e-12));
    CHECK(fresh["actions"]["dA_dE"].get<double>() == doctest::Approx(M_PI / 2).epsilon(1e-12));
  }

  TEST_CASE("windows") {
    const ProblemSpec p = testing::reference_problem();
    const double h = 0.04;
    const double s = level_spacing(p, h);
    CHECK(s == doctest::Approx(M_PI * h / testing::pt_dA(1.0)).epsilon(1e-12));
    const Window pw = prediction_window(p, h), ow = oracle_window(p, h);
    CHECK(pw.re_lo == doctest::Approx(0.9 - s / 2));
    CHECK(ow.re_hi == doctest::Approx(1.1 + s));
    CHECK(ow.im_lo == doctest::Approx(-p.C0 * h));
    CHECK(ow.contains(cplx(1.0, -0.01)));
    CHECK_FALSE(ow.contains(cplx(1.0, 0.01)));
  }

  TEST_CASE("pairing is injective and respects the distance cap") {
    std::vector<ResonancePrediction> pred;
    for (int k = 0; k < 4; ++k) pred.push_back({k, 1.0 + 0.1 * k, 0.5, cplx(1.0 + 0.1 * k, -0.001), 0.05});
    std::vector<OracleResonance> orc;
    for (double re : {1.001, 1.0015, 1.099, 1.35}) {
      OracleResonance r;
      r.E = cplx(re, -0.001);
      orc.push_back(r);
    }
    const auto rows = pair_resonances(pred, orc, 0.05, OracleMethod::ecs, 0.025);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].k == 0);
    CHECK(rows[0].oracle.real() == 1.001);
    CHECK(rows[1].k == 1);
    CHECK(rows[1].res_re == doctest::Approx(0.001));
    CHECK(rows[1].pair_dist == doctest::Approx(0.001));
    CHECK(pair_resonances(pred, {}, 0.05, OracleMethod::ecs, 0.025).empty());
  }

  TEST_CASE("pairing tie-break prefers the k nearest the previous match") {
    std::vector<ResonancePrediction> pred;
    for (int k = 0; k < 3; ++k) pred.push_back({k, 1.0 + 0.25 * k, 0.0, cplx(1.0 + 0.25 * k, 0.0), 0.05});
    std::vector<OracleResonance> orc(2);
    orc[0].E = cplx(1.0, 0.0);
    orc[1].E = cplx(1.375, 0.0);  // exactly equidistant from k = 1 and k = 2
    const auto rows = pair_resonances(pred, orc, 0.05, OracleMethod::ecs, 0.2);
    REQUIRE(rows.size() == 2);
    std::set<int> ks;
    for (const auto& r : rows) ks.insert(r.k);
    CHECK(ks.count(1) == 1);
  }

  TEST_CASE("theta filter") {
    std::vector<OracleResonance> a(3), b(2);
    a[0].E = 1.0;
    a[1].E = cplx(1.1, -0.01);
    a[2].E = cplx(1.2, -0.3);
    b[0].E = cplx(1.0 + 1e-8, 0.0);
    b[1].E = cplx(1.1, -0.01 + 5e-7);
    const StabilitySplit s = theta_filter(a, b, 1e-6);
    CHECK(s.stable.size() == 2);
    REQUIRE(s.unstable.size() == 1);
    CHECK(s.unstable[0].E == a[2].E);
  }

  TEST_CASE("power-law fits") {
    const ConvergenceFit quad = convergence_fit(synthetic_rows(2.0, false), OracleMethod::ecs);
    CHECK(quad.re.valid);
    CHECK(quad.re.slope == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(quad.per_k_re.count(3) == 1);
    CHECK(quad.per_k_re.at(4).slope == doctest::Approx(2.0).epsilon(1e-12));

    const ConvergenceFit sev = convergence_fit(synthetic_rows(7.0 / 3.0, true), OracleMethod::ecs);
    CHECK(std::abs(sev.im.slope - 7.0 / 3.0) < 1e-6);
    CHECK(sev.per_k_im.at(3).slope == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
    CHECK(sev.ratios.size() == 8);
    CHECK(sev.ratios.front().ratio == doctest::Approx(1.0));

    const SlopeFit direct = fit_power_law({0.1, 0.01}, {3e-2, 3e-4});
    CHECK(direct.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(direct.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  }

  TEST_CASE("fits drop underflowing residuals and need three h values") {
    auto rows = synthetic_rows(2.0, false);
    for (auto& r : rows)
      if (r.h == 0.01) r.res_re = 1e-15;
    const ConvergenceFit f = convergence_fit(rows, OracleMethod::ecs);
    CHECK(f.re.points == 3);
    CHECK_FALSE(f.notes.empty());
    rows.resize(4);  // two h values left
    CHECK_FALSE(convergence_fit(rows, OracleMethod::ecs).re.valid);
    CHECK_FALSE(convergence_fit(rows, OracleMethod::wronskian).re.valid);
  }

  TEST_CASE("CSV formatting") {
    CHECK(std::stod(format_number(0.1)) == 0.1);
    CHECK(std::stod(format_number(-1.0 / 3.0)) == -1.0 / 3.0);
    std::ostringstream os;
    write_comparison_csv(os, synthetic_rows(2.0, false));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == kComparisonHeader);
    int n = 0;
    while (std::getline(is, line)) {
      CHECK(std::count(line.begin(), line.end(), ',') == 11);
      ++n;
    }
    CHECK(n == 8);
  }

  TEST_CASE("plot data files") {
    const auto dir = std::filesystem::temp_directory_path() / "crossres_plot_test";
    std::filesystem::remove_all(dir);
    const auto paths = write_plot_data(dir.string(), synthetic_rows(2.0, false));
    CHECK(paths.size() == 3);
    for (const auto& path : paths) {
      std::ifstream in(path);
      std::string comment;
      std::getline(in, comment);
      CHECK(comment.rfind("# x=", 0) == 0);
      double x = 0, y = 0;
      REQUIRE(static_cast<bool>(in >> x >> y));
      CHECK(x > 0.0);
    }
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("parallel_for covers every index and rethrows") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int v) { return v == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                      if (i == 7) throw DomainError("seven");
                    }),
                    DomainError);
  }

  TEST_CASE("empty h list gives an empty table") {
    ExperimentConfig c = small_run();
    c.h_values.clear();
    const CompareResult r = run_compare(c);
    CHECK(r.rows.empty());
    CHECK(r.runs.empty());
  }

  TEST_CASE("compare: complete pairing, bit-identical reruns, filter keeps confirmed resonances") {
    ExperimentConfig c = small_run();
    c.threads = 4;
    const CompareResult a = run_compare(c);
    c.threads = 1;
    const CompareResult b = run_compare(c);
    CHECK(csv_of(a) == csv_of(b));
    REQUIRE(a.runs.size() == 1);
    const HRun& run = a.runs[0];
    for (OracleMethod m : {OracleMethod::ecs, OracleMethod::wronskian}) {
      std::set<int> ks;
      for (const auto& row : run.rows)
        if (row.method == m) {
          const bool fresh = ks.insert(row.k).second;
          CHECK(fresh);
        }
      CHECK(ks.size() == run.predictions.size());
    }
    for (const auto& dropped : run.ecs_dropped)
      for (const auto& w : run.wronskian) CHECK(std::abs(dropped.E - w.E) >= 1e-4);
  }

  TEST_CASE("compare: decoupled mode gives real oracle values") {
    json j = minimal_config();
    j["coupling"] = json::parse(R"({"r0": 0.0, "r1": 0.0, "degenerate": true})");
    j["sweep"]["h_values"] = {0.08};
    j["sweep"]["N"] = 2048;
    j["sweep"]["methods"] = {"ecs"};
    const CompareResult r = run_compare(parse_config(j));
    REQUIRE_FALSE(r.rows.empty());
    for (const auto& row : r.rows) CHECK(row.res_im < 1e-8);
  }
}
