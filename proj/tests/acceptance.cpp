#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "crlab/applications.hpp"
#include "crlab/diagonal_spaces.hpp"
#include "crlab/experiments.hpp"
#include "crlab/leech.hpp"
#include "crlab/random.hpp"

using namespace crlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

/// Largest raw violation over the records; negative when every trial has slack.
double worst(const RunReport& r) {
  double w = -1e300;
  for (const auto& rec : r.records)
    if (rec["violation"].is_number()) w = std::max(w, rec["violation"].get<double>());
  return w;
}

ExperimentConfig config(const std::string& command, const std::string& target = "") {
  ExperimentConfig c;
  c.command = command;
  c.target = target;
  return c;
}

Outcome main_suite() {
  ExperimentConfig c = config("verify", "column-row");
  c.d = 3;
  c.n = 6;
  c.N = 4;
  c.trials = 200;
  c.vary_dims = true;
  const auto t0 = std::chrono::steady_clock::now();
  const RunReport r = run_command(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {r.pass && r.records.size() == 200 && secs < 60.0,
          fmt("200 trials, max(row - column) = %.3g, failures %.0f, %.2f s", worst(r), r.failures, secs)};
}

Outcome column_matrix_suite() {
  ExperimentConfig c = config("verify", "column-matrix");
  c.d = 3;
  c.n = 6;
  c.trials = 100;
  c.vary_dims = true;
  const RunReport r = run_command(c);
  bool shapes = true;
  for (const auto& rec : r.records)
    if (rec["metrics"]["M"].get<Index>() * rec["metrics"]["N"].get<Index>() > 6) shapes = false;
  return {r.pass && shapes && r.records.size() == 100,
          fmt("100 trials, max(matrix - column) = %.3g, failures %.0f", worst(r), r.failures)};
}

Outcome pair_suite() {
  ExperimentConfig c = config("verify", "pairs");
  c.n = 5;
  c.trials = 50;
  const RunReport r = run_command(c);
  return {r.pass && r.records.size() == 50,
          fmt("50 trials, max(matrix - column) = %.3g, failures %.0f", worst(r), r.failures)};
}

Outcome example_reproduction() {
  const RunReport r = run_command(config("reproduce", "example-row-column"));
  double col = 0.0, row = 0.0;
  for (const auto& rec : r.records) {
    if (rec["name"] == "column_norm") col = rec["actual"].get<double>();
    if (rec["name"] == "row_norm") row = rec["actual"].get<double>();
  }
  return {r.pass, fmt("column %.10f, row %.12f, failed checks %.0f", col, row, r.failures)};
}

Outcome alpha_counterexample() {
  bool ok = true;
  double last = 1.0;
  for (double a : {2.0, 4.0, 10.0, 100.0}) {
    ExperimentConfig c = config("reproduce", "alpha");
    c.alpha = a;
    ok = run_command(c).pass && ok;
    const auto h = alpha_example(a, 50);
    const double ratio = row_norm_sq(h, MonomialTuple{{1, 2}}).value / column_norm_sq(h, MonomialTuple{{1, 2}}).value;
    ok = ok && std::abs(ratio - 2.0 * a / (1.0 + a)) <= 1e-12 && ratio > last;
    last = ratio;
  }
  const auto h4 = alpha_example(4.0, 50);
  const double col = column_norm_sq(h4, MonomialTuple{{1, 2}}).value;
  const double row = row_norm_sq(h4, MonomialTuple{{1, 2}}).value;
  const double b2 = inverse_series_coeffs(h4, 50)[1];
  ok = ok && std::abs(col - 5.0) <= 1e-12 && std::abs(row - 8.0) <= 1e-12 && std::abs(b2 + 0.75) <= 1e-12 &&
       2.0 - last < 0.02;
  return {ok, fmt("alpha = 4: column^2 %.15g, row^2 %.15g, b2 %.15g", col, row, b2)};
}

Outcome matrix_units() {
  const RunReport r = run_command(config("reproduce", "matrix-units"));
  return {r.pass, fmt("max deviation from (1, 1, sqrt 2) = %.3g", r.max_violation)};
}

Outcome leech_postconditions() {
  ExperimentConfig c = config("leech-check");
  c.d = 3;
  c.n = 5;
  c.N = 3;
  c.trials = 100;
  c.vary_dims = true;
  const RunReport r = run_command(c);
  double residual = 0.0, psi = 0.0, gap = 0.0;
  bool ok = r.pass && r.records.size() == 100;
  for (const auto& record : r.records) {
    if (!record.contains("metrics") || !record["metrics"].contains("leech_residual")) {
      ok = false;
      continue;
    }
    const Json& rec = record["metrics"];
    residual = std::max({residual, rec["leech_residual"].get<double>(), rec["origin_residual"].get<double>()});
    psi = std::max(psi, rec["leech_psi_norm"].get<double>());
    gap = std::max(gap, std::abs(rec["origin_psi_norm"].get<double>() - rec["origin_phi_norm"].get<double>()));
  }
  ok = ok && residual <= 1e-8 && psi <= 1.0 + 1e-7 && gap <= 1e-6;
  return {ok, fmt("max residual %.3g, max ||Psi|| %.12f, max origin norm gap %.3g", residual, psi, gap)};
}

Outcome moebius_identities() {
  bool ok = true;
  double worst = 0.0;
  for (Index d = 1; d <= 3; ++d) {
    ExperimentConfig c = config("moebius");
    c.d = d;
    c.trials = 100;
    const RunReport r = run_command(c);
    ok = ok && r.pass && r.records.size() == 100;
    worst = std::max(worst, r.max_violation);
  }
  return {ok && worst <= 1e-10, fmt("300 triples, max residual %.3g", worst)};
}

Outcome schur_equivalence() {
  int agree = 0, expected = 0;
  for (int t = 0; t < 100; ++t) {
    Rng rng(2024, static_cast<std::uint64_t>(t));
    const Index d = rng.uniform_int(1, 3);
    const Index nn = rng.uniform_int(2, 5);
    const Index cols = rng.uniform_int(1, 3);
    const auto space = drury_arveson_space(d, rng.ball_points(d, static_cast<std::size_t>(nn), 0.9, true));
    const auto psi = random_contractive_column(space, d * cols, rng.engine()(), 1.0);
    const MultiplierTable phi = multiply(coordinate_block_row(space, cols), psi);
    const double norm = multiplier_norm(space, phi);
    const double u = rng.uniform();
    const double target = u < 0.5 ? 0.6 + 0.7 * u : 1.05 + 0.5 * (u - 0.5);
    const SchurReduction sr = schur_reduce(space, phi.scaled(target / norm));
    if (sr.reduced_verdict == sr.direct_verdict) ++agree;
    if (sr.direct_verdict == (target < 1.0)) ++expected;
  }
  return {agree == 100 && expected == 100,
          fmt("verdicts agree on %.0f/100, match the norm on %.0f/100", agree, expected)};
}

double separation_oracle(const FiniteKernelSpace& space) {
  const MultiplierTable e(1, 1, {ComplexMatrix::Ones(1, 1), ComplexMatrix::Zero(1, 1)});
  return 1.0 / multiplier_norm(space, e, NormOptions{1e-12, 1e-14, 400});
}

Outcome applications() {
  ExperimentConfig c = config("reproduce", "interpolation");
  c.d = 2;
  c.n = 6;
  c.trials = 50;
  const RunReport interp = run_command(c);

  double sep = 0.0;
  for (int t = 0; t < 100; ++t) {
    Rng rng(77, static_cast<std::uint64_t>(t));
    const Index d = 1 + t % 3;
    const auto space = drury_arveson_space(d, rng.ball_points(d, 2, 0.95));
    sep = std::max(sep, std::abs(weak_separation_constant(space).minimum - separation_oracle(space)));
  }

  double jm = 0.0;
  bool jm_ok = true;
  for (int t = 0; t < 50; ++t) {
    Rng rng(88, static_cast<std::uint64_t>(t));
    const Index d = 1 + t % 3;
    const auto space = drury_arveson_space(d, rng.ball_points(d, static_cast<std::size_t>(rng.uniform_int(2, 5)), 0.9));
    const auto col = random_contractive_column(space, 2, rng.engine()(), 1.0);
    std::vector<ComplexMatrix> bv, av;
    for (const auto& v : col.values()) {
      bv.push_back(v.topRows(1));
      av.push_back(v.bottomRows(1));
    }
    try {
      for (int sign : {1, -1})
        jm = std::max(jm, jm_combination(space, MultiplierTable(1, 1, bv), MultiplierTable(1, 1, av), sign));
    } catch (const std::exception&) {
      jm_ok = false;
    }
  }
  const bool ok = interp.pass && sep <= 1e-8 && jm_ok && jm <= 1.0 + 1e-7;
  return {ok, fmt("interpolation max violation %.3g, separation oracle gap %.3g, max jm norm %.12f",
                  interp.max_violation, sep, jm)};
}

Outcome determinism() {
  ExperimentConfig c = config("verify", "column-row");
  c.d = 3;
  c.n = 6;
  c.N = 4;
  c.trials = 60;
  c.vary_dims = true;
  const std::string a = run_command(c).to_json(false).dump();
  const std::string b = run_command(c).to_json(false).dump();
  c.serial = true;
  const RunReport s = run_command(c);
  ExperimentConfig l = config("leech-check");
  l.trials = 20;
  const std::string la = run_command(l).to_json(false).dump();
  const std::string lb = run_command(l).to_json(false).dump();
  const bool ok = a == b && la == lb && Json::parse(a)["records"].dump() == s.records.dump();
  return {ok, ok ? "identical reports across repeated, serial and parallel runs" : "reports differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"column-row property suite", main_suite},
      {"column-matrix suite", column_matrix_suite},
      {"kernel-pair suite", pair_suite},
      {"example (z1, z2)/sqrt 2", example_reproduction},
      {"alpha counterexample", alpha_counterexample},
      {"matrix units", matrix_units},
      {"Leech postconditions", leech_postconditions},
      {"Moebius identities", moebius_identities},
      {"Schur complement equivalence", schur_equivalence},
      {"applications", applications},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
