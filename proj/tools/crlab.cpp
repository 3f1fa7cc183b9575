#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "crlab/experiments.hpp"

namespace {

struct Flags {
  std::string config_path;
  crlab::Index d = 0, n = 0, N = 0;
  int trials = 0, steps = 0;
  std::uint64_t seed = 0;
  double tol = 0, alpha = 0, a_min = 0, a_max = 0, kernel_a = 0;
  std::string out, format, kernel;
  bool vary_dims = false, serial = false;
};

void add_common(CLI::App* app, Flags& f, std::vector<CLI::Option*>& opts) {
  opts.push_back(app->add_option("--config", f.config_path, "JSON configuration file"));
  opts.push_back(app->add_option("--d", f.d, "ball dimension"));
  opts.push_back(app->add_option("--n", f.n, "number of points"));
  opts.push_back(app->add_option("--N", f.N, "number of column entries"));
  opts.push_back(app->add_option("--trials", f.trials, "number of trials"));
  opts.push_back(app->add_option("--seed", f.seed, "random seed (default 42)"));
  opts.push_back(app->add_option("--tol", f.tol, "pass tolerance (default 1e-7)"));
  opts.push_back(app->add_option("--out", f.out, "output file (default stdout)"));
  opts.push_back(app->add_option("--format", f.format, "json or csv"));
  opts.push_back(app->add_option("--kernel", f.kernel, "drury_arveson or power"));
  opts.push_back(app->add_option("--kernel-a", f.kernel_a, "power kernel exponent"));
  opts.push_back(app->add_option("--alpha", f.alpha, "alpha for the weighted space example"));
  opts.push_back(app->add_option("--a-min", f.a_min, "smallest power exponent in a sweep"));
  opts.push_back(app->add_option("--a-max", f.a_max, "largest power exponent in a sweep"));
  opts.push_back(app->add_option("--steps", f.steps, "number of sweep steps"));
  opts.push_back(app->add_flag("--vary-dims", f.vary_dims, "draw d, n, N per trial up to the given values"));
  opts.push_back(app->add_flag("--serial", f.serial, "run trials serially"));
}

crlab::Json overrides_from(const Flags& f, const std::vector<CLI::Option*>& opts) {
  crlab::Json j = crlab::Json::object();
  auto given = [&](const std::string& name) {
    for (auto* o : opts)
      if (o->get_name() == name) return o->count() > 0;
    return false;
  };
  if (given("--d")) j["d"] = f.d;
  if (given("--n")) j["n"] = f.n;
  if (given("--N")) j["N"] = f.N;
  if (given("--trials")) j["trials"] = f.trials;
  if (given("--seed")) j["seed"] = f.seed;
  if (given("--tol")) j["tol"] = f.tol;
  if (given("--out")) j["out"] = f.out;
  if (given("--format")) j["format"] = f.format;
  if (given("--kernel")) j["kernel"] = f.kernel;
  if (given("--kernel-a")) j["kernel_a"] = f.kernel_a;
  if (given("--alpha")) j["alpha"] = f.alpha;
  if (given("--a-min")) j["a_min"] = f.a_min;
  if (given("--a-max")) j["a_max"] = f.a_max;
  if (given("--steps")) j["steps"] = f.steps;
  if (given("--vary-dims")) j["vary_dims"] = f.vary_dims;
  if (given("--serial")) j["serial"] = f.serial;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crlab: column-row experiments on finite kernel spaces"};
  app.require_subcommand(1);
  Flags flags;
  std::string target;

  struct Sub {
    CLI::App* app;
    std::string command;
    std::vector<CLI::Option*> opts;
  };
  std::vector<Sub> subs;
  subs.push_back({app.add_subcommand("verify", "property suites: column-row, column-matrix, pairs"), "verify", {}});
  subs.push_back({app.add_subcommand("leech-check", "Leech factorization postconditions"), "leech-check", {}});
  subs.push_back({app.add_subcommand("moebius", "ball automorphism identities"), "moebius", {}});
  subs.push_back({app.add_subcommand("reproduce", "bundled examples"), "reproduce", {}});
  subs.push_back({app.add_subcommand("sweep", "parameter sweeps (power-kernel)"), "sweep", {}});
  for (auto& s : subs) {
    add_common(s.app, flags, s.opts);
    if (s.command == "verify" || s.command == "reproduce" || s.command == "sweep")
      s.app->add_option("target", target, "what to run")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const Sub* chosen = nullptr;
  for (const auto& s : subs)
    if (s.app->parsed()) chosen = &s;

  try {
    crlab::Json ov = overrides_from(flags, chosen->opts);
    ov["command"] = chosen->command;
    ov["target"] = target;
    const crlab::ExperimentConfig config = crlab::load_config(flags.config_path, ov);
    const crlab::RunReport report = crlab::run_command(config);
    const std::string text = config.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.out);
      if (!out) throw crlab::UsageError("cannot write '" + config.out + "'");
      out << text;
    }
    std::cerr << (report.pass ? "PASS" : "FAIL") << " " << config.command
              << (config.target.empty() ? "" : " " + config.target) << " (max violation " << report.max_violation
              << ", failures " << report.failures << ")\n";
    return report.pass ? 0 : 1;
  } catch (const crlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
