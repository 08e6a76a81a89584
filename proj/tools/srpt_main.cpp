#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "srpt/harness.hpp"
#include "srpt/reference.hpp"
#include "srpt/serialize.hpp"
#include "srpt/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw srpt::IoError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw srpt::ConfigInvalid(std::string("config parse error: ") + e.what());
  }
  return j;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw srpt::IoError("cannot write: " + path.string());
  out << contents;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw srpt::IoError("cannot write: " + path.string());
  return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) throw srpt::ConfigInvalid(where + ": expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw srpt::ConfigInvalid(where + ": unknown field '" + k + "'");
}

const char* kSimulateExample = R"({
  "processing": {"kind": "exponential", "rate": 1.0},
  "interarrival": {"kind": "exponential", "rate": 0.9},
  "first_arrival": {"kind": "exponential", "rate": 0.9},
  "horizon": 100.0,
  "truncation": null,
  "a_grid": [0.5, 1.0, 2.0],
  "snapshot_dt": 1.0,
  "seed": 1,
  "initial": {"mode": "empty"},
  "coupled_truncations": [0.5, 1.0, 2.0],
  "scaling": {"r": 10.0, "kappa": 0.0}
})";

const char* kSimulateExplicitExample = R"({
  "explicit": {
    "initial_tasks": [],
    "arrival_times": [1.0, 2.5],
    "sizes": [2.0, 0.5]
  },
  "horizon": 5.0,
  "a_grid": [1.0],
  "snapshot_dt": 0.5,
  "coupled_truncations": [1.0]
})";

const char* kSweepExample = R"({
  "law": {"kind": "exponential", "rate": 1.0},
  "interarrival_kind": "exponential",
  "kappa": -0.5,
  "r_list": [20.0, 40.0, 80.0],
  "reps": 500,
  "T": 1.0,
  "a_grid": [0.5, 2.0],
  "eps_list": [0.25, 0.5],
  "seed": 20260810,
  "functionals": ["WT", "supW_a", "supQ_a", "supQminusW", "supWdiff_a", "theta", "conc"],
  "snapshots": 200,
  "threads": 0,
  "initial": "empty",
  "initial_w": 0.0,
  "reference_paths": 2000,
  "reference_steps": 16384
})";

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 long seed_override) {
  json j = load_json(config_path);
  check_keys(j,
             {"processing", "interarrival", "first_arrival", "horizon", "truncation",
              "a_grid", "snapshot_dt", "seed", "initial", "explicit",
              "coupled_truncations", "scaling"},
             "simulate config");
  if (!j.contains("horizon") || !j["horizon"].is_number())
    throw srpt::ConfigInvalid("simulate config: missing numeric 'horizon'");
  const double horizon = j["horizon"].get<double>();

  srpt::PrimitiveStream prims;
  prims.horizon = horizon;
  std::uint64_t seed = j.value("seed", std::uint64_t{1});
  if (seed_override >= 0) seed = static_cast<std::uint64_t>(seed_override);

  if (j.contains("explicit")) {
    check_keys(j["explicit"], {"initial_tasks", "arrival_times", "sizes"},
               "simulate config/explicit");
    prims.initial_tasks =
        j["explicit"].value("initial_tasks", std::vector<double>{});
    prims.arrival_times =
        j["explicit"].value("arrival_times", std::vector<double>{});
    prims.sizes = j["explicit"].value("sizes", std::vector<double>{});
    if (prims.arrival_times.size() != prims.sizes.size())
      throw srpt::ConfigInvalid("explicit: arrival_times and sizes differ in length");
  } else {
    if (!j.contains("processing") || !j.contains("interarrival"))
      throw srpt::ConfigInvalid("simulate config: need processing and interarrival laws");
    const srpt::LawHandle proc(srpt::spec_from_json(j["processing"]));
    const srpt::LawHandle inter(srpt::spec_from_json(j["interarrival"]));
    const srpt::LawHandle first(j.contains("first_arrival")
                                    ? srpt::spec_from_json(j["first_arrival"])
                                    : inter.spec());
    srpt::InitialCondition init = srpt::InitialCondition::empty();
    if (j.contains("initial")) {
      const json& ji = j["initial"];
      check_keys(ji, {"mode", "w", "r", "c_r", "tasks"}, "simulate config/initial");
      const std::string mode = ji.value("mode", "empty");
      if (mode == "atom_near_one") {
        init = srpt::InitialCondition::atom_near_one(
            ji.value("w", 0.0), ji.value("r", 0.0), ji.value("c_r", 0.0));
      } else if (mode == "explicit") {
        // handled below
      } else if (mode != "empty") {
        throw srpt::ConfigInvalid("initial.mode must be empty|atom_near_one|explicit");
      }
    }
    prims = srpt::generate_primitives(proc, inter, first, init, horizon, seed);
    if (j.contains("initial") && j["initial"].value("mode", "") == "explicit")
      prims.initial_tasks = j["initial"].value("tasks", std::vector<double>{});
  }

  const double truncation =
      (j.contains("truncation") && j["truncation"].is_number())
          ? j["truncation"].get<double>()
          : kInf;

  srpt::SimulateOptions opt;
  opt.a_grid = j.value("a_grid", std::vector<double>{});
  opt.snapshot_dt = j.value("snapshot_dt", std::max(horizon / 200.0, 1e-12));
  opt.event_log = true;
  opt.event_samples = true;
  opt.measures = srpt::SimulateOptions::Measures::Final;
  const srpt::Trajectory full = srpt::simulate(prims, truncation, opt);

  std::map<double, const srpt::Trajectory*> coupled;
  std::vector<srpt::Trajectory> truncated_runs;
  if (j.contains("coupled_truncations")) {
    const auto cuts = j["coupled_truncations"].get<std::vector<double>>();
    truncated_runs.reserve(cuts.size());
    for (double a : cuts) {
      srpt::SimulateOptions topt;
      topt.snapshot_dt = opt.snapshot_dt;
      truncated_runs.push_back(srpt::simulate(prims, a, topt));
    }
    for (std::size_t i = 0; i < truncated_runs.size(); ++i)
      coupled[cuts[i]] = &truncated_runs[i];
  }

  fs::create_directories(out_dir);
  {
    auto os = open_out(fs::path(out_dir) / "trajectory.csv");
    srpt::write_trajectory_csv(os, full, coupled);
  }
  {
    auto os = open_out(fs::path(out_dir) / "events.jsonl");
    srpt::write_events_jsonl(os, full);
  }
  if (j.contains("scaling")) {
    check_keys(j["scaling"], {"r", "kappa"}, "simulate config/scaling");
    const srpt::LawHandle proc(j.contains("processing")
                                   ? srpt::spec_from_json(j["processing"])
                                   : srpt::DistributionSpec::exponential(1.0));
    const auto p = srpt::make_params(proc, j["scaling"].value("r", 10.0),
                                     j["scaling"].value("kappa", 0.0));
    const auto st = srpt::tilde_processes(full, p, full.horizon / (p.r * p.r));
    auto os = open_out(fs::path(out_dir) / "scaled.csv");
    srpt::write_scaled_csv(os, st);
  }
  std::cout << "simulate: wrote " << out_dir << "/trajectory.csv ("
            << full.n_snapshots() << " snapshots, "
            << (full.events ? full.events->size() : 0) << " events)\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              long seed_override) {
  json j = load_json(config_path);
  srpt::ExperimentConfig cfg = srpt::config_from_json(j);
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  const auto report = srpt::run_ensemble(cfg);
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "report.json", srpt::report_to_json(report).dump(2) + "\n");
  {
    auto os = open_out(fs::path(out_dir) / "report.csv");
    srpt::write_report_csv(os, report);
  }
  for (const auto& b : report.per_r) {
    std::cout << "r=" << b.r << " c_r=" << srpt::fmt_double(b.c_r)
              << " ks_reference=" << srpt::fmt_double(b.ks_reference)
              << " violations=" << b.sandwich_workload_violations << "/"
              << b.sandwich_integer_violations << "/" << b.reflection_violations
              << "/" << b.two_sided_violations << "\n";
  }
  for (const auto& [name, pass] : report.trends)
    std::cout << "trend " << name << ": " << (pass ? "yes" : "no") << "\n";
  if (report.hard_fail) {
    std::cout << "HARD FAIL: sandwich/coupling violations present\n";
    return 2;
  }
  return 0;
}

int cmd_rbm(double sigma, double kappa, double lambda, double w0, bool w0_exp,
            double T, int steps, long paths, std::uint64_t seed, double a,
            bool have_a, int dump_paths, const std::string& out_dir) {
  srpt::LimitParams p;
  p.sigma = sigma;
  p.kappa = kappa;
  p.lambda = lambda;
  p.w0 = w0;
  p.w0_exponential = w0_exp;

  std::vector<double> terminal;
  if (have_a) {
    terminal.reserve(static_cast<std::size_t>(paths));
    for (long i = 0; i < paths; ++i) {
      srpt::Rng rng(srpt::substream(seed, 0xB0, static_cast<std::uint64_t>(i)));
      const auto g = srpt::limit_field_sample(p, a, T, steps, rng);
      terminal.push_back(g.values.back());
    }
  } else {
    terminal = srpt::rbm_terminal_ensemble(p, T, steps, paths, seed,
                                           srpt::resolve_threads(0));
  }
  const auto summary = srpt::summarize(terminal);
  json js{{"functional", have_a ? "W*_a(T)" : "W*(T)"},
          {"T", T},
          {"n_paths", paths},
          {"n_steps", steps},
          {"mean", summary.mean},
          {"variance", summary.variance},
          {"quantiles",
           {{"0.1", summary.q10},
            {"0.25", summary.q25},
            {"0.5", summary.median},
            {"0.75", summary.q75},
            {"0.9", summary.q90}}}};
  if (have_a) js["a"] = a;
  std::cout << js.dump(2) << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "summary.json", js.dump(2) + "\n");
    for (int i = 0; i < dump_paths; ++i) {
      srpt::Rng rng(srpt::substream(seed, 0xB0, static_cast<std::uint64_t>(i)));
      const auto g = have_a ? srpt::limit_field_sample(p, a, T, steps, rng)
                            : srpt::rbm_sample(p, T, steps, rng);
      auto os = open_out(fs::path(out_dir) / ("path_" + std::to_string(i) + ".csv"));
      srpt::write_grid_csv(os, g);
    }
  }
  return 0;
}

int cmd_walk(int jlevel, int llevel, long paths, std::uint64_t seed) {
  const double exact = srpt::biased_walk_hit(jlevel, llevel);
  srpt::Rng rng(srpt::substream(seed, 0x3A1C));
  const auto mc = srpt::biased_walk_mc(jlevel, llevel, paths, rng);
  std::printf("h_%d^%d exact    = %.6f\n", jlevel, llevel, exact);
  std::printf("h_%d^%d estimate = %.6f +- %.6f  (n=%ld)\n", jlevel, llevel,
              mc.estimate, mc.std_error, mc.n);
  const double dev = std::abs(mc.estimate - exact);
  std::printf("deviation = %.6f (%.2f standard errors)\n", dev,
              mc.std_error > 0 ? dev / mc.std_error : 0.0);
  return 0;
}

int cmd_dist(const std::string& law_str, double r, const std::string& out_dir) {
  const srpt::LawHandle law(srpt::parse_law_shorthand(law_str));
  std::printf("law: %s  mean=%.6f  sd=%.6f\n", law.spec().describe().c_str(),
              law.mean(), law.std_dev());
  if (law.unbounded_support()) {
    const double c_r = law.s_inverse(r);
    std::printf("c_r = %.6f  (S^{-1}(%g))\n", c_r, r);
    std::printf("S(c_r) = %.6f\n", law.big_s(c_r));
    std::printf("\n  x        S(x)           tail(x)        tail_work(x)\n");
    for (double x : {0.0, 0.5 * c_r, c_r, 1.5 * c_r, 2.0 * c_r}) {
      std::printf("  %-8.4f %-14.6g %-14.6g %-14.6g\n", x, law.big_s(x), law.tail(x),
                  law.tail_work(x));
    }
    std::printf("\n  t      ratio_tail(t, c_r)   ratio_s_inverse(t, r)\n");
    for (double t : {1.5, 2.0, 4.0}) {
      double rt = std::numeric_limits<double>::quiet_NaN();
      try {
        rt = law.ratio_tail(t, c_r);
      } catch (const srpt::DivisionByZeroTail&) {
      }
      std::printf("  %-6.2f %-20.6g %-20.6g\n", t, rt, law.ratio_s_inverse(t, r));
    }
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      auto os = open_out(fs::path(out_dir) / "scale_function.csv");
      os << "x,S,tail,tail_work\n";
      for (int k = 0; k <= 100; ++k) {
        const double x = 2.0 * c_r * k / 100.0;
        os << srpt::fmt_double(x) << ',' << srpt::fmt_double(law.big_s(x)) << ','
           << srpt::fmt_double(law.tail(x)) << ',' << srpt::fmt_double(law.tail_work(x))
           << '\n';
      }
    }
  } else {
    std::printf("bounded support: S/S^{-1} undefined (UnboundedSupportRequired)\n");
    std::printf("tail_work(0) = %.6f\n", law.tail_work(0.0));
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, int threads) {
  const auto results = srpt::run_verification(seed, threads);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%-44s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SRPT heavy-traffic simulation lab"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  long seed_override = -1;
  bool print_example = false;

  auto* sim = app.add_subcommand("simulate", "one trajectory + scaled outputs");
  sim->add_option("--config", config_path, "JSON config");
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--seed", seed_override, "override config seed");
  sim->add_flag("--example-config", print_example, "print a documented example config");

  auto* sweep = app.add_subcommand("sweep", "coupled ensemble over the r-sequence");
  sweep->add_option("--config", config_path, "JSON config");
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--seed", seed_override, "override config seed");
  sweep->add_flag("--example-config", print_example, "print a documented example config");

  double sigma = 1.0, kappa = 0.0, lambda = 1.0, w0 = 0.0, T = 1.0, a_field = 0.0;
  bool w0_exp = false, have_a = false;
  int steps = 1 << 14, dump_paths = 0, threads = 0;
  long paths = 100000;
  std::uint64_t seed = 1;
  int jlevel = 2, llevel = 3;
  std::string law_str = "exponential:1";
  double r_value = 10.0;

  auto* rbm = app.add_subcommand("rbm", "reflected Brownian reference ensembles");
  rbm->add_option("--sigma", sigma);
  rbm->add_option("--kappa", kappa);
  rbm->add_option("--lambda", lambda);
  rbm->add_option("--w0", w0);
  rbm->add_flag("--w0-exponential", w0_exp, "draw W*(0) ~ Exponential(mean w0)");
  rbm->add_option("--T", T);
  rbm->add_option("--steps", steps);
  rbm->add_option("--paths", paths);
  rbm->add_option("--seed", seed);
  rbm->add_option("--a", a_field)->each([&](const std::string&) { have_a = true; });
  rbm->add_option("--dump-paths", dump_paths);
  rbm->add_option("--out", out_dir)->default_val("");

  auto* walk = app.add_subcommand("walk", "biased random walk: exact vs Monte Carlo");
  walk->add_option("--j", jlevel)->required();
  walk->add_option("--l", llevel)->required();
  walk->add_option("--paths", paths);
  walk->add_option("--seed", seed);

  auto* dist = app.add_subcommand("dist", "scale function and tail tables");
  dist->add_option("--law", law_str, "kind:params, e.g. exponential:1");
  dist->add_option("--r", r_value);
  dist->add_option("--out", out_dir)->default_val("");

  auto* verify = app.add_subcommand("verify", "run all module property suites");
  verify->add_option("--seed", seed);
  verify->add_option("--threads", threads);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      if (print_example) {
        std::cout << kSimulateExample << "\n\nexplicit-primitives variant:\n"
                  << kSimulateExplicitExample << "\n";
        return 0;
      }
      if (config_path.empty()) throw srpt::ConfigInvalid("simulate: --config required");
      return cmd_simulate(config_path, out_dir, seed_override);
    }
    if (sweep->parsed()) {
      if (print_example) {
        std::cout << kSweepExample << "\n";
        return 0;
      }
      if (config_path.empty()) throw srpt::ConfigInvalid("sweep: --config required");
      return cmd_sweep(config_path, out_dir, seed_override);
    }
    if (rbm->parsed())
      return cmd_rbm(sigma, kappa, lambda, w0, w0_exp, T, steps, paths, seed, a_field,
                     have_a, dump_paths, out_dir);
    if (walk->parsed()) return cmd_walk(jlevel, llevel, paths, seed);
    if (dist->parsed()) return cmd_dist(law_str, r_value, out_dir);
    if (verify->parsed()) return cmd_verify(seed, threads);
  } catch (const srpt::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const srpt::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
