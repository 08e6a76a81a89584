#include "srpt/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

namespace srpt {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) throw ConfigInvalid(where + ": expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k))
      throw ConfigInvalid(where + ": unknown field '" + k + "'");
  }
}

double need_num(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigInvalid(where + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

}  // namespace

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json spec_to_json(const DistributionSpec& spec) {
  json j;
  switch (spec.kind) {
    case LawKind::Exponential:
      j = {{"kind", "exponential"}, {"rate", spec.rate}};
      break;
    case LawKind::Weibull:
      j = {{"kind", "weibull"}, {"scale", spec.scale}, {"shape", spec.shape}};
      break;
    case LawKind::Pareto:
      j = {{"kind", "pareto"}, {"index", spec.index}, {"x_m", spec.x_m}};
      break;
    case LawKind::Uniform:
      j = {{"kind", "uniform"}, {"lo", spec.lo}, {"hi", spec.hi}};
      break;
    case LawKind::Deterministic:
      j = {{"kind", "deterministic"}, {"value", spec.value}};
      break;
  }
  return j;
}

DistributionSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigInvalid("law: expected an object with a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "exponential") {
      check_keys(j, {"kind", "rate"}, "law");
      return DistributionSpec::exponential(need_num(j, "rate", "law"));
    }
    if (kind == "weibull") {
      check_keys(j, {"kind", "scale", "shape"}, "law");
      return DistributionSpec::weibull(need_num(j, "scale", "law"),
                                       need_num(j, "shape", "law"));
    }
    if (kind == "pareto") {
      check_keys(j, {"kind", "index", "x_m"}, "law");
      return DistributionSpec::pareto(need_num(j, "index", "law"),
                                      need_num(j, "x_m", "law"));
    }
    if (kind == "uniform") {
      check_keys(j, {"kind", "lo", "hi"}, "law");
      return DistributionSpec::uniform(need_num(j, "lo", "law"),
                                       need_num(j, "hi", "law"));
    }
    if (kind == "deterministic") {
      check_keys(j, {"kind", "value"}, "law");
      return DistributionSpec::deterministic(need_num(j, "value", "law"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigInvalid(std::string("law: ") + e.what());
  }
  throw ConfigInvalid("law: unknown kind '" + kind + "'");
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["law"] = spec_to_json(cfg.law);
  j["interarrival_kind"] = cfg.interarrival_kind;
  if (!cfg.first_arrival_kind.empty()) j["first_arrival_kind"] = cfg.first_arrival_kind;
  j["kappa"] = cfg.kappa;
  j["r_list"] = cfg.r_list;
  j["reps"] = cfg.reps;
  j["T"] = cfg.T;
  j["a_grid"] = cfg.a_grid;
  j["eps_list"] = cfg.eps_list;
  j["seed"] = cfg.seed;
  j["functionals"] = cfg.functionals;
  j["snapshots"] = cfg.snapshots;
  j["threads"] = cfg.threads;
  j["initial"] = cfg.initial;
  j["initial_w"] = cfg.initial_w;
  j["reference_paths"] = cfg.reference_paths;
  j["reference_steps"] = cfg.reference_steps;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  check_keys(j,
             {"law", "interarrival_kind", "first_arrival_kind", "kappa", "r_list",
              "reps", "T", "a_grid", "eps_list", "seed", "functionals", "snapshots",
              "threads", "initial", "initial_w", "reference_paths", "reference_steps"},
             "config");
  ExperimentConfig cfg;
  if (!j.contains("law")) throw ConfigInvalid("config: missing 'law'");
  cfg.law = spec_from_json(j["law"]);
  auto get = [&](const char* key, auto& out) {
    if (j.contains(key)) out = j[key].get<std::decay_t<decltype(out)>>();
  };
  get("interarrival_kind", cfg.interarrival_kind);
  get("first_arrival_kind", cfg.first_arrival_kind);
  get("kappa", cfg.kappa);
  get("r_list", cfg.r_list);
  get("reps", cfg.reps);
  get("T", cfg.T);
  get("a_grid", cfg.a_grid);
  get("eps_list", cfg.eps_list);
  get("seed", cfg.seed);
  get("functionals", cfg.functionals);
  get("snapshots", cfg.snapshots);
  get("threads", cfg.threads);
  get("initial", cfg.initial);
  get("initial_w", cfg.initial_w);
  get("reference_paths", cfg.reference_paths);
  get("reference_steps", cfg.reference_steps);
  return cfg;
}

namespace {

json summary_to_json(const FunctionalStats& fs) {
  return json{{"n", fs.summary.n},
              {"missing", fs.missing},
              {"mean", fs.summary.mean},
              {"variance", fs.summary.variance},
              {"q10", fs.summary.q10},
              {"q25", fs.summary.q25},
              {"median", fs.summary.median},
              {"q75", fs.summary.q75},
              {"q90", fs.summary.q90}};
}

}  // namespace

json report_to_json(const ConvergenceReport& report) {
  json j;
  j["hard_fail"] = report.hard_fail;
  j["trends"] = report.trends;
  j["per_r"] = json::array();
  for (const auto& b : report.per_r) {
    json rb;
    rb["r"] = b.r;
    rb["c_r"] = b.c_r;
    rb["lambda_r"] = b.lambda_r;
    rb["ks_reference"] = b.ks_reference;
    rb["ks_step"] = b.ks_step;
    rb["violations"] = {{"sandwich_workload", b.sandwich_workload_violations},
                        {"sandwich_integer", b.sandwich_integer_violations},
                        {"reflection", b.reflection_violations},
                        {"two_sided", b.two_sided_violations}};
    json stats;
    for (const auto& [name, fs] : b.stats) stats[name] = summary_to_json(fs);
    rb["functionals"] = stats;
    j["per_r"].push_back(rb);
  }
  return j;
}

void write_report_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "r,functional,statistic,value\n";
  for (const auto& b : report.per_r) {
    const std::string r = fmt_double(b.r);
    for (const auto& [name, fs] : b.stats) {
      os << r << ',' << name << ",mean," << fmt_double(fs.summary.mean) << '\n';
      os << r << ',' << name << ",variance," << fmt_double(fs.summary.variance) << '\n';
      os << r << ',' << name << ",median," << fmt_double(fs.summary.median) << '\n';
      os << r << ',' << name << ",q10," << fmt_double(fs.summary.q10) << '\n';
      os << r << ',' << name << ",q90," << fmt_double(fs.summary.q90) << '\n';
      os << r << ',' << name << ",n," << fs.summary.n << '\n';
    }
    os << r << ",ks_reference,value," << fmt_double(b.ks_reference) << '\n';
    for (const auto& [name, v] : b.ks_step)
      os << r << ",ks_step:" << name << ",value," << fmt_double(v) << '\n';
    os << r << ",violations,sandwich_workload," << b.sandwich_workload_violations << '\n';
    os << r << ",violations,sandwich_integer," << b.sandwich_integer_violations << '\n';
    os << r << ",violations,reflection," << b.reflection_violations << '\n';
    os << r << ",violations,two_sided," << b.two_sided_violations << '\n';
  }
}

json fclt_to_json(const FcltReport& report) {
  json j;
  j["r"] = report.r;
  j["reps"] = report.reps;
  j["sigma2_theory"] = report.sigma2_theory;
  j["e_var_rate_theory"] = report.e_var_rate_theory;
  j["points"] = json::array();
  for (const auto& p : report.points) {
    j["points"].push_back({{"t", p.t},
                           {"mean_v_hat", p.mean_v_hat},
                           {"var_v_hat", p.var_v_hat},
                           {"var_e_hat", p.var_e_hat},
                           {"var_v_theory", report.sigma2_theory * p.t},
                           {"var_e_theory", report.e_var_rate_theory * p.t}});
  }
  return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& full,
                          const std::map<double, const Trajectory*>& truncated) {
  // columns t, Q, W, then per grid value Q_a, W_a, Z_a (when a coupled
  // truncated run at that cutoff is present), tau; coupled runs at cutoffs
  // outside the grid get trailing Z_a columns
  auto coupled_at = [&](double a) -> const Trajectory* {
    auto it = truncated.find(a);
    return it == truncated.end() ? nullptr : it->second;
  };
  std::vector<std::pair<double, const Trajectory*>> extra;
  for (const auto& [a, traj] : truncated) {
    if (traj->n_snapshots() != full.n_snapshots())
      throw GridMismatch("write_trajectory_csv: truncated grid differs");
    if (std::find(full.a_grid.begin(), full.a_grid.end(), a) == full.a_grid.end())
      extra.emplace_back(a, traj);
  }

  os << "t,Q,W";
  for (double a : full.a_grid) {
    os << ",Q_a@" << fmt_double(a) << ",W_a@" << fmt_double(a);
    if (coupled_at(a)) os << ",Z_a@" << fmt_double(a);
    os << ",tau@" << fmt_double(a);
  }
  for (const auto& [a, traj] : extra) os << ",Z_a@" << fmt_double(a);
  os << '\n';
  for (std::size_t s = 0; s < full.n_snapshots(); ++s) {
    os << fmt_double(full.snapshot_times[s]) << ',' << fmt_double(full.q[s]) << ','
       << fmt_double(full.w[s]);
    for (std::size_t j = 0; j < full.n_a(); ++j) {
      os << ',' << fmt_double(full.q_a_at(s, j)) << ',' << fmt_double(full.w_a_at(s, j));
      if (const Trajectory* z = coupled_at(full.a_grid[j]))
        os << ',' << fmt_double(z->q[s]);
      os << ',' << fmt_double(full.tau_a_at(s, j));
    }
    for (const auto& [a, traj] : extra) os << ',' << fmt_double(traj->q[s]);
    os << '\n';
  }
}

void write_events_jsonl(std::ostream& os, const Trajectory& traj) {
  if (!traj.events) throw EventLogMissing("write_events_jsonl: no event log");
  for (const auto& ev : *traj.events) {
    const char* kind = ev.kind == EventRecord::Kind::Arrival ? "arrival"
                       : ev.kind == EventRecord::Kind::Completion
                           ? "completion"
                           : "truncated-skip";
    os << "{\"t\":" << fmt_double(ev.t) << ",\"kind\":\"" << kind
       << "\",\"task\":" << ev.task << "}\n";
  }
}

void write_scaled_csv(std::ostream& os, const ScaledTrajectory& st) {
  os << "# scaled\n";
  os << "# r=" << fmt_double(st.r) << "\n";
  os << "# c_r=" << fmt_double(st.c_r) << "\n";
  os << "# lambda_r=" << fmt_double(st.lambda_r) << "\n";
  os << "# kappa=" << fmt_double(st.kappa) << "\n";
  os << "t,Q,W";
  for (double a : st.a_grid)
    os << ",Q_a@" << fmt_double(a) << ",W_a@" << fmt_double(a) << ",theta@"
       << fmt_double(a);
  os << '\n';
  for (std::size_t s = 0; s < st.times.size(); ++s) {
    os << fmt_double(st.times[s]) << ',' << fmt_double(st.q_tilde[s]) << ','
       << fmt_double(st.w_tilde[s]);
    for (std::size_t j = 0; j < st.n_a(); ++j)
      os << ',' << fmt_double(st.q_a_at(s, j)) << ',' << fmt_double(st.w_a_at(s, j))
         << ',' << fmt_double(st.theta_at(s, j));
    os << '\n';
  }
}

json path_to_json(const PiecewiseLinearPath& p) {
  json segs = json::array();
  for (const auto& s : p.segments())
    segs.push_back({{"start", s.start}, {"value", s.value}, {"slope", s.slope}});
  return json{{"horizon", p.horizon()}, {"segments", segs}};
}

void write_path_csv(std::ostream& os, const PiecewiseLinearPath& p, double dt) {
  if (dt <= 0) throw std::invalid_argument("write_path_csv: dt must be > 0");
  os << "t,value\n";
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t > p.horizon()) break;
    os << fmt_double(t) << ',' << fmt_double(p.value_at(t)) << '\n';
  }
}

void write_grid_csv(std::ostream& os, const GridPath& g) {
  os << "t,value\n";
  for (std::size_t k = 0; k < g.values.size(); ++k)
    os << fmt_double(g.time_at(k)) << ',' << fmt_double(g.values[k]) << '\n';
}

}  // namespace srpt
