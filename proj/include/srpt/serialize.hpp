#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include <json.hpp>

#include "srpt/distributions.hpp"
#include "srpt/engine.hpp"
#include "srpt/harness.hpp"
#include "srpt/paths.hpp"
#include "srpt/scaling.hpp"

namespace srpt {

// Deterministic shortest-lossless double formatting ("%.17g"); all file
// output goes through this so identical invocations produce identical bytes.
std::string fmt_double(double v);

// {"kind":"exponential","rate":1.0} etc. Field names: kind, rate, scale,
// shape, index, x_m, lo, hi, value. Strict: unknown fields rejected.
nlohmann::json spec_to_json(const DistributionSpec& spec);
DistributionSpec spec_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ConvergenceReport& report);
void write_report_csv(std::ostream& os, const ConvergenceReport& report);

nlohmann::json fclt_to_json(const FcltReport& report);

// CSV columns t,Q,W then Q_a@{a},W_a@{a},tau@{a} per cutoff; when coupled
// truncated runs are supplied (same snapshot grid), a Z_a@{a} column per
// cutoff is appended.
void write_trajectory_csv(std::ostream& os, const Trajectory& full,
                          const std::map<double, const Trajectory*>& truncated = {});

// Event log as JSON lines {"t":..,"kind":..,"task":..}.
void write_events_jsonl(std::ostream& os, const Trajectory& traj);

// Scaled CSV mirrors the engine CSV, preceded by a header block recording
// r, c_r, lambda_r, kappa.
void write_scaled_csv(std::ostream& os, const ScaledTrajectory& st);

nlohmann::json path_to_json(const PiecewiseLinearPath& p);
void write_path_csv(std::ostream& os, const PiecewiseLinearPath& p, double dt);
void write_grid_csv(std::ostream& os, const GridPath& g);

}  // namespace srpt
