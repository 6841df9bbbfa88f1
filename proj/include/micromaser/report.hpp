#pragma once

// Output formats and command execution shared by the CLI and the tests.
//
// Time-series CSV columns (fixed order, header mandatory):
//   step,time,n_mean,T_field,g2,trace_dev,tail_leak
// Numbers use the shortest representation that round-trips; g2 is "undef"
// when the mean photon number is below the correlation floor.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "micromaser/analytics.hpp"
#include "micromaser/config.hpp"
#include "micromaser/dynamics.hpp"

namespace micromaser {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitTruncation = 3,
  kExitStability = 4,
  kExitDivergence = 5,
};

int exit_code_for(ErrorCode code) noexcept;

/// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

void write_csv(std::ostream& out, const TimeSeries& series);
/// Reads the columns written by write_csv back into a series (diagnostic
/// columns not stored in the file stay empty).
TimeSeries read_csv(std::istream& in);

struct RunSummary {
  long collisions = 0;
  bool reached_steady_state = false;
  double n_final = 0.0;
  double steady_T_f = 0.0;
  std::optional<double> g2_final;
  /// ω / ln(ρ00/ρ11) of the final state; a thermality cross-check against steady_T_f.
  std::optional<double> diagonal_ratio_T;
  std::optional<DecayFit> fit;
  ThermalizationPrediction prediction;
  TemperatureCandidates temperatures;
  ReservoirKind kind = ReservoirKind::kMultiAtom;
};

RunSummary summarize(const SimulationConfig& config, const TimeSeries& series);

/// One line: steady T_f, Γ_fit, predicted t_th, final g2(0).
std::string summary_line(const RunSummary& summary);
/// Aligned key/value block.
std::string format_summary(const RunSummary& summary);
nlohmann::json summary_json(const RunSummary& summary);

/// Closed-form predictions, 6 significant digits.
std::string format_prediction(const SimulationConfig& config);

/// Runs one simulation and writes timeseries.csv, summary.txt and summary.json into `out_dir`.
RunSummary execute_run(const SimulationConfig& config, const std::filesystem::path& out_dir);

enum class SweepAxis { kN, kT_a, kG, kTau };

/// Accepts "N", "T_a", "g", "tau".
SweepAxis parse_sweep_axis(const std::string& name);
const char* to_string(SweepAxis axis) noexcept;

struct SweepRow {
  double value = 0.0;
  std::optional<RunSummary> summary;
  std::optional<ErrorCode> error_code;
  std::string error;
};

/// Runs every point of the sweep on a pool of `workers` threads. Each point
/// writes point_<index>.csv; the returned rows follow the input order.
std::vector<SweepRow> run_sweep(const nlohmann::json& base, SweepAxis axis, const std::vector<double>& values,
                                const std::filesystem::path& out_dir, unsigned workers = 0);

std::string format_sweep_table(SweepAxis axis, const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(SweepAxis axis, const std::vector<SweepRow>& rows);

}  // namespace micromaser
