#include "micromaser/report.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace micromaser {

using nlohmann::json;

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kTruncation: return kExitTruncation;
    case ErrorCode::kStability: return kExitStability;
    case ErrorCode::kDivergence: return kExitDivergence;
    case ErrorCode::kShape:
    case ErrorCode::kDimensionLimit:
    case ErrorCode::kSymmetry:
    case ErrorCode::kDomain:
    case ErrorCode::kValidation:
    case ErrorCode::kSettings: return kExitValidation;
    case ErrorCode::kFit:
    case ErrorCode::kUndefinedCorrelation: return kExitFailure;
  }
  return kExitFailure;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

double parse_number(const std::string& token) {
  double value = 0.0;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
    throw ValidationError("CSV: cannot parse number '" + token + "'");
  }
  return value;
}

constexpr const char* kCsvHeader = "step,time,n_mean,T_field,g2,trace_dev,tail_leak";

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

}  // namespace

void write_csv(std::ostream& out, const TimeSeries& series) {
  out << kCsvHeader << '\n';
  for (std::size_t k = 0; k < series.size(); ++k) {
    out << k << ',' << format_number(series.times[k]) << ',' << format_number(series.n_mean[k]) << ','
        << format_number(series.T_field[k]) << ','
        << (std::isnan(series.g2[k]) ? std::string("undef") : format_number(series.g2[k])) << ','
        << format_number(series.trace_dev[k]) << ',' << format_number(series.tail_leak[k]) << '\n';
  }
}

TimeSeries read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ValidationError("CSV: missing or unexpected header");
  TimeSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw ValidationError("CSV: expected 7 columns in '" + line + "'");
    series.times.push_back(parse_number(cells[1]));
    series.n_mean.push_back(parse_number(cells[2]));
    series.T_field.push_back(parse_number(cells[3]));
    series.g2.push_back(cells[4] == "undef" ? std::numeric_limits<double>::quiet_NaN() : parse_number(cells[4]));
    series.trace_dev.push_back(parse_number(cells[5]));
    series.tail_leak.push_back(parse_number(cells[6]));
  }
  return series;
}

RunSummary summarize(const SimulationConfig& config, const TimeSeries& series) {
  RunSummary s;
  s.kind = config.reservoir.kind;
  s.collisions = static_cast<long>(series.size()) - 1;
  s.reached_steady_state = series.reached_steady_state;
  s.n_final = series.n_mean.back();
  s.steady_T_f = series.T_field.back();
  if (!std::isnan(series.g2.back())) s.g2_final = series.g2.back();
  if (series.final_state.rows() >= 2) {
    s.diagonal_ratio_T = diagonal_ratio_temperature(series.final_state, config.field.Omega);
  }
  try {
    s.fit = fit_decay_rate(series);
  } catch (const FitError&) {
    s.fit.reset();
  }
  s.prediction = thermalization_time(config.reservoir, config.coupling);
  s.temperatures = temperature_candidates(config.reservoir, config.field.Omega);
  return s;
}

std::string summary_line(const RunSummary& s) {
  std::ostringstream os;
  os << "steady_T_f=" << format_number(s.steady_T_f)
     << " Gamma_fit=" << (s.fit ? format_number(s.fit->Gamma) : "n/a")
     << " t_th_predicted=" << format_number(s.prediction.t_th) << " g2_final=" << optional_number(s.g2_final);
  return os.str();
}

std::string format_summary(const RunSummary& s) {
  std::vector<std::pair<std::string, std::string>> rows = {
      {"collisions", std::to_string(s.collisions)},
      {"reached_steady_state", s.reached_steady_state ? "true" : "false"},
      {"n_final", format_number(s.n_final)},
      {"steady_T_f", format_number(s.steady_T_f)},
      {"g2_final", optional_number(s.g2_final)},
      {"T_diagonal_ratio", optional_number(s.diagonal_ratio_T)},
      {"Gamma_fit", s.fit ? format_number(s.fit->Gamma) : "n/a"},
      {"n_inf_fit", s.fit ? format_number(s.fit->n_inf) : "n/a"},
      {"fit_r_squared", s.fit ? format_number(s.fit->r_squared) : "n/a"},
      {"Gamma_predicted", format_number(s.prediction.Gamma)},
      {"t_th_predicted", format_number(s.prediction.t_th)},
      {"n_bar_th_predicted", format_number(s.prediction.n_bar_th)},
      {"t_th_low_T_approx", format_number(s.prediction.low_T_approx)},
      {"T_reservoir", format_number(s.temperatures.reservoir)},
      {"T_effective", format_number(s.temperatures.effective)},
  };
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  std::ostringstream os;
  for (const auto& [key, value] : rows) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << key << value << '\n';
  }
  return os.str();
}

json summary_json(const RunSummary& s) {
  json doc = {
      {"collisions", s.collisions},
      {"reached_steady_state", s.reached_steady_state},
      {"n_final", s.n_final},
      {"steady_T_f", s.steady_T_f},
      {"g2_final", s.g2_final ? json(*s.g2_final) : json(nullptr)},
      {"T_diagonal_ratio", s.diagonal_ratio_T ? json(*s.diagonal_ratio_T) : json(nullptr)},
      {"Gamma_fit", s.fit ? json(s.fit->Gamma) : json(nullptr)},
      {"n_inf_fit", s.fit ? json(s.fit->n_inf) : json(nullptr)},
      {"fit_r_squared", s.fit ? json(s.fit->r_squared) : json(nullptr)},
      {"Gamma_predicted", s.prediction.Gamma},
      {"t_th_predicted", s.prediction.t_th},
      {"n_bar_th_predicted", s.prediction.n_bar_th},
      {"t_th_low_T_approx", s.prediction.low_T_approx},
      {"T_reservoir", s.temperatures.reservoir},
      {"T_effective", s.temperatures.effective},
  };
  return doc;
}

std::string format_prediction(const SimulationConfig& config) {
  const RatePair r = rates(config.reservoir, config.coupling);
  const ThermalizationPrediction p = thermalization_time(config.reservoir, config.coupling);
  const TemperatureCandidates t = temperature_candidates(config.reservoir, config.field.Omega);
  auto six = [](double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return std::string(buffer);
  };
  std::ostringstream os;
  os << "R_a           " << six(r.R_a) << '\n'
     << "R_b           " << six(r.R_b) << '\n'
     << "Gamma         " << six(p.Gamma) << '\n'
     << "t_th          " << six(p.t_th) << '\n'
     << "t_th_low_T    " << six(p.low_T_approx) << '\n'
     << "n_bar_th      " << six(p.n_bar_th) << '\n'
     << "T_reservoir   " << six(t.reservoir) << '\n'
     << "T_effective   " << six(t.effective) << '\n';
  return os.str();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_series(const std::filesystem::path& path, const TimeSeries& series) {
  std::ostringstream os;
  write_csv(os, series);
  write_text(path, os.str());
}

}  // namespace

RunSummary execute_run(const SimulationConfig& config, const std::filesystem::path& out_dir) {
  const TimeSeries series = run_simulation(config);
  std::filesystem::create_directories(out_dir);
  write_series(out_dir / "timeseries.csv", series);
  const RunSummary summary = summarize(config, series);
  write_text(out_dir / "summary.txt", format_summary(summary));
  json sidecar = summary_json(summary);
  sidecar["config"] = to_json(config);
  write_text(out_dir / "summary.json", sidecar.dump(2) + "\n");
  return summary;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "N") return SweepAxis::kN;
  if (name == "T_a") return SweepAxis::kT_a;
  if (name == "g") return SweepAxis::kG;
  if (name == "tau") return SweepAxis::kTau;
  throw ValidationError("sweep axis must be one of N, T_a, g, tau (got '" + name + "')");
}

const char* to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::kN: return "N";
    case SweepAxis::kT_a: return "T_a";
    case SweepAxis::kG: return "g";
    case SweepAxis::kTau: return "tau";
  }
  return "?";
}

namespace {

json with_axis_value(json doc, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kN:
      if (std::floor(value) != value) throw ValidationError("sweep values for N must be integers");
      doc["reservoir"]["N"] = static_cast<long>(value);
      break;
    case SweepAxis::kT_a: doc["reservoir"]["T_a"] = value; break;
    case SweepAxis::kG: doc["coupling"]["g"] = value; break;
    case SweepAxis::kTau: doc["coupling"]["tau"] = value; break;
  }
  return doc;
}

}  // namespace

std::vector<SweepRow> run_sweep(const json& base, SweepAxis axis, const std::vector<double>& values,
                                const std::filesystem::path& out_dir, unsigned workers) {
  if (values.empty()) throw ValidationError("sweep needs at least one value");
  std::filesystem::create_directories(out_dir);
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = values[i];
      try {
        const SimulationConfig config = parse_config(with_axis_value(base, axis, values[i]));
        const TimeSeries series = run_simulation(config);
        write_series(out_dir / ("point_" + std::to_string(i) + ".csv"), series);
        row.summary = summarize(config, series);
      } catch (const Error& e) {
        row.error_code = e.code();
        row.error = e.what();
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(values.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string format_sweep_table(SweepAxis axis, const std::vector<SweepRow>& rows) {
  const std::vector<std::string> header = {to_string(axis), "t_th_predicted", "Gamma_fit", "1/Gamma_fit",
                                           "steady_T_f", "g2_final", "status"};
  std::vector<std::vector<std::string>> cells;
  for (const SweepRow& row : rows) {
    if (row.summary) {
      const RunSummary& s = *row.summary;
      cells.push_back({format_number(row.value), format_number(s.prediction.t_th),
                       s.fit ? format_number(s.fit->Gamma) : "n/a", s.fit ? format_number(1.0 / s.fit->Gamma) : "n/a",
                       format_number(s.steady_T_f), optional_number(s.g2_final), "ok"});
    } else {
      cells.push_back({format_number(row.value), "n/a", "n/a", "n/a", "n/a", "n/a",
                       std::string("error:") + (row.error_code ? to_string(*row.error_code) : "other")});
    }
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : cells) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << std::left << std::setw(static_cast<int>(width[c])) << r[c];
      os << (c + 1 == r.size() ? "\n" : "  ");
    }
  };
  emit(header);
  for (const auto& r : cells) emit(r);
  return os.str();
}

json sweep_json(SweepAxis axis, const std::vector<SweepRow>& rows) {
  json points = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& row = rows[i];
    json point = {{"index", i}, {"value", row.value}};
    if (row.summary) {
      point["status"] = "ok";
      point["result"] = summary_json(*row.summary);
      point["inverse_Gamma_fit"] = row.summary->fit ? json(1.0 / row.summary->fit->Gamma) : json(nullptr);
    } else {
      point["status"] = "error";
      point["error_code"] = row.error_code ? to_string(*row.error_code) : "other";
      point["message"] = row.error;
    }
    points.push_back(point);
  }
  return {{"axis", to_string(axis)}, {"points", points}};
}

}  // namespace micromaser
