// micromaser: run, sweep and predict cavity thermalization by injected atoms.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "micromaser/report.hpp"

namespace {

using micromaser::Error;
using nlohmann::json;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<long> collisions;
  std::optional<long> dim;
  bool quiet = false;
  std::string axis;
  std::vector<double> values;
};

json load_document(const Options& opt) {
  std::ifstream in(opt.config_path);
  if (!in) throw micromaser::ValidationError("cannot read config file " + opt.config_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw micromaser::ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw micromaser::ValidationError("config must be a JSON object");
  if (opt.collisions) doc["run"]["collisions_max"] = *opt.collisions;
  if (opt.dim) doc["field"]["dim"] = *opt.dim;
  return doc;
}

void report_warnings(const micromaser::SimulationConfig& config, const Options& opt) {
  if (opt.quiet) return;
  for (const std::string& w : micromaser::validate(config)) std::cerr << "warning: " << w << '\n';
}

int cmd_run(const Options& opt) {
  const micromaser::SimulationConfig config = micromaser::parse_config(load_document(opt));
  report_warnings(config, opt);
  const micromaser::RunSummary summary = micromaser::execute_run(config, opt.out_dir);
  std::cout << micromaser::summary_line(summary) << '\n';
  if (!opt.quiet) std::cout << micromaser::format_summary(summary);
  return micromaser::kExitSuccess;
}

int cmd_sweep(const Options& opt) {
  const micromaser::SweepAxis axis = micromaser::parse_sweep_axis(opt.axis);
  const auto rows = micromaser::run_sweep(load_document(opt), axis, opt.values, opt.out_dir);
  const std::string table = micromaser::format_sweep_table(axis, rows);
  {
    std::ofstream out(std::filesystem::path(opt.out_dir) / "summary.txt", std::ios::binary);
    out << table;
    std::ofstream sidecar(std::filesystem::path(opt.out_dir) / "summary.json", std::ios::binary);
    sidecar << micromaser::sweep_json(axis, rows).dump(2) << '\n';
  }
  std::cout << table;
  for (const auto& row : rows) {
    if (!row.summary) {
      const int code = row.error_code ? micromaser::exit_code_for(*row.error_code) : micromaser::kExitFailure;
      if (!opt.quiet) std::cerr << "sweep point " << row.value << " failed: " << row.error << '\n';
      return code;
    }
  }
  return micromaser::kExitSuccess;
}

int cmd_predict(const Options& opt) {
  const micromaser::SimulationConfig config = micromaser::parse_config(load_document(opt));
  report_warnings(config, opt);
  std::cout << micromaser::format_prediction(config);
  return micromaser::kExitSuccess;
}

void emit_error(const std::string& code, int exit_code, const std::string& message) {
  std::cerr << json{{"error", code}, {"exit_code", exit_code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermalization of a cavity mode by repeatedly injected thermal atoms"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Configuration document (JSON)")->required();
    sub->add_flag("--quiet", opt.quiet, "Suppress warnings and the detailed summary");
  };
  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--collisions", opt.collisions, "Collision budget (overrides run.collisions_max)");
    sub->add_option("--dim", opt.dim, "Fock truncation (overrides field.dim)");
  };

  CLI::App* run = app.add_subcommand("run", "Simulate one configuration");
  add_common(run);
  add_run_options(run);

  CLI::App* sweep = app.add_subcommand("sweep", "Simulate a configuration over a parameter axis");
  add_common(sweep);
  add_run_options(sweep);
  sweep->add_option("--axis", opt.axis, "Swept parameter: N, T_a, g or tau")->required();
  sweep->add_option("--values", opt.values, "Comma-separated axis values")->delimiter(',')->required();

  CLI::App* predict = app.add_subcommand("predict", "Print closed-form predictions");
  add_common(predict);
  predict->add_option("--dim", opt.dim, "Fock truncation (overrides field.dim)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : micromaser::kExitValidation;
  }

  try {
    if (run->parsed()) return cmd_run(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    return cmd_predict(opt);
  } catch (const Error& e) {
    const int status = micromaser::exit_code_for(e.code());
    emit_error(micromaser::to_string(e.code()), status, e.what());
    return status;
  } catch (const std::exception& e) {
    emit_error("internal", micromaser::kExitFailure, e.what());
    return micromaser::kExitFailure;
  }
}
