#include "micromaser/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "micromaser/analytics.hpp"

namespace micromaser {

using nlohmann::json;

namespace {

const std::set<std::string>& allowed_keys(const std::string& section) {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"field", {"Omega", "T_f0", "dim"}},
      {"reservoir", {"kind", "N", "T_a", "omega"}},
      {"coupling", {"g", "tau", "tau0", "gamma", "kappa"}},
      {"integrator", {"dt"}},
      {"run", {"collisions_max"}},
  };
  static const std::set<std::string> none;
  const auto it = keys.find(section);
  return it == keys.end() ? none : it->second;
}

const json* find(const json& doc, const std::string& section, const std::string& key) {
  const auto s = doc.find(section);
  if (s == doc.end()) return nullptr;
  const auto k = s->find(key);
  return k == s->end() ? nullptr : &*k;
}

double number(const json& doc, const std::string& section, const std::string& key) {
  const json* v = find(doc, section, key);
  if (v == nullptr) throw ValidationError("missing required key " + section + "." + key);
  if (!v->is_number()) throw ValidationError(section + "." + key + " must be a number");
  return v->get<double>();
}

double number_or(const json& doc, const std::string& section, const std::string& key, double fallback) {
  if (find(doc, section, key) == nullptr) return fallback;
  return number(doc, section, key);
}

long integer(const json& doc, const std::string& section, const std::string& key) {
  const json* v = find(doc, section, key);
  if (v == nullptr) throw ValidationError("missing required key " + section + "." + key);
  if (v->is_number_integer()) return v->get<long>();
  if (v->is_number_float()) {
    const double d = v->get<double>();
    if (std::floor(d) == d && std::abs(d) < 1e15) return static_cast<long>(d);
  }
  throw ValidationError(section + "." + key + " must be an integer");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require(bool ok, const std::string& field, const std::string& bound, double value) {
  if (!ok) throw ValidationError(field + " must be " + bound + " (got " + fmt(value) + ")");
}

double steady_temperature(const ReservoirSpec& reservoir, double Omega) {
  return temperature_candidates(reservoir, Omega).effective;
}

}  // namespace

const char* to_string(ReservoirKind kind) noexcept {
  return kind == ReservoirKind::kMultiLevel ? "multilevel" : "multi-atom";
}

Index default_field_dim(double T_f0, const ReservoirSpec& reservoir, double Omega) {
  const double T_max = std::max(T_f0, steady_temperature(reservoir, Omega));
  if (T_max <= 0.0) return kMinDefaultDim;
  const double n_target = bose_einstein_occupation(Omega, T_max);
  Index dim = static_cast<Index>(std::ceil(10.0 * (n_target + 1.0)));
  dim = std::clamp(dim, kMinDefaultDim, kMaxDefaultDim);
  while (dim < kMaxDefaultDim && thermal_tail_population(Omega, T_max, dim) >= kMaxThermalTail) ++dim;
  return dim;
}

SimulationConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

SimulationConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [section, body] : doc.items()) {
    const auto& keys = allowed_keys(section);
    if (keys.empty()) throw ValidationError("unknown key " + section);
    if (!body.is_object()) throw ValidationError(section + " must be an object");
    for (const auto& [key, value] : body.items()) {
      if (!keys.contains(key)) throw ValidationError("unknown key " + section + "." + key);
    }
  }

  SimulationConfig config;
  const json* kind = find(doc, "reservoir", "kind");
  if (kind == nullptr) throw ValidationError("missing required key reservoir.kind");
  if (!kind->is_string()) throw ValidationError("reservoir.kind must be a string");
  const std::string kind_name = kind->get<std::string>();
  if (kind_name == "multi-atom") {
    config.reservoir.kind = ReservoirKind::kMultiAtom;
  } else if (kind_name == "multilevel") {
    config.reservoir.kind = ReservoirKind::kMultiLevel;
  } else {
    throw ValidationError("reservoir.kind must be \"multi-atom\" or \"multilevel\" (got \"" + kind_name + "\")");
  }
  const long atoms = integer(doc, "reservoir", "N");
  require(atoms >= 1, "reservoir.N", ">= 1", static_cast<double>(atoms));
  require(atoms <= 1000, "reservoir.N", "<= 1000", static_cast<double>(atoms));
  config.reservoir.N = static_cast<int>(atoms);
  config.reservoir.T_a = number(doc, "reservoir", "T_a");

  config.field.Omega = number_or(doc, "field", "Omega", 1.0);
  config.field.T_f0 = number(doc, "field", "T_f0");
  config.reservoir.omega = number_or(doc, "reservoir", "omega", config.field.Omega);

  config.coupling.g = number(doc, "coupling", "g");
  config.coupling.tau = number(doc, "coupling", "tau");
  config.coupling.tau0 = number_or(doc, "coupling", "tau0", 0.0);
  config.coupling.gamma = number_or(doc, "coupling", "gamma", 1e-9);
  config.coupling.kappa = number_or(doc, "coupling", "kappa", 0.5e-10);
  config.integrator.dt = number_or(doc, "integrator", "dt", config.coupling.tau / 40.0);

  if (find(doc, "run", "collisions_max") != nullptr) config.collisions_max = integer(doc, "run", "collisions_max");

  // Bounds that the dimension default depends on are checked before it is computed.
  require(config.field.Omega > 0.0 && std::isfinite(config.field.Omega), "field.Omega", "> 0", config.field.Omega);
  require(config.reservoir.omega > 0.0 && std::isfinite(config.reservoir.omega), "reservoir.omega", "> 0",
          config.reservoir.omega);
  require(config.reservoir.T_a > 0.0 && std::isfinite(config.reservoir.T_a), "reservoir.T_a", "> 0 and finite",
          config.reservoir.T_a);
  require(config.field.T_f0 >= 0.0 && std::isfinite(config.field.T_f0), "field.T_f0", ">= 0", config.field.T_f0);

  if (find(doc, "field", "dim") != nullptr) {
    const long dim = integer(doc, "field", "dim");
    require(dim >= 2, "field.dim", ">= 2", static_cast<double>(dim));
    require(dim <= 100000, "field.dim", "<= 100000", static_cast<double>(dim));
    config.field.truncation = FockTruncation(dim);
  } else {
    if (config.reservoir.kind == ReservoirKind::kMultiLevel) {
      multilevel_populations(config.reservoir.N, config.reservoir.omega, config.reservoir.T_a);
    }
    config.field.truncation =
        FockTruncation(default_field_dim(config.field.T_f0, config.reservoir, config.field.Omega));
  }

  validate(config);
  return config;
}

std::vector<std::string> validate(const SimulationConfig& c) {
  std::vector<std::string> warnings;
  require(c.reservoir.N >= 1, "reservoir.N", ">= 1", c.reservoir.N);
  if (c.reservoir.kind == ReservoirKind::kMultiAtom) {
    require(c.reservoir.N <= kDefaultMaxAtoms, "reservoir.N", "<= " + std::to_string(kDefaultMaxAtoms) +
                                                                  " for multi-atom clusters",
            c.reservoir.N);
  }
  require(c.reservoir.T_a > 0.0 && std::isfinite(c.reservoir.T_a), "reservoir.T_a", "> 0 and finite",
          c.reservoir.T_a);
  require(c.reservoir.omega > 0.0 && std::isfinite(c.reservoir.omega), "reservoir.omega", "> 0", c.reservoir.omega);
  require(c.field.Omega > 0.0 && std::isfinite(c.field.Omega), "field.Omega", "> 0", c.field.Omega);
  require(c.field.T_f0 >= 0.0 && std::isfinite(c.field.T_f0), "field.T_f0", ">= 0", c.field.T_f0);
  require(c.field.truncation.dim >= 2, "field.dim", ">= 2", static_cast<double>(c.field.truncation.dim));
  require(c.coupling.g >= 0.0 && std::isfinite(c.coupling.g), "coupling.g", ">= 0", c.coupling.g);
  require(c.coupling.tau > 0.0 && std::isfinite(c.coupling.tau), "coupling.tau", "> 0", c.coupling.tau);
  require(c.coupling.tau0 >= 0.0 && std::isfinite(c.coupling.tau0), "coupling.tau0", ">= 0", c.coupling.tau0);
  require(c.coupling.gamma >= 0.0 && std::isfinite(c.coupling.gamma), "coupling.gamma", ">= 0", c.coupling.gamma);
  require(c.coupling.kappa >= 0.0 && std::isfinite(c.coupling.kappa), "coupling.kappa", ">= 0", c.coupling.kappa);
  require(c.integrator.dt > 0.0, "integrator.dt", "> 0", c.integrator.dt);
  require(c.integrator.dt <= c.coupling.tau / 20.0 * (1.0 + 1e-12), "integrator.dt", "<= coupling.tau / 20",
          c.integrator.dt);
  if (c.collisions_max) {
    require(*c.collisions_max >= 0, "run.collisions_max", ">= 0", static_cast<double>(*c.collisions_max));
  }

  const Index joint = reservoir_dim(c.reservoir) * c.field.truncation.dim;
  require(joint <= (Index{1} << 10), "reservoir dimension x field.dim", "<= 1024",
          static_cast<double>(joint));

  // Throws GainRegimeError for inverted or multilevel-gain reservoirs.
  const ThermalizationPrediction prediction = thermalization_time(c.reservoir, c.coupling);
  (void)prediction;

  const double T_max = std::max(c.field.T_f0, steady_temperature(c.reservoir, c.field.Omega));
  const double tail = thermal_tail_population(c.field.Omega, T_max, c.field.truncation.dim);
  if (tail >= kMaxThermalTail) {
    throw TruncationError("field.dim=" + std::to_string(c.field.truncation.dim) + " leaves thermal tail " +
                          fmt(tail) + " at T=" + fmt(T_max) + " (limit " + fmt(kMaxThermalTail) +
                          "); try field.dim=" +
                          std::to_string(default_field_dim(c.field.T_f0, c.reservoir, c.field.Omega)));
  }

  if (c.coupling.phi() > 0.3) {
    warnings.push_back("coupling.g * coupling.tau = " + fmt(c.coupling.phi()) +
                       " exceeds 0.3; second-order rate predictions lose accuracy");
  }
  if (!is_resonant(c.reservoir, c.field)) {
    warnings.push_back("detuned reservoir (omega != Omega) is experimental; predictions assume resonance");
  }
  if (c.coupling.gamma * c.coupling.tau > 1e-2 || c.coupling.kappa * c.coupling.tau > 1e-2) {
    warnings.push_back("decay during the interaction window is not small (gamma*tau or kappa*tau > 0.01)");
  }
  return warnings;
}

json to_json(const SimulationConfig& c) {
  json doc;
  doc["field"] = {{"Omega", c.field.Omega}, {"T_f0", c.field.T_f0}, {"dim", c.field.truncation.dim}};
  doc["reservoir"] = {{"kind", to_string(c.reservoir.kind)},
                      {"N", c.reservoir.N},
                      {"T_a", c.reservoir.T_a},
                      {"omega", c.reservoir.omega}};
  doc["coupling"] = {{"g", c.coupling.g},
                     {"tau", c.coupling.tau},
                     {"tau0", c.coupling.tau0},
                     {"gamma", c.coupling.gamma},
                     {"kappa", c.coupling.kappa}};
  doc["integrator"] = {{"dt", c.integrator.dt}};
  if (c.collisions_max) doc["run"] = {{"collisions_max", *c.collisions_max}};
  return doc;
}

}  // namespace micromaser
