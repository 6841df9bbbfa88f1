#include "micromaser/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "micromaser/analytics.hpp"
#include "micromaser/config.hpp"

namespace micromaser {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

void check_square(const ComplexMatrix& m, Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw ShapeError(std::string(what) + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
  }
}

}  // namespace

void LindbladGenerator::validate() const {
  const Index d = dim();
  check_square(hamiltonian, d, "Hamiltonian");
  if (hermiticity_defect(hamiltonian) > 1e-12) throw SymmetryError("Hamiltonian is not Hermitian");
  for (const Channel& c : channels) {
    check_square(c.op, d, "collapse operator");
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) throw ValidationError("channel rate must be finite and >= 0");
  }
}

ComplexMatrix dissipator(const ComplexMatrix& op, const ComplexMatrix& rho) {
  if (op.rows() != op.cols() || rho.rows() != rho.cols() || op.rows() != rho.rows()) {
    throw ShapeError("dissipator: operator and state dimensions differ");
  }
  const ComplexMatrix op_dag = op.adjoint();
  const ComplexMatrix number = op_dag * op;
  return op * rho * op_dag - 0.5 * (number * rho + rho * number);
}

ComplexMatrix master_rhs(const LindbladGenerator& gen, const ComplexMatrix& rho) {
  check_square(rho, gen.dim(), "state");
  ComplexMatrix out = -kI * (gen.hamiltonian * rho - rho * gen.hamiltonian);
  for (const Channel& c : gen.channels) {
    check_square(c.op, gen.dim(), "collapse operator");
    if (c.rate != 0.0) out += c.rate * dissipator(c.op, rho);
  }
  return out;
}

SparseLiouvillian::SparseLiouvillian(const LindbladGenerator& gen) : dim_(gen.dim()) {
  gen.validate();
  ComplexMatrix effective = gen.hamiltonian;
  for (const Channel& c : gen.channels) {
    if (c.rate == 0.0) continue;
    effective -= 0.5 * kI * c.rate * (c.op.adjoint() * c.op);
    jumps_.push_back((std::sqrt(c.rate) * c.op).sparseView());
  }
  effective_hamiltonian_ = effective.sparseView();
}

ComplexMatrix SparseLiouvillian::apply(const ComplexMatrix& rho) const {
  // ρ H_eff† and J ρ J† are formed as adjoints of sparse-times-dense products.
  const ComplexMatrix rho_dag = rho.adjoint();
  ComplexMatrix out = -kI * (effective_hamiltonian_ * rho);
  ComplexMatrix right = effective_hamiltonian_ * rho_dag;
  out += kI * right.adjoint();
  for (const Sparse& jump : jumps_) {
    const ComplexMatrix left_dag = (jump * rho).adjoint();
    right.noalias() = jump * left_dag;
    out += right.adjoint();
  }
  return out;
}

ComplexMatrix evolve(const SparseLiouvillian& liouvillian, const ComplexMatrix& rho0, double duration,
                     const IntegratorSettings& settings) {
  check_square(rho0, liouvillian.dim(), "initial state");
  if (!(settings.dt > 0.0) || !std::isfinite(settings.dt)) throw SettingsError("integrator step must be positive");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw SettingsError("evolution duration must be >= 0");
  ComplexMatrix rho = rho0;
  if (duration == 0.0) return rho;

  const long steps = std::max(1L, static_cast<long>(std::ceil(duration / settings.dt - 1e-9)));
  const double h = duration / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = liouvillian.apply(rho);
    const ComplexMatrix k2 = liouvillian.apply(rho + 0.5 * h * k1);
    const ComplexMatrix k3 = liouvillian.apply(rho + 0.5 * h * k2);
    const ComplexMatrix k4 = liouvillian.apply(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = (0.5 * (rho + rho.adjoint())).eval();
    if (settings.renormalize_trace) rho /= rho.trace();
    if (!rho.allFinite()) {
      throw DivergenceError("non-finite state after step " + std::to_string(s + 1) + " of " + std::to_string(steps));
    }
  }
  return rho;
}

ComplexMatrix evolve(const LindbladGenerator& gen, const ComplexMatrix& rho0, double duration,
                     const IntegratorSettings& settings) {
  return evolve(SparseLiouvillian(gen), rho0, duration, settings);
}

LindbladGenerator collision_generator(const ReservoirSpec& reservoir, const CouplingSpec& coupling,
                                      const FieldSpec& field) {
  const Index dim = field.truncation.dim;
  LindbladGenerator gen;
  gen.hamiltonian = rotating_frame_hamiltonian(reservoir, field, coupling.g);
  for (ComplexMatrix& op : atomic_decay_operators(reservoir, dim)) {
    gen.channels.push_back({std::move(op), coupling.gamma});
  }
  const HilbertSpec spec = joint_spec(reservoir, dim);
  gen.channels.push_back({lift(annihilation(field.truncation), spec, spec.size() - 1), coupling.kappa});
  return gen;
}

namespace {

LindbladGenerator idle_generator(const FieldSpec& field, const CouplingSpec& coupling) {
  const Index dim = field.truncation.dim;
  LindbladGenerator gen;
  gen.hamiltonian = ComplexMatrix::Zero(dim, dim);
  gen.channels.push_back({annihilation(field.truncation), coupling.kappa});
  return gen;
}

bool is_diagonal(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != std::complex<double>(0.0)) return false;
    }
  }
  return true;
}

void check_window_step(const CouplingSpec& coupling, const IntegratorSettings& settings) {
  if (!(settings.dt > 0.0)) throw SettingsError("integrator step must be positive");
  if (!(coupling.tau > 0.0)) throw SettingsError("interaction time must be positive");
  if (settings.dt > coupling.tau / 20.0 * (1.0 + 1e-12)) {
    throw SettingsError("integrator step " + std::to_string(settings.dt) + " exceeds tau/20 = " +
                        std::to_string(coupling.tau / 20.0));
  }
}

}  // namespace

CollisionChannel::CollisionChannel(const ReservoirSpec& reservoir, const CouplingSpec& coupling,
                                   const FieldSpec& field, const IntegratorSettings& settings)
    : CollisionChannel(reservoir, reservoir_state(reservoir), coupling, field, settings) {}

CollisionChannel::CollisionChannel(const ReservoirSpec& reservoir, const ComplexMatrix& atom_state,
                                   const CouplingSpec& coupling, const FieldSpec& field,
                                   const IntegratorSettings& settings)
    : reservoir_(reservoir),
      coupling_(coupling),
      settings_(settings),
      field_dim_(field.truncation.dim),
      atom_state_(atom_state),
      spec_{reservoir_dim(reservoir), field.truncation.dim},
      generator_(collision_generator(reservoir, coupling, field)),
      joint_(generator_),
      idle_(idle_generator(field, coupling)) {
  check_window_step(coupling, settings);
  check_square(atom_state_, reservoir_dim(reservoir), "atomic state");
  if (!(coupling.tau0 >= 0.0)) throw SettingsError("idle time must be >= 0");
}

ComplexMatrix CollisionChannel::apply(const ComplexMatrix& rho_f) const {
  check_square(rho_f, field_dim_, "field state");
  const ComplexMatrix joint = kron(atom_state_, rho_f);
  const ComplexMatrix evolved = evolve(joint_, joint, coupling_.tau, settings_);
  ComplexMatrix out = partial_trace(evolved, spec_, 1);
  if (coupling_.tau0 > 0.0) out = evolve(idle_, out, coupling_.tau0, settings_);
  const double drift = std::abs(out.trace() - rho_f.trace() * atom_state_.trace());
  if (!settings_.renormalize_trace && drift > 1e-8) {
    throw DivergenceError("trace drifted by " + std::to_string(drift) + " over one collision");
  }
  return out;
}

std::optional<Eigen::MatrixXd> CollisionChannel::population_map() const {
  Eigen::MatrixXd map(field_dim_, field_dim_);
  for (Index n = 0; n < field_dim_; ++n) {
    ComplexMatrix fock = ComplexMatrix::Zero(field_dim_, field_dim_);
    fock(n, n) = 1.0;
    const ComplexMatrix image = apply(fock);
    const ComplexMatrix coherences = image - ComplexMatrix(image.diagonal().asDiagonal());
    if (coherences.cwiseAbs().maxCoeff() > 1e-13) return std::nullopt;
    map.col(n) = image.diagonal().real();
  }
  return map;
}

CovariantFieldMap::CovariantFieldMap(Index dim, std::vector<ComplexMatrix> blocks)
    : dim_(dim), blocks_(std::move(blocks)) {
  if (static_cast<Index>(blocks_.size()) != dim_) throw ShapeError("covariant map needs one block per offset");
  for (Index k = 0; k < dim_; ++k) check_square(block(k), dim_ - k, "covariant map block");
}

ComplexMatrix CovariantFieldMap::apply(const ComplexMatrix& rho_f) const {
  check_square(rho_f, dim_, "field state");
  ComplexMatrix out(dim_, dim_);
  for (Index k = 0; k < dim_; ++k) {
    const ComplexMatrix& b = block(k);
    out.diagonal(k).noalias() = b * rho_f.diagonal(k);
    if (k > 0) out.diagonal(-k).noalias() = b.conjugate() * rho_f.diagonal(-k);
  }
  return out;
}

std::optional<CovariantFieldMap> CollisionChannel::covariant_map() const {
  if (!is_diagonal(atom_state_)) return std::nullopt;
  const Index d = field_dim_;
  std::vector<ComplexMatrix> blocks;
  for (Index k = 0; k < d; ++k) blocks.push_back(ComplexMatrix::Zero(d - k, d - k));
  // Probe j carries |j><j+k| for every offset k at once; the images stay on their own offsets.
  for (Index j = 0; j < d; ++j) {
    ComplexMatrix probe = ComplexMatrix::Zero(d, d);
    probe(j, j) = 1.0;
    for (Index k = 1; j + k < d; ++k) {
      probe(j, j + k) = 1.0;
      probe(j + k, j) = 1.0;
    }
    const ComplexMatrix image = apply(probe);
    for (Index k = 0; j + k < d; ++k) blocks[static_cast<std::size_t>(k)].col(j) = image.diagonal(k);
  }
  return CovariantFieldMap(d, std::move(blocks));
}

ComplexMatrix collision_step(const ComplexMatrix& rho_f, const ReservoirSpec& reservoir,
                             const CouplingSpec& coupling, const FieldSpec& field,
                             const IntegratorSettings& settings) {
  return CollisionChannel(reservoir, coupling, field, settings).apply(rho_f);
}

long default_collision_budget(const SimulationConfig& config) {
  const ThermalizationPrediction p = thermalization_time(config.reservoir, config.coupling);
  return 10L * static_cast<long>(std::ceil(p.t_th / config.coupling.period()));
}

namespace {

class Recorder {
 public:
  Recorder(TimeSeries& series, const SimulationConfig& config, const RunOptions& options)
      : series_(series), config_(config), options_(options) {}

  void record(long step, const ComplexMatrix& rho) {
    const Index dim = rho.rows();
    const double n = mean_photon_number(rho);
    if (!std::isfinite(n)) throw DivergenceError("non-finite mean photon number at collision " + std::to_string(step));
    series_.times.push_back(static_cast<double>(step) * config_.coupling.period());
    series_.n_mean.push_back(n);
    series_.T_field.push_back(field_temperature(n, config_.field.Omega));
    series_.g2.push_back(n >= options_.g2_floor ? g2_zero(rho, options_.g2_floor)
                                                : std::numeric_limits<double>::quiet_NaN());
    series_.trace_dev.push_back(std::abs(rho.trace() - 1.0));
    const double leak = rho(dim - 1, dim - 1).real();
    series_.tail_leak.push_back(leak);
    const double defect = hermiticity_defect(rho);
    series_.hermiticity_defect.push_back(defect);
    const ComplexMatrix hermitian = 0.5 * (rho + rho.adjoint());
    series_.min_eigenvalue.push_back(hermitian_eigenvalues(hermitian, 1e-8).minCoeff());

    if (leak > options_.leak_threshold) {
      throw TruncationError("top Fock level population " + std::to_string(leak) + " exceeds " +
                            std::to_string(options_.leak_threshold) + " at collision " + std::to_string(step) +
                            "; increase field.dim (try " + std::to_string(2 * dim) + ")");
    }
  }

 private:
  TimeSeries& series_;
  const SimulationConfig& config_;
  const RunOptions& options_;
};

}  // namespace

TimeSeries run_simulation(const SimulationConfig& config, const RunOptions& options) {
  validate(config);
  const long budget = config.collisions_max ? *config.collisions_max : default_collision_budget(config);

  ComplexMatrix rho = options.initial_state ? *options.initial_state : thermal_field_state(config.field);
  check_square(rho, config.field.truncation.dim, "initial field state");

  TimeSeries series;
  Recorder recorder(series, config, options);
  recorder.record(0, rho);
  if (budget == 0) {
    series.final_state = rho;
    return series;
  }

  const CollisionChannel channel(config.reservoir, config.coupling, config.field, config.integrator);
  std::optional<Eigen::MatrixXd> populations;
  std::optional<CovariantFieldMap> transfer;
  if (options.propagation == Propagation::kAuto) {
    if (is_diagonal(rho)) populations = channel.population_map();
    if (!populations) transfer = channel.covariant_map();
  }

  int quiet_collisions = 0;
  Eigen::VectorXd p = rho.diagonal().real();
  for (long k = 1; k <= budget; ++k) {
    const double previous = series.n_mean.back();
    if (populations) {
      p = (*populations * p).eval();
      rho = ComplexMatrix(p.cast<std::complex<double>>().asDiagonal());
    } else if (transfer) {
      rho = transfer->apply(rho);
      rho = (0.5 * (rho + rho.adjoint())).eval();
    } else {
      rho = channel.apply(rho);
    }
    recorder.record(k, rho);

    const double current = series.n_mean.back();
    const double scale = std::max(std::abs(current), std::numeric_limits<double>::min());
    quiet_collisions = std::abs(current - previous) < options.steady_epsilon * scale ? quiet_collisions + 1 : 0;
    if (quiet_collisions >= options.steady_window) {
      series.reached_steady_state = true;
      if (options.stop_at_steady_state) break;
    }
  }
  series.final_state = rho;
  return series;
}

}  // namespace micromaser
