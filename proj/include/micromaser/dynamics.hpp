#pragma once

// Lindblad integration and the repeated-injection driver.
//
// Collisions are simulated in the frame rotating at the cavity frequency, in
// which the Hamiltonian of every supported model is time independent. Field
// populations, and every observable derived from them, are the same in the
// rotating and laboratory frames; field coherences differ by the phases
// exp(-i Ω (m-n) t).

#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "micromaser/models.hpp"
#include "micromaser/tensor.hpp"

namespace micromaser {

struct Channel {
  ComplexMatrix op;
  double rate = 0.0;
};

/// dρ/dt = -i[H, ρ] + Σ_k rate_k D[op_k]ρ.
struct LindbladGenerator {
  ComplexMatrix hamiltonian;
  std::vector<Channel> channels;

  Index dim() const noexcept { return hamiltonian.rows(); }
  /// Throws ShapeError / SymmetryError / ValidationError on a malformed generator.
  void validate() const;
};

struct IntegratorSettings {
  double dt = 0.0;
  bool renormalize_trace = false;
};

/// D[x]ρ = xρx† - ½(x†xρ + ρx†x).
ComplexMatrix dissipator(const ComplexMatrix& op, const ComplexMatrix& rho);

ComplexMatrix master_rhs(const LindbladGenerator& gen, const ComplexMatrix& rho);

/// The generator folded into an effective non-Hermitian Hamiltonian plus
/// jump terms, stored sparse: L(ρ) = -i(H_eff ρ - ρ H_eff†) + Σ J ρ J†.
class SparseLiouvillian {
 public:
  explicit SparseLiouvillian(const LindbladGenerator& gen);

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  Index dim() const noexcept { return dim_; }

 private:
  using Sparse = Eigen::SparseMatrix<std::complex<double>>;
  Index dim_;
  Sparse effective_hamiltonian_;
  std::vector<Sparse> jumps_;
};

/// Classical fourth-order Runge-Kutta over `duration` with steps no larger
/// than settings.dt. The state is re-symmetrized after every step.
ComplexMatrix evolve(const LindbladGenerator& gen, const ComplexMatrix& rho0, double duration,
                     const IntegratorSettings& settings);
ComplexMatrix evolve(const SparseLiouvillian& liouvillian, const ComplexMatrix& rho0, double duration,
                     const IntegratorSettings& settings);

/// Joint atom-field generator for one interaction window (rotating frame).
LindbladGenerator collision_generator(const ReservoirSpec& reservoir, const CouplingSpec& coupling,
                                      const FieldSpec& field);

/// The field channel of a phase-covariant collision. Entries ρ(m, n) only feed
/// entries with the same offset m - n, so the channel splits into one block per
/// offset; block k maps the diagonal ρ(j, j+k) and its conjugate maps ρ(j+k, j).
class CovariantFieldMap {
 public:
  CovariantFieldMap(Index dim, std::vector<ComplexMatrix> blocks);
  ComplexMatrix apply(const ComplexMatrix& rho_f) const;
  Index dim() const noexcept { return dim_; }
  /// Block for offset k >= 0, of size (dim - k) x (dim - k).
  const ComplexMatrix& block(Index k) const { return blocks_.at(static_cast<std::size_t>(k)); }

 private:
  Index dim_;
  std::vector<ComplexMatrix> blocks_;
};

/// One injection: fresh reservoir unit ⊗ field, evolve for tau, trace out the
/// atoms, then let the empty cavity decay for tau0. The channel is linear in
/// the field state and identical for every collision of a run.
class CollisionChannel {
 public:
  CollisionChannel(const ReservoirSpec& reservoir, const CouplingSpec& coupling, const FieldSpec& field,
                   const IntegratorSettings& settings);

  /// Uses an explicit atomic state instead of the thermal reservoir unit.
  CollisionChannel(const ReservoirSpec& reservoir, const ComplexMatrix& atom_state, const CouplingSpec& coupling,
                   const FieldSpec& field, const IntegratorSettings& settings);

  ComplexMatrix apply(const ComplexMatrix& rho_f) const;

  /// Column n holds the field populations after one collision starting from
  /// |n><n|. Empty optional if some image of a Fock projector carries
  /// coherences, in which case populations do not evolve on their own.
  std::optional<Eigen::MatrixXd> population_map() const;
  /// Full field channel, built from dim joint evolutions. Empty optional unless
  /// the atomic state is diagonal (the generator itself conserves excitations).
  std::optional<CovariantFieldMap> covariant_map() const;

  const ComplexMatrix& atom_state() const noexcept { return atom_state_; }
  const LindbladGenerator& generator() const noexcept { return generator_; }
  Index field_dim() const noexcept { return field_dim_; }

 private:
  ReservoirSpec reservoir_;
  CouplingSpec coupling_;
  IntegratorSettings settings_;
  Index field_dim_;
  ComplexMatrix atom_state_;
  HilbertSpec spec_;
  LindbladGenerator generator_;
  SparseLiouvillian joint_;
  SparseLiouvillian idle_;
};

ComplexMatrix collision_step(const ComplexMatrix& rho_f, const ReservoirSpec& reservoir,
                             const CouplingSpec& coupling, const FieldSpec& field,
                             const IntegratorSettings& settings);

/// Per-collision record. Sample k is taken at t_k = k (tau + tau0).
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> n_mean;
  std::vector<double> T_field;
  /// NaN where the mean photon number is below the correlation floor.
  std::vector<double> g2;
  std::vector<double> trace_dev;
  std::vector<double> tail_leak;
  std::vector<double> min_eigenvalue;
  std::vector<double> hermiticity_defect;

  bool reached_steady_state = false;
  ComplexMatrix final_state;

  std::size_t size() const noexcept { return times.size(); }
};

struct SimulationConfig {
  FieldSpec field;
  ReservoirSpec reservoir;
  CouplingSpec coupling;
  IntegratorSettings integrator;
  /// Unset means: 10 predicted thermalization times worth of collisions.
  std::optional<long> collisions_max;
  long seed = 0;
  std::string output_path;
};

enum class Propagation {
  kAuto,    // population map when the state is diagonal, covariant field map otherwise
  kDirect,  // joint evolution for every collision
};

struct RunOptions {
  Propagation propagation = Propagation::kAuto;
  std::optional<ComplexMatrix> initial_state;
  bool stop_at_steady_state = true;
  double steady_epsilon = 1e-6;
  int steady_window = 50;
  double leak_threshold = 1e-4;
  double g2_floor = 1e-9;
};

/// Collision budget used when the config does not set one.
long default_collision_budget(const SimulationConfig& config);

/// Throws TruncationError if a field state leaks more than the threshold into the top Fock level.
TimeSeries run_simulation(const SimulationConfig& config, const RunOptions& options = {});

}  // namespace micromaser
