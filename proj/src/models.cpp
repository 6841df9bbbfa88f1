#include "micromaser/models.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace micromaser {

namespace {

void check_temperature(double omega, double T_a) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("atomic level spacing must be positive and finite");
  }
  if (!(T_a > 0.0) || std::isnan(T_a)) {
    throw DomainError("reservoir temperature must be positive, got " + std::to_string(T_a));
  }
}

}  // namespace

Populations two_level_populations(double omega, double T_a) {
  check_temperature(omega, T_a);
  const double x = omega / T_a;
  return {1.0 / (1.0 + std::exp(x)), 1.0 / (1.0 + std::exp(-x))};
}

Populations multilevel_populations(int N, double omega, double T_a) {
  if (N < 1) throw ValidationError("multilevel atom needs at least one ground level");
  check_temperature(omega, T_a);
  const double x = omega / T_a;
  if (x <= std::log(static_cast<double>(N))) {
    throw GainRegimeError("multilevel reservoir with N=" + std::to_string(N) + " at T_a=" +
                          std::to_string(T_a) + " has p_g' <= p_e (exp(omega/T_a) <= N): no thermal steady state");
  }
  return {1.0 / (1.0 + std::exp(x)), 1.0 / (N * (1.0 + std::exp(-x)))};
}

Populations reservoir_populations(const ReservoirSpec& reservoir) {
  if (reservoir.kind == ReservoirKind::kMultiLevel) {
    return multilevel_populations(reservoir.N, reservoir.omega, reservoir.T_a);
  }
  return two_level_populations(reservoir.omega, reservoir.T_a);
}

double two_level_temperature(double omega, double p_excited, double p_ground) {
  return omega / std::log(p_ground / p_excited);
}

double multilevel_temperature(int N, double omega, double p_excited, double p_ground_each) {
  return omega / std::log(N * p_ground_each / p_excited);
}

double multilevel_effective_temperature(double omega, double p_excited, double p_ground_each) {
  return omega / std::log(p_ground_each / p_excited);
}

double thermal_tail_population(double Omega, double T, Index dim) {
  if (T <= 0.0) return 0.0;
  const double ratio = std::exp(-Omega / T);
  // Renormalized geometric weights: p_n = ratio^n (1 - ratio) / (1 - ratio^dim).
  const double top = std::pow(ratio, static_cast<double>(dim - 1));
  const double norm = -std::expm1(static_cast<double>(dim) * std::log(ratio));
  return top * (-std::expm1(std::log(ratio))) / norm;
}

ComplexMatrix thermal_field_state(const FieldSpec& field) {
  if (!(field.Omega > 0.0)) throw ValidationError("field frequency must be positive");
  if (field.T_f0 < 0.0) throw ValidationError("field temperature must be non-negative");
  const Index dim = field.truncation.dim;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  if (field.T_f0 == 0.0) {
    rho(0, 0) = 1.0;
    return rho;
  }
  RealVector weights(dim);
  for (Index n = 0; n < dim; ++n) weights(n) = std::exp(-static_cast<double>(n) * field.Omega / field.T_f0);
  weights /= weights.sum();
  rho.diagonal() = weights.cast<std::complex<double>>();
  return rho;
}

ComplexMatrix atom_cluster_state(int N, double p_excited) {
  if (N < 1) throw ValidationError("atom cluster needs at least one atom");
  if (!(p_excited >= 0.0 && p_excited <= 1.0)) throw DomainError("excited population outside [0, 1]");
  ComplexMatrix single = ComplexMatrix::Zero(2, 2);
  single(0, 0) = p_excited;
  single(1, 1) = 1.0 - p_excited;
  ComplexMatrix out = single;
  for (int i = 1; i < N; ++i) out = kron(out, single);
  return out;
}

ComplexMatrix multilevel_atom_state(int N, double p_excited) {
  if (N < 1) throw ValidationError("multilevel atom needs at least one ground level");
  if (!(p_excited >= 0.0 && p_excited <= 1.0)) throw DomainError("excited population outside [0, 1]");
  ComplexMatrix rho = ComplexMatrix::Zero(N + 1, N + 1);
  rho(0, 0) = p_excited;
  const double each = (1.0 - p_excited) / N;
  for (int i = 1; i <= N; ++i) rho(i, i) = each;
  return rho;
}

ComplexMatrix reservoir_state(const ReservoirSpec& reservoir) {
  const Populations p = reservoir_populations(reservoir);
  if (reservoir.kind == ReservoirKind::kMultiLevel) return multilevel_atom_state(reservoir.N, p.excited);
  return atom_cluster_state(reservoir.N, p.excited);
}

Index reservoir_dim(const ReservoirSpec& reservoir) {
  if (reservoir.kind == ReservoirKind::kMultiLevel) return reservoir.N + 1;
  return Index{1} << reservoir.N;
}

HilbertSpec joint_spec(const ReservoirSpec& reservoir, Index field_dim) {
  if (reservoir.kind == ReservoirKind::kMultiLevel) return HilbertSpec{reservoir.N + 1, field_dim};
  std::vector<Index> dims(static_cast<std::size_t>(reservoir.N), 2);
  dims.push_back(field_dim);
  return HilbertSpec(std::move(dims));
}

namespace {

ComplexMatrix free_field(const FieldSpec& field, Index atom_dim) {
  const HilbertSpec spec{atom_dim, field.truncation.dim};
  return field.Omega * lift(number_op(field.truncation), spec, 1);
}

}  // namespace

ComplexMatrix hamiltonian_jc(const FieldSpec& field, double omega, double g) {
  const Index dim = field.truncation.dim;
  const HilbertSpec spec{2, dim};
  const ComplexMatrix a = lift(annihilation(field.truncation), spec, 1);
  const ComplexMatrix ad = lift(creation(field.truncation), spec, 1);
  const ComplexMatrix sp = lift(pauli(Pauli::kPlus), spec, 0);
  const ComplexMatrix sm = lift(pauli(Pauli::kMinus), spec, 0);
  return free_field(field, 2) + 0.5 * omega * lift(pauli(Pauli::kZ), spec, 0) + g * (sp * a + sm * ad);
}

ComplexMatrix interaction_tc(Index field_dim, double g, int N, int max_atoms) {
  const FockTruncation t(field_dim);
  const ComplexMatrix s_plus = collective_spin(N, Spin::kPlus, max_atoms);
  const HilbertSpec spec{s_plus.rows(), field_dim};
  const ComplexMatrix a = lift(annihilation(t), spec, 1);
  const ComplexMatrix ad = lift(creation(t), spec, 1);
  const ComplexMatrix s_plus_joint = lift(s_plus, spec, 0);
  const ComplexMatrix s_minus_joint = s_plus_joint.adjoint();
  return g * (ad * s_minus_joint + a * s_plus_joint);
}

ComplexMatrix hamiltonian_tc(const FieldSpec& field, double omega, double g, int N, int max_atoms) {
  const ComplexMatrix coupling = interaction_tc(field.truncation.dim, g, N, max_atoms);
  const Index atom_dim = Index{1} << N;
  const HilbertSpec spec{atom_dim, field.truncation.dim};
  return free_field(field, atom_dim) + omega * lift(collective_spin(N, Spin::kZ, max_atoms), spec, 0) +
         coupling;
}

ComplexMatrix interaction_multilevel(Index field_dim, double g, int N) {
  const FockTruncation t(field_dim);
  const HilbertSpec spec{N + 1, field_dim};
  const ComplexMatrix a = lift(annihilation(t), spec, 1);
  const ComplexMatrix ad = lift(creation(t), spec, 1);
  const ComplexMatrix r_plus = lift(multilevel_transition(N, Transition::kPlus), spec, 0);
  const ComplexMatrix r_minus = lift(multilevel_transition(N, Transition::kMinus), spec, 0);
  return g * (r_plus * a + r_minus * ad);
}

namespace {

ComplexMatrix excited_projector(int N) {
  ComplexMatrix p = ComplexMatrix::Zero(N + 1, N + 1);
  p(0, 0) = 1.0;
  return p;
}

}  // namespace

ComplexMatrix hamiltonian_multilevel(const FieldSpec& field, double omega, double g, int N) {
  const HilbertSpec spec{N + 1, field.truncation.dim};
  return free_field(field, N + 1) + omega * lift(excited_projector(N), spec, 0) +
         interaction_multilevel(field.truncation.dim, g, N);
}

ComplexMatrix rotating_frame_hamiltonian(const ReservoirSpec& reservoir, const FieldSpec& field, double g) {
  const Index dim = field.truncation.dim;
  const double detuning = reservoir.omega - field.Omega;
  if (reservoir.kind == ReservoirKind::kMultiLevel) {
    ComplexMatrix h = interaction_multilevel(dim, g, reservoir.N);
    if (detuning != 0.0) {
      h += detuning * lift(excited_projector(reservoir.N), HilbertSpec{reservoir.N + 1, dim}, 0);
    }
    return h;
  }
  ComplexMatrix h = interaction_tc(dim, g, reservoir.N);
  if (detuning != 0.0) {
    h += detuning * lift(collective_spin(reservoir.N, Spin::kZ), HilbertSpec{Index{1} << reservoir.N, dim}, 0);
  }
  return h;
}

std::vector<ComplexMatrix> atomic_decay_operators(const ReservoirSpec& reservoir, Index field_dim) {
  std::vector<ComplexMatrix> ops;
  const HilbertSpec spec = joint_spec(reservoir, field_dim);
  if (reservoir.kind == ReservoirKind::kMultiLevel) {
    for (int i = 1; i <= reservoir.N; ++i) {
      ComplexMatrix lower = ComplexMatrix::Zero(reservoir.N + 1, reservoir.N + 1);
      lower(i, 0) = 1.0;
      ops.push_back(lift(lower, spec, 0));
    }
    return ops;
  }
  for (int i = 0; i < reservoir.N; ++i) ops.push_back(lift(pauli(Pauli::kMinus), spec, i));
  return ops;
}

bool is_resonant(const ReservoirSpec& reservoir, const FieldSpec& field) {
  return reservoir.omega == field.Omega;
}

}  // namespace micromaser
