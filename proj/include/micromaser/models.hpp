#pragma once

// Reservoir, field and coupling descriptions; thermal states; Hamiltonians.
//
// Units: hbar = k_B = 1, frequencies in units of the cavity frequency.

#include <vector>

#include "micromaser/hilbert.hpp"
#include "micromaser/tensor.hpp"

namespace micromaser {

enum class ReservoirKind { kMultiAtom, kMultiLevel };

/// A cluster of N uncorrelated two-level atoms, or one atom with a single
/// excited level and N degenerate ground levels.
struct ReservoirSpec {
  ReservoirKind kind = ReservoirKind::kMultiAtom;
  int N = 1;
  double T_a = 1.0;
  double omega = 1.0;
};

struct FieldSpec {
  double Omega = 1.0;
  FockTruncation truncation{30};
  double T_f0 = 0.0;
};

struct CouplingSpec {
  double g = 0.0;
  double tau = 1.0;
  double tau0 = 0.0;
  double gamma = 1e-9;
  double kappa = 0.5e-10;

  double phi() const noexcept { return g * tau; }
  double injection_rate() const noexcept { return 1.0 / (tau + tau0); }
  double period() const noexcept { return tau + tau0; }
};

struct Populations {
  double excited = 0.0;
  /// Two-level: the ground population. Multilevel: one of the N ground levels.
  double ground = 0.0;
};

/// Thermal two-level populations with p_g/p_e = exp(omega/T_a).
Populations two_level_populations(double omega, double T_a);

/// Multilevel populations: N p_g'/p_e = exp(omega/T_a) and p_e + N p_g' = 1.
/// Throws GainRegimeError when exp(omega/T_a) <= N (p_g' <= p_e).
Populations multilevel_populations(int N, double omega, double T_a);

Populations reservoir_populations(const ReservoirSpec& reservoir);

/// omega / ln(p_g/p_e).
double two_level_temperature(double omega, double p_excited, double p_ground);
/// Reservoir temperature of the multilevel atom, omega / ln(N p_g'/p_e).
double multilevel_temperature(int N, double omega, double p_excited, double p_ground_each);
/// Temperature implied by a steady photon number p_e/(p_g' - p_e), omega / ln(p_g'/p_e).
double multilevel_effective_temperature(double omega, double p_excited, double p_ground_each);

/// Population of |dim-1> in the truncated, renormalized thermal state.
double thermal_tail_population(double Omega, double T, Index dim);

/// Truncated thermal state exp(-H_f/T)/Z; vacuum projector at T = 0.
ComplexMatrix thermal_field_state(const FieldSpec& field);

/// N-fold Kronecker power of diag(p_e, 1-p_e).
ComplexMatrix atom_cluster_state(int N, double p_excited);

/// diag(p_e, p_g', ..., p_g') with p_g' = (1-p_e)/N.
ComplexMatrix multilevel_atom_state(int N, double p_excited);

/// Thermal state of one reservoir unit (a cluster or a multilevel atom).
ComplexMatrix reservoir_state(const ReservoirSpec& reservoir);

/// Dimension of one reservoir unit: 2^N for clusters, N+1 for multilevel atoms.
Index reservoir_dim(const ReservoirSpec& reservoir);

/// Joint space {atoms..., field}. Clusters are listed atom by atom.
HilbertSpec joint_spec(const ReservoirSpec& reservoir, Index field_dim);

/// Ω a†a + (ω/2)σ_z + g(σ+ a + σ- a†) on (2, dim).
ComplexMatrix hamiltonian_jc(const FieldSpec& field, double omega, double g);

/// Ω a†a + ω S_z + g(a† S- + a S+) on (2^N, dim).
ComplexMatrix hamiltonian_tc(const FieldSpec& field, double omega, double g, int N,
                             int max_atoms = kDefaultMaxAtoms);

/// Ω a†a + ω|e><e| + g(R+ a + R- a†) on (N+1, dim); ground levels at zero energy.
ComplexMatrix hamiltonian_multilevel(const FieldSpec& field, double omega, double g, int N);

/// g(a† S- + a S+): the coupling alone, as it appears in the interaction picture.
ComplexMatrix interaction_tc(Index field_dim, double g, int N, int max_atoms = kDefaultMaxAtoms);

/// g(R+ a + R- a†).
ComplexMatrix interaction_multilevel(Index field_dim, double g, int N);

/// Hamiltonian in the frame rotating at the cavity frequency:
/// (ω - Ω) times the atomic excitation operator plus the coupling. Time
/// independent for any detuning; equal to the bare coupling on resonance.
ComplexMatrix rotating_frame_hamiltonian(const ReservoirSpec& reservoir, const FieldSpec& field, double g);

/// Atomic lowering operators lifted to the joint space: σ-^i per cluster atom,
/// or |g_i><e| per ground level of the multilevel atom.
std::vector<ComplexMatrix> atomic_decay_operators(const ReservoirSpec& reservoir, Index field_dim);

bool is_resonant(const ReservoirSpec& reservoir, const FieldSpec& field);

}  // namespace micromaser
