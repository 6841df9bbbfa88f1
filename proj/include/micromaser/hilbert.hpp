#pragma once

// Operator builders on truncated bosonic and atomic spaces.
//
// Atomic basis convention: index 0 is the excited level |e>, higher indices
// are ground levels. A thermal two-level atom is therefore diag(p_e, p_g).

#include <cmath>
#include <string>

#include "micromaser/tensor.hpp"

namespace micromaser {

/// Number of retained Fock levels |0>..|dim-1>.
struct FockTruncation {
  Index dim = 2;

  explicit FockTruncation(Index d) : dim(d) {
    if (d < 2) throw ValidationError("Fock truncation dimension must be >= 2, got " + std::to_string(d));
  }
};

inline constexpr int kDefaultMaxAtoms = 6;

enum class Pauli { kX, kY, kZ, kPlus, kMinus };
enum class Spin { kZ, kPlus, kMinus };
enum class Transition { kPlus, kMinus };

template <typename Real = double>
CMatrix<Real> annihilation(const FockTruncation& t) {
  CMatrix<Real> a = CMatrix<Real>::Zero(t.dim, t.dim);
  for (Index n = 1; n < t.dim; ++n) a(n - 1, n) = std::sqrt(static_cast<Real>(n));
  return a;
}

template <typename Real = double>
CMatrix<Real> creation(const FockTruncation& t) {
  return annihilation<Real>(t).adjoint();
}

template <typename Real = double>
CMatrix<Real> number_op(const FockTruncation& t) {
  CMatrix<Real> n = CMatrix<Real>::Zero(t.dim, t.dim);
  for (Index k = 0; k < t.dim; ++k) n(k, k) = static_cast<Real>(k);
  return n;
}

template <typename Real = double>
CMatrix<Real> pauli(Pauli which) {
  using C = std::complex<Real>;
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  switch (which) {
    case Pauli::kX: m(0, 1) = 1; m(1, 0) = 1; break;
    case Pauli::kY: m(0, 1) = C(0, -1); m(1, 0) = C(0, 1); break;
    case Pauli::kZ: m(0, 0) = 1; m(1, 1) = -1; break;
    case Pauli::kPlus: m(0, 1) = 1; break;   // |e><g|
    case Pauli::kMinus: m(1, 0) = 1; break;  // |g><e|
  }
  return m;
}

/// Identity padding: I ⊗ .. ⊗ op ⊗ .. ⊗ I with `op` at `position`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> lift(
    const Eigen::MatrixBase<Derived>& op, const HilbertSpec& spec, Index position,
    Index max_entries = kDefaultMaxEntries) {
  if (position < 0 || position >= spec.size()) throw ShapeError("lift: subsystem index out of range");
  if (op.rows() != spec.dim(position) || op.cols() != spec.dim(position)) {
    throw ShapeError("lift: operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                     " but subsystem " + std::to_string(position) + " has dimension " +
                     std::to_string(spec.dim(position)));
  }
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Index left = spec.left_dim(position);
  const Index right = spec.right_dim(position);
  Plain out = kron(Plain::Identity(left, left), op, max_entries);
  return kron(out, Plain::Identity(right, right), max_entries);
}

/// Collective operators on N two-level atoms: S_z = ½Σσ_z, S± = Σσ±.
template <typename Real = double>
CMatrix<Real> collective_spin(int atoms, Spin which, int max_atoms = kDefaultMaxAtoms) {
  if (atoms < 1) throw ValidationError("collective_spin: need at least one atom");
  if (atoms > max_atoms) {
    throw DimensionLimitError("collective_spin: " + std::to_string(atoms) + " atoms exceeds the cap of " +
                              std::to_string(max_atoms));
  }
  CMatrix<Real> single;
  Real scale = 1;
  switch (which) {
    case Spin::kZ: single = pauli<Real>(Pauli::kZ); scale = Real(0.5); break;
    case Spin::kPlus: single = pauli<Real>(Pauli::kPlus); break;
    case Spin::kMinus: single = pauli<Real>(Pauli::kMinus); break;
  }
  const HilbertSpec spec(std::vector<Index>(static_cast<std::size_t>(atoms), 2));
  const Index dim = spec.total_dim();
  CMatrix<Real> out = CMatrix<Real>::Zero(dim, dim);
  for (int i = 0; i < atoms; ++i) out += lift(single, spec, i);
  return scale * out;
}

/// R± of an atom with one excited level (index 0) and N degenerate ground
/// levels (indices 1..N): R+ = N^{-1/2} Σ_i |e><g_i|.
template <typename Real = double>
CMatrix<Real> multilevel_transition(int ground_levels, Transition which) {
  if (ground_levels < 1) throw ValidationError("multilevel_transition: need at least one ground level");
  const Index dim = ground_levels + 1;
  CMatrix<Real> plus = CMatrix<Real>::Zero(dim, dim);
  const Real amplitude = Real(1) / std::sqrt(static_cast<Real>(ground_levels));
  for (Index i = 1; i < dim; ++i) plus(0, i) = amplitude;
  if (which == Transition::kPlus) return plus;
  return plus.adjoint();
}

}  // namespace micromaser
