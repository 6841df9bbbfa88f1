#pragma once

// Dense complex linear algebra on top of Eigen: tensor products, partial
// traces, the matrix exponential and Hermitian spectra.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "micromaser/errors.hpp"

namespace micromaser {

using Index = Eigen::Index;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using RealVector = RVector<double>;

/// Default guard on the number of entries a tensor product may produce.
inline constexpr Index kDefaultMaxEntries = Index{1} << 20;

/// Ordered subsystem dimensions of a tensor-product space. Factor order is
/// atoms first, field last throughout the library.
class HilbertSpec {
 public:
  explicit HilbertSpec(std::vector<Index> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ShapeError("HilbertSpec needs at least one subsystem");
    for (Index d : dims_) {
      if (d < 2) throw ShapeError("HilbertSpec subsystem dimension must be >= 2");
    }
  }
  HilbertSpec(std::initializer_list<Index> dims) : HilbertSpec(std::vector<Index>(dims)) {}

  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index size() const noexcept { return static_cast<Index>(dims_.size()); }
  Index dim(Index position) const { return dims_.at(static_cast<std::size_t>(position)); }
  Index total_dim() const noexcept {
    return std::accumulate(dims_.begin(), dims_.end(), Index{1}, std::multiplies<>());
  }
  /// Product of dimensions strictly before / after `position`.
  Index left_dim(Index position) const {
    return std::accumulate(dims_.begin(), dims_.begin() + position, Index{1}, std::multiplies<>());
  }
  Index right_dim(Index position) const {
    return std::accumulate(dims_.begin() + position + 1, dims_.end(), Index{1}, std::multiplies<>());
  }

 private:
  std::vector<Index> dims_;
};

template <typename Derived>
using MatrixScalar = typename Derived::Scalar;

/// Kronecker product a ⊗ b. Entry (i*b.rows()+k, j*b.cols()+l) = a(i,j) b(k,l).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    Index max_entries = kDefaultMaxEntries) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows != 0 && cols > max_entries / rows) {
    throw DimensionLimitError("kron result of " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " exceeds the entry cap of " + std::to_string(max_entries));
  }
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Reduced state of subsystem `keep`: traces out every other factor.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& rho, const HilbertSpec& spec, Index keep) {
  if (keep < 0 || keep >= spec.size()) throw ShapeError("partial_trace: subsystem index out of range");
  if (rho.rows() != spec.total_dim() || rho.cols() != spec.total_dim()) {
    throw ShapeError("partial_trace: matrix is " + std::to_string(rho.rows()) + "x" +
                     std::to_string(rho.cols()) + ", spec total dimension is " +
                     std::to_string(spec.total_dim()));
  }
  const Index left = spec.left_dim(keep);
  const Index kept = spec.dim(keep);
  const Index right = spec.right_dim(keep);
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(kept, kept);
  for (Index l = 0; l < left; ++l) {
    const Index offset = l * kept * right;
    for (Index i = 0; i < kept; ++i) {
      for (Index j = 0; j < kept; ++j) {
        Scalar sum(0);
        for (Index r = 0; r < right; ++r) sum += rho(offset + i * right + r, offset + j * right + r);
        out(i, j) += sum;
      }
    }
  }
  return out;
}

/// Matrix exponential (scaling and squaring with a Padé approximant).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> expm(
    const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw ShapeError("expm: matrix must be square");
  if (!m.allFinite()) throw DomainError("expm: non-finite entries");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> plain = m;
  return plain.exp();
}

/// Largest elementwise |m - m^dagger|.
template <typename Derived>
auto hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw ShapeError("hermiticity_defect: matrix must be square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Ascending eigenvalues of a Hermitian matrix.
template <typename Derived>
RVector<typename Eigen::NumTraits<typename Derived::Scalar>::Real> hermitian_eigenvalues(
    const Eigen::MatrixBase<Derived>& m, double tolerance = 1e-10) {
  if (m.rows() != m.cols()) throw ShapeError("hermitian_eigenvalues: matrix must be square");
  if (hermiticity_defect(m) > tolerance) {
    throw SymmetryError("hermitian_eigenvalues: matrix is not Hermitian");
  }
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Plain> solver(Plain(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Checks the density-matrix invariants; returns an empty string when they hold.
template <typename Derived>
std::string density_matrix_violation(const Eigen::MatrixBase<Derived>& rho) {
  if (rho.rows() != rho.cols()) return "not square";
  if (!rho.allFinite()) return "non-finite entries";
  if (hermiticity_defect(rho) > 1e-12) return "not Hermitian";
  if (std::abs(rho.trace() - typename Derived::Scalar(1)) > 1e-10) return "trace differs from 1";
  if (hermitian_eigenvalues(rho, 1e-12).minCoeff() < -1e-9) return "negative eigenvalue";
  return {};
}

template <typename Derived>
bool is_density_matrix(const Eigen::MatrixBase<Derived>& rho) {
  return density_matrix_violation(rho).empty();
}

/// [a, b] = ab - ba.
template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b - b * a).eval();
}

}  // namespace micromaser
