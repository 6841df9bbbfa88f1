#include <doctest.h>

#include <cmath>

#include "micromaser/hilbert.hpp"
#include "micromaser/tensor.hpp"
#include "test_support.hpp"

using namespace micromaser;
using micromaser::testing::max_abs;

TEST_CASE("kron of identities is identity") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(kron(i2, i2) - ComplexMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("kron of diagonal populations") {
  const double pe = 0.37754;
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = pe;
  d(1, 1) = 1.0 - pe;
  const ComplexMatrix k = kron(d, d);
  CHECK(k(0, 0).real() == doctest::Approx(0.14254).epsilon(1e-4));
  CHECK(k(1, 1).real() == doctest::Approx(0.23501).epsilon(1e-4));
  CHECK(k(2, 2).real() == doctest::Approx(0.23501).epsilon(1e-4));
  CHECK(k(3, 3).real() == doctest::Approx(0.38746).epsilon(1e-4));
  CHECK(max_abs(k - ComplexMatrix(k.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("kron shape and index law") {
  std::mt19937 rng(7);
  const ComplexMatrix a = micromaser::testing::random_matrix(rng, 2, 2);
  const ComplexMatrix b = micromaser::testing::random_matrix(rng, 3, 3);
  const ComplexMatrix k = kron(a, b);
  CHECK(k.rows() == 6);
  CHECK(k.cols() == 6);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index r = 0; r < 3; ++r)
        for (Index c = 0; c < 3; ++c) CHECK(k(i * 3 + r, j * 3 + c) == a(i, j) * b(r, c));
}

TEST_CASE("kron rejects results beyond the entry cap") {
  const ComplexMatrix a = ComplexMatrix::Identity(64, 64);
  CHECK_THROWS_AS(kron(a, a, 4000), DimensionLimitError);
  const ComplexMatrix big = ComplexMatrix::Identity(1025, 1025);
  CHECK_THROWS_AS(kron(big, ComplexMatrix::Identity(1, 1)), DimensionLimitError);
}

TEST_CASE("kron properties on random operands") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> size(1, 3);
    const ComplexMatrix a = micromaser::testing::random_matrix(rng, size(rng), size(rng));
    const ComplexMatrix b = micromaser::testing::random_matrix(rng, size(rng), size(rng));
    const ComplexMatrix c = micromaser::testing::random_matrix(rng, size(rng), size(rng));
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) < 1e-12);

    const Index n = size(rng) + 1, m = size(rng) + 1;
    const ComplexMatrix sa = micromaser::testing::random_matrix(rng, n, n);
    const ComplexMatrix sb = micromaser::testing::random_matrix(rng, m, m);
    CHECK(std::abs(kron(sa, sb).trace() - sa.trace() * sb.trace()) < 1e-12);
  }
}

TEST_CASE("partial trace of a product state returns the kept factor") {
  std::mt19937 rng(3);
  const ComplexMatrix a = micromaser::testing::random_density_matrix(rng, 2);
  const ComplexMatrix b = micromaser::testing::random_density_matrix(rng, 3);
  const HilbertSpec spec{2, 3};
  CHECK(max_abs(partial_trace(kron(a, b), spec, 0) - a) < 1e-14);
  CHECK(max_abs(partial_trace(kron(a, b), spec, 1) - b) < 1e-14);
}

TEST_CASE("partial trace of a classically correlated Bell mixture") {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = 0.5;
  rho(3, 3) = 0.5;
  const HilbertSpec spec{2, 2};
  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(partial_trace(rho, spec, 0) - half) == 0.0);
  CHECK(max_abs(partial_trace(rho, spec, 1) - half) == 0.0);
}

TEST_CASE("partial trace agrees with explicit multi-index summation") {
  std::mt19937 rng(5);
  const std::vector<std::vector<Index>> cases = {{2, 2}, {2, 3}, {3, 4}, {2, 3, 2}};
  for (const auto& dims : cases) {
    const HilbertSpec spec(dims);
    for (int trial = 0; trial < 3; ++trial) {
      const ComplexMatrix rho = micromaser::testing::random_density_matrix(rng, spec.total_dim());
      for (Index keep = 0; keep < spec.size(); ++keep) {
        const ComplexMatrix reduced = partial_trace(rho, spec, keep);
        CHECK(max_abs(reduced - micromaser::testing::partial_trace_oracle(rho, dims, keep)) < 1e-12);
        CHECK(std::abs(reduced.trace() - rho.trace()) < 1e-12);
      }
    }
  }
}

TEST_CASE("partial trace shape errors") {
  const HilbertSpec spec{2, 3};
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(5, 5), spec, 0), ShapeError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(6, 6), spec, 2), ShapeError);
  CHECK_THROWS_AS(HilbertSpec({1, 3}), ShapeError);
}

TEST_CASE("expm of zero is identity") {
  CHECK(max_abs(expm(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)) < 1e-15);
}

TEST_CASE("expm of a pi phase on the number operator") {
  const ComplexMatrix n = number_op(FockTruncation(3));
  const ComplexMatrix u = expm(std::complex<double>(0.0, -M_PI) * n);
  CHECK(std::abs(u(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(u(1, 1) + 1.0) < 1e-12);
  CHECK(std::abs(u(2, 2) - 1.0) < 1e-12);
  CHECK(std::abs(u(0, 1)) < 1e-15);
}

TEST_CASE("expm matches the truncated Taylor series for small norms") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix m = micromaser::testing::random_matrix(rng, 4, 4);
    m *= 0.9 / m.operatorNorm();
    CHECK(max_abs(expm(m) - micromaser::testing::taylor_exp_oracle(m)) < 1e-12);
  }
}

TEST_CASE("expm of anti-Hermitian input is unitary and exp(A)exp(-A) = I") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix h = micromaser::testing::random_hermitian(rng, 5);
    const ComplexMatrix u = expm(std::complex<double>(0.0, -1.0) * h);
    CHECK(max_abs(u * u.adjoint() - ComplexMatrix::Identity(5, 5)) < 1e-10);

    ComplexMatrix a = micromaser::testing::random_matrix(rng, 5, 5);
    const double radius = a.eigenvalues().cwiseAbs().maxCoeff();
    a *= 1.9 / radius;
    CHECK(max_abs(expm(a) * expm(-a) - ComplexMatrix::Identity(5, 5)) < 1e-9);
  }
}

TEST_CASE("expm rejects non-square input") {
  CHECK_THROWS_AS(expm(ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("hermitian eigenvalues") {
  const RealVector id = hermitian_eigenvalues(ComplexMatrix::Identity(2, 2));
  CHECK(id(0) == doctest::Approx(1.0));
  CHECK(id(1) == doctest::Approx(1.0));
  const RealVector z = hermitian_eigenvalues(pauli(Pauli::kZ));
  CHECK(z(0) == doctest::Approx(-1.0));
  CHECK(z(1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(hermitian_eigenvalues(pauli(Pauli::kPlus)), SymmetryError);
}

TEST_CASE("hermitian eigenvalues of a thermal state are its Boltzmann weights") {
  const Index dim = 10;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  std::vector<double> weights;
  double z = 0.0;
  for (Index n = 0; n < dim; ++n) {
    weights.push_back(std::exp(-static_cast<double>(n)));
    z += weights.back();
  }
  for (Index n = 0; n < dim; ++n) rho(n, n) = weights[static_cast<std::size_t>(n)] / z;
  // Rotate into a non-diagonal basis so the solver does real work.
  std::mt19937 rng(29);
  const ComplexMatrix u = expm(std::complex<double>(0.0, -1.0) * micromaser::testing::random_hermitian(rng, dim));
  const ComplexMatrix rotated = u * rho * u.adjoint();
  const RealVector ev = hermitian_eigenvalues(0.5 * (rotated + rotated.adjoint()));
  std::sort(weights.begin(), weights.end());
  for (Index n = 0; n < dim; ++n) {
    CHECK(ev(n) >= -1e-12);
    CHECK(ev(n) <= 1.0);
    CHECK(std::abs(ev(n) - weights[static_cast<std::size_t>(n)] / z) < 1e-12);
  }
  CHECK(std::abs(ev.sum() - 1.0) < 1e-10);
}

TEST_CASE("density matrix predicate") {
  std::mt19937 rng(31);
  CHECK(is_density_matrix(micromaser::testing::random_density_matrix(rng, 4)));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  CHECK(density_matrix_violation(bad) == "negative eigenvalue");
  CHECK_FALSE(is_density_matrix(ComplexMatrix::Identity(2, 2)));
}
