#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "xstates/core.hpp"
#include "xstates/spectral.hpp"

using namespace xstates;
using doctest::Approx;

namespace {

void check_decomposition(const XState& x) {
  const SpectralDecomposition s = eigendecompose(x);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    sum += s.lambda[i];
    CHECK(s.lambda[i] >= -1e-12);
    if (i > 0) CHECK(s.lambda[i - 1] >= s.lambda[i]);
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
  CHECK((s.reconstruct() - x.matrix()).norm() < 1e-10);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex ip = s.vectors[i].dot(s.vectors[j]);
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  for (int i = 0; i < 4; ++i) {
    const Vector4& v = s.vectors[i];
    if (s.blocks[i] == Block::AD)
      CHECK(std::abs(v[1]) + std::abs(v[2]) == 0.0);
    else
      CHECK(std::abs(v[0]) + std::abs(v[3]) == 0.0);
  }
}

}  // namespace

TEST_CASE("eigendecompose examples") {
  SpectralDecomposition s = eigendecompose(bell(0));
  CHECK(s.lambda[0] == Approx(1.0).epsilon(1e-15));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(s.lambda[i]) < 1e-15);

  s = eigendecompose(werner(0.5));
  CHECK(s.lambda[0] == Approx(0.625).epsilon(1e-15));
  for (int i = 1; i < 4; ++i) CHECK(s.lambda[i] == Approx(0.125).epsilon(1e-15));
  CHECK(s.u_plus == 0.375);
  CHECK(s.u_minus == 0.0);
  CHECK(s.r_plus == 0.125);
  CHECK(s.r_minus == 0.0);

  // degenerate ad-block, w = 0: computational vectors
  s = eigendecompose(validate(0.3, 0.2, 0.2, 0.3, 0.1, 0));
  for (int i = 0; i < 4; ++i)
    if (s.blocks[i] == Block::AD) {
      const Vector4& v = s.vectors[i];
      const bool is_00 = std::abs(v[0]) == 1.0 && v[3] == 0.0;
      const bool is_11 = std::abs(v[3]) == 1.0 && v[0] == 0.0;
      CHECK((is_00 || is_11));
    }
  // w = 0 with a != d
  s = eigendecompose(validate(0.6, 0.1, 0.1, 0.2, 0.05, 0));
  CHECK(s.lambda[0] == Approx(0.6).epsilon(1e-15));
  CHECK(std::abs(s.vectors[0][0]) == 1.0);
  check_decomposition(validate(0.6, 0.1, 0.1, 0.2, 0.05, 0));
}

TEST_CASE("eigendecompose is a faithful eigensystem on random states") {
  for (std::uint64_t i = 0; i < 2000; ++i) check_decomposition(random_xstate(31, i, RandomOptions{i % 2 == 0}));
  check_decomposition(bell(2));
  check_decomposition(validate(1, 0, 0, 0, 0, 0));
  check_decomposition(validate(0.25, 0.25, 0.25, 0.25, 0, 0));
  check_decomposition(validate(0.5 - 1e-9, 0, 0, 0.5 + 1e-9, 0, std::sqrt((0.5 - 1e-9) * (0.5 + 1e-9))));
}

TEST_CASE("eigenvalue formula against dense solvers on 10^4 states") {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const XState x = random_xstate(37, i, RandomOptions{i % 3 == 0});
    const SpectralDecomposition s = eigendecompose(x);
    const Eigen::Vector4d dense = oracle::spectrum(x.matrix());
    const HermitianEigen jac = hermitian_eigen(x.matrix());
    double sq = 0.0;
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(s.lambda[k] - dense(k)) < 1e-10);
      CHECK(std::abs(s.lambda[k] - jac.values[k]) < 1e-10);
      sq += s.lambda[k] * s.lambda[k];
    }
    CHECK(std::abs(sq - purity(x)) < 1e-10);
  }
}

TEST_CASE("entropy") {
  CHECK(entropy(bell(0)) == 0.0);
  CHECK(entropy(validate(0.25, 0.25, 0.25, 0.25, 0, 0)) == Approx(2.0).epsilon(1e-15));
  // -0.625 log2 0.625 - 3 * 0.125 log2 0.125
  const double expected = -0.625 * std::log2(0.625) + 3 * 0.125 * 3;
  CHECK(entropy(werner(0.5)) == Approx(expected).epsilon(1e-14));
  CHECK(std::abs(entropy(werner(0.5)) - 1.54879) < 1e-5);

  for (std::uint64_t i = 0; i < 1000; ++i) {
    const XState x = random_xstate(41, i, RandomOptions{true});
    const double h = entropy(x);
    CHECK(h >= 0.0);
    CHECK(h <= 2.0 + 1e-12);
    CHECK(std::abs(h - oracle::entropy(x.matrix())) < 1e-9);
    CHECK(std::abs(h - entropy(x.swapped())) < 1e-12);
  }
}

TEST_CASE("Shannon and binary entropy conventions") {
  const double p[4] = {0.5, 0.5, 0.0, -1e-17};
  CHECK(shannon_entropy(p) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.75) == Approx(oracle::binary_h(0.75)).epsilon(1e-15));
}

TEST_CASE("purity") {
  for (int i = 0; i < 4; ++i) CHECK(purity(bell(i)) == Approx(1.0).epsilon(1e-15));
  CHECK(purity(validate(0.25, 0.25, 0.25, 0.25, 0, 0)) == 0.25);
  CHECK(purity(werner(0.5)) == Approx(0.4375).epsilon(1e-15));
  for (std::uint64_t i = 0; i < 500; ++i) {
    const XState x = random_xstate(43, i, RandomOptions{true});
    const oracle::M4 rho = x.matrix();
    CHECK(std::abs(purity(x) - (rho * rho).trace().real()) < 1e-12);
  }
}

TEST_CASE("marginals") {
  Marginals m = marginals(bell(0));
  CHECK(m.a.matrix.isApprox(Matrix2::Identity() / 2.0));
  CHECK(m.b.matrix.isApprox(Matrix2::Identity() / 2.0));

  m = marginals(validate(1, 0, 0, 0, 0, 0));
  CHECK(m.a.matrix(0, 0) == 1.0);
  CHECK(m.b.matrix(0, 0) == 1.0);

  m = marginals(validate(0.4, 0.3, 0.2, 0.1, 0.2, 0.15));
  CHECK(m.a.matrix(0, 0).real() == Approx(0.7));
  CHECK(m.a.matrix(1, 1).real() == Approx(0.3));
  CHECK(m.b.matrix(0, 0).real() == Approx(0.6));
  CHECK(m.b.matrix(1, 1).real() == Approx(0.4));

  for (std::uint64_t i = 0; i < 300; ++i) {
    const XState x = random_xstate(47, i, RandomOptions{true});
    const Marginals mm = marginals(x);
    CHECK((mm.a.matrix - oracle::trace_b(x.matrix())).norm() < 1e-15);
    CHECK((mm.b.matrix - oracle::trace_a(x.matrix())).norm() < 1e-15);
    CHECK(std::abs(mm.a.bloch_z - to_fano(x).A3) < 1e-15);
    CHECK(std::abs(mm.b.bloch_z - to_fano(x).B3) < 1e-15);
  }
}

TEST_CASE("partial transpose") {
  const XState fixed = validate(0.25, 0.25, 0.25, 0.25, 0.1, 0.1);
  CHECK(partial_transpose(fixed).params == fixed.params());

  PartialTranspose pt = partial_transpose(bell(0));
  std::array<double, 4> s = pt.spectrum;
  std::sort(s.begin(), s.end());
  CHECK(s[0] == Approx(-0.5));
  for (int i = 1; i < 4; ++i) CHECK(s[i] == Approx(0.5));
  CHECK(pt.negative_count() == 1);
  CHECK(pt.min_eigenvalue() == Approx(-0.5));

  const XState diag = validate(0.4, 0.3, 0.2, 0.1, 0, 0);
  pt = partial_transpose(diag);
  CHECK(pt.params == diag.params());
  CHECK(pt.negative_count() == 0);

  for (std::uint64_t i = 0; i < 10000; ++i) {
    const XState x = random_xstate(53, i, RandomOptions{i % 2 == 0});
    const PartialTranspose p = partial_transpose(x);
    CHECK(p.negative_count() <= 1);
    if (i < 1000) {
      CHECK((p.params.matrix() - oracle::transpose_a(x.matrix())).norm() < 1e-15);
      std::array<double, 4> mine = p.spectrum;
      std::sort(mine.begin(), mine.end(), std::greater<>());
      const Eigen::Vector4d dense = oracle::spectrum(p.params.matrix());
      for (int k = 0; k < 4; ++k) CHECK(std::abs(mine[k] - dense(k)) < 1e-12);
      // involution
      XParams twice = p.params;
      std::swap(twice.z, twice.w);
      twice.z = std::conj(twice.z);
      twice.w = std::conj(twice.w);
      CHECK(twice == x.params());
    }
  }
}

TEST_CASE("hermitian_eigen") {
  MatrixX d = MatrixX::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  HermitianEigen e = hermitian_eigen(d);
  CHECK(e.values == std::vector<double>{2.0, 0.5, -1.0});

  e = hermitian_eigen(pauli(1));
  CHECK(e.values[0] == Approx(1.0));
  CHECK(e.values[1] == Approx(-1.0));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int n : {2, 5, 15, 16}) {
    MatrixX m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
    m = (m + m.adjoint()).eval();
    e = hermitian_eigen(m);
    Eigen::VectorXd lambda = Eigen::Map<Eigen::VectorXd>(e.values.data(), n);
    const MatrixX rebuilt = e.vectors * lambda.asDiagonal() * e.vectors.adjoint();
    CHECK((rebuilt - m).norm() < 1e-10);
    CHECK((e.vectors.adjoint() * e.vectors - MatrixX::Identity(n, n)).norm() < 1e-10);
    Eigen::SelfAdjointEigenSolver<MatrixX> ref(m);
    for (int k = 0; k < n; ++k) CHECK(std::abs(e.values[k] - ref.eigenvalues()(n - 1 - k)) < 1e-10);
  }

  MatrixX bad = MatrixX::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigen(bad), Error);
  try {
    hermitian_eigen(bad);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotHermitian);
  }
  CHECK_THROWS_AS(hermitian_eigen(MatrixX::Identity(17, 17)), Error);
}
