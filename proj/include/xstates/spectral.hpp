#pragma once

#include <array>
#include <span>
#include <vector>

#include "xstates/core.hpp"

namespace xstates {

enum class Block { AD, BC };

// Closed-form eigensystem of an X state. Eigenvalues are sorted descending;
// each eigenvector lives either on {|00>,|11>} (AD) or on {|01>,|10>} (BC).
struct SpectralDecomposition {
  std::array<double, 4> lambda{};
  std::array<Vector4, 4> vectors{};
  std::array<Block, 4> blocks{};
  double u_plus = 0.0;
  double u_minus = 0.0;
  double r_plus = 0.0;
  double r_minus = 0.0;

  Matrix4 reconstruct() const;
};

SpectralDecomposition eigendecompose(const XState& x);

// Shannon entropy in bits with 0 log 0 := 0; non-positive entries contribute 0.
double shannon_entropy(std::span<const double> p);
double binary_entropy(double p);

double entropy(const SpectralDecomposition& s);
double entropy(const XState& x);

double purity(const XState& x);

struct QubitState {
  Matrix2 matrix;
  double bloch_z = 0.0;
};

struct Marginals {
  QubitState a;
  QubitState b;
};

Marginals marginals(const XState& x);

// Transpose on qubit A. For an X state this exchanges z and w (with complex
// conjugation); the result need not be positive.
struct PartialTranspose {
  XParams params;
  // Eigenvalues of the AD block followed by the BC block (+, - each).
  std::array<double, 4> spectrum{};

  int negative_count(double tolerance = 0.0) const;
  double min_eigenvalue() const;
};

PartialTranspose partial_transpose(const XState& x);

// Cyclic complex Jacobi iteration for Hermitian matrices up to 16 x 16.
// Eigenvalues descending; eigenvectors are the matching columns.
struct HermitianEigen {
  std::vector<double> values;
  MatrixX vectors;
  int sweeps = 0;
};

HermitianEigen hermitian_eigen(const MatrixX& m);

double min_eigenvalue(const MatrixX& m);

}  // namespace xstates
