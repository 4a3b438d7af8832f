#pragma once

#include <cstdint>

#include "xstates/error.hpp"
#include "xstates/linalg.hpp"

namespace xstates {

// Validity tolerances shared by every constructor.
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPopulationTolerance = 1e-14;
inline constexpr double kCoherenceTolerance = 1e-12;
inline constexpr double kXPatternTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

// Raw coefficients of
//
//   | a  0  0  w |
//   | 0  b  z  0 |
//   | 0  z* c  0 |
//   | w* 0  0  d |
//
// in the basis |00>, |01>, |10>, |11>. No invariants: partial transposes and
// intermediate integrator values live here.
struct XParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  Complex z{};
  Complex w{};

  Matrix4 matrix() const;
  bool operator==(const XParams&) const = default;
};

// A positive semidefinite, unit-trace X-shaped density matrix. Only obtainable
// through validate() (or helpers that call it), so every instance satisfies
// the constraints.
class XState {
 public:
  double a() const noexcept { return p_.a; }
  double b() const noexcept { return p_.b; }
  double c() const noexcept { return p_.c; }
  double d() const noexcept { return p_.d; }
  Complex z() const noexcept { return p_.z; }
  Complex w() const noexcept { return p_.w; }
  const XParams& params() const noexcept { return p_; }

  Matrix4 matrix() const { return p_.matrix(); }

  // Exchange of the two qubits: b <-> c, z -> z*.
  XState swapped() const;

  bool operator==(const XState&) const = default;

 private:
  explicit XState(const XParams& p) : p_(p) {}
  friend XState validate(const XParams& raw);

  XParams p_;
};

// Checks the trace, population and coherence constraints. Values within
// tolerance of the feasible boundary are clamped onto it.
XState validate(const XParams& raw);
XState validate(double a, double b, double c, double d, Complex z, Complex w);

// Correlation-tensor coordinates of
//   rho = 1/4 { I + A3 s3 (x) I + B3 I (x) s3 + sum_i Ci si (x) si
//               + C12 s1 (x) s2 + C21 s2 (x) s1 }.
struct FanoParams {
  double A3 = 0.0;
  double B3 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double C12 = 0.0;
  double C21 = 0.0;

  bool operator==(const FanoParams&) const = default;
};

FanoParams to_fano(const XState& x);
XState from_fano(const FanoParams& f);

// Result of absorbing the coherence phases into local diagonal unitaries
// U_A = diag(1, e^{i local_phase_a}), U_B = diag(1, e^{i local_phase_b}):
// state = (U_A (x) U_B) original (U_A (x) U_B)^dagger, with z, w real >= 0.
struct PhaseNormalized {
  XState state;
  double phase_z = 0.0;
  double phase_w = 0.0;
  double local_phase_a = 0.0;
  double local_phase_b = 0.0;

  XState restore() const;
};

PhaseNormalized normalize_phases(const XState& x);

// Hermitian 4x4, unit trace, smallest eigenvalue >= -1e-10.
class DensityMatrix4 {
 public:
  static DensityMatrix4 checked(const Matrix4& m);

  const Matrix4& matrix() const noexcept { return m_; }

 private:
  explicit DensityMatrix4(const Matrix4& m) : m_(m) {}

  Matrix4 m_;
};

XState from_matrix(const Matrix4& m);
XState from_matrix(const DensityMatrix4& m);

// Worst entry of m outside the X pattern, relative to ||m||_F.
double x_pattern_leakage(const Matrix4& m);

// alpha|00> + beta|01> + gamma|10> + delta|11>
class PureCoefficients {
 public:
  static PureCoefficients checked(Complex alpha, Complex beta, Complex gamma, Complex delta);

  Complex alpha() const noexcept { return v_[0]; }
  Complex beta() const noexcept { return v_[1]; }
  Complex gamma() const noexcept { return v_[2]; }
  Complex delta() const noexcept { return v_[3]; }
  const Vector4& vector() const noexcept { return v_; }

 private:
  explicit PureCoefficients(const Vector4& v) : v_(v) {}
  Vector4 v_;
};

XState bell(int index);
XState werner(double epsilon, int bell_index = 0);
XState bell_diagonal(double c1, double c2, double c3);

struct RandomOptions {
  bool complex_phases = false;
};

// Deterministic in (seed, index). Populations are uniform on the simplex and
// coherences are uniform fractions of their bounds.
XState random_xstate(std::uint64_t seed, std::uint64_t index, RandomOptions options = {});

// Haar-distributed pure two-qubit state, deterministic in (seed, index).
PureCoefficients random_pure(std::uint64_t seed, std::uint64_t index);

// Ensemble average of |psi(t)><psi(t)| when |01>,|10> pick up a Gaussian
// random phase phi and |11> picks up 2 phi, with <phi^2> = t/T2.
DensityMatrix4 dephase_average(const PureCoefficients& psi, double t_over_T2);

// t -> infinity limit of dephase_average.
XState x_limit(const PureCoefficients& psi);

}  // namespace xstates
