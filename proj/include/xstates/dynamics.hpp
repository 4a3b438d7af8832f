#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "xstates/core.hpp"
#include "xstates/measures.hpp"

namespace xstates {

// Z2 grading of the two-qubit operator space by support pattern: X-supported
// operators (diagonal + anti-diagonal) form an algebra, their complement is
// the odd part.
enum class Grade { XGrade, OffXGrade, Mixed, Zero };

std::string_view to_string(Grade g);

inline constexpr double kGradeTolerance = 1e-12;

struct GradedOperator {
  Matrix4 matrix;
  Matrix4 x_part;
  Matrix4 off_part;
  Grade grade = Grade::Zero;
  // Coefficients over s_mu (x) s_nu, index 4 * mu + nu.
  std::array<Complex, 16> pauli{};

  bool homogeneous() const { return grade != Grade::Mixed; }
};

GradedOperator grade(const Matrix4& m);

// True for the 8 positions (i, j) of the X pattern.
bool in_x_pattern(int row, int col);

struct PauliComponent {
  std::string label;
  Complex coefficient;
};

struct Verdict {
  bool preserving = true;
  // Per operator, in input order.
  std::vector<Grade> grades;
  // Human-readable reasons for a NotPreserving verdict.
  std::vector<std::string> offending;
  // Off-pattern Pauli components of a non-preserving Hamiltonian.
  std::vector<PauliComponent> components;
};

Verdict check_hamiltonian(const Matrix4& h);

// Generator  d rho/dt = -i[H, rho] + sum_nm h_nm (2 L_n rho L_m^+ - {L_m^+ L_n, rho}).
// Operators must be traceless and mutually Hilbert-Schmidt orthogonal; their
// norms are not required to be one (the scale is carried by h).
struct LindbladSpec {
  Matrix4 hamiltonian = Matrix4::Zero();
  std::vector<Matrix4> operators;
  MatrixX coupling;  // k x k Hermitian PSD
};

void validate_spec(const LindbladSpec& spec);
Verdict check_lindblad(const LindbladSpec& spec);

inline constexpr double kCompletenessTolerance = 1e-10;

struct KrausSet {
  std::vector<Matrix4> operators;
};

// Throws CompletenessViolated when ||sum X^+ X - I||_F > 1e-10.
Verdict check_kraus(const KrausSet& channel);

Matrix4 apply_channel(const KrausSet& channel, const Matrix4& rho);
DensityMatrix4 apply_channel(const KrausSet& channel, const DensityMatrix4& rho);

// Right-hand side of the master equation.
Matrix4 lindblad_rhs(const LindbladSpec& spec, const Matrix4& rho);

// One classic fourth-order Runge-Kutta step.
Matrix4 rk4_step(const LindbladSpec& spec, const Matrix4& rho, double dt);

// Fixed-step integration without any checks; used for negative controls and
// by evolve().
Matrix4 integrate(const LindbladSpec& spec, Matrix4 rho, double dt, long steps);

enum class MeasureId {
  Concurrence,
  Negativity,
  Fef,
  Purity,
  Entropy,
  ApproxDiscord,
  ClassicalCorrelation,
  MutualInformation,
  Mid,
  GeometricDiscord,
};

std::string_view to_string(MeasureId id);
MeasureId measure_from_string(std::string_view name);
double evaluate_measure(MeasureId id, const XState& x);

inline constexpr double kLeakageTolerance = 1e-10;

struct EvolveOptions {
  double dt = 1e-3;
  double t_max = 1.0;
  long sample_every = 1;
  std::vector<MeasureId> measures{MeasureId::Concurrence};
};

struct Trajectory {
  std::vector<double> times;
  std::vector<XState> states;
  std::vector<MeasureId> measure_ids;
  // measures[k][j] is measure_ids[j] at sample k.
  std::vector<std::vector<double>> measures;
  double max_leakage = 0.0;
  // Generator and step size, kept so that events can be refined by
  // re-integration between samples.
  LindbladSpec spec;
  double dt = 0.0;
};

// Requires check_lindblad(spec).preserving (NotPreserving otherwise). Samples
// are re-projected onto XState; leakage above 1e-10 or a negative eigenvalue
// below -1e-10 raises StepRejected.
Trajectory evolve(const LindbladSpec& spec, const XState& initial, const EvolveOptions& options);

inline constexpr double kEsdThreshold = 1e-12;

// First time concurrence vanishes and stays vanished for the next three
// samples, refined by bisection on max{|z| - sqrt(ad), |w| - sqrt(bc)}.
std::optional<double> esd_time(const Trajectory& trajectory);

// Projects a numerically X-shaped matrix onto XState, clamping rounding-level
// positivity violations. Throws StepRejected beyond tolerance.
XState project_to_xstate(const Matrix4& rho, double leakage_tolerance = kLeakageTolerance);

// Helpers for common generators.
Matrix2 sigma_minus();
KrausSet amplitude_damping_channel(double gamma_a, double gamma_b);

}  // namespace xstates
