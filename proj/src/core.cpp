#include "xstates/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xstates/random.hpp"
#include "xstates/spectral.hpp"

namespace xstates {

Matrix4 XParams::matrix() const {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  m(1, 2) = z;
  m(2, 1) = std::conj(z);
  m(0, 3) = w;
  m(3, 0) = std::conj(w);
  return m;
}

namespace {

double clamp_population(double value, const char* name) {
  if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " is not finite");
  if (value < -kPopulationTolerance) throw Error(ErrorKind::NegativePopulation, std::string(name) + " < 0", -value);
  return value < 0.0 ? 0.0 : value;
}

Complex clamp_coherence(Complex value, double bound, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " is not finite");
  const double modulus = std::abs(value);
  if (modulus > bound + kCoherenceTolerance)
    throw Error(ErrorKind::CoherenceBoundViolated, what, modulus - bound);
  if (modulus > bound) return bound > 0.0 ? value * (bound / modulus) : Complex{};
  return value;
}

}  // namespace

XState validate(const XParams& raw) {
  const double sum = raw.a + raw.b + raw.c + raw.d;
  if (!(std::abs(sum - 1.0) <= kTraceTolerance))
    throw Error(ErrorKind::TraceError, "a + b + c + d != 1", std::abs(sum - 1.0));

  XParams p;
  p.a = clamp_population(raw.a, "a");
  p.b = clamp_population(raw.b, "b");
  p.c = clamp_population(raw.c, "c");
  p.d = clamp_population(raw.d, "d");
  p.z = clamp_coherence(raw.z, std::sqrt(p.b * p.c), "|z| <= sqrt(bc)");
  p.w = clamp_coherence(raw.w, std::sqrt(p.a * p.d), "|w| <= sqrt(ad)");
  return XState(p);
}

XState validate(double a, double b, double c, double d, Complex z, Complex w) {
  return validate(XParams{a, b, c, d, z, w});
}

XState XState::swapped() const {
  return validate(XParams{p_.a, p_.c, p_.b, p_.d, std::conj(p_.z), p_.w});
}

FanoParams to_fano(const XState& x) {
  FanoParams f;
  f.A3 = (x.a() + x.b()) - (x.c() + x.d());
  f.B3 = (x.a() + x.c()) - (x.b() + x.d());
  f.C1 = 2.0 * (x.z() + x.w()).real();
  f.C2 = 2.0 * (x.z() - x.w()).real();
  f.C3 = (x.a() + x.d()) - (x.b() + x.c());
  f.C12 = 2.0 * (x.z().imag() - x.w().imag());
  f.C21 = -2.0 * (x.z().imag() + x.w().imag());
  return f;
}

XState from_fano(const FanoParams& f) {
  XParams p;
  p.a = (1.0 + f.A3 + f.B3 + f.C3) / 4.0;
  p.b = (1.0 + f.A3 - f.B3 - f.C3) / 4.0;
  p.c = (1.0 - f.A3 + f.B3 - f.C3) / 4.0;
  p.d = (1.0 - f.A3 - f.B3 + f.C3) / 4.0;
  p.z = Complex{(f.C1 + f.C2) / 4.0, (f.C12 - f.C21) / 4.0};
  p.w = Complex{(f.C1 - f.C2) / 4.0, -(f.C12 + f.C21) / 4.0};
  try {
    return validate(p);
  } catch (const Error& e) {
    throw Error(ErrorKind::InfeasibleState, std::string(e.what()), e.magnitude());
  }
}

PhaseNormalized normalize_phases(const XState& x) {
  const double phase_z = std::abs(x.z()) > 0.0 ? std::arg(x.z()) : 0.0;
  const double phase_w = std::abs(x.w()) > 0.0 ? std::arg(x.w()) : 0.0;
  XParams p = x.params();
  p.z = std::abs(x.z());
  p.w = std::abs(x.w());
  return PhaseNormalized{validate(p), phase_z, phase_w, (phase_w + phase_z) / 2.0,
                         (phase_w - phase_z) / 2.0};
}

XState PhaseNormalized::restore() const {
  XParams p = state.params();
  p.z = p.z * std::polar(1.0, phase_z);
  p.w = p.w * std::polar(1.0, phase_w);
  return validate(p);
}

namespace {

void check_hermitian_unit_trace(const Matrix4& m) {
  const double scale = std::max(1.0, m.norm());
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance * scale)
    throw Error(ErrorKind::NotHermitian, "||M - M^dagger||_F", defect);
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance)
    throw Error(ErrorKind::TraceError, "trace != 1", std::abs(tr - 1.0));
}

}  // namespace

DensityMatrix4 DensityMatrix4::checked(const Matrix4& m) {
  check_hermitian_unit_trace(m);
  const double lowest = min_eigenvalue(m);
  if (lowest < -kPositivityTolerance)
    throw Error(ErrorKind::NotPositive, "smallest eigenvalue < 0", -lowest);
  return DensityMatrix4(m);
}

double x_pattern_leakage(const Matrix4& m) {
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3) worst = std::max(worst, std::abs(m(i, j)));
  return worst / norm;
}

XState from_matrix(const Matrix4& m) {
  check_hermitian_unit_trace(m);

  const double norm = m.norm();
  double worst = 0.0;
  int wi = 0;
  int wj = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && std::abs(m(i, j)) > worst) {
        worst = std::abs(m(i, j));
        wi = i;
        wj = j;
      }
  if (worst > kXPatternTolerance * norm)
    throw Error(ErrorKind::NotXShaped,
                "entry (" + std::to_string(wi) + "," + std::to_string(wj) + ")", worst / norm);

  XParams p;
  p.a = m(0, 0).real();
  p.b = m(1, 1).real();
  p.c = m(2, 2).real();
  p.d = m(3, 3).real();
  p.z = 0.5 * (m(1, 2) + std::conj(m(2, 1)));
  p.w = 0.5 * (m(0, 3) + std::conj(m(3, 0)));
  try {
    return validate(p);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NegativePopulation || e.kind() == ErrorKind::CoherenceBoundViolated)
      throw Error(ErrorKind::NotPositive, e.what(), e.magnitude());
    throw;
  }
}

XState from_matrix(const DensityMatrix4& m) { return from_matrix(m.matrix()); }

PureCoefficients PureCoefficients::checked(Complex alpha, Complex beta, Complex gamma, Complex delta) {
  Vector4 v(alpha, beta, gamma, delta);
  const double norm2 = v.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "pure-state amplitudes are not normalized",
                std::abs(norm2 - 1.0));
  return PureCoefficients(v);
}

XState bell(int index) {
  XParams p;
  switch (index) {
    case 0: p = {0.5, 0.0, 0.0, 0.5, 0.0, 0.5}; break;
    case 1: p = {0.0, 0.5, 0.5, 0.0, 0.5, 0.0}; break;
    case 2: p = {0.0, 0.5, 0.5, 0.0, -0.5, 0.0}; break;
    case 3: p = {0.5, 0.0, 0.0, 0.5, 0.0, -0.5}; break;
    default: throw Error(ErrorKind::InvalidArgument, "Bell index must be 0..3");
  }
  return validate(p);
}

XState werner(double epsilon, int bell_index) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "Werner mixing parameter must lie in [0, 1]");
  const XParams b = bell(bell_index).params();
  const double mixed = (1.0 - epsilon) / 4.0;
  return validate(XParams{mixed + epsilon * b.a, mixed + epsilon * b.b, mixed + epsilon * b.c,
                          mixed + epsilon * b.d, epsilon * b.z, epsilon * b.w});
}

XState bell_diagonal(double c1, double c2, double c3) {
  const double spectrum[4] = {(1.0 - c1 - c2 - c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0,
                              (1.0 + c1 - c2 + c3) / 4.0, (1.0 + c1 + c2 - c3) / 4.0};
  for (int k = 0; k < 4; ++k)
    if (spectrum[k] < -1e-12)
      throw Error(ErrorKind::InfeasibleState, "Bell-diagonal eigenvalue " + std::to_string(k) + " < 0",
                  -spectrum[k]);
  return validate(XParams{(1.0 + c3) / 4.0, (1.0 - c3) / 4.0, (1.0 - c3) / 4.0, (1.0 + c3) / 4.0,
                          (c1 + c2) / 4.0, (c1 - c2) / 4.0});
}

XState random_xstate(std::uint64_t seed, std::uint64_t index, RandomOptions options) {
  SampleStream rng(seed, index);
  double e[4];
  double total = 0.0;
  for (double& v : e) {
    v = rng.exponential();
    total += v;
  }
  XParams p{e[0] / total, e[1] / total, e[2] / total, 0.0, 0.0, 0.0};
  p.d = 1.0 - p.a - p.b - p.c;
  if (p.d < 0.0) p.d = 0.0;
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  p.z = u1 * std::sqrt(p.b * p.c);
  p.w = u2 * std::sqrt(p.a * p.d);
  if (options.complex_phases) {
    p.z *= std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    p.w *= std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  }
  return validate(p);
}

PureCoefficients random_pure(std::uint64_t seed, std::uint64_t index) {
  SampleStream rng(seed, index);
  Vector4 v;
  for (int k = 0; k < 4; ++k) v[k] = Complex{rng.normal(), rng.normal()};
  v /= v.norm();
  return PureCoefficients::checked(v[0], v[1], v[2], v[3]);
}

DensityMatrix4 dephase_average(const PureCoefficients& psi, double t_over_T2) {
  if (!(t_over_T2 >= 0.0)) throw Error(ErrorKind::InvalidArgument, "dephasing time must be >= 0");
  // Number of accumulated phases per basis state |00>, |01>, |10>, |11>.
  constexpr int kPhases[4] = {0, 1, 1, 2};
  const Vector4& v = psi.vector();
  Matrix4 rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double n = kPhases[i] - kPhases[j];
      rho(i, j) = v[i] * std::conj(v[j]) * std::exp(-n * n * t_over_T2 / 2.0);
    }
  return DensityMatrix4::checked(rho);
}

XState x_limit(const PureCoefficients& psi) {
  XParams p;
  p.a = std::norm(psi.alpha());
  p.b = std::norm(psi.beta());
  p.c = std::norm(psi.gamma());
  p.d = std::norm(psi.delta());
  p.z = psi.beta() * std::conj(psi.gamma());
  return validate(p);
}

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double SampleStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SampleStream::exponential() { return -std::log1p(-uniform()); }

double SampleStream::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace xstates
