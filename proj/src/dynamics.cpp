#include "xstates/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xstates/spectral.hpp"

namespace xstates {

std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::XGrade: return "XGrade";
    case Grade::OffXGrade: return "OffXGrade";
    case Grade::Mixed: return "Mixed";
    case Grade::Zero: return "Zero";
  }
  return "Unknown";
}

bool in_x_pattern(int row, int col) { return row == col || row + col == 3; }

GradedOperator grade(const Matrix4& m) {
  GradedOperator g;
  g.matrix = m;
  g.x_part = Matrix4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (in_x_pattern(i, j)) g.x_part(i, j) = m(i, j);
  g.off_part = m - g.x_part;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) g.pauli[4 * mu + nu] = (pauli_product(mu, nu) * m).trace() / 4.0;

  const double norm = m.norm();
  if (norm < 1e-14)
    g.grade = Grade::Zero;
  else if (g.off_part.norm() <= kGradeTolerance * norm)
    g.grade = Grade::XGrade;
  else if (g.x_part.norm() <= kGradeTolerance * norm)
    g.grade = Grade::OffXGrade;
  else
    g.grade = Grade::Mixed;
  return g;
}

namespace {

void require_hermitian(const Matrix4& h, const char* what) {
  const double defect = hermiticity_defect(h);
  if (defect > 1e-10 * std::max(1.0, h.norm())) throw Error(ErrorKind::NotHermitian, what, defect);
}

bool pauli_is_x_supported(int mu, int nu) {
  const bool diag_mu = mu == 0 || mu == 3;
  const bool diag_nu = nu == 0 || nu == 3;
  return diag_mu == diag_nu;
}

}  // namespace

Verdict check_hamiltonian(const Matrix4& h) {
  require_hermitian(h, "Hamiltonian is not Hermitian");
  const GradedOperator g = grade(h);
  Verdict v;
  v.grades.push_back(g.grade);
  v.preserving = g.grade == Grade::XGrade || g.grade == Grade::Zero;
  if (!v.preserving) {
    const double floor = kGradeTolerance * std::max(1.0, h.norm());
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        if (!pauli_is_x_supported(mu, nu) && std::abs(g.pauli[4 * mu + nu]) > floor)
          v.components.push_back({std::string(pauli_label(mu, nu)), g.pauli[4 * mu + nu]});
    std::ostringstream os;
    os << "Hamiltonian has off-X components:";
    for (const auto& c : v.components) os << ' ' << c.label;
    v.offending.push_back(os.str());
  }
  return v;
}

void validate_spec(const LindbladSpec& spec) {
  require_hermitian(spec.hamiltonian, "Hamiltonian is not Hermitian");
  const auto k = static_cast<Eigen::Index>(spec.operators.size());
  if (k > 15) throw Error(ErrorKind::NonOrthonormalOperators, "at most 15 Lindblad operators");
  if (spec.coupling.rows() != k || spec.coupling.cols() != k)
    throw Error(ErrorKind::InvalidCoupling, "coupling matrix must be k x k for k operators");
  if (k == 0) return;

  const double h_defect = hermiticity_defect(spec.coupling);
  if (h_defect > 1e-10 * std::max(1.0, spec.coupling.norm()))
    throw Error(ErrorKind::InvalidCoupling, "coupling matrix is not Hermitian", h_defect);
  const double lowest = min_eigenvalue(spec.coupling);
  if (lowest < -1e-10) throw Error(ErrorKind::InvalidCoupling, "coupling matrix is not PSD", -lowest);

  for (Eigen::Index i = 0; i < k; ++i) {
    const Matrix4& li = spec.operators[static_cast<std::size_t>(i)];
    const double ni = li.norm();
    if (ni < 1e-14)
      throw Error(ErrorKind::NonOrthonormalOperators, "operator " + std::to_string(i) + " is zero");
    const double identity_part = std::abs(li.trace()) / 2.0;
    if (identity_part > 1e-10 * ni)
      throw Error(ErrorKind::NonOrthonormalOperators,
                  "operator " + std::to_string(i) + " has an identity component", identity_part / ni);
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const Matrix4& lj = spec.operators[static_cast<std::size_t>(j)];
      const double overlap = std::abs(hs_inner(li, lj)) / (ni * lj.norm());
      if (overlap > 1e-10)
        throw Error(ErrorKind::NonOrthonormalOperators,
                    "operators " + std::to_string(i) + " and " + std::to_string(j) + " overlap", overlap);
    }
  }
}

Verdict check_lindblad(const LindbladSpec& spec) {
  validate_spec(spec);
  Verdict v = check_hamiltonian(spec.hamiltonian);
  v.grades.clear();

  const std::size_t k = spec.operators.size();
  for (const Matrix4& l : spec.operators) v.grades.push_back(grade(l).grade);
  constexpr double kCouplingFloor = 1e-12;
  for (std::size_t i = 0; i < k; ++i) {
    bool coupled = false;
    for (std::size_t j = 0; j < k; ++j)
      coupled = coupled || std::abs(spec.coupling(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) > kCouplingFloor;
    if (coupled && v.grades[i] == Grade::Mixed) {
      v.preserving = false;
      v.offending.push_back("operator " + std::to_string(i) + " mixes X and off-X parts");
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const Complex h = spec.coupling(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const Grade gi = v.grades[i];
      const Grade gj = v.grades[j];
      if (std::abs(h) > kCouplingFloor && gi != Grade::Mixed && gj != Grade::Mixed && gi != gj) {
        v.preserving = false;
        v.offending.push_back("coupling h(" + std::to_string(i) + "," + std::to_string(j) +
                              ") links " + std::string(to_string(gi)) + " and " +
                              std::string(to_string(gj)) + " operators");
      }
    }
  return v;
}

Verdict check_kraus(const KrausSet& channel) {
  Matrix4 sum = Matrix4::Zero();
  for (const Matrix4& x : channel.operators) sum += x.adjoint() * x;
  const double defect = (sum - Matrix4::Identity()).norm();
  if (!(defect <= kCompletenessTolerance))
    throw Error(ErrorKind::CompletenessViolated, "||sum X^dagger X - I||_F", defect);

  Verdict v;
  for (std::size_t i = 0; i < channel.operators.size(); ++i) {
    const Grade g = grade(channel.operators[i]).grade;
    v.grades.push_back(g);
    if (g == Grade::Mixed) {
      v.preserving = false;
      v.offending.push_back("Kraus operator " + std::to_string(i) + " mixes X and off-X parts");
    }
  }
  return v;
}

Matrix4 apply_channel(const KrausSet& channel, const Matrix4& rho) {
  Matrix4 out = Matrix4::Zero();
  for (const Matrix4& x : channel.operators) out += x * rho * x.adjoint();
  return out;
}

DensityMatrix4 apply_channel(const KrausSet& channel, const DensityMatrix4& rho) {
  return DensityMatrix4::checked(apply_channel(channel, rho.matrix()));
}

Matrix4 lindblad_rhs(const LindbladSpec& spec, const Matrix4& rho) {
  Matrix4 out = -kI * (spec.hamiltonian * rho - rho * spec.hamiltonian);
  const std::size_t k = spec.operators.size();
  for (std::size_t n = 0; n < k; ++n)
    for (std::size_t m = 0; m < k; ++m) {
      const Complex h = spec.coupling(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
      if (h == 0.0) continue;
      const Matrix4& ln = spec.operators[n];
      const Matrix4 lm_dag = spec.operators[m].adjoint();
      const Matrix4 product = lm_dag * ln;
      out += h * (2.0 * ln * rho * lm_dag - rho * product - product * rho);
    }
  return out;
}

Matrix4 rk4_step(const LindbladSpec& spec, const Matrix4& rho, double dt) {
  const Matrix4 k1 = lindblad_rhs(spec, rho);
  const Matrix4 k2 = lindblad_rhs(spec, rho + 0.5 * dt * k1);
  const Matrix4 k3 = lindblad_rhs(spec, rho + 0.5 * dt * k2);
  const Matrix4 k4 = lindblad_rhs(spec, rho + dt * k3);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Matrix4 integrate(const LindbladSpec& spec, Matrix4 rho, double dt, long steps) {
  for (long s = 0; s < steps; ++s) rho = rk4_step(spec, rho, dt);
  return rho;
}

std::string_view to_string(MeasureId id) {
  switch (id) {
    case MeasureId::Concurrence: return "concurrence";
    case MeasureId::Negativity: return "negativity";
    case MeasureId::Fef: return "fef";
    case MeasureId::Purity: return "purity";
    case MeasureId::Entropy: return "entropy";
    case MeasureId::ApproxDiscord: return "approx_discord";
    case MeasureId::ClassicalCorrelation: return "classical_correlation";
    case MeasureId::MutualInformation: return "mutual_information";
    case MeasureId::Mid: return "mid";
    case MeasureId::GeometricDiscord: return "geometric_discord";
  }
  return "unknown";
}

MeasureId measure_from_string(std::string_view name) {
  for (MeasureId id : {MeasureId::Concurrence, MeasureId::Negativity, MeasureId::Fef,
                       MeasureId::Purity, MeasureId::Entropy, MeasureId::ApproxDiscord,
                       MeasureId::ClassicalCorrelation, MeasureId::MutualInformation,
                       MeasureId::Mid, MeasureId::GeometricDiscord})
    if (to_string(id) == name) return id;
  throw Error(ErrorKind::ParseError, "unknown measure '" + std::string(name) + "'");
}

double evaluate_measure(MeasureId id, const XState& x) {
  switch (id) {
    case MeasureId::Concurrence: return concurrence(x);
    case MeasureId::Negativity: return negativity(x);
    case MeasureId::Fef: return fef(x).value;
    case MeasureId::Purity: return purity(x);
    case MeasureId::Entropy: return entropy(x);
    case MeasureId::ApproxDiscord: return approx_discord(x).q;
    case MeasureId::ClassicalCorrelation: return approx_discord(x).classical;
    case MeasureId::MutualInformation: return mutual_information(x);
    case MeasureId::Mid: return mid(x);
    case MeasureId::GeometricDiscord: return geometric_discord(x);
  }
  return 0.0;
}

XState project_to_xstate(const Matrix4& rho, double leakage_tolerance) {
  const double leakage = x_pattern_leakage(rho);
  if (leakage > leakage_tolerance) throw Error(ErrorKind::StepRejected, "off-X leakage", leakage);
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) throw Error(ErrorKind::StepRejected, "trace drift", std::abs(trace - 1.0));

  XParams p;
  p.a = rho(0, 0).real() / trace;
  p.b = rho(1, 1).real() / trace;
  p.c = rho(2, 2).real() / trace;
  p.d = rho(3, 3).real() / trace;
  p.z = 0.5 * (rho(1, 2) + std::conj(rho(2, 1))) / trace;
  p.w = 0.5 * (rho(0, 3) + std::conj(rho(3, 0))) / trace;

  // Smallest eigenvalue of each 2x2 block.
  auto lowest = [](double x, double y, Complex coherence) {
    return (x + y) / 2.0 - std::hypot((x - y) / 2.0, std::abs(coherence));
  };
  const double worst = std::min(lowest(p.a, p.d, p.w), lowest(p.b, p.c, p.z));
  if (worst < -kPositivityTolerance) throw Error(ErrorKind::StepRejected, "negative eigenvalue", -worst);

  p.a = std::max(p.a, 0.0);
  p.b = std::max(p.b, 0.0);
  p.c = std::max(p.c, 0.0);
  p.d = std::max(p.d, 0.0);
  const double sum = p.a + p.b + p.c + p.d;
  p.a /= sum;
  p.b /= sum;
  p.c /= sum;
  p.d /= sum;
  p.z /= sum;
  p.w /= sum;
  const double bound_z = std::sqrt(p.b * p.c);
  const double bound_w = std::sqrt(p.a * p.d);
  if (std::abs(p.z) > bound_z) p.z = bound_z > 0.0 ? p.z * (bound_z / std::abs(p.z)) : Complex{};
  if (std::abs(p.w) > bound_w) p.w = bound_w > 0.0 ? p.w * (bound_w / std::abs(p.w)) : Complex{};
  return validate(p);
}

Trajectory evolve(const LindbladSpec& spec, const XState& initial, const EvolveOptions& options) {
  if (!(options.dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  if (!(options.t_max >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t_max must be >= 0");
  if (options.sample_every < 1) throw Error(ErrorKind::InvalidArgument, "sample stride must be >= 1");
  const Verdict verdict = check_lindblad(spec);
  if (!verdict.preserving) {
    std::string detail;
    for (const auto& o : verdict.offending) detail += (detail.empty() ? "" : "; ") + o;
    throw Error(ErrorKind::NotPreserving, detail);
  }

  Trajectory traj;
  traj.spec = spec;
  traj.dt = options.dt;
  traj.measure_ids = options.measures;

  auto record = [&](double t, const XState& x, double leakage) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    std::vector<double> values;
    values.reserve(options.measures.size());
    for (MeasureId id : options.measures) values.push_back(evaluate_measure(id, x));
    traj.measures.push_back(std::move(values));
    traj.max_leakage = std::max(traj.max_leakage, leakage);
  };

  const long steps = std::lround(options.t_max / options.dt);
  Matrix4 rho = initial.matrix();
  record(0.0, initial, 0.0);
  for (long s = 1; s <= steps; ++s) {
    rho = rk4_step(spec, rho, options.dt);
    if (s % options.sample_every == 0 || s == steps) {
      const double leakage = x_pattern_leakage(rho);
      const XState x = project_to_xstate(rho);
      rho = x.matrix();
      record(static_cast<double>(s) * options.dt, x, leakage);
    }
  }
  return traj;
}

namespace {

double entanglement_witness(const XState& x) {
  return std::max(std::abs(x.z()) - std::sqrt(x.a() * x.d()), std::abs(x.w()) - std::sqrt(x.b() * x.c()));
}

}  // namespace

std::optional<double> esd_time(const Trajectory& traj) {
  const std::size_t n = traj.states.size();
  if (n == 0) return std::nullopt;
  auto dead = [](const XState& x) { return concurrence(x) <= kEsdThreshold; };
  if (dead(traj.states.front())) return 0.0;

  for (std::size_t k = 1; k < n; ++k) {
    if (!dead(traj.states[k])) continue;
    bool stays = true;
    for (std::size_t j = k + 1; j < std::min(n, k + 4); ++j) stays = stays && dead(traj.states[j]);
    if (!stays) continue;

    const double t0 = traj.times[k - 1];
    const Matrix4 rho0 = traj.states[k - 1].matrix();
    auto witness_at = [&](double t) {
      const double span = t - t0;
      if (span <= 0.0) return entanglement_witness(traj.states[k - 1]);
      const long steps = std::max(1L, static_cast<long>(std::ceil(span / traj.dt)));
      const Matrix4 rho = integrate(traj.spec, rho0, span / static_cast<double>(steps), steps);
      return entanglement_witness(project_to_xstate(rho));
    };
    double lo = t0;
    double hi = traj.times[k];
    for (int iter = 0; iter < 80 && hi - lo > 1e-14; ++iter) {
      const double mid_t = 0.5 * (lo + hi);
      if (2.0 * witness_at(mid_t) <= kEsdThreshold)
        hi = mid_t;
      else
        lo = mid_t;
    }
    return 0.5 * (lo + hi);
  }
  return std::nullopt;
}

Matrix2 sigma_minus() {
  Matrix2 m = Matrix2::Zero();
  m(0, 1) = 1.0;
  return m;
}

KrausSet amplitude_damping_channel(double gamma_a, double gamma_b) {
  auto single = [](double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
      throw Error(ErrorKind::InvalidArgument, "damping probability must lie in [0, 1]");
    Matrix2 k0 = Matrix2::Zero();
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    const Matrix2 k1 = std::sqrt(gamma) * sigma_minus();
    return std::array<Matrix2, 2>{k0, k1};
  };
  const auto ka = single(gamma_a);
  const auto kb = single(gamma_b);
  KrausSet set;
  for (const Matrix2& x : ka)
    for (const Matrix2& y : kb) {
      const Matrix4 k = kron(x, y);
      if (k.norm() > 0.0) set.operators.push_back(k);
    }
  return set;
}

}  // namespace xstates
