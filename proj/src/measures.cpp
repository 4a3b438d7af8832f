#include "xstates/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "xstates/spectral.hpp"

namespace xstates {

double concurrence(const XState& x) {
  const double via_z = std::abs(x.z()) - std::sqrt(x.a() * x.d());
  const double via_w = std::abs(x.w()) - std::sqrt(x.b() * x.c());
  return 2.0 * std::max({0.0, via_z, via_w});
}

double negativity(const XState& x) {
  return -std::min(0.0, partial_transpose(x).min_eigenvalue());
}

FullyEntangledFraction fef(const XState& x) {
  FullyEntangledFraction out;
  out.value = std::max(x.a() + x.d() + 2.0 * std::abs(x.w()) - 1.0,
                       x.b() + x.c() + 2.0 * std::abs(x.z()) - 1.0);
  out.fidelity = (out.value + 1.0) / 2.0;
  return out;
}

bool SchmidtSpectrum::ancilla_tomography_capable() const { return schmidt_number(*this) == 4; }

SchmidtSpectrum schmidt_spectrum(const XState& x) {
  const FanoParams f = to_fano(x);
  if (std::abs(f.C12) > 1e-12 || std::abs(f.C21) > 1e-12)
    throw Error(ErrorKind::UnnormalizedPhases, "complex coherences; call normalize_phases first",
                std::max(std::abs(f.C12), std::abs(f.C21)));

  // The {I, s3} x {I, s3} block of Gamma is (1/2)[[1, B3], [A3, C3]].
  const double trace = 1.0 + f.A3 * f.A3 + f.B3 * f.B3 + f.C3 * f.C3;
  const double cross = f.C3 - f.A3 * f.B3;
  const double disc = std::sqrt(std::max(0.0, trace * trace - 4.0 * cross * cross));
  const double s3 = std::sqrt(trace + disc) / (2.0 * std::sqrt(2.0));
  // s3 s4 = |det| of the block.
  const double s4 = s3 > 0.0 ? std::abs(cross) / (4.0 * s3) : 0.0;

  SchmidtSpectrum out;
  out.s = {std::abs(f.C1) / 2.0, std::abs(f.C2) / 2.0, s3, s4};
  std::sort(out.s.begin(), out.s.end(), std::greater<>());
  return out;
}

int schmidt_number(const SchmidtSpectrum& s) {
  return static_cast<int>(
      std::count_if(s.s.begin(), s.s.end(), [&](double v) { return v > s.threshold; }));
}

double geometric_discord(const XState& x, Side side, GeometricVariant variant) {
  if (variant == GeometricVariant::Paper) {
    const FanoParams f = to_fano(normalize_phases(x).state);
    const double x3 = side == Side::A ? f.A3 : f.B3;
    return 0.25 * std::min(f.C1 * f.C1 + f.C2 * f.C2, f.C1 * f.C1 + f.C3 * f.C3 + x3 * x3);
  }

  const FanoParams f = to_fano(x);
  Eigen::Matrix3d t;
  t << f.C1, f.C12, 0.0,
       f.C21, f.C2, 0.0,
       0.0, 0.0, f.C3;
  if (side == Side::B) t.transposeInPlace();
  const Eigen::Vector3d bloch(0.0, 0.0, side == Side::A ? f.A3 : f.B3);
  const Eigen::Matrix3d k = bloch * bloch.transpose() + t * t.transpose();
  const double k_max = hermitian_eigen(k.cast<Complex>()).values.front();
  return std::max(0.0, 0.25 * (bloch.squaredNorm() + t.squaredNorm() - k_max));
}

double mmm_discord(const XState& x) {
  const FanoParams f = to_fano(normalize_phases(x).state);
  const double worst = std::max(std::abs(f.A3), std::abs(f.B3));
  if (worst >= kMmmTolerance) throw Error(ErrorKind::NotMMM, "marginals are not maximally mixed", worst);
  const double c = std::max({std::abs(f.C1), std::abs(f.C2), std::abs(f.C3)});
  return 1.0 + binary_entropy((1.0 + c) / 2.0) - entropy(x);
}

namespace {

// -x log2(x / y) with 0 log 0 := 0.
double relative_term(double x, double y) { return x > 0.0 ? -x * std::log2(x / y) : 0.0; }

}  // namespace

ApproxDiscord approx_discord(const XState& state, Side side) {
  const XState x = side == Side::B ? state : state.swapped();
  const double a = x.a();
  const double b = x.b();
  const double c = x.c();
  const double d = x.d();
  const double coherence = std::abs(x.z()) + std::abs(x.w());

  ApproxDiscord out;
  const double diff = a - d + b - c;
  const double root = std::min(1.0, std::sqrt(diff * diff + 4.0 * coherence * coherence));
  out.n1 = binary_entropy(0.5 + 0.5 * root);
  out.n2 = relative_term(a, a + c) + relative_term(b, b + d) + relative_term(c, a + c) +
           relative_term(d, b + d);

  const double s_measured = binary_entropy(a + c);
  const double s_other = binary_entropy(a + b);
  const double s_joint = entropy(x);
  const double best = std::min(out.n1, out.n2);
  out.mutual_information = s_measured + s_other - s_joint;
  out.q = s_measured - s_joint + best;
  out.classical = out.mutual_information - out.q;
  return out;
}

double mutual_information(const XState& x) {
  return binary_entropy(x.a() + x.b()) + binary_entropy(x.a() + x.c()) - entropy(x);
}

double mid(const XState& x) {
  const double diagonal[4] = {x.a(), x.b(), x.c(), x.d()};
  return shannon_entropy(diagonal) - entropy(x);
}

MeasureReport report(const XState& x, ReportOptions options) {
  const XState normalized = normalize_phases(x).state;
  MeasureReport r;
  r.concurrence = concurrence(x);
  r.negativity = negativity(x);
  const FullyEntangledFraction e = fef(x);
  r.fef = e.value;
  r.fef_fidelity = e.fidelity;
  const SchmidtSpectrum s = schmidt_spectrum(normalized);
  r.schmidt_values = s.s;
  r.schmidt_number = schmidt_number(s);
  r.geometric_discord_general = geometric_discord(x, options.geometric_side, GeometricVariant::General);
  r.geometric_discord_paper = geometric_discord(x, options.geometric_side, GeometricVariant::Paper);
  const ApproxDiscord q = approx_discord(x, options.discord_side);
  r.approx_discord = q.q;
  r.classical_correlation = q.classical;
  r.mutual_information = q.mutual_information;
  r.mid = mid(x);
  const FanoParams f = to_fano(normalized);
  if (std::abs(f.A3) < kMmmTolerance && std::abs(f.B3) < kMmmTolerance) r.mmm_discord = mmm_discord(x);
  r.purity = purity(x);
  r.entropy = entropy(x);
  r.discord_side = options.discord_side;
  r.geometric_side = options.geometric_side;
  return r;
}

}  // namespace xstates
