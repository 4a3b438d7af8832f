#pragma once

#include <array>
#include <optional>

#include "xstates/core.hpp"

namespace xstates {

// Subsystem on which a measurement is performed (discord) or whose Bloch
// vector enters the geometric discord.
enum class Side { A, B };

enum class GeometricVariant {
  // (1/4)(|x|^2 + tr T T^T - k_max), k_max the top eigenvalue of x x^T + T T^T.
  General,
  // (1/4) min{C1^2 + C2^2, C1^2 + C3^2 + X3^2} taken literally.
  Paper,
};

double concurrence(const XState& x);
double negativity(const XState& x);

struct FullyEntangledFraction {
  double value = 0.0;     // E = 2F - 1, in [-1, 1]
  double fidelity = 0.0;  // F = (E + 1) / 2, the best Bell-state overlap
};

FullyEntangledFraction fef(const XState& x);

inline constexpr double kSchmidtThreshold = 1e-10;

// Singular values of Gamma_{mu nu} = Tr(rho s_mu (x) s_nu) / 2, descending.
struct SchmidtSpectrum {
  std::array<double, 4> s{};
  double threshold = kSchmidtThreshold;

  // Full Schmidt number 4 allows ancilla-assisted process tomography.
  bool ancilla_tomography_capable() const;
};

// Requires real coherences (C12 = C21 = 0); throws UnnormalizedPhases.
SchmidtSpectrum schmidt_spectrum(const XState& x);
int schmidt_number(const SchmidtSpectrum& s);

double geometric_discord(const XState& x, Side side = Side::A,
                         GeometricVariant variant = GeometricVariant::General);

inline constexpr double kMmmTolerance = 1e-10;

// Discord of a state with maximally mixed marginals; throws NotMMM otherwise.
double mmm_discord(const XState& x);

struct ApproxDiscord {
  double q = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double classical = 0.0;
  double mutual_information = 0.0;
};

// Closed-form approximation to the discord with the measurement on `side`.
ApproxDiscord approx_discord(const XState& x, Side side = Side::B);

double mutual_information(const XState& x);

// Measurement-induced disturbance with sigma_3 eigenbasis projectors.
double mid(const XState& x);

struct MeasureReport {
  double concurrence = 0.0;
  double negativity = 0.0;
  double fef = 0.0;
  double fef_fidelity = 0.0;
  std::array<double, 4> schmidt_values{};
  int schmidt_number = 0;
  double geometric_discord_general = 0.0;
  double geometric_discord_paper = 0.0;
  double approx_discord = 0.0;
  double classical_correlation = 0.0;
  double mutual_information = 0.0;
  double mid = 0.0;
  std::optional<double> mmm_discord;
  double purity = 0.0;
  double entropy = 0.0;
  Side discord_side = Side::B;
  Side geometric_side = Side::A;
};

struct ReportOptions {
  Side discord_side = Side::B;
  Side geometric_side = Side::A;
};

MeasureReport report(const XState& x, ReportOptions options = {});

}  // namespace xstates
