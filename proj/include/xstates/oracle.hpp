#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "xstates/core.hpp"
#include "xstates/measures.hpp"

namespace xstates {

// |m0> = cos(theta)|0> + e^{i phi} sin(theta)|1>, |m1> its orthogonal complement.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  std::array<Matrix2, 2> projectors() const;
};

// Average entropy of the unmeasured qubit after a projective measurement of
// `side` in `basis`, in bits. Works on the dense matrix.
double conditional_entropy(const XState& x, const MeasurementBasis& basis, Side side = Side::B);

struct OracleOptions {
  int grid = 64;
  int restarts = 3;
  double tolerance = 1e-12;
  int max_iterations = 500;
};

struct OracleResult {
  double q_min = 0.0;  // discord
  double classical = 0.0;
  double mutual_information = 0.0;
  double min_conditional_entropy = 0.0;
  MeasurementBasis argmin;
  int grid = 0;
  int refinement_iterations = 0;
};

// Exhaustive (theta, phi) grid scan followed by simplex refinement from the
// best cells. theta samples k pi/(2 grid), k = 0..grid, and phi samples
// 2 pi j / grid, so doubling the grid only adds points.
OracleResult discord_oracle(const XState& x, Side side = Side::B, OracleOptions options = {});
double classical_correlation_oracle(const XState& x, Side side = Side::B, OracleOptions options = {});

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Nelder-Mead downhill simplex; stops when the spread of simplex values is
// below `tolerance` or after `max_iterations`.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, double step, double tolerance,
                          int max_iterations);

inline constexpr std::array<double, 5> kCampaignThresholds{1e-3, 1e-4, 1e-5, 1e-6, 1e-7};

struct CampaignStats {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  int grid = 0;
  double max_err = 0.0;
  double mean_err = 0.0;
  std::array<double, 5> frac_gt{};  // matches kCampaignThresholds
  std::uint64_t worst_index = 0;
};

// |approx_discord - discord_oracle| over random_xstate(seed, 0..n-1).
CampaignStats approx_error_campaign(std::uint64_t n, std::uint64_t seed, int grid = 64,
                                    unsigned threads = 0);
CampaignStats approx_error_campaign(std::span<const XState> states, int grid = 64,
                                    unsigned threads = 0);

}  // namespace xstates
