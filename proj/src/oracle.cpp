#include "xstates/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "xstates/random.hpp"
#include "xstates/spectral.hpp"

namespace xstates {

namespace {

// Entropy of a 2x2 Hermitian matrix with unit trace, from its Bloch length.
double qubit_entropy(const Matrix2& m) {
  const double diff = (m(0, 0) - m(1, 1)).real();
  const double r = std::min(1.0, std::sqrt(diff * diff + 4.0 * std::norm(m(0, 1))));
  return binary_entropy((1.0 + r) / 2.0);
}

Eigen::Vector2cd basis_vector(const MeasurementBasis& basis, int outcome) {
  const double c = std::cos(basis.theta);
  const double s = std::sin(basis.theta);
  if (outcome == 0) return {c, std::polar(s, basis.phi)};
  return {-std::polar(s, -basis.phi), c};
}

// <m|_side rho |m>_side as an operator on the other qubit.
Matrix2 conditioned(const Matrix4& rho, const Eigen::Vector2cd& m, Side side) {
  Matrix2 out = Matrix2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const Complex entry = side == Side::B ? rho(2 * i + k, 2 * j + l) : rho(2 * k + i, 2 * l + j);
          out(i, j) += std::conj(m[k]) * entry * m[l];
        }
  return out;
}

Matrix2 reduced(const Matrix4& rho, Side keep) {
  Matrix2 out = Matrix2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        out(i, j) += keep == Side::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
  return out;
}

double conditional_entropy_dense(const Matrix4& rho, const MeasurementBasis& basis, Side side) {
  double total = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const Matrix2 m = conditioned(rho, basis_vector(basis, outcome), side);
    const double p = m.trace().real();
    if (p < 1e-14) continue;
    total += p * qubit_entropy(m / p);
  }
  return total;
}

MeasurementBasis fold(double theta, double phi) {
  theta = std::fmod(theta, std::numbers::pi);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta > std::numbers::pi / 2.0) {
    theta = std::numbers::pi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, 2.0 * std::numbers::pi);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return {theta, phi};
}

}  // namespace

std::array<Matrix2, 2> MeasurementBasis::projectors() const {
  const Eigen::Vector2cd m0 = basis_vector(*this, 0);
  const Eigen::Vector2cd m1 = basis_vector(*this, 1);
  return {Matrix2(m0 * m0.adjoint()), Matrix2(m1 * m1.adjoint())};
}

double conditional_entropy(const XState& x, const MeasurementBasis& basis, Side side) {
  return conditional_entropy_dense(x.matrix(), basis, side);
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, double step, double tolerance,
                          int max_iterations) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  auto point_at = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double t) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (worst[i] - centroid[i]);
    return p;
  };

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return vals[l] < vals[r]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (vals[worst] - vals[best] <= tolerance) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k)
      if (k != worst)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i] / static_cast<double>(n);

    const std::vector<double> reflected = point_at(centroid, pts[worst], -1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < vals[best]) {
      const std::vector<double> expanded = point_at(centroid, pts[worst], -2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        pts[worst] = expanded;
        vals[worst] = f_expanded;
      } else {
        pts[worst] = reflected;
        vals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < vals[worst];
    const std::vector<double> contracted = point_at(centroid, pts[worst], outside ? -0.5 : 0.5);
    const double f_contracted = f(contracted);
    if (f_contracted < std::min(f_reflected, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = f_contracted;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i) pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
      vals[k] = f(pts[k]);
    }
  }

  const std::size_t best =
      static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], iter};
}

OracleResult discord_oracle(const XState& x, Side side, OracleOptions options) {
  if (options.grid < 1) throw Error(ErrorKind::InvalidArgument, "oracle grid must be >= 1");
  const Matrix4 rho = x.matrix();
  const Side other = side == Side::B ? Side::A : Side::B;

  const double s_joint = shannon_entropy(hermitian_eigen(rho).values);
  const double s_measured = qubit_entropy(reduced(rho, side));
  const double s_other = qubit_entropy(reduced(rho, other));

  auto cost = [&](double theta, double phi) {
    return conditional_entropy_dense(rho, MeasurementBasis{theta, phi}, side);
  };

  struct Cell {
    double value;
    double theta;
    double phi;
  };
  const int g = options.grid;
  const double d_theta = std::numbers::pi / (2.0 * g);
  const double d_phi = 2.0 * std::numbers::pi / g;
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>((g + 1) * g));
  for (int i = 0; i <= g; ++i)
    for (int j = 0; j < g; ++j) {
      const double theta = i * d_theta;
      const double phi = j * d_phi;
      cells.push_back({cost(theta, phi), theta, phi});
    }
  const std::size_t keep = std::min<std::size_t>(std::max(options.restarts, 1), cells.size());
  std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(keep), cells.end(),
                    [](const Cell& l, const Cell& r) { return l.value < r.value; });

  OracleResult out;
  out.grid = g;
  double best = cells.front().value;
  double best_theta = cells.front().theta;
  double best_phi = cells.front().phi;
  auto objective = [&](std::span<const double> p) { return cost(p[0], p[1]); };
  for (std::size_t k = 0; k < keep; ++k) {
    const SimplexResult r = nelder_mead(objective, {cells[k].theta, cells[k].phi}, d_theta / 2.0,
                                        options.tolerance, options.max_iterations);
    out.refinement_iterations += r.iterations;
    if (r.value < best) {
      best = r.value;
      best_theta = r.x[0];
      best_phi = r.x[1];
    }
  }

  out.min_conditional_entropy = best;
  out.argmin = fold(best_theta, best_phi);
  out.mutual_information = s_measured + s_other - s_joint;
  out.q_min = s_measured - s_joint + best;
  out.classical = s_other - best;
  return out;
}

double classical_correlation_oracle(const XState& x, Side side, OracleOptions options) {
  return discord_oracle(x, side, options).classical;
}

CampaignStats approx_error_campaign(std::span<const XState> states, int grid, unsigned threads) {
  if (states.empty()) throw Error(ErrorKind::InvalidArgument, "campaign needs at least one state");
  std::vector<double> errors(states.size());
  OracleOptions options;
  options.grid = grid;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, states.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < states.size(); i = next++) {
      const double approx = approx_discord(states[i], Side::B).q;
      const double exact = discord_oracle(states[i], Side::B, options).q_min;
      errors[i] = std::abs(approx - exact);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  CampaignStats stats;
  stats.n = states.size();
  stats.grid = grid;
  double sum = 0.0;
  std::array<std::size_t, kCampaignThresholds.size()> above{};
  for (std::size_t i = 0; i < errors.size(); ++i) {
    sum += errors[i];
    if (errors[i] > stats.max_err) {
      stats.max_err = errors[i];
      stats.worst_index = i;
    }
    for (std::size_t k = 0; k < kCampaignThresholds.size(); ++k)
      if (errors[i] > kCampaignThresholds[k]) ++above[k];
  }
  stats.mean_err = sum / static_cast<double>(errors.size());
  for (std::size_t k = 0; k < above.size(); ++k)
    stats.frac_gt[k] = static_cast<double>(above[k]) / static_cast<double>(errors.size());
  return stats;
}

CampaignStats approx_error_campaign(std::uint64_t n, std::uint64_t seed, int grid, unsigned threads) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "campaign needs n >= 1");
  std::vector<XState> states;
  states.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) states.push_back(random_xstate(seed, i));
  CampaignStats stats = approx_error_campaign(std::span<const XState>(states), grid, threads);
  stats.seed = seed;
  return stats;
}

}  // namespace xstates
