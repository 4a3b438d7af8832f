#include "xstates/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xstates {

namespace {

struct BlockPair {
  double plus = 0.0;
  double minus = 0.0;
  Eigen::Vector2cd v_plus;
  Eigen::Vector2cd v_minus;
};

Eigen::Vector2cd stable_vector(double half_diff, double root, Complex coherence, int sign) {
  const Eigen::Vector2cd from_second_row(half_diff + sign * root, std::conj(coherence));
  const Eigen::Vector2cd from_first_row(coherence, -half_diff + sign * root);
  const Eigen::Vector2cd& v =
      from_second_row.norm() >= from_first_row.norm() ? from_second_row : from_first_row;
  return v / v.norm();
}

// Eigensystem of [[p, coherence], [conj(coherence), q]].
BlockPair solve_block(double p, double q, Complex coherence) {
  BlockPair out;
  const double mean = (p + q) / 2.0;
  const double half_diff = (p - q) / 2.0;
  const double root = std::hypot(half_diff, std::abs(coherence));
  out.plus = mean + root;
  // Product form avoids cancellation for the small eigenvalue.
  const double det = p * q - std::norm(coherence);
  out.minus = out.plus != 0.0 ? det / out.plus : mean - root;

  if (std::abs(coherence) == 0.0) {
    const Eigen::Vector2cd first(1.0, 0.0);
    const Eigen::Vector2cd second(0.0, 1.0);
    out.v_plus = half_diff >= 0.0 ? first : second;
    out.v_minus = half_diff >= 0.0 ? second : first;
    return out;
  }
  out.v_plus = stable_vector(half_diff, root, coherence, +1);
  out.v_minus = stable_vector(half_diff, root, coherence, -1);
  return out;
}

}  // namespace

SpectralDecomposition eigendecompose(const XState& x) {
  SpectralDecomposition s;
  s.u_plus = (x.a() + x.d()) / 2.0;
  s.u_minus = (x.a() - x.d()) / 2.0;
  s.r_plus = (x.b() + x.c()) / 2.0;
  s.r_minus = (x.b() - x.c()) / 2.0;

  const BlockPair ad = solve_block(x.a(), x.d(), x.w());
  const BlockPair bc = solve_block(x.b(), x.c(), x.z());

  struct Pair {
    double value;
    Vector4 vector;
    Block block;
  };
  auto embed_ad = [](const Eigen::Vector2cd& v) { return Vector4(v[0], 0.0, 0.0, v[1]); };
  auto embed_bc = [](const Eigen::Vector2cd& v) { return Vector4(0.0, v[0], v[1], 0.0); };
  std::array<Pair, 4> pairs{{{ad.plus, embed_ad(ad.v_plus), Block::AD},
                             {ad.minus, embed_ad(ad.v_minus), Block::AD},
                             {bc.plus, embed_bc(bc.v_plus), Block::BC},
                             {bc.minus, embed_bc(bc.v_minus), Block::BC}}};
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& l, const Pair& r) { return l.value > r.value; });
  for (int i = 0; i < 4; ++i) {
    s.lambda[i] = pairs[i].value;
    s.vectors[i] = pairs[i].vector;
    s.blocks[i] = pairs[i].block;
  }
  return s;
}

Matrix4 SpectralDecomposition::reconstruct() const {
  Matrix4 m = Matrix4::Zero();
  for (int i = 0; i < 4; ++i) m += lambda[i] * vectors[i] * vectors[i].adjoint();
  return m;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double binary_entropy(double p) {
  const double q[2] = {p, 1.0 - p};
  return shannon_entropy(q);
}

double entropy(const SpectralDecomposition& s) { return shannon_entropy(s.lambda); }

double entropy(const XState& x) { return entropy(eigendecompose(x)); }

double purity(const XState& x) {
  return x.a() * x.a() + x.b() * x.b() + x.c() * x.c() + x.d() * x.d() +
         2.0 * std::norm(x.w()) + 2.0 * std::norm(x.z());
}

Marginals marginals(const XState& x) {
  Marginals m;
  m.a.matrix = Matrix2::Zero();
  m.a.matrix(0, 0) = x.a() + x.b();
  m.a.matrix(1, 1) = x.c() + x.d();
  m.a.bloch_z = (x.a() + x.b()) - (x.c() + x.d());
  m.b.matrix = Matrix2::Zero();
  m.b.matrix(0, 0) = x.a() + x.c();
  m.b.matrix(1, 1) = x.b() + x.d();
  m.b.bloch_z = (x.a() + x.c()) - (x.b() + x.d());
  return m;
}

PartialTranspose partial_transpose(const XState& x) {
  PartialTranspose pt;
  pt.params = x.params();
  pt.params.z = std::conj(x.w());
  pt.params.w = std::conj(x.z());
  const BlockPair ad = solve_block(pt.params.a, pt.params.d, pt.params.w);
  const BlockPair bc = solve_block(pt.params.b, pt.params.c, pt.params.z);
  pt.spectrum = {ad.plus, ad.minus, bc.plus, bc.minus};
  return pt;
}

int PartialTranspose::negative_count(double tolerance) const {
  return static_cast<int>(
      std::count_if(spectrum.begin(), spectrum.end(), [&](double v) { return v < -tolerance; }));
}

double PartialTranspose::min_eigenvalue() const {
  return *std::min_element(spectrum.begin(), spectrum.end());
}

namespace {

double off_diagonal_norm(const MatrixX& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

HermitianEigen hermitian_eigen(const MatrixX& m) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() > 16)
    throw Error(ErrorKind::InvalidArgument, "hermitian_eigen supports square matrices up to 16 x 16");
  const double scale = std::max(1.0, m.norm());
  const double defect = hermiticity_defect(m);
  if (defect > 1e-10 * scale) throw Error(ErrorKind::NotHermitian, "||M - M^dagger||_F", defect);

  const Eigen::Index n = m.rows();
  MatrixX a = (m + m.adjoint()) / 2.0;
  MatrixX v = MatrixX::Identity(n, n);
  const double target = 1e-13 * scale;

  HermitianEigen out;
  constexpr int kMaxSweeps = 100;
  while (out.sweeps < kMaxSweeps && off_diagonal_norm(a) >= target) {
    ++out.sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Rotate the phase of a_pq away, then apply a real Jacobi rotation.
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]].
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
    return a(l, l).real() > a(r, r).real();
  });
  out.values.reserve(order.size());
  out.vectors.resize(n, n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values.push_back(a(order[k], order[k]).real());
    out.vectors.col(static_cast<Eigen::Index>(k)) = v.col(order[k]);
  }
  return out;
}

double min_eigenvalue(const MatrixX& m) { return hermitian_eigen(m).values.back(); }

}  // namespace xstates
