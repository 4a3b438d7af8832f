#pragma once

// Dense brute-force routes used as ground truth by the tests. Nothing here
// calls into the closed forms under test.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using M2 = Eigen::Matrix2cd;
using M4 = Eigen::Matrix4cd;
using V4 = Eigen::Vector4cd;

inline M2 sigma(int k) {
  M2 s = M2::Zero();
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cd(0, -1), cd(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

inline M4 tensor(const M2& x, const M2& y) {
  M4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return out;
}

// sum of ket-bras, written out entry by entry
inline M4 x_matrix(double a, double b, double c, double d, cd z, cd w) {
  M4 m = M4::Zero();
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

inline M4 projector(const V4& v) { return v * v.adjoint(); }

inline double expect(const M4& rho, int mu, int nu) { return (rho * tensor(sigma(mu), sigma(nu))).trace().real(); }

inline Eigen::Vector4d spectrum(const M4& m) {
  Eigen::SelfAdjointEigenSolver<M4> es(m, Eigen::EigenvaluesOnly);
  Eigen::Vector4d v = es.eigenvalues();
  std::sort(v.data(), v.data() + 4, std::greater<>());
  return v;
}

inline double entropy_of(const Eigen::VectorXd& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 1e-300) s -= p(i) * std::log(p(i));
  return s / std::log(2.0);
}

inline double entropy(const M4& rho) { return entropy_of(spectrum(rho)); }

inline double entropy2(const M2& rho) {
  Eigen::SelfAdjointEigenSolver<M2> es(rho, Eigen::EigenvaluesOnly);
  return entropy_of(es.eigenvalues());
}

inline M2 trace_b(const M4& rho) {
  M2 out = M2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out(i, j) += rho(2 * i + k, 2 * j + k);
  return out;
}

inline M2 trace_a(const M4& rho) {
  M2 out = M2::Zero();
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i) out(k, l) += rho(2 * i + k, 2 * i + l);
  return out;
}

inline M4 transpose_a(const M4& rho) {
  M4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = rho(2 * j + k, 2 * i + l);
  return out;
}

inline double negativity(const M4& rho) {
  const Eigen::Vector4d s = spectrum(transpose_a(rho));
  double n = 0.0;
  for (int i = 0; i < 4; ++i)
    if (s(i) < 0) n -= s(i);
  return n;
}

// Wootters: sqrt of eigenvalues of rho (sy sy) rho* (sy sy).
inline double wootters(const M4& rho) {
  const M4 yy = tensor(sigma(2), sigma(2));
  const M4 tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<M4> es(rho * tilde, false);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// (|b|^2 + ||T||^2 - k_max) / 4 on the measured side's Bloch vector and correlations.
inline double geometric_discord(const M4& rho, bool side_a) {
  Eigen::Vector3d bloch;
  Eigen::Matrix3d t;
  for (int k = 0; k < 3; ++k) {
    bloch(k) = side_a ? expect(rho, k + 1, 0) : expect(rho, 0, k + 1);
    for (int l = 0; l < 3; ++l) t(k, l) = side_a ? expect(rho, k + 1, l + 1) : expect(rho, l + 1, k + 1);
  }
  const Eigen::Matrix3d k = bloch * bloch.transpose() + t * t.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(k);
  return 0.25 * (bloch.squaredNorm() + t.squaredNorm() - es.eigenvalues()(2));
}

inline std::array<V4, 4> bell_kets() {
  const double r = 1.0 / std::sqrt(2.0);
  return {V4(r, 0, 0, r), V4(0, r, r, 0), V4(0, r, -r, 0), V4(r, 0, 0, -r)};
}

inline double best_bell_overlap(const M4& rho) {
  double best = -1.0;
  for (const V4& v : bell_kets()) best = std::max(best, (v.adjoint() * rho * v)(0, 0).real());
  return best;
}

// Gamma_{mu nu} = Tr(rho s_mu (x) s_nu) / 2, singular values descending.
inline Eigen::Vector4d gamma_singular_values(const M4& rho) {
  Eigen::Matrix4d g;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) g(mu, nu) = expect(rho, mu, nu) / 2.0;
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(g);
  return svd.singularValues();
}

// Haar unitary from QR of a complex Ginibre matrix with phase fix.
template <int N>
Eigen::Matrix<cd, N, N> haar_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix<cd, N, N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::Matrix<cd, N, N>> qr(m);
  Eigen::Matrix<cd, N, N> q = qr.householderQ();
  const Eigen::Matrix<cd, N, N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int i = 0; i < N; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline V4 haar_ket(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  V4 v;
  for (int i = 0; i < 4; ++i) v(i) = cd(g(rng), g(rng));
  return v / v.norm();
}

// Average entropy of A after projecting B onto {|m>, |m_perp>}.
inline double measured_entropy_b(const M4& rho, double theta, double phi) {
  Eigen::Vector2cd m0(std::cos(theta), std::polar(1.0, phi) * std::sin(theta));
  Eigen::Vector2cd m1(-std::polar(1.0, -phi) * std::sin(theta), std::cos(theta));
  double total = 0.0;
  for (const auto& m : {m0, m1}) {
    const M4 p = tensor(M2::Identity(), m * m.adjoint());
    const M4 post = p * rho * p;
    const double prob = post.trace().real();
    if (prob < 1e-14) continue;
    total += prob * entropy2(trace_b(post) / prob);
  }
  return total;
}

inline double binary_h(double p) {
  Eigen::Vector2d v(p, 1.0 - p);
  return entropy_of(v);
}

// Discord of a Werner state, closed expression in eps.
inline double werner_discord(double eps) {
  auto xlog = [](double k, double x) { return x > 0 ? k * std::log2(x) : 0.0; };
  return xlog((1 - eps) / 4, 1 - eps) + xlog((1 + 3 * eps) / 4, 1 + 3 * eps) - xlog((1 + eps) / 2, 1 + eps);
}

}  // namespace oracle
