#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "xstates/core.hpp"
#include "xstates/measures.hpp"
#include "xstates/oracle.hpp"
#include "xstates/spectral.hpp"

using namespace xstates;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("measurement basis projectors") {
  for (double theta : {0.0, 0.3, kPi / 4, kPi / 2})
    for (double phi : {0.0, 1.0, 4.0}) {
      const auto p = MeasurementBasis{theta, phi}.projectors();
      CHECK((p[0] + p[1] - Matrix2::Identity()).norm() < 1e-14);
      CHECK((p[0] * p[1]).norm() < 1e-14);
      CHECK((p[0] * p[0] - p[0]).norm() < 1e-14);
    }
}

TEST_CASE("conditional entropy examples") {
  // product of diagonal marginals
  const double pa = 0.7;
  const double pb = 0.4;
  const XState product = validate(pa * pb, pa * (1 - pb), (1 - pa) * pb, (1 - pa) * (1 - pb), 0, 0);
  for (double theta : {0.0, 0.4, kPi / 4, 1.2})
    for (double phi : {0.0, 2.0})
      CHECK(conditional_entropy(product, {theta, phi}) == Approx(oracle::binary_h(pa)).epsilon(1e-12));

  CHECK(conditional_entropy(bell(0), {0.0, 0.0}) == Approx(0).scale(1e-15));
  const double w = conditional_entropy(werner(0.5), {kPi / 4, 0.0});
  CHECK(w == Approx(0.8112781244591328).epsilon(1e-13));
  CHECK(std::abs(w - 0.81128) < 1e-5);
}

TEST_CASE("conditional entropy against dense projection") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const XState x = random_xstate(127, i, RandomOptions{true});
    const double theta = 0.003 * static_cast<double>(i);
    const double phi = 0.011 * static_cast<double>(i);
    CHECK(std::abs(conditional_entropy(x, {theta, phi}) - oracle::measured_entropy_b(x.matrix(), theta, phi)) <
          1e-10);
    // side A measurement = side B measurement of the swapped state
    CHECK(std::abs(conditional_entropy(x, {theta, phi}, Side::A) -
                   conditional_entropy(x.swapped(), {theta, phi}, Side::B)) < 1e-12);
  }
}

TEST_CASE("N1 and N2 are conditional entropies at fixed measurements") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const XState x = random_xstate(131, i);
    const ApproxDiscord q = approx_discord(x);
    CHECK(std::abs(conditional_entropy(x, {kPi / 4, 0.0}) - q.n1) < 1e-10);
    CHECK(std::abs(conditional_entropy(x, {kPi / 2, 0.0}) - q.n2) < 1e-10);
  }
}

TEST_CASE("discord oracle examples") {
  OracleResult r = discord_oracle(validate(1, 0, 0, 0, 0, 0));
  CHECK(std::abs(r.q_min) < 1e-9);
  r = discord_oracle(bell(0));
  CHECK(r.q_min == Approx(1.0).epsilon(1e-9));
  CHECK(r.classical == Approx(1.0).epsilon(1e-9));
  CHECK(r.grid == 64);

  r = discord_oracle(werner(0.5));
  CHECK(std::abs(r.q_min - oracle::werner_discord(0.5)) < 1e-9);
  CHECK(std::abs(r.classical - 0.18872) < 1e-5);
  CHECK(std::abs(r.q_min + r.classical - r.mutual_information) < 1e-12);
  CHECK(r.argmin.theta >= 0.0);
  CHECK(r.argmin.theta <= kPi / 2);
  CHECK(r.argmin.phi >= 0.0);
  CHECK(r.argmin.phi < 2 * kPi);

  CHECK(std::abs(classical_correlation_oracle(bell(0)) - 1.0) < 1e-9);
  CHECK(std::abs(classical_correlation_oracle(validate(0.25, 0.25, 0.25, 0.25, 0, 0))) < 1e-12);

  OracleOptions bad;
  bad.grid = 0;
  CHECK_THROWS_AS(discord_oracle(bell(0), Side::B, bad), Error);
}

TEST_CASE("oracle minimum lies below every probed grid point") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const XState x = random_xstate(137, i, RandomOptions{true});
    OracleOptions o;
    o.grid = 16;
    const OracleResult r = discord_oracle(x, Side::B, o);
    for (int a = 0; a <= 16; ++a)
      for (int b = 0; b < 16; ++b)
        CHECK(r.min_conditional_entropy <=
              oracle::measured_entropy_b(x.matrix(), a * kPi / 32, b * kPi / 8) + 1e-12);
    CHECK(std::abs(conditional_entropy(x, r.argmin) - r.min_conditional_entropy) < 1e-12);
  }
}

TEST_CASE("oracle is deterministic and monotone in the grid") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const XState x = random_xstate(139, i, RandomOptions{i % 2 == 0});
    OracleOptions o;
    o.grid = 8;
    double previous = discord_oracle(x, Side::B, o).q_min;
    CHECK(previous == discord_oracle(x, Side::B, o).q_min);
    for (int g : {16, 32, 64}) {
      o.grid = g;
      const double q = discord_oracle(x, Side::B, o).q_min;
      CHECK(q <= previous + 1e-10);
      previous = q;
    }
  }
}

TEST_CASE("oracle bounds the approximation from below") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const XState x = random_xstate(149, i);
    OracleOptions o;
    o.grid = 16;
    const OracleResult r = discord_oracle(x, Side::B, o);
    const ApproxDiscord q = approx_discord(x);
    CHECK(std::min(q.n1, q.n2) >= r.min_conditional_entropy - 1e-9);
    CHECK(r.q_min >= -1e-9);
    CHECK(std::abs(r.q_min + r.classical - r.mutual_information) < 1e-12);
  }
}

TEST_CASE("oracle vanishes on diagonal states") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    XParams p = random_xstate(151, i).params();
    p.z = p.w = 0.0;
    OracleOptions o;
    o.grid = 16;
    CHECK(std::abs(discord_oracle(validate(p), Side::B, o).q_min) < 1e-9);
    CHECK(std::abs(discord_oracle(validate(p), Side::A, o).q_min) < 1e-9);
  }
}

TEST_CASE("oracle side swap") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const XState x = random_xstate(157, i, RandomOptions{true});
    OracleOptions o;
    o.grid = 16;
    CHECK(std::abs(discord_oracle(x, Side::A, o).q_min - discord_oracle(x.swapped(), Side::B, o).q_min) < 1e-9);
  }
}

TEST_CASE("MMM discord agrees with the oracle on Bell-diagonal states") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    // uniform on the tetrahedron of valid (c1, c2, c3) via its spectrum
    const XState r = random_xstate(163, i);
    const double l[4] = {r.a(), r.b(), r.c(), r.d()};
    const double c1 = l[2] + l[3] - l[0] - l[1];
    const double c2 = l[1] + l[3] - l[0] - l[2];
    const double c3 = l[1] + l[2] - l[0] - l[3];
    const XState x = bell_diagonal(c1, c2, c3);
    OracleOptions o;
    o.grid = 32;
    CHECK(std::abs(mmm_discord(x) - discord_oracle(x, Side::B, o).q_min) < 1e-6);
  }
}

TEST_CASE("Nelder-Mead on a quadratic") {
  auto f = [](std::span<const double> p) { return (p[0] - 1) * (p[0] - 1) + 4 * (p[1] + 2) * (p[1] + 2); };
  const SimplexResult r = nelder_mead(f, {0.0, 0.0}, 0.5, 1e-16, 2000);
  CHECK(r.x[0] == Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == Approx(-2.0).epsilon(1e-6));
  CHECK(r.value < 1e-12);
}

TEST_CASE("error campaign") {
  const std::vector<XState> one{bell(0)};
  CampaignStats s = approx_error_campaign(std::span<const XState>(one), 64, 1);
  CHECK(s.max_err < 1e-9);
  CHECK(s.n == 1);

  s = approx_error_campaign(40, 1, 32, 4);
  const CampaignStats again = approx_error_campaign(40, 1, 32, 1);
  CHECK(s.max_err == again.max_err);
  CHECK(s.mean_err == again.mean_err);
  CHECK(s.worst_index == again.worst_index);
  CHECK(s.frac_gt == again.frac_gt);
  CHECK(s.max_err < 1e-3);
  CHECK(s.seed == 1);
  for (std::size_t k = 1; k < s.frac_gt.size(); ++k) CHECK(s.frac_gt[k] >= s.frac_gt[k - 1]);

  CHECK_THROWS_AS(approx_error_campaign(0, 1), Error);
}
