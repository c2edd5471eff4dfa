#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pqw/coinwalk.hpp"

using namespace pqw;

namespace {

double dist(const Mat2 &a, const Mat2 &b) { return op_norm(a - b); }

CoinJet random_jet() {
  return CoinJet::time_mode(oracle::uniform(-3, 3), oracle::uniform(-3, 3), oracle::normal(),
                            oracle::uniform(-3, 3), oracle::normal(), oracle::uniform(-3, 3), oracle::normal());
}

WalkConfig random_cfg(int tau) {
  WalkConfig cfg;
  cfg.coin_x = random_jet();
  cfg.coin_y = random_jet();
  cfg.tau = tau;
  return cfg;
}

Mat2 oracle_walk(const WalkConfig &c, double kx, double ky, double eps) {
  const CoinJet &x = c.coin_x;
  const CoinJet &y = c.coin_y;
  const double d = c.spacing(eps);
  return oracle::walk(x.delta, x.zeta0 + x.zeta1 * eps, x.theta0 + x.theta1 * eps, x.phi0 + x.phi1 * eps, y.delta,
                      y.zeta0 + y.zeta1 * eps, y.theta0 + y.theta1 * eps, y.phi0 + y.phi1 * eps, kx * d, ky * d);
}

} // namespace

TEST_CASE("coin_at examples") {
  CHECK(dist(coin_at(CoinJet{}, 0.3), Mat2::identity()) <= 1e-15);
  const CoinJet flip = CoinJet::time_mode(0, 0, 0, kPi, 0, 0, 0);
  CHECK(dist(coin_at(flip, 0.0), Mat2{0.0, -1.0, 1.0, 0.0}) <= 1e-15);
  for (int trial = 0; trial < 100; ++trial) {
    const CoinJet j = random_jet();
    const double e = 1e-3;
    const Mat2 direct = rot(Axis::z, j.zeta0 + j.zeta1 * e) * rot(Axis::y, j.theta0 + j.theta1 * e) *
                        rot(Axis::z, j.phi0 + j.phi1 * e) * std::polar(1.0, j.delta);
    CHECK(dist(coin_at(j, e), direct) <= 1e-14);
    CHECK(unitarity_defect(coin_at(j, e)) <= 1e-12);
  }
}

TEST_CASE("plastic coin uses eps^b for theta only") {
  const CoinJet j = CoinJet::plastic(0.2, 0.4, 1.0, 0.7, -0.3, RationalExp(1, 2));
  const double e = 0.01;
  CHECK(dist(coin_at(j, e), coin_from_angles(0.2, 0.4, 1.0 + 0.7 * 0.1, -0.3)) <= 1e-15);
}

TEST_CASE("jet validation") {
  CoinJet bad_b = CoinJet::time_mode(0, 0, 0, 0, 0, 0, 0);
  bad_b.b_exp = RationalExp(1, 2);
  CHECK_THROWS_AS(bad_b.validate(), std::invalid_argument);
  CHECK_THROWS_AS(CoinJet::plastic(0, 0, 0, 0, 0, RationalExp(0)), std::invalid_argument);
  CHECK_THROWS_AS(CoinJet::plastic(0, 0, 0, 0, 0, RationalExp(3, 2)), std::invalid_argument);
  CoinJet moving = CoinJet::plastic(0, 0, 0, 0, 0, RationalExp(1, 2));
  moving.zeta1 = 0.1;
  CHECK_THROWS_AS(moving.validate(), std::invalid_argument);
  CHECK_THROWS_AS(CoinJet::time_mode(0, std::nan(""), 0, 0, 0, 0, 0), std::invalid_argument);

  WalkConfig cfg;
  cfg.tau = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.tau = 2;
  cfg.a_exp = RationalExp(3, 2);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("shift symbol") {
  CHECK(dist(shift_symbol(0.0, 1.0), Mat2::identity()) == 0.0);
  CHECK(dist(shift_symbol(kPi / 2, 1.0), Mat2::diag(kI, -kI)) <= 1e-15);
  for (int trial = 0; trial < 50; ++trial) {
    const double k = oracle::uniform(-4, 4);
    const double d = oracle::uniform(0.1, 2);
    CHECK(shift_symbol(k, d) == rot(Axis::z, -2 * k * d));
  }
}

TEST_CASE("walk_k examples, unitarity and periodicity") {
  WalkConfig id;
  CHECK(dist(walk_k(id, 0, 0, 0.1), Mat2::identity()) <= 1e-15);
  const double kx = 0.4;
  const double ky = -1.1;
  CHECK(dist(walk_k(id, kx, ky, 0.1), Mat2::diag(std::polar(1.0, kx + ky), std::polar(1.0, -(kx + ky)))) <= 1e-15);
  for (int trial = 0; trial < 100; ++trial) {
    const WalkConfig cfg = random_cfg(2);
    const double a = oracle::uniform(-kPi, kPi);
    const double b = oracle::uniform(-kPi, kPi);
    const double e = oracle::uniform(0, 0.1);
    CHECK(unitarity_defect(walk_k(cfg, a, b, e)) <= 1e-12);
    CHECK(dist(walk_k(cfg, a + 2 * kPi, b, e), walk_k(cfg, a, b, e)) <= 1e-13);
    CHECK(dist(walk_k(cfg, a, b, e), oracle_walk(cfg, a, b, e)) <= 1e-12);
  }
}

TEST_CASE("grid momenta lie in (-pi, pi]") {
  const KGrid g{8, 5};
  for (int i = 0; i < 8; ++i) {
    CHECK(g.kx(i) > -kPi);
    CHECK(g.kx(i) <= kPi);
  }
  CHECK(g.kx(4) == doctest::Approx(kPi));
  CHECK(g.kx(5) == doctest::Approx(-3 * kPi / 4));
  CHECK(g.ky(3) == doctest::Approx(-4 * kPi / 5));
}

TEST_CASE("first-order blocks") {
  CoinJet still = CoinJet::time_mode(0.3, 0.2, 0, 1.1, 0, -0.4, 0);
  CHECK(op_norm(first_order_blocks(still, 0.7).b) == 0.0);

  CoinJet j = random_jet();
  j.delta = 0;
  CHECK(dist(first_order_blocks(j, 0.0).a, coin_at(j, 0.0)) <= 1e-14);

  CoinJet p = CoinJet::plastic(0, 0, 0, 1, 0, RationalExp(1, 2));
  CHECK_THROWS_AS(first_order_blocks(p, 0.0), std::invalid_argument);

  for (int trial = 0; trial < 20; ++trial) {
    const CoinJet jet = random_jet();
    const double k = oracle::uniform(-kPi, kPi);
    const Blocks blk = first_order_blocks(jet, k);
    auto err = [&](double e) {
      const Mat2 exact = shift_symbol(k, 1.0) * coin_at(jet, e);
      const Mat2 approx = std::polar(1.0, jet.delta) * (blk.a - (0.5 * kI * e) * blk.b);
      return op_norm(exact - approx);
    };
    const double ratio = err(1e-3) / err(5e-4);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
  }
}

TEST_CASE("walk power expansion") {
  WalkConfig still;
  still.coin_x = CoinJet::time_mode(0.1, 0.2, 0, 1.0, 0, 0.3, 0);
  still.coin_y = CoinJet::time_mode(-0.4, 0.5, 0, 2.0, 0, 0.6, 0);
  still.tau = 3;
  CHECK(op_norm(walk_power_expansion(still, 0.3, 0.2).first) == 0.0);

  WalkConfig one = random_cfg(1);
  const Blocks blk = walk_blocks(one, 0.3, -0.2);
  const PowerExpansion pe1 = walk_power_expansion(one, 0.3, -0.2);
  const cplx ph = std::polar(1.0, one.delta());
  CHECK(dist(pe1.zeroth, ph * blk.a) <= 1e-14);
  CHECK(dist(pe1.first, (-0.5 * kI * ph) * blk.b) <= 1e-14);

  for (int tau : {2, 3, 4}) {
    for (int trial = 0; trial < 10; ++trial) {
      const WalkConfig cfg = random_cfg(tau);
      const double kx = oracle::uniform(-kPi, kPi);
      const double ky = oracle::uniform(-kPi, kPi);
      const PowerExpansion pe = walk_power_expansion(cfg, kx, ky);
      auto err = [&](double e) {
        return op_norm(power(walk_k(cfg, kx, ky, e), tau) - (pe.zeroth + e * pe.first));
      };
      CHECK(err(1e-4) / err(5e-5) == doctest::Approx(4.0).epsilon(0.1));
    }
  }
}

TEST_CASE("quadratic angle corrections leave the first-order coefficient unchanged") {
  for (int trial = 0; trial < 20; ++trial) {
    const CoinJet j = random_jet();
    const double c = oracle::normal();
    auto first = [&](double e, double quad) {
      const Mat2 w0 = coin_at(j, 0.0);
      const Mat2 we = coin_from_angles(j.delta, j.zeta0 + j.zeta1 * e + quad * e * e,
                                       j.theta0 + j.theta1 * e + quad * e * e, j.phi0 + j.phi1 * e + quad * e * e);
      return (1.0 / e) * (we - w0);
    };
    const double d1 = op_norm(first(1e-3, c) - first(1e-3, 0));
    const double d2 = op_norm(first(5e-4, c) - first(5e-4, 0));
    CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.05));
  }
}
