#include "pqw/coinwalk.hpp"

#include <cmath>
#include <stdexcept>

namespace pqw {

namespace {

void require_finite(double v, const char *what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("non-finite coin parameter: ") + what);
  }
}

double eps_power(double eps, const RationalExp &e) {
  if (e.is_zero()) {
    return 1.0;
  }
  return std::pow(eps, e.value());
}

} // namespace

CoinJet CoinJet::time_mode(double delta, double zeta0, double zeta1, double theta0, double theta1,
                           double phi0, double phi1) {
  CoinJet j{delta, zeta0, zeta1, theta0, theta1, phi0, phi1, RationalExp{1, 1}, JetMode::time};
  j.validate();
  return j;
}

CoinJet CoinJet::plastic(double delta, double zeta, double theta0, double theta1, double phi,
                         RationalExp b) {
  CoinJet j{delta, zeta, 0.0, theta0, theta1, phi, 0.0, b, JetMode::plastic};
  j.validate();
  return j;
}

void CoinJet::validate() const {
  require_finite(delta, "delta");
  require_finite(zeta0, "zeta0");
  require_finite(zeta1, "zeta1");
  require_finite(theta0, "theta0");
  require_finite(theta1, "theta1");
  require_finite(phi0, "phi0");
  require_finite(phi1, "phi1");
  if (b_exp <= RationalExp{0} || b_exp > RationalExp{1}) {
    throw std::invalid_argument("b exponent must lie in (0, 1]");
  }
  if (mode == JetMode::time && b_exp != RationalExp{1}) {
    throw std::invalid_argument("time-mode jets use b = 1");
  }
  if (mode == JetMode::plastic && (zeta1 != 0.0 || phi1 != 0.0)) {
    throw std::invalid_argument("plastic-mode jets expand theta only");
  }
}

double WalkConfig::spacing(double eps) const {
  if (a_exp.is_zero()) {
    return delta_spatial;
  }
  return eps_power(eps, a_exp);
}

void WalkConfig::validate() const {
  coin_x.validate();
  coin_y.validate();
  if (coin_x.mode != coin_y.mode) {
    throw std::invalid_argument("coins must share a jet mode");
  }
  if (tau < 1) {
    throw std::invalid_argument("tau must be >= 1");
  }
  if (a_exp < RationalExp{0} || a_exp > RationalExp{1}) {
    throw std::invalid_argument("a exponent must lie in [0, 1]");
  }
  if (!(delta_spatial > 0.0) || !std::isfinite(delta_spatial)) {
    throw std::invalid_argument("spatial step must be positive");
  }
}

double grid_momentum(int j, int n) {
  int jj = ((j % n) + n) % n;
  if (2 * jj > n) {
    jj -= n;
  }
  return 2.0 * kPi * jj / n;
}

double KGrid::kx(int i) const { return grid_momentum(i, nx); }
double KGrid::ky(int j) const { return grid_momentum(j, ny); }

Mat2 coin_from_angles(double delta, double zeta, double theta, double phi) {
  return std::polar(1.0, delta) * (rot(Axis::z, zeta) * rot(Axis::y, theta) * rot(Axis::z, phi));
}

Mat2 coin_at(const CoinJet &jet, double eps) {
  if (jet.mode == JetMode::plastic) {
    return coin_from_angles(jet.delta, jet.zeta0, jet.theta0 + jet.theta1 * eps_power(eps, jet.b_exp),
                            jet.phi0);
  }
  return coin_from_angles(jet.delta, jet.zeta0 + jet.zeta1 * eps, jet.theta0 + jet.theta1 * eps,
                          jet.phi0 + jet.phi1 * eps);
}

Mat2 shift_symbol(double k, double delta_spatial) { return rot(Axis::z, -2.0 * k * delta_spatial); }

Mat2 walk_k(const WalkConfig &cfg, double kx, double ky, double eps) {
  const double dx = cfg.spacing(eps);
  return shift_symbol(kx, dx) * coin_at(cfg.coin_x, eps) * shift_symbol(ky, dx) *
         coin_at(cfg.coin_y, eps);
}

Blocks first_order_blocks(const CoinJet &jet, double kphase) {
  if (jet.mode != JetMode::time) {
    throw std::invalid_argument("first_order_blocks: jet is not in time mode");
  }
  const double zp = jet.zeta0 - 2.0 * kphase;
  const Mat2 a = rot(Axis::z, zp) * rot(Axis::y, jet.theta0) * rot(Axis::z, jet.phi0);
  const Mat2 sz = pauli(Axis::z);
  const Mat2 b = jet.zeta1 * (sz * a) + jet.theta1 * (pauli(Axis::y) * rot(Axis::z, -2.0 * zp) * a) +
                 jet.phi1 * (a * sz);
  return {a, b};
}

Blocks walk_blocks(const WalkConfig &cfg, double kx, double ky) {
  const double dx = cfg.delta_spatial;
  const Blocks bx = first_order_blocks(cfg.coin_x, kx * dx);
  const Blocks by = first_order_blocks(cfg.coin_y, ky * dx);
  return {bx.a * by.a, bx.a * by.b + bx.b * by.a};
}

PowerExpansion walk_power_expansion(const WalkConfig &cfg, double kx, double ky) {
  const Blocks blk = walk_blocks(cfg, kx, ky);
  const cplx phase = std::polar(1.0, cfg.tau * cfg.delta());
  // sum_{j<tau} A^{tau-1-j} B A^j
  Mat2 sum = Mat2::zero();
  Mat2 left = power(blk.a, cfg.tau - 1);
  Mat2 right = Mat2::identity();
  const Mat2 a_inv = blk.a.inverse();
  for (int j = 0; j < cfg.tau; ++j) {
    sum += left * blk.b * right;
    left = left * a_inv;
    right = right * blk.a;
  }
  return {phase * power(blk.a, cfg.tau), (-0.5 * kI * phase) * sum};
}

} // namespace pqw
