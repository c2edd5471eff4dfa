#pragma once

#include "pqw/algebra.hpp"
#include "pqw/rational.hpp"

#include <vector>

namespace pqw {

enum class JetMode { time, plastic };

/// Coin parameters as first-order jets in the small parameter.
/// Time mode: every angle is x0 + x1*eps. Plastic mode: only theta moves, as
/// theta0 + theta1*eps^b.
struct CoinJet {
  double delta = 0.0;
  double zeta0 = 0.0, zeta1 = 0.0;
  double theta0 = 0.0, theta1 = 0.0;
  double phi0 = 0.0, phi1 = 0.0;
  RationalExp b_exp{1, 1};
  JetMode mode = JetMode::time;

  static CoinJet time_mode(double delta, double zeta0, double zeta1, double theta0, double theta1,
                           double phi0, double phi1);
  static CoinJet plastic(double delta, double zeta, double theta0, double theta1, double phi,
                         RationalExp b);

  /// Throws std::invalid_argument on non-finite angles, b outside (0,1],
  /// b != 1 in time mode, or moving zeta/phi in plastic mode.
  void validate() const;
};

struct WalkConfig {
  CoinJet coin_x;
  CoinJet coin_y;
  int tau = 2;
  RationalExp a_exp{0, 1};
  double delta_spatial = 1.0;

  double delta() const { return coin_x.delta + coin_y.delta; }
  JetMode mode() const { return coin_x.mode; }
  /// Lattice spacing at eps: eps^a when a > 0, else the fixed spacing.
  double spacing(double eps) const;
  void validate() const;
};

/// Uniform Brillouin-zone grid; momenta 2*pi*j/n folded into (-pi, pi].
struct KGrid {
  int nx = 16;
  int ny = 16;

  double kx(int i) const;
  double ky(int j) const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

double grid_momentum(int j, int n);

Mat2 coin_from_angles(double delta, double zeta, double theta, double phi);
Mat2 coin_at(const CoinJet &jet, double eps);

/// exp(i k dx sigma_z) = R_z(-2 k dx).
Mat2 shift_symbol(double k, double delta_spatial);

/// S_x(kx) C_x(eps) S_y(ky) C_y(eps).
Mat2 walk_k(const WalkConfig &cfg, double kx, double ky, double eps);

struct Blocks {
  Mat2 a;
  Mat2 b;
};

/// A_j and B_j with S_j C_j(eps) = e^{i delta}(A_j - (i eps/2) B_j) + O(eps^2).
/// kphase is k times the spacing.
Blocks first_order_blocks(const CoinJet &jet, double kphase);

/// A = A_x A_y and B = A_x B_y + B_x A_y.
Blocks walk_blocks(const WalkConfig &cfg, double kx, double ky);

struct PowerExpansion {
  Mat2 zeroth;
  Mat2 first;
};

/// W^tau = zeroth + eps * first + O(eps^2).
PowerExpansion walk_power_expansion(const WalkConfig &cfg, double kx, double ky);

} // namespace pqw
