#pragma once

#include "pqw/algebra.hpp"
#include "pqw/coinwalk.hpp"
#include "pqw/limits.hpp"
#include "pqw/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace pqw {

/// Index tuple of one summand of the squared-walk expansion. Factor 1 carries
/// (l1x, l1y, n1x, n1y), factor 2 carries (l2x, l2y, n2x, n2y).
struct TermIndex {
  int l1x = 0, l1y = 0, l2x = 0, l2y = 0;
  int n1x = 0, n1y = 0, n2x = 0, n2y = 0;

  int sum_l() const { return l1x + l1y + l2x + l2y; }
  int sum_n() const { return n1x + n1y + n2x + n2y; }
  std::array<int, 8> as_array() const { return {l1x, l1y, l2x, l2y, n1x, n1y, n2x, n2y}; }
  static TermIndex from_array(const std::array<int, 8> &v);
  bool operator==(const TermIndex &) const = default;
};

/// One operator term of the continuum generator:
/// d/dt psi = sum coeff * dx^dx_power dy^dy_power psi.
struct PdeTerm {
  int dx_power = 0;
  int dy_power = 0;
  int thx_power = 0;
  int thy_power = 0;
  Mat2 coeff;
};

/// R_z(zx) sz^lx sy^nx R_y(th0x) R_z(phx) R_z(zy) sz^ly sy^ny R_y(th0y) R_z(phy)
Mat2 gamma_hat(const WalkConfig &cfg, int lx, int ly, int nx, int ny);

RationalExp exponent_of(const TermIndex &t, const RationalExp &a, const RationalExp &b);

/// All tuples with a*sum_l + b*sum_n == 1 exactly. Empty for a == 0.
std::vector<TermIndex> enumerate_terms(const RationalExp &a, const RationalExp &b);
/// All tuples with 0 < a*sum_l + b*sum_n < 1.
std::vector<TermIndex> enumerate_fractional(const RationalExp &a, const RationalExp &b);

struct TermGroup {
  RationalExp order;
  int dx = 0, dy = 0, thx = 0, thy = 0;
  int count = 0;
  /// sum of Gamma_1 Gamma_2 / (product of index factorials)
  Mat2 matrix;
};

std::vector<TermGroup> group_terms(const WalkConfig &cfg, const std::vector<TermIndex> &terms,
                                   const RationalExp &a, const RationalExp &b);

struct DivergenceReport {
  double residual = 0.0;
  std::vector<TermGroup> groups;
};

DivergenceReport divergence_report(const WalkConfig &cfg, const RationalExp &a, const RationalExp &b);
double divergence_residual(const WalkConfig &cfg, const RationalExp &a, const RationalExp &b);

/// Conditions "theta_branch_plastic", "exponent_matching", "rational_exponents",
/// "divergence", "zeroth_order_identity". Uses cfg.a_exp and coin b exponents.
ConstraintReport check_spacetime_limit(const WalkConfig &cfg);

/// Order-one generator symbol without the global phase:
/// (1/2) sum nu1 nu2 Gamma_1 Gamma_2 with dx -> i kx, dy -> i ky.
Mat2 raw_generator(const WalkConfig &cfg, double kx, double ky);

/// Limit of (W(k, eps)^2 - I)/(2 eps) as eps -> 0, by Richardson extrapolation
/// in s = eps^(1/L), L the lcm of the exponent denominators. k is the
/// physical momentum (the shift uses eps^a as spacing).
Mat2 numerical_generator(const WalkConfig &cfg, double kx, double ky);

struct Calibration {
  cplx value{1.0, 0.0};
  /// largest relative deviation of any sample from the fitted constant
  double spread = 0.0;
};

Calibration calibrate_prefactor(const WalkConfig &cfg, const std::vector<std::array<double, 2>> &momenta);

struct SpacetimeHamiltonian {
  std::vector<PdeTerm> terms;
  Calibration calibration;
};

/// Throws ConstraintViolation naming the first failed condition.
SpacetimeHamiltonian spacetime_hamiltonian(const WalkConfig &cfg);

/// Same assembly with the exact global phase e^{2 i delta}, no checks.
std::vector<PdeTerm> spacetime_terms_unchecked(const WalkConfig &cfg);

/// sum coeff (i kx)^dx (i ky)^dy
Mat2 pde_symbol(const std::vector<PdeTerm> &terms, double kx, double ky);

struct HalfHalfPde {
  Mat2 px;
  Mat2 py;
};

/// The printed closed form
///   Px = i thx sz Rz(2(phy+zx)) + i thy sz sy Rz(-2(zx+zy+phx))
///   Py = i thy sz sy Rz(2 phy)  + i thx sz sy Rz(-2(zx+zy+phx)).
/// Requires the theta branch, a = b = 1/2 and a1, a2 in (pi/2)Z.
HalfHalfPde half_half_pde(const WalkConfig &cfg);

/// Closed form that matches the generic assembly on the cancelling family
/// a1, a2 in pi Z with a1 + a2 = pi mod 2pi.
HalfHalfPde half_half_pde_corrected(const WalkConfig &cfg);

struct CrossTermReport {
  bool cancels = false;
  double residual = 0.0;
};

/// Norm of J_1100 + J_1001 + J_0110 + J_0011.
CrossTermReport cross_term_report(const WalkConfig &cfg);
/// Norm of the dx*dy group of the squared-walk expansion at a = b = 1/2.
double cross_group_norm(const WalkConfig &cfg);

std::string render_pde(const std::vector<PdeTerm> &terms);

/// phi_x + zeta_y and phi_y + zeta_x
double a1_angle(const WalkConfig &cfg);
double a2_angle(const WalkConfig &cfg);

} // namespace pqw
