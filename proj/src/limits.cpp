#include "pqw/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pqw {

namespace {

constexpr double kAngleTol = 1e-10;

void require_time_mode(const WalkConfig &cfg, const char *who) {
  if (cfg.mode() != JetMode::time) {
    throw std::invalid_argument(std::string(who) + ": config is not in time mode");
  }
}

double sign_nu(int nu) { return nu == 0 ? 1.0 : -1.0; }

} // namespace

const ConditionRecord *ConstraintReport::find(const std::string &name) const {
  for (const auto &c : conditions) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

const ConditionRecord *ConstraintReport::first_failure() const {
  for (const auto &c : conditions) {
    if (!c.satisfied) {
      return &c;
    }
  }
  return nullptr;
}

std::optional<long long> ConstraintReport::witness(const std::string &name) const {
  for (const auto &c : conditions) {
    if (auto it = c.witnesses.find(name); it != c.witnesses.end()) {
      return it->second;
    }
  }
  return std::nullopt;
}

double lattice_residual(double x, double period, long long *n) {
  const double q = x / period;
  const double r = std::nearbyint(q);
  if (n != nullptr) {
    *n = static_cast<long long>(r);
  }
  return std::abs(q - r) * period;
}

double theta_branch_residual(const WalkConfig &cfg, int nu, long long *m, long long *t) {
  const double off_x = nu == 1 ? kPi : 0.0;
  const double off_y = nu == 0 ? kPi : 0.0;
  const double rx = lattice_residual(cfg.coin_x.theta0 - off_x, 2.0 * kPi, m);
  const double ry = lattice_residual(cfg.coin_y.theta0 - off_y, 2.0 * kPi, t);
  return std::max(rx, ry);
}

ConstraintReport check_time_limit(const WalkConfig &cfg, int l) {
  require_time_mode(cfg, "check_time_limit");
  ConstraintReport rep;

  ConditionRecord branch{"theta_branch", false, std::numeric_limits<double>::infinity(), {}};
  for (int nu = 0; nu < 2; ++nu) {
    long long m = 0;
    long long t = 0;
    const double res = theta_branch_residual(cfg, nu, &m, &t);
    if (res < branch.residual) {
      branch.residual = res;
      // q labels the coin carrying the extra pi, r the other one
      branch.witnesses = {{"nu", nu}, {"m", m}, {"t", t}, {"q", nu == 1 ? m : t}, {"r", nu == 1 ? t : m}};
    }
  }
  branch.satisfied = branch.residual <= kAngleTol;
  if (!branch.satisfied) {
    branch.witnesses.clear();
  }
  rep.conditions.push_back(branch);

  ConditionRecord delta{"delta_condition", false, 0.0, {}};
  const double arg = 2.0 * kPi * l / cfg.tau - cfg.delta();
  delta.residual = std::abs(std::cos(arg));
  delta.satisfied = delta.residual <= kAngleTol;
  if (delta.satisfied) {
    long long p = 0;
    lattice_residual(arg, kPi / 2.0, &p);
    delta.witnesses = {{"p", p}, {"l", l}};
  }
  rep.conditions.push_back(delta);

  ConditionRecord even{"tau_even", cfg.tau % 2 == 0, static_cast<double>(cfg.tau % 2), {}};
  rep.conditions.push_back(even);

  rep.passed = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                           [](const ConditionRecord &c) { return c.satisfied; });
  return rep;
}

namespace {

struct GH {
  double w1, w2, g, h;
};

GH constraint_parts(const WalkConfig &cfg, double kx, double ky) {
  const CoinJet &cx = cfg.coin_x;
  const CoinJet &cy = cfg.coin_y;
  const double zx = cx.zeta0 - 2.0 * kx * cfg.delta_spatial;
  const double zy = cy.zeta0 - 2.0 * ky * cfg.delta_spatial;
  return {std::cos(cx.theta0 / 2) * std::cos(cy.theta0 / 2),
          std::sin(cx.theta0 / 2) * std::sin(cy.theta0 / 2), (cx.phi0 + cy.phi0 + zx + zy) / 2.0,
          (cy.phi0 - cx.phi0 + zx - zy) / 2.0};
}

} // namespace

double constraint_f(const WalkConfig &cfg, double kx, double ky, int l) {
  const GH p = constraint_parts(cfg, kx, ky);
  return p.w1 * std::cos(p.g) - p.w2 * std::cos(p.h) - std::cos(2.0 * kPi * l / cfg.tau - cfg.delta());
}

ConstraintGradient constraint_f_gradient(const WalkConfig &cfg, double kx, double ky) {
  const GH p = constraint_parts(cfg, kx, ky);
  const double d = cfg.delta_spatial;
  return {d * (p.w1 * std::sin(p.g) - p.w2 * std::sin(p.h)),
          d * (p.w1 * std::sin(p.g) + p.w2 * std::sin(p.h))};
}

double roots_of_unity_residual(const WalkConfig &cfg, const KGrid &grid) {
  require_time_mode(cfg, "roots_of_unity_residual");
  const cplx phase = std::polar(1.0, cfg.delta());
  double worst = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Mat2 u = phase * walk_blocks(cfg, grid.kx(i), grid.ky(j)).a;
      const Eigen2 e = eig2(u, MatrixKind::unitary);
      for (const cplx &lam : e.values) {
        worst = std::max(worst, std::abs(std::pow(lam, cfg.tau) - 1.0));
      }
    }
  }
  return worst;
}

double odd_tau_gap(const WalkConfig &cfg, int tau_odd, const KGrid &grid) {
  require_time_mode(cfg, "odd_tau_gap");
  if (tau_odd < 1 || tau_odd % 2 == 0) {
    throw std::invalid_argument("odd_tau_gap: tau must be a positive odd integer");
  }
  const cplx phase = std::polar(1.0, cfg.delta());
  double worst = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Mat2 u = phase * walk_blocks(cfg, grid.kx(i), grid.ky(j)).a;
      worst = std::max(worst, op_norm(power(u, tau_odd) - Mat2::identity()));
    }
  }
  return worst;
}

Mat2 anticommutator_AB(const WalkConfig &cfg, double kx, double ky, int nu) {
  require_time_mode(cfg, "anticommutator_AB");
  if (nu != 0 && nu != 1) {
    throw std::invalid_argument("anticommutator_AB: nu must be 0 or 1");
  }
  if (theta_branch_residual(cfg, nu, nullptr, nullptr) > kAngleTol) {
    throw ConstraintViolation("theta_branch", "anticommutator_AB: theta0 not on branch nu=" +
                                                  std::to_string(nu));
  }
  const CoinJet &cx = cfg.coin_x;
  const CoinJet &cy = cfg.coin_y;
  const double s = sign_nu(nu);
  const double zx = cx.zeta0 - 2.0 * kx * cfg.delta_spatial;
  const double zy = cy.zeta0 - 2.0 * ky * cfg.delta_spatial;
  const Mat2 sy = pauli(Axis::y);
  const Mat2 ty = rot(Axis::z, -2.0 * cy.phi0) + rot(Axis::z, 2.0 * zx + 2.0 * s * cx.phi0 + 2.0 * s * zy);
  const Mat2 tx = rot(Axis::z, 2.0 * zx) + rot(Axis::z, 2.0 * s * zy - 2.0 * cy.phi0 + 2.0 * s * cx.phi0);
  return -cy.theta1 * (ty * sy) - cx.theta1 * (tx * sy);
}

std::vector<HamiltonianTerm> hamiltonian_terms(const WalkConfig &cfg, int nu) {
  const CoinJet &cx = cfg.coin_x;
  const CoinJet &cy = cfg.coin_y;
  const double s = sign_nu(nu);
  const int py = nu == 0 ? 2 : -2;
  const Mat2 sy = pauli(Axis::y);
  return {
      {2, 0, 0.25 * cx.theta1 * (rot(Axis::z, 2.0 * cx.zeta0) * sy)},
      {0, py, 0.25 * cx.theta1 * (rot(Axis::z, 2.0 * s * cy.zeta0 - 2.0 * cy.phi0 + 2.0 * s * cx.phi0) * sy)},
      {0, 0, 0.25 * cy.theta1 * (rot(Axis::z, -2.0 * cy.phi0) * sy)},
      {2, py, 0.25 * cy.theta1 * (rot(Axis::z, 2.0 * cx.zeta0 + 2.0 * s * cx.phi0 + 2.0 * s * cy.zeta0) * sy)},
  };
}

Mat2 hamiltonian_symbol(const std::vector<HamiltonianTerm> &terms, double kx, double ky,
                        double delta_spatial) {
  Mat2 h = Mat2::zero();
  for (const auto &t : terms) {
    h += shift_symbol(t.px * kx + t.py * ky, delta_spatial) * t.coeff;
  }
  return h;
}

TimeHamiltonian time_hamiltonian(const WalkConfig &cfg) {
  const ConstraintReport rep = check_time_limit(cfg);
  if (const ConditionRecord *bad = rep.first_failure()) {
    throw ConstraintViolation(bad->name, "continuous-time limit does not exist: " + bad->name);
  }
  const int nu = static_cast<int>(*rep.witness("nu"));
  return {nu, cfg.delta_spatial, hamiltonian_terms(cfg, nu)};
}

SpinorField apply_hamiltonian(const SpinorField &f, const std::vector<HamiltonianTerm> &terms) {
  SpinorField out(f.nx(), f.ny());
  for (const auto &t : terms) {
    const SpinorField part = shift_power(apply_matrix(f, t.coeff), t.px, t.py);
    for (std::size_t i = 0; i < out.sites(); ++i) {
      out[i][0] += part[i][0];
      out[i][1] += part[i][1];
    }
  }
  return out;
}

} // namespace pqw
