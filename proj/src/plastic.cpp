#include "pqw/plastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace pqw {

namespace {

constexpr double kAngleTol = 1e-10;
constexpr double kDivergenceTol = 1e-10;
constexpr double kGroupDropTol = 1e-12;

const RationalExp kHalf{1, 2};

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= i;
  }
  return f;
}

Mat2 sigma_power(Axis axis, int p) { return (p % 2 == 0) ? Mat2::identity() : pauli(axis); }

cplx ipow(cplx z, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i) {
    r *= z;
  }
  return r;
}

void compositions(int total, std::array<int, 4> &cur, int slot, std::vector<std::array<int, 4>> &out) {
  if (slot == 3) {
    cur[3] = total;
    out.push_back(cur);
    return;
  }
  for (int v = total; v >= 0; --v) {
    cur[slot] = v;
    compositions(total - v, cur, slot + 1, out);
  }
}

std::vector<std::array<int, 4>> compositions(int total) {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> cur{};
  compositions(total, cur, 0, out);
  return out;
}

// Tuples whose exponent satisfies pred, with sum_l <= 1/a and sum_n <= 1/b.
template <typename Pred>
std::vector<TermIndex> enumerate_if(const RationalExp &a, const RationalExp &b, Pred pred) {
  std::vector<TermIndex> out;
  if (a <= RationalExp{0} || b <= RationalExp{0}) {
    return out;
  }
  const long long max_l = a.den() / a.num();
  const long long max_n = b.den() / b.num();
  for (int sl = 0; sl <= max_l; ++sl) {
    for (int sn = 0; sn <= max_n; ++sn) {
      const RationalExp f = sl * a + sn * b;
      if (!pred(f)) {
        continue;
      }
      for (const auto &ls : compositions(sl)) {
        for (const auto &ns : compositions(sn)) {
          out.push_back(TermIndex::from_array({ls[0], ls[1], ls[2], ls[3], ns[0], ns[1], ns[2], ns[3]}));
        }
      }
    }
  }
  return out;
}

void require_plastic(const WalkConfig &cfg, const char *who) {
  if (cfg.mode() != JetMode::plastic) {
    throw std::invalid_argument(std::string(who) + ": config is not in plastic mode");
  }
}

const RationalExp &b_of(const WalkConfig &cfg) { return cfg.coin_x.b_exp; }

double plastic_branch_residual(const WalkConfig &cfg, long long *m, long long *t) {
  const double rx = lattice_residual(cfg.coin_x.theta0, 2.0 * kPi, m);
  const double ry = lattice_residual(cfg.coin_y.theta0 - kPi, 2.0 * kPi, t);
  return std::max(rx, ry);
}

// Order-one groups, optionally folded into PdeTerms with the given prefactor.
std::vector<PdeTerm> fold_groups(const WalkConfig &cfg, cplx prefactor) {
  const RationalExp &a = cfg.a_exp;
  const RationalExp &b = b_of(cfg);
  const auto groups = group_terms(cfg, enumerate_terms(a, b), a, b);
  std::vector<PdeTerm> out;
  for (const auto &g : groups) {
    if (op_norm(g.matrix) <= kGroupDropTol) {
      continue;
    }
    const cplx th = ipow(-0.5 * kI, g.thx + g.thy) * std::pow(cfg.coin_x.theta1, g.thx) *
                    std::pow(cfg.coin_y.theta1, g.thy);
    out.push_back({g.dx, g.dy, g.thx, g.thy, (0.5 * prefactor * th) * g.matrix});
  }
  return out;
}

double frob_dot_re(const Mat2 &x, const Mat2 &y, cplx *dot) {
  *dot = std::conj(x.a11) * y.a11 + std::conj(x.a12) * y.a12 + std::conj(x.a21) * y.a21 +
         std::conj(x.a22) * y.a22;
  return dot->real();
}

std::string format_cplx(cplx z) {
  auto clean = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", clean(z.real()), clean(z.imag()));
  return buf;
}

} // namespace

TermIndex TermIndex::from_array(const std::array<int, 8> &v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

double a1_angle(const WalkConfig &cfg) { return cfg.coin_x.phi0 + cfg.coin_y.zeta0; }
double a2_angle(const WalkConfig &cfg) { return cfg.coin_y.phi0 + cfg.coin_x.zeta0; }

Mat2 gamma_hat(const WalkConfig &cfg, int lx, int ly, int nx, int ny) {
  const CoinJet &cx = cfg.coin_x;
  const CoinJet &cy = cfg.coin_y;
  return rot(Axis::z, cx.zeta0) * sigma_power(Axis::z, lx) * sigma_power(Axis::y, nx) *
         rot(Axis::y, cx.theta0) * rot(Axis::z, cx.phi0) * rot(Axis::z, cy.zeta0) *
         sigma_power(Axis::z, ly) * sigma_power(Axis::y, ny) * rot(Axis::y, cy.theta0) *
         rot(Axis::z, cy.phi0);
}

RationalExp exponent_of(const TermIndex &t, const RationalExp &a, const RationalExp &b) {
  return t.sum_l() * a + t.sum_n() * b;
}

std::vector<TermIndex> enumerate_terms(const RationalExp &a, const RationalExp &b) {
  return enumerate_if(a, b, [](const RationalExp &f) { return f == RationalExp{1}; });
}

std::vector<TermIndex> enumerate_fractional(const RationalExp &a, const RationalExp &b) {
  return enumerate_if(a, b, [](const RationalExp &f) { return f > RationalExp{0} && f < RationalExp{1}; });
}

std::vector<TermGroup> group_terms(const WalkConfig &cfg, const std::vector<TermIndex> &terms,
                                   const RationalExp &a, const RationalExp &b) {
  using Key = std::tuple<RationalExp, int, int, int, int>;
  std::map<Key, TermGroup> groups;
  for (const auto &t : terms) {
    const Key key{exponent_of(t, a, b), t.l1x + t.l2x, t.l1y + t.l2y, t.n1x + t.n2x, t.n1y + t.n2y};
    auto [it, fresh] = groups.try_emplace(key);
    TermGroup &g = it->second;
    if (fresh) {
      g.order = std::get<0>(key);
      g.dx = std::get<1>(key);
      g.dy = std::get<2>(key);
      g.thx = std::get<3>(key);
      g.thy = std::get<4>(key);
      g.matrix = Mat2::zero();
    }
    long long denom = 1;
    for (int v : t.as_array()) {
      denom *= factorial(v);
    }
    g.matrix += (1.0 / static_cast<double>(denom)) *
                (gamma_hat(cfg, t.l1x, t.l1y, t.n1x, t.n1y) * gamma_hat(cfg, t.l2x, t.l2y, t.n2x, t.n2y));
    ++g.count;
  }
  std::vector<TermGroup> out;
  out.reserve(groups.size());
  for (auto &kv : groups) {
    out.push_back(kv.second);
  }
  return out;
}

DivergenceReport divergence_report(const WalkConfig &cfg, const RationalExp &a, const RationalExp &b) {
  require_plastic(cfg, "divergence_report");
  DivergenceReport rep;
  rep.groups = group_terms(cfg, enumerate_fractional(a, b), a, b);
  for (const auto &g : rep.groups) {
    rep.residual = std::max(rep.residual, op_norm(g.matrix));
  }
  return rep;
}

double divergence_residual(const WalkConfig &cfg, const RationalExp &a, const RationalExp &b) {
  return divergence_report(cfg, a, b).residual;
}

ConstraintReport check_spacetime_limit(const WalkConfig &cfg) {
  require_plastic(cfg, "check_spacetime_limit");
  ConstraintReport rep;
  const RationalExp &a = cfg.a_exp;
  const RationalExp &b = b_of(cfg);

  ConditionRecord branch{"theta_branch_plastic", false, 0.0, {}};
  long long m = 0;
  long long t = 0;
  branch.residual = plastic_branch_residual(cfg, &m, &t);
  branch.satisfied = branch.residual <= kAngleTol;
  if (branch.satisfied) {
    branch.witnesses = {{"m", m}, {"t", t}};
  }
  rep.conditions.push_back(branch);

  const bool exps_ok = a > RationalExp{0} && a <= RationalExp{1} && cfg.coin_y.b_exp == b;
  const auto order_one = exps_ok ? enumerate_terms(a, b) : std::vector<TermIndex>{};
  ConditionRecord matching{"exponent_matching", !order_one.empty(), order_one.empty() ? 1.0 : 0.0,
                           {{"terms", static_cast<long long>(order_one.size())}}};
  rep.conditions.push_back(matching);

  rep.conditions.push_back({"rational_exponents", exps_ok, exps_ok ? 0.0 : 1.0, {}});

  ConditionRecord div{"divergence", false, 0.0, {}};
  div.residual = exps_ok ? divergence_residual(cfg, a, b) : 0.0;
  div.satisfied = exps_ok && div.residual <= kDivergenceTol;
  rep.conditions.push_back(div);

  ConditionRecord zeroth{"zeroth_order_identity", false, 0.0, {}};
  const Mat2 g0 = gamma_hat(cfg, 0, 0, 0, 0);
  zeroth.residual = op_norm(std::polar(1.0, 2.0 * cfg.delta()) * (g0 * g0) - Mat2::identity());
  zeroth.satisfied = zeroth.residual <= kAngleTol;
  if (zeroth.satisfied) {
    long long p = 0;
    lattice_residual(-cfg.delta(), kPi / 2.0, &p);
    zeroth.witnesses = {{"p", p}};
  }
  rep.conditions.push_back(zeroth);

  rep.passed = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                           [](const ConditionRecord &c) { return c.satisfied; });
  return rep;
}

Mat2 raw_generator(const WalkConfig &cfg, double kx, double ky) {
  return pde_symbol(fold_groups(cfg, 1.0), kx, ky);
}

Mat2 numerical_generator(const WalkConfig &cfg, double kx, double ky) {
  const RationalExp &b = b_of(cfg);
  const long long big_l = std::lcm(cfg.a_exp.den(), b.den());
  constexpr int kLevels = 6;
  const double s0 = std::pow(0.04, 1.0 / static_cast<double>(big_l));
  // (W^2 - I)/(2 eps) = G + c1 s + c2 s^2 + ... with s = eps^(1/L)
  std::array<std::array<Mat2, kLevels>, kLevels> table{};
  for (int j = 0; j < kLevels; ++j) {
    const double s = s0 / static_cast<double>(1 << j);
    const double eps = std::pow(s, static_cast<double>(big_l));
    const Mat2 w = walk_k(cfg, kx, ky, eps);
    table[j][0] = (1.0 / (2.0 * eps)) * (w * w - Mat2::identity());
    double p = 1.0;
    for (int i = 1; i <= j; ++i) {
      p *= 2.0;
      table[j][i] = (1.0 / (p - 1.0)) * (p * table[j][i - 1] - table[j - 1][i - 1]);
    }
  }
  return table[kLevels - 1][kLevels - 1];
}

Calibration calibrate_prefactor(const WalkConfig &cfg, const std::vector<std::array<double, 2>> &momenta) {
  std::vector<Mat2> raw;
  std::vector<Mat2> num;
  cplx num_dot{0.0, 0.0};
  double den = 0.0;
  for (const auto &k : momenta) {
    raw.push_back(raw_generator(cfg, k[0], k[1]));
    num.push_back(numerical_generator(cfg, k[0], k[1]));
    cplx d;
    frob_dot_re(raw.back(), num.back(), &d);
    num_dot += d;
    cplx rr;
    den += frob_dot_re(raw.back(), raw.back(), &rr);
  }
  Calibration cal;
  if (den <= 1e-24) {
    return cal;
  }
  cal.value = num_dot / den;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double scale = frobenius_norm(cal.value * raw[i]);
    if (scale > 1e-12) {
      cal.spread = std::max(cal.spread, frobenius_norm(num[i] - cal.value * raw[i]) / scale);
    }
  }
  return cal;
}

SpacetimeHamiltonian spacetime_hamiltonian(const WalkConfig &cfg) {
  const ConstraintReport rep = check_spacetime_limit(cfg);
  if (const ConditionRecord *bad = rep.first_failure()) {
    throw ConstraintViolation(bad->name, "continuous spacetime limit does not exist: " + bad->name);
  }
  static const std::vector<std::array<double, 2>> samples{{0.7, -0.3}, {-1.1, 0.4}, {0.2, 0.9}, {1.3, 1.7}};
  SpacetimeHamiltonian h;
  h.calibration = calibrate_prefactor(cfg, samples);
  h.terms = fold_groups(cfg, h.calibration.value);
  return h;
}

std::vector<PdeTerm> spacetime_terms_unchecked(const WalkConfig &cfg) {
  return fold_groups(cfg, std::polar(1.0, 2.0 * cfg.delta()));
}

Mat2 pde_symbol(const std::vector<PdeTerm> &terms, double kx, double ky) {
  Mat2 g = Mat2::zero();
  for (const auto &t : terms) {
    g += (ipow(kI * kx, t.dx_power) * ipow(kI * ky, t.dy_power)) * t.coeff;
  }
  return g;
}

HalfHalfPde half_half_pde(const WalkConfig &cfg) {
  require_plastic(cfg, "half_half_pde");
  if (cfg.a_exp != kHalf || b_of(cfg) != kHalf || cfg.coin_y.b_exp != kHalf) {
    throw ConstraintViolation("rational_exponents", "half_half_pde: requires a = b = 1/2");
  }
  if (plastic_branch_residual(cfg, nullptr, nullptr) > kAngleTol) {
    throw ConstraintViolation("theta_branch_plastic", "half_half_pde: theta0 off branch");
  }
  if (lattice_residual(a1_angle(cfg), kPi / 2.0, nullptr) > kAngleTol ||
      lattice_residual(a2_angle(cfg), kPi / 2.0, nullptr) > kAngleTol) {
    throw ConstraintViolation("divergence", "half_half_pde: a1, a2 must be multiples of pi/2");
  }
  const CoinJet &cx = cfg.coin_x;
  const CoinJet &cy = cfg.coin_y;
  const Mat2 sz = pauli(Axis::z);
  const Mat2 szsy = sz * pauli(Axis::y);
  const Mat2 cross = rot(Axis::z, -2.0 * (cx.zeta0 + cy.zeta0 + cx.phi0));
  HalfHalfPde out;
  out.px = (kI * cx.theta1) * (sz * rot(Axis::z, 2.0 * (cy.phi0 + cx.zeta0))) +
           (kI * cy.theta1) * (szsy * cross);
  out.py = (kI * cy.theta1) * (szsy * rot(Axis::z, 2.0 * cy.phi0)) + (kI * cx.theta1) * (szsy * cross);
  return out;
}

HalfHalfPde half_half_pde_corrected(const WalkConfig &cfg) {
  require_plastic(cfg, "half_half_pde_corrected");
  if (cfg.a_exp != kHalf || b_of(cfg) != kHalf || cfg.coin_y.b_exp != kHalf) {
    throw ConstraintViolation("rational_exponents", "half_half_pde_corrected: requires a = b = 1/2");
  }
  const ConstraintReport rep = check_spacetime_limit(cfg);
  if (const ConditionRecord *bad = rep.first_failure()) {
    throw ConstraintViolation(bad->name, "half_half_pde_corrected: " + bad->name);
  }
  const CoinJet &cx = cfg.coin_x;
  const CoinJet &cy = cfg.coin_y;
  const double a1 = a1_angle(cfg);
  const Mat2 sz = pauli(Axis::z);
  const Mat2 sy = pauli(Axis::y);
  const cplx pref = 0.5 * kI * std::polar(1.0, 2.0 * cfg.delta());
  const Mat2 m_x = sz * rot(Axis::z, 2.0 * cx.zeta0) * sy;
  const Mat2 m_mix = sz * rot(Axis::z, 2.0 * cx.zeta0 + 2.0 * a1) * sy;
  const Mat2 m_y = sz * rot(Axis::z, 2.0 * a1 - 2.0 * cy.phi0) * sy;
  HalfHalfPde out;
  out.px = pref * (cx.theta1 * m_x + cy.theta1 * m_mix);
  out.py = pref * (cy.theta1 * m_mix + cx.theta1 * m_y);
  return out;
}

CrossTermReport cross_term_report(const WalkConfig &cfg) {
  const double tx = cfg.coin_x.theta0;
  const double ty = cfg.coin_y.theta0;
  const Mat2 za = rot(Axis::z, a1_angle(cfg));
  const Mat2 zb = rot(Axis::z, a2_angle(cfg));
  auto ry = [](double w) { return rot(Axis::y, w); };
  const Mat2 sum = ry(-tx) * za * ry(ty) * zb * ry(tx) + ry(-tx) * za * ry(-ty) * zb * ry(-tx) +
                   ry(tx) * za * ry(-ty) * zb * ry(tx) + ry(tx) * za * ry(ty) * zb * ry(-tx);
  CrossTermReport rep;
  rep.residual = op_norm(sum);
  rep.cancels = rep.residual <= 1e-12;
  return rep;
}

double cross_group_norm(const WalkConfig &cfg) {
  const auto groups = group_terms(cfg, enumerate_terms(kHalf, kHalf), kHalf, kHalf);
  for (const auto &g : groups) {
    if (g.dx == 1 && g.dy == 1 && g.thx == 0 && g.thy == 0) {
      return op_norm(g.matrix);
    }
  }
  return 0.0;
}

std::string render_pde(const std::vector<PdeTerm> &terms) {
  std::ostringstream os;
  os << "∂t Ψ =";
  if (terms.empty()) {
    os << " 0";
    return os.str();
  }
  bool first = true;
  for (const auto &t : terms) {
    os << (first ? " " : " + ");
    first = false;
    const Mat2 &m = t.coeff;
    os << '[' << format_cplx(m.a11) << ", " << format_cplx(m.a12) << "; " << format_cplx(m.a21)
       << ", " << format_cplx(m.a22) << ']';
    for (int i = 0; i < t.dx_power; ++i) {
      os << "∂x";
    }
    for (int i = 0; i < t.dy_power; ++i) {
      os << "∂y";
    }
    os << " Ψ";
  }
  return os.str();
}

} // namespace pqw
