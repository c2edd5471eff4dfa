#include "pqw/verify.hpp"

#include "pqw/limits.hpp"
#include "pqw/plastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pqw {

namespace {

// Below this the two evolutions agree to rounding and a log fit is meaningless.
constexpr double kFloor = 1e-14;

ConvergenceResult finish(std::vector<ConvergenceSample> samples) {
  ConvergenceResult res;
  res.samples = std::move(samples);
  const bool all_tiny = std::all_of(res.samples.begin(), res.samples.end(),
                                    [](const ConvergenceSample &s) { return s.error <= kFloor; });
  if (all_tiny) {
    res.exact = true;
    return res;
  }
  if (res.samples.size() >= 3 &&
      std::all_of(res.samples.begin(), res.samples.end(),
                  [](const ConvergenceSample &s) { return s.error > 0.0; })) {
    res.fit = fit_order(res.samples);
  }
  return res;
}

void check_eps(const std::vector<double> &eps_list) {
  if (eps_list.empty()) {
    throw std::invalid_argument("empty eps list");
  }
  for (double e : eps_list) {
    if (!(e > 0.0)) {
      throw std::invalid_argument("eps values must be positive");
    }
  }
}

} // namespace

bool ConvergenceResult::strictly_decreasing() const {
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].error < samples[i - 1].error)) {
      return false;
    }
  }
  return !samples.empty();
}

FitResult fit_order(const std::vector<ConvergenceSample> &samples) {
  if (samples.size() < 3) {
    throw std::invalid_argument("fit_order: need at least 3 samples");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(samples.size());
  for (const auto &s : samples) {
    if (!(s.error > 0.0) || !(s.eps > 0.0)) {
      throw std::invalid_argument("fit_order: errors and eps must be positive");
    }
    const double x = std::log(s.eps);
    const double y = std::log(s.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  FitResult f;
  const double var = sxx - sx * sx / n;
  f.slope = (sxy - sx * sy / n) / var;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (const auto &s : samples) {
    const double y = std::log(s.error);
    const double r = y - (f.intercept + f.slope * std::log(s.eps));
    ss_res += r * r;
    ss_tot += (y - mean) * (y - mean);
  }
  f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

std::vector<double> default_eps_list() {
  std::vector<double> out;
  for (int p = 6; p <= 12; ++p) {
    out.push_back(std::ldexp(1.0, -p));
  }
  return out;
}

ConvergenceResult time_convergence(const WalkConfig &cfg, double T, const KGrid &grid,
                                   const std::vector<double> &eps_list) {
  check_eps(eps_list);
  const TimeHamiltonian ham = time_hamiltonian(cfg);
  const int total = grid.nx * grid.ny;
  std::vector<ConvergenceSample> samples;
  for (double eps : eps_list) {
    const long long n = std::llround(T / (cfg.tau * eps));
    const long long steps = cfg.tau * n;
    const double t = static_cast<double>(steps) * eps;
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (int idx = 0; idx < total; ++idx) {
      const double kx = grid.kx(idx % grid.nx);
      const double ky = grid.ky(idx / grid.nx);
      const Mat2 w = power(walk_k(cfg, kx, ky, eps), steps);
      const Mat2 u = exp_herm(ham.symbol(kx, ky), t);
      worst = std::max(worst, op_norm(w - u));
    }
    samples.push_back({eps, worst});
  }
  return finish(std::move(samples));
}

ConvergenceResult spacetime_convergence(const WalkConfig &cfg, const GeneratorFn &generator, double T,
                                        const std::vector<std::array<double, 2>> &momenta,
                                        const std::vector<double> &eps_list) {
  check_eps(eps_list);
  const int total = static_cast<int>(momenta.size());
  std::vector<Mat2> gens;
  gens.reserve(momenta.size());
  for (const auto &k : momenta) {
    gens.push_back(generator(k[0], k[1]));
  }
  std::vector<ConvergenceSample> samples;
  for (double eps : eps_list) {
    const long long n = std::llround(T / (2.0 * eps));
    const double t = 2.0 * static_cast<double>(n) * eps;
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (int i = 0; i < total; ++i) {
      const Mat2 w = power(walk_k(cfg, momenta[i][0], momenta[i][1], eps), 2 * n);
      worst = std::max(worst, op_norm(w - expm(t * gens[i])));
    }
    samples.push_back({eps, worst});
  }
  return finish(std::move(samples));
}

ConvergenceResult spacetime_convergence(const WalkConfig &cfg, double T,
                                        const std::vector<std::array<double, 2>> &momenta,
                                        const std::vector<double> &eps_list) {
  const SpacetimeHamiltonian h = spacetime_hamiltonian(cfg);
  return spacetime_convergence(
      cfg, [&h](double kx, double ky) { return pde_symbol(h.terms, kx, ky); }, T, momenta, eps_list);
}

std::vector<DispersionPoint> dispersion(const WalkConfig &cfg, double eps, const KGrid &grid, int power_n) {
  if (power_n < 1) {
    throw std::invalid_argument("dispersion: power must be >= 1");
  }
  std::vector<DispersionPoint> out(grid.size());
  const int total = static_cast<int>(grid.size());
#pragma omp parallel for schedule(static)
  for (int idx = 0; idx < total; ++idx) {
    const double kx = grid.kx(idx % grid.nx);
    const double ky = grid.ky(idx / grid.nx);
    const Eigen2 e = eig2(power(walk_k(cfg, kx, ky, eps), power_n), MatrixKind::unitary);
    double p1 = std::arg(e.values[0]);
    double p2 = std::arg(e.values[1]);
    if (p1 > p2) {
      std::swap(p1, p2);
    }
    out[static_cast<std::size_t>(idx)] = {kx, ky, p1, p2};
  }
  return out;
}

} // namespace pqw
