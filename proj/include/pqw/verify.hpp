#pragma once

#include "pqw/algebra.hpp"
#include "pqw/coinwalk.hpp"

#include <array>
#include <functional>
#include <vector>

namespace pqw {

struct ConvergenceSample {
  double eps = 0.0;
  double error = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceSample> samples;
  FitResult fit;
  /// true when every error sits at or below the floating floor and no fit was made
  bool exact = false;

  bool strictly_decreasing() const;
};

/// Least squares on (log eps, log error). Needs >= 3 samples with positive errors.
FitResult fit_order(const std::vector<ConvergenceSample> &samples);

/// 2^-6 ... 2^-12
std::vector<double> default_eps_list();

/// Sup over the grid of ||W(k)^{tau n} - exp(-i H(k) tau n eps)||, n = round(T/(tau eps)).
/// Throws ConstraintViolation when the time limit does not exist.
ConvergenceResult time_convergence(const WalkConfig &cfg, double T, const KGrid &grid,
                                   const std::vector<double> &eps_list);

using GeneratorFn = std::function<Mat2(double kx, double ky)>;

/// Sup over physical momenta of ||W(kappa, eps)^{2n} - exp(G(kappa) 2 n eps)||,
/// n = round(T/(2 eps)); the walk uses spacing eps^a.
ConvergenceResult spacetime_convergence(const WalkConfig &cfg, const GeneratorFn &generator, double T,
                                        const std::vector<std::array<double, 2>> &momenta,
                                        const std::vector<double> &eps_list);

/// Uses the assembled spacetime generator of cfg.
ConvergenceResult spacetime_convergence(const WalkConfig &cfg, double T,
                                        const std::vector<std::array<double, 2>> &momenta,
                                        const std::vector<double> &eps_list);

struct DispersionPoint {
  double kx = 0.0;
  double ky = 0.0;
  double phase1 = 0.0;
  double phase2 = 0.0;
};

/// Eigenphases of W(k)^power in (-pi, pi], sorted ascending per k.
std::vector<DispersionPoint> dispersion(const WalkConfig &cfg, double eps, const KGrid &grid,
                                        int power = 1);

} // namespace pqw
