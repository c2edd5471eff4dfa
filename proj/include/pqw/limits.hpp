#pragma once

#include "pqw/algebra.hpp"
#include "pqw/coinwalk.hpp"
#include "pqw/lattice.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqw {

struct ConditionRecord {
  std::string name;
  bool satisfied = false;
  double residual = 0.0;
  std::map<std::string, long long> witnesses;
};

struct ConstraintReport {
  bool passed = false;
  std::vector<ConditionRecord> conditions;

  const ConditionRecord *find(const std::string &name) const;
  /// First failing condition, or nullptr.
  const ConditionRecord *first_failure() const;
  std::optional<long long> witness(const std::string &name) const;
};

/// A limit was requested for a configuration that does not admit it.
class ConstraintViolation : public std::runtime_error {
public:
  ConstraintViolation(std::string condition, const std::string &what)
      : std::runtime_error(what), condition_(std::move(condition)) {}
  const std::string &condition() const { return condition_; }

private:
  std::string condition_;
};

/// Distance of x/period from the nearest integer, scaled back by period.
/// Writes the nearest integer to *n.
double lattice_residual(double x, double period, long long *n);

/// Conditions "theta_branch", "delta_condition" and "tau_even".
/// Throws std::invalid_argument for plastic-mode configs.
ConstraintReport check_time_limit(const WalkConfig &cfg, int l = 0);

/// Residual of the theta branch for a given nu; fills m and t.
double theta_branch_residual(const WalkConfig &cfg, int nu, long long *m, long long *t);

struct ConstraintGradient {
  double dkx;
  double dky;
};

/// W1 cos g - W2 cos h - cos(2 pi l / tau - delta).
double constraint_f(const WalkConfig &cfg, double kx, double ky, int l = 0);
ConstraintGradient constraint_f_gradient(const WalkConfig &cfg, double kx, double ky);

/// max over the grid of |lambda^tau - 1| for eigenvalues of e^{i delta} A(k).
double roots_of_unity_residual(const WalkConfig &cfg, const KGrid &grid);

/// max over the grid of ||(e^{i delta} A(k))^tau_odd - I||.
double odd_tau_gap(const WalkConfig &cfg, int tau_odd, const KGrid &grid);

/// Closed form of {A, B} on branch nu. Throws ConstraintViolation off-branch.
Mat2 anticommutator_AB(const WalkConfig &cfg, double kx, double ky, int nu);

struct HamiltonianTerm {
  int px = 0;
  int py = 0;
  Mat2 coeff;
};

/// The four shift-word terms on branch nu, without checking the config.
std::vector<HamiltonianTerm> hamiltonian_terms(const WalkConfig &cfg, int nu);

/// sum_j exp(i (px kx + py ky) dx sigma_z) coeff_j
Mat2 hamiltonian_symbol(const std::vector<HamiltonianTerm> &terms, double kx, double ky,
                        double delta_spatial = 1.0);

struct TimeHamiltonian {
  int nu = 0;
  double delta_spatial = 1.0;
  std::vector<HamiltonianTerm> terms;

  Mat2 symbol(double kx, double ky) const {
    return hamiltonian_symbol(terms, kx, ky, delta_spatial);
  }
};

/// Lattice Hamiltonian of the continuous-time limit. Throws ConstraintViolation
/// naming the first failed condition.
TimeHamiltonian time_hamiltonian(const WalkConfig &cfg);

/// Real-space application: sum_j S^{(px,py)} (coeff_j psi).
SpinorField apply_hamiltonian(const SpinorField &f, const std::vector<HamiltonianTerm> &terms);

} // namespace pqw
