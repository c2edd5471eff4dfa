#pragma once

#include <array>
#include <complex>
#include <numbers>

namespace pqw {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  cplx a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  cplx trace() const { return a11 + a22; }
  cplx det() const { return a11 * a22 - a12 * a21; }
  Mat2 adjoint() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
  }
  /// Throws std::domain_error when |det| underflows.
  Mat2 inverse() const;

  Mat2 &operator+=(const Mat2 &o);
  Mat2 &operator-=(const Mat2 &o);
  Mat2 &operator*=(cplx s);

  bool operator==(const Mat2 &) const = default;
};

Mat2 operator+(Mat2 a, const Mat2 &b);
Mat2 operator-(Mat2 a, const Mat2 &b);
Mat2 operator-(const Mat2 &a);
Mat2 operator*(const Mat2 &a, const Mat2 &b);
Mat2 operator*(cplx s, Mat2 a);
Mat2 operator*(Mat2 a, cplx s);

using Vec2 = std::array<cplx, 2>;
Vec2 operator*(const Mat2 &m, const Vec2 &v);

enum class Axis { x, y, z };

Mat2 pauli(Axis axis);

/// R_m(w) = exp(-i w sigma_m / 2). Every other module builds on this sign.
Mat2 rot(Axis axis, double angle);

/// Coefficients of M = h0 I + hx sx + hy sy + hz sz.
struct PauliCoeffs {
  cplx h0, hx, hy, hz;
};
PauliCoeffs pauli_decompose(const Mat2 &m);

enum class MatrixKind { unitary, hermitian, general };

struct Eigen2 {
  std::array<cplx, 2> values{};
  std::array<Vec2, 2> vectors{};
  bool degenerate = false;
  bool defective = false;
};

/// Closed-form eigendecomposition. For unitary and hermitian input the second
/// eigenvector is the orthogonal complement of the first. Degenerate normal
/// matrices return the canonical basis.
Eigen2 eig2(const Mat2 &m, MatrixKind kind);

/// exp(-i H t) for Hermitian H (tolerance 1e-10 on ||H - H^dagger||).
Mat2 exp_herm(const Mat2 &h, double t);

/// exp(M) for any 2x2 M.
Mat2 expm(const Mat2 &m);

/// Largest singular value.
double op_norm(const Mat2 &m);
double frobenius_norm(const Mat2 &m);

/// Non-negative integer power by repeated squaring.
Mat2 power(Mat2 m, long long n);

Mat2 commutator(const Mat2 &a, const Mat2 &b);
Mat2 anticommutator(const Mat2 &a, const Mat2 &b);

double hermiticity_defect(const Mat2 &m);
double unitarity_defect(const Mat2 &m);

bool is_finite(const Mat2 &m);

} // namespace pqw
