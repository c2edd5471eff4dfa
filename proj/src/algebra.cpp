#include "pqw/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace pqw {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kDegenerateTol = 1e-10;

double norm2(const Vec2 &v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

Vec2 normalized(const Vec2 &v) {
  const double n = norm2(v);
  return {v[0] / n, v[1] / n};
}

// Eigenvector of m for eigenvalue lambda: take the better conditioned of the
// two rows of (m - lambda I).
Vec2 eigenvector_for(const Mat2 &m, cplx lambda) {
  const Vec2 from_row1{m.a12, lambda - m.a11};
  const Vec2 from_row2{lambda - m.a22, m.a21};
  const Vec2 &best = norm2(from_row1) >= norm2(from_row2) ? from_row1 : from_row2;
  return normalized(best);
}

} // namespace

Mat2 Mat2::inverse() const {
  const cplx d = det();
  if (std::abs(d) < 1e-300) {
    throw std::domain_error("Mat2::inverse: singular matrix");
  }
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

Mat2 &Mat2::operator+=(const Mat2 &o) {
  a11 += o.a11;
  a12 += o.a12;
  a21 += o.a21;
  a22 += o.a22;
  return *this;
}

Mat2 &Mat2::operator-=(const Mat2 &o) {
  a11 -= o.a11;
  a12 -= o.a12;
  a21 -= o.a21;
  a22 -= o.a22;
  return *this;
}

Mat2 &Mat2::operator*=(cplx s) {
  a11 *= s;
  a12 *= s;
  a21 *= s;
  a22 *= s;
  return *this;
}

Mat2 operator+(Mat2 a, const Mat2 &b) { return a += b; }
Mat2 operator-(Mat2 a, const Mat2 &b) { return a -= b; }
Mat2 operator-(const Mat2 &a) { return {-a.a11, -a.a12, -a.a21, -a.a22}; }

Mat2 operator*(const Mat2 &a, const Mat2 &b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2 operator*(cplx s, Mat2 a) { return a *= s; }
Mat2 operator*(Mat2 a, cplx s) { return a *= s; }

Vec2 operator*(const Mat2 &m, const Vec2 &v) {
  return {m.a11 * v[0] + m.a12 * v[1], m.a21 * v[0] + m.a22 * v[1]};
}

Mat2 pauli(Axis axis) {
  switch (axis) {
  case Axis::x:
    return {0.0, 1.0, 1.0, 0.0};
  case Axis::y:
    return {0.0, -kI, kI, 0.0};
  case Axis::z:
    return Mat2::diag(1.0, -1.0);
  }
  throw std::invalid_argument("pauli: bad axis");
}

Mat2 rot(Axis axis, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  switch (axis) {
  case Axis::x:
    return {c, -kI * s, -kI * s, c};
  case Axis::y:
    return {c, -s, s, c};
  case Axis::z:
    return Mat2::diag(std::polar(1.0, -angle / 2), std::polar(1.0, angle / 2));
  }
  throw std::invalid_argument("rot: bad axis");
}

PauliCoeffs pauli_decompose(const Mat2 &m) {
  return {(m.a11 + m.a22) / 2.0, (m.a12 + m.a21) / 2.0, kI * (m.a12 - m.a21) / 2.0,
          (m.a11 - m.a22) / 2.0};
}

Eigen2 eig2(const Mat2 &m, MatrixKind kind) {
  Eigen2 out;
  const cplx half_tr = m.trace() / 2.0;
  const cplx disc = std::sqrt(half_tr * half_tr - m.det());
  out.values = {half_tr + disc, half_tr - disc};

  const double scale = std::max(1.0, op_norm(m));
  if (std::abs(disc) <= kDegenerateTol * scale) {
    out.degenerate = true;
    const double off = std::max(std::abs(m.a12), std::abs(m.a21));
    if (kind != MatrixKind::general || off <= kDegenerateTol * scale) {
      out.values = {m.a11, m.a22};
      out.vectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
      return out;
    }
  }

  out.vectors[0] = eigenvector_for(m, out.values[0]);
  if (kind == MatrixKind::general) {
    out.vectors[1] = eigenvector_for(m, out.values[1]);
  } else {
    out.vectors[1] = {-std::conj(out.vectors[0][1]), std::conj(out.vectors[0][0])};
  }
  const cplx overlap = std::conj(out.vectors[0][0]) * out.vectors[1][0] +
                       std::conj(out.vectors[0][1]) * out.vectors[1][1];
  out.defective = std::abs(overlap) > 1.0 - kDegenerateTol;
  return out;
}

Mat2 exp_herm(const Mat2 &h, double t) {
  if (hermiticity_defect(h) > kHermitianTol) {
    throw std::invalid_argument("exp_herm: matrix is not Hermitian");
  }
  const PauliCoeffs p = pauli_decompose(h);
  const double h0 = p.h0.real();
  const double hx = p.hx.real();
  const double hy = p.hy.real();
  const double hz = p.hz.real();
  const double r = std::sqrt(hx * hx + hy * hy + hz * hz);
  const cplx phase = std::polar(1.0, -h0 * t);
  if (r == 0.0) {
    return phase * Mat2::identity();
  }
  const double c = std::cos(r * t);
  const double s = std::sin(r * t) / r;
  // cos(rt) I - i sin(rt) (h.sigma)/r
  const Mat2 u{c - kI * s * hz, -kI * s * cplx(hx, -hy), -kI * s * cplx(hx, hy), c + kI * s * hz};
  return phase * u;
}

Mat2 expm(const Mat2 &m) {
  // M = mu I + N with N traceless, N^2 = q I.
  const cplx mu = m.trace() / 2.0;
  const Mat2 n = m - mu * Mat2::identity();
  const cplx q = -n.det();
  const cplx s = std::sqrt(q);
  cplx cosh_s, sinhc_s;
  if (std::abs(s) < 1e-4) {
    // series for cosh(s) and sinh(s)/s in q = s^2
    cosh_s = 1.0 + q / 2.0 + q * q / 24.0 + q * q * q / 720.0;
    sinhc_s = 1.0 + q / 6.0 + q * q / 120.0 + q * q * q / 5040.0;
  } else {
    cosh_s = std::cosh(s);
    sinhc_s = std::sinh(s) / s;
  }
  return std::exp(mu) * (cosh_s * Mat2::identity() + sinhc_s * n);
}

double op_norm(const Mat2 &m) {
  const double f2 = std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) + std::norm(m.a22);
  const double d = std::abs(m.det());
  const double disc = std::max(0.0, f2 * f2 - 4.0 * d * d);
  return std::sqrt((f2 + std::sqrt(disc)) / 2.0);
}

double frobenius_norm(const Mat2 &m) {
  return std::sqrt(std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) + std::norm(m.a22));
}

Mat2 power(Mat2 m, long long n) {
  if (n < 0) {
    throw std::invalid_argument("power: negative exponent");
  }
  Mat2 acc = Mat2::identity();
  while (n > 0) {
    if (n & 1) {
      acc = acc * m;
    }
    n >>= 1;
    if (n > 0) {
      m = m * m;
    }
  }
  return acc;
}

Mat2 commutator(const Mat2 &a, const Mat2 &b) { return a * b - b * a; }
Mat2 anticommutator(const Mat2 &a, const Mat2 &b) { return a * b + b * a; }

double hermiticity_defect(const Mat2 &m) { return op_norm(m - m.adjoint()); }

double unitarity_defect(const Mat2 &m) { return op_norm(m.adjoint() * m - Mat2::identity()); }

bool is_finite(const Mat2 &m) {
  for (const cplx &z : {m.a11, m.a12, m.a21, m.a22}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      return false;
    }
  }
  return true;
}

} // namespace pqw
