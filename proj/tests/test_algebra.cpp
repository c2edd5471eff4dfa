#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pqw/algebra.hpp"

using namespace pqw;

namespace {

double dist(const Mat2 &a, const Mat2 &b) { return op_norm(a - b); }

Vec2 sub(const Vec2 &a, const Vec2 &b) { return {a[0] - b[0], a[1] - b[1]}; }
double vnorm(const Vec2 &v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

void check_reconstruction(const Mat2 &m, MatrixKind kind) {
  const Eigen2 e = eig2(m, kind);
  for (int i = 0; i < 2; ++i) {
    CHECK(vnorm(e.vectors[i]) == doctest::Approx(1.0).epsilon(1e-12));
    const Vec2 mv = m * e.vectors[i];
    const Vec2 lv{e.values[i] * e.vectors[i][0], e.values[i] * e.vectors[i][1]};
    CHECK(vnorm(sub(mv, lv)) <= 1e-12);
  }
  const Mat2 v{e.vectors[0][0], e.vectors[1][0], e.vectors[0][1], e.vectors[1][1]};
  const Mat2 rebuilt = v * Mat2::diag(e.values[0], e.values[1]) * v.inverse();
  CHECK(dist(rebuilt, m) <= 1e-12);
}

} // namespace

TEST_CASE("pauli matrices") {
  CHECK(pauli(Axis::z) == Mat2::diag(1.0, -1.0));
  CHECK(pauli(Axis::y) == Mat2{0.0, -kI, kI, 0.0});
  CHECK(pauli(Axis::x) == Mat2{0.0, 1.0, 1.0, 0.0});
}

TEST_CASE("rotation examples") {
  CHECK(dist(rot(Axis::z, 0.0), Mat2::identity()) == 0.0);
  CHECK(dist(rot(Axis::y, kPi), Mat2{0.0, -1.0, 1.0, 0.0}) <= 1e-15);
  CHECK(dist(rot(Axis::z, 2 * kPi), -Mat2::identity()) <= 1e-15);
}

TEST_CASE("rotation matches series exponential of each generator") {
  const Axis axes[] = {Axis::x, Axis::y, Axis::z};
  const Mat2 gens[] = {oracle::kSx, oracle::kSy, oracle::kSz};
  for (int i = 0; i < 3; ++i) {
    for (int trial = 0; trial < 20; ++trial) {
      const double w = oracle::uniform(-10, 10);
      CHECK(dist(rot(axes[i], w), oracle::rotation(gens[i], w)) <= 1e-12);
    }
  }
}

TEST_CASE("rotation composition and unitarity closure") {
  const Axis axes[] = {Axis::x, Axis::y, Axis::z};
  Mat2 acc = Mat2::identity();
  for (int trial = 0; trial < 1000; ++trial) {
    const Axis ax = axes[oracle::uniform_int(0, 2)];
    const double w1 = oracle::uniform(-10, 10);
    const double w2 = oracle::uniform(-10, 10);
    CHECK(dist(rot(ax, w1) * rot(ax, w2), rot(ax, w1 + w2)) <= 1e-12);
    CHECK(std::abs(rot(ax, w1).det() - 1.0) <= 1e-13);
    acc = acc * rot(ax, w1) * pauli(axes[trial % 3]);
  }
  CHECK(unitarity_defect(acc) <= 1e-12);
}

TEST_CASE("determinant is multiplicative") {
  for (int trial = 0; trial < 200; ++trial) {
    const Mat2 a = oracle::random_matrix();
    const Mat2 b = oracle::random_matrix();
    const cplx lhs = (a * b).det();
    const cplx rhs = a.det() * b.det();
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("eig2 examples") {
  const Eigen2 z = eig2(pauli(Axis::z), MatrixKind::hermitian);
  CHECK(std::abs(z.values[0] - 1.0) <= 1e-15);
  CHECK(std::abs(z.values[1] + 1.0) <= 1e-15);
  CHECK(std::abs(std::abs(z.vectors[0][0]) - 1.0) <= 1e-15);
  CHECK(std::abs(std::abs(z.vectors[1][1]) - 1.0) <= 1e-15);

  const double phi = 0.83;
  const Eigen2 r = eig2(rot(Axis::z, phi), MatrixKind::unitary);
  const cplx e1 = std::polar(1.0, -phi / 2);
  const cplx e2 = std::polar(1.0, phi / 2);
  const bool ordered = std::abs(r.values[0] - e1) < 1e-13 && std::abs(r.values[1] - e2) < 1e-13;
  const bool swapped = std::abs(r.values[0] - e2) < 1e-13 && std::abs(r.values[1] - e1) < 1e-13;
  CHECK((ordered || swapped));
}

TEST_CASE("eig2 reconstruction on random unitary and Hermitian matrices") {
  for (int trial = 0; trial < 1000; ++trial) {
    check_reconstruction(oracle::random_unitary(), MatrixKind::unitary);
    check_reconstruction(oracle::random_hermitian(), MatrixKind::hermitian);
  }
}

TEST_CASE("eig2 degenerate and defective inputs") {
  const Eigen2 id = eig2(Mat2::identity(), MatrixKind::unitary);
  CHECK(id.degenerate);
  CHECK_FALSE(id.defective);
  CHECK(id.vectors[0] == Vec2{1.0, 0.0});
  CHECK(id.vectors[1] == Vec2{0.0, 1.0});

  const Eigen2 jordan = eig2(Mat2{1.0, 1.0, 0.0, 1.0}, MatrixKind::general);
  CHECK(jordan.degenerate);
  CHECK(jordan.defective);

  check_reconstruction(Mat2{2.0, 1.0, 0.5, -1.0}, MatrixKind::general);
}

TEST_CASE("exp_herm examples and series oracle") {
  CHECK(dist(exp_herm(Mat2::zero(), 3.7), Mat2::identity()) == 0.0);
  CHECK(dist(exp_herm(pauli(Axis::z), kPi / 2), Mat2::diag(-kI, kI)) <= 1e-15);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat2 h = oracle::random_hermitian();
    const Mat2 ref = oracle::taylor_expm(oracle::scale(h, cplx(0, -0.7)));
    CHECK(dist(exp_herm(h, 0.7), ref) <= 1e-12);
  }
}

TEST_CASE("exp_herm group property and rejection") {
  for (int trial = 0; trial < 200; ++trial) {
    const Mat2 h = oracle::random_hermitian();
    const double t1 = oracle::uniform(-3, 3);
    const double t2 = oracle::uniform(-3, 3);
    CHECK(dist(exp_herm(h, t1) * exp_herm(h, t2), exp_herm(h, t1 + t2)) <= 1e-11);
    CHECK(unitarity_defect(exp_herm(h, t1)) <= 1e-12);
  }
  CHECK_THROWS_AS(exp_herm(Mat2{0.0, 1.0, 0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("expm matches series oracle for general matrices") {
  for (int trial = 0; trial < 200; ++trial) {
    const Mat2 m = oracle::random_matrix();
    const Mat2 ref = oracle::taylor_expm(m);
    CHECK(dist(expm(m), ref) <= 1e-11 * std::max(1.0, op_norm(ref)));
  }
  const Mat2 nil{0.0, 1.0, 0.0, 0.0};
  CHECK(dist(expm(nil), Mat2{1.0, 1.0, 0.0, 1.0}) <= 1e-15);
}

TEST_CASE("op_norm examples and unitary invariance") {
  CHECK(op_norm(Mat2::identity()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(op_norm(pauli(Axis::y)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(op_norm(Mat2::diag(2.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
  for (int trial = 0; trial < 200; ++trial) {
    const Mat2 m = oracle::random_matrix();
    const Mat2 u = oracle::random_unitary();
    const Mat2 v = oracle::random_unitary();
    CHECK(std::abs(op_norm(u * m * v) - op_norm(m)) <= 1e-13 * std::max(1.0, op_norm(m)));
    // sigma_max^2 is the top eigenvalue of M^dagger M
    const Eigen2 e = eig2(m.adjoint() * m, MatrixKind::hermitian);
    const double top = std::max(e.values[0].real(), e.values[1].real());
    CHECK(op_norm(m) == doctest::Approx(std::sqrt(top)).epsilon(1e-12));
  }
}

TEST_CASE("power by squaring") {
  const Mat2 m = oracle::random_unitary();
  Mat2 naive = Mat2::identity();
  for (int n = 0; n < 40; ++n) {
    CHECK(dist(power(m, n), naive) <= 1e-12);
    naive = naive * m;
  }
  CHECK_THROWS_AS(power(m, -1), std::invalid_argument);
}

TEST_CASE("inverse and pauli decomposition") {
  const Mat2 m = oracle::random_matrix();
  CHECK(dist(m * m.inverse(), Mat2::identity()) <= 1e-12);
  CHECK_THROWS_AS(Mat2::zero().inverse(), std::domain_error);
  const PauliCoeffs p = pauli_decompose(m);
  const Mat2 back = p.h0 * Mat2::identity() + p.hx * pauli(Axis::x) + p.hy * pauli(Axis::y) + p.hz * pauli(Axis::z);
  CHECK(dist(back, m) <= 1e-14);
}
