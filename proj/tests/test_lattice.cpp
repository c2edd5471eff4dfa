#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pqw/lattice.hpp"

#include <sstream>

using namespace pqw;

namespace {

SpinorField random_field(int nx, int ny) {
  SpinorField f(nx, ny);
  for (std::size_t i = 0; i < f.sites(); ++i) {
    f[i] = {cplx(oracle::normal(), oracle::normal()), cplx(oracle::normal(), oracle::normal())};
  }
  f.normalize();
  return f;
}

double field_dist(const SpinorField &a, const SpinorField &b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.sites(); ++i) {
    worst = std::max({worst, std::abs(a[i][0] - b[i][0]), std::abs(a[i][1] - b[i][1])});
  }
  return worst;
}

bool identical(const SpinorField &a, const SpinorField &b) {
  for (std::size_t i = 0; i < a.sites(); ++i) {
    if (a[i] != b[i]) {
      return false;
    }
  }
  return true;
}

WalkConfig random_cfg() {
  WalkConfig cfg;
  cfg.coin_x = CoinJet::time_mode(oracle::uniform(-3, 3), oracle::uniform(-3, 3), oracle::normal(),
                                  oracle::uniform(-3, 3), oracle::normal(), oracle::uniform(-3, 3), oracle::normal());
  cfg.coin_y = CoinJet::time_mode(oracle::uniform(-3, 3), oracle::uniform(-3, 3), oracle::normal(),
                                  oracle::uniform(-3, 3), oracle::normal(), oracle::uniform(-3, 3), oracle::normal());
  return cfg;
}

} // namespace

TEST_CASE("field construction") {
  CHECK_THROWS_AS(SpinorField(1, 4), std::invalid_argument);
  SpinorField f(4, 3);
  f.at(-1, 5) = {1.0, 0.0};
  CHECK(f.at(3, 2)[0] == cplx(1.0));
  CHECK_THROWS_AS(SpinorField(2, 2).normalize(), std::domain_error);
}

TEST_CASE("spin-dependent shift") {
  SpinorField f(8, 4);
  f.at(3, 0) = {1.0, 0.0};
  SpinorField s = shift(f, ShiftAxis::x);
  CHECK(s.at(2, 0)[0] == cplx(1.0));
  CHECK(s.norm_squared() == 1.0);

  SpinorField g(8, 4);
  g.at(3, 0) = {0.0, 1.0};
  CHECK(shift(g, ShiftAxis::x).at(4, 0)[1] == cplx(1.0));

  SpinorField h(8, 4);
  h.at(1, 1) = {1.0, 0.0};
  CHECK(shift(h, ShiftAxis::y).at(1, 0)[0] == cplx(1.0));

  SpinorField uni(8, 4);
  for (std::size_t i = 0; i < uni.sites(); ++i) {
    uni[i] = {0.3, cplx(0, 0.2)};
  }
  CHECK(identical(shift(uni, ShiftAxis::x), uni));
  CHECK(identical(shift(uni, ShiftAxis::y), uni));
}

TEST_CASE("shifts invert exactly") {
  const SpinorField f = random_field(6, 5);
  CHECK(identical(shift_power(shift(f, ShiftAxis::x), -1, 0), f));
  CHECK(identical(shift_power(shift(f, ShiftAxis::y), 0, -1), f));
  CHECK(identical(shift_power(f, 2, -3), shift(shift(shift_power(f, 0, -3), ShiftAxis::x), ShiftAxis::x)));
}

TEST_CASE("coin application") {
  const SpinorField f = random_field(5, 4);
  CHECK(identical(apply_coin(f, Mat2::identity()), f));
  const SpinorField sw = apply_coin(f, pauli(Axis::x));
  for (std::size_t i = 0; i < f.sites(); ++i) {
    CHECK(sw[i][0] == f[i][1]);
    CHECK(sw[i][1] == f[i][0]);
  }
  const SpinorField r = apply_coin(f, oracle::random_unitary());
  CHECK(std::abs(r.norm_squared() - f.norm_squared()) <= 1e-13);
  CHECK_THROWS_AS(apply_coin(f, Mat2::diag(2.0, 1.0)), std::invalid_argument);
}

TEST_CASE("identity coins transport by one site per axis") {
  WalkConfig id;
  SpinorField f(8, 8);
  f.at(4, 4) = {1.0, 0.0};
  f.at(2, 2) = {0.0, 1.0};
  const SpinorField s = step(f, id, 0.1);
  // L moves to lower indices, R to higher, on both axes
  CHECK(s.at(3, 3) == Vec2{1.0, 1.0});
  CHECK(s.norm_squared() == 2.0);
}

TEST_CASE("norm conservation over 1000 steps") {
  const WalkConfig cfg = random_cfg();
  SpinorField f = random_field(16, 16);
  for (int i = 0; i < 1000; ++i) {
    f = step(f, cfg, 0.05);
  }
  CHECK(std::abs(f.norm_squared() - 1.0) <= 1e-12);
}

TEST_CASE("plane waves see the Fourier-space walk matrix") {
  for (int trial = 0; trial < 10; ++trial) {
    const WalkConfig cfg = random_cfg();
    const int n = 16;
    const double kx = grid_momentum(oracle::uniform_int(0, n - 1), n);
    const double ky = grid_momentum(oracle::uniform_int(0, n - 1), n);
    const Vec2 spinor{cplx(oracle::normal(), oracle::normal()), cplx(oracle::normal(), oracle::normal())};
    const double eps = 0.03;
    const SpinorField out = step(SpinorField::plane_wave(n, n, kx, ky, spinor), cfg, eps);
    const SpinorField expect = SpinorField::plane_wave(n, n, kx, ky, walk_k(cfg, kx, ky, eps) * spinor);
    CHECK(field_dist(out, expect) <= 1e-10);
  }
}

TEST_CASE("dft conventions") {
  SpinorField uni(8, 4);
  for (std::size_t i = 0; i < uni.sites(); ++i) {
    uni[i] = {1.0, 2.0};
  }
  const SpinorField uk = dft(uni);
  CHECK(std::abs(uk.at(0, 0)[0] - 32.0) <= 1e-12);
  CHECK(std::abs(uk.at(0, 0)[1] - 64.0) <= 1e-12);
  CHECK(uk.norm_squared() == doctest::Approx(32.0 * 32.0 * 5.0));

  SpinorField delta(8, 4);
  delta.at(0, 0) = {1.0, 0.0};
  const SpinorField dk = dft(delta);
  for (std::size_t i = 0; i < dk.sites(); ++i) {
    CHECK(std::abs(dk[i][0] - 1.0) <= 1e-14);
  }

  // kernel sign: a site at l = 1 picks up exp(-i kx)
  SpinorField one(8, 4);
  one.at(1, 0) = {1.0, 0.0};
  const SpinorField ok = dft(one);
  CHECK(std::abs(ok.at(1, 0)[0] - std::polar(1.0, -2 * kPi / 8)) <= 1e-14);
}

TEST_CASE("dft roundtrip and Parseval") {
  const SpinorField f = random_field(16, 8);
  CHECK(field_dist(idft(dft(f)), f) <= 1e-12);
  CHECK(dft(f).norm_squared() / f.sites() == doctest::Approx(f.norm_squared()).epsilon(1e-12));
}

TEST_CASE("Fourier consistency of a walk step") {
  for (int trial = 0; trial < 3; ++trial) {
    const WalkConfig cfg = random_cfg();
    const SpinorField f = random_field(32, 32);
    const double eps = 0.02;
    const SpinorField lhs = dft(step(f, cfg, eps));
    SpinorField rhs = dft(f);
    for (int j = 0; j < 32; ++j) {
      for (int i = 0; i < 32; ++i) {
        rhs.at(i, j) = walk_k(cfg, grid_momentum(i, 32), grid_momentum(j, 32), eps) * rhs.at(i, j);
      }
    }
    CHECK(field_dist(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("evolution by a symbol") {
  const SpinorField f = random_field(8, 8);
  const Symbol zero = [](double, double) { return Mat2::zero(); };
  CHECK(field_dist(evolve_by_symbol(f, zero, 2.0), f) <= 1e-14);

  const double c = 0.7;
  const double t = 1.3;
  const Symbol z = [c](double, double) { return c * pauli(Axis::z); };
  const SpinorField g = evolve_by_symbol(f, z, t);
  for (std::size_t i = 0; i < f.sites(); ++i) {
    CHECK(std::abs(g[i][0] - std::polar(1.0, -c * t) * f[i][0]) <= 1e-13);
    CHECK(std::abs(g[i][1] - std::polar(1.0, c * t) * f[i][1]) <= 1e-13);
  }

  const Symbol bad = [](double, double) { return Mat2{0.0, 1.0, 0.0, 0.0}; };
  CHECK_THROWS_AS(evolve_by_symbol(f, bad, 1.0), std::invalid_argument);

  // generator mode: exp(G t) with G = i k_x sigma_z is a translation
  const Symbol gen = [](double kx, double) { return (kI * kx) * pauli(Axis::z); };
  SpinorField d(8, 8);
  d.at(3, 3) = {1.0, 1.0};
  const SpinorField moved = evolve_by_symbol(d, gen, 1.0, SymbolMode::generator);
  CHECK(field_dist(moved, shift_power(d, 1, 0)) <= 1e-12);
}

TEST_CASE("symbol evolution matches a dense per-k product on plane waves") {
  const Mat2 h0 = oracle::random_hermitian();
  const Symbol sym = [h0](double kx, double ky) {
    return h0 + std::cos(kx) * pauli(Axis::x) + std::sin(ky) * pauli(Axis::y);
  };
  const double t = 0.9;
  for (int trial = 0; trial < 5; ++trial) {
    const double kx = grid_momentum(oracle::uniform_int(0, 15), 16);
    const double ky = grid_momentum(oracle::uniform_int(0, 15), 16);
    const Vec2 sp{1.0, cplx(0.3, -0.4)};
    const SpinorField out = evolve_by_symbol(SpinorField::plane_wave(16, 16, kx, ky, sp), sym, t);
    const Mat2 u = oracle::taylor_expm(oracle::scale(sym(kx, ky), cplx(0, -t)));
    CHECK(field_dist(out, SpinorField::plane_wave(16, 16, kx, ky, u * sp)) <= 1e-12);
  }
}

TEST_CASE("csv and binary snapshots") {
  const SpinorField f = random_field(3, 2);
  std::ostringstream csv;
  write_csv(f, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "l,m,re_L,im_L,re_R,im_R");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row)) {
    ++rows;
  }
  CHECK(rows == 6);

  std::stringstream bin;
  write_binary(f, bin);
  CHECK(bin.str().size() == 4 + 8 + 6 * 32);
  CHECK(bin.str().substr(0, 4) == "PQWF");
  const SpinorField back = read_binary(bin);
  CHECK(back.nx() == 3);
  CHECK(back.ny() == 2);
  CHECK(identical(back, f));

  std::istringstream junk("XXXX");
  CHECK_THROWS(read_binary(junk));
}
