#include "pqw/lattice.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pqw {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr char kMagic[4] = {'P', 'Q', 'W', 'F'};

int wrap(int i, int n) { return ((i % n) + n) % n; }

void transform(const SpinorField &in, SpinorField &out, int sign) {
  const int nx = in.nx();
  const int ny = in.ny();
  const std::size_t n = in.sites();
  auto *buf = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n));
  if (buf == nullptr) {
    throw std::bad_alloc();
  }
  // rows are m (slow), columns l (fast): dims {ny, nx}
  fftw_plan plan = fftw_plan_dft_2d(ny, nx, buf, buf, sign, FFTW_ESTIMATE);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      buf[i][0] = in[i][c].real();
      buf[i][1] = in[i][c].imag();
    }
    fftw_execute(plan);
    for (std::size_t i = 0; i < n; ++i) {
      out[i][c] = cplx(buf[i][0], buf[i][1]);
    }
  }
  fftw_destroy_plan(plan);
  fftw_free(buf);
}

template <typename T> void put_le(std::ostream &out, T v) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  out.write(reinterpret_cast<const char *>(bytes), sizeof(T));
}

template <typename T> T get_le(std::istream &in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char *>(bytes), sizeof(T))) {
    throw std::runtime_error("read_binary: truncated input");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

} // namespace

SpinorField::SpinorField(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 2 || ny < 2) {
    throw std::invalid_argument("SpinorField: Nx and Ny must be >= 2");
  }
  data_.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), Vec2{0.0, 0.0});
}

std::size_t SpinorField::index(int l, int m) const {
  return static_cast<std::size_t>(wrap(m, ny_)) * static_cast<std::size_t>(nx_) +
         static_cast<std::size_t>(wrap(l, nx_));
}

double SpinorField::norm_squared() const {
  double s = 0.0;
  for (const Vec2 &v : data_) {
    s += std::norm(v[0]) + std::norm(v[1]);
  }
  return s;
}

void SpinorField::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) {
    throw std::domain_error("normalize: zero field");
  }
  for (Vec2 &v : data_) {
    v[0] /= n;
    v[1] /= n;
  }
}

SpinorField SpinorField::plane_wave(int nx, int ny, double kx, double ky, const Vec2 &spinor) {
  SpinorField f(nx, ny);
  for (int m = 0; m < ny; ++m) {
    for (int l = 0; l < nx; ++l) {
      const cplx ph = std::polar(1.0, kx * l + ky * m);
      f.at(l, m) = {ph * spinor[0], ph * spinor[1]};
    }
  }
  return f;
}

SpinorField shift(const SpinorField &f, ShiftAxis axis) {
  SpinorField out(f.nx(), f.ny());
  const int dl = axis == ShiftAxis::x ? 1 : 0;
  const int dm = axis == ShiftAxis::y ? 1 : 0;
  for (int m = 0; m < f.ny(); ++m) {
    for (int l = 0; l < f.nx(); ++l) {
      out.at(l, m) = {f.at(l + dl, m + dm)[0], f.at(l - dl, m - dm)[1]};
    }
  }
  return out;
}

SpinorField shift_power(const SpinorField &f, int px, int py) {
  SpinorField out(f.nx(), f.ny());
  for (int m = 0; m < f.ny(); ++m) {
    for (int l = 0; l < f.nx(); ++l) {
      out.at(l, m) = {f.at(l + px, m + py)[0], f.at(l - px, m - py)[1]};
    }
  }
  return out;
}

SpinorField apply_matrix(const SpinorField &f, const Mat2 &c) {
  SpinorField out(f.nx(), f.ny());
  for (std::size_t i = 0; i < f.sites(); ++i) {
    out[i] = c * f[i];
  }
  return out;
}

SpinorField apply_coin(const SpinorField &f, const Mat2 &c) {
  if (unitarity_defect(c) > kUnitaryTol) {
    throw std::invalid_argument("apply_coin: coin is not unitary");
  }
  return apply_matrix(f, c);
}

SpinorField step(const SpinorField &f, const WalkConfig &cfg, double eps) {
  const SpinorField vy = shift(apply_coin(f, coin_at(cfg.coin_y, eps)), ShiftAxis::y);
  return shift(apply_coin(vy, coin_at(cfg.coin_x, eps)), ShiftAxis::x);
}

SpinorField dft(const SpinorField &f) {
  SpinorField out(f.nx(), f.ny());
  transform(f, out, FFTW_FORWARD);
  return out;
}

SpinorField idft(const SpinorField &fk) {
  SpinorField out(fk.nx(), fk.ny());
  transform(fk, out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(fk.sites());
  for (std::size_t i = 0; i < out.sites(); ++i) {
    out[i][0] *= scale;
    out[i][1] *= scale;
  }
  return out;
}

SpinorField evolve_by_symbol(const SpinorField &f, const Symbol &symbol, double t, SymbolMode mode) {
  SpinorField fk = dft(f);
  for (int j = 0; j < f.ny(); ++j) {
    const double ky = grid_momentum(j, f.ny());
    for (int i = 0; i < f.nx(); ++i) {
      const double kx = grid_momentum(i, f.nx());
      const Mat2 s = symbol(kx, ky);
      const Mat2 u = mode == SymbolMode::hamiltonian ? exp_herm(s, t) : expm(t * s);
      fk.at(i, j) = u * fk.at(i, j);
    }
  }
  return idft(fk);
}

void write_csv(const SpinorField &f, std::ostream &out) {
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out << "l,m,re_L,im_L,re_R,im_R\n" << std::setprecision(17);
  for (int m = 0; m < f.ny(); ++m) {
    for (int l = 0; l < f.nx(); ++l) {
      const Vec2 &v = f.at(l, m);
      out << l << ',' << m << ',' << v[0].real() << ',' << v[0].imag() << ',' << v[1].real() << ','
          << v[1].imag() << '\n';
    }
  }
  out.flags(old_flags);
  out.precision(old_prec);
}

void write_binary(const SpinorField &f, std::ostream &out) {
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.nx()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.ny()));
  for (std::size_t i = 0; i < f.sites(); ++i) {
    put_le(out, f[i][0].real());
    put_le(out, f[i][0].imag());
    put_le(out, f[i][1].real());
    put_le(out, f[i][1].imag());
  }
}

SpinorField read_binary(std::istream &in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("read_binary: bad magic");
  }
  const auto nx = get_le<std::uint32_t>(in);
  const auto ny = get_le<std::uint32_t>(in);
  SpinorField f(static_cast<int>(nx), static_cast<int>(ny));
  for (std::size_t i = 0; i < f.sites(); ++i) {
    const double lr = get_le<double>(in);
    const double li = get_le<double>(in);
    const double rr = get_le<double>(in);
    const double ri = get_le<double>(in);
    f[i] = {cplx(lr, li), cplx(rr, ri)};
  }
  return f;
}

} // namespace pqw
