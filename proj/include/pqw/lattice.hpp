#pragma once

#include "pqw/algebra.hpp"
#include "pqw/coinwalk.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace pqw {

/// Two-component field on a periodic Nx x Ny torus. Site (l, m) lives at
/// index m*Nx + l. The same type holds k-space data, with index (i, j)
/// carrying momentum (grid_momentum(i, Nx), grid_momentum(j, Ny)).
class SpinorField {
public:
  SpinorField(int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t sites() const { return data_.size(); }

  Vec2 &at(int l, int m) { return data_[index(l, m)]; }
  const Vec2 &at(int l, int m) const { return data_[index(l, m)]; }
  Vec2 &operator[](std::size_t i) { return data_[i]; }
  const Vec2 &operator[](std::size_t i) const { return data_[i]; }

  double norm_squared() const;
  void normalize();

  static SpinorField plane_wave(int nx, int ny, double kx, double ky, const Vec2 &spinor);

private:
  std::size_t index(int l, int m) const;

  int nx_;
  int ny_;
  std::vector<Vec2> data_;
};

enum class ShiftAxis { x, y };

/// Output L at l reads input L at l+1, output R at l reads input R at l-1.
SpinorField shift(const SpinorField &f, ShiftAxis axis);
/// |p| applications of shift (inverse direction for p < 0).
SpinorField shift_power(const SpinorField &f, int px, int py);

/// Rejects non-unitary coins (tolerance 1e-10).
SpinorField apply_coin(const SpinorField &f, const Mat2 &c);
SpinorField apply_matrix(const SpinorField &f, const Mat2 &c);

/// One walk step W = V_x V_y with V = S C; V_y acts first.
SpinorField step(const SpinorField &f, const WalkConfig &cfg, double eps);

/// Forward transform, kernel exp(-i(kx l + ky m)), unnormalized.
SpinorField dft(const SpinorField &f);
/// Inverse transform with 1/(Nx Ny).
SpinorField idft(const SpinorField &fk);

using Symbol = std::function<Mat2(double kx, double ky)>;

enum class SymbolMode {
  hamiltonian, ///< apply exp(-i H(k) t); H must be Hermitian
  generator,   ///< apply exp(G(k) t)
};

SpinorField evolve_by_symbol(const SpinorField &f, const Symbol &symbol, double t,
                             SymbolMode mode = SymbolMode::hamiltonian);

/// Columns l,m,re_L,im_L,re_R,im_R with 17 significant digits.
void write_csv(const SpinorField &f, std::ostream &out);

/// Little-endian: "PQWF", uint32 Nx, uint32 Ny, then per site in index order
/// re_L, im_L, re_R, im_R as IEEE doubles.
void write_binary(const SpinorField &f, std::ostream &out);
SpinorField read_binary(std::istream &in);

} // namespace pqw
