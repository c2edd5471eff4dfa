#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pqw {

/// Exact rational p/q with q > 0, always stored reduced.
class RationalExp {
public:
  RationalExp() = default;
  RationalExp(std::int64_t num, std::int64_t den = 1);

  /// Accepts "p/q" or an integer "p". Decimal and exponent forms are rejected
  /// because exponent matching must be exact.
  static RationalExp parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  bool is_zero() const { return num_ == 0; }

  friend RationalExp operator+(const RationalExp &a, const RationalExp &b);
  friend RationalExp operator-(const RationalExp &a, const RationalExp &b);
  friend RationalExp operator*(const RationalExp &a, const RationalExp &b);
  friend RationalExp operator*(std::int64_t s, const RationalExp &a);

  friend bool operator==(const RationalExp &a, const RationalExp &b) = default;
  friend std::strong_ordering operator<=>(const RationalExp &a, const RationalExp &b);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace pqw
