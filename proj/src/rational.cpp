#include "pqw/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace pqw {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  const auto *end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

} // namespace

RationalExp::RationalExp(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

RationalExp RationalExp::parse(std::string_view text) {
  const std::string_view t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) {
    return {parse_int(t, text), 1};
  }
  return {parse_int(trim(t.substr(0, slash)), text), parse_int(trim(t.substr(slash + 1)), text)};
}

std::string RationalExp::str() const {
  if (den_ == 1) {
    return std::to_string(num_);
  }
  return std::to_string(num_) + "/" + std::to_string(den_);
}

RationalExp operator+(const RationalExp &a, const RationalExp &b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalExp operator-(const RationalExp &a, const RationalExp &b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RationalExp operator*(const RationalExp &a, const RationalExp &b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalExp operator*(std::int64_t s, const RationalExp &a) { return {s * a.num_, a.den_}; }

std::strong_ordering operator<=>(const RationalExp &a, const RationalExp &b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

} // namespace pqw
