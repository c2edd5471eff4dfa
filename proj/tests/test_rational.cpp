#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pqw/rational.hpp"

#include <stdexcept>

using pqw::RationalExp;

TEST_CASE("reduction and sign normalization") {
  const RationalExp r(6, -8);
  CHECK(r.num() == -3);
  CHECK(r.den() == 4);
  CHECK(RationalExp(0, 5) == RationalExp(0, 1));
  CHECK(RationalExp(2, 4).str() == "1/2");
  CHECK(RationalExp(3, 1).str() == "3");
}

TEST_CASE("parsing") {
  CHECK(RationalExp::parse("1/2") == RationalExp(1, 2));
  CHECK(RationalExp::parse(" 2 / 6 ") == RationalExp(1, 3));
  CHECK(RationalExp::parse("1") == RationalExp(1));
  CHECK(RationalExp::parse("-3/4") == RationalExp(-3, 4));
  CHECK_THROWS_AS(RationalExp::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(RationalExp::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(RationalExp::parse("1e-1"), std::invalid_argument);
  CHECK_THROWS_AS(RationalExp::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(RationalExp::parse("a/b"), std::invalid_argument);
}

TEST_CASE("exact arithmetic and ordering") {
  const RationalExp a(1, 3);
  const RationalExp b(1, 2);
  CHECK(a + b == RationalExp(5, 6));
  CHECK(b - a == RationalExp(1, 6));
  CHECK(a * b == RationalExp(1, 6));
  CHECK(3 * a == RationalExp(1));
  CHECK(a < b);
  CHECK(RationalExp(2, 4) == b);
  CHECK(b.value() == 0.5);
}
