#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iivcg/rational.hpp"

using namespace iivcg;

TEST_CASE("fraction and decimal literals parse exactly") {
  CHECK(parse_rat("1/4") == rat(1, 4));
  CHECK(parse_rat("0.25") == rat(1, 4));
  CHECK(parse_rat("-0.5") == rat(-1, 2));
  CHECK(parse_rat("12") == Rat(12));
  CHECK(parse_rat("-3/9") == rat(-1, 3));
  CHECK(parse_rat(" 7 / 2 ") == rat(7, 2));
  CHECK(parse_rat("99.3") == rat(993, 10));
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("abc"));
  CHECK_THROWS(parse_rat(""));
  CHECK_THROWS(parse_rat("1.2.3"));
}

TEST_CASE("printing round-trips through parsing") {
  for (long num = -7; num <= 7; ++num)
    for (long den = 1; den <= 5; ++den) {
      Rat r = rat(num, den);
      CHECK(parse_rat(to_fraction(r)) == r);
    }
  CHECK(to_fraction(rat(28, 9)) == "28/9");
  CHECK(to_fraction(Rat(5)) == "5");
  CHECK(to_fraction(rat(-2, 4)) == "-1/2");
}

TEST_CASE("decimal rendering is display only but correct") {
  CHECK(to_decimal(rat(1, 4)) == "0.25");
  CHECK(to_decimal(rat(993, 40)) == "24.825");
  CHECK(to_decimal(Rat(-3)) == "-3");
  CHECK(to_decimal(rat(1, 3), 4) == "0.3333");
}

TEST_CASE("integer powers with negative exponents") {
  CHECK(rat_pow(rat(1, 4), -2) == Rat(16));
  CHECK(rat_pow(rat(1, 2), 3) == rat(1, 8));
  CHECK(rat_pow(rat(5, 7), 0) == Rat(1));
  CHECK(rat_pow(rat(1, 4), 1 - 3) == Rat(16));
  CHECK_THROWS(rat_pow(Rat(0), -1));
}

TEST_CASE("dot demands matching dimensions") {
  CHECK(dot({rat(1, 4), rat(3, 4)}, {Rat(12), Rat(14)}) == rat(27, 2));
  CHECK_THROWS(dot({Rat(1)}, {Rat(1), Rat(2)}));
}
