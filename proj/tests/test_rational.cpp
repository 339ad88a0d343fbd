#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nnv/ffnn.hpp"
#include "nnv/rational.hpp"
#include "test_util.hpp"

using namespace nnv;

TEST_CASE("rat canonicalizes") {
  CHECK(rat(2, 6) == rat(1, 3));
  CHECK(rat(-2, -6) == rat(1, 3));
  CHECK(rat(2, -6) == rat(-1, 3));
  CHECK(to_string(rat(2, -6)) == "-1/3");
  CHECK(rat(0, 5) == 0);
  CHECK_THROWS(rat(1, 0));
}

TEST_CASE("parse_rational grammar") {
  CHECK(*parse_rational("7") == 7);
  CHECK(*parse_rational("-7") == -7);
  CHECK(*parse_rational("+7") == 7);
  CHECK(*parse_rational("2/6") == rat(1, 3));
  CHECK(*parse_rational("-2/6") == rat(-1, 3));
  CHECK(*parse_rational("3.049") == rat(3049, 1000));
  CHECK(*parse_rational("-0.5") == rat(-1, 2));
  CHECK(*parse_rational(".25") == rat(1, 4));
  CHECK(*parse_rational("5.") == 5);
  CHECK(*parse_rational("  12/8 ") == rat(3, 2));

  CHECK(!parse_rational(""));
  CHECK(!parse_rational("."));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("1/-2"));
  CHECK(!parse_rational("1.2.3"));
  CHECK(!parse_rational("a"));
  CHECK(!parse_rational("1e3"));
  CHECK_THROWS_AS(parse_rational_or_throw("x"), std::invalid_argument);
}

TEST_CASE("print/parse round trip") {
  auto gen = testutil::rng();
  for (int i = 0; i < 500; ++i) {
    Rational q = testutil::random_rational(gen);
    CHECK(*parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("double conversion and predicates") {
  CHECK(to_double(rat(1, 2)) == 0.5);
  CHECK(is_integer(rat(4, 2)));
  CHECK(!is_integer(rat(1, 3)));
  CHECK(floor_int(rat(7, 2)) == 3);
  CHECK(floor_int(rat(-7, 2)) == -4);
  CHECK(floor_int(rat(-4, 2)) == -2);
}

TEST_CASE("hashing respects equality") {
  auto gen = testutil::rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational q = testutil::random_rational(gen);
    CHECK(hash_value(q) == hash_value(q + 0));
    CHECK(hash_value(rat(2, 6)) == hash_value(rat(1, 3)));
  }
}

TEST_CASE("encoded size of rationals") {
  // 1 + ceil(log2(|p|+1) + 1) + ceil(log2(q+1) + 1), log base 2.
  CHECK(encoded_size(rat(0)) == 4);
  CHECK(encoded_size(rat(1)) == 5);
  CHECK(encoded_size(rat(-1)) == 5);
  CHECK(encoded_size(rat(3, 2)) == 7);
  CHECK(encoded_size(rat(1)) == encoded_size(rat(-1)));
}
