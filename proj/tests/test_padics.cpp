#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pvk/padics.hpp"

using namespace pvk;

TEST_CASE("modular helpers") {
  CHECK(modulus_of(3, 4) == 81);
  CHECK(pow_ll(2, 10, 1000) == 24);
  CHECK(pow_ll(-1, 3, 7) == 6);
  CHECK_THROWS_AS(modulus_of(3, 45), input_error);  // would overflow
  CHECK_THROWS_AS(modulus_of(3, 0), input_error);
}

TEST_CASE("unit generators of the small primes") {
  CHECK(unit_generator(3) == 2);
  CHECK(unit_generator(5) == 2);
  CHECK(unit_generator(7) == 3);
  CHECK_THROWS_AS(unit_generator(4), input_error);
  CHECK_THROWS_AS(unit_generator(9), input_error);
}

TEST_CASE("scalars split into valuation and unit part") {
  PadicScalar s = PadicScalar::from_integer(3, 5, 18);
  CHECK_FALSE(s.is_zero());
  CHECK(s.val == 2);
  CHECK(s.unit == 2);
  CHECK(PadicScalar::from_integer(3, 5, 0).is_zero());
  PadicScalar neg = PadicScalar::from_integer(3, 4, -9);
  CHECK(neg.val == 2);
  CHECK(neg.unit == 80);  // -1 modulo 81
  PadicScalar third = PadicScalar::from_rational(3, 5, 1, 3);
  CHECK(third.val == -1);
  CHECK(third.unit == 1);
  CHECK_THROWS_AS(PadicScalar::from_rational(3, 5, 1, 0), input_error);
}

TEST_CASE("arithmetic tracks precision through carries and cancellation") {
  PadicScalar one = PadicScalar::from_integer(3, 5, 1);
  PadicScalar two = PadicScalar::from_integer(3, 5, 2);
  PadicScalar sum = padic_add(one, two);  // 3: one digit moves into the value
  CHECK(sum.val == 1);
  CHECK(sum.prec == 4);
  CHECK(sum.unit == 1);

  PadicScalar x = PadicScalar::from_integer(3, 6, 7);
  CHECK(padic_add(x, padic_neg(x)).is_zero());
  CHECK(padic_eq(padic_mul(x, padic_inv(x)), one));
  CHECK_THROWS_AS(padic_inv(PadicScalar::zero_value(3, 5)), input_error);
  CHECK_THROWS_AS(padic_add(one, PadicScalar::from_integer(5, 5, 1)),
                  input_error);
}

TEST_CASE("field laws on random truncated scalars") {
  std::mt19937_64 eng(912781);
  auto rand_scalar = [&]() {
    long long v = static_cast<long long>(eng() % 2001) - 1000;
    return PadicScalar::from_integer(3, 8, v);
  };
  for (int i = 0; i < 2000; ++i) {
    PadicScalar a = rand_scalar(), b = rand_scalar(), c = rand_scalar();
    CHECK(padic_eq(padic_add(a, b), padic_add(b, a)));
    CHECK(padic_eq(padic_mul(a, b), padic_mul(b, a)));
    CHECK(padic_eq(padic_add(padic_add(a, b), c),
                   padic_add(a, padic_add(b, c))));
    CHECK(padic_eq(padic_mul(padic_mul(a, b), c),
                   padic_mul(a, padic_mul(b, c))));
    CHECK(padic_eq(padic_mul(a, padic_add(b, c)),
                   padic_add(padic_mul(a, b), padic_mul(a, c))));
    if (!a.is_zero())
      CHECK(padic_eq(padic_mul(a, padic_inv(a)),
                     PadicScalar::from_integer(3, 8, 1)));
  }
}

TEST_CASE("borel elements multiply upper-triangularly") {
  auto s = [](long long v) { return PadicScalar::from_integer(3, 6, v); };
  BorelElement x{s(2), s(5), s(1)};
  BorelElement y{s(1), s(-1), s(4)};
  BorelElement xy = borel_mul(x, y);
  CHECK(padic_eq(xy.a, s(2)));
  CHECK(padic_eq(xy.d, s(4)));
  CHECK(padic_eq(xy.b, s(18)));  // 2*(-1) + 5*4
  BorelElement inv = borel_inv(x);
  BorelElement id = borel_mul(x, inv);
  CHECK(padic_eq(id.a, s(1)));
  CHECK(padic_eq(id.d, s(1)));
  CHECK(id.b.is_zero());
  BorelElement degenerate{PadicScalar::zero_value(3, 6), s(0), s(1)};
  CHECK_THROWS_AS(degenerate.validate(), input_error);
}

TEST_CASE("integral borel membership reads the valuations") {
  auto v = [](long long val) {
    PadicScalar s = PadicScalar::from_integer(3, 6, 1);
    s.val = val;
    return s;
  };
  CHECK(in_integral_borel({v(0), v(2), v(0)}));
  CHECK(in_integral_borel({v(0), PadicScalar::zero_value(3, 6), v(0)}));
  CHECK_FALSE(in_integral_borel({v(0), v(-1), v(0)}));
  CHECK_FALSE(in_integral_borel({v(1), v(0), v(0)}));
}

TEST_CASE("the letter evaluation matches hand multiplication") {
  // t4^-1 t3 t4: conjugating the unipotent by the diagonal divides the
  // upper entry by l
  std::vector<BorelLetter> word = {{4, -1, {}, false},
                                   {3, 1, {}, false},
                                   {4, 1, {}, false}};
  BorelElement m = psi_word(3, 8, word);
  CHECK(padic_eq(m.a, PadicScalar::from_integer(3, 8, 1)));
  CHECK(m.b.val == -1);
  // t1 t2 commute with each other but scale the two diagonal slots
  std::vector<BorelLetter> diag = {{1, 2, {}, false}, {2, -1, {}, false}};
  BorelElement d = psi_word(3, 8, diag);
  long long u1 = unit_generator(3);
  CHECK(padic_eq(d.a, PadicScalar::from_integer(3, 8, u1 * u1)));
  CHECK(padic_eq(padic_inv(d.d), PadicScalar::from_integer(3, 8, u1)));
  CHECK_THROWS_AS(psi_word(3, 8, {{9, 1, {}, false}}), input_error);
}

TEST_CASE("laws of the one-parameter letters") {
  // t3^x t3^y = t3^(x+y) and t1 t3^x t1^-1 = t3^(u1 x)
  std::mt19937_64 eng(5);
  long long u1 = unit_generator(3);
  for (int i = 0; i < 200; ++i) {
    long long xv = static_cast<long long>(eng() % 200) - 100;
    long long yv = static_cast<long long>(eng() % 200) - 100;
    BorelElement sum = psi_word(
        3, 8, {{3, xv, {}, false}, {3, yv, {}, false}});
    CHECK(padic_eq(sum.b, PadicScalar::from_integer(3, 8, xv + yv)));
    BorelElement conj = psi_word(
        3, 8, {{1, 1, {}, false}, {3, xv, {}, false}, {1, -1, {}, false}});
    CHECK(padic_eq(conj.b, PadicScalar::from_integer(3, 8, u1 * xv)));
  }
}
