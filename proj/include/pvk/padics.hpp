#ifndef PVK_PADICS_HPP_
#define PVK_PADICS_HPP_

// Truncated arithmetic for an odd prime l: units known modulo l^N,
// scalars split as l^v * unit with per-value effective precision, and
// upper-triangular 2x2 matrices over them.

#include <cstdint>
#include <string>
#include <vector>

#include "pvk/groups.hpp"  // for input_error

namespace pvk {

// A unit of the l-adic integers known modulo l^prec.
struct TruncUnit {
  long long l = 3;
  int prec = 1;
  long long residue = 1;  // in (Z/l^prec)^x, stored in [0, l^prec)

  static TruncUnit make(long long l, int prec, long long value);
};

long long pow_ll(long long base, long long exp, long long mod);
long long modulus_of(long long l, int prec);  // l^prec, overflow-checked

// Smallest positive integer generating the units modulo l^2 (and hence
// modulo every power of l, for odd l).
long long unit_generator(long long l);

// A scalar l^val * unit with `prec` significant unit digits; zero is
// canonical (val = +infinity stand-in).
struct PadicScalar {
  long long l = 3;
  bool zero = true;
  long long val = 0;  // valuation, meaningless when zero
  int prec = 1;       // significant digits of the unit part
  long long unit = 1; // unit part modulo l^prec

  static PadicScalar from_integer(long long l, int prec, long long value);
  static PadicScalar from_rational(long long l, int prec, long long num,
                                   long long den);
  static PadicScalar zero_value(long long l, int prec);

  bool is_zero() const { return zero; }
  std::string str() const;
};

PadicScalar padic_mul(const PadicScalar& a, const PadicScalar& b);
PadicScalar padic_add(const PadicScalar& a, const PadicScalar& b);
PadicScalar padic_neg(const PadicScalar& a);
PadicScalar padic_inv(const PadicScalar& a);
bool padic_eq(const PadicScalar& a, const PadicScalar& b);

// Upper-triangular (a, b; 0, d) with a, d invertible.
struct BorelElement {
  PadicScalar a, b, d;
  void validate() const;
};

BorelElement borel_mul(const BorelElement& x, const BorelElement& y);
BorelElement borel_inv(const BorelElement& x);
// Integral Borel subgroup: unit diagonal and integral upper entry.
bool in_integral_borel(const BorelElement& x);

// Words in the five standard one-parameter letters:
//   t1^k = diag(u1^k, 1), t2^k = diag(1, u1^k), t3^x = (1, x; 0, 1),
//   t4^k = diag(l^k, 1),  t5^k = diag(1, l^k),
// where u1 = unit_generator(l).  Exponents on t3 may be any scalar;
// the others take integers.
struct BorelLetter {
  int which = 1;  // 1..5
  long long int_exp = 1;
  PadicScalar scalar_exp;  // used only for t3
  bool scalar = false;
};

BorelElement psi_word(long long l, int prec,
                      const std::vector<BorelLetter>& word);

}  // namespace pvk

#endif  // PVK_PADICS_HPP_
