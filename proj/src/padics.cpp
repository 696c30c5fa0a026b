#include "pvk/padics.hpp"

#include <numeric>
#include <sstream>

namespace pvk {

namespace {

using i128 = __int128;

long long mulmod(long long a, long long b, long long m) {
  return static_cast<long long>((static_cast<i128>(a) * b) % m);
}

void check_odd_prime(long long l) {
  if (l < 3 || l % 2 == 0) throw input_error("prime must be odd");
  for (long long d = 3; d * d <= l; d += 2)
    if (l % d == 0) throw input_error("modulus is not prime");
}

long long inv_mod(long long a, long long m) {
  long long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t, nt);
    nt -= q * t;
    std::swap(r, nr);
    nr -= q * r;
  }
  if (r != 1) throw input_error("element is not invertible");
  return ((t % m) + m) % m;
}

}  // namespace

long long pow_ll(long long base, long long exp, long long mod) {
  base = ((base % mod) + mod) % mod;
  long long r = 1 % mod;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

long long modulus_of(long long l, int prec) {
  if (prec < 1) throw input_error("precision must be at least 1");
  long long m = 1;
  for (int i = 0; i < prec; ++i) {
    if (m > (1LL << 62) / l) throw input_error("modulus overflows");
    m *= l;
  }
  return m;
}

TruncUnit TruncUnit::make(long long l, int prec, long long value) {
  check_odd_prime(l);
  long long m = modulus_of(l, prec);
  TruncUnit u;
  u.l = l;
  u.prec = prec;
  u.residue = ((value % m) + m) % m;
  if (u.residue % l == 0) throw input_error("value is not a unit");
  return u;
}

long long unit_generator(long long l) {
  check_odd_prime(l);
  long long m = l * l;
  long long target = l * (l - 1);  // order of the unit group mod l^2
  for (long long g = 2; g < m; ++g) {
    if (g % l == 0) continue;
    long long x = g % m;
    long long ord = 1;
    while (x != 1) {
      x = mulmod(x, g, m);
      ++ord;
    }
    if (ord == target) return g;
  }
  throw input_error("no generator found");  // unreachable for odd primes
}

PadicScalar PadicScalar::zero_value(long long l, int prec) {
  check_odd_prime(l);
  PadicScalar s;
  s.l = l;
  s.prec = prec;
  return s;
}

PadicScalar PadicScalar::from_integer(long long l, int prec, long long value) {
  check_odd_prime(l);
  if (value == 0) return zero_value(l, prec);
  PadicScalar s;
  s.l = l;
  s.zero = false;
  s.prec = prec;
  s.val = 0;
  long long v = value;
  while (v % l == 0) {
    v /= l;
    ++s.val;
  }
  long long m = modulus_of(l, prec);
  s.unit = ((v % m) + m) % m;
  return s;
}

PadicScalar PadicScalar::from_rational(long long l, int prec, long long num,
                                       long long den) {
  if (den == 0) throw input_error("division by zero");
  PadicScalar n = from_integer(l, prec, num);
  PadicScalar d = from_integer(l, prec, den);
  return padic_mul(n, padic_inv(d));
}

std::string PadicScalar::str() const {
  if (zero) return "0";
  std::ostringstream os;
  if (val != 0) os << l << "^" << val << " * ";
  os << unit << " (mod " << l << "^" << prec << ")";
  return os.str();
}

PadicScalar padic_mul(const PadicScalar& a, const PadicScalar& b) {
  if (a.l != b.l) throw input_error("mixed primes");
  int prec = std::min(a.prec, b.prec);
  if (a.zero || b.zero) return PadicScalar::zero_value(a.l, prec);
  PadicScalar r;
  r.l = a.l;
  r.zero = false;
  r.prec = prec;
  r.val = a.val + b.val;
  r.unit = mulmod(a.unit, b.unit, modulus_of(a.l, prec));
  return r;
}

PadicScalar padic_neg(const PadicScalar& a) {
  if (a.zero) return a;
  PadicScalar r = a;
  long long m = modulus_of(a.l, a.prec);
  r.unit = (m - a.unit % m) % m;
  return r;
}

PadicScalar padic_inv(const PadicScalar& a) {
  if (a.zero) throw input_error("inverting zero");
  PadicScalar r = a;
  r.val = -a.val;
  r.unit = inv_mod(a.unit, modulus_of(a.l, a.prec));
  return r;
}

PadicScalar padic_add(const PadicScalar& a, const PadicScalar& b) {
  if (a.l != b.l) throw input_error("mixed primes");
  if (a.zero && b.zero)
    return PadicScalar::zero_value(a.l, std::min(a.prec, b.prec));
  if (a.zero) return b;
  if (b.zero) return a;
  // absolute precision: each term is known modulo l^(val + prec)
  long long base_val = std::min(a.val, b.val);
  long long abs_prec =
      std::min(a.val + a.prec, b.val + b.prec) - base_val;
  if (abs_prec <= 0) throw input_error("precision floor underflow in addition");
  if (abs_prec > 37) abs_prec = 37;  // keep l^abs_prec in range for l >= 3
  long long m = modulus_of(a.l, static_cast<int>(abs_prec));
  long long ra = mulmod(a.unit, pow_ll(a.l, a.val - base_val, m), m);
  long long rb = mulmod(b.unit, pow_ll(b.l, b.val - base_val, m), m);
  long long r = (ra + rb) % m;
  if (r == 0)  // cancellation through every known digit: canonical zero
    return PadicScalar::zero_value(a.l, std::min(a.prec, b.prec));
  PadicScalar out;
  out.l = a.l;
  out.zero = false;
  long long extra = 0;
  while (r % a.l == 0) {
    r /= a.l;
    ++extra;
  }
  out.val = base_val + extra;
  out.prec = static_cast<int>(abs_prec - extra);
  out.unit = r % modulus_of(a.l, out.prec);
  return out;
}

bool padic_eq(const PadicScalar& a, const PadicScalar& b) {
  if (a.l != b.l) return false;
  if (a.zero || b.zero) return a.zero == b.zero;
  if (a.val != b.val) return false;
  long long m = modulus_of(a.l, std::min(a.prec, b.prec));
  return a.unit % m == b.unit % m;
}

void BorelElement::validate() const {
  if (a.is_zero() || d.is_zero())
    throw input_error("borel element must have invertible diagonal");
}

BorelElement borel_mul(const BorelElement& x, const BorelElement& y) {
  x.validate();
  y.validate();
  BorelElement r;
  r.a = padic_mul(x.a, y.a);
  r.d = padic_mul(x.d, y.d);
  r.b = padic_add(padic_mul(x.a, y.b), padic_mul(x.b, y.d));
  return r;
}

BorelElement borel_inv(const BorelElement& x) {
  x.validate();
  BorelElement r;
  r.a = padic_inv(x.a);
  r.d = padic_inv(x.d);
  r.b = padic_neg(padic_mul(padic_mul(r.a, x.b), r.d));
  return r;
}

bool in_integral_borel(const BorelElement& x) {
  x.validate();
  return x.a.val == 0 && x.d.val == 0 && (x.b.is_zero() || x.b.val >= 0);
}

BorelElement psi_word(long long l, int prec,
                      const std::vector<BorelLetter>& word) {
  check_odd_prime(l);
  long long u1 = unit_generator(l);
  auto one = PadicScalar::from_integer(l, prec, 1);
  auto zero = PadicScalar::zero_value(l, prec);
  BorelElement acc{one, zero, one};
  for (const BorelLetter& w : word) {
    BorelElement m{one, zero, one};
    switch (w.which) {
      case 1: {
        long long p = pow_ll(u1, std::llabs(w.int_exp), modulus_of(l, prec));
        PadicScalar u{l, false, 0, prec, p};
        m.a = w.int_exp >= 0 ? u : padic_inv(u);
        break;
      }
      case 2: {
        long long e = std::llabs(w.int_exp);
        long long p = pow_ll(u1, e, modulus_of(l, prec));
        PadicScalar u{l, false, 0, prec, p};
        m.d = w.int_exp >= 0 ? u : padic_inv(u);
        break;
      }
      case 3:
        m.b = w.scalar ? w.scalar_exp
                       : PadicScalar::from_integer(l, prec, w.int_exp);
        break;
      case 4:
        m.a = PadicScalar{l, false, w.int_exp, prec, 1};
        break;
      case 5:
        m.d = PadicScalar{l, false, w.int_exp, prec, 1};
        break;
      default:
        throw input_error("unknown letter");
    }
    acc = borel_mul(acc, m);
  }
  return acc;
}

}  // namespace pvk
