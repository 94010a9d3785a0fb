// Exact rational arithmetic on 128-bit integers.
// All loads, alphas, betas and segment sizes flow through this type; floats
// appear only when formatting output.
#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cdc::algebra {

using int128 = __int128;

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational: 128-bit multiply overflow");
  return r;
}

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational: 128-bit add overflow");
  return r;
}

// Canonical fraction: gcd(num, den) = 1, den > 0.
struct Rational {
  int128 num = 0;
  int128 den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rational(int128 n, int128 d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    int128 g = gcd128(a.den, b.den);
    int128 bd = b.den / g;
    int128 n = checked_add(checked_mul(a.num, bd), checked_mul(b.num, a.den / g));
    return Rational(n, checked_mul(a.den, bd));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num, b.den); }
  friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    int128 g1 = gcd128(a.num, b.den);
    int128 g2 = gcd128(b.num, a.den);
    return Rational(checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("rational: divide by zero");
    return a * Rational(b.den, b.num);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }
  int sign() const { return num < 0 ? -1 : (num > 0 ? 1 : 0); }
};

inline Rational abs(const Rational& x) { return x.num < 0 ? -x : x; }

// max(x, 0); the positive-part operator used throughout load accounting.
inline Rational pos_part(const Rational& x) { return x.num > 0 ? x : Rational(0); }

inline long long to_int64(const Rational& x) {
  if (x.den != 1) throw std::domain_error("rational: not an integer");
  if (x.num > int128(INT64_MAX) || x.num < int128(INT64_MIN)) throw std::overflow_error("rational: int64 overflow");
  return static_cast<long long>(x.num);
}

inline double to_double(const Rational& x) { return static_cast<double>(x.num) / static_cast<double>(x.den); }

inline std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string s;
  while (v != 0) {
    int d = static_cast<int>(neg ? -(v % 10) : (v % 10));
    s.push_back(static_cast<char>('0' + d));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

inline std::string to_string(const Rational& x) {
  if (x.den == 1) return int128_to_string(x.num);
  return int128_to_string(x.num) + "/" + int128_to_string(x.den);
}

// Least common multiple of two positive denominators.
inline int128 lcm128(int128 a, int128 b) { return checked_mul(a / gcd128(a, b), b); }

}  // namespace cdc::algebra
