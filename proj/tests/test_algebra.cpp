#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "cdc/gf.hpp"
#include "cdc/rational.hpp"

using cdc::algebra::Field;
using cdc::algebra::FieldMatrix;
using cdc::algebra::Rational;
using cdc::algebra::int128;

namespace {

uint64_t splitmix_next(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Straight polynomial multiply over GF(2) reduced by the field modulus;
// nothing shared with the table-based implementation under test.
uint32_t slow_mul(int m, uint32_t poly, uint32_t a, uint32_t b) {
  uint64_t acc = 0;
  for (int i = 0; i < m; ++i)
    if (b & (1u << i)) acc ^= static_cast<uint64_t>(a) << i;
  for (int i = 2 * m - 2; i >= m; --i)
    if (acc & (1ull << i)) acc ^= static_cast<uint64_t>(poly) << (i - m);
  return static_cast<uint32_t>(acc);
}

}  // namespace

TEST_CASE("rational normalization and ordering") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 2).den == 2);
  CHECK(Rational(1, -2).den == 2);

  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 3) > Rational(1, 2));
  CHECK(Rational(5, 10) <= Rational(1, 2));
  CHECK(Rational(5, 10) >= Rational(1, 2));
  CHECK(Rational(1, 2) != Rational(1, 3));
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));

  Rational acc(0);
  for (int i = 1; i <= 10; ++i) acc += Rational(1, i);
  CHECK(acc == Rational(7381, 2520));

  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational helpers") {
  CHECK(cdc::algebra::abs(Rational(-3, 4)) == Rational(3, 4));
  CHECK(cdc::algebra::pos_part(Rational(-3, 4)) == Rational(0));
  CHECK(cdc::algebra::pos_part(Rational(3, 4)) == Rational(3, 4));
  CHECK(Rational(4, 2).is_integer());
  CHECK(!Rational(1, 2).is_integer());
  CHECK(Rational(0).is_zero());
  CHECK(Rational(-1, 2).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(7).sign() == 1);

  CHECK(cdc::algebra::to_string(Rational(-1, 2)) == "-1/2");
  CHECK(cdc::algebra::to_string(Rational(5)) == "5");
  CHECK(cdc::algebra::to_int64(Rational(42)) == 42);
  CHECK_THROWS_AS(cdc::algebra::to_int64(Rational(1, 2)), std::domain_error);
  CHECK(cdc::algebra::to_double(Rational(1, 4)) == doctest::Approx(0.25));

  CHECK(cdc::algebra::gcd128(12, 18) == 6);
  CHECK(cdc::algebra::lcm128(4, 6) == 12);
}

TEST_CASE("rational overflow is detected, not wrapped") {
  Rational huge(int128(1) << 100, 1);
  CHECK_THROWS_AS(huge * huge, std::overflow_error);
  Rational tiny(1, int128(1) << 100);
  CHECK_THROWS_AS(tiny * tiny, std::overflow_error);
}

TEST_CASE("field multiplication matches polynomial arithmetic") {
  uint64_t state = 41;
  for (int m = 2; m <= 16; ++m) {
    Field f(m);
    uint32_t mask = (1u << m) - 1;
    CHECK(f.bits() == m);
    CHECK(f.order() == mask);
    for (int trial = 0; trial < 120; ++trial) {
      auto a = static_cast<uint16_t>(splitmix_next(state) & mask);
      auto b = static_cast<uint16_t>(splitmix_next(state) & mask);
      CHECK(f.mul(a, b) == slow_mul(m, f.modulus(), a, b));
      CHECK(f.add(a, b) == (a ^ b));
    }
  }
}

TEST_CASE("field inverse, power, and evaluation points") {
  for (int m : {2, 3, 5, 8, 12, 16}) {
    Field f(m);
    uint64_t state = 1000 + static_cast<uint64_t>(m);
    for (int trial = 0; trial < 60; ++trial) {
      auto a = static_cast<uint16_t>(1 + splitmix_next(state) % f.order());
      CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.pow(a, 0) == 1);
      CHECK(f.pow(a, f.order()) == 1);
      CHECK(f.pow(a, 5) == f.mul(f.mul(f.mul(f.mul(a, a), a), a), a));
    }
    CHECK_THROWS(f.inv(0));
  }

  Field f8(8);
  std::set<uint16_t> points;
  for (uint32_t k = 1; k <= f8.order(); ++k) {
    uint16_t p = f8.point(k);
    CHECK(p != 0);
    points.insert(p);
  }
  CHECK(points.size() == f8.order());
}

TEST_CASE("generator spans the whole multiplicative group") {
  for (int m : {2, 4, 8, 11}) {
    Field f(m);
    std::set<uint16_t> seen;
    uint16_t x = 1;
    for (uint32_t i = 0; i < f.order(); ++i) {
      seen.insert(x);
      x = f.mul(x, f.generator());
    }
    CHECK(x == 1);
    CHECK(seen.size() == f.order());
  }
}

TEST_CASE("vandermonde matrices are invertible on distinct points") {
  Field f(16);
  std::vector<uint16_t> points;
  for (uint32_t k = 1; k <= 6; ++k) points.push_back(f.point(k));
  FieldMatrix v = cdc::algebra::vandermonde(f, points, 6);
  CHECK(cdc::algebra::rank(v) == 6);

  std::vector<uint16_t> dup = {points[0], points[1], points[0]};
  CHECK_THROWS_AS(cdc::algebra::vandermonde(f, dup, 3), std::invalid_argument);
}

TEST_CASE("solve recovers the vector it was fed") {
  uint64_t state = 97;
  for (int m : {3, 16}) {
    Field f(m);
    int n = (m == 3) ? 4 : 8;
    std::vector<uint16_t> points;
    for (int k = 1; k <= n; ++k) points.push_back(f.point(static_cast<uint32_t>(k)));
    FieldMatrix a = cdc::algebra::vandermonde(f, points, n);
    std::vector<uint16_t> x(static_cast<size_t>(n));
    for (auto& v : x) v = static_cast<uint16_t>(splitmix_next(state) & f.order());
    std::vector<uint16_t> b = cdc::algebra::matvec(a, x);
    auto got = cdc::algebra::solve(a, b);
    REQUIRE(got.has_value());
    CHECK(*got == x);

    // Stacking the same rows keeps the system consistent and overdetermined.
    FieldMatrix tall(f, 2 * n, n);
    std::vector<uint16_t> b2(static_cast<size_t>(2 * n));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        tall.at(r, c) = a.at(r, c);
        tall.at(r + n, c) = a.at(r, c);
      }
      b2[static_cast<size_t>(r)] = b[static_cast<size_t>(r)];
      b2[static_cast<size_t>(r + n)] = b[static_cast<size_t>(r)];
    }
    auto got2 = cdc::algebra::solve(tall, b2);
    REQUIRE(got2.has_value());
    CHECK(*got2 == x);

    b2[0] ^= 1;
    CHECK(!cdc::algebra::solve(tall, b2).has_value());
  }
}

TEST_CASE("solve rejects rank-deficient systems") {
  Field f(8);
  FieldMatrix a(f, 3, 3);
  for (int r = 0; r < 3; ++r) {
    a.at(r, 0) = f.point(static_cast<uint32_t>(r + 1));
    a.at(r, 1) = a.at(r, 0);
    a.at(r, 2) = f.mul(a.at(r, 0), a.at(r, 0));
  }
  CHECK(cdc::algebra::rank(a) == 2);
  std::vector<uint16_t> b = {1, 2, 3};
  CHECK(!cdc::algebra::solve(a, b).has_value());
}

TEST_CASE("matmul against matvec columns") {
  Field f(16);
  uint64_t state = 7;
  FieldMatrix a(f, 4, 3), b(f, 3, 5);
  for (auto& v : a.a) v = static_cast<uint16_t>(splitmix_next(state));
  for (auto& v : b.a) v = static_cast<uint16_t>(splitmix_next(state));
  FieldMatrix c = cdc::algebra::matmul(a, b);
  REQUIRE(c.rows == 4);
  REQUIRE(c.cols == 5);
  for (int col = 0; col < 5; ++col) {
    std::vector<uint16_t> x(3);
    for (int r = 0; r < 3; ++r) x[static_cast<size_t>(r)] = b.at(r, col);
    std::vector<uint16_t> y = cdc::algebra::matvec(a, x);
    for (int r = 0; r < 4; ++r) CHECK(c.at(r, col) == y[static_cast<size_t>(r)]);
  }
}

TEST_CASE("default moduli are accepted for every supported width") {
  for (int m = 2; m <= 16; ++m) {
    uint32_t poly = cdc::algebra::default_field_poly(m);
    CHECK((poly >> m) == 1u);
    Field f(m, poly);
    CHECK(f.mul(f.generator(), f.inv(f.generator())) == 1);
  }
}
