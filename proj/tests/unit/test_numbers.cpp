#include <cmath>
#include <random>

#include "doctest.h"
#include "littlewood/numbers.hpp"
#include "oracles.hpp"

using namespace littlewood;

namespace {

QuadraticSurd surd(long P, long D, long Q) { return QuadraticSurd::canonicalize(P, D, Q); }

bool divides(const BigInt& q, const BigInt& n) { return mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t()) != 0; }

// Random canonical surd with a non-square radicand.
QuadraticSurd random_surd(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> pd(-50, 50), dd(2, 500), qd(1, 40);
  for (;;) {
    long D = dd(rng);
    long r = static_cast<long>(std::sqrt(static_cast<double>(D)));
    if (r * r == D || (r + 1) * (r + 1) == D) continue;
    long Q = qd(rng) * (rng() % 2 ? 1 : -1);
    return surd(pd(rng), D, Q);
  }
}

}  // namespace

TEST_CASE("canonical form keeps already canonical triples") {
  auto phi = surd(1, 5, 2);
  CHECK(phi.P() == 1);
  CHECK(phi.D() == 5);
  CHECK(phi.Q() == 2);
  auto r2 = surd(0, 2, 1);
  CHECK(r2.P() == 0);
  CHECK(r2.D() == 2);
  CHECK(r2.Q() == 1);
}

TEST_CASE("(1 + sqrt 3)/2 equals (2 + sqrt 12)/4 and both canonicalize alike") {
  auto a = surd(1, 3, 2), b = surd(2, 12, 4);
  CHECK(a == b);
  CHECK(divides(a.Q(), a.D() - a.P() * a.P()));
  // Exact squaring check of the value: ((1 + sqrt 3)/2)^2 = (4 + 2 sqrt 3)/4.
  QuadraticNumber x = a.value();
  CHECK(x * x == QuadraticNumber(BigRational(1), BigRational(1, 2), 3));
}

TEST_CASE("canonicalization errors") {
  CHECK_THROWS_AS(surd(1, 4, 2), Error);
  try {
    surd(1, 9, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PerfectSquare);
  }
  try {
    surd(1, 5, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroDenominator);
  }
}

TEST_CASE("canonical form: divisibility and uniqueness per value") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 500; ++k) {
    QuadraticSurd s = random_surd(rng);
    CHECK(divides(s.Q(), s.D() - s.P() * s.P()));
    // Scaling the triple by any factor gives the same canonical surd.
    BigInt f = 1 + rng() % 7;
    if (rng() % 2) f = -f;
    QuadraticSurd t = QuadraticSurd::canonicalize(s.P() * f, s.D() * f * f, s.Q() * f);
    // f < 0 flips the sign in front of the root.
    if (f > 0) {
      CHECK(t == s);
    } else {
      CHECK(t.value() == s.value().conjugate());
    }
  }
}

TEST_CASE("surd_compare examples") {
  CHECK(surd_compare(surd(0, 2, 1), BigRational(3, 2)) == std::strong_ordering::less);
  CHECK(surd_compare(surd(1, 5, 2), BigRational(1618, 1000)) == std::strong_ordering::greater);
  CHECK(surd_compare(surd(0, 2, 1), BigRational(7, 5)) == std::strong_ordering::greater);
}

TEST_CASE("surd_compare agrees with a 200-bit enclosure") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> nd(-3000, 3000), dd(1, 300);
  for (int k = 0; k < 1000; ++k) {
    QuadraticSurd s = random_surd(rng);
    BigRational r = make_rational(nd(rng), dd(rng));
    auto [lo, hi] = oracle::surd_bracket(s.P(), s.D(), s.Q(), 200, 1);
    auto c = surd_compare(s, r);
    if (hi < r) CHECK(c == std::strong_ordering::less);
    if (lo > r) CHECK(c == std::strong_ordering::greater);
    CHECK(c != std::strong_ordering::equal);
  }
}

TEST_CASE("surd_floor examples") {
  CHECK(surd_floor(surd(0, 2, 1)) == 1);
  CHECK(surd_floor(surd(1, 5, 2)) == 1);
  CHECK(surd_floor(surd(0, 200, 1)) == 14);
  CHECK(surd_floor(surd(-1, 2, 1)) == 0);
  CHECK(surd_floor(surd(-3, 2, 1)) == -2);
}

TEST_CASE("surd_floor brackets the value") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 1000; ++k) {
    QuadraticSurd s = random_surd(rng);
    BigInt f = surd_floor(s);
    CHECK(surd_compare(s, BigRational(f)) == std::strong_ordering::greater);
    CHECK(surd_compare(s, BigRational(f + 1)) == std::strong_ordering::less);
  }
}

TEST_CASE("floor_quadratic matches an isqrt oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> xd(-10'000, 10'000), ed(2, 1000), zd(1, 500);
  for (int k = 0; k < 2000; ++k) {
    long e = ed(rng);
    long r = static_cast<long>(std::sqrt(static_cast<double>(e)));
    if (r * r == e || (r + 1) * (r + 1) == e) continue;
    BigInt x = xd(rng), y = xd(rng) / 10, z = zd(rng) * (rng() % 2 ? 1 : -1);
    if (y == 0) continue;
    auto [lo, hi] = oracle::sqrt_bracket(y * y * e, 100);
    BigRational v_lo = (BigRational(x) + (y > 0 ? lo : -hi)) / BigRational(z);
    BigRational v_hi = (BigRational(x) + (y > 0 ? hi : -lo)) / BigRational(z);
    if (v_hi < v_lo) std::swap(v_lo, v_hi);
    BigInt f = floor_quadratic(x, y, e, z);
    CHECK(BigRational(f) <= v_lo);
    CHECK(BigRational(f + 1) > v_hi);
  }
}

TEST_CASE("interval_refine on surds") {
  auto r2 = surd(0, 2, 1);
  DyadicInterval one = interval_refine(r2, 1);
  CHECK(one.width() <= BigRational(1, 2));
  CHECK(one.lo() <= BigRational(141421, 100000));
  CHECK(one.hi() >= BigRational(141422, 100000));
  CHECK_THROWS_AS(interval_refine(r2, 0), Error);
}

TEST_CASE("interval_refine is nested and never widens") {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 50; ++k) {
    QuadraticSurd s = random_surd(rng);
    DyadicInterval prev = interval_refine(s, 1);
    for (std::size_t bits = 2; bits <= 120; bits += 7) {
      DyadicInterval cur = interval_refine(s, bits);
      CHECK(cur.width() <= BigRational(BigInt(1), pow2(bits)));
      CHECK(prev.contains(cur));
      CHECK(cur.width() <= prev.width());
      prev = cur;
    }
  }
}

TEST_CASE("quadratic field arithmetic") {
  QuadraticNumber s2(BigRational(0), BigRational(1), 2);
  CHECK(s2 * s2 == QuadraticNumber(BigRational(2)));
  QuadraticNumber x = QuadraticNumber(BigRational(3)) - s2;  // 3 - sqrt 2
  CHECK(x * x.reciprocal() == QuadraticNumber(BigRational(1)));
  CHECK(x.sign() == 1);
  CHECK((s2 - QuadraticNumber(BigRational(2))).sign() == -1);
  CHECK(x.floor() == 1);
  CHECK((-x).floor() == -2);
  QuadraticNumber s3(BigRational(0), BigRational(1), 3);
  CHECK_THROWS_AS(s2 + s3, Error);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == BigRational(1, 2));
  CHECK(parse_rational("-4") == BigRational(-4));
  CHECK(parse_rational("0.9") == BigRational(9, 10));
  CHECK(parse_rational("-1.25") == BigRational(-5, 4));
  CHECK(to_string(BigRational(2)) == "2/1");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_integer("12x"), Error);
}

TEST_CASE("digit cap") {
  const std::size_t saved = digit_cap();
  set_digit_cap(5);
  CHECK_THROWS_AS(parse_integer("1234567"), Error);
  CHECK_NOTHROW(parse_integer("12345"));
  try {
    check_digit_cap(BigInt("1000000"), "test");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DigitCapExceeded);
  }
  set_digit_cap(saved);
}
