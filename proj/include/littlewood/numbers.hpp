#pragma once

// Exact arithmetic kernel: GMP-backed integers and rationals, elements of a
// real quadratic field Q(sqrt d), canonical quadratic surds (P + sqrt D)/Q and
// dyadic enclosures.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "littlewood/error.hpp"

namespace littlewood {

using BigInt = mpz_class;
using BigRational = mpq_class;

// ---------------------------------------------------------------------------
// Integer / rational helpers

/// Builds num/den in lowest terms with a positive denominator.
BigRational make_rational(const BigInt& num, const BigInt& den);

/// "num/den" (always with the slash, denominator 1 included).
std::string to_string(const BigRational& x);
std::string to_string(const BigInt& x);

/// Accepts "n", "n/d", "-n/d" and terminating decimals; throws ParseError otherwise.
BigRational parse_rational(std::string_view text);
BigInt parse_integer(std::string_view text);

int sign(const BigInt& x);
int sign(const BigRational& x);

BigInt floor(const BigRational& x);
BigInt isqrt(const BigInt& x);
bool is_perfect_square(const BigInt& x);
BigInt pow2(std::size_t k);
BigInt pow(const BigInt& base, std::size_t k);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Decimal digit cap for every integer that the library creates from user
/// input or grows in a loop; defaults to 10^6 and can be overridden by the
/// LITTLEWOOD_DIGIT_CAP environment variable.
std::size_t digit_cap();
void set_digit_cap(std::size_t digits);
void check_digit_cap(const BigInt& x, const char* what);

/// floor((x + y*sqrt(e)) / z) for a non-square e > 0 and z != 0.
BigInt floor_quadratic(const BigInt& x, const BigInt& y, const BigInt& e, const BigInt& z);

/// Writes n = core * root^2 with core squarefree (trial division).
struct SquareSplit {
  BigInt core;
  BigInt root;
};
SquareSplit split_square(const BigInt& n);

// ---------------------------------------------------------------------------
// Dyadic intervals

/// [lo_num / 2^scale, hi_num / 2^scale].
class DyadicInterval {
 public:
  DyadicInterval(BigInt lo_num, BigInt hi_num, std::size_t scale);

  /// Smallest dyadic interval at `scale` that contains [lo, hi].
  static DyadicInterval enclosing(const BigRational& lo, const BigRational& hi, std::size_t scale);

  BigRational lo() const;
  BigRational hi() const;
  BigRational width() const;
  std::size_t scale() const noexcept { return scale_; }
  bool contains(const BigRational& x) const;
  bool contains(const DyadicInterval& other) const;
  bool intersects(const DyadicInterval& other) const;

 private:
  BigInt lo_num_;
  BigInt hi_num_;
  std::size_t scale_;
};

// ---------------------------------------------------------------------------
// Elements r + s*sqrt(d) of a real quadratic field

/// `d` is squarefree and >= 2, or 0 for a number known to be rational.
/// Rationals may also carry the radicand of the field they live in
/// (s == 0, d != 0) so that mixed arithmetic keeps the field.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(const BigRational& r);  // NOLINT(google-explicit-constructor)
  QuadraticNumber(BigRational r, BigRational s, BigInt d);

  static QuadraticNumber integer(long v) { return QuadraticNumber(BigRational(v)); }

  const BigRational& rational_part() const noexcept { return r_; }
  const BigRational& sqrt_coefficient() const noexcept { return s_; }
  const BigInt& radicand() const noexcept { return d_; }
  bool is_rational() const { return sgn(s_) == 0; }

  int sign() const;
  BigInt floor() const;
  QuadraticNumber conjugate() const;
  QuadraticNumber abs() const;
  QuadraticNumber reciprocal() const;

  QuadraticNumber operator-() const;
  friend QuadraticNumber operator+(const QuadraticNumber& a, const QuadraticNumber& b);
  friend QuadraticNumber operator-(const QuadraticNumber& a, const QuadraticNumber& b);
  friend QuadraticNumber operator*(const QuadraticNumber& a, const QuadraticNumber& b);
  friend QuadraticNumber operator/(const QuadraticNumber& a, const QuadraticNumber& b);

  friend std::strong_ordering operator<=>(const QuadraticNumber& a, const QuadraticNumber& b);
  friend bool operator==(const QuadraticNumber& a, const QuadraticNumber& b);

  /// Interval of width <= 2^-bits (exact point for rationals).
  DyadicInterval enclose(std::size_t bits) const;
  /// Enclosure [lo, hi] with hi - lo <= 2^-rel_bits * |value|; value must be nonzero
  /// unless rational.
  DyadicInterval enclose_relative(std::size_t rel_bits) const;
  double approx() const;
  std::string to_string() const;

 private:
  friend BigInt common_field(const QuadraticNumber& a, const QuadraticNumber& b);
  BigRational r_{0};
  BigRational s_{0};
  BigInt d_{0};
};

// ---------------------------------------------------------------------------
// Canonical quadratic surds

/// The real number (P + sqrt D)/Q with D > 0 non-square, Q != 0 and Q | D - P^2.
/// The form is unique per value: |Q| is the least admissible denominator and
/// the sign of Q is the sign of the sqrt coefficient.
class QuadraticSurd {
 public:
  /// Throws PerfectSquare or ZeroDenominator.
  static QuadraticSurd canonicalize(const BigInt& P, const BigInt& D, const BigInt& Q);
  /// Throws PerfectSquare-style InvalidArgument if `x` is rational.
  static QuadraticSurd from_number(const QuadraticNumber& x);

  const BigInt& P() const noexcept { return P_; }
  const BigInt& D() const noexcept { return D_; }
  const BigInt& Q() const noexcept { return Q_; }
  /// Squarefree part of D.
  const BigInt& core() const noexcept { return core_; }

  QuadraticNumber value() const;
  BigInt floor() const;
  std::strong_ordering compare(const BigRational& r) const;

  QuadraticSurd operator+(const BigInt& k) const;
  QuadraticSurd operator*(const BigInt& n) const;

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
  std::string to_string() const;

 private:
  QuadraticSurd(BigInt P, BigInt D, BigInt Q, BigInt core, BigInt root);
  BigInt P_, D_, Q_;
  BigInt core_, root_;  // D = core * root^2
};

std::strong_ordering surd_compare(const QuadraticSurd& x, const BigRational& r);
BigInt surd_floor(const QuadraticSurd& x);

/// Enclosure of width <= 2^-bits, nested across increasing `bits`.
DyadicInterval interval_refine(const QuadraticSurd& x, std::size_t bits);

}  // namespace littlewood
