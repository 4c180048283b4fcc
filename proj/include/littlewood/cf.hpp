#pragma once

// Continued fractions: expansions of rationals and quadratic surds,
// convergents, continuants and certified evaluation of q * ||q alpha||.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "littlewood/numbers.hpp"
#include "littlewood/words.hpp"

namespace littlewood {

/// p_n / q_n with p_{-1} = 1, q_{-1} = 0, p_0 = a_0, q_0 = 1.
struct Convergent {
  long n = 0;
  BigInt p;
  BigInt q;
};

struct CFExpansion {
  BigInt a0;
  std::vector<Letter> preperiod;
  std::vector<Letter> period;  // empty for a finite expansion

  bool is_finite() const noexcept { return period.empty(); }
  friend bool operator==(const CFExpansion&, const CFExpansion&) = default;
};

/// Canonical finite expansion (last quotient >= 2 unless it is just [a0]).
CFExpansion cf_of_rational(const BigRational& x);
/// Eventually periodic expansion, found as the first repeated (P, Q) state.
CFExpansion cf_of_surd(const QuadraticSurd& x);

/// Exact value of a finite or eventually periodic expansion. Without `core`
/// (the squarefree radicand of the field, when known) the discriminant is
/// factored by trial division, which is slow for long periods.
QuadraticNumber cf_value(const CFExpansion& cf, const BigInt* core = nullptr);
BigRational cf_value_finite(const BigInt& a0, std::span<const Letter> quotients);
/// The purely periodic number [b_0; b_1, ..., b_{s-1}, b_0, ...] (> 1).
QuadraticNumber purely_periodic_value(std::span<const Letter> period, const BigInt* core = nullptr);

/// Partial quotients a_1 a_2 ... of an expansion as a stream.
WordStream quotient_stream(const CFExpansion& cf);

/// Convergents n = 0..N of a_0 + [0; s].
std::vector<Convergent> convergents(const BigInt& a0, const WordStream& s, std::size_t N);

/// Denominator of [0; a_1, ..., a_n]; K() = 1.
BigInt continuant(std::span<const Letter> w);

/// Closed interval of all reals whose expansion starts [a0; a_1..a_n]; for n = 0 this is [a0, a0+1].
std::pair<BigRational, BigRational> cylinder(const BigInt& a0, std::span<const Letter> quotients);

/// Enclosure of width <= 2^-bits of a_0 + [0; s], consuming quotients until the
/// cylinder is small enough. Throws StreamExhausted for a finite word that ends first.
DyadicInterval interval_refine(const BigInt& a0, const WordStream& s, std::size_t bits);

// ---------------------------------------------------------------------------
// Real numbers as inputs to the Diophantine routines

/// An exact point (exact set) or a certified enclosure [lo, hi].
struct CertifiedValue {
  std::optional<QuadraticNumber> exact;
  BigRational lo;
  BigRational hi;

  static CertifiedValue from_exact(const QuadraticNumber& x, std::size_t rel_bits = 60);
  static CertifiedValue from_bounds(BigRational lo, BigRational hi);
  /// Multiplies by a positive rational.
  CertifiedValue scaled(const BigRational& k) const;
  double approx() const;
};

/// Certified ordering, or nullopt when the enclosures overlap and neither is exact-comparable.
std::optional<std::strong_ordering> certified_compare(const CertifiedValue& a, const CertifiedValue& b);

enum class RealKind { Rational, Surd, Stream };

/// A real number given exactly (rational or quadratic surd) or by a rule for its
/// partial quotients: a_0 + [0; a_1, a_2, ...].
class RealSource {
 public:
  static RealSource rational(BigRational x);
  static RealSource surd(QuadraticSurd x);
  /// `core` is the squarefree radicand of the field when a periodic rule is known to lie in one.
  static RealSource stream(BigInt a0, WordStream quotients, const BigInt* core = nullptr);

  RealKind kind() const noexcept { return kind_; }
  const BigInt& integer_part() const noexcept { return a0_; }
  const WordStream& quotients() const noexcept { return quotients_; }
  const std::optional<BigRational>& as_rational() const noexcept { return rational_; }
  const std::optional<QuadraticSurd>& as_surd() const noexcept { return surd_; }
  /// Exact value when known: rationals, surds and streams with a periodic rule.
  const std::optional<QuadraticNumber>& exact() const noexcept { return exact_; }
  bool is_irrational() const;

  DyadicInterval enclose(std::size_t bits) const;

 private:
  RealSource() = default;
  RealKind kind_ = RealKind::Rational;
  BigInt a0_;
  WordStream quotients_ = WordStream::explicit_word({});
  std::optional<BigRational> rational_;
  std::optional<QuadraticSurd> surd_;
  std::optional<QuadraticNumber> exact_;
};

struct NormProduct {
  CertifiedValue value;  // q * ||q alpha||
  BigInt nearest;        // integer closest to q alpha
  bool tie = false;      // q alpha is a half-integer (rational alpha only)
};

/// Exact q * ||q x|| for x in a quadratic field; `nearest` receives the closest integer.
QuadraticNumber exact_norm_product(const BigInt& q, const QuadraticNumber& x, BigInt* nearest = nullptr);

/// Grows the convergents of a stream-backed real on demand and evaluates
/// q * ||q alpha|| to a requested relative width.
class StreamEvaluator {
 public:
  StreamEvaluator(BigInt a0, WordStream quotients);

  /// Closed cylinder after `depth` quotients.
  std::pair<BigRational, BigRational> bracket(std::size_t depth);
  NormProduct norm_product(const BigInt& q, std::size_t rel_bits);
  const Convergent& convergent(std::size_t n);

 private:
  void extend_to(std::size_t n);
  BigInt a0_;
  WordStream quotients_;
  std::vector<Convergent> conv_;
  std::size_t depth_hint_ = 1;
};

/// q * ||q alpha||: exact for rationals and surds (with a `rel_bits` enclosure),
/// adaptive enclosure of relative width <= 2^-rel_bits for streams.
NormProduct q_norm_product(const BigInt& q, const RealSource& alpha, std::size_t rel_bits = 40);

}  // namespace littlewood
