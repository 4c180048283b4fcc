#pragma once

// Pseudo-absolute values |q|_D = 1 / e_{w(q)} attached to a sequence D = (d_k)
// of integers >= 2, with e_n = d_1 * ... * d_n.

#include <cstddef>
#include <vector>

#include "littlewood/numbers.hpp"

namespace littlewood {

enum class ValuationRule { Constant, Explicit, Periodic, ESequence, DoublyExponential };

struct DValue {
  std::size_t w = 0;  // largest n with e_n | q
  BigInt e{1};        // e_w

  BigRational value() const { return make_rational(BigInt(1), e); }
};

class PseudoValuation {
 public:
  static PseudoValuation constant(BigInt d);
  /// d_1..d_k, then `tail` forever.
  static PseudoValuation explicit_sequence(std::vector<BigInt> ds, BigInt tail);
  static PseudoValuation periodic(std::vector<BigInt> pattern);
  /// e_1, e_2, ... given directly; each must divide the next with quotient >= 2.
  /// Indices past the list raise SequenceExhausted.
  static PseudoValuation e_sequence(std::vector<BigInt> e);
  /// e_n = 2^(2^n) for n >= 1.
  static PseudoValuation doubly_exponential();

  ValuationRule rule() const noexcept { return rule_; }
  /// Constant, Periodic and Explicit rules have bounded d_k.
  bool bounded() const noexcept;

  /// d_k for k >= 1.
  BigInt d(std::size_t k) const;
  BigInt e(std::size_t n) const;
  std::size_t w(const BigInt& q) const;
  DValue abs(const BigInt& q) const;

  const std::vector<BigInt>& values() const noexcept { return values_; }
  const BigInt& tail() const noexcept { return tail_; }

 private:
  PseudoValuation() = default;
  ValuationRule rule_ = ValuationRule::Constant;
  std::vector<BigInt> values_;  // pattern, explicit prefix or e-list
  BigInt tail_{2};
};

BigInt e_n(const PseudoValuation& v, std::size_t n);
std::size_t w_D(const PseudoValuation& v, const BigInt& q);
DValue abs_D(const PseudoValuation& v, const BigInt& q);

/// Largest a with ell^a | q (q != 0, ell >= 2).
std::size_t ell_adic_exponent(const BigInt& q, const BigInt& ell);

}  // namespace littlewood
