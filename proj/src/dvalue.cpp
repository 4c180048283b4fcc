#include "littlewood/dvalue.hpp"

namespace littlewood {

namespace {

void check_d(const BigInt& d) {
  require(d >= 2, ErrorKind::InvalidArgument, "every d_k must be at least 2");
  check_digit_cap(d, "valuation parameter");
}

}  // namespace

PseudoValuation PseudoValuation::constant(BigInt d) {
  check_d(d);
  PseudoValuation v;
  v.rule_ = ValuationRule::Constant;
  v.tail_ = std::move(d);
  return v;
}

PseudoValuation PseudoValuation::explicit_sequence(std::vector<BigInt> ds, BigInt tail) {
  for (const auto& d : ds) check_d(d);
  check_d(tail);
  PseudoValuation v;
  v.rule_ = ValuationRule::Explicit;
  v.values_ = std::move(ds);
  v.tail_ = std::move(tail);
  return v;
}

PseudoValuation PseudoValuation::periodic(std::vector<BigInt> pattern) {
  require(!pattern.empty(), ErrorKind::InvalidArgument, "periodic valuation needs a nonempty pattern");
  for (const auto& d : pattern) check_d(d);
  PseudoValuation v;
  v.rule_ = ValuationRule::Periodic;
  v.values_ = std::move(pattern);
  return v;
}

PseudoValuation PseudoValuation::e_sequence(std::vector<BigInt> e) {
  require(!e.empty(), ErrorKind::InvalidArgument, "e-sequence must be nonempty");
  BigInt prev = 1;
  for (const auto& x : e) {
    check_digit_cap(x, "valuation parameter");
    require(x >= 2 * prev && x % prev == 0, ErrorKind::InvalidArgument,
            "e-sequence must satisfy e_{n-1} | e_n and e_n >= 2 e_{n-1}");
    prev = x;
  }
  PseudoValuation v;
  v.rule_ = ValuationRule::ESequence;
  v.values_ = std::move(e);
  return v;
}

PseudoValuation PseudoValuation::doubly_exponential() {
  PseudoValuation v;
  v.rule_ = ValuationRule::DoublyExponential;
  return v;
}

bool PseudoValuation::bounded() const noexcept {
  return rule_ == ValuationRule::Constant || rule_ == ValuationRule::Periodic || rule_ == ValuationRule::Explicit;
}

BigInt PseudoValuation::d(std::size_t k) const {
  require(k >= 1, ErrorKind::InvalidArgument, "d_k is indexed from 1");
  switch (rule_) {
    case ValuationRule::Constant:
      return tail_;
    case ValuationRule::Explicit:
      return k <= values_.size() ? values_[k - 1] : tail_;
    case ValuationRule::Periodic:
      return values_[(k - 1) % values_.size()];
    case ValuationRule::ESequence:
      if (k > values_.size()) fail(ErrorKind::SequenceExhausted, "e-sequence has no entry e_" + std::to_string(k));
      return k == 1 ? values_[0] : BigInt(values_[k - 1] / values_[k - 2]);
    case ValuationRule::DoublyExponential:
      // e_1 = 4 and e_k / e_{k-1} = 2^(2^(k-1)).
      return k == 1 ? BigInt(4) : pow2(std::size_t{1} << (k - 1));
  }
  return tail_;
}

BigInt PseudoValuation::e(std::size_t n) const {
  if (n == 0) return 1;
  if (rule_ == ValuationRule::ESequence) {
    if (n > values_.size()) fail(ErrorKind::SequenceExhausted, "e-sequence has no entry e_" + std::to_string(n));
    return values_[n - 1];
  }
  if (rule_ == ValuationRule::DoublyExponential) {
    require(n < 40, ErrorKind::Overflow, "e_n = 2^(2^n) too large");
    BigInt x = pow2(std::size_t{1} << n);
    check_digit_cap(x, "e_n");
    return x;
  }
  BigInt x = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    x *= d(k);
    check_digit_cap(x, "e_n");
  }
  return x;
}

std::size_t PseudoValuation::w(const BigInt& q) const {
  require(sgn(q) != 0, ErrorKind::InvalidArgument, "w_D needs q != 0");
  BigInt r = q;
  mpz_abs(r.get_mpz_t(), r.get_mpz_t());
  std::size_t n = 0;
  for (;;) {
    BigInt dk = d(n + 1);
    if (dk > r || !mpz_divisible_p(r.get_mpz_t(), dk.get_mpz_t())) return n;
    r /= dk;
    ++n;
  }
}

DValue PseudoValuation::abs(const BigInt& q) const {
  DValue out;
  out.w = w(q);
  out.e = e(out.w);
  return out;
}

BigInt e_n(const PseudoValuation& v, std::size_t n) { return v.e(n); }
std::size_t w_D(const PseudoValuation& v, const BigInt& q) { return v.w(q); }
DValue abs_D(const PseudoValuation& v, const BigInt& q) { return v.abs(q); }

std::size_t ell_adic_exponent(const BigInt& q, const BigInt& ell) {
  require(sgn(q) != 0, ErrorKind::InvalidArgument, "q must be nonzero");
  require(ell >= 2, ErrorKind::InvalidArgument, "ell must be at least 2");
  BigInt r = q;
  mpz_abs(r.get_mpz_t(), r.get_mpz_t());
  std::size_t a = 0;
  while (mpz_divisible_p(r.get_mpz_t(), ell.get_mpz_t())) {
    r /= ell;
    ++a;
  }
  return a;
}

}  // namespace littlewood
