#include "littlewood/cf.hpp"

#include <algorithm>
#include <map>

namespace littlewood {

namespace {

Letter to_letter(const BigInt& a) {
  require(sgn(a) > 0, ErrorKind::InvalidArgument, "partial quotient must be positive");
  require(a.fits_ulong_p(), ErrorKind::Overflow, "partial quotient does not fit in 64 bits");
  return static_cast<Letter>(a.get_ui());
}

BigInt from_letter(Letter a) { return BigInt(static_cast<unsigned long>(a)); }

// p_n, q_n after all of `quotients`, plus p_{n-1}, q_{n-1}.
struct ConvergentPair {
  BigInt p, q, p_prev, q_prev;
};

ConvergentPair run_convergents(const BigInt& a0, std::span<const Letter> quotients) {
  ConvergentPair c{a0, 1, 1, 0};
  for (Letter a : quotients) {
    BigInt p = from_letter(a) * c.p + c.p_prev;
    BigInt q = from_letter(a) * c.q + c.q_prev;
    c.p_prev = std::move(c.p);
    c.q_prev = std::move(c.q);
    c.p = std::move(p);
    c.q = std::move(q);
  }
  return c;
}

// Distance interval from [lo, hi] to the nearest integer, when that integer is unique.
struct NearestBracket {
  bool ok = false;
  BigInt k;
  BigRational dlo, dhi;
};

NearestBracket nearest_of(const BigRational& lo, const BigRational& hi) {
  NearestBracket out;
  const BigRational half(1, 2);
  BigRational shifted = lo + half;
  BigInt k = floor(shifted);
  // Unique nearest integer k needs k - 1/2 < lo and hi < k + 1/2.
  if (shifted == BigRational(k)) return out;
  if (!(hi < BigRational(k) + half)) return out;
  BigRational a = lo - BigRational(k), b = hi - BigRational(k);
  out.k = k;
  if (sgn(a) <= 0 && sgn(b) >= 0) {
    out.dlo = 0;
  } else {
    out.dlo = std::min(abs(a), abs(b));
  }
  out.dhi = std::max(abs(a), abs(b));
  out.ok = true;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Expansions

CFExpansion cf_of_rational(const BigRational& x) {
  CFExpansion cf;
  BigInt num = x.get_num(), den = x.get_den();
  mpz_fdiv_q(cf.a0.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  BigInt r = num - cf.a0 * den;
  BigInt n = den;
  while (sgn(r) != 0) {
    BigInt a = n / r;
    BigInt next = n - a * r;
    cf.preperiod.push_back(to_letter(a));
    n = std::move(r);
    r = std::move(next);
  }
  return cf;
}

CFExpansion cf_of_surd(const QuadraticSurd& x) {
  BigInt P = x.P(), Q = x.Q();
  const BigInt& D = x.D();
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::vector<BigInt> a;
  std::size_t first = 0, second = 0;
  for (std::size_t k = 0;; ++k) {
    auto [it, inserted] = seen.emplace(std::make_pair(P, Q), k);
    if (!inserted) {
      first = it->second;
      second = k;
      break;
    }
    BigInt q = floor_quadratic(P, 1, D, Q);
    a.push_back(q);
    BigInt P2 = q * Q - P;
    BigInt Q2 = (D - P2 * P2) / Q;
    P = std::move(P2);
    Q = std::move(Q2);
    check_digit_cap(Q, "continued fraction state");
  }
  // a[0] is the integer part; the cycle [first, second) can only start at index >= 1.
  const std::size_t start = std::max<std::size_t>(first, 1);
  const std::size_t len = second - first;
  CFExpansion cf;
  cf.a0 = a[0];
  for (std::size_t k = 1; k < start; ++k) cf.preperiod.push_back(to_letter(a[k]));
  for (std::size_t k = start; k < start + len; ++k) {
    cf.period.push_back(to_letter(a[first + (k - first) % len]));
  }
  return cf;
}

BigRational cf_value_finite(const BigInt& a0, std::span<const Letter> quotients) {
  ConvergentPair c = run_convergents(a0, quotients);
  return make_rational(c.p, c.q);
}

QuadraticNumber purely_periodic_value(std::span<const Letter> period, const BigInt* core) {
  require(!period.empty(), ErrorKind::InvalidArgument, "empty period");
  ConvergentPair c = run_convergents(from_letter(period[0]), period.subspan(1));
  const BigInt& h = c.p;
  const BigInt& k = c.q;
  const BigInt& h1 = c.p_prev;
  const BigInt& k1 = c.q_prev;
  BigInt b = h - k1;
  BigInt disc = b * b + 4 * k * h1;
  if (core != nullptr && mpz_divisible_p(disc.get_mpz_t(), core->get_mpz_t())) {
    BigInt rest = disc / *core;
    if (is_perfect_square(rest)) {
      return QuadraticNumber(make_rational(b, 2 * k), make_rational(isqrt(rest), 2 * k), *core);
    }
  }
  QuadraticSurd s = QuadraticSurd::canonicalize(b, disc, 2 * k);
  return s.value();
}

QuadraticNumber cf_value(const CFExpansion& cf, const BigInt* core) {
  if (cf.is_finite()) return QuadraticNumber(cf_value_finite(cf.a0, cf.preperiod));
  QuadraticNumber y = purely_periodic_value(cf.period, core);
  ConvergentPair c = run_convergents(cf.a0, cf.preperiod);
  QuadraticNumber num = y * QuadraticNumber(BigRational(c.p)) + QuadraticNumber(BigRational(c.p_prev));
  QuadraticNumber den = y * QuadraticNumber(BigRational(c.q)) + QuadraticNumber(BigRational(c.q_prev));
  return num / den;
}

WordStream quotient_stream(const CFExpansion& cf) {
  if (cf.is_finite()) return WordStream::explicit_word(cf.preperiod);
  return WordStream::periodic(cf.preperiod, cf.period);
}

std::vector<Convergent> convergents(const BigInt& a0, const WordStream& s, std::size_t N) {
  std::vector<Letter> a = s.prefix(N);
  std::vector<Convergent> out;
  out.reserve(N + 1);
  BigInt p_prev = 1, q_prev = 0;
  out.push_back({0, a0, 1});
  for (std::size_t n = 1; n <= N; ++n) {
    const Convergent& last = out.back();
    BigInt p = from_letter(a[n - 1]) * last.p + p_prev;
    BigInt q = from_letter(a[n - 1]) * last.q + q_prev;
    check_digit_cap(q, "convergent denominator");
    p_prev = last.p;
    q_prev = last.q;
    out.push_back({static_cast<long>(n), std::move(p), std::move(q)});
  }
  return out;
}

BigInt continuant(std::span<const Letter> w) {
  BigInt prev = 0, cur = 1;
  for (Letter a : w) {
    BigInt next = from_letter(a) * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::pair<BigRational, BigRational> cylinder(const BigInt& a0, std::span<const Letter> quotients) {
  ConvergentPair c = run_convergents(a0, quotients);
  BigRational x = make_rational(c.p, c.q);
  BigRational y = make_rational(c.p + c.p_prev, c.q + c.q_prev);
  if (y < x) std::swap(x, y);
  return {x, y};
}

DyadicInterval interval_refine(const BigInt& a0, const WordStream& s, std::size_t bits) {
  StreamEvaluator ev(a0, s);
  const BigRational target(BigInt(1), pow2(bits + 1));
  for (std::size_t depth = 0;; ++depth) {
    auto [lo, hi] = ev.bracket(depth);
    if (hi - lo <= target) return DyadicInterval::enclosing(lo, hi, bits + 2);
  }
}

// ---------------------------------------------------------------------------
// Certified values

CertifiedValue CertifiedValue::from_exact(const QuadraticNumber& x, std::size_t rel_bits) {
  CertifiedValue v;
  v.exact = x;
  if (x.is_rational()) {
    v.lo = v.hi = x.rational_part();
  } else {
    DyadicInterval iv = x.enclose_relative(rel_bits);
    v.lo = iv.lo();
    v.hi = iv.hi();
  }
  return v;
}

CertifiedValue CertifiedValue::from_bounds(BigRational lo, BigRational hi) {
  require(lo <= hi, ErrorKind::InvalidArgument, "enclosure bounds out of order");
  CertifiedValue v;
  v.lo = std::move(lo);
  v.hi = std::move(hi);
  if (v.lo == v.hi) v.exact = QuadraticNumber(v.lo);
  return v;
}

CertifiedValue CertifiedValue::scaled(const BigRational& k) const {
  require(sgn(k) > 0, ErrorKind::InvalidArgument, "scale factor must be positive");
  CertifiedValue v;
  if (exact) v.exact = *exact * QuadraticNumber(k);
  v.lo = lo * k;
  v.hi = hi * k;
  return v;
}

double CertifiedValue::approx() const {
  if (exact) return exact->approx();
  BigRational mid = (lo + hi) / 2;
  return mid.get_d();
}

std::optional<std::strong_ordering> certified_compare(const CertifiedValue& a, const CertifiedValue& b) {
  if (a.exact && b.exact) {
    const BigInt& da = a.exact->radicand();
    const BigInt& db = b.exact->radicand();
    if (a.exact->is_rational() || b.exact->is_rational() || da == db) return *a.exact <=> *b.exact;
  }
  if (a.hi < b.lo) return std::strong_ordering::less;
  if (a.lo > b.hi) return std::strong_ordering::greater;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// RealSource

RealSource RealSource::rational(BigRational x) {
  RealSource r;
  r.kind_ = RealKind::Rational;
  r.a0_ = floor(x);
  r.exact_ = QuadraticNumber(x);
  r.rational_ = std::move(x);
  return r;
}

RealSource RealSource::surd(QuadraticSurd x) {
  RealSource r;
  r.kind_ = RealKind::Surd;
  r.a0_ = x.floor();
  r.exact_ = x.value();
  r.surd_ = std::move(x);
  return r;
}

RealSource RealSource::stream(BigInt a0, WordStream quotients, const BigInt* core) {
  RealSource r;
  r.kind_ = RealKind::Stream;
  r.a0_ = std::move(a0);
  if (auto parts = quotients.periodic_parts()) {
    CFExpansion cf{r.a0_, parts->first, parts->second};
    r.exact_ = cf_value(cf, core);
  } else if (auto len = quotients.length()) {
    r.exact_ = QuadraticNumber(cf_value_finite(r.a0_, quotients.prefix(*len)));
  }
  r.quotients_ = std::move(quotients);
  return r;
}

bool RealSource::is_irrational() const {
  if (exact_) return !exact_->is_rational();
  return !quotients_.length().has_value();
}

DyadicInterval RealSource::enclose(std::size_t bits) const {
  if (exact_) return exact_->enclose(bits);
  return interval_refine(a0_, quotients_, bits);
}

// ---------------------------------------------------------------------------
// q * ||q alpha||

QuadraticNumber exact_norm_product(const BigInt& q, const QuadraticNumber& x, BigInt* nearest) {
  QuadraticNumber qq{BigRational(q)};
  QuadraticNumber y = qq * x;
  BigInt f = y.floor();
  QuadraticNumber frac = y - QuadraticNumber(BigRational(f));
  QuadraticNumber half{BigRational(1, 2)};
  QuadraticNumber dist;
  if (frac <= half) {
    dist = frac;
    if (nearest) *nearest = f;
  } else {
    dist = QuadraticNumber(BigRational(1)) - frac;
    if (nearest) *nearest = f + 1;
  }
  return qq.abs() * dist;
}

StreamEvaluator::StreamEvaluator(BigInt a0, WordStream quotients)
    : a0_(std::move(a0)), quotients_(std::move(quotients)) {
  conv_.push_back({0, a0_, 1});
}

void StreamEvaluator::extend_to(std::size_t n) {
  if (conv_.size() > n) return;
  const std::size_t have = conv_.size() - 1;
  std::size_t want = std::max(n, 2 * have);
  if (auto len = quotients_.length()) {
    if (n > *len) fail(ErrorKind::StreamExhausted, "finite word ended before the required depth");
    want = std::min(want, *len);
  }
  std::vector<Letter> batch = quotients_.shifted(have).take(want - have);
  for (Letter a : batch) {
    const Convergent& last = conv_.back();
    BigInt p_prev = conv_.size() >= 2 ? conv_[conv_.size() - 2].p : BigInt(1);
    BigInt q_prev = conv_.size() >= 2 ? conv_[conv_.size() - 2].q : BigInt(0);
    BigInt p = from_letter(a) * last.p + p_prev;
    BigInt q = from_letter(a) * last.q + q_prev;
    check_digit_cap(q, "convergent denominator");
    conv_.push_back({last.n + 1, std::move(p), std::move(q)});
  }
}

const Convergent& StreamEvaluator::convergent(std::size_t n) {
  extend_to(n);
  return conv_[n];
}

std::pair<BigRational, BigRational> StreamEvaluator::bracket(std::size_t depth) {
  extend_to(depth);
  const Convergent& c = conv_[depth];
  BigInt p_prev = depth >= 1 ? conv_[depth - 1].p : BigInt(1);
  BigInt q_prev = depth >= 1 ? conv_[depth - 1].q : BigInt(0);
  BigRational x = make_rational(c.p, c.q);
  BigRational y = make_rational(c.p + p_prev, c.q + q_prev);
  if (y < x) std::swap(x, y);
  return {x, y};
}

NormProduct StreamEvaluator::norm_product(const BigInt& q, std::size_t rel_bits) {
  require(sgn(q) > 0, ErrorKind::InvalidArgument, "q must be positive");
  const BigRational qr(q);
  const auto len = quotients_.length();
  std::size_t depth = depth_hint_;
  for (;;) {
    if (len && depth > *len) {
      if (depth_hint_ > *len) fail(ErrorKind::StreamExhausted, "finite word too short to certify q*||q alpha||");
      depth = *len;
      depth_hint_ = *len + 1;
    }
    auto [lo, hi] = bracket(depth);
    NearestBracket nb = nearest_of(qr * lo, qr * hi);
    if (nb.ok && sgn(nb.dlo) > 0) {
      BigRational vlo = qr * nb.dlo, vhi = qr * nb.dhi;
      if ((vhi - vlo) * BigRational(pow2(rel_bits)) <= vlo) {
        if (!len || depth < *len) depth_hint_ = depth;
        return NormProduct{CertifiedValue::from_bounds(vlo, vhi), nb.k, false};
      }
    }
    if (len && depth == *len) fail(ErrorKind::StreamExhausted, "finite word too short to certify q*||q alpha||");
    depth = 2 * depth + 2;
  }
}

NormProduct q_norm_product(const BigInt& q, const RealSource& alpha, std::size_t rel_bits) {
  require(sgn(q) > 0, ErrorKind::InvalidArgument, "q must be positive");
  if (const auto& x = alpha.exact()) {
    NormProduct out;
    QuadraticNumber v = exact_norm_product(q, *x, &out.nearest);
    out.value = CertifiedValue::from_exact(v, std::max<std::size_t>(rel_bits, 60));
    if (x->is_rational()) {
      BigRational frac = BigRational(q) * x->rational_part();
      frac -= BigRational(floor(frac));
      out.tie = frac == BigRational(1, 2);
    }
    return out;
  }
  StreamEvaluator ev(alpha.integer_part(), alpha.quotients());
  return ev.norm_product(q, rel_bits);
}

}  // namespace littlewood
