#include "littlewood/littlewood.hpp"

#include <algorithm>
#include <exception>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "detail.hpp"

namespace littlewood {

namespace detail {

std::pair<BigInt, WordStream> quotient_source(const RealSource& alpha) {
  switch (alpha.kind()) {
    case RealKind::Rational: {
      CFExpansion cf = cf_of_rational(*alpha.as_rational());
      return {cf.a0, quotient_stream(cf)};
    }
    case RealKind::Surd: {
      CFExpansion cf = cf_of_surd(*alpha.as_surd());
      return {cf.a0, quotient_stream(cf)};
    }
    case RealKind::Stream:
      break;
  }
  return {alpha.integer_part(), alpha.quotients()};
}

std::string approx_string(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

bool at_most(const CertifiedValue& x, const BigRational& bound) {
  if (x.exact) return *x.exact <= QuadraticNumber(bound);
  return x.hi <= bound;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t first, std::uint64_t last,
                                                                 unsigned parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (last < first) return out;
  const std::uint64_t total = last - first + 1;
  parts = std::max(1U, parts);
  const std::uint64_t step = (total + parts - 1) / parts;
  for (std::uint64_t lo = first; lo <= last; lo += step) {
    out.emplace_back(lo, std::min(last, lo + step - 1));
    if (last - lo < step) break;
  }
  return out;
}

}  // namespace detail

using detail::approx_string;
using detail::at_most;

// ---------------------------------------------------------------------------
// Products

ProductValue littlewood_product(const BigInt& q, const RealSource& alpha, const PseudoValuation& v,
                                std::size_t rel_bits) {
  require(sgn(q) > 0, ErrorKind::InvalidArgument, "q must be positive");
  ProductValue out;
  out.q = q;
  out.norm = q_norm_product(q, alpha, rel_bits);
  out.dvalue = v.abs(q);
  out.value = out.norm.value.scaled(out.dvalue.value());
  return out;
}

bool certified_less(const CertifiedValue& a, const CertifiedValue& b) {
  auto c = certified_compare(a, b);
  return c && *c == std::strong_ordering::less;
}

namespace {

struct ChunkScan {
  std::vector<ScanRecord> trace;
  bool certified = true;
};

// Exact inputs are compared in the field; enclosures are only built for records.
ChunkScan scan_exact(const QuadraticNumber& x, const PseudoValuation& v, std::uint64_t lo, std::uint64_t hi) {
  ChunkScan out;
  std::optional<QuadraticNumber> best;
  for (std::uint64_t q = lo; q <= hi; ++q) {
    BigInt qb(static_cast<unsigned long>(q));
    QuadraticNumber val = exact_norm_product(qb, x) * QuadraticNumber(v.abs(qb).value());
    if (!best || val < *best) {
      best = val;
      out.trace.push_back({qb, CertifiedValue::from_exact(val)});
      if (val.sign() == 0) break;
    }
  }
  return out;
}

ChunkScan scan_stream(const RealSource& alpha, const PseudoValuation& v, std::uint64_t lo, std::uint64_t hi) {
  ChunkScan out;
  StreamEvaluator ev(alpha.integer_part(), alpha.quotients());
  std::optional<CertifiedValue> best;
  for (std::uint64_t q = lo; q <= hi; ++q) {
    BigInt qb(static_cast<unsigned long>(q));
    CertifiedValue val = ev.norm_product(qb, 30).value.scaled(v.abs(qb).value());
    if (!best) {
      best = val;
      out.trace.push_back({qb, val});
      continue;
    }
    auto c = certified_compare(val, *best);
    if (!c) {
      // Tighten once; still undecided means the record is not claimed.
      val = ev.norm_product(qb, 120).value.scaled(v.abs(qb).value());
      c = certified_compare(val, *best);
      if (!c) out.certified = false;
    }
    if (c && *c == std::strong_ordering::less) {
      best = val;
      out.trace.push_back({qb, val});
    }
  }
  return out;
}

}  // namespace

ScanResult infimum_scan(const RealSource& alpha, const PseudoValuation& v, std::uint64_t q_max, unsigned threads) {
  require(q_max >= 1, ErrorKind::InvalidArgument, "Q_max must be at least 1");
  auto chunks = detail::split_range(1, q_max, threads);
  std::vector<ChunkScan> results(chunks.size());
  auto work = [&](std::size_t k) {
    auto [lo, hi] = chunks[k];
    results[k] = alpha.exact() ? scan_exact(*alpha.exact(), v, lo, hi) : scan_stream(alpha, v, lo, hi);
  };
  if (chunks.size() == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(chunks.size());
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      pool.emplace_back([&, k] {
        try {
          work(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  // A global record is a chunk record below everything earlier.
  ScanResult out;
  for (auto& chunk : results) {
    if (!chunk.certified) out.certified = false;
    for (auto& rec : chunk.trace) {
      if (out.trace.empty()) {
        out.trace.push_back(std::move(rec));
        continue;
      }
      auto c = certified_compare(rec.value, out.trace.back().value);
      if (!c) out.certified = false;
      if (c && *c == std::strong_ordering::less) out.trace.push_back(std::move(rec));
    }
  }
  out.best_q = out.trace.back().q;
  out.best_value = out.trace.back().value;
  return out;
}

ConvergentScanResult convergent_multiple_scan(const RealSource& alpha, const PseudoValuation& v, std::size_t N,
                                              std::size_t k_max, std::optional<BigInt> q_cap) {
  auto [a0, stream] = detail::quotient_source(alpha);
  std::size_t depth = N;
  if (auto len = stream.length()) depth = std::min(depth, *len);
  std::vector<Convergent> conv = convergents(a0, stream, depth);
  ConvergentScanResult out;
  bool have = false;
  for (std::size_t n = 0; n <= depth; ++n) {
    for (std::size_t k = 0; k <= k_max; ++k) {
      BigInt e;
      try {
        e = v.e(k);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::SequenceExhausted) break;
        throw;
      }
      BigInt q = e * conv[n].q;
      if (q_cap && q > *q_cap) break;
      ++out.candidates;
      ProductValue pv = littlewood_product(q, alpha, v);
      if (!have || certified_less(pv.value, out.best_value)) {
        have = true;
        out.best_q = q;
        out.best_value = pv.value;
        out.n = n;
        out.k = k;
      }
    }
  }
  require(have, ErrorKind::InvalidArgument, "no candidate within q_cap");
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses

namespace {

BigInt abs_value(BigInt x) {
  mpz_abs(x.get_mpz_t(), x.get_mpz_t());
  return x;
}

void fill_values(WitnessRecord& w, const RealSource& alpha, const PseudoValuation* v) {
  w.norm = q_norm_product(w.Q, alpha, 40).value;
  w.ell_exponent = ell_adic_exponent(w.Q, w.ell);
  w.product = w.norm.scaled(make_rational(BigInt(1), pow(w.ell, w.ell_exponent)));
  if (v) w.dvalue = v->abs(w.Q);
  w.ledger = verify_witness(w, alpha, v);
  w.verified = std::all_of(w.ledger.begin(), w.ledger.end(), [](const LedgerEntry& e) { return e.ok; });
}

}  // namespace

WitnessRecord theorem23_witness(const BigInt& a0, const WordStream& s, std::size_t m, const BigInt& ell,
                                std::size_t horizon, const PseudoValuation* v) {
  require(ell >= 2, ErrorKind::InvalidArgument, "ell must be at least 2");
  std::vector<std::size_t> returns = prefix_return_times(s, m, horizon);
  const BigInt needed = ell * ell + 1;
  if (BigInt(static_cast<unsigned long>(returns.size())) < needed) {
    fail(ErrorKind::NotEnoughReturns, "found " + std::to_string(returns.size()) + " return times, need " +
                                          needed.get_str());
  }
  StreamEvaluator ev(a0, s);
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::size_t ni = 0, nj = 0;
  for (std::size_t r : returns) {
    BigInt x = ev.convergent(m + r).q, y = ev.convergent(m + r - 1).q;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), ell.get_mpz_t());
    mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), ell.get_mpz_t());
    auto [it, inserted] = seen.emplace(std::make_pair(x, y), r);
    if (!inserted) {
      ni = it->second;
      nj = r;
      break;
    }
  }
  if (nj == 0) fail(ErrorKind::VerificationFailed, "pigeonhole pair not found among the return times");

  WitnessRecord w;
  w.kind = WitnessKind::Recurrent;
  w.ell = ell;
  w.m = m;
  w.i = ni;
  w.j = nj;
  const BigInt qi = ev.convergent(m + ni).q;
  const BigInt qi1 = ev.convergent(m + ni - 1).q;
  const BigInt qj = ev.convergent(m + nj).q;
  const BigInt qj1 = ev.convergent(m + nj - 1).q;
  w.Q = abs_value(qi * qj1 - qi1 * qj);
  if (sgn(w.Q) == 0) fail(ErrorKind::DegenerateQ, "the two convergent pairs are proportional");
  w.q_base = ev.convergent(m).q;
  w.norm_bound = BigRational(8 * w.q_base * w.q_base);
  w.product_bound = w.norm_bound / BigRational(ell);
  fill_values(w, RealSource::stream(a0, s), v);
  return w;
}

WitnessRecord quadratic_witness(const QuadraticSurd& alpha, const PseudoValuation& v, std::size_t n) {
  require(v.bounded(), ErrorKind::PreconditionViolated, "quadratic witness needs a bounded valuation");
  require(n >= 1, ErrorKind::InvalidArgument, "n must be at least 1");
  const BigInt ell = v.e(n);
  const SurdRecurrence rec = surd_denominator_recurrence(alpha);
  const std::size_t r = rec.r, s = rec.s;
  const CFExpansion cf = cf_of_surd(alpha);
  const WordStream quotients = quotient_stream(cf);

  // q_k mod ell: from the expansion up to index r + 2s, then by the order-2s recurrence.
  std::vector<BigInt> u;
  {
    std::vector<Convergent> c = convergents(cf.a0, quotients, r + 2 * s);
    for (const auto& x : c) {
      BigInt y;
      mpz_fdiv_r(y.get_mpz_t(), x.q.get_mpz_t(), ell.get_mpz_t());
      u.push_back(y);
    }
  }
  const BigInt sign_term = (s % 2 == 0) ? BigInt(-1) : BigInt(1);  // q_{n+2s} = t q_{n+s} + sign_term q_n
  auto window_equal = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < 2 * s; ++k) {
      if (u[a + k] != u[b + k]) return false;
    }
    return true;
  };
  constexpr std::size_t kMaxPeriod = 50'000'000;
  std::size_t d = 0;
  for (std::size_t shift = 1; shift <= kMaxPeriod; ++shift) {
    while (u.size() < r + shift + 2 * s) {
      std::size_t k = u.size() - 2 * s;
      BigInt y = rec.t * u[k + s] + sign_term * u[k];
      mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), ell.get_mpz_t());
      u.push_back(std::move(y));
    }
    if (window_equal(r, r + shift)) {
      d = shift;
      break;
    }
  }
  require(d != 0, ErrorKind::Overflow, "period of q_n mod ell exceeds the search limit");
  std::size_t m = r;
  while (m > 0 && u[m - 1] == u[m - 1 + d]) --m;

  std::vector<Convergent> conv = convergents(cf.a0, quotients, m + d + 1);
  WitnessRecord w;
  w.kind = WitnessKind::Quadratic;
  w.ell = ell;
  w.m = m;
  w.j = d;
  w.Q = abs_value(conv[m].q * conv[m + d + 1].q - conv[m + 1].q * conv[m + d].q);
  if (sgn(w.Q) == 0) fail(ErrorKind::DegenerateQ, "the two convergent pairs are proportional");
  w.q_base = conv[m + 1].q;
  w.norm_bound = BigRational(2 * w.q_base * w.q_base);
  w.product_bound = w.norm_bound / BigRational(ell);
  fill_values(w, RealSource::surd(alpha), &v);
  return w;
}

std::vector<LedgerEntry> verify_witness(const WitnessRecord& w, const RealSource& alpha, const PseudoValuation* v) {
  std::vector<LedgerEntry> ledger;
  auto add = [&](std::string name, bool ok, std::string detail) {
    ledger.push_back({std::move(name), ok, std::move(detail)});
  };
  add("Q > 0", sgn(w.Q) > 0, w.Q.get_str());
  if (sgn(w.Q) <= 0 || w.ell < 2) return ledger;
  add("ell | Q", mpz_divisible_p(w.Q.get_mpz_t(), w.ell.get_mpz_t()) != 0, "ell = " + w.ell.get_str());

  auto [a0, stream] = detail::quotient_source(alpha);
  StreamEvaluator ev(a0, stream);
  const std::size_t base_index = w.kind == WitnessKind::Recurrent ? w.m : w.m + 1;
  const BigInt q_base = ev.convergent(base_index).q;
  const BigRational bound = BigRational((w.kind == WitnessKind::Recurrent ? 8 : 2) * q_base * q_base);
  add("bound recomputed", bound == w.norm_bound,
      (w.kind == WitnessKind::Recurrent ? "8 q_m^2 = " : "2 q_{m+1}^2 = ") + to_string(bound));

  const CertifiedValue norm = q_norm_product(w.Q, alpha, 40).value;
  add("Q ||Q alpha|| <= bound", at_most(norm, bound), approx_string(norm.approx()) + " <= " + to_string(bound));

  const std::size_t a = ell_adic_exponent(w.Q, w.ell);
  const CertifiedValue product = norm.scaled(make_rational(BigInt(1), pow(w.ell, a)));
  const BigRational product_bound = bound / BigRational(w.ell);
  add("Q ||Q alpha|| |Q|_ell <= bound / ell", a >= 1 && at_most(product, product_bound),
      approx_string(product.approx()) + " <= " + to_string(product_bound) + " (a = " + std::to_string(a) + ")");

  if (w.kind == WitnessKind::Quadratic && v) {
    const DValue dv = v->abs(w.Q);
    add("|Q|_D <= 1/ell", dv.value() <= make_rational(BigInt(1), w.ell), "1/" + dv.e.get_str());
  }
  return ledger;
}

}  // namespace littlewood
