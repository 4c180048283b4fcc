// Lagrange constants, recurrence periods and the two-parameter product probes.

#include <mpfr.h>

#include <algorithm>
#include <exception>
#include <map>
#include <thread>

#include "detail.hpp"
#include "littlewood/littlewood.hpp"

namespace littlewood {

namespace {

template <class Fn>
void parallel_for_ranges(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& ranges, Fn fn) {
  if (ranges.size() <= 1) {
    for (std::size_t k = 0; k < ranges.size(); ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(ranges.size());
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    pool.emplace_back([&, k] {
      try {
        fn(k);
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

void require_prime(const BigInt& p) {
  require(p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0, ErrorKind::InvalidArgument, "p must be prime");
}

}  // namespace

// ---------------------------------------------------------------------------
// Lagrange constants

LagrangeEstimate lagrange_constant(const QuadraticSurd& alpha) {
  const CFExpansion cf = cf_of_surd(alpha);
  const std::vector<Letter>& b = cf.period;
  const std::size_t s = b.size();
  std::optional<QuadraticNumber> best;
  std::vector<Letter> fwd(s), bwd(s);
  for (std::size_t k = 0; k < s; ++k) {
    // Along n with a_{n+1} = b_k: the complete quotient tends to [b_k; b_{k+1}, ...] and
    // q_n / q_{n-1} to [b_{k-1}; b_{k-2}, ...].
    for (std::size_t i = 0; i < s; ++i) {
      fwd[i] = b[(k + i) % s];
      bwd[i] = b[(k + 2 * s - 1 - i) % s];
    }
    QuadraticNumber x = purely_periodic_value(fwd, &alpha.core());
    QuadraticNumber z = purely_periodic_value(bwd, &alpha.core());
    QuadraticNumber c = (x + z.reciprocal()).reciprocal();
    if (!best || c < *best) best = c;
  }
  LagrangeEstimate out;
  CertifiedValue v = CertifiedValue::from_exact(*best, 60);
  out.exact = best;
  out.lower = v.lo;
  out.upper = v.hi;
  out.certified = true;
  out.depth = s;
  return out;
}

LagrangeEstimate lagrange_upper_bound(const RealSource& alpha, std::size_t N) {
  require(N >= 1, ErrorKind::InvalidArgument, "depth must be at least 1");
  auto [a0, stream] = detail::quotient_source(alpha);
  StreamEvaluator ev(a0, stream);
  LagrangeEstimate out;
  bool have = false;
  for (std::size_t n = 1; n <= N; ++n) {
    const BigInt q = ev.convergent(n).q;
    BigRational hi = alpha.exact() ? q_norm_product(q, alpha, 60).value.hi : ev.norm_product(q, 40).value.hi;
    if (!have || hi < out.upper) out.upper = hi;
    have = true;
  }
  out.depth = N;
  out.certified = false;
  return out;
}

std::vector<MultiplesRow> multiples_profile(const QuadraticSurd& alpha, std::size_t N, std::size_t m,
                                            const BigInt& q_m, unsigned threads) {
  require(N >= 1, ErrorKind::InvalidArgument, "N must be at least 1");
  const CFExpansion cf = cf_of_surd(alpha);
  const std::vector<Convergent> conv = convergents(cf.a0, quotient_stream(cf), m);
  require(conv[m].q == q_m, ErrorKind::InvalidArgument, "q_m is not the m-th convergent denominator");
  const QuadraticNumber c1 = *lagrange_constant(alpha).exact;
  const bool applies = m >= cf.preperiod.size();
  std::vector<MultiplesRow> rows(N);
  auto ranges = detail::split_range(1, N, threads);
  parallel_for_ranges(ranges, [&](std::size_t k) {
    for (std::uint64_t n = ranges[k].first; n <= ranges[k].second; ++n) {
      MultiplesRow& row = rows[n - 1];
      const BigInt nb(static_cast<unsigned long>(n));
      const QuadraticNumber nq{BigRational(nb)};
      row.n = n;
      row.c = *lagrange_constant(alpha * nb).exact;
      row.sandwich_ok = c1 / nq <= row.c && row.c <= nq * c1;
      row.bound = BigRational(8 * q_m * q_m) / BigRational(nb);
      row.bound_applies = applies;
      row.bound_ok = row.c <= QuadraticNumber(row.bound);
    }
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Recurrences

PeriodResult recurrence_period_mod(const std::vector<BigInt>& coeffs, const std::vector<BigInt>& init,
                                   const BigInt& ell) {
  const std::size_t d = coeffs.size();
  require(d >= 1, ErrorKind::InvalidArgument, "recurrence order must be at least 1");
  require(init.size() == d, ErrorKind::InvalidArgument, "need exactly d initial values");
  require(ell >= 2, ErrorKind::InvalidArgument, "modulus must be at least 2");
  require(ell.fits_ulong_p() && ell < BigInt(1UL << 62), ErrorKind::Overflow, "modulus too large");
  const std::uint64_t L = ell.get_ui();
  auto reduce = [&](const BigInt& x) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), ell.get_mpz_t());
    return static_cast<std::uint64_t>(r.get_ui());
  };
  std::vector<std::uint64_t> c(d), state(d);
  for (std::size_t i = 0; i < d; ++i) {
    c[i] = reduce(coeffs[i]);
    state[i] = reduce(init[i]);
  }
  constexpr std::size_t kMaxStates = 20'000'000;
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  PeriodResult out;
  for (std::size_t n = 0;; ++n) {
    auto [it, inserted] = seen.emplace(state, n);
    if (!inserted) {
      out.preperiod = it->second;
      out.period = n - it->second;
      break;
    }
    require(n < kMaxStates, ErrorKind::Overflow, "period search exceeded the state limit");
    unsigned __int128 next = 0;
    for (std::size_t i = 0; i < d; ++i) next = (next + static_cast<unsigned __int128>(c[i]) * state[i]) % L;
    std::rotate(state.begin(), state.begin() + 1, state.end());
    state.back() = static_cast<std::uint64_t>(next);
  }

  // ell = p^k with coeffs[0] a unit mod p.
  std::uint64_t p = 0;
  for (std::uint64_t f = 2; f * f <= L; ++f) {
    if (L % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) p = L;
  std::uint64_t rest = L;
  std::size_t k = 0;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest == 1 && c[0] % p != 0) {
    BigInt bound = (pow(BigInt(static_cast<unsigned long>(p)), d) - 1) * pow(BigInt(static_cast<unsigned long>(p)), k - 1);
    out.bound = bound.fits_ulong_p() ? std::optional<std::uint64_t>(bound.get_ui()) : std::nullopt;
    out.bound_ok = BigInt(static_cast<unsigned long>(out.period)) <= bound;
    if (!out.bound_ok) fail(ErrorKind::VerificationFailed, "period exceeds (p^d - 1) p^(k-1)");
  }
  return out;
}

SurdRecurrence surd_denominator_recurrence(const QuadraticSurd& alpha, std::size_t verify_count) {
  const CFExpansion cf = cf_of_surd(alpha);
  SurdRecurrence out;
  out.r = cf.preperiod.size();
  out.s = cf.period.size();
  const std::size_t r = out.r, s = out.s;
  const std::size_t count = std::max(3 * s + 1, verify_count);
  const std::vector<Convergent> c = convergents(cf.a0, quotient_stream(cf), r + 2 * s + count);
  const BigInt sign = s % 2 == 0 ? BigInt(1) : BigInt(-1);  // (-1)^s
  BigInt num = c[r + 2 * s].q + sign * c[r].q;
  if (!mpz_divisible_p(num.get_mpz_t(), c[r + s].q.get_mpz_t())) {
    fail(ErrorKind::VerificationFailed, "q_{r+s} does not divide q_{r+2s} + (-1)^s q_r");
  }
  out.t = num / c[r + s].q;
  for (std::size_t n = r; n < r + count; ++n) {
    if (c[n + 2 * s].q - out.t * c[n + s].q + sign * c[n].q != 0) {
      fail(ErrorKind::VerificationFailed, "denominator recurrence fails at n = " + std::to_string(n));
    }
  }
  out.verified = count;
  return out;
}

// ---------------------------------------------------------------------------
// Two-parameter products

BigRational padic_abs(const BigRational& x, const BigInt& p) {
  if (sgn(x) == 0) return BigRational(0);
  require(!mpz_divisible_p(x.get_den().get_mpz_t(), p.get_mpz_t()), ErrorKind::PAdicDenominator,
          "p divides the denominator");
  return make_rational(BigInt(1), pow(p, ell_adic_exponent(x.get_num(), p)));
}

namespace {

// u = [0; a_{n+1}, a_{n+2}, ...] with q_n, q_{n-1}, shared by every (a, b).
struct GLPPoint {
  BigInt q_n, q_prev;
  RealSource u = RealSource::rational(BigRational(0));
  BigInt p;
};

GLPPoint prepare_glp(const RealSource& alpha, std::size_t n, const BigInt& p) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be at least 1");
  require_prime(p);
  require(alpha.is_irrational(), ErrorKind::InvalidArgument, "alpha must be irrational");
  auto [a0, stream] = detail::quotient_source(alpha);
  std::vector<Convergent> c = convergents(a0, stream, n);
  const BigInt* core = nullptr;
  if (alpha.exact() && !alpha.exact()->is_rational()) core = &alpha.exact()->radicand();
  GLPPoint g{c[n].q, c[n - 1].q, RealSource::stream(BigInt(0), stream.shifted(n), core), p};
  if (mpz_divisible_p(g.q_prev.get_mpz_t(), p.get_mpz_t())) {
    fail(ErrorKind::PAdicDenominator, "p divides q_{n-1}");
  }
  return g;
}

CertifiedValue abs_linear(const RealSource& u, const BigInt& a, const BigInt& b) {
  const BigRational ar(a), br(b);
  if (const auto& x = u.exact()) {
    return CertifiedValue::from_exact((QuadraticNumber(ar) * *x - QuadraticNumber(br)).abs(), 60);
  }
  for (std::size_t bits = 64;; bits *= 2) {
    DyadicInterval iv = u.enclose(bits);
    BigRational lo = ar * iv.lo() - br, hi = ar * iv.hi() - br;
    if (sgn(lo) <= 0 && sgn(hi) >= 0) continue;
    if (sgn(hi) < 0) {
      std::swap(lo, hi);
      lo = -lo;
      hi = -hi;
    }
    if ((hi - lo) * BigRational(pow2(40)) <= lo) return CertifiedValue::from_bounds(lo, hi);
    require(bits < 8192, ErrorKind::Overflow, "enclosure precision limit reached");
  }
}

GLPValue glp_eval(const GLPPoint& g, const BigInt& a, const BigInt& b) {
  require(a >= 1 && b >= 0, ErrorKind::InvalidArgument, "need a >= 1 and b >= 0");
  GLPValue out;
  out.q_n = g.q_n;
  out.q_prev = g.q_prev;
  const BigInt mx = std::max(a, b);
  out.u = g.u.exact() ? CertifiedValue::from_exact(*g.u.exact(), 60) : abs_linear(g.u, BigInt(1), BigInt(0));
  out.arch = abs_linear(g.u, a, b).scaled(BigRational(mx));
  out.padic = make_rational(BigInt(1), pow(g.p, ell_adic_exponent(a * g.q_n + b * g.q_prev, g.p)));
  out.value = out.arch.scaled(out.padic);
  return out;
}

}  // namespace

GLPValue glp_product(const RealSource& alpha, std::size_t n, const BigInt& p, const BigInt& a, const BigInt& b) {
  return glp_eval(prepare_glp(alpha, n, p), a, b);
}

Prop41Result prop41_scan(const RealSource& alpha, std::size_t n, const BigInt& p, std::uint64_t a_max,
                         std::uint64_t b_max, std::optional<BigRational> eps, unsigned threads) {
  require(a_max >= 1 && b_max >= 1, ErrorKind::InvalidArgument, "ranges must be at least 1");
  const GLPPoint g = prepare_glp(alpha, n, p);
  auto ranges = detail::split_range(1, a_max, threads);
  std::vector<Prop41Result> part(ranges.size());
  std::vector<bool> have(ranges.size(), false);
  parallel_for_ranges(ranges, [&](std::size_t k) {
    for (std::uint64_t a = ranges[k].first; a <= ranges[k].second; ++a) {
      for (std::uint64_t b = 0; b <= b_max; ++b) {
        const BigInt ab(static_cast<unsigned long>(a)), bb(static_cast<unsigned long>(b));
        CertifiedValue v = glp_eval(g, ab, bb).value;
        if (!have[k]) {
          part[k] = Prop41Result{ab, bb, v, std::nullopt, std::nullopt, true};
          have[k] = true;
          continue;
        }
        auto c = certified_compare(v, part[k].min);
        if (!c) part[k].certified = false;
        if (c && *c == std::strong_ordering::less) {
          part[k].a = ab;
          part[k].b = bb;
          part[k].min = v;
        }
      }
    }
  });
  Prop41Result out = part[0];
  for (std::size_t k = 1; k < part.size(); ++k) {
    if (!part[k].certified) out.certified = false;
    auto c = certified_compare(part[k].min, out.min);
    if (!c) out.certified = false;
    if (c && *c == std::strong_ordering::less) {
      out.a = part[k].a;
      out.b = part[k].b;
      out.min = part[k].min;
    }
  }
  if (eps) {
    out.threshold = *eps * *eps / 4;
    auto c = certified_compare(out.min, CertifiedValue::from_bounds(*out.threshold, *out.threshold));
    if (c) out.above_threshold = *c == std::strong_ordering::greater;
  }
  return out;
}

namespace {

BigRational mpfr_to_rational(const mpfr_t x) {
  BigInt z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  if (e >= 0) return BigRational(z * pow2(static_cast<std::size_t>(e)));
  return make_rational(z, pow2(static_cast<std::size_t>(-e)));
}

}  // namespace

std::pair<BigRational, BigRational> exp_enclosure(const BigRational& t, std::size_t bits) {
  if (sgn(t) == 0) return {BigRational(1), BigRational(1)};
  mpfr_t x, y;
  mpfr_init2(x, static_cast<mpfr_prec_t>(bits + 16));
  mpfr_init2(y, static_cast<mpfr_prec_t>(bits + 16));
  mpfr_set_q(x, t.get_mpq_t(), MPFR_RNDD);
  mpfr_exp(y, x, MPFR_RNDD);
  BigRational lo = mpfr_to_rational(y);
  mpfr_set_q(x, t.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(y, x, MPFR_RNDU);
  BigRational hi = mpfr_to_rational(y);
  mpfr_clear(x);
  mpfr_clear(y);
  return {lo, hi};
}

std::optional<MahlerHit> mahler_small_vector(const RealSource& u, const BigRational& v, const BigInt& p,
                                             const BigRational& t, std::size_t n, const BigRational& delta,
                                             std::uint64_t search_bound) {
  require_prime(p);
  require(sgn(delta) > 0 && delta < 1, ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  require(sgn(t) >= 0, ErrorKind::InvalidArgument, "t must be nonnegative");
  require(!mpz_divisible_p(v.get_den().get_mpz_t(), p.get_mpz_t()), ErrorKind::PAdicDenominator,
          "v must be a p-adic integer");
  const BigRational pn(pow(p, n));
  const auto [e_lo, e_hi] = exp_enclosure(t, 60);
  require(e_lo >= pn, ErrorKind::PreconditionViolated, "cone condition e^t p^-n >= 1 fails");
  const BigRational p2n(pow(p, 2 * n));
  const BigRational arch_limit = delta * pn / e_hi;       // |a u - b| < this
  const BigRational max_limit = 2 * delta * e_lo * pn;    // max(a, b) < this
  const BigRational product_bound = 2 * delta * delta * delta;

  auto test = [&](std::uint64_t a, std::uint64_t b) -> std::optional<MahlerHit> {
    const BigInt ab(static_cast<unsigned long>(a)), bb(static_cast<unsigned long>(b));
    const BigRational mx(std::max(ab, bb));
    if (!(mx < max_limit)) return std::nullopt;
    const BigRational padic = padic_abs(BigRational(ab) * v - BigRational(bb), p);
    if (!(p2n * padic < delta)) return std::nullopt;
    const CertifiedValue arch = abs_linear(u, ab, bb);
    if (!(arch.exact ? *arch.exact < QuadraticNumber(arch_limit) : arch.hi < arch_limit)) return std::nullopt;
    return MahlerHit{ab, bb, mx * arch.hi * padic, product_bound};
  };
  auto test_or_zero = [&](std::uint64_t a, std::uint64_t b) -> std::optional<MahlerHit> {
    if (a == 0 && b == 0) return std::nullopt;
    if (a == 0) {
      // |0 u - b| = b needs no enclosure.
      const BigInt bb(static_cast<unsigned long>(b));
      const BigRational br(bb);
      const BigRational padic = padic_abs(-br, p);
      if (br < max_limit && p2n * padic < delta && br < arch_limit) return MahlerHit{BigInt(0), bb, br * br * padic, product_bound};
      return std::nullopt;
    }
    return test(a, b);
  };
  for (std::uint64_t S = 1; S <= search_bound; ++S) {
    for (std::uint64_t a = 0; a < S; ++a) {
      if (auto hit = test_or_zero(a, S)) return hit;
    }
    for (std::uint64_t b = 0; b <= S; ++b) {
      if (auto hit = test_or_zero(S, b)) return hit;
    }
  }
  return std::nullopt;
}

}  // namespace littlewood
