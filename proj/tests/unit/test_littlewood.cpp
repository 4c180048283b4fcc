#include <cmath>
#include <random>

#include "doctest.h"
#include "littlewood/littlewood.hpp"
#include "oracles.hpp"

using namespace littlewood;

namespace {

QuadraticSurd surd(long P, long D, long Q) { return QuadraticSurd::canonicalize(P, D, Q); }

// 100-bit bracket of q * ||q x|| * d for x = (P + sqrt D)/Q.
std::pair<BigRational, BigRational> product_oracle(const BigInt& q, const QuadraticSurd& x, const BigRational& d) {
  auto b = oracle::norm_product_bracket(q, oracle::surd_bracket(x.P(), x.D(), x.Q(), 100 + 2 * mpz_sizeinbase(q.get_mpz_t(), 2)));
  return {b.first * d, b.second * d};
}

bool contains(const CertifiedValue& v, const std::pair<BigRational, BigRational>& b) {
  // The library enclosure and the oracle bracket must overlap.
  return v.lo <= b.second && b.first <= v.hi;
}

bool all_ok(const std::vector<LedgerEntry>& ledger) {
  for (const auto& e : ledger) {
    if (!e.ok) return false;
  }
  return !ledger.empty();
}

}  // namespace

TEST_CASE("littlewood_product examples") {
  auto x = surd(-1, 2, 1);
  auto alpha = RealSource::surd(x);
  ProductValue p = littlewood_product(408, alpha, PseudoValuation::constant(3));
  CHECK(p.dvalue.value() == BigRational(1, 3));
  CHECK(contains(p.value, product_oracle(408, x, BigRational(1, 3))));
  CHECK(p.value.approx() == doctest::Approx(0.117851).epsilon(1e-5));
  CHECK(p.value.hi - p.value.lo <= p.value.hi * BigRational(BigInt(1), pow2(30)));

  for (auto s : {surd(-1, 2, 1), surd(-1, 5, 2), surd(-2, 7, 1), surd(1, 3, 3)}) {
    ProductValue one = littlewood_product(1, RealSource::surd(s), PseudoValuation::periodic({2, 3}));
    QuadraticNumber a = s.value();
    QuadraticNumber b = QuadraticNumber(BigRational(1)) - a;
    REQUIRE(one.value.exact.has_value());
    CHECK(*one.value.exact == (a < b ? a : b));
  }

  auto phi1 = surd(-1, 5, 2);
  CFExpansion cf = cf_of_surd(phi1);
  auto conv = convergents(cf.a0, quotient_stream(cf), 40);
  for (const auto& c : conv) {
    if (c.q % 2 == 0) continue;
    CHECK(littlewood_product(c.q, RealSource::surd(phi1), PseudoValuation::constant(2)).value.hi < 1);
  }
}

TEST_CASE("infimum_scan examples") {
  auto alpha = RealSource::surd(surd(-1, 5, 2));
  auto v2 = PseudoValuation::constant(2);
  ScanResult s = infimum_scan(alpha, v2, 10000);
  CHECK(s.best_value.approx() < 0.05);
  CHECK(s.certified);
  ConvergentScanResult c = convergent_multiple_scan(alpha, v2, 30, 20, BigInt(10000));
  CHECK(c.best_q == s.best_q);
  CHECK(certified_compare(c.best_value, s.best_value) == std::strong_ordering::equal);

  ScanResult r = infimum_scan(RealSource::rational(BigRational(2, 5)), PseudoValuation::constant(3), 5);
  CHECK(r.best_q == 5);
  CHECK(r.best_value.hi == 0);

  ScanResult one = infimum_scan(alpha, v2, 1);
  CHECK(one.best_q == 1);
  REQUIRE(one.best_value.exact.has_value());
  CHECK(*one.best_value.exact == QuadraticNumber(BigRational(3, 2), BigRational(-1, 2), 5));
}

TEST_CASE("infimum_scan trace and brute force agree") {
  auto x = surd(-1, 2, 1);
  auto alpha = RealSource::surd(x);
  auto v = PseudoValuation::constant(3);
  ScanResult s = infimum_scan(alpha, v, 3000);
  // Brute force with the oracle bracket.
  BigInt best_q = 0;
  std::pair<BigRational, BigRational> best;
  for (long q = 1; q <= 3000; ++q) {
    auto b = product_oracle(q, x, v.abs(q).value());
    if (best_q == 0 || b.second < best.first) {
      best_q = q;
      best = b;
    }
  }
  CHECK(s.best_q == best_q);
  for (std::size_t k = 1; k < s.trace.size(); ++k) {
    CHECK(s.trace[k].q > s.trace[k - 1].q);
    CHECK(certified_less(s.trace[k].value, s.trace[k - 1].value));
  }
  // Nonincreasing in the range.
  ScanResult smaller = infimum_scan(alpha, v, 500);
  CHECK(certified_compare(s.best_value, smaller.best_value) != std::strong_ordering::greater);
}

TEST_CASE("infimum_scan is deterministic across thread counts") {
  auto alpha = RealSource::surd(surd(-1, 3, 1));
  auto v = PseudoValuation::periodic({2, 3});
  ScanResult a = infimum_scan(alpha, v, 20000, 1);
  ScanResult b = infimum_scan(alpha, v, 20000, 4);
  CHECK(a.best_q == b.best_q);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) CHECK(a.trace[k].q == b.trace[k].q);

  auto stream = RealSource::stream(0, WordStream::thue_morse());
  ScanResult c = infimum_scan(stream, v, 3000, 1);
  ScanResult d = infimum_scan(stream, v, 3000, 3);
  CHECK(c.best_q == d.best_q);
  CHECK(c.trace.size() == d.trace.size());
}

TEST_CASE("convergent_multiple_scan examples") {
  auto r2 = RealSource::surd(surd(-1, 2, 1));
  auto v3 = PseudoValuation::constant(3);
  ConvergentScanResult c = convergent_multiple_scan(r2, v3, 10, 3);
  CHECK(c.best_value.hi <= BigRational(8, 3));
  ScanResult brute = infimum_scan(r2, v3, 100000, 4);
  CHECK(certified_compare(c.best_value, brute.best_value) != std::strong_ordering::less);

  for (auto s : {surd(-1, 2, 1), surd(-1, 5, 2), surd(0, 7, 3)}) {
    ConvergentScanResult k0 = convergent_multiple_scan(RealSource::surd(s), v3, 15, 0);
    CHECK(k0.best_value.hi <= 1);
  }

  // Multiples e_k q_n against the pure convergents for phi - 1 and 2-adic weights.
  auto phi1 = surd(-1, 5, 2);
  auto v2 = PseudoValuation::constant(2);
  ConvergentScanResult k0 = convergent_multiple_scan(RealSource::surd(phi1), v2, 20, 0);
  ConvergentScanResult k8 = convergent_multiple_scan(RealSource::surd(phi1), v2, 20, 8);
  CHECK(certified_compare(k8.best_value, k0.best_value) != std::strong_ordering::greater);
  CFExpansion cf = cf_of_surd(phi1);
  auto conv = convergents(cf.a0, quotient_stream(cf), 20);
  BigInt oracle_q = 0;
  std::pair<BigRational, BigRational> oracle_best;
  for (const auto& cv : conv) {
    for (std::size_t k = 0; k <= 8; ++k) {
      BigInt q = cv.q * v2.e(k);
      auto b = product_oracle(q, phi1, v2.abs(q).value());
      if (oracle_q == 0 || b.second < oracle_best.first) {
        oracle_q = q;
        oracle_best = b;
      }
    }
  }
  CHECK(k8.best_q == oracle_q);
  CHECK(k0.best_q == oracle_q);
}

TEST_CASE("recurrent witness for sqrt 2 - 1 and ell = 3") {
  auto s = WordStream::constant(2);
  WitnessRecord w = theorem23_witness(0, s, 0, 3, 1000);
  CHECK(w.Q == 408);
  CHECK(w.i == 1);
  CHECK(w.j == 9);
  CHECK(w.q_base == 1);
  CHECK(w.norm_bound == 8);
  CHECK(w.product_bound == BigRational(8, 3));
  CHECK(w.ell_exponent == 1);
  CHECK(w.verified);
  CHECK(all_ok(w.ledger));
  auto x = surd(-1, 2, 1);
  CHECK(contains(w.norm, product_oracle(408, x, BigRational(1))));
  CHECK(contains(w.product, product_oracle(408, x, BigRational(1, 3))));
  CHECK(w.norm.approx() == doctest::Approx(0.353553).epsilon(1e-5));
  CHECK(w.product.approx() == doctest::Approx(0.117851).epsilon(1e-5));
  // Independent recomputation from Q, ell and alpha.
  CHECK(all_ok(verify_witness(w, RealSource::surd(x))));
}

TEST_CASE("recurrent witness for the golden word and ell = 2") {
  WitnessRecord w = theorem23_witness(0, WordStream::constant(1), 0, 2, 1000);
  CHECK(w.Q % 2 == 0);
  CHECK(w.norm.hi <= 8);
  CHECK(w.verified);
  // Fibonacci mod 2 has period 3, so the first repeat of (q_n, q_{n-1}) mod 2 is n = 1 + 3.
  CHECK(w.i == 1);
  CHECK(w.j == 4);
  auto v = PseudoValuation::constant(2);
  WitnessRecord wd = theorem23_witness(0, WordStream::constant(1), 0, 2, 1000, &v);
  REQUIRE(wd.dvalue.has_value());
  CHECK(wd.dvalue->value() <= BigRational(1, 2));
}

TEST_CASE("recurrent witness errors") {
  try {
    theorem23_witness(0, WordStream::constant(1), 0, 2, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotEnoughReturns);
  }
}

TEST_CASE("recurrent witnesses on Sturmian and shifted tails re-verify") {
  auto sturm = WordStream::sturmian(surd(-1, 2, 1));
  for (long ell : {2L, 3L, 4L}) {
    for (std::size_t m : {0u, 2u, 5u}) {
      WitnessRecord w = theorem23_witness(1, sturm, m, ell, 20000);
      CHECK(w.verified);
      CHECK(w.Q % ell == 0);
      CHECK(all_ok(verify_witness(w, RealSource::stream(1, sturm))));
    }
  }
}

TEST_CASE("tampered witnesses fail verification") {
  WitnessRecord w = theorem23_witness(0, WordStream::constant(2), 0, 3, 1000);
  auto alpha = RealSource::surd(surd(-1, 2, 1));
  WitnessRecord bad = w;
  bad.Q += 1;
  CHECK(!all_ok(verify_witness(bad, alpha)));
  WitnessRecord bad_bound = w;
  bad_bound.norm_bound = BigRational(1, 10);
  CHECK(!all_ok(verify_witness(bad_bound, alpha)));
  // A different alpha does not satisfy the recorded bound data.
  CHECK(!all_ok(verify_witness(w, RealSource::surd(surd(-1, 5, 2)))));
}

TEST_CASE("witness size grows at most doubly exponentially in ell squared") {
  // Fitted once on constant words a = 1, 2, 3 with ell = 2..5; held out ell = 6..9.
  constexpr double kC3 = 0.26;
  for (Letter a : {1u, 2u, 3u}) {
    for (long ell = 2; ell <= 9; ++ell) {
      WitnessRecord w = theorem23_witness(0, WordStream::constant(a), 0, ell, 100000);
      double log_q = static_cast<double>(mpz_sizeinbase(w.Q.get_mpz_t(), 2)) * std::log(2.0);
      CAPTURE(a);
      CAPTURE(ell);
      CHECK(std::log(log_q) <= kC3 * static_cast<double>(ell * ell));
    }
  }
}

TEST_CASE("quadratic witnesses") {
  WitnessRecord a = quadratic_witness(surd(0, 2, 1), PseudoValuation::constant(2), 3);
  CHECK(a.ell == 8);
  CHECK(a.Q % 8 == 0);
  CHECK(a.norm.hi <= a.norm_bound);
  CHECK(a.norm_bound == 2 * a.q_base * a.q_base);
  CHECK(a.verified);

  WitnessRecord b = quadratic_witness(surd(1, 5, 2), PseudoValuation::constant(2), 1);
  CHECK(b.ell == 2);
  CHECK(b.j == 3);
  CHECK(b.Q % 2 == 0);
  CFExpansion cf = cf_of_surd(surd(1, 5, 2));
  auto c = convergents(cf.a0, quotient_stream(cf), b.m + 10);
  BigInt expect = c[b.m].q * c[b.m + 4].q - c[b.m + 1].q * c[b.m + 3].q;
  CHECK(b.Q == abs(expect));
  CHECK(b.verified);

  auto v6 = PseudoValuation::periodic({2, 3});
  WitnessRecord d = quadratic_witness(surd(0, 3, 1), v6, 2);
  CHECK(d.ell == 6);
  CHECK(d.Q % 6 == 0);
  REQUIRE(d.dvalue.has_value());
  CHECK(d.dvalue->value() <= BigRational(1, 6));
  CHECK(d.verified);
  CHECK(all_ok(verify_witness(d, RealSource::surd(surd(0, 3, 1)), &v6)));

  CHECK_THROWS_AS(quadratic_witness(surd(0, 2, 1), PseudoValuation::doubly_exponential(), 1), Error);
}

TEST_CASE("quadratic witnesses re-verify on random surds") {
  std::mt19937_64 rng(59);
  int done = 0;
  while (done < 40) {
    long D = 2 + static_cast<long>(rng() % 200);
    if (is_perfect_square(BigInt(D))) continue;
    auto s = surd(static_cast<long>(rng() % 11) - 5, D, 1 + static_cast<long>(rng() % 5));
    auto v = rng() % 2 ? PseudoValuation::constant(2 + static_cast<long>(rng() % 4)) : PseudoValuation::periodic({2, 3});
    std::size_t n = 1 + rng() % 3;
    WitnessRecord w = quadratic_witness(s, v, n);
    CHECK(w.verified);
    CHECK(all_ok(verify_witness(w, RealSource::surd(s), &v)));
    ++done;
  }
}

TEST_CASE("Lagrange constants: examples") {
  LagrangeEstimate phi = lagrange_constant(surd(1, 5, 2));
  REQUIRE(phi.exact.has_value());
  CHECK(*phi.exact * *phi.exact == QuadraticNumber(BigRational(1, 5)));
  CHECK(phi.certified);
  LagrangeEstimate r2 = lagrange_constant(surd(0, 2, 1));
  REQUIRE(r2.exact.has_value());
  CHECK(*r2.exact * *r2.exact == QuadraticNumber(BigRational(1, 8)));
  CHECK(r2.upper - *r2.lower <= BigRational(BigInt(1), pow2(40)));
}

TEST_CASE("Lagrange constants match the period-state formula and a deep scan") {
  std::mt19937_64 rng(61);
  int done = 0;
  while (done < 60) {
    long D = 2 + static_cast<long>(rng() % 300);
    if (is_perfect_square(BigInt(D))) continue;
    auto s = surd(static_cast<long>(rng() % 21) - 10, D, (1 + static_cast<long>(rng() % 6)) * (rng() % 2 ? 1 : -1));
    LagrangeEstimate est = lagrange_constant(s);
    REQUIRE(est.exact.has_value());
    // c = min |Q_k| / (2 sqrt D) over the period states.
    auto states = oracle::cf_states(s.P(), s.D(), s.Q());
    BigInt qmin = 0;
    for (const auto& [P, Q] : states.period_states) {
      BigInt aq = abs(Q);
      if (qmin == 0 || aq < qmin) qmin = aq;
    }
    CHECK(*est.exact * *est.exact == QuadraticNumber(make_rational(qmin * qmin, 4 * s.D())));
    // Hurwitz.
    CHECK(*est.exact * *est.exact <= QuadraticNumber(BigRational(1, 5)));
    // Deep scan over convergents 150..300 of the exact q_n ||q_n alpha||.
    CFExpansion cf = cf_of_surd(s);
    auto conv = convergents(cf.a0, quotient_stream(cf), 300);
    std::optional<QuadraticNumber> seen;
    for (std::size_t n = 150; n <= 300; ++n) {
      QuadraticNumber v = exact_norm_product(conv[n].q, s.value());
      if (!seen || v < *seen) seen = v;
    }
    QuadraticNumber gap = (*seen - *est.exact).abs();
    CHECK(gap <= QuadraticNumber(BigRational(BigInt(1), pow2(20))));
    ++done;
  }
}

TEST_CASE("Lagrange constant of a period-two expansion") {
  QuadraticNumber x = cf_value(CFExpansion{0, {}, {2, 1}});
  auto s = QuadraticSurd::from_number(x);
  LagrangeEstimate est = lagrange_constant(s);
  CFExpansion cf = cf_of_surd(s);
  auto conv = convergents(cf.a0, quotient_stream(cf), 200);
  std::optional<QuadraticNumber> seen;
  for (std::size_t n = 100; n <= 200; ++n) {
    QuadraticNumber v = exact_norm_product(conv[n].q, x);
    if (!seen || v < *seen) seen = v;
  }
  CHECK((*seen - *est.exact).abs() <= QuadraticNumber(BigRational(BigInt(1), pow2(30))));
}

TEST_CASE("Lagrange upper bounds from streams") {
  auto sturm = RealSource::stream(0, WordStream::sturmian(surd(-1, 3, 1), BigRational(0), {1, 3}));
  LagrangeEstimate u = lagrange_upper_bound(sturm, 100);
  CHECK(!u.certified);
  CHECK(!u.lower.has_value());
  CHECK(u.upper * u.upper * 5 < 1 + BigRational(BigInt(1), pow2(40)));

  auto one = lagrange_upper_bound(RealSource::stream(0, WordStream::thue_morse()), 1);
  NormProduct q1 = q_norm_product(convergents(0, WordStream::thue_morse(), 1)[1].q, RealSource::stream(0, WordStream::thue_morse()));
  CHECK(one.upper >= q1.value.lo);

  // The minimum over n <= 200 is attained at q_1 = 2: 2 ||2 alpha|| = 6 - 4 sqrt 2, below the liminf.
  auto per = lagrange_upper_bound(RealSource::stream(0, WordStream::periodic({}, {2})), 200);
  auto exact = lagrange_constant(surd(-1, 2, 1));
  QuadraticNumber first(BigRational(6), BigRational(-4), 2);
  CHECK(QuadraticNumber(per.upper) >= first);
  CHECK(QuadraticNumber(per.upper) - first <= QuadraticNumber(BigRational(BigInt(1), pow2(40))));
  CHECK(per.upper < exact.upper);
}

TEST_CASE("Lagrange constants of multiples") {
  auto rows = multiples_profile(surd(-1, 2, 1), 20, 0, 1);
  REQUIRE(rows.size() == 20);
  for (const auto& r : rows) {
    CHECK(r.sandwich_ok);
    CHECK(r.bound_applies);
    CHECK(r.bound_ok);
    CHECK(r.bound == make_rational(BigInt(8), BigInt(static_cast<unsigned long>(r.n))));
  }
  CHECK(rows[0].c == *lagrange_constant(surd(-1, 2, 1)).exact);

  auto phi1 = surd(-1, 5, 2);
  auto prow = multiples_profile(phi1, 2, 0, 1);
  QuadraticNumber c1 = *lagrange_constant(phi1).exact;
  QuadraticNumber two(BigRational(2));
  CHECK(c1 / two <= prow[1].c);
  CHECK(prow[1].c <= two * c1);
  CHECK(prow[1].c == *lagrange_constant(phi1 * BigInt(2)).exact);

  // Parallel rows match.
  auto serial = multiples_profile(surd(0, 7, 1), 12, 1, 1, 1);
  auto parallel = multiples_profile(surd(0, 7, 1), 12, 1, 1, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) CHECK(serial[k].c == parallel[k].c);
  CHECK_THROWS_AS(multiples_profile(surd(-1, 2, 1), 5, 0, 7), Error);
}

TEST_CASE("recurrence periods") {
  PeriodResult f2 = recurrence_period_mod({1, 1}, {0, 1}, 2);
  CHECK(f2.period == 3);
  CHECK(f2.preperiod == 0);
  REQUIRE(f2.bound.has_value());
  CHECK(*f2.bound == 3);
  PeriodResult f4 = recurrence_period_mod({1, 1}, {0, 1}, 4);
  CHECK(f4.period == 6);
  CHECK(*f4.bound == 6);
  CHECK(f4.bound_ok);
  CHECK(recurrence_period_mod({1, 1}, {0, 0}, 7).period == 1);
  // Pisano periods by direct iteration.
  for (long ell = 2; ell <= 60; ++ell) {
    long a = 0, b = 1, n = 0;
    do {
      long c = (a + b) % ell;
      a = b;
      b = c;
      ++n;
    } while (!(a == 0 && b == 1));
    CHECK(recurrence_period_mod({1, 1}, {0, 1}, ell).period == static_cast<std::size_t>(n));
  }
}

TEST_CASE("surd denominator recurrences") {
  SurdRecurrence r2 = surd_denominator_recurrence(surd(0, 2, 1));
  CHECK(r2.s == 1);
  CHECK(r2.t == 2);
  SurdRecurrence r3 = surd_denominator_recurrence(surd(0, 3, 1));
  CHECK(r3.s == 2);
  CHECK(r3.t == 4);
  SurdRecurrence phi = surd_denominator_recurrence(surd(1, 5, 2));
  CHECK(phi.s == 1);
  CHECK(phi.t == 1);
  std::mt19937_64 rng(67);
  for (int k = 0; k < 40; ++k) {
    long D = 2 + static_cast<long>(rng() % 150);
    if (is_perfect_square(BigInt(D))) continue;
    auto s = surd(static_cast<long>(rng() % 9) - 4, D, 1 + static_cast<long>(rng() % 4));
    SurdRecurrence rec = surd_denominator_recurrence(s);
    CFExpansion cf = cf_of_surd(s);
    auto c = convergents(cf.a0, quotient_stream(cf), rec.r + 8 * rec.s + 2);
    for (std::size_t n = rec.r; n + 2 * rec.s < c.size(); ++n) {
      BigInt sign = rec.s % 2 ? -1 : 1;
      CHECK(c[n + 2 * rec.s].q - rec.t * c[n + rec.s].q + sign * c[n].q == 0);
    }
  }
}

TEST_CASE("two-parameter products") {
  auto r2 = RealSource::surd(surd(-1, 2, 1));
  GLPValue g = glp_product(r2, 2, 5, 1, 0);
  CHECK(g.q_n == 5);
  CHECK(g.q_prev == 2);
  CHECK(g.padic == BigRational(1, 5));
  REQUIRE(g.value.exact.has_value());
  CHECK(*g.value.exact == QuadraticNumber(BigRational(-1, 5), BigRational(1, 5), 2));
  CHECK(g.value.approx() == doctest::Approx(0.0828427).epsilon(1e-6));

  GLPValue h = glp_product(RealSource::surd(surd(-1, 5, 2)), 2, 2, 1, 1);
  REQUIRE(h.value.exact.has_value());
  CHECK(*h.value.exact == QuadraticNumber(BigRational(3, 2), BigRational(-1, 2), 5));

  try {
    glp_product(r2, 2, 2, 1, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PAdicDenominator);
  }
  CHECK_THROWS_AS(glp_product(r2, 2, 4, 1, 0), Error);

  Prop41Result tiny = prop41_scan(r2, 2, 5, 1, 1);
  GLPValue g10 = glp_product(r2, 2, 5, 1, 0), g11 = glp_product(r2, 2, 5, 1, 1);
  CHECK(certified_compare(tiny.min, certified_less(g10.value, g11.value) ? g10.value : g11.value) ==
        std::strong_ordering::equal);

  Prop41Result grid = prop41_scan(r2, 5, 3, 50, 50, BigRational(1, 10), 2);
  CHECK(grid.min.lo > 0);
  CHECK(grid.certified);
  REQUIRE(grid.threshold.has_value());
  CHECK(*grid.threshold == BigRational(1, 400));
  Prop41Result serial = prop41_scan(r2, 5, 3, 50, 50, BigRational(1, 10), 1);
  CHECK(serial.a == grid.a);
  CHECK(serial.b == grid.b);
}

TEST_CASE("cone search") {
  auto u = RealSource::surd(surd(-1, 5, 2));
  auto hit = mahler_small_vector(u, BigRational(0), 2, BigRational(0), 0, BigRational(9, 10), 3);
  REQUIRE(hit.has_value());
  CHECK(hit->a == 1);
  CHECK(hit->b == 0);
  CHECK(hit->product_upper < hit->product_bound);
  CHECK(hit->product_bound == 2 * BigRational(729, 1000));
  CHECK(!mahler_small_vector(u, BigRational(0), 2, BigRational(0), 0, BigRational(BigInt(1), pow2(20)), 10));
  try {
    mahler_small_vector(u, BigRational(0), 2, BigRational(1, 2), 1, BigRational(1, 2), 10);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("exponential enclosure and p-adic size") {
  auto [lo, hi] = exp_enclosure(BigRational(0));
  CHECK(lo == 1);
  CHECK(hi == 1);
  auto [l1, h1] = exp_enclosure(BigRational(1));
  CHECK(l1 < BigRational(271828182845905L, 100000000000000L));
  CHECK(h1 > BigRational(271828182845904L, 100000000000000L));
  CHECK(h1 - l1 <= h1 * BigRational(BigInt(1), pow2(59)));
  CHECK(padic_abs(BigRational(12), 2) == BigRational(1, 4));
  CHECK(padic_abs(BigRational(5, 3), 5) == BigRational(1, 5));
  CHECK(padic_abs(BigRational(0), 3) == 0);
}
