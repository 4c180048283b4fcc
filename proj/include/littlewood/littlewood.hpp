#pragma once

// Littlewood-type products q * ||q alpha|| * |q|_D: scans, explicit witnesses,
// Lagrange constants of multiples, recurrence periods and the
// two-parameter product probes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "littlewood/cf.hpp"
#include "littlewood/dvalue.hpp"
#include "littlewood/numbers.hpp"
#include "littlewood/words.hpp"

namespace littlewood {

// ---------------------------------------------------------------------------
// Products and scans

struct ProductValue {
  BigInt q;
  NormProduct norm;      // q * ||q alpha||
  DValue dvalue;         // |q|_D
  CertifiedValue value;  // q * ||q alpha|| * |q|_D
};

/// Enclosure of relative width <= 2^-rel_bits (exact for rationals and surds).
ProductValue littlewood_product(const BigInt& q, const RealSource& alpha, const PseudoValuation& v,
                                std::size_t rel_bits = 30);

/// Strict certified "a < b", refining neither; overlapping stream enclosures count as not less.
bool certified_less(const CertifiedValue& a, const CertifiedValue& b);

struct ScanRecord {
  BigInt q;
  CertifiedValue value;
};

struct ScanResult {
  BigInt best_q;
  CertifiedValue best_value;
  std::vector<ScanRecord> trace;  // record-setting q, values strictly decreasing
  bool certified = true;          // false if some comparison could not be decided
};

ScanResult infimum_scan(const RealSource& alpha, const PseudoValuation& v, std::uint64_t q_max,
                        unsigned threads = 1);

struct ConvergentScanResult {
  BigInt best_q;
  CertifiedValue best_value;
  std::size_t n = 0;  // best_q = e_k * q_n
  std::size_t k = 0;
  std::size_t candidates = 0;
};

/// Minimum over q = e_k * q_n, 0 <= n <= N, 0 <= k <= k_max, skipping q > q_cap when given.
ConvergentScanResult convergent_multiple_scan(const RealSource& alpha, const PseudoValuation& v, std::size_t N,
                                              std::size_t k_max, std::optional<BigInt> q_cap = std::nullopt);

// ---------------------------------------------------------------------------
// Witnesses

enum class WitnessKind { Recurrent, Quadratic };

struct LedgerEntry {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct WitnessRecord {
  WitnessKind kind = WitnessKind::Recurrent;
  BigInt Q;
  BigInt ell;
  std::size_t m = 0;      // tail offset (Recurrent) or preperiod of q mod ell (Quadratic)
  std::size_t i = 0;      // n_i (Recurrent) or 0
  std::size_t j = 0;      // n_j (Recurrent) or the period d (Quadratic)
  BigInt q_base;          // q_m (Recurrent) or q_{m+1} (Quadratic)
  BigRational norm_bound;     // 8 q_m^2 or 2 q_{m+1}^2
  BigRational product_bound;  // norm_bound / ell
  CertifiedValue norm;        // Q * ||Q alpha||
  std::size_t ell_exponent = 0;  // a with ell^a || Q
  CertifiedValue product;        // Q * ||Q alpha|| * ell^-a
  std::optional<DValue> dvalue;  // |Q|_D when a valuation is attached
  std::vector<LedgerEntry> ledger;
  bool verified = false;
};

/// Pigeonhole witness for alpha = a0 + [0; s] whose tail from m is recurrent.
/// Throws NotEnoughReturns with fewer than ell^2 + 1 return times within `horizon`.
WitnessRecord theorem23_witness(const BigInt& a0, const WordStream& s, std::size_t m, const BigInt& ell,
                                std::size_t horizon, const PseudoValuation* v = nullptr);

/// Witness with ell = e_n for a quadratic surd and a bounded valuation.
WitnessRecord quadratic_witness(const QuadraticSurd& alpha, const PseudoValuation& v, std::size_t n);

/// Recomputes every ledger entry from Q, ell and alpha alone.
std::vector<LedgerEntry> verify_witness(const WitnessRecord& w, const RealSource& alpha,
                                        const PseudoValuation* v = nullptr);

// ---------------------------------------------------------------------------
// Lagrange constants

struct LagrangeEstimate {
  std::optional<BigRational> lower;
  BigRational upper;
  bool certified = false;
  std::size_t depth = 0;
  std::optional<QuadraticNumber> exact;
};

/// Exact liminf q * ||q alpha|| for a quadratic irrational.
LagrangeEstimate lagrange_constant(const QuadraticSurd& alpha);
/// min over 1 <= n <= N of the upper end of q_n * ||q_n alpha||.
LagrangeEstimate lagrange_upper_bound(const RealSource& alpha, std::size_t N);

struct MultiplesRow {
  std::size_t n = 0;
  QuadraticNumber c;        // c(n alpha)
  BigRational bound;        // 8 q_m^2 / n
  bool sandwich_ok = false; // c(alpha)/n <= c(n alpha) <= n c(alpha)
  bool bound_applies = false;
  bool bound_ok = false;
};

/// The tail from m counts as recurrent once m reaches the preperiod of alpha.
std::vector<MultiplesRow> multiples_profile(const QuadraticSurd& alpha, std::size_t N, std::size_t m,
                                            const BigInt& q_m, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Recurrences

struct PeriodResult {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::optional<std::uint64_t> bound;  // (p^d - 1) p^(k-1) when it applies
  bool bound_ok = true;
};

/// u_{n+d} = coeffs[d-1] u_{n+d-1} + ... + coeffs[0] u_n, reduced mod ell.
PeriodResult recurrence_period_mod(const std::vector<BigInt>& coeffs, const std::vector<BigInt>& init,
                                   const BigInt& ell);

struct SurdRecurrence {
  std::size_t r = 0;
  std::size_t s = 0;
  BigInt t;
  std::size_t verified = 0;  // number of indices checked
};

/// q_{n+2s} - t q_{n+s} + (-1)^s q_n = 0 for n >= r; checked on max(3s + 1, verify_count) indices.
SurdRecurrence surd_denominator_recurrence(const QuadraticSurd& alpha, std::size_t verify_count = 30);

// ---------------------------------------------------------------------------
// Two-parameter products

struct GLPValue {
  BigInt q_n, q_prev;
  CertifiedValue u;          // ||q_n alpha|| / ||q_{n-1} alpha||
  CertifiedValue arch;       // max(a, b) * |a u - b|
  BigRational padic;         // |a q_n + b q_{n-1}|_p / |q_{n-1}|_p
  CertifiedValue value;
};

/// n >= 1; throws PAdicDenominator when p | q_{n-1}.
GLPValue glp_product(const RealSource& alpha, std::size_t n, const BigInt& p, const BigInt& a, const BigInt& b);

struct Prop41Result {
  BigInt a, b;
  CertifiedValue min;
  std::optional<BigRational> threshold;  // eps^2 / 4
  std::optional<bool> above_threshold;
  bool certified = true;
};

Prop41Result prop41_scan(const RealSource& alpha, std::size_t n, const BigInt& p, std::uint64_t a_max,
                         std::uint64_t b_max, std::optional<BigRational> eps = std::nullopt, unsigned threads = 1);

struct MahlerHit {
  BigInt a, b;
  BigRational product_upper;  // upper bound on max(a,b) |a u - b| |a v - b|_p
  BigRational product_bound;  // 2 delta^3
};

/// First (a, b) in order of max(a, b), then a, then b satisfying the three cone
/// inequalities with e^t enclosed to 60 bits. Throws PreconditionViolated unless e^t p^-n >= 1.
std::optional<MahlerHit> mahler_small_vector(const RealSource& u, const BigRational& v, const BigInt& p,
                                             const BigRational& t, std::size_t n, const BigRational& delta,
                                             std::uint64_t search_bound);

/// [lo, hi] containing e^t, each end within 2^-bits relative.
std::pair<BigRational, BigRational> exp_enclosure(const BigRational& t, std::size_t bits = 60);

/// |x|_p for rational x with p not dividing the denominator; 0 for x = 0.
BigRational padic_abs(const BigRational& x, const BigInt& p);

}  // namespace littlewood
