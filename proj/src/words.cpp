#include "littlewood/words.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace littlewood {

namespace {

constexpr std::uint64_t kHashModulus = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kHashBase = 1'000'003;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kHashModulus);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  return r >= kHashModulus ? r - kHashModulus : r;
}

/// Polynomial prefix hashes; equality of hashes is always confirmed by comparing letters.
class RollingHash {
 public:
  explicit RollingHash(std::span<const Letter> w) : prefix_(w.size() + 1, 0), power_(w.size() + 1, 1) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::uint64_t c = w[i] % kHashModulus + 1;
      std::uint64_t h = mul_mod(prefix_[i], kHashBase) + c;
      prefix_[i + 1] = h >= kHashModulus ? h - kHashModulus : h;
      power_[i + 1] = mul_mod(power_[i], kHashBase);
    }
  }

  std::uint64_t window(std::size_t start, std::size_t len) const {
    std::uint64_t sub = mul_mod(prefix_[start], power_[len]);
    std::uint64_t h = prefix_[start + len];
    return h >= sub ? h - sub : h + kHashModulus - sub;
  }

 private:
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> power_;
};

bool same_window(std::span<const Letter> w, std::size_t a, std::size_t b, std::size_t len) {
  return std::equal(w.begin() + a, w.begin() + a + len, w.begin() + b);
}

void check_letters(const std::vector<Letter>& letters, const char* what) {
  for (Letter a : letters) require(a >= 1, ErrorKind::InvalidArgument, what);
}

}  // namespace

Word::Word(std::vector<Letter> letters, Letter bound) : letters_(std::move(letters)) {
  check_letters(letters_, "word letters must be positive");
  Letter largest = letters_.empty() ? 1 : *std::max_element(letters_.begin(), letters_.end());
  bound_ = bound == 0 ? largest : bound;
  require(largest <= bound_, ErrorKind::InvalidArgument, "letter exceeds the alphabet bound");
}

// ---------------------------------------------------------------------------
// WordStream

WordStream WordStream::periodic(std::vector<Letter> preperiod, std::vector<Letter> period) {
  require(!period.empty(), ErrorKind::InvalidArgument, "periodic word needs a nonempty period");
  check_letters(preperiod, "partial quotients must be positive");
  check_letters(period, "partial quotients must be positive");
  return WordStream(Periodic{std::move(preperiod), std::move(period)});
}

WordStream WordStream::sturmian(SturmianSlope slope, BigRational intercept, std::array<Letter, 2> letters) {
  bool in_unit = std::visit(
      [](const auto& theta) {
        using T = std::decay_t<decltype(theta)>;
        if constexpr (std::is_same_v<T, QuadraticSurd>) {
          return theta.compare(BigRational(0)) > 0 && theta.compare(BigRational(1)) < 0;
        } else {
          return theta > 0 && theta < 1;
        }
      },
      slope);
  require(in_unit, ErrorKind::InvalidArgument, "Sturmian slope must lie in (0, 1)");
  require(intercept >= 0 && intercept < 1, ErrorKind::InvalidArgument, "Sturmian intercept must lie in [0, 1)");
  require(letters[0] >= 1 && letters[1] >= 1, ErrorKind::InvalidArgument, "letters must be positive");
  return WordStream(Sturmian{std::move(slope), std::move(intercept), letters});
}

WordStream WordStream::thue_morse(std::array<Letter, 2> letters) {
  require(letters[0] >= 1 && letters[1] >= 1, ErrorKind::InvalidArgument, "letters must be positive");
  return WordStream(ThueMorse{letters});
}

WordStream WordStream::explicit_word(std::vector<Letter> letters) {
  check_letters(letters, "word letters must be positive");
  return WordStream(Explicit{std::move(letters)});
}

StreamKind WordStream::kind() const noexcept {
  switch (rule_.index()) {
    case 0: return StreamKind::Periodic;
    case 1: return StreamKind::Sturmian;
    case 2: return StreamKind::ThueMorse;
    default: return StreamKind::Explicit;
  }
}

std::optional<std::size_t> WordStream::length() const {
  if (const auto* e = std::get_if<Explicit>(&rule_)) {
    return e->letters.size() > offset_ ? e->letters.size() - offset_ : 0;
  }
  return std::nullopt;
}

bool WordStream::is_irrational_sturmian() const {
  const auto* st = std::get_if<Sturmian>(&rule_);
  return st != nullptr && std::holds_alternative<QuadraticSurd>(st->slope);
}

std::vector<Letter> WordStream::raw_range(std::size_t first, std::size_t count) const {
  // `first` is 1-based in the unshifted word.
  std::vector<Letter> out;
  out.reserve(count);
  std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Periodic>) {
          const std::size_t pre = rule.preperiod.size(), per = rule.period.size();
          for (std::size_t i = first; i < first + count; ++i) {
            out.push_back(i <= pre ? rule.preperiod[i - 1] : rule.period[(i - pre - 1) % per]);
          }
        } else if constexpr (std::is_same_v<T, ThueMorse>) {
          for (std::size_t i = first; i < first + count; ++i) {
            out.push_back(rule.letters[std::popcount(static_cast<std::uint64_t>(i - 1)) & 1U]);
          }
        } else if constexpr (std::is_same_v<T, Explicit>) {
          for (std::size_t i = first; i < first + count; ++i) out.push_back(rule.letters[i - 1]);
        } else {
          const BigInt u = rule.intercept.get_num(), v = rule.intercept.get_den();
          std::vector<BigInt> floors;
          floors.reserve(count + 1);
          if (const auto* rat = std::get_if<BigRational>(&rule.slope)) {
            const BigInt a = rat->get_num(), b = rat->get_den();
            const BigInt denom = b * v;
            for (std::size_t i = first; i <= first + count; ++i) {
              BigInt num = BigInt(static_cast<unsigned long>(i)) * a * v + u * b;
              BigInt q;
              mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), denom.get_mpz_t());
              floors.push_back(q);
            }
          } else {
            const QuadraticNumber theta = std::get<QuadraticSurd>(rule.slope).value();
            const BigInt c = lcm(theta.rational_part().get_den(), theta.sqrt_coefficient().get_den());
            const BigRational cq(c);
            const BigRational ar = theta.rational_part() * cq, br = theta.sqrt_coefficient() * cq;
            const BigInt A = ar.get_num(), B = br.get_num();
            const BigInt denom = v * c;
            for (std::size_t i = first; i <= first + count; ++i) {
              BigInt iv = BigInt(static_cast<unsigned long>(i)) * v;
              floors.push_back(floor_quadratic(iv * A + u * c, iv * B, theta.radicand(), denom));
            }
          }
          for (std::size_t k = 0; k < count; ++k) {
            BigInt diff = floors[k + 1] - floors[k];
            out.push_back(rule.letters[diff == 0 ? 0 : 1]);
          }
        }
      },
      rule_);
  return out;
}

Letter WordStream::letter(std::size_t i) const {
  require(i >= 1, ErrorKind::InvalidArgument, "letters are indexed from 1");
  if (auto len = length(); len && i > *len) fail(ErrorKind::StreamExhausted, "finite word ended");
  return raw_range(i + offset_, 1).front();
}

std::vector<Letter> WordStream::prefix(std::size_t n) const {
  if (auto len = length(); len && n > *len) fail(ErrorKind::StreamExhausted, "finite word ended");
  return raw_range(1 + offset_, n);
}

std::vector<Letter> WordStream::take(std::size_t n) const {
  if (auto len = length()) n = std::min(n, *len);
  return raw_range(1 + offset_, n);
}

WordStream WordStream::shifted(std::size_t m) const {
  WordStream out = *this;
  out.offset_ += m;
  return out;
}

std::optional<std::pair<std::vector<Letter>, std::vector<Letter>>> WordStream::periodic_parts() const {
  const auto* p = std::get_if<Periodic>(&rule_);
  if (p == nullptr) return std::nullopt;
  const std::size_t pre = p->preperiod.size(), per = p->period.size();
  if (offset_ <= pre) {
    return std::make_pair(std::vector<Letter>(p->preperiod.begin() + offset_, p->preperiod.end()), p->period);
  }
  std::vector<Letter> rotated(per);
  const std::size_t shift = (offset_ - pre) % per;
  for (std::size_t k = 0; k < per; ++k) rotated[k] = p->period[(k + shift) % per];
  return std::make_pair(std::vector<Letter>{}, rotated);
}

// ---------------------------------------------------------------------------
// Complexity

std::uint64_t count_distinct_factors(std::span<const Letter> w, std::size_t n) {
  if (n == 0) return 1;
  if (w.size() < n) return 0;
  RollingHash hash(w);
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  seen.reserve(w.size());
  std::uint64_t distinct = 0;
  for (std::size_t start = 0; start + n <= w.size(); ++start) {
    auto& bucket = seen[hash.window(start, n)];
    bool found = std::any_of(bucket.begin(), bucket.end(),
                             [&](std::size_t rep) { return same_window(w, rep, start, n); });
    if (!found) {
      bucket.push_back(start);
      ++distinct;
    }
  }
  return distinct;
}

namespace {

bool horizon_saturates(const WordStream& s, std::size_t n, std::size_t horizon) {
  if (const auto* p = std::get_if<WordStream::Periodic>(&s.rule())) {
    return horizon >= p->preperiod.size() + 2 * p->period.size() * n;
  }
  if (auto len = s.length()) return horizon >= *len;
  return false;
}

}  // namespace

ComplexityCount complexity(const WordStream& s, std::size_t n, std::size_t horizon) {
  require(n >= 1, ErrorKind::InvalidArgument, "complexity needs n >= 1");
  if (horizon < n) fail(ErrorKind::HorizonTooSmall, "horizon smaller than the factor length");
  std::vector<Letter> w = s.take(horizon);
  return {count_distinct_factors(w, n), horizon_saturates(s, n, horizon)};
}

ComplexityProfile complexity_profile(const WordStream& s, std::size_t n_max, std::size_t horizon) {
  require(n_max >= 1, ErrorKind::InvalidArgument, "profile needs n_max >= 1");
  if (horizon < n_max) fail(ErrorKind::HorizonTooSmall, "horizon smaller than n_max");
  std::vector<Letter> w = s.take(horizon);
  ComplexityProfile profile;
  profile.n_max = n_max;
  profile.kind = s.kind();
  profile.infinite = !s.length().has_value();
  profile.irrational_sturmian = s.is_irrational_sturmian();
  profile.exact = horizon_saturates(s, n_max, horizon);
  for (std::size_t n = 1; n <= n_max; ++n) profile.counts.push_back(count_distinct_factors(w, n));
  return profile;
}

PeriodicityVerdict morse_hedlund_classify(const ComplexityProfile& profile) {
  bool some_small = false, all_large = true;
  for (std::size_t n = 1; n <= profile.counts.size(); ++n) {
    if (profile.counts[n - 1] <= n) some_small = true;
    if (profile.counts[n - 1] < n + 1) all_large = false;
  }
  if (some_small && profile.exact && profile.infinite) return PeriodicityVerdict::UltimatelyPeriodicCertified;
  if (all_large && !profile.counts.empty() && profile.irrational_sturmian) {
    return PeriodicityVerdict::NotUltimatelyPeriodic;
  }
  return PeriodicityVerdict::Inconclusive;
}

// ---------------------------------------------------------------------------
// Prefix structure

std::vector<std::size_t> z_array(std::span<const Letter> w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> z(n, 0);
  if (n == 0) return z;
  z[0] = n;
  std::size_t left = 0, right = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (k < right) z[k] = std::min(right - k, z[k - left]);
    while (k + z[k] < n && w[z[k]] == w[k + z[k]]) ++z[k];
    if (k + z[k] > right) {
      left = k;
      right = k + z[k];
    }
  }
  return z;
}

std::vector<std::size_t> prefix_return_times(const WordStream& s, std::size_t m, std::size_t horizon) {
  require(horizon > m, ErrorKind::PreconditionViolated, "prefix_return_times needs horizon > m");
  std::vector<Letter> u = s.shifted(m).take(horizon - m);
  std::vector<std::size_t> out;
  if (u.empty()) return out;
  const std::size_t len = u.size();
  std::vector<std::size_t> z = z_array(u);
  std::size_t n = 1;
  out.push_back(n);
  // The least start k >= 1 at which the current prefix reoccurs only moves right as n grows.
  std::size_t k = 1;
  for (;;) {
    while (k < len && z[k] < n) ++k;
    if (k >= len || k + n > len) break;
    n += k;
    out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> palindrome_prefixes(const WordStream& s, std::size_t horizon) {
  require(horizon >= 1, ErrorKind::InvalidArgument, "palindrome_prefixes needs horizon >= 1");
  std::vector<Letter> w = s.take(horizon);
  const std::size_t h = w.size();
  std::vector<Letter> joined;
  joined.reserve(2 * h + 1);
  joined.insert(joined.end(), w.begin(), w.end());
  joined.push_back(0);  // letters are >= 1
  joined.insert(joined.end(), w.rbegin(), w.rend());
  std::vector<std::size_t> z = z_array(joined);
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= h; ++n) {
    if (z[2 * h + 1 - n] >= n) out.push_back(n);
  }
  return out;
}

BigRational linear_recurrence_constant(const WordStream& s, std::size_t max_len, std::size_t horizon) {
  require(max_len >= 1, ErrorKind::InvalidArgument, "linear_recurrence_constant needs L >= 1");
  if (horizon < 10 * max_len) fail(ErrorKind::HorizonTooSmall, "horizon must be at least 10 L");
  std::vector<Letter> w = s.take(horizon);
  if (w.size() < 10 * max_len) fail(ErrorKind::HorizonTooSmall, "finite word shorter than 10 L");
  RollingHash hash(w);
  BigRational best(0);
  struct Occurrence {
    std::size_t representative;
    std::size_t last;
    std::size_t max_gap;
  };
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::unordered_map<std::uint64_t, std::vector<Occurrence>> table;
    table.reserve(w.size());
    std::size_t worst = 0;
    for (std::size_t start = 0; start + len <= w.size(); ++start) {
      auto& bucket = table[hash.window(start, len)];
      auto it = std::find_if(bucket.begin(), bucket.end(), [&](const Occurrence& o) {
        return same_window(w, o.representative, start, len);
      });
      if (it == bucket.end()) {
        bucket.push_back({start, start, start});  // gap measured from position 1
        worst = std::max(worst, start);
      } else {
        it->max_gap = std::max(it->max_gap, start - it->last);
        it->last = start;
        worst = std::max(worst, it->max_gap);
      }
    }
    BigRational ratio = make_rational(BigInt(static_cast<unsigned long>(worst)),
                                      BigInt(static_cast<unsigned long>(len)));
    if (ratio > best) best = ratio;
  }
  return best;
}

}  // namespace littlewood
