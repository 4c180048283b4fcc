#pragma once

// Combinatorics on words over positive-integer alphabets.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "littlewood/numbers.hpp"

namespace littlewood {

using Letter = std::uint64_t;

/// A finite word whose letters lie in [1, alphabet_bound].
class Word {
 public:
  Word() = default;
  /// `bound == 0` means "use the largest letter".
  explicit Word(std::vector<Letter> letters, Letter bound = 0);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  Letter alphabet_bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return letters_.size(); }

 private:
  std::vector<Letter> letters_;
  Letter bound_ = 1;
};

using SturmianSlope = std::variant<QuadraticSurd, BigRational>;

enum class StreamKind { Periodic, Sturmian, ThueMorse, Explicit };

/// Rule-generated word w_1 w_2 ...; letter(i) is deterministic and 1-based.
class WordStream {
 public:
  struct Periodic {
    std::vector<Letter> preperiod;
    std::vector<Letter> period;
  };
  struct Sturmian {
    SturmianSlope slope;
    BigRational intercept;
    std::array<Letter, 2> letters;
  };
  struct ThueMorse {
    std::array<Letter, 2> letters;
  };
  struct Explicit {
    std::vector<Letter> letters;
  };
  using Rule = std::variant<Periodic, Sturmian, ThueMorse, Explicit>;

  static WordStream periodic(std::vector<Letter> preperiod, std::vector<Letter> period);
  static WordStream constant(Letter a) { return periodic({}, {a}); }
  /// s_i = floor((i+1)θ + ρ) − floor(iθ + ρ), encoded by letters[s_i].
  static WordStream sturmian(SturmianSlope slope, BigRational intercept = BigRational(0),
                             std::array<Letter, 2> letters = {1, 2});
  static WordStream thue_morse(std::array<Letter, 2> letters = {1, 2});
  static WordStream explicit_word(std::vector<Letter> letters);

  const Rule& rule() const noexcept { return rule_; }
  StreamKind kind() const noexcept;
  /// Number of letters, or nullopt for an infinite rule.
  std::optional<std::size_t> length() const;
  bool is_irrational_sturmian() const;

  /// Throws StreamExhausted past the end of a finite word.
  Letter letter(std::size_t i) const;
  /// First n letters; throws StreamExhausted if fewer exist.
  std::vector<Letter> prefix(std::size_t n) const;
  /// First min(n, length) letters.
  std::vector<Letter> take(std::size_t n) const;

  /// The word a_{m+1} a_{m+2} ...
  WordStream shifted(std::size_t m) const;

  /// (preperiod, period) as seen from the current offset, for Periodic rules.
  std::optional<std::pair<std::vector<Letter>, std::vector<Letter>>> periodic_parts() const;

 private:
  explicit WordStream(Rule rule) : rule_(std::move(rule)) {}
  std::vector<Letter> raw_range(std::size_t first, std::size_t count) const;

  Rule rule_;
  std::size_t offset_ = 0;
};

struct ComplexityCount {
  std::uint64_t count = 0;
  /// True when the horizon is certified to contain every factor of the stream.
  bool exact = false;
};

struct ComplexityProfile {
  std::size_t n_max = 0;
  std::vector<std::uint64_t> counts;  // counts[k] = p(k+1)
  bool exact = false;
  StreamKind kind = StreamKind::Explicit;
  bool infinite = false;
  bool irrational_sturmian = false;

  std::uint64_t p(std::size_t n) const { return counts.at(n - 1); }
};

enum class PeriodicityVerdict { UltimatelyPeriodicCertified, NotUltimatelyPeriodic, Inconclusive };

/// Distinct length-n factors among the first `horizon` letters.
ComplexityCount complexity(const WordStream& s, std::size_t n, std::size_t horizon);
ComplexityProfile complexity_profile(const WordStream& s, std::size_t n_max, std::size_t horizon);
std::uint64_t count_distinct_factors(std::span<const Letter> w, std::size_t n);

PeriodicityVerdict morse_hedlund_classify(const ComplexityProfile& profile);

/// z[k] = length of the longest common prefix of w and w[k..]; z[0] = |w|.
std::vector<std::size_t> z_array(std::span<const Letter> w);

/// Greedy chain n_1 = 1 < n_2 < ... where the length-n_j prefix of
/// a_{m+1} a_{m+2} ... is a suffix of the length-n_{j+1} prefix, each n_{j+1}
/// minimal, all within the first `horizon - m` letters of the shifted word.
std::vector<std::size_t> prefix_return_times(const WordStream& s, std::size_t m, std::size_t horizon);

/// All n <= horizon with w_1 ... w_n a palindrome.
std::vector<std::size_t> palindrome_prefixes(const WordStream& s, std::size_t horizon);

/// Max over factors W, |W| <= max_len, of (largest start-to-start gap between
/// consecutive occurrences, the gap from position 1 to the first occurrence
/// included) / |W|. Lower bound for the linear recurrence constant.
BigRational linear_recurrence_constant(const WordStream& s, std::size_t max_len, std::size_t horizon);

}  // namespace littlewood
