// Shared domain types for generalized Markov triples, Euclid trees and
// reduced mutation words.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmark {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Ordered triple of positive integers. Directions are 1-based in every
/// public operation; storage is 0-based.
using BigTriple = std::array<BigInt, 3>;
using RatTriple = std::array<Rational, 3>;
/// Natural logarithms of a BigTriple's components.
using LogTriple = std::array<double, 3>;

enum class Errc {
  NotReduced,
  BadAlphabet,
  CapExceeded,
  WindowTooLarge,
  BadDirection,
  NonIntegerResult,
  DigitBudgetExceeded,
  NotASolution,
  NoStrictArgmax,
  ArgmaxMutation,
  NoConvergence,
  BadInput,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when a chain component grows past the configured digit budget.
class DigitBudgetExceeded : public Error {
 public:
  DigitBudgetExceeded(std::size_t last_safe_depth, std::size_t budget);
  std::size_t last_safe_depth() const noexcept { return last_safe_depth_; }

 private:
  std::size_t last_safe_depth_;
};

/// Throws BadDirection unless 1 <= dir <= 3.
void check_direction(int dir);

/// The two directions other than `dir`, in increasing order, 0-based.
std::array<int, 2> others0(int dir);

struct LambdaParams {
  unsigned l1 = 0;
  unsigned l2 = 0;
  unsigned l3 = 0;

  /// 3 + l1 + l2 + l3.
  unsigned k_lambda() const { return 3 + l1 + l2 + l3; }
  /// Coefficient attached to direction `dir` (1-based).
  unsigned at(int dir) const;

  std::string to_string() const;
  static LambdaParams parse(std::string_view text);

  friend bool operator==(const LambdaParams&, const LambdaParams&) = default;
};

/// A finite word over {1,2,3} with no equal adjacent letters. Index 0 is the
/// first mutation applied.
class ReducedSeq {
 public:
  ReducedSeq() = default;

  static ReducedSeq validate(std::span<const int> entries);
  static ReducedSeq validate(std::initializer_list<int> entries);
  /// Parses the comma-separated digit form, e.g. "1,2,3,1". Empty text is
  /// the empty word.
  static ReducedSeq parse(std::string_view text);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Copy with `dir` appended; throws NotReduced when it repeats the last letter.
  ReducedSeq extended(int dir) const;
  ReducedSeq prefix(std::size_t n) const;

  std::string to_string() const;

  friend bool operator==(const ReducedSeq&, const ReducedSeq&) = default;
  friend auto operator<=>(const ReducedSeq&, const ReducedSeq&) = default;

 private:
  explicit ReducedSeq(std::vector<int> entries) : entries_(std::move(entries)) {}
  std::vector<int> entries_;
};

ReducedSeq validate_reduced(std::span<const int> entries);

inline constexpr std::size_t kDefaultEnumerateCap = 24;

/// All reduced words of length n in lexicographic order.
std::vector<ReducedSeq> enumerate_reduced(std::size_t n,
                                          std::size_t cap = kDefaultEnumerateCap);

struct TailClass {
  enum class Kind { AllThree, TwoAlternating };
  Kind kind = Kind::AllThree;
  /// The direction missing from the window; 0 for AllThree.
  int absent = 0;
  bool three_cyclic = false;

  bool all_three() const { return kind == Kind::AllThree; }
  std::string to_string() const;

  friend bool operator==(const TailClass&, const TailClass&) = default;
};

/// Heuristic classification of the final `window` letters of w.
TailClass classify_tail(const ReducedSeq& w, std::size_t window);

/// Natural log of a positive big integer, accurate to double precision even
/// far beyond the double range.
double log_of(const BigInt& x);

template <class T>
std::string triple_to_string(const std::array<T, 3>& t) {
  std::string out = "(";
  for (int i = 0; i < 3; ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, BigInt> || std::is_same_v<T, Rational>) {
      out += t[i].get_str();
    } else {
      out += std::to_string(t[i]);
    }
  }
  return out + ")";
}

BigTriple parse_big_triple(std::string_view text);

}  // namespace gmark
