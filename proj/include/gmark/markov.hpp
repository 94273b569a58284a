// Exact engine for the generalized Markov equation.
#pragma once

#include "gmark/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmark::markov {

inline constexpr std::size_t kDefaultDigitBudget = 200000;

struct MarkovChain {
  LambdaParams lambda;
  ReducedSeq seq;
  std::vector<BigTriple> triples;

  const BigTriple& back() const { return triples.back(); }
};

/// x1²+x2²+x3²+λ3x1x2+λ1x2x3+λ2x3x1 == (3+Σλ)x1x2x3, exactly.
bool is_solution(const BigTriple& t, const LambdaParams& lambda);

/// Replaces component i by (xj²+λi xj xk+xk²)/xi. Throws NonIntegerResult if
/// the quotient is not an integer.
BigTriple mutate(const BigTriple& t, int i, const LambdaParams& lambda);
RatTriple mutate_rational(const RatTriple& t, int i, const LambdaParams& lambda);

MarkovChain chain(const ReducedSeq& w, const LambdaParams& lambda,
                  const BigTriple& start = {1, 1, 1},
                  std::size_t digit_budget = kDefaultDigitBudget);

/// Throws NotASolution when t does not satisfy the equation.
bool is_singular(const BigTriple& t, const LambdaParams& lambda);

/// 1-based index of the strict maximum; nullopt on a tie.
std::optional<int> argmax_index(const BigTriple& t);

struct TreeEntry {
  ReducedSeq address;
  BigTriple triple;
};

/// Every solution reachable from (1,1,1) with maximum component <= bound,
/// sorted by (max, triple).
std::vector<TreeEntry> enumerate_tree(const LambdaParams& lambda, const BigInt& bound,
                                      unsigned threads = 1);

BigInt max_component(const BigTriple& t);

/// {"lambda":[..],"seq":"2,1","triple":["17","4","1"],"max":"17"}
std::string to_json_line(const LambdaParams& lambda, const TreeEntry& e);

}  // namespace gmark::markov
