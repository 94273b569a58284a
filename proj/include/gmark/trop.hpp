// Tropicalized Markov equation and its link to the classical Euclid tree.
#pragma once

#include "gmark/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gmark::trop {

using TropTriple = std::array<std::int64_t, 3>;

/// max(2x1, 2x2, 2x3) == x1 + x2 + x3.
bool is_trop_solution(const TropTriple& t);

/// Component i becomes max(2xj, 2xk) - xi. Throws BadInput on overflow.
TropTriple trop_mutate(const TropTriple& t, int i);

/// Tropical seed matching the ordering of a Markov solution: (0,0,0) for
/// (1,1,1), (2a,a,a) arranged by the maximum when the two smaller entries
/// tie, otherwise a+b, a, b placed by rank. Requires a > b > 0.
TropTriple seed_from_markov(const BigTriple& m, std::int64_t a = 2, std::int64_t b = 1);

struct CorrespondenceReport {
  bool success = true;
  /// Index into the Markov chain where the tropical chain was seeded.
  std::size_t seed_index = 0;
  std::vector<TropTriple> trop_chain;
  std::vector<TropTriple> euclid_chain;
  /// First position (in the full chain) where a check failed.
  std::optional<std::size_t> divergence;
  std::string detail;
};

/// Runs the Markov chain from `start` and, from the last singular (or
/// non-forward) step on, the tropical and classical Euclid chains from a
/// common seed; compares values and argmax positions.
CorrespondenceReport verify_correspondence(const ReducedSeq& w, const LambdaParams& lambda,
                                           const BigTriple& start = {1, 1, 1});

struct LimitCheck {
  double numeric = 0;
  std::int64_t exact = 0;
};

/// log F(e^{C x}) / C against max(2x) - sum(x).
LimitCheck trop_limit_check(const TropTriple& x, const LambdaParams& lambda, double C);

}  // namespace gmark::trop
