// Classical and k-generalized Euclid trees, plus Fibonacci utilities.
#pragma once

#include "gmark/core.hpp"

#include <utility>
#include <vector>

namespace gmark::euclid {

struct EuclidParams {
  Rational k = 0;
  RatTriple init{1, 1, 1};
};

/// No component equals the sum of the other two plus k. Only meaningful at
/// the root of a tree; interior triples routinely fail it.
bool is_k_initial(const RatTriple& t, const Rational& k);

/// Component i becomes k + (sum of the other two).
RatTriple euclid_mutate(const RatTriple& t, int i, const Rational& k = 0);

std::vector<RatTriple> euclid_chain(const ReducedSeq& w, const EuclidParams& p);

/// The pair of triples at address w in the two trees.
std::pair<RatTriple, RatTriple> tree_iso(const ReducedSeq& w, const EuclidParams& pE,
                                         const EuclidParams& pK);

BigInt fibonacci(unsigned long n);

struct ReciprocalSum {
  Rational partial;
  /// Rigorous upper bound on the omitted tail.
  Rational tail_bound;
};

ReciprocalSum fib_reciprocal_sum(unsigned long n_terms);

/// A rational r with r >= 1/phi, checked exactly via r^2 + r > 1.
Rational inverse_phi_upper();

inline constexpr unsigned long kBoundTerms = 64;

/// base + 2k * (sum of 1/F_n), with the sum rounded upward.
Rational comparison_upper_bound(const Rational& base, const Rational& k);

}  // namespace gmark::euclid
