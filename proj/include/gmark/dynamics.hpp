// Comparison triples, ratio sequences, the log-domain Markov engine and
// estimators for the asymptotic ratio q.
#pragma once

#include "gmark/core.hpp"
#include "gmark/euclid.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace gmark::dynamics {

using ComparisonTriple = RatTriple;

struct ComparisonState {
  ComparisonTriple comp;
  /// The classical-tree triple at the same address.
  RatTriple euclid;
  Rational kval;

  friend bool operator==(const ComparisonState&, const ComparisonState&) = default;
};

/// Componentwise K / E. The classical side must have k = 0.
ComparisonState initial_state(const euclid::EuclidParams& pK, const euclid::EuclidParams& pE);

ComparisonState delta_mutate(const ComparisonState& s, int i);

struct InternalDivision {
  bool would_be_internal = false;
  Rational threshold;
};

/// Whether delta_mutate(s, i) lands in the closed interval spanned by the
/// two untouched components, decided by comparing kval against threshold.
InternalDivision internal_division_pred(const ComparisonState& s, int i);

Rational spread(const ComparisonTriple& c);
Rational min_component(const ComparisonTriple& c);

struct ComparisonStep {
  int letter = 0;  // 0 for the initial state
  ComparisonState state;
  Rational spread;
  Rational min;
};

std::vector<ComparisonStep> run_comparison(const ReducedSeq& w, const euclid::EuclidParams& pK,
                                           const euclid::EuclidParams& pE);

/// Letter at position n, or 0 once the sequence ends.
using SequenceGenerator = std::function<int(std::size_t)>;

SequenceGenerator finite(const ReducedSeq& w);
/// Repeats `period` forever; its first and last letters must differ.
SequenceGenerator periodic(const ReducedSeq& period);
/// Repeats the prefix, dropping any letter equal to its predecessor, e.g.
/// 1,2,1 -> 1,2,1,2,1,2,... A single letter cannot be repeated and yields a
/// finite sequence.
SequenceGenerator cyclic_extension(const ReducedSeq& prefix);

inline constexpr std::size_t kDefaultTailWindow = 12;

struct EuclidQEstimate {
  double q = 0;
  double spread_at_stop = 0;
  std::size_t depth = 0;
  TailClass tail;
  /// (K_i + k) / E_i for the letter i missing from a two-letter tail.
  std::optional<double> closed_form;
  double min_component = 0;
  bool converged = false;
};

EuclidQEstimate estimate_q_euclid(const SequenceGenerator& gen, const euclid::EuclidParams& pK,
                                  const euclid::EuclidParams& pE, double eps = 1e-9,
                                  std::size_t max_depth = 64,
                                  std::size_t tail_window = kDefaultTailWindow);

/// b / (a c) style ratio of the component created by mutating t at i.
/// Throws ArgmaxMutation when i is the strict maximum of t.
Rational ratio_step(const BigTriple& t, int i, const LambdaParams& lambda);

/// max / (product of the other two).
Rational current_ratio(const BigTriple& t);

enum class Mode { Exact, Log };

struct RatioSeries {
  Mode mode = Mode::Exact;
  std::vector<double> values;
  /// Filled in exact mode only.
  std::vector<Rational> exact;
};

RatioSeries ratio_series(const ReducedSeq& w, const LambdaParams& lambda, Mode mode,
                         std::size_t digit_budget = 200000);

LogTriple log_mutate(const LogTriple& t, int i, const LambdaParams& lambda);
std::vector<LogTriple> log_chain(const ReducedSeq& w, const LambdaParams& lambda,
                                 const LogTriple& start = {0, 0, 0});

struct LogQEstimate {
  double q = 0;
  LogTriple per_component{0, 0, 0};
  std::size_t depth = 0;
  TailClass tail;
  /// (log a_i + log k) / x_i for the letter i missing from a two-letter tail.
  std::optional<double> cesaro;
  /// Per-component spread for three-letter tails; for two-letter tails the
  /// largest distance of an active quotient from the Cesaro estimate.
  double spread = 0;
  double k_last = 0;
  LogTriple logs{0, 0, 0};
  LogTriple euclid{1, 1, 1};
  bool converged = false;
};

LogQEstimate estimate_q_log(const SequenceGenerator& gen, const LambdaParams& lambda,
                            double eps = 1e-9, std::size_t max_depth = 10000,
                            std::size_t tail_window = kDefaultTailWindow);

}  // namespace gmark::dynamics
