#include "gmark/dynamics.hpp"

#include "gmark/markov.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace gmark::dynamics {

namespace {

Rational canon(Rational r) {
  r.canonicalize();
  return r;
}

void check_letter(int letter, int previous) {
  if (letter < 1 || letter > 3) throw Error(Errc::BadAlphabet, "generated letter " + std::to_string(letter));
  if (letter == previous) throw Error(Errc::NotReduced, "generator repeated letter " + std::to_string(letter));
}

std::optional<TailClass> tail_of(const std::vector<int>& history, std::size_t window) {
  if (history.size() < window || window < 2) return std::nullopt;
  return classify_tail(ReducedSeq::validate(std::span<const int>(history).last(window)), window);
}

}  // namespace

ComparisonState initial_state(const euclid::EuclidParams& pK, const euclid::EuclidParams& pE) {
  if (pE.k != 0) throw Error(Errc::BadInput, "the classical side of a comparison must have k = 0");
  if (pK.k < 0) throw Error(Errc::BadInput, "k must be nonnegative");
  ComparisonState s{{}, pE.init, pK.k};
  for (int c = 0; c < 3; ++c) {
    if (pE.init[c] <= 0 || pK.init[c] <= 0) throw Error(Errc::BadInput, "initial triples must be positive");
    s.comp[c] = canon(pK.init[c] / pE.init[c]);
  }
  return s;
}

ComparisonState delta_mutate(const ComparisonState& s, int i) {
  check_direction(i);
  auto [j, l] = others0(i);
  const auto& x = s.euclid;
  const Rational weight = x[j] + x[l];
  ComparisonState out = s;
  out.comp[i - 1] = canon((x[j] * s.comp[j] + x[l] * s.comp[l] + s.kval) / weight);
  out.euclid[i - 1] = weight;
  return out;
}

InternalDivision internal_division_pred(const ComparisonState& s, int i) {
  check_direction(i);
  auto [j, l] = others0(i);
  if (s.comp[j] == s.comp[l]) return {s.kval == 0, 0};
  // The mutated value never drops below the smaller endpoint; it stays below
  // the larger one iff k <= x_small * (gap).
  const int small = s.comp[j] < s.comp[l] ? j : l;
  const int large = small == j ? l : j;
  Rational threshold = canon(s.euclid[small] * (s.comp[large] - s.comp[small]));
  return {s.kval <= threshold, threshold};
}

Rational spread(const ComparisonTriple& c) {
  auto [lo, hi] = std::minmax({c[0], c[1], c[2]});
  return canon(hi - lo);
}

Rational min_component(const ComparisonTriple& c) { return std::min({c[0], c[1], c[2]}); }

std::vector<ComparisonStep> run_comparison(const ReducedSeq& w, const euclid::EuclidParams& pK,
                                           const euclid::EuclidParams& pE) {
  auto s = initial_state(pK, pE);
  std::vector<ComparisonStep> out;
  out.reserve(w.size() + 1);
  out.push_back({0, s, spread(s.comp), min_component(s.comp)});
  for (int d : w) {
    s = delta_mutate(s, d);
    out.push_back({d, s, spread(s.comp), min_component(s.comp)});
  }
  return out;
}

SequenceGenerator finite(const ReducedSeq& w) {
  return [w](std::size_t n) { return n < w.size() ? w[n] : 0; };
}

SequenceGenerator periodic(const ReducedSeq& period) {
  if (period.size() < 2 || period[0] == period[period.size() - 1]) {
    throw Error(Errc::NotReduced, "periodic repetition of " + period.to_string() + " is not reduced");
  }
  return [period](std::size_t n) { return period[n % period.size()]; };
}

SequenceGenerator cyclic_extension(const ReducedSeq& prefix) {
  if (prefix.size() < 2) return finite(prefix);
  if (prefix[0] != prefix[prefix.size() - 1]) return periodic(prefix);
  const std::vector<int> tail(prefix.begin() + 1, prefix.end());
  return [prefix, tail](std::size_t n) {
    if (n < prefix.size()) return prefix[n];
    return tail[(n - prefix.size()) % tail.size()];
  };
}

EuclidQEstimate estimate_q_euclid(const SequenceGenerator& gen, const euclid::EuclidParams& pK,
                                  const euclid::EuclidParams& pE, double eps,
                                  std::size_t max_depth, std::size_t tail_window) {
  if (!(eps > 0)) throw Error(Errc::BadInput, "eps must be positive");
  auto s = initial_state(pK, pE);
  EuclidQEstimate out;
  std::vector<int> history;
  std::optional<Rational> previous_closed;
  int last = 0;

  while (history.size() < max_depth) {
    const int letter = gen(history.size());
    if (letter == 0) break;
    check_letter(letter, last);
    last = letter;
    history.push_back(letter);
    s = delta_mutate(s, letter);

    const Rational sp = spread(s.comp);
    out.spread_at_stop = sp.get_d();
    const auto tail = tail_of(history, tail_window);
    if (tail && !tail->all_three()) {
      const int i = tail->absent - 1;
      Rational closed = canon(s.comp[i] + s.kval / s.euclid[i]);
      const bool stable = previous_closed && abs(closed - *previous_closed) < eps;
      previous_closed = closed;
      if (stable) {
        out.converged = true;
        break;
      }
    } else {
      previous_closed.reset();
      if (sp < eps) {
        out.converged = true;
        break;
      }
    }
  }

  out.depth = history.size();
  out.min_component = min_component(s.comp).get_d();
  out.q = out.min_component;
  const std::size_t window = std::min(tail_window, history.size());
  if (window >= 2) {
    out.tail = classify_tail(ReducedSeq::validate(history), window);
    if (!out.tail.all_three()) {
      const int i = out.tail.absent - 1;
      out.closed_form = Rational(s.comp[i] + s.kval / s.euclid[i]).get_d();
      out.q = *out.closed_form;
    }
  }
  return out;
}

Rational ratio_step(const BigTriple& t, int i, const LambdaParams& lambda) {
  check_direction(i);
  if (markov::argmax_index(t) == i) {
    throw Error(Errc::ArgmaxMutation, "mutating the maximum of " + triple_to_string(t));
  }
  auto next = markov::mutate(t, i, lambda);
  auto [j, l] = others0(i);
  return canon(Rational(next[i - 1], t[j] * t[l]));
}

Rational current_ratio(const BigTriple& t) {
  int m = 0;
  for (int c = 1; c < 3; ++c)
    if (t[c] > t[m]) m = c;
  auto [j, l] = others0(m + 1);
  return canon(Rational(t[m], t[j] * t[l]));
}

RatioSeries ratio_series(const ReducedSeq& w, const LambdaParams& lambda, Mode mode,
                         std::size_t digit_budget) {
  RatioSeries out;
  out.mode = mode;
  out.values.reserve(w.size());
  if (mode == Mode::Exact) {
    auto ch = markov::chain(w, lambda, {1, 1, 1}, digit_budget);
    for (std::size_t d = 0; d < w.size(); ++d) {
      out.exact.push_back(ratio_step(ch.triples[d], w[d], lambda));
      out.values.push_back(out.exact.back().get_d());
    }
    return out;
  }
  // k_new = k + lambda_i / a + 1 / (k a^2), with a the replaced component.
  LogTriple logs{0, 0, 0};
  double k = 0;
  for (std::size_t d = 0; d < w.size(); ++d) {
    const int i = w[d];
    const double inv = std::exp(-logs[i - 1]);
    k = d == 0 ? lambda.at(i) + 2.0 : k + lambda.at(i) * inv + inv * inv / k;
    auto [j, l] = others0(i);
    logs[i - 1] = std::log(k) + logs[j] + logs[l];
    out.values.push_back(k);
  }
  return out;
}

LogTriple log_mutate(const LogTriple& t, int i, const LambdaParams& lambda) {
  check_direction(i);
  auto [j, l] = others0(i);
  const double hi = std::max(t[j], t[l]);
  const double gap = std::abs(t[j] - t[l]);
  const double e = std::exp(-gap);
  LogTriple out = t;
  out[i - 1] = 2 * hi + std::log1p(lambda.at(i) * e + e * e) - t[i - 1];
  return out;
}

std::vector<LogTriple> log_chain(const ReducedSeq& w, const LambdaParams& lambda, const LogTriple& start) {
  std::vector<LogTriple> out{start};
  out.reserve(w.size() + 1);
  for (int d : w) out.push_back(log_mutate(out.back(), d, lambda));
  return out;
}

LogQEstimate estimate_q_log(const SequenceGenerator& gen, const LambdaParams& lambda, double eps,
                            std::size_t max_depth, std::size_t tail_window) {
  if (!(eps > 0)) throw Error(Errc::BadInput, "eps must be positive");
  LogQEstimate out;
  auto& logs = out.logs;
  auto& x = out.euclid;
  std::vector<int> history;
  double previous_cesaro = std::nan("");
  double k = 0;
  int last = 0;

  auto quotients = [&] {
    for (int c = 0; c < 3; ++c) out.per_component[c] = logs[c] / x[c];
  };

  while (history.size() < max_depth) {
    const int letter = gen(history.size());
    if (letter == 0) break;
    check_letter(letter, last);

    const double inv = std::exp(-logs[letter - 1]);
    const double k_next = history.empty() ? lambda.at(letter) + 2.0
                                          : k + lambda.at(letter) * inv + inv * inv / k;
    auto [j, l] = others0(letter);
    const double log_next = std::log(k_next) + logs[j] + logs[l];
    const double x_next = x[j] + x[l];
    if (!std::isfinite(log_next) || !std::isfinite(x_next) || x_next > 1e300) break;

    last = letter;
    history.push_back(letter);
    k = k_next;
    logs[letter - 1] = log_next;
    x[letter - 1] = x_next;
    quotients();

    const auto tail = tail_of(history, tail_window);
    if (tail && !tail->all_three()) {
      const int i = tail->absent - 1;
      const double cesaro = (logs[i] + std::log(k)) / x[i];
      const bool stable = std::abs(cesaro - previous_cesaro) < eps;
      previous_cesaro = cesaro;
      if (stable) {
        out.converged = true;
        break;
      }
    } else {
      previous_cesaro = std::nan("");
      auto [lo, hi] = std::minmax({out.per_component[0], out.per_component[1], out.per_component[2]});
      if (tail && hi - lo < eps) {
        out.converged = true;
        break;
      }
    }
  }

  out.depth = history.size();
  out.k_last = k;
  out.q = std::min({out.per_component[0], out.per_component[1], out.per_component[2]});
  out.spread = std::max({out.per_component[0], out.per_component[1], out.per_component[2]}) - out.q;
  const std::size_t window = std::min(tail_window, history.size());
  if (window >= 2) {
    out.tail = classify_tail(ReducedSeq::validate(history), window);
    if (!out.tail.all_three()) {
      const int i = out.tail.absent - 1;
      out.cesaro = (logs[i] + std::log(k)) / x[i];
      out.q = *out.cesaro;
      auto [j, l] = others0(i + 1);
      out.spread = std::max(std::abs(out.per_component[j] - out.q), std::abs(out.per_component[l] - out.q));
    }
  }
  return out;
}

}  // namespace gmark::dynamics
