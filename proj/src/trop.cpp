#include "gmark/trop.hpp"

#include "gmark/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gmark::trop {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(Errc::BadInput, "tropical value overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

std::optional<int> trop_argmax(const TropTriple& t) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (t[i] > t[best]) best = i;
  for (int i = 0; i < 3; ++i)
    if (i != best && t[i] == t[best]) return std::nullopt;
  return best + 1;
}

}  // namespace

bool is_trop_solution(const TropTriple& t) {
  const __int128 m = 2 * static_cast<__int128>(std::max({t[0], t[1], t[2]}));
  return m == static_cast<__int128>(t[0]) + t[1] + t[2];
}

TropTriple trop_mutate(const TropTriple& t, int i) {
  check_direction(i);
  auto [j, l] = others0(i);
  TropTriple out = t;
  out[i - 1] = checked(2 * static_cast<__int128>(std::max(t[j], t[l])) - t[i - 1]);
  return out;
}

TropTriple seed_from_markov(const BigTriple& m, std::int64_t a, std::int64_t b) {
  if (!(a > b && b > 0)) throw Error(Errc::BadInput, "seed needs a > b > 0");
  if (m == BigTriple{1, 1, 1}) return {0, 0, 0};
  auto top = markov::argmax_index(m);
  if (!top) throw Error(Errc::NoStrictArgmax, triple_to_string(m) + " has no strict maximum");
  const int hi = *top - 1;
  auto [j, l] = others0(*top);
  TropTriple out{};
  if (m[j] == m[l]) {
    out[hi] = 2 * a;
    out[j] = out[l] = a;
    return out;
  }
  out[hi] = a + b;
  out[m[j] > m[l] ? j : l] = a;
  out[m[j] > m[l] ? l : j] = b;
  return out;
}

CorrespondenceReport verify_correspondence(const ReducedSeq& w, const LambdaParams& lambda,
                                           const BigTriple& start) {
  CorrespondenceReport rep;
  const auto ch = markov::chain(w, lambda, start);
  const auto& ts = ch.triples;

  // Past the last singular triple or backward step, each move raises the max.
  for (std::size_t d = 0; d < ts.size(); ++d) {
    const bool singular = markov::is_singular(ts[d], lambda);
    const bool backward = d > 0 && markov::argmax_index(ts[d - 1]) == w[d - 1];
    if (singular || backward) rep.seed_index = d;
  }
  TropTriple t = seed_from_markov(ts[rep.seed_index]);
  TropTriple e = t;
  rep.trop_chain.push_back(t);
  rep.euclid_chain.push_back(e);
  auto fail = [&](std::size_t pos, std::string why) {
    rep.success = false;
    if (!rep.divergence) {
      rep.divergence = pos;
      rep.detail = std::move(why);
    }
  };
  if (!is_trop_solution(t)) fail(rep.seed_index, "seed is not a tropical solution");

  for (std::size_t d = rep.seed_index; d < w.size(); ++d) {
    const int i = w[d];
    t = trop_mutate(t, i);
    auto [j, l] = others0(i);
    e[i - 1] = checked(static_cast<__int128>(e[j]) + e[l]);
    rep.trop_chain.push_back(t);
    rep.euclid_chain.push_back(e);
    const std::size_t pos = d + 1;
    if (!is_trop_solution(t)) fail(pos, "tropical triple " + triple_to_string(t) + " off the tropical locus");
    if (t != e) fail(pos, "tropical " + triple_to_string(t) + " differs from Euclid " + triple_to_string(e));
    if (trop_argmax(t) != markov::argmax_index(ts[pos])) {
      fail(pos, "argmax of " + triple_to_string(t) + " differs from " + triple_to_string(ts[pos]));
    }
  }
  return rep;
}

LimitCheck trop_limit_check(const TropTriple& x, const LambdaParams& lambda, double C) {
  if (!(C > 0)) throw Error(Errc::BadInput, "C must be positive");
  const double x1 = static_cast<double>(x[0]), x2 = static_cast<double>(x[1]), x3 = static_cast<double>(x[2]);
  // Monomials x1², x2², x3², x1x2, x2x3, x3x1 with their coefficients.
  const std::array<double, 6> exps{2 * x1, 2 * x2, 2 * x3, x1 + x2, x2 + x3, x3 + x1};
  const std::array<double, 6> coef{1, 1, 1, double(lambda.l3), double(lambda.l1), double(lambda.l2)};
  double top = -INFINITY;
  for (int m = 0; m < 6; ++m)
    if (coef[m] > 0) top = std::max(top, exps[m]);
  double acc = 0;
  for (int m = 0; m < 6; ++m)
    if (coef[m] > 0) acc += coef[m] * std::exp(C * (exps[m] - top));
  LimitCheck out;
  out.numeric = (C * top + std::log(acc)) / C - (x1 + x2 + x3);
  out.exact = checked(2 * static_cast<__int128>(std::max({x[0], x[1], x[2]}))) - (x[0] + x[1] + x[2]);
  return out;
}

}  // namespace gmark::trop
