#include "gmark/markov.hpp"

#include "gmark/parallel.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace gmark::markov {

bool is_solution(const BigTriple& t, const LambdaParams& l) {
  const auto& [a, b, c] = t;
  BigInt lhs = a * a + b * b + c * c + l.l3 * a * b + l.l1 * b * c + l.l2 * c * a;
  BigInt rhs = l.k_lambda() * a * b * c;
  return lhs == rhs;
}

namespace {

template <class T>
T numerator_for(const std::array<T, 3>& t, int i, const LambdaParams& l) {
  auto [j, k] = others0(i);
  return t[j] * t[j] + l.at(i) * t[j] * t[k] + t[k] * t[k];
}

std::size_t digits(const BigInt& x) {
  // sizeinbase may overshoot by one; confirm against the exact power.
  std::size_t d = mpz_sizeinbase(x.get_mpz_t(), 10);
  if (d > 1) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, d - 1);
    if (abs(x) < p) --d;
  }
  return d;
}

}  // namespace

BigTriple mutate(const BigTriple& t, int i, const LambdaParams& lambda) {
  check_direction(i);
  const auto& denom = t[i - 1];
  if (sgn(denom) == 0) throw Error(Errc::BadInput, "zero component");
  BigInt num = numerator_for(t, i, lambda);
  if (!mpz_divisible_p(num.get_mpz_t(), denom.get_mpz_t())) {
    throw Error(Errc::NonIntegerResult, "mutation of " + triple_to_string(t) + " at " +
                                            std::to_string(i) + " is not integral");
  }
  BigTriple out = t;
  mpz_divexact(out[i - 1].get_mpz_t(), num.get_mpz_t(), denom.get_mpz_t());
  return out;
}

RatTriple mutate_rational(const RatTriple& t, int i, const LambdaParams& lambda) {
  check_direction(i);
  if (sgn(t[i - 1]) == 0) throw Error(Errc::BadInput, "zero component");
  RatTriple out = t;
  out[i - 1] = numerator_for(t, i, lambda) / t[i - 1];
  out[i - 1].canonicalize();
  return out;
}

MarkovChain chain(const ReducedSeq& w, const LambdaParams& lambda, const BigTriple& start,
                  std::size_t digit_budget) {
  if (!is_solution(start, lambda)) {
    throw Error(Errc::NotASolution, triple_to_string(start) + " is not a solution for lambda=" +
                                        lambda.to_string());
  }
  MarkovChain out{lambda, w, {start}};
  out.triples.reserve(w.size() + 1);
  for (std::size_t d = 0; d < w.size(); ++d) {
    BigTriple next = mutate(out.triples.back(), w[d], lambda);
    if (digits(next[w[d] - 1]) > digit_budget) throw DigitBudgetExceeded(d, digit_budget);
    out.triples.push_back(std::move(next));
  }
  return out;
}

bool is_singular(const BigTriple& t, const LambdaParams& lambda) {
  if (!is_solution(t, lambda)) {
    throw Error(Errc::NotASolution, triple_to_string(t) + " is not a solution");
  }
  const BigTriple candidates[] = {
      {1, 1, 1}, {lambda.l1 + 2, 1, 1}, {1, lambda.l2 + 2, 1}, {1, 1, lambda.l3 + 2}};
  return std::find(std::begin(candidates), std::end(candidates), t) != std::end(candidates);
}

std::optional<int> argmax_index(const BigTriple& t) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (t[i] > t[best]) best = i;
  for (int i = 0; i < 3; ++i)
    if (i != best && t[i] == t[best]) return std::nullopt;
  return best + 1;
}

BigInt max_component(const BigTriple& t) { return std::max({t[0], t[1], t[2]}); }

std::vector<TreeEntry> enumerate_tree(const LambdaParams& lambda, const BigInt& bound,
                                      unsigned threads) {
  std::vector<TreeEntry> found;
  if (bound < 1) return found;
  std::vector<TreeEntry> frontier{{ReducedSeq{}, {1, 1, 1}}};
  threads = resolve_threads(threads);
  while (!frontier.empty()) {
    found.insert(found.end(), frontier.begin(), frontier.end());
    auto children = parallel_map<std::vector<TreeEntry>>(frontier.size(), threads, [&](std::size_t n) {
      std::vector<TreeEntry> kids;
      const auto& parent = frontier[n];
      for (int d = 1; d <= 3; ++d) {
        if (!parent.address.empty() && parent.address[parent.address.size() - 1] == d) continue;
        BigTriple t = mutate(parent.triple, d, lambda);
        if (t[d - 1] > bound) continue;
        kids.push_back({parent.address.extended(d), std::move(t)});
      }
      return kids;
    });
    frontier.clear();
    for (auto& kids : children)
      for (auto& k : kids) frontier.push_back(std::move(k));
  }

  // The tree has unique addresses, but keep the shortest one defensively.
  std::map<BigTriple, ReducedSeq> best;
  for (auto& e : found) {
    auto [it, inserted] = best.try_emplace(e.triple, e.address);
    if (!inserted) {
      const auto& cur = it->second;
      if (e.address.size() < cur.size() || (e.address.size() == cur.size() && e.address < cur)) {
        it->second = e.address;
      }
    }
  }
  std::vector<TreeEntry> out;
  out.reserve(best.size());
  for (auto& [t, a] : best) out.push_back({a, t});
  std::stable_sort(out.begin(), out.end(), [](const TreeEntry& x, const TreeEntry& y) {
    return max_component(x.triple) < max_component(y.triple);
  });
  return out;
}

std::string to_json_line(const LambdaParams& lambda, const TreeEntry& e) {
  nlohmann::json j;
  j["lambda"] = {lambda.l1, lambda.l2, lambda.l3};
  j["seq"] = e.address.to_string();
  j["triple"] = {e.triple[0].get_str(), e.triple[1].get_str(), e.triple[2].get_str()};
  j["max"] = max_component(e.triple).get_str();
  return j.dump();
}

}  // namespace gmark::markov
