// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "gmark/cli.hpp"
#include "gmark/conjecture.hpp"
#include "gmark/dynamics.hpp"
#include "gmark/euclid.hpp"
#include "gmark/gca.hpp"
#include "gmark/markov.hpp"
#include "gmark/trop.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace gmark;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.pass && s > budget_s) {
    std::ostringstream why;
    why << "over the " << budget_s << " s budget";
    o.fail(why.str());
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title;
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << " (" << std::fixed << std::setprecision(3) << s << " s)" << std::endl;
}

BigTriple big(const char* a, const char* b, const char* c) { return {BigInt(a), BigInt(b), BigInt(c)}; }

ReducedSeq random_word(std::mt19937_64& rng, std::size_t len) {
  std::vector<int> w;
  while (w.size() < len) {
    int d = 1 + static_cast<int>(rng() % 3);
    if (w.empty() || w.back() != d) w.push_back(d);
  }
  return ReducedSeq::validate(w);
}

LambdaParams random_lambda(std::mt19937_64& rng, unsigned top) {
  return {static_cast<unsigned>(rng() % (top + 1)), static_cast<unsigned>(rng() % (top + 1)),
          static_cast<unsigned>(rng() % (top + 1))};
}

std::string str(const BigTriple& t) {
  return "(" + t[0].get_str() + "," + t[1].get_str() + "," + t[2].get_str() + ")";
}

Outcome figure_tree() {
  Outcome o;
  const std::set<BigTriple> lower = {
      {1, 1, 1},  {2, 1, 1},  {1, 4, 1},  {1, 1, 4},  {2, 9, 1},   {2, 1, 9},  {17, 4, 1},
      {1, 4, 25}, {17, 1, 4}, {1, 25, 4}, {41, 9, 1}, {2, 9, 121}, {41, 1, 9}, {2, 121, 9},
      {17, 81, 1}, {17, 1, 81}};
  const std::set<BigTriple> rest = {{17, 4, 441}, {641, 4, 25},  {1, 169, 25},
                                    {17, 441, 4}, {641, 25, 4}, {1, 25, 169}};
  std::set<BigTriple> got;
  for (const auto& e : markov::enumerate_tree({0, 2, 2}, 122)) got.insert(e.triple);
  if (got != lower) o.fail("bound 122 gave " + std::to_string(got.size()) + " vertices, not the expected 16");
  std::set<BigTriple> wide;
  for (const auto& e : markov::enumerate_tree({0, 2, 2}, 641)) wide.insert(e.triple);
  for (const auto* s : {&lower, &rest})
    for (const auto& t : *s)
      if (!wide.count(t)) o.fail("vertex " + str(t) + " missing at bound 641");
  if (o.pass) o.detail = "16 vertices at bound 122; all 22 drawn vertices present at bound 641";
  return o;
}

Outcome lampe_chain() {
  Outcome o;
  const std::vector<BigTriple> expect = {
      big("1", "1", "1"),
      big("2", "1", "1"),
      big("2", "9", "1"),
      big("41", "9", "1"),
      big("41", "196", "1"),
      big("41", "196", "56169"),
      big("76951097", "196", "56169"),
      big("76951097", "196", "105422946721"),
      big("76951097", "56786879793920618169", "105422946721"),
      big("41906481420650699762738336936066", "56786879793920618169", "105422946721"),
      big("41906481420650699762738336936066", "56786879793920618169",
          "16658168261144613164154859719895467993908086960063225")};
  const auto ch = markov::chain(ReducedSeq::validate({1, 2, 1, 2, 3, 1, 3, 2, 1, 3}), {0, 2, 2});
  if (ch.triples != expect) {
    for (std::size_t d = 0; d < std::min(ch.triples.size(), expect.size()); ++d)
      if (ch.triples[d] != expect[d]) {
        o.fail("depth " + std::to_string(d) + " gave " + str(ch.triples[d]));
        return o;
      }
    o.fail("chain length differs");
  }
  return o;
}

Outcome comparison_chain() {
  Outcome o;
  const std::vector<std::array<const char*, 3>> printed = {
      {"1", "4", "9"},          {"10", "4", "9"},         {"10", "12", "9"},        {"13", "12", "9"},
      {"13", "13.6", "9"},      {"13", "13.6", "14.11"},  {"14.43", "13.6", "14.11"}, {"14.43", "14.61", "14.11"},
      {"14.69", "14.61", "14.11"}, {"14.69", "14.61", "14.78"}, {"14.82", "14.61", "14.78"},
      {"14.82", "14.86", "14.78"}, {"14.87", "14.86", "14.78"}, {"14.87", "14.88", "14.78"}};
  const euclid::EuclidParams pK{7, {1, 4, 9}}, pE{0, {1, 1, 1}};
  const auto w = ReducedSeq::validate({1, 2, 1, 2, 3, 1, 2, 1, 3, 1, 2, 1, 2});
  const auto steps = dynamics::run_comparison(w, pK, pE);
  const auto K = euclid::euclid_chain(w, pK), E = euclid::euclid_chain(w, pE);
  if (steps.size() != printed.size()) {
    o.fail("expected 14 triples");
    return o;
  }
  for (std::size_t d = 0; d < steps.size(); ++d)
    for (int c = 0; c < 3; ++c) {
      const std::string p = printed[d][c];
      const auto dot = p.find('.');
      const int decimals = dot == std::string::npos ? 0 : static_cast<int>(p.size() - dot - 1);
      const double scale = std::pow(10.0, decimals);
      const double v = steps[d].state.comp[c].get_d();
      if (std::round(v * scale) / scale != std::stod(p))
        o.fail("depth " + std::to_string(d) + " component " + std::to_string(c + 1) + " rounds differently from " + p);
      if (steps[d].state.comp[c] != K[d][c] / E[d][c]) o.fail("comparison triple is not K/E exactly");
    }
  if (o.pass) o.detail = "final " + steps.back().state.comp[0].get_str() + ", " +
                         steps.back().state.comp[1].get_str() + ", " + steps.back().state.comp[2].get_str();
  return o;
}

Outcome ratio_limits() {
  Outcome o;
  std::vector<int> cyc;
  for (int i = 0; i < 60; ++i) cyc.push_back(1 + i % 3);
  std::ostringstream d;
  d << std::scientific << std::setprecision(2);
  for (const LambdaParams l : {LambdaParams{0, 0, 0}, LambdaParams{0, 2, 2}, LambdaParams{1, 1, 1}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = dynamics::ratio_series(ReducedSeq::validate(cyc), l, dynamics::Mode::Log);
    const double err = std::abs(s.values.back() - l.k_lambda());
    if (!(err < 1e-6)) o.fail("lambda " + l.to_string() + " misses 3+sum by more than 1e-6");
    if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > 1) o.fail("over 1 s");
    d << "lambda " << l.to_string() << " err " << err << "; ";
  }
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome fibonacci_case() {
  Outcome o;
  std::vector<int> alt;
  for (int i = 0; i < 200; ++i) alt.push_back(1 + i % 2);
  const double kstar = (3 + std::sqrt(5.0)) / 2;
  const auto s = dynamics::ratio_series(ReducedSeq::validate(alt), {0, 0, 0}, dynamics::Mode::Log);
  const double kerr = std::abs(s.values.back() - kstar);
  if (!(kerr < 1e-8)) o.fail("k_j off by more than 1e-8");
  const auto est = dynamics::estimate_q_log(dynamics::periodic(ReducedSeq::validate({1, 2})), {0, 0, 0}, 1e-9, 200);
  const double qerr = std::abs(est.q - std::log(kstar));
  if (!(qerr < 1e-6)) o.fail("q off by more than 1e-6");
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "k err " << kerr << ", q err " << qerr;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome tropical_equivalence() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto l = random_lambda(rng, 3);
    const auto w = random_word(rng, rng() % 13);
    const auto rep = trop::verify_correspondence(w, l);
    if (!rep.success) {
      if (!bad) o.fail("lambda " + l.to_string() + " w " + w.to_string() + ": " + rep.detail);
      ++bad;
    }
  }
  if (o.pass) o.detail = "1000 cases, 0 failures";
  else o.detail += " (" + std::to_string(bad) + " failures)";
  return o;
}

Outcome tropical_limit() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  double worst = 0;
  for (int p = 0; p < 50; ++p) {
    trop::TropTriple x;
    for (auto& v : x) v = static_cast<std::int64_t>(rng() % 11) - 5;
    const auto l = random_lambda(rng, 3);
    const auto a = trop::trop_limit_check(x, l, 1e4), b = trop::trop_limit_check(x, l, 2e4);
    const double ea = std::abs(a.numeric - a.exact), eb = std::abs(b.numeric - b.exact);
    worst = std::max(worst, ea);
    if (!(ea < 1e-2)) o.fail("error at C=1e4 not below 1e-2");
    if (!(eb <= ea / 2 + 1e-12)) o.fail("error did not halve when C doubled");
  }
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "worst error " << worst;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome small_example() {
  Outcome o;
  const auto w = ReducedSeq::validate({2, 3, 1});
  const auto ch = markov::chain(w, {0, 0, 0}, {2, 1, 1});
  const std::vector<BigTriple> m = {{2, 1, 1}, {2, 5, 1}, {2, 5, 29}, {433, 5, 29}};
  if (ch.triples != m) o.fail("Markov chain differs");
  trop::TropTriple t = trop::seed_from_markov({2, 1, 1});
  std::vector<trop::TropTriple> tc{t};
  for (int i : w.entries()) tc.push_back(t = trop::trop_mutate(t, i));
  const std::vector<trop::TropTriple> expect = {{4, 2, 2}, {4, 6, 2}, {4, 6, 10}, {16, 6, 10}};
  if (tc != expect) o.fail("tropical chain differs");
  return o;
}

Outcome gca_suite() {
  Outcome o;
  auto s = gca::b2_seed();
  std::set<std::vector<Rational>> seen{s.x};
  const auto first = s.x;
  for (int t = 1; t <= 6; ++t) {
    s = gca::mutate_seed(s, t % 2 ? 1 : 2);
    seen.insert(s.x);
  }
  if (s.x != first) o.fail("B2 orbit does not return after 6 mutations");
  if (seen.size() != 6) o.fail("B2 orbit has " + std::to_string(seen.size()) + " distinct clusters");

  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<long> D(n), R(n);
    for (auto& d : D) d = 1 + static_cast<long>(rng() % 3);
    for (auto& r : R) r = 1 + static_cast<long>(rng() % 3);
    std::vector<std::vector<long>> rows(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const long t = static_cast<long>(rng() % 5) - 2;
        rows[i][j] = D[j] * t;
        rows[j][i] = -D[i] * t;
      }
    const gca::ExchangeMatrix B(rows);
    if (!gca::is_skew_symmetrizable(B)) o.fail("generated matrix not skew-symmetrizable");
    for (int k = 1; k <= static_cast<int>(n); ++k)
      if (!gca::check_compatibility(B, R, k)) o.fail("compatibility fails at trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "6 clusters in the B2 orbit; 200 random seeds compatible";
  return o;
}

Outcome fibonacci_identities() {
  Outcome o;
  using euclid::fibonacci;
  const mp_bitcnt_t prec = 512;
  mpf_class sqrt5(5, prec);
  sqrt5 = sqrt(sqrt5);
  const mpf_class phi = (mpf_class(1, prec) + sqrt5) / 2;
  mpf_class power(1, prec);
  for (unsigned long n = 0; n <= 70; ++n, power *= phi) {
    mpf_class approx = power / sqrt5 + mpf_class(0.5, prec);
    if (fibonacci(n) != BigInt(floor(approx))) o.fail("Binet fails at n=" + std::to_string(n));
  }
  for (unsigned long n = 1; n <= 50; ++n)
    for (unsigned long k = 1; k <= 50; ++k)
      if (fibonacci(n + k) != fibonacci(k) * fibonacci(n + 1) + fibonacci(k - 1) * fibonacci(n))
        o.fail("addition fails");
  for (unsigned long n = 0; n <= 50; ++n)
    for (unsigned long r = 0; r <= n; ++r) {
      BigInt lhs = fibonacci(n) * fibonacci(n) - fibonacci(n - r) * fibonacci(n + r);
      BigInt rhs = fibonacci(r) * fibonacci(r);
      if ((n - r) % 2) rhs = -rhs;
      if (lhs != rhs) o.fail("Catalan fails");
    }
  BigInt sum = 0;
  for (unsigned long n = 0; n <= 60; ++n) {
    sum += fibonacci(n);
    if (sum != fibonacci(n + 2) - 1) o.fail("summation fails");
  }
  const auto s = euclid::fib_reciprocal_sum(euclid::kBoundTerms);
  const Rational upper = s.partial + s.tail_bound;
  if (!(upper < Rational(336, 100))) o.fail("certified sum not below 3.36");
  std::ostringstream d;
  d << std::setprecision(15) << "sum of 1/F_n <= " << upper.get_d();
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome uniqueness_grid() {
  Outcome o;
  std::vector<std::string> bad;
  std::string example;
  for (unsigned l1 = 0; l1 <= 3; ++l1)
    for (unsigned l2 = 0; l2 <= 3; ++l2)
      for (unsigned l3 = 0; l3 <= 3; ++l3) {
        cli::RunConfig c;
        c.command = "uniq-scan";
        c.lambda = {l1, l2, l3};
        c.bound = 1000000;
        std::ostringstream out, err;
        const int code = cli::run(c, out, err);
        if (code != cli::kOk) {
          bad.push_back(c.lambda.to_string());
          if (example.empty()) {
            const auto rep = conjecture::uniqueness_scan(c.lambda, c.bound);
            const auto& v = rep.violations.front();
            example = "lambda (" + c.lambda.to_string() + ") max " + v.a.get_str() + ": (" + v.first.b.get_str() +
                      "," + v.first.c.get_str() + ") at " + v.first.address.to_string() + " vs (" +
                      v.second.b.get_str() + "," + v.second.c.get_str() + ") at " + v.second.address.to_string();
          }
        }
      }
  if (!bad.empty()) {
    std::string list;
    for (const auto& b : bad) list += (list.empty() ? "" : " ") + std::string("(") + b + ")";
    o.fail(std::to_string(bad.size()) + " of 64 lambdas exit 3 with violations: " + list + "; e.g. " + example);
  } else {
    o.detail = "64 lambdas, 0 violations";
  }
  return o;
}

Outcome approximate_search() {
  Outcome o;
  const auto hits = conjecture::candidate_search(433, {0, 0, 0}, 6, 0.05);
  std::size_t matched = 0;
  for (const auto& c : hits) matched += c.matched;
  if (!matched) o.fail("a=433: " + std::to_string(hits.size()) + " candidates, none matched");
  const auto six = conjecture::candidate_search(6, {0, 0, 0}, 6, 0.05);
  for (const auto& c : six)
    if (c.matched) o.fail("a=6 produced a matched candidate");
  if (o.pass) o.detail = "a=433: " + std::to_string(matched) + " matched";
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(kSeed);

  // Markov and tropical involutions.
  for (int t = 0; t < 500; ++t) {
    const auto l = random_lambda(rng, 4);
    const auto ch = markov::chain(random_word(rng, rng() % 15), l);
    const int i = 1 + static_cast<int>(rng() % 3);
    if (markov::mutate(markov::mutate(ch.back(), i, l), i, l) != ch.back()) o.fail("Markov mutation not an involution");
    trop::TropTriple x{static_cast<std::int64_t>(rng() % 31), static_cast<std::int64_t>(rng() % 31),
                       static_cast<std::int64_t>(rng() % 31)};
    if (trop::trop_mutate(trop::trop_mutate(x, i), i) != x) o.fail("tropical mutation not an involution");
  }

  // Log engine: fidelity at depth 18 and involution.
  for (int t = 0; t < 300; ++t) {
    const auto l = random_lambda(rng, 4);
    const auto w = random_word(rng, 18);
    const auto exact = markov::chain(w, l);
    const auto logs = dynamics::log_chain(w, l);
    for (std::size_t d = 0; d < logs.size(); ++d)
      for (int c = 0; c < 3; ++c)
        if (!(std::abs(logs[d][c] - log_of(exact.triples[d][c])) < 1e-10)) o.fail("log engine drifts above 1e-10");
    const int i = 1 + static_cast<int>(rng() % 3);
    const auto back = dynamics::log_mutate(dynamics::log_mutate(logs.back(), i, l), i, l);
    for (int c = 0; c < 3; ++c)
      if (!(std::abs(back[c] - logs.back()[c]) < 1e-9)) o.fail("log mutation not an involution");
  }

  // Ratio sequences increase strictly and stay below 3+sum.
  for (int t = 0; t < 300; ++t) {
    const auto l = random_lambda(rng, 3);
    const auto s = dynamics::ratio_series(random_word(rng, 1 + rng() % 20), l, dynamics::Mode::Exact);
    for (std::size_t d = 0; d < s.exact.size(); ++d) {
      if (!(s.exact[d] < l.k_lambda())) o.fail("ratio not below 3+sum");
      if (d && !(s.exact[d] > s.exact[d - 1])) o.fail("ratio not increasing");
    }
  }

  // Internal-division predicate against direct evaluation.
  for (int t = 0; t < 10000; ++t) {
    dynamics::ComparisonState s;
    for (int c = 0; c < 3; ++c) {
      s.comp[c] = Rational(static_cast<long>(1 + rng() % 40), static_cast<long>(1 + rng() % 6));
      s.comp[c].canonicalize();
      s.euclid[c] = static_cast<long>(1 + rng() % 30);
    }
    s.kval = static_cast<long>(rng() % 12);
    const int i = 1 + t % 3;
    const auto [j, l] = others0(i);
    const auto v = dynamics::delta_mutate(s, i).comp[i - 1];
    const bool inside = std::min(s.comp[j], s.comp[l]) <= v && v <= std::max(s.comp[j], s.comp[l]);
    if (dynamics::internal_division_pred(s, i).would_be_internal != inside) o.fail("internal-division predicate unsound");
  }

  // Bounded comparison triples; minimum and spread behaviour are only reported.
  std::size_t min_drops = 0, spread_growth = 0, sampled = 0;
  for (int t = 0; t < 100; ++t) {
    const Rational k = static_cast<long>(rng() % 10);
    const euclid::EuclidParams pK{k, {static_cast<long>(1 + rng() % 20), static_cast<long>(1 + rng() % 20),
                                      static_cast<long>(1 + rng() % 20)}};
    std::vector<int> w;
    while (w.size() < 200) {
      // Every letter recurs within a short window.
      int d = 1 + static_cast<int>(rng() % 3);
      if (w.size() >= 2 && w[w.size() - 2] != d && w.back() != d && rng() % 2) d = 6 - w.back() - w[w.size() - 2];
      if (w.empty() || w.back() != d) w.push_back(d);
    }
    const auto steps = dynamics::run_comparison(ReducedSeq::validate(w), pK, {0, {1, 1, 1}});
    const auto& c0 = steps.front().state.comp;
    const auto bound = euclid::comparison_upper_bound(std::max({c0[0], c0[1], c0[2]}), k);
    for (std::size_t d = 0; d < steps.size(); ++d) {
      const auto& c = steps[d].state.comp;
      if (std::max({c[0], c[1], c[2]}) > bound) o.fail("comparison component above the Fibonacci bound");
      if (d && steps[d].min < steps[d - 1].min) ++min_drops;
    }
    for (std::size_t d = 10; 2 * d < steps.size(); d += 10, ++sampled)
      if (steps[2 * d].spread > steps[d].spread) ++spread_growth;
  }
  if (o.pass) {
    o.detail = "minimum decreased " + std::to_string(min_drops) + " times; spread grew from d to 2d in " +
               std::to_string(spread_growth) + " of " + std::to_string(sampled) + " samples";
  }
  return o;
}

}  // namespace

int main() {
  criterion(1, "tree enumeration for lambda=(0,2,2) up to 122", 1, figure_tree);
  criterion(2, "deep exact chain for lambda=(0,2,2)", 1, lampe_chain);
  criterion(3, "comparison chain with k=7 from (1,4,9)/(1,1,1)", 1, comparison_chain);
  criterion(4, "ratio limits on the 3-cyclic word at depth 60", 3, ratio_limits);
  criterion(5, "alternating word: k_j and q", 1, fibonacci_case);
  criterion(6, "tropical/Euclid correspondence on 1000 random cases", 10, tropical_equivalence);
  criterion(7, "tropical limit on a 50-point grid", 1, tropical_limit);
  criterion(8, "Markov and tropical chains from (2,1,1)", 1, small_example);
  criterion(9, "generalized cluster suite", 5, gca_suite);
  criterion(10, "Fibonacci identities and reciprocal bound", 1, fibonacci_identities);
  criterion(11, "uniqueness scan over {0,1,2,3}^3 up to 10^6", 300, uniqueness_grid);
  criterion(12, "approximate counterexample search", 10, approximate_search);
  criterion(13, "property suites with a fixed seed", 60, properties);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " of 13 failing" << std::endl;
  return failures ? 1 : 0;
}
