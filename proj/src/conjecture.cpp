#include "gmark/conjecture.hpp"

#include "gmark/markov.hpp"
#include "gmark/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace gmark::conjecture {

ScanReport uniqueness_scan(const LambdaParams& lambda, const BigInt& bound, unsigned threads) {
  ScanReport rep;
  rep.lambda = lambda;
  rep.bound = bound;
  const auto entries = markov::enumerate_tree(lambda, bound, threads);
  rep.solutions = entries.size();
  for (const auto& e : entries) {
    BigTriple t = e.triple;
    std::sort(t.begin(), t.end(), std::greater<>());
    rep.groups[t[0]].push_back({t[1], t[2], e.address});
  }
  for (const auto& [a, members] : rep.groups) {
    for (std::size_t m = 1; m < members.size(); ++m) {
      if (members[m].b != members[0].b || members[m].c != members[0].c) {
        rep.violations.push_back({a, members[0], members[m]});
      }
    }
  }
  return rep;
}

std::string ScanReport::to_json() const {
  nlohmann::json j;
  j["lambda"] = {lambda.l1, lambda.l2, lambda.l3};
  j["bound"] = bound.get_str();
  j["solutions"] = solutions;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations) {
    j["violations"].push_back({{"a", v.a.get_str()},
                               {"pair1", {v.first.b.get_str(), v.first.c.get_str()}},
                               {"pair2", {v.second.b.get_str(), v.second.c.get_str()}},
                               {"addr1", v.first.address.to_string()},
                               {"addr2", v.second.address.to_string()}});
  }
  return j.dump();
}

QTable q_table(std::size_t n, const LambdaParams& lambda, double eps, std::size_t max_depth,
               unsigned threads) {
  if (n < 1) throw Error(Errc::BadInput, "length must be at least 1");
  if (n > kMaxTableLength) {
    throw Error(Errc::CapExceeded, "length " + std::to_string(n) + " exceeds " + std::to_string(kMaxTableLength));
  }
  QTable table;
  table.n = n;
  const auto words = enumerate_reduced(n);
  table.rows = parallel_map<QRow>(words.size(), resolve_threads(threads), [&](std::size_t r) {
    auto est = dynamics::estimate_q_log(dynamics::cyclic_extension(words[r]), lambda, eps, max_depth);
    return QRow{words[r], est.q, est.spread, est.depth, est.converged, est.tail};
  });

  std::vector<std::size_t> order(table.rows.size());
  for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return table.rows[x].q < table.rows[y].q; });
  for (auto r : order) {
    if (table.classes.empty() || table.rows[r].q - table.classes.back().q >= eps) {
      table.classes.push_back({table.rows[r].q, {}});
    }
    table.classes.back().rows.push_back(r);
  }
  return table;
}

namespace {

struct Hit {
  ReducedSeq address;
  BigTriple euclid;
};

void walk(const BigTriple& t, const ReducedSeq& address, double lo, double hi, std::vector<Hit>& hits) {
  for (int d = 1; d <= 3; ++d) {
    if (!address.empty() && address[address.size() - 1] == d) continue;
    auto [j, l] = others0(d);
    BigTriple next = t;
    next[d - 1] = t[j] + t[l];
    const double created = next[d - 1].get_d();
    if (created > hi) continue;  // every descendant only grows
    auto child = address.extended(d);
    if (created >= lo) hits.push_back({child, next});
    walk(next, child, lo, hi, hits);
  }
}

}  // namespace

std::vector<Candidate> candidate_search(const BigInt& a, const LambdaParams& lambda, std::size_t n,
                                        double tol, double eps, unsigned threads) {
  if (a < 2) throw Error(Errc::BadInput, "a must be at least 2");
  if (!(tol > 0)) throw Error(Errc::BadInput, "tol must be positive");
  const auto table = q_table(n, lambda, eps, 10000, threads);
  const double log_a = log_of(a);

  std::vector<double> qs;
  for (const auto& c : table.classes)
    if (c.q > 0) qs.push_back(c.q);

  auto per_q = parallel_map<std::vector<Hit>>(qs.size(), resolve_threads(threads), [&](std::size_t r) {
    const double target = log_a / qs[r];
    std::vector<Hit> hits;
    const double lo = (1 - tol) * target, hi = (1 + tol) * target;
    if (lo <= 1 && 1 <= hi) hits.push_back({ReducedSeq{}, {1, 1, 1}});
    walk({1, 1, 1}, ReducedSeq{}, lo, hi, hits);
    return hits;
  });

  std::vector<Candidate> out;
  std::set<ReducedSeq> seen;
  for (std::size_t r = 0; r < qs.size(); ++r) {
    for (auto& h : per_q[r]) {
      if (!seen.insert(h.address).second) continue;
      Candidate c{h.address, h.euclid, markov::chain(h.address, lambda).back(), false, qs[r]};
      c.matched = std::find(c.markov.begin(), c.markov.end(), a) != c.markov.end();
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
    if (x.address.size() != y.address.size()) return x.address.size() < y.address.size();
    return x.address < y.address;
  });
  return out;
}

}  // namespace gmark::conjecture
