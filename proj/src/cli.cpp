#include "gmark/cli.hpp"

#include "gmark/conjecture.hpp"
#include "gmark/euclid.hpp"
#include "gmark/gca.hpp"
#include "gmark/markov.hpp"
#include "gmark/trop.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace gmark::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands = {"chain",   "euclid-chain", "gca-demo", "trop-verify",
                                            "trop-limit", "compare",   "q-estimate", "ratios",
                                            "q-table", "uniq-scan",    "search",   "fib-check"};

std::string describe(const std::string& name) {
  static const std::map<std::string, std::string> text = {
      {"chain", "Markov triples along a mutation word"},
      {"euclid-chain", "classical or generalized Euclid triples along a word"},
      {"gca-demo", "cluster mutations of the rank-3 generalized seed"},
      {"trop-verify", "tropical/Euclid correspondence check"},
      {"trop-limit", "tropical limit of the Laurent polynomial at a point"},
      {"compare", "comparison triples K/E along a word"},
      {"q-estimate", "limit quotient of log Markov over Euclid"},
      {"ratios", "ratio sequence k_j along a word"},
      {"q-table", "q for every reduced word of length n"},
      {"uniq-scan", "uniqueness scan of maxima up to a bound"},
      {"search", "Euclid-tree candidates for a target integer"},
      {"fib-check", "reciprocal Fibonacci sum and the comparison bound"}};
  return text.at(name);
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

json strings(const BigTriple& t) { return {t[0].get_str(), t[1].get_str(), t[2].get_str()}; }
json strings(const RatTriple& t) { return {t[0].get_str(), t[1].get_str(), t[2].get_str()}; }
json lambda_json(const LambdaParams& l) { return {l.l1, l.l2, l.l3}; }

Format format_or(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

/// Emits records either as JSON lines or as CSV rows under a fixed header.
class Emitter {
 public:
  Emitter(std::ostream& out, Format format, std::vector<std::string> header)
      : out_(out), format_(format), header_(std::move(header)) {}

  void record(const json& j, const std::vector<std::string>& row) {
    if (format_ == Format::Json) {
      out_ << j.dump() << '\n';
      return;
    }
    if (!header_done_) {
      write_row(header_);
      header_done_ = true;
    }
    write_row(row);
  }

 private:
  void write_row(const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out_ << ',';
      const bool quote = row[i].find(',') != std::string::npos;
      out_ << (quote ? "\"" + row[i] + "\"" : row[i]);
    }
    out_ << '\n';
  }

  std::ostream& out_;
  Format format_;
  std::vector<std::string> header_;
  bool header_done_ = false;
};

const std::vector<ReducedSeq>& need_seqs(const RunConfig& c) {
  if (c.seqs.empty()) throw UsageError("--seq: a sequence is required for " + c.command);
  return c.seqs;
}

int cmd_chain(const RunConfig& c, std::ostream& out) {
  const auto mode = c.mode.value_or(dynamics::Mode::Exact);
  Emitter em(out, format_or(c, Format::Json), {"seq", "depth", "letter", "x1", "x2", "x3"});
  for (const auto& w : need_seqs(c)) {
    if (mode == dynamics::Mode::Log) {
      const auto logs = dynamics::log_chain(w, c.lambda);
      for (std::size_t d = 0; d < logs.size(); ++d) {
        const int letter = d ? w[d - 1] : 0;
        json j{{"lambda", lambda_json(c.lambda)}, {"seq", w.prefix(d).to_string()}, {"depth", d},
               {"log_triple", {logs[d][0], logs[d][1], logs[d][2]}}};
        em.record(j, {w.to_string(), std::to_string(d), std::to_string(letter), num(logs[d][0]),
                      num(logs[d][1]), num(logs[d][2])});
      }
      continue;
    }
    const auto ch = markov::chain(w, c.lambda, {1, 1, 1}, c.digit_budget);
    for (std::size_t d = 0; d < ch.triples.size(); ++d) {
      const auto& t = ch.triples[d];
      const int letter = d ? w[d - 1] : 0;
      json j{{"lambda", lambda_json(c.lambda)}, {"seq", w.prefix(d).to_string()}, {"depth", d},
             {"triple", strings(t)}, {"max", markov::max_component(t).get_str()}};
      em.record(j, {w.to_string(), std::to_string(d), std::to_string(letter), t[0].get_str(),
                    t[1].get_str(), t[2].get_str()});
    }
  }
  return kOk;
}

int cmd_euclid_chain(const RunConfig& c, std::ostream& out) {
  euclid::EuclidParams p{c.k.value_or(0), c.init.value_or(RatTriple{1, 1, 1})};
  if (!euclid::is_k_initial(p.init, p.k)) {
    std::cerr << "warning: initial triple is not k-initial\n";
  }
  Emitter em(out, format_or(c, Format::Json), {"seq", "depth", "letter", "x1", "x2", "x3"});
  for (const auto& w : need_seqs(c)) {
    const auto ts = euclid::euclid_chain(w, p);
    for (std::size_t d = 0; d < ts.size(); ++d) {
      const int letter = d ? w[d - 1] : 0;
      json j{{"k", p.k.get_str()}, {"seq", w.prefix(d).to_string()}, {"depth", d}, {"triple", strings(ts[d])}};
      em.record(j, {w.to_string(), std::to_string(d), std::to_string(letter), ts[d][0].get_str(),
                    ts[d][1].get_str(), ts[d][2].get_str()});
    }
  }
  return kOk;
}

int cmd_gca_demo(const RunConfig& c, std::ostream& out) {
  auto s = gca::b2_seed();
  const std::size_t steps = c.depth.value_or(6);
  Emitter em(out, format_or(c, Format::Json), {"step", "direction", "x1", "x2"});
  auto emit = [&](std::size_t t, int dir) {
    json B = json::array();
    for (std::size_t i = 0; i < s.B.rank(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < s.B.rank(); ++j) row.push_back(s.B(i, j));
      B.push_back(row);
    }
    json Z = json::array();
    for (const auto& z : s.Z) Z.push_back(z.coeffs);
    json j{{"step", t}, {"direction", dir}, {"x", {s.x[0].get_str(), s.x[1].get_str()}}, {"B", B}, {"Z", Z}};
    em.record(j, {std::to_string(t), std::to_string(dir), s.x[0].get_str(), s.x[1].get_str()});
  };
  emit(0, 0);
  for (std::size_t t = 1; t <= steps; ++t) {
    const int dir = t % 2 ? 1 : 2;
    s = gca::mutate_seed(s, dir);
    emit(t, dir);
  }
  return kOk;
}

int cmd_trop_verify(const RunConfig& c, std::ostream& out) {
  std::vector<std::pair<LambdaParams, ReducedSeq>> cases;
  if (!c.seqs.empty()) {
    for (const auto& w : c.seqs) cases.emplace_back(c.lambda, w);
  } else {
    std::mt19937_64 rng(c.rng_seed);
    for (std::size_t r = 0; r < c.n; ++r) {
      auto pick = [&](unsigned hi) { return static_cast<unsigned>(rng() % (hi + 1)); };
      LambdaParams l{pick(3), pick(3), pick(3)};
      std::vector<int> w;
      const unsigned len = pick(12);
      while (w.size() < len) {
        int d = 1 + static_cast<int>(rng() % 3);
        if (w.empty() || w.back() != d) w.push_back(d);
      }
      cases.emplace_back(l, ReducedSeq::validate(w));
    }
  }
  Emitter em(out, format_or(c, Format::Json), {"lambda", "seq", "success", "seed_index", "divergence"});
  bool all_ok = true;
  for (const auto& [l, w] : cases) {
    const auto rep = trop::verify_correspondence(w, l);
    all_ok = all_ok && rep.success;
    json chainj = json::array();
    for (const auto& t : rep.trop_chain) chainj.push_back(t);
    json j{{"lambda", lambda_json(l)}, {"seq", w.to_string()}, {"success", rep.success},
           {"seed_index", rep.seed_index}, {"trop_chain", chainj}};
    if (rep.divergence) {
      j["divergence"] = *rep.divergence;
      j["detail"] = rep.detail;
    }
    em.record(j, {l.to_string(), w.to_string(), rep.success ? "true" : "false",
                  std::to_string(rep.seed_index), rep.divergence ? std::to_string(*rep.divergence) : ""});
  }
  return all_ok ? kOk : kDomainError;
}

int cmd_trop_limit(const RunConfig& c, std::ostream& out) {
  const auto r = trop::trop_limit_check(c.x, c.lambda, c.C);
  Emitter em(out, format_or(c, Format::Json), {"x1", "x2", "x3", "C", "numeric", "exact", "error"});
  json j{{"x", c.x}, {"lambda", lambda_json(c.lambda)}, {"C", c.C}, {"numeric", r.numeric},
         {"exact", r.exact}, {"error", std::abs(r.numeric - static_cast<double>(r.exact))}};
  em.record(j, {std::to_string(c.x[0]), std::to_string(c.x[1]), std::to_string(c.x[2]), num(c.C),
                num(r.numeric), std::to_string(r.exact), num(std::abs(r.numeric - static_cast<double>(r.exact)))});
  return kOk;
}

euclid::EuclidParams compare_k_side(const RunConfig& c) {
  return {c.k.value_or(7), c.init.value_or(RatTriple{1, 4, 9})};
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  const auto pK = compare_k_side(c);
  const euclid::EuclidParams pE{0, {1, 1, 1}};
  Emitter em(out, format_or(c, Format::Csv), {"depth", "w_i", "l", "m", "n", "spread", "min", "exact"});
  for (const auto& w : need_seqs(c)) {
    const auto steps = dynamics::run_comparison(w, pK, pE);
    for (std::size_t d = 0; d < steps.size(); ++d) {
      const auto& s = steps[d];
      const auto& cp = s.state.comp;
      json j{{"seq", w.to_string()}, {"depth", d}, {"w_i", s.letter}, {"comp", strings(cp)},
             {"euclid", strings(s.state.euclid)}, {"spread", s.spread.get_str()}, {"min", s.min.get_str()}};
      em.record(j, {std::to_string(d), std::to_string(s.letter), num(cp[0].get_d()), num(cp[1].get_d()),
                    num(cp[2].get_d()), num(s.spread.get_d()), num(s.min.get_d()),
                    cp[0].get_str() + ";" + cp[1].get_str() + ";" + cp[2].get_str()});
    }
  }
  return kOk;
}

int cmd_q_estimate(const RunConfig& c, std::ostream& out) {
  const auto mode = c.mode.value_or(dynamics::Mode::Log);
  Emitter em(out, format_or(c, Format::Json), {"seq", "q", "spread", "depth", "tail", "converged"});
  bool all_converged = true;
  for (const auto& w : need_seqs(c)) {
    const auto gen = dynamics::cyclic_extension(w);
    json j{{"seq", w.to_string()}, {"mode", mode == dynamics::Mode::Log ? "log" : "exact"}};
    double q = 0, spread = 0;
    std::size_t depth = 0;
    std::string tail;
    bool converged = false;
    if (mode == dynamics::Mode::Log) {
      const auto est = dynamics::estimate_q_log(gen, c.lambda, c.eps, c.depth.value_or(10000));
      q = est.q, spread = est.spread, depth = est.depth, tail = est.tail.to_string(), converged = est.converged;
      j["lambda"] = lambda_json(c.lambda);
      j["per_component"] = est.per_component;
      j["k_last"] = est.k_last;
      if (est.cesaro) j["cesaro"] = *est.cesaro;
    } else {
      const auto est = dynamics::estimate_q_euclid(gen, compare_k_side(c), {0, {1, 1, 1}}, c.eps,
                                                   c.depth.value_or(64));
      q = est.q, spread = est.spread_at_stop, depth = est.depth, tail = est.tail.to_string(),
      converged = est.converged;
      j["min"] = est.min_component;
      if (est.closed_form) j["closed_form"] = *est.closed_form;
    }
    j.update(json{{"q", q}, {"spread", spread}, {"depth", depth}, {"tail", tail}, {"converged", converged}});
    em.record(j, {w.to_string(), num(q), num(spread), std::to_string(depth), tail, converged ? "true" : "false"});
    all_converged = all_converged && converged;
  }
  return all_converged ? kOk : kDomainError;
}

int cmd_ratios(const RunConfig& c, std::ostream& out) {
  const auto mode = c.mode.value_or(dynamics::Mode::Exact);
  std::vector<std::string> header{"depth", "k_j"};
  if (mode == dynamics::Mode::Exact) header.push_back("exact");
  Emitter em(out, format_or(c, Format::Csv), header);
  for (const auto& w : need_seqs(c)) {
    const auto series = dynamics::ratio_series(w, c.lambda, mode, c.digit_budget);
    for (std::size_t d = 0; d < series.values.size(); ++d) {
      json j{{"seq", w.to_string()}, {"depth", d + 1}, {"k_j", series.values[d]}};
      std::vector<std::string> row{std::to_string(d + 1), num(series.values[d])};
      if (mode == dynamics::Mode::Exact) {
        j["exact"] = series.exact[d].get_str();
        row.push_back(series.exact[d].get_str());
      }
      em.record(j, row);
    }
  }
  return kOk;
}

int cmd_q_table(const RunConfig& c, std::ostream& out) {
  const auto table = conjecture::q_table(c.n, c.lambda, c.eps, c.depth.value_or(10000), c.threads);
  std::vector<std::size_t> class_of(table.rows.size());
  for (std::size_t k = 0; k < table.classes.size(); ++k)
    for (auto r : table.classes[k].rows) class_of[r] = k;
  Emitter em(out, format_or(c, Format::Csv), {"seq", "q", "spread", "depth"});
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    json j{{"seq", row.seq.to_string()}, {"q", row.q}, {"spread", row.spread}, {"depth", row.depth},
           {"converged", row.converged}, {"tail", row.tail.to_string()}, {"class", class_of[r]}};
    em.record(j, {row.seq.to_string(), num(row.q), num(row.spread), std::to_string(row.depth)});
  }
  return kOk;
}

int cmd_uniq_scan(const RunConfig& c, std::ostream& out) {
  const auto rep = conjecture::uniqueness_scan(c.lambda, c.bound, c.threads);
  if (format_or(c, Format::Json) == Format::Json) {
    out << rep.to_json() << '\n';
  } else {
    Emitter em(out, Format::Csv, {"a", "b1", "c1", "b2", "c2", "addr1", "addr2"});
    for (const auto& v : rep.violations) {
      em.record({}, {v.a.get_str(), v.first.b.get_str(), v.first.c.get_str(), v.second.b.get_str(),
                     v.second.c.get_str(), v.first.address.to_string(), v.second.address.to_string()});
    }
  }
  return rep.violations.empty() ? kOk : kViolations;
}

int cmd_search(const RunConfig& c, std::ostream& out) {
  const auto hits = conjecture::candidate_search(c.a, c.lambda, c.n, c.tol, c.eps, c.threads);
  Emitter em(out, format_or(c, Format::Json), {"seq", "e1", "e2", "e3", "x1", "x2", "x3", "matched", "q"});
  for (const auto& h : hits) {
    json j{{"a", c.a.get_str()}, {"seq", h.address.to_string()}, {"euclid", strings(h.euclid)},
           {"markov", strings(h.markov)}, {"matched", h.matched}, {"q", h.q}};
    em.record(j, {h.address.to_string(), h.euclid[0].get_str(), h.euclid[1].get_str(), h.euclid[2].get_str(),
                  h.markov[0].get_str(), h.markov[1].get_str(), h.markov[2].get_str(),
                  h.matched ? "true" : "false", num(h.q)});
  }
  return kOk;
}

int cmd_fib_check(const RunConfig& c, std::ostream& out) {
  const std::size_t terms = std::max<std::size_t>(c.n, 1);
  const auto s = euclid::fib_reciprocal_sum(terms);
  const Rational total = s.partial + s.tail_bound;
  const bool below = total < Rational(336, 100);
  Emitter em(out, format_or(c, Format::Json), {"n_terms", "F_n", "partial", "tail_bound", "upper", "below_3.36"});
  json j{{"n_terms", terms}, {"F_n", euclid::fibonacci(terms).get_str()}, {"partial", s.partial.get_d()},
         {"tail_bound", s.tail_bound.get_d()}, {"upper", total.get_d()}, {"below_3.36", below}};
  em.record(j, {std::to_string(terms), euclid::fibonacci(terms).get_str(), num(s.partial.get_d()),
                num(s.tail_bound.get_d()), num(total.get_d()), below ? "true" : "false"});
  return kOk;
}

int dispatch(const RunConfig& c, std::ostream& out) {
  const auto& cmd = c.command;
  if (cmd == "chain") return cmd_chain(c, out);
  if (cmd == "euclid-chain") return cmd_euclid_chain(c, out);
  if (cmd == "gca-demo") return cmd_gca_demo(c, out);
  if (cmd == "trop-verify") return cmd_trop_verify(c, out);
  if (cmd == "trop-limit") return cmd_trop_limit(c, out);
  if (cmd == "compare") return cmd_compare(c, out);
  if (cmd == "q-estimate") return cmd_q_estimate(c, out);
  if (cmd == "ratios") return cmd_ratios(c, out);
  if (cmd == "q-table") return cmd_q_table(c, out);
  if (cmd == "uniq-scan") return cmd_uniq_scan(c, out);
  if (cmd == "search") return cmd_search(c, out);
  if (cmd == "fib-check") return cmd_fib_check(c, out);
  throw UsageError("unknown command '" + cmd + "'");
}

template <class Fn>
auto as_flag(const std::string& flag, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

RatTriple parse_rat_triple(const std::string& text) {
  RatTriple t;
  std::stringstream ss(text);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 3) throw Error(Errc::BadInput, "expected three values");
    if (t[i].set_str(part, 10) != 0) throw Error(Errc::BadInput, "cannot parse '" + part + "'");
    t[i++].canonicalize();
  }
  if (i != 3) throw Error(Errc::BadInput, "expected three values");
  return t;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!(config.eps > 0)) throw UsageError("--eps: must be positive");
    if (!(config.tol > 0)) throw UsageError("--tol: must be positive");
    if (config.bound < 1) throw UsageError("--bound: must be at least 1");
    if (config.n < 1) throw UsageError("--n: must be at least 1");
    if (config.depth && *config.depth < 1) throw UsageError("--depth: must be at least 1");
    if (config.out.empty()) return dispatch(config, out);
    std::ofstream file(config.out);
    if (!file) throw UsageError("--out: cannot open '" + config.out + "'");
    return dispatch(config, file);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Generalized Markov triples, Euclid trees and their asymptotics"};
  app.require_subcommand(1);

  std::string lambda = "0,0,0", seq, seq_file, mode, format, bound, k, init, x = "0,0,0", a = "2";
  std::size_t depth = 0;
  RunConfig cfg;

  for (const auto& name : kCommands) {
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--lambda", lambda, "lambda as a,b,c");
    sub->add_option("--seq", seq, "comma-separated mutation word");
    sub->add_option("--seq-file", seq_file, "file with one sequence per line");
    sub->add_option("--mode", mode, "exact|log");
    sub->add_option("--eps", cfg.eps);
    sub->add_option("--tol", cfg.tol);
    sub->add_option("--bound", bound);
    sub->add_option("--depth", depth);
    sub->add_option("--n", cfg.n);
    sub->add_option("--digit-budget", cfg.digit_budget);
    sub->add_option("--format", format, "json|csv");
    sub->add_option("--out", cfg.out);
    sub->add_option("--rng-seed", cfg.rng_seed);
    sub->add_option("--threads", cfg.threads);
    sub->add_option("--k", k, "shift of the generalized Euclid tree");
    sub->add_option("--init", init, "initial triple of the generalized tree");
    sub->add_option("--x", x, "tropical triple");
    sub->add_option("--C", cfg.C);
    sub->add_option("--a", a, "target integer for search");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.lambda = as_flag("--lambda", [&] { return LambdaParams::parse(lambda); });
    if (!seq.empty()) cfg.seqs.push_back(as_flag("--seq", [&] { return ReducedSeq::parse(seq); }));
    if (!seq_file.empty()) {
      std::ifstream in(seq_file);
      if (!in) throw UsageError("--seq-file: cannot open '" + seq_file + "'");
      std::string line;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        cfg.seqs.push_back(as_flag("--seq-file", [&] { return ReducedSeq::parse(line); }));
      }
    }
    if (!mode.empty()) {
      if (mode == "exact") cfg.mode = dynamics::Mode::Exact;
      else if (mode == "log") cfg.mode = dynamics::Mode::Log;
      else throw UsageError("--mode: expected exact or log, got '" + mode + "'");
    }
    if (!format.empty()) {
      if (format == "json") cfg.format = Format::Json;
      else if (format == "csv") cfg.format = Format::Csv;
      else throw UsageError("--format: expected json or csv, got '" + format + "'");
    }
    if (!bound.empty() && cfg.bound.set_str(bound, 10) != 0) throw UsageError("--bound: not an integer");
    if (depth > 0) cfg.depth = depth;
    if (!k.empty()) {
      Rational kv;
      if (kv.set_str(k, 10) != 0) throw UsageError("--k: expected a nonnegative rational");
      kv.canonicalize();
      if (kv < 0) throw UsageError("--k: expected a nonnegative rational");
      cfg.k = kv;
    }
    if (!init.empty()) cfg.init = as_flag("--init", [&] { return parse_rat_triple(init); });
    auto xt = as_flag("--x", [&] { return parse_rat_triple(x); });
    for (int i = 0; i < 3; ++i) {
      if (xt[i].get_den() != 1 || !xt[i].get_num().fits_slong_p()) throw UsageError("--x: expected integers");
      cfg.x[i] = xt[i].get_num().get_si();
    }
    if (cfg.a.set_str(a, 10) != 0) throw UsageError("--a: not an integer");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace gmark::cli
