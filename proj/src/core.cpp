#include "gmark/core.hpp"
#include "gmark/parallel.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace gmark {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotReduced: return "NotReduced";
    case Errc::BadAlphabet: return "BadAlphabet";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::WindowTooLarge: return "WindowTooLarge";
    case Errc::BadDirection: return "BadDirection";
    case Errc::NonIntegerResult: return "NonIntegerResult";
    case Errc::DigitBudgetExceeded: return "DigitBudgetExceeded";
    case Errc::NotASolution: return "NotASolution";
    case Errc::NoStrictArgmax: return "NoStrictArgmax";
    case Errc::ArgmaxMutation: return "ArgmaxMutation";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::BadInput: return "BadInput";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

DigitBudgetExceeded::DigitBudgetExceeded(std::size_t last_safe_depth, std::size_t budget)
    : Error(Errc::DigitBudgetExceeded,
            "component exceeds " + std::to_string(budget) +
                " decimal digits; last safe depth " + std::to_string(last_safe_depth)),
      last_safe_depth_(last_safe_depth) {}

void check_direction(int dir) {
  if (dir < 1 || dir > 3) {
    throw Error(Errc::BadDirection, "direction " + std::to_string(dir) + " not in {1,2,3}");
  }
}

std::array<int, 2> others0(int dir) {
  switch (dir) {
    case 1: return {1, 2};
    case 2: return {0, 2};
    case 3: return {0, 1};
  }
  check_direction(dir);
  return {0, 0};
}

unsigned LambdaParams::at(int dir) const {
  check_direction(dir);
  return dir == 1 ? l1 : dir == 2 ? l2 : l3;
}

std::string LambdaParams::to_string() const {
  return std::to_string(l1) + "," + std::to_string(l2) + "," + std::to_string(l3);
}

namespace {

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  if (text.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

long parse_long(std::string_view s, std::string_view what) {
  s = trim(s);
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::BadInput, "cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

LambdaParams LambdaParams::parse(std::string_view text) {
  auto parts = split_commas(text);
  if (parts.size() != 3) {
    throw Error(Errc::BadInput, "lambda needs three comma-separated values");
  }
  std::array<unsigned, 3> v{};
  for (int i = 0; i < 3; ++i) {
    long x = parse_long(parts[i], "lambda");
    if (x < 0) throw Error(Errc::BadInput, "lambda entries must be nonnegative");
    v[i] = static_cast<unsigned>(x);
  }
  return {v[0], v[1], v[2]};
}

ReducedSeq ReducedSeq::validate(std::span<const int> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 1 || entries[i] > 3) {
      throw Error(Errc::BadAlphabet, "entry " + std::to_string(entries[i]) + " at position " +
                                         std::to_string(i) + " not in {1,2,3}");
    }
    if (i > 0 && entries[i] == entries[i - 1]) {
      throw Error(Errc::NotReduced, "repeated letter at position " + std::to_string(i));
    }
  }
  return ReducedSeq(std::vector<int>(entries.begin(), entries.end()));
}

ReducedSeq ReducedSeq::validate(std::initializer_list<int> entries) {
  return validate(std::span<const int>(entries.begin(), entries.size()));
}

ReducedSeq ReducedSeq::parse(std::string_view text) {
  text = trim(text);
  std::vector<int> entries;
  for (auto part : split_commas(text)) {
    entries.push_back(static_cast<int>(parse_long(part, "sequence entry")));
  }
  return validate(entries);
}

ReducedSeq ReducedSeq::extended(int dir) const {
  std::vector<int> next = entries_;
  next.push_back(dir);
  if (dir < 1 || dir > 3) throw Error(Errc::BadAlphabet, "entry not in {1,2,3}");
  if (!entries_.empty() && entries_.back() == dir) {
    throw Error(Errc::NotReduced, "appending repeats the last letter");
  }
  return ReducedSeq(std::move(next));
}

ReducedSeq ReducedSeq::prefix(std::size_t n) const {
  n = std::min(n, entries_.size());
  return ReducedSeq(std::vector<int>(entries_.begin(), entries_.begin() + static_cast<long>(n)));
}

std::string ReducedSeq::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += static_cast<char>('0' + entries_[i]);
  }
  return out;
}

ReducedSeq validate_reduced(std::span<const int> entries) { return ReducedSeq::validate(entries); }

std::vector<ReducedSeq> enumerate_reduced(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(Errc::CapExceeded, "length " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  std::vector<std::vector<int>> words{{}};
  for (std::size_t len = 0; len < n; ++len) {
    std::vector<std::vector<int>> next;
    next.reserve(words.size() * 3);
    for (const auto& w : words) {
      for (int d = 1; d <= 3; ++d) {
        if (!w.empty() && w.back() == d) continue;
        auto ext = w;
        ext.push_back(d);
        next.push_back(std::move(ext));
      }
    }
    words = std::move(next);
  }
  std::vector<ReducedSeq> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(ReducedSeq::validate(w));
  return out;
}

std::string TailClass::to_string() const {
  std::string out = all_three() ? "AllThree" : "TwoAlternating(" + std::to_string(absent) + ")";
  if (three_cyclic) out += "+IsThreeCyclic";
  return out;
}

TailClass classify_tail(const ReducedSeq& w, std::size_t window) {
  if (window > w.size()) {
    throw Error(Errc::WindowTooLarge, "window " + std::to_string(window) + " exceeds length " +
                                          std::to_string(w.size()));
  }
  if (window < 2) throw Error(Errc::BadInput, "window must be at least 2");
  const std::size_t start = w.size() - window;
  std::array<bool, 3> seen{};
  for (std::size_t i = start; i < w.size(); ++i) seen[w[i] - 1] = true;

  TailClass out;
  if (seen[0] && seen[1] && seen[2]) {
    out.kind = TailClass::Kind::AllThree;
    out.three_cyclic = window >= 3;
    for (std::size_t i = start; i + 2 < w.size() && out.three_cyclic; ++i) {
      out.three_cyclic = w[i] != w[i + 2];
    }
  } else {
    out.kind = TailClass::Kind::TwoAlternating;
    for (int d = 0; d < 3; ++d) {
      if (!seen[d]) out.absent = d + 1;
    }
  }
  return out;
}

double log_of(const BigInt& x) {
  if (sgn(x) <= 0) throw Error(Errc::BadInput, "log of nonpositive integer");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

BigTriple parse_big_triple(std::string_view text) {
  auto parts = split_commas(trim(text));
  if (parts.size() != 3) throw Error(Errc::BadInput, "triple needs three comma-separated values");
  BigTriple t;
  for (int i = 0; i < 3; ++i) {
    auto s = std::string(trim(parts[i]));
    if (s.empty() || t[i].set_str(s, 10) != 0) {
      throw Error(Errc::BadInput, "cannot parse triple component '" + s + "'");
    }
    if (t[i] < 1) throw Error(Errc::BadInput, "triple components must be positive");
  }
  return t;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GMARK_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace gmark
