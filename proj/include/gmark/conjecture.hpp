// Uniqueness scans, q tables and the approximate candidate search.
#pragma once

#include "gmark/core.hpp"
#include "gmark/dynamics.hpp"

#include <map>
#include <string>
#include <vector>

namespace gmark::conjecture {

struct SortedSolution {
  BigInt b, c;
  ReducedSeq address;
};

struct Violation {
  BigInt a;
  SortedSolution first, second;
};

struct ScanReport {
  LambdaParams lambda;
  BigInt bound;
  std::size_t solutions = 0;
  /// Largest component -> every solution with that maximum, tail sorted descending.
  std::map<BigInt, std::vector<SortedSolution>> groups;
  std::vector<Violation> violations;

  std::string to_json() const;
};

ScanReport uniqueness_scan(const LambdaParams& lambda, const BigInt& bound, unsigned threads = 1);

inline constexpr std::size_t kMaxTableLength = 12;

struct QRow {
  ReducedSeq seq;
  double q = 0;
  double spread = 0;
  std::size_t depth = 0;
  bool converged = false;
  TailClass tail;
};

struct QClass {
  double q = 0;
  std::vector<std::size_t> rows;
};

struct QTable {
  std::size_t n = 0;
  std::vector<QRow> rows;  // lexicographic by seq
  std::vector<QClass> classes;  // ascending q
};

QTable q_table(std::size_t n, const LambdaParams& lambda, double eps = 1e-9,
               std::size_t max_depth = 10000, unsigned threads = 1);

struct Candidate {
  ReducedSeq address;
  BigTriple euclid;
  BigTriple markov;
  bool matched = false;
  /// The q value whose target produced this hit first.
  double q = 0;
};

std::vector<Candidate> candidate_search(const BigInt& a, const LambdaParams& lambda, std::size_t n,
                                        double tol = 0.05, double eps = 1e-9,
                                        unsigned threads = 1);

}  // namespace gmark::conjecture
