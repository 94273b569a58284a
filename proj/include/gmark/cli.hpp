// Command-line front end: a typed run configuration and its dispatcher.
#pragma once

#include "gmark/core.hpp"
#include "gmark/dynamics.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gmark::cli {

enum class Format { Json, Csv };

struct RunConfig {
  std::string command;
  LambdaParams lambda;
  /// Sequences to process; several when read from --seq-file.
  std::vector<ReducedSeq> seqs;
  std::optional<dynamics::Mode> mode;
  double eps = 1e-9;
  double tol = 0.05;
  BigInt bound = 25;
  std::optional<std::size_t> depth;
  std::size_t n = 6;
  std::size_t digit_budget = 200000;
  std::optional<Format> format;
  std::string out;
  std::uint64_t rng_seed = 1;
  unsigned threads = 0;

  // Command-specific inputs.
  std::optional<Rational> k;
  std::optional<RatTriple> init;
  std::array<std::int64_t, 3> x{0, 0, 0};
  double C = 1e4;
  BigInt a = 2;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kViolations = 3;

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, char** argv);

}  // namespace gmark::cli
