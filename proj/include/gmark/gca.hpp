// Generalized cluster seeds with numeric (exact rational) clusters.
#pragma once

#include "gmark/core.hpp"

#include <optional>
#include <vector>

namespace gmark::gca {

inline constexpr std::size_t kMaxRank = 16;

/// Square integer exchange matrix, row-major.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  explicit ExchangeMatrix(std::vector<std::vector<long>> rows);

  std::size_t rank() const { return n_; }
  long operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  long& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<long> data_;
};

/// Coefficients z_0..z_r of an exchange polynomial, constant term first.
struct ExchangePoly {
  std::vector<long> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  /// z_0 = z_r = 1 and every coefficient nonnegative.
  bool valid() const;
  Rational evaluate(const Rational& u) const;

  friend bool operator==(const ExchangePoly&, const ExchangePoly&) = default;
};

struct GenSeed {
  ExchangeMatrix B;
  std::vector<ExchangePoly> Z;
  std::vector<long> R;
  std::vector<Rational> x;

  friend bool operator==(const GenSeed&, const GenSeed&) = default;
};

/// Throws BadInput when the seed breaks a GenSeed invariant.
void validate_seed(const GenSeed& s);

ExchangeMatrix mutate_matrix(const ExchangeMatrix& B, const std::vector<long>& R, int k);
ExchangePoly mutate_poly(const ExchangePoly& Z, bool k_is_target);
GenSeed mutate_seed(const GenSeed& s, int k);

/// Entrywise B*diag(R).
ExchangeMatrix times_degrees(const ExchangeMatrix& B, const std::vector<long>& R);
/// mu_k(B) R == mu*_k(B R), with mu* the ordinary matrix mutation.
bool check_compatibility(const ExchangeMatrix& B, const std::vector<long>& R, int k);

/// Least coprime positive diagonal D with D*B skew-symmetric (each connected
/// block of the nonzero pattern normalized separately), or nullopt.
std::optional<std::vector<long>> is_skew_symmetrizable(const ExchangeMatrix& B);

/// The rank-2 seed with B = [[0,-1],[1,0]], Z = (1+u+u^2, 1+u), R = (2,1).
GenSeed b2_seed(Rational x1 = 1, Rational x2 = 1);
/// The rank-3 seed whose cluster mutations are the generalized Markov moves.
GenSeed markov_seed(const LambdaParams& lambda, const RatTriple& x = {1, 1, 1});

}  // namespace gmark::gca
