#include "gmark/gca.hpp"

#include <numeric>

namespace gmark::gca {

namespace {

long pos(long a) { return a > 0 ? a : 0; }

void check_k(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw Error(Errc::BadDirection, "direction " + std::to_string(k) + " outside rank " + std::to_string(n));
  }
}

Rational rat_pow(const Rational& base, long e) {
  Rational out = 1;
  Rational b = e >= 0 ? base : Rational(1) / base;
  for (long i = 0, n = e >= 0 ? e : -e; i < n; ++i) out *= b;
  return out;
}

}  // namespace

ExchangeMatrix::ExchangeMatrix(std::vector<std::vector<long>> rows) : n_(rows.size()) {
  if (n_ > kMaxRank) throw Error(Errc::CapExceeded, "rank above " + std::to_string(kMaxRank));
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(Errc::BadInput, "exchange matrix must be square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

bool ExchangePoly::valid() const {
  if (coeffs.empty() || coeffs.front() != 1 || coeffs.back() != 1) return false;
  return std::all_of(coeffs.begin(), coeffs.end(), [](long c) { return c >= 0; });
}

Rational ExchangePoly::evaluate(const Rational& u) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

void validate_seed(const GenSeed& s) {
  const auto n = s.B.rank();
  if (s.Z.size() != n || s.R.size() != n || s.x.size() != n) {
    throw Error(Errc::BadInput, "seed components disagree on rank");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.Z[i].valid()) throw Error(Errc::BadInput, "exchange polynomial " + std::to_string(i + 1) + " invalid");
    if (s.R[i] < 1 || static_cast<std::size_t>(s.R[i]) != s.Z[i].degree()) {
      throw Error(Errc::BadInput, "degree of Z_" + std::to_string(i + 1) + " differs from r_" + std::to_string(i + 1));
    }
    if (s.x[i] <= 0) throw Error(Errc::BadInput, "cluster entries must be positive");
  }
  if (!is_skew_symmetrizable(s.B)) throw Error(Errc::BadInput, "exchange matrix not skew-symmetrizable");
}

ExchangeMatrix mutate_matrix(const ExchangeMatrix& B, const std::vector<long>& R, int k) {
  const auto n = B.rank();
  check_k(n, k);
  if (R.size() != n) throw Error(Errc::BadInput, "degree vector has wrong length");
  const std::size_t kk = static_cast<std::size_t>(k - 1);
  const long rk = R[kk];
  ExchangeMatrix out = B;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == kk || j == kk) {
        out(i, j) = -B(i, j);
      } else {
        out(i, j) = B(i, j) + rk * (pos(B(i, kk)) * B(kk, j) + B(i, kk) * pos(-B(kk, j)));
      }
    }
  }
  return out;
}

ExchangePoly mutate_poly(const ExchangePoly& Z, bool k_is_target) {
  if (!k_is_target) return Z;
  return {{Z.coeffs.rbegin(), Z.coeffs.rend()}};
}

GenSeed mutate_seed(const GenSeed& s, int k) {
  const auto n = s.B.rank();
  check_k(n, k);
  const std::size_t kk = static_cast<std::size_t>(k - 1);
  const long rk = s.R[kk];

  Rational negative_part = 1;
  Rational argument = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const long b = s.B(i, kk);
    negative_part *= rat_pow(s.x[i], pos(-b));
    argument *= rat_pow(s.x[i], b);
  }

  GenSeed out = s;
  out.x[kk] = rat_pow(negative_part, rk) * s.Z[kk].evaluate(argument) / s.x[kk];
  out.B = mutate_matrix(s.B, s.R, k);
  for (std::size_t i = 0; i < n; ++i) out.Z[i] = mutate_poly(s.Z[i], i == kk);
  return out;
}

ExchangeMatrix times_degrees(const ExchangeMatrix& B, const std::vector<long>& R) {
  ExchangeMatrix out = B;
  for (std::size_t i = 0; i < B.rank(); ++i)
    for (std::size_t j = 0; j < B.rank(); ++j) out(i, j) = B(i, j) * R[j];
  return out;
}

bool check_compatibility(const ExchangeMatrix& B, const std::vector<long>& R, int k) {
  const auto lhs = times_degrees(mutate_matrix(B, R, k), R);
  const auto rhs = mutate_matrix(times_degrees(B, R), std::vector<long>(B.rank(), 1), k);
  return lhs == rhs;
}

std::optional<std::vector<long>> is_skew_symmetrizable(const ExchangeMatrix& B) {
  const auto n = B.rank();
  for (std::size_t i = 0; i < n; ++i) {
    if (B(i, i) != 0) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      const long a = B(i, j), b = B(j, i);
      if ((a == 0) != (b == 0)) return std::nullopt;
      if (a != 0 && (a > 0) == (b > 0)) return std::nullopt;
    }
  }

  // d_i b_ij = -d_j b_ji fixes d_j / d_i along every nonzero entry.
  std::vector<Rational> d(n, 0);
  std::vector<long> out(n, 1);
  for (std::size_t root = 0; root < n; ++root) {
    if (d[root] != 0) continue;
    d[root] = 1;
    std::vector<std::size_t> component{root};
    for (std::size_t head = 0; head < component.size(); ++head) {
      const auto i = component[head];
      for (std::size_t j = 0; j < n; ++j) {
        if (B(i, j) == 0) continue;
        Rational dj = d[i] * B(i, j) / Rational(-B(j, i));
        if (d[j] == 0) {
          d[j] = dj;
          component.push_back(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
    BigInt lcm_den = 1;
    for (auto i : component) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d[i].get_den_mpz_t());
    BigInt g = 0;
    for (auto i : component) {
      BigInt v = d[i].get_num() * (lcm_den / d[i].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    for (auto i : component) {
      BigInt v = d[i].get_num() * (lcm_den / d[i].get_den()) / g;
      if (!v.fits_slong_p()) return std::nullopt;
      out[i] = v.get_si();
    }
  }
  return out;
}

GenSeed b2_seed(Rational x1, Rational x2) {
  GenSeed s;
  s.B = ExchangeMatrix({{0, -1}, {1, 0}});
  s.Z = {{{1, 1, 1}}, {{1, 1}}};
  s.R = {2, 1};
  s.x = {std::move(x1), std::move(x2)};
  return s;
}

GenSeed markov_seed(const LambdaParams& lambda, const RatTriple& x) {
  GenSeed s;
  s.B = ExchangeMatrix({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
  s.Z = {{{1, static_cast<long>(lambda.l1), 1}},
         {{1, static_cast<long>(lambda.l2), 1}},
         {{1, static_cast<long>(lambda.l3), 1}}};
  s.R = {2, 2, 2};
  s.x = {x[0], x[1], x[2]};
  return s;
}

}  // namespace gmark::gca
