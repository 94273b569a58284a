#include "gmark/euclid.hpp"

namespace gmark::euclid {

bool is_k_initial(const RatTriple& t, const Rational& k) {
  for (int i = 1; i <= 3; ++i) {
    auto [j, l] = others0(i);
    if (t[i - 1] == t[j] + t[l] + k) return false;
  }
  return true;
}

RatTriple euclid_mutate(const RatTriple& t, int i, const Rational& k) {
  check_direction(i);
  auto [j, l] = others0(i);
  RatTriple out = t;
  out[i - 1] = k + t[j] + t[l];
  return out;
}

std::vector<RatTriple> euclid_chain(const ReducedSeq& w, const EuclidParams& p) {
  std::vector<RatTriple> out{p.init};
  out.reserve(w.size() + 1);
  for (int d : w) out.push_back(euclid_mutate(out.back(), d, p.k));
  return out;
}

std::pair<RatTriple, RatTriple> tree_iso(const ReducedSeq& w, const EuclidParams& pE,
                                         const EuclidParams& pK) {
  return {euclid_chain(w, pE).back(), euclid_chain(w, pK).back()};
}

BigInt fibonacci(unsigned long n) {
  BigInt out;
  mpz_fib_ui(out.get_mpz_t(), n);
  return out;
}

Rational inverse_phi_upper() {
  // Consecutive Fibonacci ratios straddle 1/phi; keep whichever lies above.
  for (unsigned long n = 60; n < 64; ++n) {
    Rational r(fibonacci(n), fibonacci(n + 1));
    r.canonicalize();
    if (r * r + r > 1) return r;
  }
  throw Error(Errc::BadInput, "no upper approximation found");
}

ReciprocalSum fib_reciprocal_sum(unsigned long n_terms) {
  if (n_terms < 1) throw Error(Errc::BadInput, "n_terms must be positive");
  ReciprocalSum out{0, 0};
  BigInt a = 1, b = 1;  // F_n, F_{n+1}
  for (unsigned long n = 1; n <= n_terms; ++n) {
    out.partial += Rational(1, a);
    BigInt next = a + b;
    a = b;
    b = next;
  }
  out.partial.canonicalize();
  // 1/F_m <= phi^(2-m) <= rho^(m-2); summing m > n_terms gives rho^(n-1)/(1-rho).
  const Rational rho = inverse_phi_upper();
  Rational power = 1;
  for (unsigned long i = 1; i < n_terms; ++i) power *= rho;
  out.tail_bound = power / (1 - rho);
  out.tail_bound.canonicalize();
  return out;
}

Rational comparison_upper_bound(const Rational& base, const Rational& k) {
  if (k < 0) throw Error(Errc::BadInput, "k must be nonnegative");
  if (k == 0) return base;
  auto s = fib_reciprocal_sum(kBoundTerms);
  Rational out = base + 2 * k * (s.partial + s.tail_bound);
  out.canonicalize();
  return out;
}

}  // namespace gmark::euclid
