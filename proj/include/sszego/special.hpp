#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sszego/polynomial.hpp"
#include "sszego/roots.hpp"

namespace sszego {

// Monic G_n with second and third coefficients 0 and -1 that is divisible by
// its second derivative: n(n-1) G_n = (x^2 - a^2) G_n''.
struct GegenbauerResult {
  std::size_t n = 0;
  Polynomial poly;
  Rational a_sq;  // (4n - 6) / (n(n - 1)); +-a are the extreme roots
};

GegenbauerResult gegenbauer(std::size_t n);

// n(n-1) G == (x^2 - a^2) G''
bool gegenbauer_identity_holds(const GegenbauerResult& g);

// k-fold differentiated identity:
// n(n-1) G^(k) == (x^2 - a^2) G^(k+2) + 2k x G^(k+1) + k(k-1) G^(k)
bool gegenbauer_leibniz_holds(const GegenbauerResult& g, std::size_t k);

struct GegenbauerCheck {
  InterlaceResult interlace;  // zeta_i (negative roots of G^(k)) vs mu_i (of G^(k+2))
  bool leibniz_identity = false;
  // sign G^(k+2)(zeta_i) == -sign G^(k+1)(zeta_i), both nonzero, for every i
  bool opposite_signs = false;
  bool extreme_roots_bounded = false;  // no root of G_n outside [-a, a]
};

// Certifies mu_i in (zeta_i, zeta_{i+1}) for 0 <= k <= n-4.
GegenbauerCheck gegenbauer_interlace_check(std::size_t n, std::size_t k,
                                           const Rational& witness_width = default_witness_width());

// N_n = sum_{i=1}^n C(n,i) C(n,i-1)/n x^i
Polynomial narayana(std::size_t n);

// (n+1) N_n == (2n-1)(1+x) N_{n-1} - (n-2)(x-1)^2 N_{n-2}, n >= 3
bool narayana_recurrence_check(std::size_t n);

struct NarayanaInterlacing {
  InterlaceResult first;   // N_{n-1} vs N_n
  InterlaceResult second;  // N_{n-2} vs N_n
};

// Narayana roots are negative; both checks run on N(-x)/x so that the root
// sets are positive.
NarayanaInterlacing narayana_interlacing(std::size_t n, const Rational& witness_width = default_witness_width());

struct QNarayanaDistance {
  std::size_t n = 0;
  Rational distance;  // sup-norm of coefficient differences
  double approx = 0;
};

// Distance between +-x Q_j(-x) (sign chosen to make it monic) and N_{j+1}
// for each n in `ns`; each n must be at least j + 3.
std::vector<QNarayanaDistance> q_to_narayana_distance(std::size_t j, std::span<const std::size_t> ns);

}  // namespace sszego
