#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sszego/polynomial.hpp"
#include "sszego/rational.hpp"

namespace testing {

using sszego::Polynomial;
using sszego::Rational;

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Polynomial P(const char* text) { return Polynomial::parse(text); }

// Seeded generator for property tests; modulo reduction of raw output keeps
// sequences identical across standard libraries.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : g_(seed) {}
  long integer(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational(long num = 20, long den = 9) { return q(integer(-num, num), integer(1, den)); }
  Rational nonzero(long num = 20, long den = 9) {
    Rational r;
    do r = rational(num, den);
    while (r == 0);
    return r;
  }
  Polynomial poly(std::size_t degree, long num = 20, long den = 9) {
    std::vector<Rational> c(degree + 1);
    for (auto& v : c) v = rational(num, den);
    c[degree] = nonzero(num, den);
    return Polynomial(std::move(c));
  }
  // Product of (x - r) over distinct random rationals.
  Polynomial rooted(std::size_t count, std::vector<Rational>* roots_out = nullptr, long num = 30, long den = 7) {
    std::vector<Rational> roots;
    while (roots.size() < count) {
      const Rational r = rational(num, den);
      bool dup = false;
      for (const auto& s : roots) dup = dup || s == r;
      if (!dup) roots.push_back(r);
    }
    Polynomial p = Polynomial::constant(1);
    for (const auto& r : roots) p = p * Polynomial::linear_factor(r);
    if (roots_out) *roots_out = roots;
    return p;
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace testing
