#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sszego/rational.hpp"

namespace sszego {

// Dense univariate polynomial over Q, coefficients in ascending degree.
// Canonical form has no trailing zero coefficients; the zero polynomial has
// an empty coefficient vector and no degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, std::size_t degree);
  // x - root
  static Polynomial linear_factor(const Rational& root);
  // Text form: comma separated ascending coefficients, e.g. "-1,0,1".
  static Polynomial parse(std::string_view text);

  bool is_zero() const { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const;
  // Degree of a nonzero polynomial; throws PreconditionError on zero.
  std::size_t deg() const;
  std::span<const Rational> coeffs() const { return coeffs_; }
  // Coefficient of x^i, zero beyond the degree.
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial monic() const;
  // Integer polynomial with coprime coefficients, positive multiple of *this.
  Polynomial primitive() const;
  // p(-x)
  Polynomial reflect() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivRem {
  Polynomial quotient;
  Polynomial remainder;
};

// Throws DivisionByZeroError when d is zero.
DivRem divrem(const Polynomial& p, const Polynomial& d);
// Quotient of an exact division; throws InvariantViolation if a remainder is left.
Polynomial exact_div(const Polynomial& p, const Polynomial& d);
bool divides(const Polynomial& d, const Polynomial& p);

// Monic gcd. gcd(0, 0) is rejected with PreconditionError.
Polynomial gcd(const Polynomial& p, const Polynomial& q);

Polynomial derivative(const Polynomial& p, std::size_t order = 1);
Polynomial power(const Polynomial& p, std::size_t exponent);

// x^d p(1/x); requires d >= deg p.
Polynomial reciprocal_transform(const Polynomial& p, std::size_t d);

enum class ReciprocalSign { plus, minus, none };
ReciprocalSign is_self_reciprocal(const Polynomial& p, std::size_t d);

// Monic square-free part p / gcd(p, p').
Polynomial square_free_part(const Polynomial& p);

// Yun decomposition: p = lc * prod factors[i].first ^ factors[i].second,
// each factor monic, square-free and pairwise coprime.
std::vector<std::pair<Polynomial, std::size_t>> square_free_decomposition(const Polynomial& p);

}  // namespace sszego
