#include "sszego/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "sszego/errors.hpp"

namespace sszego {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_factor(const Rational& root) { return Polynomial({Rational(-root), Rational(1)}); }

Polynomial Polynomial::parse(std::string_view text) {
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  bool any = false;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) any = true;
  }
  if (!any) throw ParseError("empty polynomial text");
  while (true) {
    const auto comma = text.find(',', start);
    coeffs.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Polynomial(std::move(coeffs));
}

std::optional<std::size_t> Polynomial::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

std::size_t Polynomial::deg() const {
  if (coeffs_.empty()) throw PreconditionError("degree of the zero polynomial");
  return coeffs_.size() - 1;
}

Rational Polynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

const Rational& Polynomial::leading() const {
  if (coeffs_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int Polynomial::sign_at(const Rational& x) const { return sgn((*this)(x)); }

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / leading());
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return {};
  Integer den_lcm = 1;
  for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& c : coeffs_) {
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  return *this * fraction(den_lcm, num_gcd);
}

Polynomial Polynomial::reflect() const {
  Polynomial out = *this;
  for (std::size_t i = 1; i < out.coeffs_.size(); i += 2) out.coeffs_[i] = -out.coeffs_[i];
  return out;
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += sszego::to_string(coeffs_[i]);
  }
  return out;
}

DivRem divrem(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  if (p.is_zero() || p.deg() < d.deg()) return {Polynomial(), p};
  const std::size_t dd = d.deg();
  std::vector<Rational> rem(p.coeffs().begin(), p.coeffs().end());
  std::vector<Rational> quo(p.deg() - dd + 1);
  const Rational inv_lead = 1 / d.leading();
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Rational factor = rem[k + dd] * inv_lead;
    quo[k] = factor;
    if (factor == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) rem[k + i] -= factor * d.coeffs()[i];
  }
  rem.resize(dd);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial exact_div(const Polynomial& p, const Polynomial& d) {
  auto [q, r] = divrem(p, d);
  if (!r.is_zero()) throw InvariantViolation("inexact division: remainder " + r.to_string());
  return q;
}

bool divides(const Polynomial& d, const Polynomial& p) { return divrem(p, d).remainder.is_zero(); }

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() && q.is_zero()) throw PreconditionError("gcd(0, 0) is undefined");
  Polynomial a = p.primitive();
  Polynomial b = q.primitive();
  while (!b.is_zero()) {
    Polynomial r = divrem(a, b).remainder.primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial derivative(const Polynomial& p, std::size_t order) {
  const auto coeffs = p.coeffs();
  if (coeffs.size() <= order) return {};
  std::vector<Rational> out(coeffs.size() - order);
  for (std::size_t i = order; i < coeffs.size(); ++i) {
    Integer falling = 1;
    for (std::size_t t = 0; t < order; ++t) falling *= static_cast<unsigned long>(i - t);
    out[i - order] = coeffs[i] * Rational(falling);
  }
  return Polynomial(std::move(out));
}

Polynomial power(const Polynomial& p, std::size_t exponent) {
  Polynomial result = Polynomial::constant(1);
  Polynomial base = p;
  while (exponent) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Polynomial reciprocal_transform(const Polynomial& p, std::size_t d) {
  if (p.is_zero()) return {};
  if (d < p.deg()) throw PreconditionError("reciprocal_transform: window " + std::to_string(d) + " below degree " + std::to_string(p.deg()));
  std::vector<Rational> out(d + 1);
  for (std::size_t i = 0; i <= p.deg(); ++i) out[d - i] = p.coeffs()[i];
  return Polynomial(std::move(out));
}

ReciprocalSign is_self_reciprocal(const Polynomial& p, std::size_t d) {
  const Polynomial r = reciprocal_transform(p, d);
  if (r == p) return ReciprocalSign::plus;
  if (r == -p) return ReciprocalSign::minus;
  return ReciprocalSign::none;
}

Polynomial square_free_part(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("square-free part of the zero polynomial");
  if (p.deg() == 0) return Polynomial::constant(1);
  return exact_div(p, gcd(p, derivative(p))).monic();
}

std::vector<std::pair<Polynomial, std::size_t>> square_free_decomposition(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("square-free decomposition of the zero polynomial");
  std::vector<std::pair<Polynomial, std::size_t>> out;
  if (p.deg() == 0) return out;
  const Polynomial f = p.monic();
  const Polynomial fp = derivative(f);
  Polynomial a = gcd(f, fp);
  Polynomial b = exact_div(f, a);
  Polynomial c = exact_div(fp, a);
  Polynomial d = c - derivative(b);
  for (std::size_t i = 1; b.deg() > 0; ++i) {
    Polynomial g = d.is_zero() ? b.monic() : gcd(b, d);
    if (g.deg() > 0) out.emplace_back(g, i);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - derivative(b);
  }
  return out;
}

}  // namespace sszego
