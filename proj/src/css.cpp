#include "sszego/css.hpp"

#include <string>

#include "sszego/errors.hpp"

namespace sszego {

CompositionContext::CompositionContext(std::size_t n) : n_(n) {
  if (n < 2) throw PreconditionError("composition degree n must be at least 2, got " + std::to_string(n));
}

namespace {

void check_degree(const CompositionContext& ctx, const Polynomial& p) {
  if (!p.is_zero() && p.deg() > ctx.n()) {
    throw PreconditionError("degree " + std::to_string(p.deg()) + " exceeds composition degree " + std::to_string(ctx.n()));
  }
}

}  // namespace

Polynomial css_compose(const CompositionContext& ctx, const Polynomial& p, const Polynomial& q) {
  const Polynomial ps[] = {p, q};
  return css_compose_many(ctx, ps);
}

Polynomial css_compose_many(const CompositionContext& ctx, std::span<const Polynomial> ps) {
  if (ps.empty()) throw PreconditionError("css_compose_many needs at least one polynomial");
  for (const auto& p : ps) check_degree(ctx, p);
  const std::size_t n = ctx.n();
  std::vector<Rational> out(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    Rational prod = 1;
    for (const auto& p : ps) {
      prod *= p.coeff(j);
      if (prod == 0) break;
    }
    if (prod == 0) continue;
    out[j] = prod / pow(binomial(static_cast<long>(n), static_cast<long>(j)), ps.size() - 1);
  }
  return Polynomial(std::move(out));
}

Polynomial composition_factor(const CompositionContext& ctx, const Rational& a) {
  const long n = static_cast<long>(ctx.n());
  std::vector<Rational> c(ctx.n() + 1);
  for (long j = 0; j < n; ++j) c[j] = binomial(n - 1, j) * (a + fraction(j, n - j));
  c[ctx.n()] = 1;
  for (auto& x : c) x.canonicalize();
  return Polynomial(std::move(c));
}

Polynomial k_infinity(const CompositionContext& ctx) {
  return power(Polynomial({Rational(1), Rational(1)}), ctx.n() - 1);
}

Polynomial composition_unit(const CompositionContext& ctx) {
  return power(Polynomial({Rational(1), Rational(1)}), ctx.n());
}

std::size_t sign_changes(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("sign_changes of the zero polynomial");
  std::size_t changes = 0;
  int last = 0;
  for (const auto& c : p.coeffs()) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::size_t multiplicity_of_root(const Polynomial& p, const Rational& r) {
  if (p.is_zero()) throw PreconditionError("multiplicity_of_root of the zero polynomial");
  const Polynomial factor = Polynomial::linear_factor(r);
  std::size_t m = 0;
  Polynomial cur = p;
  while (cur.deg() > 0) {
    auto [q, rem] = divrem(cur, factor);
    if (!rem.is_zero()) break;
    cur = std::move(q);
    ++m;
  }
  return m;
}

}  // namespace sszego
