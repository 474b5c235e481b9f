#include <doctest.h>

#include "sszego/css.hpp"
#include "sszego/errors.hpp"
#include "support.hpp"

using namespace sszego;
using testing::P;
using testing::q;

namespace {

// Coefficient-by-coefficient oracle from the defining formula.
Polynomial css_oracle(std::size_t n, const Polynomial& p, const Polynomial& r) {
  std::vector<Rational> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    c[j] = p.coeff(j) * r.coeff(j) / binomial(static_cast<long>(n), static_cast<long>(j));
  }
  return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("composition unit: (x+1)^n composed with p is p") {
  const CompositionContext ctx(3);
  CHECK(composition_unit(ctx) == P("1,3,3,1"));
  testing::Gen g(3);
  for (int t = 0; t < 30; ++t) {
    const Polynomial p = g.poly(static_cast<std::size_t>(g.integer(0, 3)));
    CHECK(css_compose(ctx, composition_unit(ctx), p) == p);
    CHECK(css_compose(ctx, p, composition_unit(ctx)) == p);
  }
}

TEST_CASE("n = 3: K_a1 * K_a2 expansion") {
  const CompositionContext ctx(3);
  testing::Gen g(17);
  for (int t = 0; t < 40; ++t) {
    const Rational a1 = g.rational(), a2 = g.rational();
    const Polynomial expected{a1 * a2, (2 * a1 + 1) * (2 * a2 + 1) / 3, (a1 + 2) * (a2 + 2) / 3, q(1)};
    CHECK(css_compose(ctx, composition_factor(ctx, a1), composition_factor(ctx, a2)) == expected);
  }
}

TEST_CASE("css_compose matches the coefficient formula") {
  testing::Gen g(23);
  for (std::size_t n = 2; n <= 12; ++n) {
    const CompositionContext ctx(n);
    for (int t = 0; t < 10; ++t) {
      const Polynomial a = g.poly(static_cast<std::size_t>(g.integer(0, static_cast<long>(n))));
      const Polynomial b = g.poly(static_cast<std::size_t>(g.integer(0, static_cast<long>(n))));
      CHECK(css_compose(ctx, a, b) == css_oracle(n, a, b));
    }
  }
}

TEST_CASE("css_compose preconditions") {
  CHECK_THROWS_AS(CompositionContext(1), PreconditionError);
  const CompositionContext ctx(3);
  CHECK_THROWS_AS(css_compose(ctx, P("1,1,1,1,1"), P("1")), PreconditionError);
}

TEST_CASE("css_compose_many folds") {
  const CompositionContext ctx(5);
  const Polynomial p = P("1,2,3,4,5,6");
  CHECK(css_compose_many(ctx, std::vector<Polynomial>{p}) == p);
  const std::vector<Polynomial> units(4, composition_factor(ctx, 1));
  CHECK(css_compose_many(ctx, units) == composition_unit(ctx));
  testing::Gen g(4);
  for (int t = 0; t < 10; ++t) {
    const std::vector<Polynomial> ps{g.poly(5), g.poly(4), g.poly(5)};
    CHECK(css_compose_many(ctx, ps) == css_compose(ctx, css_compose(ctx, ps[0], ps[1]), ps[2]));
    CHECK(css_compose_many(ctx, ps) == css_compose(ctx, ps[0], css_compose(ctx, ps[1], ps[2])));
  }
  CHECK_THROWS_AS(css_compose_many(ctx, std::vector<Polynomial>{}), PreconditionError);
}

TEST_CASE("composition factors") {
  const CompositionContext c3(3);
  CHECK(composition_factor(c3, 0) == P("0,1,2,1"));
  testing::Gen g(9);
  for (int t = 0; t < 20; ++t) {
    const Rational a = g.rational();
    CHECK(composition_factor(c3, a) == Polynomial{a, 2 * a + 1, a + 2, q(1)});
  }
  CHECK(k_infinity(c3) == P("1,2,1"));
  CHECK(k_infinity(CompositionContext(2)) == P("1,1"));
}

TEST_CASE("sign changes") {
  const CompositionContext c4(4);
  CHECK(sign_changes(composition_factor(c4, -5)) == 1);
  CHECK(sign_changes(composition_factor(c4, q(1, 2))) == 0);
  CHECK(sign_changes(P("2,-3,1")) == 2);
  CHECK(sign_changes(P("1,0,0,-1")) == 1);
}

TEST_CASE("multiplicity of a root") {
  CHECK(multiplicity_of_root(P("1,3,3,1"), -1) == 3);
  CHECK(multiplicity_of_root(P("1,0,1"), 1) == 0);
  for (std::size_t n = 2; n <= 10; ++n) {
    const CompositionContext ctx(n);
    CHECK(multiplicity_of_root(composition_factor(ctx, q(7, 3)), -1) == n - 1);
  }
}

TEST_CASE("property: composition is commutative and bilinear") {
  testing::Gen g(41);
  for (std::size_t n = 2; n <= 10; ++n) {
    const CompositionContext ctx(n);
    for (int t = 0; t < 5; ++t) {
      const Polynomial a = g.poly(n), b = g.poly(n), c = g.poly(n);
      const Rational s = g.rational();
      CHECK(css_compose(ctx, a, b) == css_compose(ctx, b, a));
      CHECK(css_compose(ctx, a, b * s + c) == css_compose(ctx, a, b) * s + css_compose(ctx, a, c));
    }
  }
}

TEST_CASE("property: sign changes of K_a follow the sign of a") {
  testing::Gen g(51);
  for (std::size_t n = 2; n <= 16; ++n) {
    const CompositionContext ctx(n);
    for (int t = 0; t < 10; ++t) {
      const Rational a = g.nonzero();
      CHECK(sign_changes(composition_factor(ctx, a)) == (a < 0 ? 1u : 0u));
    }
  }
}

TEST_CASE("property: multiplicity of -1 in a composition") {
  // Composing polynomials with -1 of multiplicity mp and mq gives at least mp + mq - n.
  testing::Gen g(61);
  for (std::size_t n = 3; n <= 10; ++n) {
    const CompositionContext ctx(n);
    for (int t = 0; t < 5; ++t) {
      const auto mp = static_cast<std::size_t>(g.integer(0, static_cast<long>(n)));
      const auto mq = static_cast<std::size_t>(g.integer(0, static_cast<long>(n)));
      const Polynomial p = power(P("1,1"), mp) * g.rooted(n - mp, nullptr, 5, 1).monic();
      const Polynomial r = power(P("1,1"), mq) * g.rooted(n - mq, nullptr, 5, 1).monic();
      const Polynomial c = css_compose(ctx, p, r);
      if (c.is_zero()) continue;
      if (mp + mq > n) CHECK(multiplicity_of_root(c, -1) >= mp + mq - n);
    }
  }
}
