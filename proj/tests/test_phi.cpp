#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sszego/css.hpp"
#include "sszego/errors.hpp"
#include "sszego/phi.hpp"
#include "sszego/roots.hpp"
#include "support.hpp"

using namespace sszego;
using testing::P;
using testing::q;

namespace {

// e_0..e_s of a tuple by the product expansion of (1 + a_i t).
std::vector<Rational> elementary(std::span<const Rational> a) {
  std::vector<Rational> e{Rational(1)};
  for (const auto& v : a) {
    e.push_back(0);
    for (std::size_t k = e.size() - 1; k > 0; --k) e[k] += v * e[k - 1];
  }
  return e;
}

// Polynomial with homogeneous sigma-vector s (s_0 included).
Polynomial from_sigma(const PhiMap& m, const RationalVector& s) { return from_c_vector(m.inverse_matrix() * s); }

}  // namespace

TEST_CASE("Phi matrix for n = 3") {
  const PhiMap m(3);
  CHECK(m.matrix() == RationalMatrix(3, 3, {q(1), q(0), q(0), q(-1, 2), q(3, 2), q(-1, 2), q(0), q(0), q(1)}));
  CHECK(m.matrix() * m.inverse_matrix() == RationalMatrix::identity(3));
  CHECK_THROWS_AS(PhiMap(2), PreconditionError);
}

TEST_CASE("Phi matrix is centre-symmetric with first row e_0") {
  for (std::size_t n = 3; n <= 12; ++n) {
    const PhiMap m(n);
    CHECK(m.matrix().is_centre_symmetric());
    CHECK(m.matrix()(0, 0) == 1);
    for (std::size_t c = 1; c < n; ++c) CHECK(m.matrix()(0, c) == 0);
  }
}

TEST_CASE("apply_phi examples") {
  for (std::size_t n = 3; n <= 10; ++n) {
    const PhiMap m(n);
    const Polynomial u = power(P("1,1"), n);
    CHECK(apply_phi(m, u) == u);
  }
  const PhiMap m3(3);
  CHECK(c_vector(3, P("0,1,2,1")) == RationalVector{q(1), q(1), q(0)});
  CHECK(apply_phi(m3, P("0,1,2,1")) == P("0,1,2,1"));
  CHECK_THROWS_AS(apply_phi(m3, P("1,0,1")), PreconditionError);
  CHECK_THROWS_AS(apply_phi(m3, power(P("1,1"), 4)), PreconditionError);
}

TEST_CASE("property: apply_phi is linear") {
  testing::Gen g(12);
  for (std::size_t n = 3; n <= 10; ++n) {
    const PhiMap m(n);
    for (int t = 0; t < 5; ++t) {
      const Polynomial a = P("1,1") * g.poly(n - 1), b = P("1,1") * g.poly(n - 1);
      const Rational th = g.rational(), mu = g.rational();
      CHECK(apply_phi(m, a * th + b * mu) == apply_phi(m, a) * th + apply_phi(m, b) * mu);
    }
  }
}

TEST_CASE("phi_iterate") {
  const PhiMap m(6);
  const Polynomial p = P("1,1") * P("1,2,3,4,5,6");
  CHECK(phi_iterate(m, p, 0) == p);
  CHECK(phi_iterate(m, p, 3) == apply_phi(m, apply_phi(m, apply_phi(m, p))));
}

TEST_CASE("eigenvalue formula") {
  CHECK(phi_eigenvalue(4, 1) == 1);
  CHECK(phi_eigenvalue(4, 2) == q(4, 3));
  CHECK(phi_eigenvalue(4, 3) == q(8, 3));
  CHECK(phi_eigenvalue(5, 4) == q(125, 24));
  CHECK_THROWS_AS(phi_eigenvalue(4, 4), PreconditionError);
}

TEST_CASE("eigensystem examples") {
  for (std::size_t n = 4; n <= 12; ++n) {
    const EigenSystem es = eigensystem(PhiMap(n));
    REQUIRE(es.qpolys.size() == n - 2);
    CHECK(es.q(0) == P("1"));
    CHECK(es.q(1) == P("-1,1"));
    CHECK(es.unit_eigenspace.size() == 2);
  }
  const EigenSystem e4 = eigensystem(PhiMap(4));
  CHECK(e4.lambdas[2] == q(8, 3));
  // eigenpolynomial for lambda_3 = 8/3 is x(x+1)(x-1)
  CHECK(divides(P("0,-1,0,1"), e4.eigenpolys[2]));
  CHECK(e4.eigenpolys[2].deg() == 3);
  const EigenSystem e8 = eigensystem(PhiMap(8));
  CHECK(e8.q(3)(1) == 0);
  CHECK(e8.q(5)(1) == 0);
  CHECK(e8.q(2)(1) != 0);
}

TEST_CASE("eigenpolynomials are eigenvectors with the stated shape") {
  for (std::size_t n = 4; n <= 12; ++n) {
    const PhiMap m(n);
    const EigenSystem es = eigensystem(m);
    for (std::size_t k = 2; k <= n - 1; ++k) {
      const Polynomial& w = es.eigenpolys[k - 1];
      CHECK(apply_phi(m, w) == w * es.lambdas[k - 1]);
      const Polynomial shape = P("0,1") * power(P("1,1"), n - k) * es.q(k - 2);
      CHECK(divides(w, shape));
      CHECK(divides(shape, w));
      CHECK(es.q(k - 2).leading() == 1);
    }
  }
}

TEST_CASE("Q_j are strictly hyperbolic, positive and self-reciprocal") {
  for (std::size_t n = 4; n <= 12; ++n) {
    const EigenSystem es = eigensystem(PhiMap(n));
    for (std::size_t j = 1; j + 2 < n; ++j) {
      const Polynomial& qj = es.q(j);
      const std::vector<Rational> one{Rational(1)};
      const RootProfile prof = isolate_real_roots(qj, one);
      CHECK(prof.is_strictly_hyperbolic());
      CHECK(prof.positive == j);
      CHECK(is_self_reciprocal(qj, j) == (j % 2 == 1 ? ReciprocalSign::minus : ReciprocalSign::plus));
      // closed under r -> 1/r: as many roots below 1 as above
      std::size_t below = 0, above = 0, at_one = 0;
      for (const auto& iv : prof.roots) {
        if (iv.hi() < 1) ++below;
        else if (iv.lo() > 1) ++above;
        else if (iv.is_exact() && iv.lo() == 1) ++at_one;
      }
      CHECK(below == above);
      CHECK(at_one == j % 2);
    }
  }
}

TEST_CASE("eigensystem CSV") {
  const std::string csv = eigensystem_csv(eigensystem(PhiMap(4)));
  CHECK(csv.rfind("n,k,lambda_num,lambda_den,q_index,q_coefficients\n", 0) == 0);
  CHECK(csv.find("4,3,8,3,1,") != std::string::npos);
}

TEST_CASE("sigma_of examples") {
  const PhiMap m(3);
  CHECK(sigma_of(m, P("1,3,3,1")) == RationalVector{q(2), q(1)});
  CHECK(sigma_of(m, P("0,1,2,1")) == RationalVector{q(1), q(0)});
  CHECK_THROWS_AS(sigma_of(m, P("0,2,4,2")), PreconditionError);
  CHECK_THROWS_AS(sigma_of(m, P("1,0,0,1") + P("0,1")), PreconditionError);
}

TEST_CASE("property: reconstruct then sigma_of recovers elementary symmetric functions") {
  testing::Gen g(100);
  for (std::size_t n = 3; n <= 10; ++n) {
    const PhiMap m(n);
    const CompositionContext ctx(n);
    for (int t = 0; t < 25; ++t) {
      std::vector<Rational> a(n - 1);
      for (auto& v : a) v = g.rational();
      const Polynomial p = reconstruct(ctx, a, 0);
      const std::vector<Rational> e = elementary(a);
      CHECK(sigma_of(m, p) == RationalVector(e.begin() + 1, e.end()));
      std::vector<Polynomial> factors;
      for (const auto& v : a) factors.push_back(composition_factor(ctx, v));
      CHECK(p == css_compose_many(ctx, factors));
    }
  }
}

TEST_CASE("reconstruct examples") {
  for (std::size_t n = 3; n <= 8; ++n) {
    const std::vector<Rational> ones(n - 1, Rational(1));
    CHECK(reconstruct(CompositionContext(n), ones, 0) == power(P("1,1"), n));
  }
  const CompositionContext c3(3);
  CHECK(reconstruct(c3, std::vector<Rational>{q(0), q(1)}, 0) == P("0,1,2,1"));
  CHECK(reconstruct(c3, std::vector<Rational>{q(1)}, 1) == k_infinity(c3));
  CHECK_THROWS_AS(reconstruct(c3, std::vector<Rational>{q(1)}, 0), PreconditionError);
}

TEST_CASE("factor_polynomial: rational parameters") {
  const PhiMap m3(3);
  const FactorizationResult r = factor_polynomial(m3, P("0,1,2,1"));
  CHECK(r.k_inf_count == 0);
  CHECK(r.scalar == 1);
  CHECK(r.parameter_polynomial == P("0,-1,1"));
  std::vector<Rational> got;
  for (const auto& f : r.finite_params) got.push_back(std::get<Rational>(f.value));
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<Rational>{q(0), q(1)});

  for (std::size_t n = 3; n <= 9; ++n) {
    const FactorizationResult u = factor_polynomial(PhiMap(n), power(P("1,1"), n));
    REQUIRE(u.finite_params.size() == 1);
    CHECK(std::get<Rational>(u.finite_params[0].value) == 1);
    CHECK(u.finite_params[0].multiplicity == n - 1);
    // x (x+1)^{n-1} contains b_0 = 0
    const FactorizationResult b = factor_polynomial(PhiMap(n), P("0,1") * power(P("1,1"), n - 1));
    bool has_zero = false;
    for (const auto& f : b.finite_params) has_zero = has_zero || std::get<Rational>(f.value) == 0;
    CHECK(has_zero);
  }
}

TEST_CASE("factor_polynomial: degree n-1 input has one infinite parameter") {
  testing::Gen g(7);
  for (std::size_t n = 3; n <= 9; ++n) {
    const PhiMap m(n);
    const Polynomial p = P("1,1") * g.poly(n - 2);
    const FactorizationResult r = factor_polynomial(m, p);
    CHECK(r.k_inf_count >= 1);
    CHECK(r.finite_count() + r.k_inf_count == n - 1);
  }
  // x + 1 with n = 3: K_inf and b_2 = -2, scalar -1/2
  const FactorizationResult r = factor_polynomial(PhiMap(3), P("1,1"));
  CHECK(r.k_inf_count == 1);
  CHECK(r.scalar == q(-1, 2));
  REQUIRE(r.finite_params.size() == 1);
  CHECK(std::get<Rational>(r.finite_params[0].value) == -2);
  CHECK(reconstruct(CompositionContext(3), std::vector<Rational>{q(-2)}, 1) * r.scalar == P("1,1"));
}

TEST_CASE("factor_polynomial: irrational and complex parameters") {
  // parameters {1, sqrt2, -sqrt2}: e = (1, 1, -2, -2)
  const PhiMap m4(4);
  const Polynomial p = from_sigma(m4, {q(1), q(1), q(-2), q(-2)});
  const FactorizationResult r = factor_polynomial(m4, p, q(1, 1000000));
  CHECK(r.parameter_polynomial == P("2,-2,-1,1"));
  std::size_t irrational = 0;
  for (const auto& f : r.finite_params) {
    if (const auto* iv = std::get_if<IsolatingInterval>(&f.value)) {
      ++irrational;
      CHECK(iv->width() <= q(1, 1000000));
      const Rational sq_lo = iv->lo() * iv->lo(), sq_hi = iv->hi() * iv->hi();
      CHECK(std::min(sq_lo, sq_hi) < 2);
      CHECK(std::max(sq_lo, sq_hi) > 2);
    }
  }
  CHECK(irrational == 2);

  // parameters {i, -i}: R = t^2 + 1
  const PhiMap m3(3);
  const FactorizationResult c = factor_polynomial(m3, from_sigma(m3, {q(1), q(0), q(1)}));
  CHECK(c.parameter_polynomial == P("1,0,1"));
  REQUIRE(c.finite_params.size() == 2);
  for (const auto& f : c.finite_params) {
    const auto& z = std::get<ComplexRoot>(f.value);
    CHECK(std::abs(std::abs(z.value.imag()) - 1.0) < 1e-9);
    CHECK(std::abs(z.value.real()) < 1e-9);
  }
  CHECK_THROWS_AS(factor_polynomial(m3, P("1,0,1")), PreconditionError);
  CHECK_THROWS_AS(factor_polynomial(m3, Polynomial()), PreconditionError);
}

TEST_CASE("property: factor_polynomial inverts reconstruct") {
  testing::Gen g(55);
  for (std::size_t n = 3; n <= 8; ++n) {
    const PhiMap m(n);
    const CompositionContext ctx(n);
    for (int t = 0; t < 10; ++t) {
      std::vector<Rational> a(n - 1);
      for (auto& v : a) v = g.rational();
      const FactorizationResult r = factor_polynomial(m, reconstruct(ctx, a, 0));
      std::vector<Rational> got;
      for (const auto& f : r.finite_params) {
        for (std::size_t i = 0; i < f.multiplicity; ++i) got.push_back(std::get<Rational>(f.value));
      }
      std::sort(got.begin(), got.end());
      std::sort(a.begin(), a.end());
      CHECK(got == a);
      CHECK(r.scalar == 1);
    }
  }
}

TEST_CASE("Phi preserves self-reciprocity") {
  testing::Gen g(66);
  for (std::size_t n = 3; n <= 10; ++n) {
    const PhiMap m(n);
    for (int t = 0; t < 5; ++t) {
      Polynomial h = g.poly(n - 1);
      // symmetrize within degree n-1, then multiply by x+1
      const Polynomial sym = h + reciprocal_transform(h, n - 1);
      if (sym.is_zero()) continue;
      const Polynomial p = P("1,1") * sym;
      const ReciprocalSign s = is_self_reciprocal(p, n);
      REQUIRE(s == ReciprocalSign::plus);
      CHECK(is_self_reciprocal(apply_phi(m, p), n) == s);
      CHECK(is_self_reciprocal(phi_iterate(m, p, 4), n) == s);
    }
  }
}

TEST_CASE("convergence_profile examples") {
  const PhiMap m(7);
  const EigenSystem es = eigensystem(m);
  const ConvergenceProfile same = convergence_profile(m, es, es.w(3), 5);
  CHECK(same.dominant_index == 3);
  for (const auto& pt : same.points) CHECK(pt.distance == 0.0);

  const ConvergenceProfile mixed = convergence_profile(m, es, es.w(3) + es.w(2), 40, 3);
  REQUIRE(mixed.points.size() == 41);
  CHECK(mixed.points.back().distance < mixed.points.front().distance);
  CHECK(mixed.points.back().distance < 1e-3);

  CHECK_THROWS_AS(convergence_profile(m, es, es.w(2), 5, 3), PreconditionError);
  CHECK_THROWS_AS(convergence_profile(m, es, power(P("1,1"), 7), 5), PreconditionError);
}
