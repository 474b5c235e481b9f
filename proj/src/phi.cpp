#include "sszego/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sszego/errors.hpp"

namespace sszego {

namespace {

const Polynomial& x_plus_one() {
  static const Polynomial p({Rational(1), Rational(1)});
  return p;
}

// Coefficient vector (ascending, length n+1) of the polynomial whose
// homogeneous sigma-vector is e_k: b_j = C(n,j)^{-(n-2)} C(n-1,j)^k C(n-1,j-1)^{n-1-k}.
Polynomial sigma_basis_polynomial(std::size_t n, std::size_t k) {
  const long nn = static_cast<long>(n);
  std::vector<Rational> b(n + 1);
  for (long j = 0; j <= nn; ++j) {
    const Rational u = binomial(nn - 1, j);
    const Rational v = binomial(nn - 1, j - 1);
    b[j] = pow(u, k) * pow(v, n - 1 - k) / pow(binomial(nn, j), n - 2);
  }
  return Polynomial(std::move(b));
}

}  // namespace

PhiMap::PhiMap(std::size_t n) : n_(n) {
  if (n < 3) throw PreconditionError("Phi requires n >= 3, got " + std::to_string(n));
  backward_ = RationalMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const RationalVector col = c_vector(n, sigma_basis_polynomial(n, k));
    for (std::size_t i = 0; i < n; ++i) backward_(i, k) = col[i];
  }
  try {
    forward_ = sszego::inverse(backward_);
  } catch (const SingularMatrixError&) {
    throw InvariantViolation("sigma -> c map is singular for n = " + std::to_string(n));
  }
}

RationalVector c_vector(std::size_t n, const Polynomial& p) {
  RationalVector c(n);
  if (p.is_zero()) return c;
  if (p.deg() > n) throw PreconditionError("degree " + std::to_string(p.deg()) + " exceeds n = " + std::to_string(n));
  auto [q, r] = divrem(p, x_plus_one());
  if (!r.is_zero()) throw PreconditionError("polynomial " + p.to_string() + " is not divisible by x+1");
  for (std::size_t i = 0; i < n; ++i) c[i] = q.coeff(n - 1 - i);
  return c;
}

Polynomial from_c_vector(const RationalVector& v) {
  const std::size_t n = v.size();
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) c[n - 1 - i] = v[i];
  return x_plus_one() * Polynomial(std::move(c));
}

Polynomial apply_phi(const PhiMap& m, const Polynomial& p) {
  return from_c_vector(m.matrix() * c_vector(m.n(), p));
}

Polynomial phi_iterate(const PhiMap& m, const Polynomial& p, std::size_t k) {
  Polynomial cur = p;
  c_vector(m.n(), cur);  // validates even when k == 0
  for (std::size_t i = 0; i < k; ++i) cur = apply_phi(m, cur);
  return cur;
}

Rational phi_eigenvalue(std::size_t n, std::size_t k) {
  if (k < 1 || k > n - 1) throw PreconditionError("eigenvalue index out of range");
  Rational lambda = 1;
  for (std::size_t i = 1; i < k; ++i) lambda *= fraction(static_cast<long>(n), static_cast<long>(n - i));
  return lambda;
}

EigenSystem eigensystem(const PhiMap& m) {
  const std::size_t n = m.n();
  EigenSystem es;
  es.n = n;
  const RationalMatrix& a = m.matrix();
  const RationalMatrix id = RationalMatrix::identity(n);

  es.unit_eigenspace = nullspace(a - id);
  if (es.unit_eigenspace.size() != 2) {
    throw InvariantViolation("eigenvalue 1 has a " + std::to_string(es.unit_eigenspace.size()) +
                             "-dimensional eigenspace for n = " + std::to_string(n));
  }
  es.lambdas.push_back(Rational(1));
  es.eigenpolys.push_back(power(x_plus_one(), n - 1));

  for (std::size_t k = 2; k <= n - 1; ++k) {
    const Rational lambda = phi_eigenvalue(n, k);
    RationalMatrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    const auto kernel = nullspace(shifted);
    if (kernel.size() != 1) {
      throw InvariantViolation("eigenvalue " + to_string(lambda) + " has a " + std::to_string(kernel.size()) +
                               "-dimensional eigenspace for n = " + std::to_string(n));
    }
    const Polynomial direction = from_c_vector(kernel[0]);
    const Polynomial prefix = Polynomial::monomial(1, 1) * power(x_plus_one(), n - k);
    auto [q, r] = divrem(direction, prefix);
    if (!r.is_zero() || q.is_zero() || q.deg() != k - 2) {
      throw InvariantViolation("eigenvector for lambda_" + std::to_string(k) + " does not factor as x(x+1)^" +
                               std::to_string(n - k) + " Q_" + std::to_string(k - 2));
    }
    const Polynomial qm = q.monic();
    es.lambdas.push_back(lambda);
    es.eigenpolys.push_back(prefix * qm);
    es.qpolys.push_back(qm);
  }
  return es;
}

std::string eigensystem_csv(const EigenSystem& es) {
  std::ostringstream out;
  out << "n,k,lambda_num,lambda_den,q_index,q_coefficients\n";
  for (std::size_t k = 1; k <= es.lambdas.size(); ++k) {
    const Rational& l = es.lambdas[k - 1];
    out << es.n << ',' << k << ',' << l.get_num().get_str() << ',' << l.get_den().get_str() << ',';
    if (k >= 2) out << (k - 2) << ",\"" << es.qpolys[k - 2].to_string() << '"';
    else out << ',';
    out << '\n';
  }
  return out.str();
}

RationalVector sigma_of(const PhiMap& m, const Polynomial& p) {
  if (p.is_zero() || p.deg() != m.n() || p.leading() != 1) {
    throw PreconditionError("sigma_of expects a monic polynomial of degree " + std::to_string(m.n()));
  }
  if (p(Rational(-1)) != 0) throw PreconditionError("sigma_of expects p(-1) = 0");
  const RationalVector sigma = m.matrix() * c_vector(m.n(), p);
  return RationalVector(sigma.begin() + 1, sigma.end());
}

std::size_t FactorizationResult::finite_count() const {
  std::size_t s = 0;
  for (const auto& f : finite_params) s += f.multiplicity;
  return s;
}

namespace {

// Fraction with the smallest denominator in [lo, hi], lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_between(-hi, -lo);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  Integer ce = fl;
  if (Rational(fl) != lo) ce += 1;
  if (Rational(ce) <= hi) return Rational(ce);
  const Rational flr(fl);
  return flr + 1 / simplest_between(1 / (hi - flr), 1 / (lo - flr));
}

// A rational root a/b of an integer polynomial has b | lead; two distinct such
// fractions are at least 1/lead^2 apart, so an interval narrower than that
// holds at most one candidate.
std::optional<Rational> rational_root_in(const IsolatingInterval& iv) {
  if (iv.is_exact()) return iv.lo();
  const Integer lead = abs(iv.target().leading().get_num());
  const Rational width(Integer(1), Integer(lead * lead * 2));
  const IsolatingInterval narrow = refine(iv, width);
  if (narrow.is_exact()) return narrow.lo();
  const Rational cand = simplest_between(narrow.lo(), narrow.hi());
  if (cand.get_den() <= lead && iv.target()(cand) == 0) return cand;
  return std::nullopt;
}

}  // namespace

FactorizationResult factor_polynomial(const PhiMap& m, const Polynomial& p, const Rational& width) {
  if (p.is_zero()) throw PreconditionError("factor_polynomial of the zero polynomial");
  const std::size_t n = m.n();
  if (p.deg() > n) throw PreconditionError("degree exceeds n");
  if (p(Rational(-1)) != 0) throw PreconditionError("factor_polynomial expects p(-1) = 0");

  // Infinite parameters show up as leading zeros of the homogeneous sigma:
  // K_inf contributes the point [1 : 0]. Their count is not n - deg p; with
  // deg p = n - m there is one K_inf and the finite b_{n-1}, ..., b_{n-m+1}.
  const RationalVector sigma = m.matrix() * c_vector(n, p);
  std::size_t m_inf = 0;
  while (sigma[m_inf] == 0) ++m_inf;
  const Rational scale = sigma[m_inf];
  const std::size_t f = n - 1 - m_inf;

  // R(t) = sum_k (-1)^k e_k t^{f-k}
  std::vector<Rational> rc(f + 1);
  for (std::size_t k = 0; k <= f; ++k) {
    Rational e = sigma[m_inf + k] / scale;
    rc[f - k] = (k % 2 == 0) ? e : Rational(-e);
  }
  FactorizationResult out;
  out.k_inf_count = m_inf;
  out.scalar = scale;
  out.parameter_polynomial = Polynomial(std::move(rc));

  if (out.parameter_polynomial.deg() == 0) return out;
  for (const auto& [g, mult] : square_free_decomposition(out.parameter_polynomial)) {
    const RootProfile prof = isolate_real_roots(g);
    for (const auto& iv : prof.roots) {
      if (auto r = rational_root_in(iv)) {
        out.finite_params.push_back({*r, mult});
      } else {
        out.finite_params.push_back({refine(iv, width), mult});
      }
    }
    if (prof.roots.size() < g.deg()) {
      for (const auto& z : aberth_roots(g)) {
        if (z.value.imag() != 0) out.finite_params.push_back({z, mult});
      }
    }
  }
  if (out.finite_count() + out.k_inf_count != n - 1) {
    throw InvariantViolation("factorization produced the wrong number of parameters");
  }
  return out;
}

Polynomial reconstruct(const CompositionContext& ctx, std::span<const Rational> a_list, std::size_t k_inf_count) {
  const std::size_t n = ctx.n();
  if (a_list.size() + k_inf_count != n - 1) {
    throw PreconditionError("reconstruct expects " + std::to_string(n - 1) + " parameters, got " +
                            std::to_string(a_list.size() + k_inf_count));
  }
  const long nn = static_cast<long>(n);
  std::vector<Rational> b(n + 1);
  for (long j = 0; j <= nn; ++j) {
    const Rational u = binomial(nn - 1, j);
    const Rational v = binomial(nn - 1, j - 1);
    Rational prod = pow(u, k_inf_count);
    for (const auto& a : a_list) {
      if (prod == 0) break;
      prod *= u * a + v;
    }
    b[j] = prod / pow(binomial(nn, j), n - 2);
  }
  return Polynomial(std::move(b));
}

namespace {

// Positive roots depend only on the primitive square-free part coprime to
// x(x+1); reducing to it first makes equal root sets isolate identically.
Polynomial positive_part(Polynomial p) {
  const Polynomial x = Polynomial::monomial(1, 1);
  while (p.deg() > 0 && p.coeff(0) == 0) p = exact_div(p, x);
  while (p.deg() > 0 && p(Rational(-1)) == 0) p = exact_div(p, x_plus_one());
  return square_free_part(p).primitive();
}

std::vector<double> positive_root_values(const Polynomial& p, const Rational& resolution) {
  std::vector<double> out;
  for (const auto& iv : isolate_positive_roots(positive_part(p)).roots) out.push_back(refine(iv, resolution).approx());
  return out;
}

double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() && b.empty()) return 0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0;
    for (double x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (double y : to) best = std::min(best, std::fabs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

ConvergenceProfile convergence_profile(const PhiMap& m, const EigenSystem& es, const Polynomial& p, std::size_t k_max,
                                       std::optional<std::size_t> j, const Rational& resolution) {
  const std::size_t n = m.n();
  if (es.n != n) throw PreconditionError("eigensystem degree does not match Phi");
  if (p.is_zero()) throw PreconditionError("convergence_profile of the zero polynomial");

  // Coordinates of p in the eigenbasis (x+1)^n, (x+1)^{n-1}, W_0, ..., W_{n-3}.
  RationalMatrix basis(n, n);
  std::vector<Polynomial> vectors{power(x_plus_one(), n), power(x_plus_one(), n - 1)};
  for (std::size_t i = 0; i + 2 < n; ++i) vectors.push_back(es.w(i));
  for (std::size_t col = 0; col < n; ++col) {
    const RationalVector c = c_vector(n, vectors[col]);
    for (std::size_t row = 0; row < n; ++row) basis(row, col) = c[row];
  }
  ConvergenceProfile prof;
  prof.eigen_coefficients = inverse(basis) * c_vector(n, p);

  std::optional<std::size_t> top;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (prof.eigen_coefficients[i + 2] != 0) top = i;
  }
  if (j) {
    if (*j + 2 >= n) throw PreconditionError("W index out of range");
    if (prof.eigen_coefficients[*j + 2] == 0) {
      throw PreconditionError("eigen-coefficient of W_" + std::to_string(*j) + " is zero");
    }
    if (*top != *j) throw PreconditionError("p has a component above W_" + std::to_string(*j));
  } else if (!top) {
    throw PreconditionError("p has no W component; its iterates do not move");
  }
  prof.dominant_index = j ? *j : *top;

  const std::vector<double> target = positive_root_values(es.q(prof.dominant_index), resolution);
  Polynomial cur = p;
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (k > 0) cur = apply_phi(m, cur).primitive();
    const auto roots = positive_root_values(cur, resolution);
    prof.points.push_back({k, hausdorff(roots, target), roots.size()});
  }
  return prof;
}

}  // namespace sszego
