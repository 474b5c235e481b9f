#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sszego/css.hpp"
#include "sszego/matrix.hpp"
#include "sszego/polynomial.hpp"
#include "sszego/roots.hpp"

namespace sszego {

// The linear map (c_0, ..., c_{n-1}) -> (sigma_0, ..., sigma_{n-1}) where
// P = (x+1)(c_0 x^{n-1} + ... + c_{n-1}) = K_{a_1} * ... * K_{a_{n-1}} and
// sigma_k are the elementary symmetric functions of the a_i (sigma_0 = c_0).
class PhiMap {
 public:
  // Throws PreconditionError for n < 3.
  explicit PhiMap(std::size_t n);

  std::size_t n() const { return n_; }
  CompositionContext context() const { return CompositionContext(n_); }
  // c -> sigma
  const RationalMatrix& matrix() const { return forward_; }
  // sigma -> c
  const RationalMatrix& inverse_matrix() const { return backward_; }

 private:
  std::size_t n_;
  RationalMatrix backward_;
  RationalMatrix forward_;
};

inline PhiMap build_phi(std::size_t n) { return PhiMap(n); }

// c-vector of p = (x+1)(c_0 x^{n-1} + ... + c_{n-1}); requires deg p <= n and p(-1) = 0.
RationalVector c_vector(std::size_t n, const Polynomial& p);
// Inverse of c_vector: (x+1)(v_0 x^{n-1} + ... + v_{n-1}).
Polynomial from_c_vector(const RationalVector& v);

Polynomial apply_phi(const PhiMap& m, const Polynomial& p);
Polynomial phi_iterate(const PhiMap& m, const Polynomial& p, std::size_t k);

// lambda_k = n^{k-1} / ((n-1)(n-2)...(n-k+1)), k = 1..n-1.
Rational phi_eigenvalue(std::size_t n, std::size_t k);

struct EigenSystem {
  std::size_t n = 0;
  std::vector<Rational> lambdas;        // lambda_1 .. lambda_{n-1}
  std::vector<Polynomial> eigenpolys;   // degree n-1; [0] = (x+1)^{n-1}, [k-1] = W_{k-2} for k >= 2
  std::vector<Polynomial> qpolys;       // qpolys[j] = Q_j for j = 0..n-3, Q_0 = 1
  std::vector<RationalVector> unit_eigenspace;  // kernel basis of A - I (dimension 2)

  const Polynomial& q(std::size_t j) const { return qpolys.at(j); }
  // W_j = x (x+1)^{n-2-j} Q_j, eigenvalue lambda_{j+2}.
  const Polynomial& w(std::size_t j) const { return eigenpolys.at(j + 1); }
};

// Throws InvariantViolation if an eigenspace has the wrong dimension or an
// eigenvector does not factor as x (x+1)^{n-k} Q_{k-2}.
EigenSystem eigensystem(const PhiMap& m);

// Columns: n,k,lambda_num,lambda_den,q_index,q_coefficients
std::string eigensystem_csv(const EigenSystem& es);

// (sigma_1, ..., sigma_{n-1}) for monic p of degree n with p(-1) = 0.
RationalVector sigma_of(const PhiMap& m, const Polynomial& p);

struct FactorParameter {
  // Rational: exact real parameter. IsolatingInterval: irrational real
  // parameter. ComplexRoot: non-real parameter, floating approximation.
  std::variant<Rational, IsolatingInterval, ComplexRoot> value;
  std::size_t multiplicity = 1;
};

struct FactorizationResult {
  std::vector<FactorParameter> finite_params;
  // Leading zeros of the homogeneous sigma-vector.
  std::size_t k_inf_count = 0;
  // p = scalar * reconstruct(params, k_inf_count); equals the leading
  // coefficient when k_inf_count == 0.
  Rational scalar;
  // Monic polynomial whose roots are the finite parameters.
  Polynomial parameter_polynomial;

  std::size_t finite_count() const;
};

FactorizationResult factor_polynomial(const PhiMap& m, const Polynomial& p,
                                      const Rational& width = Rational(1, 1000000));

// Product-formula reconstruction of K_{a_1} * ... * K_{a_s} * K_inf^{*k_inf}.
Polynomial reconstruct(const CompositionContext& ctx, std::span<const Rational> a_list, std::size_t k_inf_count);

struct ConvergencePoint {
  std::size_t k = 0;
  double distance = 0;  // Hausdorff distance of positive-root sets
  std::size_t positive_roots = 0;
};

struct ConvergenceProfile {
  std::size_t dominant_index = 0;  // j of the dominant W_j
  std::vector<Rational> eigen_coefficients;  // on (x+1)^n, (x+1)^{n-1}, W_0, ..., W_{n-3}
  std::vector<ConvergencePoint> points;
};

// Distance between the positive roots of Phi^k(p) and those of W_j for
// k = 0..k_max. With `j` unset the dominant index is the largest W index with
// a nonzero coefficient; with `j` set p must lie in span(W_0..W_j) with a
// nonzero W_j coefficient.
ConvergenceProfile convergence_profile(const PhiMap& m, const EigenSystem& es, const Polynomial& p, std::size_t k_max,
                                       std::optional<std::size_t> j = std::nullopt,
                                       const Rational& resolution = Rational(1, 1000000000000L));

}  // namespace sszego
