#pragma once

#include <cstddef>
#include <span>

#include "sszego/polynomial.hpp"

namespace sszego {

// Ambient degree n for Schur-Szego composition. Always explicit: the same
// coefficient sequences compose differently under different n.
class CompositionContext {
 public:
  explicit CompositionContext(std::size_t n);
  std::size_t n() const { return n_; }

 private:
  std::size_t n_;
};

// Coefficient j of the result is p_j q_j / C(n, j). Throws PreconditionError
// when either operand has degree above n.
Polynomial css_compose(const CompositionContext& ctx, const Polynomial& p, const Polynomial& q);
Polynomial css_compose_many(const CompositionContext& ctx, std::span<const Polynomial> ps);

// K_a = (x+1)^{n-1} (x+a)
Polynomial composition_factor(const CompositionContext& ctx, const Rational& a);
// K_inf = (x+1)^{n-1}
Polynomial k_infinity(const CompositionContext& ctx);
// (x+1)^n, the unit of the composition.
Polynomial composition_unit(const CompositionContext& ctx);

// Descartes count: sign alternations in the nonzero coefficients.
std::size_t sign_changes(const Polynomial& p);

// Largest m with (x - r)^m | p, by repeated exact division.
std::size_t multiplicity_of_root(const Polynomial& p, const Rational& r);

}  // namespace sszego
