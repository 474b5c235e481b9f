#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sszego/polynomial.hpp"

namespace sszego {

// Sturm remainder sequence of the square-free part, each member scaled to a
// primitive integer polynomial (positive scaling keeps the sign pattern).
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);

  const std::vector<Polynomial>& chain() const { return chain_; }
  std::size_t variations_at(const Rational& x) const;
  std::size_t variations_at_minus_infinity() const;
  std::size_t variations_at_plus_infinity() const;
  // Distinct real roots in (a, b].
  std::size_t count_in(const Rational& a, const Rational& b) const;
  std::size_t count_real() const;

 private:
  std::vector<Polynomial> chain_;
};

std::vector<Polynomial> sturm_chain(const Polynomial& p);

// Sign of p(x) for p with integer coefficients, evaluated without fractions.
int integer_sign_at(const Polynomial& p, const Rational& x);

// Strict upper bound on the absolute value of every complex root.
Rational cauchy_bound(const Polynomial& p);

// Certifies exactly one real root of `target` (a primitive square-free
// polynomial). Either lo == hi and that value is the root, or lo < hi, neither
// endpoint is a root and the root lies in the open interval (lo, hi).
class IsolatingInterval {
 public:
  IsolatingInterval(std::shared_ptr<const Polynomial> target, Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_exact() const { return lo_ == hi_; }
  Rational width() const { return hi_ - lo_; }
  const Polynomial& target() const { return *target_; }
  const std::shared_ptr<const Polynomial>& target_ptr() const { return target_; }
  double approx() const;

  // One exact bisection step.
  IsolatingInterval halved() const;

 private:
  std::shared_ptr<const Polynomial> target_;
  Rational lo_;
  Rational hi_;
};

// Bisects until the width is at most `width`. Returns [r, r] if a midpoint hits
// the root exactly.
IsolatingInterval refine(const IsolatingInterval& iv, const Rational& width);

// Root of a lies strictly below root of b, as certified by the endpoints.
bool certified_less(const IsolatingInterval& a, const IsolatingInterval& b);

struct RootProfile {
  Polynomial square_free;
  std::vector<IsolatingInterval> roots;  // increasing
  std::vector<std::size_t> multiplicities;
  std::size_t degree = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t positive = 0;

  std::size_t total_multiplicity() const;
  bool is_hyperbolic() const { return total_multiplicity() == degree; }
  bool is_strictly_hyperbolic() const { return is_hyperbolic() && roots.size() == degree; }
};

// Complete certified real-root profile of a nonzero polynomial. Rational
// breakpoints (0 always included) never fall inside an open interval: a root
// there is returned exactly, otherwise intervals stop at the breakpoint.
RootProfile isolate_real_roots(const Polynomial& p, std::span<const Rational> breakpoints = {});

// Positive roots with 0 and 1 as breakpoints.
RootProfile isolate_positive_roots(const Polynomial& p);

bool is_hyperbolic(const Polynomial& p);

enum class Verdict { holds, fails, degenerate };
std::string to_string(Verdict v);

struct NamedInterval {
  std::string name;
  Rational lo;
  Rational hi;
};

struct InterlaceResult {
  Verdict verdict = Verdict::fails;
  std::vector<NamedInterval> witnesses;
  std::string detail;
};

nlohmann::json to_json(const InterlaceResult& r);
nlohmann::json to_json(const NamedInterval& w);

inline Rational default_witness_width() { return Rational(1, 1000000); }

// Positive roots 0 < y_1 < ... < y_{j+1} of q and 0 < x_1 < ... < x_j of p:
// holds iff y_1 < x_1 < y_2 < ... < x_j < y_{j+1}. A common positive root
// gives a degenerate verdict. Root counts or multiplicities that do not fit
// the pattern raise PreconditionError.
InterlaceResult interlace_first(const Polynomial& p, const Polynomial& q,
                                const Rational& witness_width = default_witness_width());

// p with j simple positive roots x_i, r with j+2 simple positive roots z_i:
// x_i in (z_i, z_{i+1}) and x_{j+1-i} in (z_{j+2-i}, z_{j+3-i}) for
// i = 1..floor(j/2); for odd j additionally x_{(j+1)/2} = z_{(j+3)/2} = 1.
// A common positive root other than 1 gives a degenerate verdict.
InterlaceResult interlace_second(const Polynomial& p, const Polynomial& r,
                                 const Rational& witness_width = default_witness_width());

struct PencilResult {
  Verdict verdict = Verdict::holds;  // holds: no combination refuted
  std::uint64_t seed = 0;
  std::size_t combinations_checked = 0;
  std::optional<std::pair<Rational, Rational>> refuting_pair;  // (theta, mu)
};

// Checks hyperbolicity of theta*p + mu*q at (1,0), (0,1) and `trials` seeded
// pseudo-random rational pairs. Inputs sharing a root raise PreconditionError.
PencilResult pencil_probe(const Polynomial& p, const Polynomial& q, std::size_t trials, std::uint64_t seed);

struct ComplexRoot {
  std::complex<double> value;
  double residual = 0;     // |p(value)| on the scaled double polynomial
  double error_bound = 0;  // a root of p lies within this distance of value
};

// Aberth-Ehrlich simultaneous iteration on the square-free part. Throws
// ConvergenceError if |p(z)| <= tol * sum |a_i||z|^i is not reached.
std::vector<ComplexRoot> aberth_roots(const Polynomial& p, double tol = 1e-12);

}  // namespace sszego
