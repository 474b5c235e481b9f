#include "sszego/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "sszego/css.hpp"
#include "sszego/errors.hpp"
#include "sszego/phi.hpp"
#include "sszego/special.hpp"

namespace sszego {

namespace {

const std::vector<std::pair<CheckId, std::string>>& check_names() {
  static const std::vector<std::pair<CheckId, std::string>> names{
      {CheckId::thm1, "thm1"},
      {CheckId::thm2, "thm2"},
      {CheckId::eigenvalues, "eigenvalues"},
      {CheckId::centre_symmetry, "centre_symmetry"},
      {CheckId::roundtrip, "roundtrip"},
      {CheckId::unit_law, "unit_law"},
      {CheckId::multiplicity, "multiplicity"},
      {CheckId::posroots, "posroots"},
      {CheckId::propmult, "propmult"},
      {CheckId::gegenbauer, "gegenbauer"},
      {CheckId::narayana_recurrence, "narayana_recurrence"},
      {CheckId::narayana_interlace, "narayana_interlace"},
      {CheckId::q_narayana_convergence, "q_narayana_convergence"},
      {CheckId::phi_convergence, "phi_convergence"},
      {CheckId::pencil_probe, "pencil_probe"},
  };
  return names;
}

}  // namespace

std::string to_string(CheckId id) {
  for (const auto& [k, name] : check_names()) {
    if (k == id) return name;
  }
  return "unknown";
}

CheckId parse_check_id(std::string_view name) {
  for (const auto& [k, n] : check_names()) {
    if (n == name) return k;
  }
  throw ParseError("unknown check '" + std::string(name) + "'");
}

const std::vector<CheckId>& all_check_ids() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> out;
    for (const auto& entry : check_names()) out.push_back(entry.first);
    return out;
  }();
  return ids;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::verified: return "verified";
    case Status::refuted: return "refuted";
    case Status::degenerate: return "degenerate";
    case Status::error: return "error";
  }
  return "error";
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t a, std::size_t b = 0) {
  return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

// Raw mt19937_64 output reduced by modulo: the standard distributions are
// implementation-defined, this is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(gen_() % span);
  }
  Rational rational(long num_bound, long den_bound) {
    Rational r(integer(-num_bound, num_bound), integer(1, den_bound));
    r.canonicalize();
    return r;
  }
  Rational nonzero(long num_bound, long den_bound) {
    Rational r;
    do r = rational(num_bound, den_bound);
    while (r == 0);
    return r;
  }
  Rational positive(long num_bound, long den_bound) { return abs(nonzero(num_bound, den_bound)); }
  Polynomial polynomial(std::size_t degree, long num_bound, long den_bound) {
    std::vector<Rational> c(degree + 1);
    for (auto& v : c) v = rational(num_bound, den_bound);
    c[degree] = nonzero(num_bound, den_bound);
    return Polynomial(std::move(c));
  }

 private:
  std::mt19937_64 gen_;
};

const Polynomial& x_poly() {
  static const Polynomial x = Polynomial::monomial(1, 1);
  return x;
}

Polynomial x_plus_one() { return Polynomial({Rational(1), Rational(1)}); }

NamedInterval point(std::string name, const Rational& v) { return {std::move(name), v, v}; }

nlohmann::json poly_json(const Polynomial& p) { return p.to_string(); }

nlohmann::json rationals_json(std::span<const Rational> v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

std::pair<std::size_t, std::size_t> clamp_range(const std::optional<IndexRange>& r, std::size_t lo, std::size_t hi) {
  if (!r) return {lo, hi};
  return {std::max(lo, r->lo), std::min(hi, r->hi)};
}

struct Case {
  const CheckSpec& spec;
  std::size_t n = 0;
  std::vector<CheckReport> out;

  CheckReport& open(nlohmann::json params, std::uint64_t seed) {
    CheckReport r;
    r.check = spec.check;
    params["n"] = n;
    if (!spec.label.empty()) params["label"] = spec.label;
    r.params = std::move(params);
    r.seed = seed;
    out.push_back(std::move(r));
    return out.back();
  }
};

void guarded(CheckReport& r, const std::function<void(CheckReport&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.status = Status::error;
    r.detail = e.what();
    r.witnesses.clear();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void refute(CheckReport& r, std::string detail, nlohmann::json counterexample) {
  r.status = Status::refuted;
  r.detail = std::move(detail);
  r.counterexample = std::move(counterexample);
}

// ---- Q-based checks -------------------------------------------------------

struct QFamily {
  PhiMap map;
  EigenSystem es;
  std::vector<Polynomial> q;  // possibly perturbed copy of es.qpolys

  QFamily(std::size_t n, const std::optional<Perturbation>& perturb) : map(n), es(eigensystem(map)), q(es.qpolys) {
    if (perturb && perturb->q_index < q.size()) {
      q[perturb->q_index] += Polynomial::monomial(perturb->delta, perturb->coeff);
    }
  }

  Polynomial w(std::size_t j) const { return x_poly() * power(x_plus_one(), map.n() - 2 - j) * q[j]; }
};

// Phi(W_j) = lambda_{j+2} W_j exactly; on failure the first differing
// coefficient becomes the witness.
bool eigen_certificate(const QFamily& f, std::size_t j, CheckReport& r) {
  const Polynomial w = f.w(j);
  const Rational lambda = phi_eigenvalue(f.map.n(), j + 2);
  const Polynomial residual = apply_phi(f.map, w) - w * lambda;
  if (residual.is_zero()) return true;
  std::size_t t = 0;
  while (residual.coeff(t) == 0) ++t;
  r.witnesses = {point("residual_W" + std::to_string(j) + "_x" + std::to_string(t), residual.coeff(t))};
  refute(r, "Phi(W_" + std::to_string(j) + ") != lambda_" + std::to_string(j + 2) + " W_" + std::to_string(j),
         {{"n", f.map.n()}, {"j", j}, {"q", poly_json(f.q[j])}, {"lambda", to_string(lambda)}});
  return false;
}

bool positive_simple_roots(const QFamily& f, std::size_t j, CheckReport& r) {
  const Polynomial& q = f.q[j];
  if (q.deg() == 0) return true;
  const RootProfile prof = isolate_positive_roots(q);
  if (prof.is_strictly_hyperbolic() && prof.positive == q.deg()) return true;
  refute(r, "Q_" + std::to_string(j) + " is not strictly hyperbolic with positive roots",
         {{"n", f.map.n()}, {"j", j}, {"q", poly_json(q)}});
  return false;
}

void record_interlace(CheckReport& r, const InterlaceResult& res, nlohmann::json inputs) {
  r.witnesses = res.witnesses;
  r.detail = res.detail;
  switch (res.verdict) {
    case Verdict::holds: r.status = Status::verified; break;
    case Verdict::degenerate: r.status = Status::degenerate; break;
    case Verdict::fails: refute(r, res.detail, std::move(inputs)); break;
  }
}

void run_theorem(Case& c, bool second) {
  const std::size_t n = c.n;
  const std::size_t gap = second ? 2 : 1;
  if (n < 4 + gap) return;
  const auto [jlo, jhi] = clamp_range(c.spec.j, 1, n - 3 - gap);
  const QFamily f(n, c.spec.perturb);
  for (std::size_t j = jlo; j <= jhi; ++j) {
    CheckReport& r = c.open({{"j", j}}, c.spec.seed);
    guarded(r, [&](CheckReport& r) {
      for (std::size_t i : {j, j + gap}) {
        if (!eigen_certificate(f, i, r) || !positive_simple_roots(f, i, r)) return;
      }
      nlohmann::json inputs{{"n", n}, {"j", j}, {"p", poly_json(f.q[j])}, {"q", poly_json(f.q[j + gap])}};
      const InterlaceResult res = second ? interlace_second(f.q[j], f.q[j + gap], c.spec.width)
                                         : interlace_first(f.q[j], f.q[j + gap], c.spec.width);
      record_interlace(r, res, std::move(inputs));
    });
  }
}

void run_pencil(Case& c) {
  const std::size_t n = c.n;
  if (n < 5) return;
  const auto [jlo, jhi] = clamp_range(c.spec.j, 1, n - 4);
  const QFamily f(n, c.spec.perturb);
  for (std::size_t j = jlo; j <= jhi; ++j) {
    const std::uint64_t seed = case_seed(c.spec.seed, n, j);
    CheckReport& r = c.open({{"j", j}, {"trials", c.spec.trials}}, seed);
    guarded(r, [&](CheckReport& r) {
      if (gcd(f.q[j], f.q[j + 1]).deg() > 0) {
        r.status = Status::degenerate;
        r.detail = "Q_j and Q_{j+1} share a root";
        return;
      }
      const PencilResult res = pencil_probe(f.q[j], f.q[j + 1], c.spec.trials, seed);
      if (res.verdict == Verdict::holds) {
        r.status = Status::verified;
        r.detail = std::to_string(res.combinations_checked) + " combinations hyperbolic";
        return;
      }
      r.witnesses = {point("theta", res.refuting_pair->first), point("mu", res.refuting_pair->second)};
      refute(r, "theta*Q_j + mu*Q_{j+1} is not hyperbolic",
             {{"n", n}, {"j", j}, {"p", poly_json(f.q[j])}, {"q", poly_json(f.q[j + 1])}, {"seed", seed}});
    });
  }
}

// ---- Phi structure ----------------------------------------------------------

void run_eigenvalues(Case& c) {
  const std::size_t n = c.n;
  CheckReport& r = c.open(nlohmann::json::object(), c.spec.seed);
  guarded(r, [&](CheckReport& r) {
    const PhiMap m(n);
    const RationalMatrix& a = m.matrix();
    for (std::size_t k = 1; k < n; ++k) {
      const Rational lambda = phi_eigenvalue(n, k);
      RationalMatrix shifted = a;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
      const std::size_t dim = nullspace(shifted).size();
      const std::size_t expected = k == 1 ? 2 : 1;
      if (dim != expected) {
        refute(r, "eigenspace of lambda_" + std::to_string(k) + " has dimension " + std::to_string(dim),
               {{"n", n}, {"k", k}, {"lambda", to_string(lambda)}});
        return;
      }
      if (k > 1 && !(phi_eigenvalue(n, k - 1) < lambda)) {
        refute(r, "eigenvalues not increasing at k = " + std::to_string(k), {{"n", n}, {"k", k}});
        return;
      }
      r.witnesses.push_back(point("lambda_" + std::to_string(k), lambda));
    }
    for (std::size_t e : {n, n - 1}) {
      const RationalVector v = c_vector(n, power(x_plus_one(), e));
      if (a * v != v) {
        refute(r, "(x+1)^" + std::to_string(e) + " is not fixed by Phi", {{"n", n}});
        return;
      }
    }
    r.status = Status::verified;
  });
}

Polynomial random_self_reciprocal(Rng& rng, std::size_t n, int sign) {
  // (x+1) s with s of degree n-1 and x^{n-1} s(1/x) = sign * s.
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t mirror = n - 1 - i;
    if (mirror < i) c[i] = c[mirror] * sign;
    else if (mirror == i) c[i] = sign > 0 ? rng.rational(9, 5) : Rational(0);
    else c[i] = rng.nonzero(9, 5);
  }
  return x_plus_one() * Polynomial(std::move(c));
}

void run_centre_symmetry(Case& c) {
  const std::size_t n = c.n;
  const std::uint64_t seed = case_seed(c.spec.seed, n);
  CheckReport& r = c.open({{"trials", c.spec.trials}}, seed);
  guarded(r, [&](CheckReport& r) {
    const PhiMap m(n);
    const RationalMatrix& a = m.matrix();
    if (!a.is_centre_symmetric()) {
      refute(r, "matrix of Phi is not centre-symmetric", {{"n", n}});
      return;
    }
    for (std::size_t col = 0; col < n; ++col) {
      if (a(0, col) != (col == 0 ? 1 : 0)) {
        refute(r, "row 0 is not e_0", {{"n", n}});
        return;
      }
    }
    if (a * m.inverse_matrix() != RationalMatrix::identity(n)) {
      refute(r, "A * A^-1 != I", {{"n", n}});
      return;
    }
    Rng rng(seed);
    for (std::size_t t = 0; t < c.spec.trials; ++t) {
      const int sign = (t % 2 == 0) ? 1 : -1;
      const Polynomial p = random_self_reciprocal(rng, n, sign);
      const Polynomial image = apply_phi(m, p);
      const ReciprocalSign want = sign > 0 ? ReciprocalSign::plus : ReciprocalSign::minus;
      if (is_self_reciprocal(image, n) != want) {
        refute(r, "Phi does not preserve self-reciprocity", {{"n", n}, {"p", poly_json(p)}, {"image", poly_json(image)}});
        return;
      }
    }
    r.status = Status::verified;
  });
}

std::vector<Rational> elementary_symmetric(std::span<const Rational> a) {
  // coefficients of prod (1 + a_i t)
  std::vector<Rational> e{Rational(1)};
  for (const auto& v : a) {
    e.push_back(0);
    for (std::size_t k = e.size() - 1; k > 0; --k) e[k] += v * e[k - 1];
  }
  return e;
}

// Rational parameters of a factorization, expanded by multiplicity and sorted;
// nullopt if any parameter is irrational or complex.
std::optional<std::vector<Rational>> rational_params(const FactorizationResult& fr) {
  std::vector<Rational> out;
  for (const auto& fp : fr.finite_params) {
    const auto* r = std::get_if<Rational>(&fp.value);
    if (!r) return std::nullopt;
    for (std::size_t i = 0; i < fp.multiplicity; ++i) out.push_back(*r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void run_roundtrip(Case& c) {
  const std::size_t n = c.n;
  const std::uint64_t seed = case_seed(c.spec.seed, n);
  CheckReport& r = c.open({{"trials", c.spec.trials}}, seed);
  guarded(r, [&](CheckReport& r) {
    const PhiMap m(n);
    const CompositionContext ctx = m.context();
    Rng rng(seed);
    for (std::size_t t = 0; t < c.spec.trials; ++t) {
      // Every fourth trial carries K_inf factors.
      const std::size_t k_inf = (t % 4 == 3) ? static_cast<std::size_t>(rng.integer(1, static_cast<long>(n) - 2)) : 0;
      std::vector<Rational> a(n - 1 - k_inf);
      for (auto& v : a) v = rng.rational(9, 6);
      nlohmann::json inputs{{"n", n}, {"a", rationals_json(a)}, {"k_inf", k_inf}};

      const Polynomial p = reconstruct(ctx, a, k_inf);
      std::vector<Polynomial> factors;
      for (const auto& v : a) factors.push_back(composition_factor(ctx, v));
      for (std::size_t i = 0; i < k_inf; ++i) factors.push_back(k_infinity(ctx));
      if (p != css_compose_many(ctx, factors)) {
        refute(r, "reconstruct disagrees with css_compose_many", inputs);
        return;
      }
      if (k_inf == 0) {
        const RationalVector sigma = sigma_of(m, p);
        const std::vector<Rational> e = elementary_symmetric(a);
        for (std::size_t k = 1; k < n; ++k) {
          if (sigma[k - 1] != e[k]) {
            r.witnesses = {point("sigma_" + std::to_string(k), sigma[k - 1])};
            refute(r, "sigma_of does not recover e_" + std::to_string(k), inputs);
            return;
          }
        }
      }
      const FactorizationResult fr = factor_polynomial(m, p, c.spec.width);
      auto sorted = a;
      std::sort(sorted.begin(), sorted.end());
      const auto got = rational_params(fr);
      if (fr.k_inf_count != k_inf || !got || *got != sorted || fr.scalar != 1) {
        refute(r, "factor_polynomial does not recover the parameters", inputs);
        return;
      }
    }
    r.status = Status::verified;
  });
}

// ---- CSS propositions -------------------------------------------------------

void run_unit_law(Case& c) {
  const std::size_t n = c.n;
  const std::uint64_t seed = case_seed(c.spec.seed, n);
  CheckReport& r = c.open({{"trials", c.spec.trials}}, seed);
  guarded(r, [&](CheckReport& r) {
    const CompositionContext ctx(n);
    const Polynomial unit = composition_unit(ctx);
    Rng rng(seed);
    for (std::size_t t = 0; t < c.spec.trials; ++t) {
      const Polynomial p = rng.polynomial(static_cast<std::size_t>(rng.integer(0, static_cast<long>(n))), 20, 7);
      if (css_compose(ctx, p, unit) != p || css_compose(ctx, unit, p) != p) {
        refute(r, "(x+1)^n is not a unit", {{"n", n}, {"p", poly_json(p)}});
        return;
      }
    }
    const std::vector<Polynomial> ones(std::max<std::size_t>(n - 1, 1), composition_factor(ctx, 1));
    if (css_compose_many(ctx, ones) != unit) {
      refute(r, "K_1 * ... * K_1 != (x+1)^n", {{"n", n}});
      return;
    }
    // K_a shape: expanded form and sign changes.
    for (std::size_t t = 0; t < c.spec.trials; ++t) {
      const Rational a = (t % 2 == 0) ? Rational(-rng.positive(30, 7)) : rng.positive(30, 7);
      const Polynomial k = composition_factor(ctx, a);
      nlohmann::json inputs{{"n", n}, {"a", to_string(a)}};
      if (k != power(x_plus_one(), n - 1) * Polynomial({a, Rational(1)})) {
        refute(r, "K_a differs from (x+1)^{n-1}(x+a)", inputs);
        return;
      }
      const std::size_t changes = sign_changes(k);
      if (changes != (a < 0 ? 1u : 0u)) {
        r.witnesses = {point("sign_changes", Rational(static_cast<long>(changes)))};
        refute(r, "wrong number of sign changes in K_a", inputs);
        return;
      }
    }
    r.status = Status::verified;
  });
}

void run_multiplicity(Case& c) {
  const std::size_t n = c.n;
  const std::uint64_t seed = case_seed(c.spec.seed, n);
  CheckReport& r = c.open({{"trials", c.spec.trials}}, seed);
  guarded(r, [&](CheckReport& r) {
    const CompositionContext ctx(n);
    const long nn = static_cast<long>(n);
    Rng rng(seed);
    for (std::size_t t = 0; t < c.spec.trials; ++t) {
      const long mp = rng.integer(1, nn);
      const long mq = rng.integer(std::max(1L, nn - mp), nn);
      const Rational alpha = rng.nonzero(9, 4);
      const Rational beta = rng.nonzero(9, 4);
      const Polynomial p = power(Polynomial({alpha, Rational(1)}), mp) * rng.polynomial(n - mp, 9, 4);
      const Polynomial q = power(Polynomial({beta, Rational(1)}), mq) * rng.polynomial(n - mq, 9, 4);
      const Polynomial pq = css_compose(ctx, p, q);
      const std::size_t need = static_cast<std::size_t>(mp + mq) - n;
      const Rational root = -alpha * beta;
      if (pq.is_zero() || multiplicity_of_root(pq, root) < need) {
        refute(r, "root -x_P x_Q has too small a multiplicity",
               {{"n", n}, {"p", poly_json(p)}, {"q", poly_json(q)}, {"root", to_string(root)}, {"expected_at_least", need}});
        return;
      }
    }
    if (n >= 3) {
      for (std::size_t t = 0; t < c.spec.trials; ++t) {
        Rational a, b;
        do a = rng.rational(9, 4);
        while (a == 1);
        do b = rng.rational(9, 4);
        while (b == 1);
        const Polynomial pq = css_compose(ctx, composition_factor(ctx, a), composition_factor(ctx, b));
        const std::size_t got = multiplicity_of_root(pq, Rational(-1));
        if (got != n - 2) {
          r.witnesses = {point("multiplicity", Rational(static_cast<long>(got)))};
          refute(r, "K_a * K_b does not have -1 with multiplicity n-2",
                 {{"n", n}, {"a", to_string(a)}, {"b", to_string(b)}});
          return;
        }
      }
    }
    r.status = Status::verified;
  });
}

// Distinct rationals, none equal to -1.
std::vector<Rational> distinct_roots(Rng& rng, std::size_t count, bool positive) {
  std::vector<Rational> out;
  while (out.size() < count) {
    Rational v = rng.positive(12, 5);
    if (!positive) v = -v;
    if (v == -1 || std::find(out.begin(), out.end(), v) != out.end()) continue;
    out.push_back(v);
  }
  return out;
}

Polynomial parameter_polynomial(const PhiMap& m, const Polynomial& monic_p) {
  const RationalVector sigma = sigma_of(m, monic_p);
  const std::size_t f = m.n() - 1;
  std::vector<Rational> rc(f + 1);
  rc[f] = 1;
  for (std::size_t k = 1; k <= f; ++k) rc[f - k] = (k % 2 == 0) ? sigma[k - 1] : Rational(-sigma[k - 1]);
  return Polynomial(std::move(rc));
}

void run_posroots(Case& c) {
  const std::size_t n = c.n;
  const std::uint64_t seed = case_seed(c.spec.seed, n);
  CheckReport& r = c.open({{"trials", c.spec.trials}}, seed);
  guarded(r, [&](CheckReport& r) {
    const PhiMap m(n);
    Rng rng(seed);
    for (std::size_t t = 0; t < c.spec.trials; ++t) {
      const auto l = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1));
      std::vector<Rational> roots = distinct_roots(rng, l, true);
      for (const auto& v : distinct_roots(rng, n - 1 - l, false)) roots.push_back(v);
      Polynomial p = x_plus_one();
      for (const auto& v : roots) p = p * Polynomial::linear_factor(v);
      const Polynomial param = parameter_polynomial(m, p);
      const std::size_t negative = isolate_real_roots(param).negative;
      if (negative < l) {
        r.witnesses = {point("positive_roots", Rational(static_cast<long>(l))),
                       point("negative_parameters", Rational(static_cast<long>(negative)))};
        refute(r, "fewer distinct negative parameters than positive roots",
               {{"n", n}, {"p", poly_json(p)}, {"parameter_polynomial", poly_json(param)}});
        return;
      }
    }
    r.status = Status::verified;
  });
}

// b_i = -i / (n - i)
Rational b_value(std::size_t i, long n) {
  Rational b(-static_cast<long>(i), n - static_cast<long>(i));
  b.canonicalize();
  return b;
}

void run_propmult(Case& c) {
  const std::size_t n = c.n;
  const auto [mlo, mhi] = clamp_range(c.spec.j, 1, std::min<std::size_t>(3, n - 2));
  const PhiMap m(n);
  for (std::size_t mult = mlo; mult <= mhi; ++mult) {
    const std::uint64_t seed = case_seed(c.spec.seed, n, mult);
    CheckReport& r = c.open({{"m", mult}, {"trials", c.spec.trials}}, seed);
    guarded(r, [&](CheckReport& r) {
      const long nn = static_cast<long>(n);
      Rng rng(seed);
      for (std::size_t t = 0; t < c.spec.trials; ++t) {
        // x^m R, and a polynomial of degree n - m; both vanish at -1.
        Polynomial low = power(x_poly(), mult) * x_plus_one() * rng.polynomial(n - mult - 1, 9, 4);
        low = low.monic();
        const Polynomial param = parameter_polynomial(m, low);
        for (std::size_t i = 0; i < mult; ++i) {
          const Rational b = b_value(i, nn);
          if (multiplicity_of_root(param, b) == 0) {
            r.witnesses = {point("b_" + std::to_string(i), b)};
            refute(r, "b_" + std::to_string(i) + " is not a parameter of x^m R",
                   {{"n", n}, {"m", mult}, {"p", poly_json(low)}});
            return;
          }
        }
        const Polynomial short_p = x_plus_one() * rng.polynomial(n - mult - 1, 9, 4);
        const FactorizationResult fr = factor_polynomial(m, short_p, c.spec.width);
        // One K_inf is forced; a coincidental zero sigma_1 adds another.
        if (fr.k_inf_count < 1) {
          refute(r, "degree n-m polynomial has no K_inf factor",
                 {{"n", n}, {"m", mult}, {"p", poly_json(short_p)}, {"k_inf", fr.k_inf_count}});
          return;
        }
        for (std::size_t i = n - mult + 1; i < n; ++i) {
          const Rational b = b_value(i, nn);
          if (multiplicity_of_root(fr.parameter_polynomial, b) == 0) {
            r.witnesses = {point("b_" + std::to_string(i), b)};
            refute(r, "b_" + std::to_string(i) + " is not a parameter of a degree n-m polynomial",
                   {{"n", n}, {"m", mult}, {"p", poly_json(short_p)}});
            return;
          }
        }
      }
      r.status = Status::verified;
    });
  }
}

// ---- special polynomials ----------------------------------------------------

void run_gegenbauer(Case& c) {
  const std::size_t n = c.n;
  if (n < 3) return;
  {
    CheckReport& r = c.open({{"identity", true}}, c.spec.seed);
    guarded(r, [&](CheckReport& r) {
      const GegenbauerResult g = gegenbauer(n);
      const long nn = static_cast<long>(n);
      Rational expected(4 * nn - 6, nn * (nn - 1));
      expected.canonicalize();
      r.witnesses = {point("a_sq", g.a_sq)};
      if (g.a_sq != expected || !gegenbauer_identity_holds(g)) {
        refute(r, "n(n-1) G != (x^2 - a^2) G''", {{"n", n}, {"g", poly_json(g.poly)}});
        return;
      }
      if (!is_hyperbolic(g.poly) || square_free_part(g.poly).deg() != n) {
        refute(r, "G_n is not strictly hyperbolic", {{"n", n}, {"g", poly_json(g.poly)}});
        return;
      }
      r.status = Status::verified;
    });
  }
  if (n < 4) return;
  const auto [klo, khi] = clamp_range(c.spec.k, 0, n - 4);
  for (std::size_t k = klo; k <= khi; ++k) {
    CheckReport& r = c.open({{"k", k}}, c.spec.seed);
    guarded(r, [&](CheckReport& r) {
      const GegenbauerCheck g = gegenbauer_interlace_check(n, k, c.spec.width);
      nlohmann::json inputs{{"n", n}, {"k", k}, {"g", poly_json(gegenbauer(n).poly)}};
      if (!g.leibniz_identity) {
        refute(r, "Leibniz identity fails", inputs);
        return;
      }
      if (!g.extreme_roots_bounded) {
        refute(r, "a root of G_n lies outside [-a, a]", inputs);
        return;
      }
      record_interlace(r, g.interlace, inputs);
      if (r.status == Status::verified && !g.opposite_signs) {
        refute(r, "G^(k+1) and G^(k+2) do not have opposite signs at every zeta_i", inputs);
      }
    });
  }
}

void run_narayana_recurrence(Case& c) {
  const std::size_t n = c.n;
  if (n < 3) return;
  CheckReport& r = c.open(nlohmann::json::object(), c.spec.seed);
  guarded(r, [&](CheckReport& r) {
    const Polynomial nar = narayana(n);
    if (!narayana_recurrence_check(n)) {
      refute(r, "recurrence fails", {{"n", n}});
      return;
    }
    if (is_self_reciprocal(nar, n + 1) != ReciprocalSign::plus) {
      refute(r, "N_n is not self-reciprocal in degree n+1", {{"n", n}, {"N", poly_json(nar)}});
      return;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      if (nar.coeff(i).get_den() != 1 || nar.coeff(i) <= 0) {
        refute(r, "coefficient " + std::to_string(i) + " is not a positive integer", {{"n", n}, {"N", poly_json(nar)}});
        return;
      }
    }
    r.status = Status::verified;
  });
}

void run_narayana_interlace(Case& c) {
  const std::size_t n = c.n;
  if (n < 3) return;
  const NarayanaInterlacing both = narayana_interlacing(n, c.spec.width);
  for (const auto& [name, res] : {std::pair{"first", &both.first}, std::pair{"second", &both.second}}) {
    CheckReport& r = c.open({{"property", name}}, c.spec.seed);
    guarded(r, [&](CheckReport& r) {
      record_interlace(r, *res, {{"n", n}, {"property", name}});
    });
  }
}

void run_phi_convergence(Case& c) {
  const std::size_t n = c.n;
  if (n < 4) return;
  const auto [jlo, jhi] = clamp_range(c.spec.j, 1, n - 3);
  const PhiMap m(n);
  const EigenSystem es = eigensystem(m);
  for (std::size_t j = jlo; j <= jhi; ++j) {
    CheckReport& r = c.open({{"j", j}, {"iterations", c.spec.iterations}}, c.spec.seed);
    guarded(r, [&](CheckReport& r) {
      const Polynomial p = es.w(j) + es.w(j - 1);
      const ConvergenceProfile prof = convergence_profile(m, es, p, c.spec.iterations, j);
      const double first = prof.points.front().distance;
      const double last = prof.points.back().distance;
      r.detail = "distance " + std::to_string(first) + " -> " + std::to_string(last);
      if (last < 1e-3 && last < first) {
        r.status = Status::verified;
      } else {
        refute(r, "Phi^k(W_j + W_{j-1}) roots do not approach those of W_j: " + r.detail,
               {{"n", n}, {"j", j}, {"p", poly_json(p)}, {"iterations", c.spec.iterations}});
      }
    });
  }
}

// Grouped by j rather than n.
void run_q_narayana(const CheckSpec& spec, std::size_t j, std::vector<CheckReport>& out) {
  const std::size_t nlo = std::max(spec.n_min, j + 3);
  CheckReport r;
  r.check = spec.check;
  r.params = {{"j", j}, {"n_min", nlo}, {"n_max", spec.n_max}};
  if (!spec.label.empty()) r.params["label"] = spec.label;
  r.seed = spec.seed;
  guarded(r, [&](CheckReport& r) {
    if (spec.n_max < nlo) throw PreconditionError("empty n range for j = " + std::to_string(j));
    std::vector<std::size_t> ns;
    for (std::size_t n = nlo; n <= spec.n_max; ++n) ns.push_back(n);
    const auto dist = q_to_narayana_distance(j, ns);
    for (const auto& d : dist) r.witnesses.push_back(point("distance_n" + std::to_string(d.n), d.distance));
    const Rational& first = dist.front().distance;
    const Rational& last = dist.back().distance;
    const bool all_zero = std::all_of(dist.begin(), dist.end(), [](const auto& d) { return d.distance == 0; });
    const bool ok = (j == 1) ? all_zero : (last < first);
    if (ok) {
      r.status = Status::verified;
    } else {
      refute(r, "distance to N_{j+1} did not decrease", {{"j", j}, {"n_min", nlo}, {"n_max", spec.n_max}});
    }
  });
  out.push_back(std::move(r));
}

std::vector<CheckReport> run_task(const CheckSpec& spec, std::size_t key) {
  if (spec.check == CheckId::q_narayana_convergence) {
    std::vector<CheckReport> out;
    run_q_narayana(spec, key, out);
    return out;
  }
  Case c{spec, key, {}};
  try {
    switch (spec.check) {
      case CheckId::thm1: run_theorem(c, false); break;
      case CheckId::thm2: run_theorem(c, true); break;
      case CheckId::pencil_probe: run_pencil(c); break;
      case CheckId::eigenvalues: run_eigenvalues(c); break;
      case CheckId::centre_symmetry: run_centre_symmetry(c); break;
      case CheckId::roundtrip: run_roundtrip(c); break;
      case CheckId::unit_law: run_unit_law(c); break;
      case CheckId::multiplicity: run_multiplicity(c); break;
      case CheckId::posroots: run_posroots(c); break;
      case CheckId::propmult: run_propmult(c); break;
      case CheckId::gegenbauer: run_gegenbauer(c); break;
      case CheckId::narayana_recurrence: run_narayana_recurrence(c); break;
      case CheckId::narayana_interlace: run_narayana_interlace(c); break;
      case CheckId::phi_convergence: run_phi_convergence(c); break;
      case CheckId::q_narayana_convergence: break;
    }
  } catch (const std::exception& e) {
    // Setup shared by the whole n (e.g. the eigensystem) failed.
    CheckReport& r = c.open(nlohmann::json::object(), spec.seed);
    r.status = Status::error;
    r.detail = e.what();
  }
  return std::move(c.out);
}

}  // namespace

std::vector<CheckReport> run_suite(std::span<const CheckSpec> specs, std::size_t threads) {
  struct Task {
    std::size_t spec;
    std::size_t key;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const CheckSpec& spec = specs[s];
    if (spec.check == CheckId::q_narayana_convergence) {
      const auto [jlo, jhi] = clamp_range(spec.j, 1, 4);
      for (std::size_t j = jlo; j <= jhi; ++j) tasks.push_back({s, j});
    } else {
      for (std::size_t n = spec.n_min; n <= spec.n_max; ++n) tasks.push_back({s, n});
    }
  }
  std::vector<std::vector<CheckReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = run_task(specs[tasks[i].spec], tasks[i].key);
    }
  };
  const std::size_t count = std::max<std::size_t>(1, std::min(threads, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<CheckReport> out;
  for (auto& group : results) {
    for (auto& r : group) out.push_back(std::move(r));
  }
  return out;
}

int suite_exit_code(std::span<const CheckReport> reports) {
  int code = 0;
  for (const auto& r : reports) {
    if (r.status == Status::error) return 2;
    if (r.status != Status::verified) code = 1;
  }
  return code;
}

nlohmann::json to_json(const CheckReport& r, bool with_timing) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& iv : r.witnesses) w.push_back(to_json(iv));
  nlohmann::json out{{"check", to_string(r.check)},
                     {"params", r.params},
                     {"status", to_string(r.status)},
                     {"witnesses", w},
                     {"seed", r.seed}};
  if (with_timing) out["wall_ms"] = r.wall_ms;
  if (!r.detail.empty()) out["detail"] = r.detail;
  if (!r.counterexample.is_null()) out["counterexample"] = r.counterexample;
  return out;
}

std::string report_json(std::span<const CheckReport> reports, bool with_timing) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r, with_timing));
  return arr.dump(2) + "\n";
}

// ---- config -------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_size(const std::string& key, const std::string& value, std::size_t line) {
  try {
    std::size_t pos = 0;
    if (value.empty() || value[0] == '-') throw std::invalid_argument(value);
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError("line " + std::to_string(line) + ": " + key + " expects a nonnegative integer, got '" + value + "'");
  }
}

}  // namespace

std::vector<CheckSpec> parse_config(std::string_view text) {
  std::vector<CheckSpec> specs;
  struct Pending {
    std::optional<std::size_t> j_min, j_max, k_min, k_max, pq, pc;
    std::optional<Rational> pd;
    bool has_check = false;
    std::size_t header_line = 0;
  };
  std::vector<Pending> pending;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("line " + std::to_string(line_no) + ": unterminated section header");
      specs.emplace_back();
      specs.back().label = trim(std::string_view(line).substr(1, line.size() - 2));
      pending.emplace_back();
      pending.back().header_line = line_no;
      continue;
    }
    if (specs.empty()) throw ParseError("line " + std::to_string(line_no) + ": key outside a section");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    CheckSpec& s = specs.back();
    Pending& p = pending.back();
    try {
      if (key == "check") {
        s.check = parse_check_id(value);
        p.has_check = true;
      } else if (key == "n_min") s.n_min = parse_size(key, value, line_no);
      else if (key == "n_max") s.n_max = parse_size(key, value, line_no);
      else if (key == "j_min") p.j_min = parse_size(key, value, line_no);
      else if (key == "j_max") p.j_max = parse_size(key, value, line_no);
      else if (key == "k_min") p.k_min = parse_size(key, value, line_no);
      else if (key == "k_max") p.k_max = parse_size(key, value, line_no);
      else if (key == "seed") s.seed = parse_size(key, value, line_no);
      else if (key == "width") s.width = parse_rational(value);
      else if (key == "trials") s.trials = parse_size(key, value, line_no);
      else if (key == "iterations") s.iterations = parse_size(key, value, line_no);
      else if (key == "perturb_q") p.pq = parse_size(key, value, line_no);
      else if (key == "perturb_coeff") p.pc = parse_size(key, value, line_no);
      else if (key == "perturb_delta") p.pd = parse_rational(value);
      else throw ParseError("unknown key '" + key + "'");
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw ParseError("line " + std::to_string(line_no) + ": " + msg);
    }
  }

  for (std::size_t i = 0; i < specs.size(); ++i) {
    CheckSpec& s = specs[i];
    const Pending& p = pending[i];
    const std::string where = "section at line " + std::to_string(p.header_line);
    if (!p.has_check) throw ParseError(where + ": missing 'check'");
    if (s.n_min > s.n_max) throw ParseError(where + ": n_min > n_max");
    if (s.width <= 0) throw ParseError(where + ": width must be positive");
    auto range = [&](const std::optional<std::size_t>& lo, const std::optional<std::size_t>& hi,
                     const char* name) -> std::optional<IndexRange> {
      if (!lo && !hi) return std::nullopt;
      if (!lo || !hi) throw ParseError(where + ": " + name + "_min and " + name + "_max must be given together");
      if (*lo > *hi) throw ParseError(where + ": " + name + "_min > " + name + "_max");
      return IndexRange{*lo, *hi};
    };
    s.j = range(p.j_min, p.j_max, "j");
    s.k = range(p.k_min, p.k_max, "k");
    if (p.pq || p.pc || p.pd) {
      if (!p.pq || !p.pc || !p.pd) throw ParseError(where + ": perturb_q, perturb_coeff and perturb_delta go together");
      s.perturb = Perturbation{*p.pq, *p.pc, *p.pd};
    }
  }
  return specs;
}

std::string write_config(std::span<const CheckSpec> specs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const CheckSpec& s = specs[i];
    if (i > 0) out << '\n';
    out << '[' << s.label << "]\n";
    out << "check = " << to_string(s.check) << '\n';
    out << "n_min = " << s.n_min << '\n';
    out << "n_max = " << s.n_max << '\n';
    if (s.j) out << "j_min = " << s.j->lo << "\nj_max = " << s.j->hi << '\n';
    if (s.k) out << "k_min = " << s.k->lo << "\nk_max = " << s.k->hi << '\n';
    out << "seed = " << s.seed << '\n';
    out << "width = " << to_string(s.width) << '\n';
    out << "trials = " << s.trials << '\n';
    out << "iterations = " << s.iterations << '\n';
    if (s.perturb) {
      out << "perturb_q = " << s.perturb->q_index << '\n';
      out << "perturb_coeff = " << s.perturb->coeff << '\n';
      out << "perturb_delta = " << to_string(s.perturb->delta) << '\n';
    }
  }
  return out.str();
}

}  // namespace sszego
