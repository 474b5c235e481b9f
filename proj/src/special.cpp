#include "sszego/special.hpp"

#include <algorithm>

#include "sszego/css.hpp"
#include "sszego/errors.hpp"
#include "sszego/phi.hpp"

namespace sszego {

GegenbauerResult gegenbauer(std::size_t n) {
  if (n < 3) throw PreconditionError("gegenbauer requires n >= 3, got " + std::to_string(n));
  const long nn = static_cast<long>(n);
  GegenbauerResult out;
  out.n = n;
  out.a_sq = Rational(4 * nn - 6, nn * (nn - 1));
  out.a_sq.canonicalize();
  // g_k (n(n-1) - k(k-1)) = -a^2 (k+2)(k+1) g_{k+2}, downward from g_n = 1, g_{n-1} = 0.
  std::vector<Rational> g(n + 1);
  g[n] = 1;
  for (long k = nn - 2; k >= 0; --k) {
    const Rational denom(nn * (nn - 1) - k * (k - 1));
    g[k] = -out.a_sq * Rational((k + 2) * (k + 1)) * g[k + 2] / denom;
  }
  out.poly = Polynomial(std::move(g));
  if (out.poly.coeff(n - 2) != -1) throw InvariantViolation("Gegenbauer normalization failed");
  return out;
}

namespace {

Polynomial x_squared_minus(const Rational& c) { return Polynomial({Rational(-c), Rational(0), Rational(1)}); }

}  // namespace

bool gegenbauer_identity_holds(const GegenbauerResult& g) {
  const long n = static_cast<long>(g.n);
  return g.poly * Rational(n * (n - 1)) == x_squared_minus(g.a_sq) * derivative(g.poly, 2);
}

bool gegenbauer_leibniz_holds(const GegenbauerResult& g, std::size_t k) {
  const long n = static_cast<long>(g.n);
  const long kk = static_cast<long>(k);
  const Polynomial gk = derivative(g.poly, k);
  const Polynomial lhs = gk * Rational(n * (n - 1));
  const Polynomial rhs = x_squared_minus(g.a_sq) * derivative(g.poly, k + 2) +
                         Polynomial::monomial(Rational(2 * kk), 1) * derivative(g.poly, k + 1) +
                         gk * Rational(kk * (kk - 1));
  return lhs == rhs;
}

namespace {

// Interlacing witnesses come back in reflected coordinates; map them to the
// negative axis with the original (ascending) numbering.
std::vector<NamedInterval> unreflect(const std::vector<NamedInterval>& ws, const std::string& from, const std::string& to,
                                     std::size_t count) {
  std::vector<NamedInterval> out;
  for (const auto& w : ws) {
    if (w.name.rfind(from + "_", 0) != 0) continue;
    const std::size_t t = std::stoul(w.name.substr(from.size() + 1));
    out.push_back({to + "_" + std::to_string(count + 1 - t), Rational(-w.hi), Rational(-w.lo)});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// Sign of f at the root isolated by iv (0 if f vanishes there).
int sign_near(const Polynomial& f, IsolatingInterval iv) {
  if (iv.is_exact()) return f.sign_at(iv.lo());
  const Polynomial shared = gcd(f, iv.target());
  if (shared.deg() > 0 && shared.sign_at(iv.lo()) * shared.sign_at(iv.hi()) < 0) return 0;
  const SturmSequence seq(f);
  while (f.sign_at(iv.lo()) == 0 || seq.count_in(iv.lo(), iv.hi()) != 0) {
    iv = iv.halved();
    if (iv.is_exact()) return f.sign_at(iv.lo());
  }
  return f.sign_at(iv.lo());
}

// Every real root x of f satisfies x^2 < bound_sq; f must not vanish at
// +-sqrt(bound_sq).
bool roots_strictly_inside(const Polynomial& f, const Rational& bound_sq) {
  for (auto iv : isolate_real_roots(f).roots) {
    while (true) {
      const Rational lo_sq = iv.lo() * iv.lo();
      const Rational hi_sq = iv.hi() * iv.hi();
      if (lo_sq < bound_sq && hi_sq < bound_sq) break;
      if ((iv.lo() >= 0 && lo_sq > bound_sq) || (iv.hi() <= 0 && hi_sq > bound_sq)) return false;
      iv = iv.halved();
    }
  }
  return true;
}

}  // namespace

GegenbauerCheck gegenbauer_interlace_check(std::size_t n, std::size_t k, const Rational& witness_width) {
  if (n < 4 || k > n - 4) {
    throw PreconditionError("gegenbauer_interlace_check requires 0 <= k <= n-4 (n = " + std::to_string(n) +
                            ", k = " + std::to_string(k) + ")");
  }
  const GegenbauerResult g = gegenbauer(n);
  const Polynomial gk = derivative(g.poly, k);
  const Polynomial gk1 = derivative(g.poly, k + 1);
  const Polynomial gk2 = derivative(g.poly, k + 2);
  GegenbauerCheck out;
  out.leibniz_identity = gegenbauer_leibniz_holds(g, k);

  const std::size_t l = (n - k) / 2;
  const InterlaceResult reflected = interlace_first(gk2.reflect(), gk.reflect(), witness_width);
  out.interlace.verdict = reflected.verdict;
  out.interlace.detail = reflected.detail;
  if (reflected.verdict == Verdict::degenerate) {
    out.interlace.witnesses = unreflect(reflected.witnesses, "common", "common", reflected.witnesses.size());
    out.interlace.detail = "G^(k) and G^(k+2) share negative roots";
  } else {
    out.interlace.witnesses = unreflect(reflected.witnesses, "y", "zeta", l);
    auto mus = unreflect(reflected.witnesses, "x", "mu", l - 1);
    out.interlace.witnesses.insert(out.interlace.witnesses.end(), mus.begin(), mus.end());
  }

  out.opposite_signs = true;
  const RootProfile zetas = isolate_positive_roots(gk.reflect());
  for (const auto& iv : zetas.roots) {
    // iv isolates -zeta; f(-x) evaluated there is f(zeta).
    const int s1 = sign_near(gk1.reflect(), iv);
    const int s2 = sign_near(gk2.reflect(), iv);
    if (s1 == 0 || s2 == 0 || s1 != -s2) out.opposite_signs = false;
  }

  // G = (x^2 - a^2) G'' / (n(n-1)), so +-a are roots and the others are the
  // roots of G''; those must lie strictly inside (-a, a).
  const Polynomial edge = x_squared_minus(g.a_sq);
  out.extreme_roots_bounded = divides(edge, g.poly) && gcd(edge, derivative(g.poly, 2)).deg() == 0 &&
                              roots_strictly_inside(derivative(g.poly, 2), g.a_sq);
  return out;
}

Polynomial narayana(std::size_t n) {
  if (n < 1) throw PreconditionError("narayana requires n >= 1");
  const long nn = static_cast<long>(n);
  std::vector<Rational> c(n + 1);
  for (long i = 1; i <= nn; ++i) c[i] = binomial(nn, i) * binomial(nn, i - 1) / Rational(nn);
  return Polynomial(std::move(c));
}

bool narayana_recurrence_check(std::size_t n) {
  if (n < 3) throw PreconditionError("narayana recurrence requires n >= 3");
  const long nn = static_cast<long>(n);
  const Polynomial one_plus_x({Rational(1), Rational(1)});
  const Polynomial x_minus_one_sq({Rational(1), Rational(-2), Rational(1)});
  const Polynomial lhs = narayana(n) * Rational(nn + 1);
  const Polynomial rhs = Rational(2 * nn - 1) * (one_plus_x * narayana(n - 1)) -
                         Rational(nn - 2) * (x_minus_one_sq * narayana(n - 2));
  return lhs == rhs;
}

NarayanaInterlacing narayana_interlacing(std::size_t n, const Rational& witness_width) {
  if (n < 3) throw PreconditionError("narayana interlacing requires n >= 3");
  const Polynomial x = Polynomial::monomial(1, 1);
  auto positive_form = [&](std::size_t m) { return exact_div(narayana(m), x).reflect(); };
  NarayanaInterlacing out;
  out.first = interlace_first(positive_form(n - 1), positive_form(n), witness_width);
  out.second = interlace_second(positive_form(n - 2), positive_form(n), witness_width);
  return out;
}

std::vector<QNarayanaDistance> q_to_narayana_distance(std::size_t j, std::span<const std::size_t> ns) {
  if (j < 1) throw PreconditionError("q_to_narayana_distance requires j >= 1");
  const Polynomial target = narayana(j + 1);
  std::vector<QNarayanaDistance> out;
  for (std::size_t n : ns) {
    if (n < j + 3) {
      throw PreconditionError("n = " + std::to_string(n) + " is too small for Q_" + std::to_string(j));
    }
    const EigenSystem es = eigensystem(PhiMap(n));
    Polynomial cand = Polynomial::monomial(1, 1) * es.q(j).reflect();
    if (cand.leading() < 0) cand = -cand;
    Rational worst = 0;
    for (std::size_t i = 0; i <= j + 1; ++i) worst = std::max(worst, Rational(abs(cand.coeff(i) - target.coeff(i))));
    out.push_back({n, worst, worst.get_d()});
  }
  return out;
}

}  // namespace sszego
