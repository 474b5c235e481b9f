#include "sszego/roots.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sszego/errors.hpp"

namespace sszego {

// ---------------------------------------------------------------------------
// Sturm sequences

int integer_sign_at(const Polynomial& p, const Rational& x) {
  const auto c = p.coeffs();
  if (c.empty()) return 0;
  for (const auto& ci : c) {
    if (ci.get_den() != 1) return p.sign_at(x);
  }
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  // b^d p(a/b) = sum c_i a^i b^(d-i), same sign as p(x) because b > 0.
  Integer acc = c.back().get_num();
  Integer bp = 1;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    bp *= b;
    acc *= a;
    if (c[i] != 0) acc += c[i].get_num() * bp;
  }
  return sgn(acc);
}

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("Sturm sequence of the zero polynomial");
  Polynomial f = square_free_part(p).primitive();
  chain_.push_back(f);
  if (f.deg() == 0) return;
  chain_.push_back(derivative(f).primitive());
  while (chain_.back().deg() > 0) {
    Polynomial r = divrem(chain_[chain_.size() - 2], chain_.back()).remainder;
    if (r.is_zero()) throw InvariantViolation("Sturm sequence of a square-free polynomial hit a zero remainder");
    chain_.push_back((-r).primitive());
  }
}

std::size_t SturmSequence::variations_at(const Rational& x) const {
  std::size_t v = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = integer_sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t SturmSequence::variations_at_plus_infinity() const {
  std::size_t v = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = sgn(q.leading());
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t SturmSequence::variations_at_minus_infinity() const {
  std::size_t v = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = (q.deg() % 2 == 0) ? sgn(q.leading()) : -sgn(q.leading());
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t SturmSequence::count_in(const Rational& a, const Rational& b) const {
  if (!(a < b)) return 0;
  const auto va = variations_at(a);
  const auto vb = variations_at(b);
  return va > vb ? va - vb : 0;
}

std::size_t SturmSequence::count_real() const {
  return variations_at_minus_infinity() - variations_at_plus_infinity();
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) { return SturmSequence(p).chain(); }

Rational cauchy_bound(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("root bound of the zero polynomial");
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) m = std::max(m, Rational(abs(p.coeffs()[i]) / lead));
  return m + 1;
}

// ---------------------------------------------------------------------------
// Isolating intervals

IsolatingInterval::IsolatingInterval(std::shared_ptr<const Polynomial> target, Rational lo, Rational hi)
    : target_(std::move(target)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw PreconditionError("isolating interval with lo > hi");
}

double IsolatingInterval::approx() const { return Rational((lo_ + hi_) / 2).get_d(); }

IsolatingInterval IsolatingInterval::halved() const {
  if (is_exact()) return *this;
  Rational mid = (lo_ + hi_) / 2;
  const int sm = integer_sign_at(*target_, mid);
  if (sm == 0) return IsolatingInterval(target_, mid, mid);
  if (sm == integer_sign_at(*target_, lo_)) return IsolatingInterval(target_, std::move(mid), hi_);
  return IsolatingInterval(target_, lo_, std::move(mid));
}

IsolatingInterval refine(const IsolatingInterval& iv, const Rational& width) {
  if (width <= 0) throw PreconditionError("refinement width must be positive");
  IsolatingInterval cur = iv;
  while (cur.width() > width) cur = cur.halved();
  return cur;
}

bool certified_less(const IsolatingInterval& a, const IsolatingInterval& b) {
  if (a.is_exact() && b.is_exact()) return a.lo() < b.lo();
  return a.hi() <= b.lo();
}

namespace {

bool same_exact_point(const IsolatingInterval& a, const IsolatingInterval& b) {
  return a.is_exact() && b.is_exact() && a.lo() == b.lo();
}

bool disjoint(const IsolatingInterval& a, const IsolatingInterval& b) {
  return certified_less(a, b) || certified_less(b, a);
}

// Halve the intervals of two root families until every cross pair is disjoint
// or the same exact point. Terminates when the families share no root other
// than exact points.
void separate(std::vector<IsolatingInterval>& a, std::vector<IsolatingInterval>& b) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& x : a) {
      for (auto& y : b) {
        while (!disjoint(x, y) && !same_exact_point(x, y)) {
          if (x.width() >= y.width() && !x.is_exact()) {
            x = x.halved();
          } else if (!y.is_exact()) {
            y = y.halved();
          } else {
            x = x.halved();
          }
          changed = true;
        }
      }
    }
  }
}

// Open radius around an exact root r inside (lo, hi) that contains no other root.
Rational clearance(const Polynomial& f, const SturmSequence& seq, const Rational& r, const Rational& lo,
                   const Rational& hi) {
  Rational eps = std::min(Rational(r - lo), Rational(hi - r)) / 2;
  while (integer_sign_at(f, r - eps) == 0 || integer_sign_at(f, r + eps) == 0 || seq.count_in(r - eps, r + eps) != 1) {
    eps /= 2;
  }
  return eps;
}

void isolate_segment(const std::shared_ptr<const Polynomial>& f, const SturmSequence& seq, Rational lo, Rational hi,
                     std::vector<IsolatingInterval>& out) {
  struct Job {
    Rational lo, hi;
    std::size_t count;
  };
  std::vector<Job> stack;
  if (const auto c = seq.count_in(lo, hi); c > 0) stack.push_back({lo, hi, c});
  while (!stack.empty()) {
    Job job = std::move(stack.back());
    stack.pop_back();
    if (job.count == 1) {
      out.emplace_back(f, job.lo, job.hi);
      continue;
    }
    const Rational mid = (job.lo + job.hi) / 2;
    if (integer_sign_at(*f, mid) == 0) {
      out.emplace_back(f, mid, mid);
      const Rational eps = clearance(*f, seq, mid, job.lo, job.hi);
      const Rational left_hi = mid - eps;
      const Rational right_lo = mid + eps;
      if (const auto c = seq.count_in(job.lo, left_hi); c > 0) stack.push_back({job.lo, left_hi, c});
      if (const auto c = seq.count_in(right_lo, job.hi); c > 0) stack.push_back({right_lo, job.hi, c});
      continue;
    }
    if (const auto c = seq.count_in(job.lo, mid); c > 0) stack.push_back({job.lo, mid, c});
    if (const auto c = seq.count_in(mid, job.hi); c > 0) stack.push_back({mid, job.hi, c});
  }
}

}  // namespace

std::size_t RootProfile::total_multiplicity() const {
  std::size_t s = 0;
  for (auto m : multiplicities) s += m;
  return s;
}

RootProfile isolate_real_roots(const Polynomial& p, std::span<const Rational> breakpoints) {
  if (p.is_zero()) throw PreconditionError("root isolation of the zero polynomial");
  RootProfile profile;
  profile.degree = p.deg();
  auto f = std::make_shared<const Polynomial>(square_free_part(p).primitive());
  profile.square_free = *f;
  if (f->deg() == 0) return profile;

  const SturmSequence seq(*f);
  const Rational bound = cauchy_bound(*f);
  std::vector<Rational> breaks{Rational(0)};
  for (const auto& b : breakpoints) {
    if (-bound < b && b < bound) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<IsolatingInterval> found;
  Rational cur = -bound;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const Rational& b = breaks[i];
    if (integer_sign_at(*f, b) == 0) {
      const Rational next = i + 1 < breaks.size() ? breaks[i + 1] : bound;
      const Rational eps = clearance(*f, seq, b, cur, next);
      isolate_segment(f, seq, cur, b - eps, found);
      found.emplace_back(f, b, b);
      cur = b + eps;
    } else {
      isolate_segment(f, seq, cur, b, found);
      cur = b;
    }
  }
  isolate_segment(f, seq, cur, bound, found);
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.lo() < b.lo(); });

  const auto factors = square_free_decomposition(p);
  for (const auto& iv : found) {
    std::size_t mult = 0;
    for (const auto& [g, m] : factors) {
      const bool hit = iv.is_exact() ? g(iv.lo()) == 0 : g.sign_at(iv.lo()) * g.sign_at(iv.hi()) < 0;
      if (hit) {
        mult = m;
        break;
      }
    }
    if (mult == 0) throw InvariantViolation("root not attributed to any square-free factor");
    profile.multiplicities.push_back(mult);
    if (iv.is_exact() && iv.lo() == 0) {
      ++profile.zero;
    } else if (iv.lo() >= 0) {
      ++profile.positive;
    } else {
      ++profile.negative;
    }
  }
  profile.roots = std::move(found);
  return profile;
}

RootProfile isolate_positive_roots(const Polynomial& p) {
  const Rational one[] = {Rational(1)};
  RootProfile all = isolate_real_roots(p, one);
  RootProfile out;
  out.square_free = all.square_free;
  out.degree = all.degree;
  for (std::size_t i = 0; i < all.roots.size(); ++i) {
    const auto& iv = all.roots[i];
    if (iv.lo() > 0 || (iv.lo() == 0 && !iv.is_exact())) {
      out.roots.push_back(iv);
      out.multiplicities.push_back(all.multiplicities[i]);
    }
  }
  out.positive = out.roots.size();
  return out;
}

bool is_hyperbolic(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("hyperbolicity of the zero polynomial");
  std::size_t real_with_mult = 0;
  for (const auto& [g, m] : square_free_decomposition(p)) real_with_mult += m * SturmSequence(g).count_real();
  return real_with_mult == p.deg();
}

// ---------------------------------------------------------------------------
// Interlacing

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::degenerate:
      return "degenerate";
  }
  return "unknown";
}

nlohmann::json to_json(const NamedInterval& w) {
  return {{"name", w.name}, {"lo", to_string(w.lo)}, {"hi", to_string(w.hi)}};
}

nlohmann::json to_json(const InterlaceResult& r) {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : r.witnesses) ws.push_back(to_json(w));
  return {{"verdict", to_string(r.verdict)}, {"witnesses", ws}, {"detail", r.detail}};
}

namespace {

std::vector<IsolatingInterval> simple_positive_roots(const Polynomial& p, const char* label) {
  if (p.is_zero()) throw PreconditionError(std::string("interlacing: ") + label + " is the zero polynomial");
  RootProfile prof = isolate_positive_roots(p);
  for (auto m : prof.multiplicities) {
    if (m != 1) throw PreconditionError(std::string("interlacing: ") + label + " has a multiple positive root");
  }
  return std::move(prof.roots);
}

void add_witnesses(InterlaceResult& r, const std::string& prefix, const std::vector<IsolatingInterval>& roots,
                   const Rational& width) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const IsolatingInterval w = refine(roots[i], width);
    r.witnesses.push_back({prefix + "_" + std::to_string(i + 1), w.lo(), w.hi()});
  }
}

// Common positive roots of p and q, excluding 1 when `ignore_one` is set.
std::vector<IsolatingInterval> shared_positive_roots(const Polynomial& p, const Polynomial& q, bool ignore_one) {
  Polynomial g = gcd(p, q);
  if (ignore_one) {
    const Polynomial x_minus_one = Polynomial::linear_factor(1);
    while (g.deg() > 0 && g(Rational(1)) == 0) g = exact_div(g, x_minus_one);
  }
  if (g.deg() == 0) return {};
  return isolate_positive_roots(g).roots;
}

}  // namespace

InterlaceResult interlace_first(const Polynomial& p, const Polynomial& q, const Rational& witness_width) {
  auto xs = simple_positive_roots(p, "p");
  auto ys = simple_positive_roots(q, "q");
  if (ys.size() != xs.size() + 1) {
    throw PreconditionError("interlace_first: expected " + std::to_string(xs.size() + 1) + " positive roots of q, found " +
                            std::to_string(ys.size()));
  }
  InterlaceResult out;
  if (const auto common = shared_positive_roots(p, q, false); !common.empty()) {
    out.verdict = Verdict::degenerate;
    out.detail = "p and q share a positive root";
    add_witnesses(out, "common", common, witness_width);
    return out;
  }
  separate(xs, ys);
  out.verdict = Verdict::holds;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!certified_less(ys[i], xs[i]) || !certified_less(xs[i], ys[i + 1])) {
      out.verdict = Verdict::fails;
      out.detail = "x_" + std::to_string(i + 1) + " is not between y_" + std::to_string(i + 1) + " and y_" +
                   std::to_string(i + 2);
      break;
    }
  }
  add_witnesses(out, "x", xs, witness_width);
  add_witnesses(out, "y", ys, witness_width);
  return out;
}

InterlaceResult interlace_second(const Polynomial& p, const Polynomial& r, const Rational& witness_width) {
  auto xs = simple_positive_roots(p, "p");
  auto zs = simple_positive_roots(r, "r");
  const std::size_t j = xs.size();
  if (zs.size() != j + 2) {
    throw PreconditionError("interlace_second: expected " + std::to_string(j + 2) + " positive roots of r, found " +
                            std::to_string(zs.size()));
  }
  InterlaceResult out;
  if (const auto common = shared_positive_roots(p, r, true); !common.empty()) {
    out.verdict = Verdict::degenerate;
    out.detail = "p and r share a positive root other than 1";
    add_witnesses(out, "common", common, witness_width);
    return out;
  }
  separate(xs, zs);
  out.verdict = Verdict::holds;
  auto fail = [&](std::string why) {
    if (out.verdict == Verdict::holds) {
      out.verdict = Verdict::fails;
      out.detail = std::move(why);
    }
  };
  if (j % 2 == 1) {
    const Rational one = 1;
    const auto& mid_x = xs[(j - 1) / 2];
    const auto& mid_z = zs[(j + 1) / 2];
    if (p(one) != 0 || r(one) != 0) fail("odd j but p(1) or r(1) is nonzero");
    if (!(mid_x.is_exact() && mid_x.lo() == 1)) fail("x_" + std::to_string((j + 1) / 2) + " is not 1");
    if (!(mid_z.is_exact() && mid_z.lo() == 1)) fail("z_" + std::to_string((j + 3) / 2) + " is not 1");
  }
  for (std::size_t i = 1; i <= j / 2; ++i) {
    if (!certified_less(zs[i - 1], xs[i - 1]) || !certified_less(xs[i - 1], zs[i])) {
      fail("x_" + std::to_string(i) + " not in (z_" + std::to_string(i) + ", z_" + std::to_string(i + 1) + ")");
    }
    const std::size_t xi = j + 1 - i;  // 1-based
    if (!certified_less(zs[j + 1 - i], xs[xi - 1]) || !certified_less(xs[xi - 1], zs[j + 2 - i])) {
      fail("x_" + std::to_string(xi) + " not in (z_" + std::to_string(j + 2 - i) + ", z_" + std::to_string(j + 3 - i) +
           ")");
    }
  }
  add_witnesses(out, "x", xs, witness_width);
  add_witnesses(out, "z", zs, witness_width);
  return out;
}

// ---------------------------------------------------------------------------
// Pencil probe

PencilResult pencil_probe(const Polynomial& p, const Polynomial& q, std::size_t trials, std::uint64_t seed) {
  if (p.is_zero() || q.is_zero()) throw PreconditionError("pencil_probe: zero polynomial");
  if (gcd(p, q).deg() > 0) throw PreconditionError("pencil_probe: p and q share a root");
  PencilResult out;
  out.seed = seed;
  std::vector<std::pair<Rational, Rational>> pairs{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  std::mt19937_64 gen(seed);
  // Raw engine output keeps the sampled pairs identical across standard libraries.
  auto draw = [&gen]() -> Rational {
    const long num = static_cast<long>(gen() % 2001) - 1000;
    const long den = static_cast<long>(gen() % 1000) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
  };
  while (pairs.size() < trials + 2) {
    Rational theta = draw();
    Rational mu = draw();
    if (theta == 0 && mu == 0) continue;
    pairs.emplace_back(std::move(theta), std::move(mu));
  }
  for (const auto& [theta, mu] : pairs) {
    ++out.combinations_checked;
    const Polynomial comb = theta * p + mu * q;
    if (comb.is_zero() || comb.deg() == 0) continue;
    if (!is_hyperbolic(comb)) {
      out.verdict = Verdict::fails;
      out.refuting_pair = std::make_pair(theta, mu);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich

namespace {

using cd = std::complex<double>;
using cld = std::complex<long double>;

cld horner(const std::vector<long double>& a, cld z) {
  cld acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

long double magnitude_scale(const std::vector<long double>& a, cld z) {
  long double acc = 0;
  const long double r = std::abs(z);
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * r + std::fabs(*it);
  return acc;
}

}  // namespace

std::vector<ComplexRoot> aberth_roots(const Polynomial& p, double tol) {
  if (p.is_zero()) throw PreconditionError("aberth_roots of the zero polynomial");
  if (!(tol > 0)) throw PreconditionError("aberth_roots tolerance must be positive");
  Polynomial f = square_free_part(p);
  // An exact zero root would defeat the relative residual test below.
  std::vector<ComplexRoot> zero;
  if (f.coeff(0) == 0) {
    f = exact_div(f, Polynomial::monomial(1, 1));
    zero.push_back({cd(0, 0), 0, 0});
  }
  const std::size_t d = f.deg();
  if (d == 0) return zero;

  // Scale exactly so the largest coefficient has magnitude 1 before rounding.
  Rational biggest = 0;
  for (const auto& c : f.coeffs()) biggest = std::max(biggest, abs(c));
  std::vector<long double> a;
  for (const auto& c : f.coeffs()) a.push_back(static_cast<long double>(Rational(c / biggest).get_d()));
  std::vector<long double> da;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(a[i] * static_cast<long double>(i));

  const double radius = std::max(1.0, cauchy_bound(f).get_d() / 2);
  std::vector<cld> z(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double angle = 2 * M_PI * static_cast<double>(k) / static_cast<double>(d) + 0.4;
    z[k] = cld(radius * std::cos(angle), radius * std::sin(angle));
  }

  constexpr int kMaxIterations = 2000;
  bool converged = false;
  for (int it = 0; it < kMaxIterations && !converged; ++it) {
    long double max_step = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const cld pz = horner(a, z[k]);
      if (pz == cld(0)) continue;
      const cld ratio = pz / horner(da, z[k]);
      cld sum = 0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k) sum += cld(1) / (z[k] - z[j]);
      }
      const cld step = ratio / (cld(1) - ratio * sum);
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max<long double>(1, std::abs(z[k])));
    }
    converged = max_step < 1e-17L;
  }

  // Distinct real roots are known exactly; snap that many to the real axis and
  // pair the rest as conjugates.
  const std::size_t real_count = SturmSequence(f).count_real();
  std::sort(z.begin(), z.end(), [](const cld& x, const cld& y) { return std::fabs(x.imag()) < std::fabs(y.imag()); });
  for (std::size_t k = 0; k < real_count && k < d; ++k) z[k] = cld(z[k].real(), 0);
  std::vector<bool> used(d, false);
  for (std::size_t k = real_count; k < d; ++k) {
    if (used[k] || z[k].imag() <= 0) continue;
    std::size_t best = d;
    long double best_dist = 0;
    for (std::size_t m = real_count; m < d; ++m) {
      if (m == k || used[m] || z[m].imag() >= 0) continue;
      const long double dist = std::abs(z[m] - std::conj(z[k]));
      if (best == d || dist < best_dist) {
        best = m;
        best_dist = dist;
      }
    }
    if (best == d) throw ConvergenceError("aberth_roots: unpaired complex root");
    const cld avg = (z[k] + std::conj(z[best])) / cld(2);
    z[k] = avg;
    z[best] = std::conj(avg);
    used[k] = used[best] = true;
  }

  std::vector<ComplexRoot> out;
  for (const auto& root : z) {
    const long double res = std::abs(horner(a, root));
    const long double scale = magnitude_scale(a, root);
    if (res > static_cast<long double>(tol) * scale) {
      throw ConvergenceError("aberth_roots: residual above tolerance after " + std::to_string(kMaxIterations) +
                             " iterations");
    }
    const long double dp = std::abs(horner(da, root));
    const long double bound = dp > 0 ? static_cast<long double>(d) * res / dp : INFINITY;
    out.push_back({cd(static_cast<double>(root.real()), static_cast<double>(root.imag())), static_cast<double>(res),
                   static_cast<double>(bound)});
  }
  out.insert(out.end(), zero.begin(), zero.end());
  std::sort(out.begin(), out.end(), [](const ComplexRoot& x, const ComplexRoot& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return out;
}

}  // namespace sszego
