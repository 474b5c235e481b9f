#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "sszego/errors.hpp"
#include "sszego/phi.hpp"
#include "sszego/roots.hpp"
#include "sszego/special.hpp"
#include "support.hpp"

using namespace sszego;
using testing::P;
using testing::q;

namespace {

const NamedInterval* find_witness(const InterlaceResult& r, const std::string& name) {
  for (const auto& w : r.witnesses) {
    if (w.name == name) return &w;
  }
  return nullptr;
}

// Plain bisection on sign changes, independent of the Sturm machinery.
std::pair<Rational, Rational> bisect(const Polynomial& p, Rational lo, Rational hi, const Rational& width) {
  while (hi - lo > width) {
    const Rational mid = (lo + hi) / 2;
    if (sign(p(lo)) * sign(p(mid)) <= 0) hi = mid;
    else lo = mid;
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("Sturm sequence counts") {
  const SturmSequence s(P("-2,0,1"));
  CHECK(s.count_real() == 2);
  CHECK(s.count_in(-2, 2) == 2);
  CHECK(s.count_in(0, 2) == 1);
  CHECK(SturmSequence(P("1,0,1")).count_real() == 0);
  CHECK(sturm_chain(P("-2,0,1")).size() == 3);
}

TEST_CASE("isolate_real_roots examples") {
  const RootProfile a = isolate_real_roots(P("0,-1,0,1"));
  CHECK(a.roots.size() == 3);
  CHECK(a.negative == 1);
  CHECK(a.zero == 1);
  CHECK(a.positive == 1);
  CHECK(a.is_strictly_hyperbolic());

  const RootProfile b = isolate_real_roots(P("1,-2,1"));
  CHECK(b.square_free == P("-1,1"));
  REQUIRE(b.roots.size() == 1);
  CHECK(b.multiplicities[0] == 2);
  CHECK(b.is_hyperbolic());
  CHECK(!b.is_strictly_hyperbolic());

  const RootProfile c = isolate_real_roots(P("1,1,1"));
  CHECK(c.roots.empty());
  CHECK(!c.is_hyperbolic());
  CHECK(!is_hyperbolic(P("1,1,1")));
  CHECK(is_hyperbolic(P("-2,0,1")));
}

TEST_CASE("Q_2 has two positive reciprocal roots") {
  const EigenSystem es = eigensystem(PhiMap(7));
  const RootProfile prof = isolate_positive_roots(es.q(2));
  REQUIRE(prof.roots.size() == 2);
  CHECK(prof.roots[0].hi() <= 1);
  CHECK(prof.roots[1].lo() >= 1);
  // product of the roots is the constant term of the monic quadratic
  CHECK(es.q(2).coeff(0) == 1);
}

TEST_CASE("refine agrees with bisection") {
  const Polynomial p = P("-2,0,1");
  const RootProfile prof = isolate_real_roots(p);
  const IsolatingInterval& pos = prof.roots.back();
  const IsolatingInterval r = refine(pos, q(1, 100));
  CHECK(r.width() <= q(1, 100));
  CHECK(r.lo() * r.lo() < 2);
  CHECK(r.hi() * r.hi() > 2);
  const auto [blo, bhi] = bisect(p, 1, 2, q(1, 100));
  CHECK(std::max(blo, r.lo()) <= std::min(bhi, r.hi()));
  CHECK(std::abs(r.approx() - std::sqrt(2.0)) < 0.01);
}

TEST_CASE("property: isolating intervals are sound") {
  testing::Gen g(300);
  for (int t = 0; t < 30; ++t) {
    std::vector<Rational> roots;
    const Polynomial p = g.rooted(static_cast<std::size_t>(g.integer(1, 8)), &roots) * P("1,0,1");
    const RootProfile prof = isolate_real_roots(p);
    REQUIRE(prof.roots.size() == roots.size());
    std::sort(roots.begin(), roots.end());
    const SturmSequence s(prof.square_free);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const IsolatingInterval& iv = prof.roots[i];
      if (iv.is_exact()) {
        CHECK(iv.lo() == roots[i]);
        continue;
      }
      CHECK(iv.lo() < roots[i]);
      CHECK(roots[i] < iv.hi());
      CHECK(iv.target().sign_at(iv.lo()) * iv.target().sign_at(iv.hi()) < 0);
      const IsolatingInterval r = refine(iv, q(1, 1000));
      CHECK(((r.is_exact() && r.lo() == roots[i]) || (r.lo() < roots[i] && roots[i] < r.hi())));
    }
    for (std::size_t i = 0; i + 1 < prof.roots.size(); ++i) CHECK(certified_less(prof.roots[i], prof.roots[i + 1]));
  }
}

TEST_CASE("cauchy bound exceeds every root") {
  testing::Gen g(301);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> roots;
    const Polynomial p = g.rooted(5, &roots) * g.nonzero();
    const Rational b = cauchy_bound(p);
    for (const auto& r : roots) CHECK(abs(r) < b);
  }
}

TEST_CASE("interlace_first examples") {
  const InterlaceResult ok = interlace_first(P("-1,1"), P("1,-5/2,1"));
  CHECK(ok.verdict == Verdict::holds);
  REQUIRE(find_witness(ok, "y_1") != nullptr);
  CHECK(find_witness(ok, "y_1")->lo <= q(1, 2));
  CHECK(find_witness(ok, "y_1")->hi >= q(1, 2));

  const InterlaceResult deg = interlace_first(P("-1,1"), P("3,-4,1"));
  CHECK(deg.verdict == Verdict::degenerate);

  // x_1 = 1 lies below y_1 = 2
  CHECK(interlace_first(P("-1,1"), P("8,-6,1")).verdict == Verdict::fails);
  CHECK_THROWS_AS(interlace_first(P("-1,1"), P("1,0,1")), PreconditionError);

  const EigenSystem e9 = eigensystem(PhiMap(9));
  CHECK(interlace_first(e9.q(3), e9.q(4)).verdict == Verdict::holds);
}

TEST_CASE("interlace_second examples") {
  // j = 1: r(1) = 0 with z_1 < 1 < z_3
  const Polynomial r = P("-1/2,1") * P("-1,1") * P("-2,1");
  const InterlaceResult odd = interlace_second(P("-1,1"), r);
  CHECK(odd.verdict == Verdict::holds);
  const NamedInterval* x1 = find_witness(odd, "x_1");
  const NamedInterval* z2 = find_witness(odd, "z_2");
  REQUIRE(x1 != nullptr);
  REQUIRE(z2 != nullptr);
  CHECK((x1->lo == 1 && x1->hi == 1 && z2->lo == 1 && z2->hi == 1));
  // root 1 missing from r
  CHECK(interlace_second(P("-1,1"), P("-1/2,1") * P("-3/2,1") * P("-2,1")).verdict != Verdict::holds);

  const EigenSystem e10 = eigensystem(PhiMap(10));
  CHECK(interlace_second(e10.q(2), e10.q(4)).verdict == Verdict::holds);
  CHECK(interlace_second(e10.q(3), e10.q(5)).verdict == Verdict::holds);

  // Narayana roots are negative; compare N(-x)/x
  const Polynomial n4 = exact_div(narayana(4).reflect(), P("0,1"));
  const Polynomial n6 = exact_div(narayana(6).reflect(), P("0,1"));
  CHECK(interlace_second(n4, n6).verdict == Verdict::holds);
}

TEST_CASE("interlace result serializes") {
  const nlohmann::json j = to_json(interlace_first(P("-1,1"), P("1,-5/2,1")));
  CHECK(j.at("verdict") == "holds");
  CHECK(j.at("witnesses").is_array());
  CHECK(j.at("witnesses")[0].at("lo").is_string());
}

TEST_CASE("pencil_probe examples") {
  const PencilResult ok = pencil_probe(P("-1,1"), P("1,-5/2,1"), 200, 9);
  CHECK(ok.verdict == Verdict::holds);
  CHECK(ok.combinations_checked == 202);
  CHECK(!ok.refuting_pair.has_value());

  const PencilResult bad = pencil_probe(P("1,0,1"), P("-1,1"), 10, 1);
  CHECK(bad.verdict == Verdict::fails);
  REQUIRE(bad.refuting_pair.has_value());
  CHECK(bad.refuting_pair->first == 1);
  CHECK(bad.refuting_pair->second == 0);

  CHECK(pencil_probe(P("-1,1"), P("1/5,-1,1"), 10, 1).verdict == Verdict::fails);
  CHECK_THROWS_AS(pencil_probe(P("-1,1"), P("3,-4,1"), 10, 1), PreconditionError);
}

TEST_CASE("pencil_probe is deterministic in the seed") {
  const PencilResult a = pencil_probe(P("-1,1"), P("1/5,-1,1"), 50, 42);
  const PencilResult b = pencil_probe(P("-1,1"), P("1/5,-1,1"), 50, 42);
  CHECK(a.combinations_checked == b.combinations_checked);
  CHECK(a.refuting_pair == b.refuting_pair);
}

TEST_CASE("property: interlacing implies every pencil is hyperbolic") {
  testing::Gen g(400);
  for (int t = 0; t < 20; ++t) {
    const auto j = static_cast<std::size_t>(g.integer(1, 5));
    // increasing positive roots, those of p strictly between those of q
    std::vector<Rational> ys, xs;
    Rational cur = q(1, 10);
    for (std::size_t i = 0; i <= j; ++i) {
      ys.push_back(cur);
      cur += q(g.integer(1, 9), g.integer(1, 4));
      if (i < j) {
        xs.push_back(cur);
        cur += q(g.integer(1, 9), g.integer(1, 4));
      }
    }
    Polynomial p = Polynomial::constant(1), r = Polynomial::constant(1);
    for (const auto& v : xs) p = p * Polynomial::linear_factor(v);
    for (const auto& v : ys) r = r * Polynomial::linear_factor(v);
    REQUIRE(interlace_first(p, r).verdict == Verdict::holds);
    CHECK(pencil_probe(p, r, 30, static_cast<std::uint64_t>(t)).verdict == Verdict::holds);
  }
}

TEST_CASE("aberth_roots examples") {
  const auto i2 = aberth_roots(P("1,0,1"), 1e-12);
  REQUIRE(i2.size() == 2);
  for (const auto& z : i2) {
    CHECK(std::abs(std::abs(z.value) - 1.0) < 1e-10);
    CHECK(std::abs(z.value.real()) < 1e-10);
  }
  const auto cube = aberth_roots(P("-1,0,0,1"), 1e-12);
  REQUIRE(cube.size() == 3);
  for (const auto& z : cube) CHECK(std::abs(z.value * z.value * z.value - 1.0) < 1e-9);

  Polynomial w = Polynomial::constant(1);
  for (int i = 1; i <= 8; ++i) w = w * Polynomial::linear_factor(i);
  const auto wr = aberth_roots(w, 1e-10);
  REQUIRE(wr.size() == 8);
  std::vector<double> re;
  for (const auto& z : wr) re.push_back(z.value.real());
  std::sort(re.begin(), re.end());
  for (int i = 0; i < 8; ++i) CHECK(std::abs(re[i] - (i + 1)) < 1e-6);

  // a zero root and a square factor
  const auto zr = aberth_roots(P("0,1") * P("1,0,1") * P("1,0,1"), 1e-12);
  CHECK(zr.size() == 3);
}

TEST_CASE("property: aberth roots of real input come in conjugate pairs") {
  testing::Gen g(500);
  for (int t = 0; t < 15; ++t) {
    const Polynomial p = g.poly(static_cast<std::size_t>(g.integer(2, 9)));
    const auto zs = aberth_roots(p, 1e-10);
    for (const auto& z : zs) {
      bool has_conj = false;
      for (const auto& w : zs) has_conj = has_conj || std::abs(w.value - std::conj(z.value)) <= 1e-8 * (1 + std::abs(z.value));
      CHECK(has_conj);
      CHECK(z.error_bound >= 0);
    }
  }
}
