#include <cmath>
#include <complex>

#include "doctest.h"
#include "gitp/innerprod.hpp"
#include "gitp/sampling.hpp"

using namespace gitp;

namespace {

const Cyc I = Cyc::zeta(4);

CoordFamily P(std::vector<Cyc> tail, std::map<std::size_t, Cyc> ov = {}) {
  return CoordFamily::scalar(std::move(tail), std::move(ov));
}

Cyc raw_inner(const SpaceFamily& s, std::size_t i, const Vec& x, const Vec& y) {
  Cyc sum;
  for (std::size_t k = 0; k < x.size(); ++k) sum += s.weights_at(i)[k] * x[k] * y[k].conj();
  return sum;
}

// phi1(<theta x, theta y>) by direct evaluation: the coordinate inner
// products must be eventually 1, and then the value is their finite product.
Cyc oracle_phi1_elementary(const CoordFamily& x, const CoordFamily& y) {
  const std::size_t h = std::max(x.horizon(), y.horizon());
  const std::size_t span = 2 * x.tail().period() * y.tail().period() * x.spaces().period();
  for (std::size_t i = h; i < h + span; ++i)
    if (!raw_inner(x.spaces(), i, x.at(i), y.at(i)).is_one()) return Cyc(0);
  if (x.tail().has_phases() || y.tail().has_phases()) {
    // Phases must cancel exactly for the product to be eventually 1.
    if (!(x.tail() == y.tail())) return Cyc(0);
  }
  Cyc prod(1);
  for (std::size_t i = 0; i < h; ++i) prod *= raw_inner(x.spaces(), i, x.at(i), y.at(i));
  return prod;
}

struct Sum {
  std::vector<Cyc> coeffs;
  std::vector<CoordFamily> fams;
  TensorElement element() const {
    TensorElement out(fams.front().spaces());
    for (std::size_t k = 0; k < fams.size(); ++k) out += coeffs[k] * theta(fams[k]);
    return out;
  }
};

Cyc oracle_phi1_inner(const Sum& a, const Sum& b) {
  Cyc total;
  for (std::size_t j = 0; j < a.fams.size(); ++j)
    for (std::size_t k = 0; k < b.fams.size(); ++k)
      total += a.coeffs[j] * b.coeffs[k].conj() * oracle_phi1_elementary(a.fams[j], b.fams[k]);
  return total;
}

/// Contractive family: unit tail, or a unit tail scaled by 3/5 (K-side).
CoordFamily contractive_family(Sampler& s, const SpaceFamily& spaces, bool allow_strict) {
  CoordFamily u = s.unit_family(spaces);
  if (allow_strict && s.coin(0.3)) {
    std::vector<Vec> tail;
    for (const Vec& v : u.tail().periodic()) {
      Vec w = v;
      for (Cyc& c : w) c = Cyc::rational(3, 5) * c;
      tail.push_back(w);
    }
    return CoordFamily::periodic(spaces, std::move(tail), u.overrides());
  }
  return u;
}

Sum sample_sum(Sampler& s, const SpaceFamily& spaces, bool allow_strict, int max_terms = 3) {
  Sum out;
  for (int k = 0, n = s.uniform(1, max_terms); k < n; ++k) {
    out.coeffs.push_back(s.nonzero_scalar());
    out.fams.push_back(contractive_family(s, spaces, allow_strict));
  }
  return out;
}

/// General (not necessarily contractive) combination.
Sum sample_general_sum(Sampler& s, const SpaceFamily& spaces) {
  Sum out;
  for (int k = 0, n = s.uniform(1, 3); k < n; ++k) {
    out.coeffs.push_back(s.nonzero_scalar());
    out.fams.push_back(s.coin() ? s.family(spaces) : contractive_family(s, spaces, true));
  }
  return out;
}

bool positive_real(const Cyc& c) { return c.is_real() && c.to_complex().real() > 0; }

}  // namespace

TEST_CASE("phi1 and phi0 examples") {
  CHECK(phi1(theta(P({1}, {{0, Cyc::rational(1, 2)}, {1, Cyc(2)}}))) == Cyc(1));
  CHECK(phi1(theta(P({-1}))) == Cyc(0));
  CHECK(phi0(theta(CoordFamily::geom_phase(Rational(1), 2))) == Cyc(1));
  CHECK(phi0(theta(CoordFamily::geom_phase(Rational(1, 3), 2))) == Cyc::zeta(3, 2));
  CHECK(phi1(theta(CoordFamily::geom_phase(Rational(1, 3), 2))) == Cyc(0));
  // Partial products of exp(2 pi i c q^i) converge to the closed form.
  for (const auto& [c, base] : std::vector<std::pair<Rational, long>>{{Rational(1, 3), 2}, {Rational(2, 5), 3}}) {
    std::complex<double> prod = 1.0;
    for (int i = 0; i < 60; ++i)
      prod *= std::polar(1.0, 2 * M_PI * c.get_d() * std::pow(1.0 / static_cast<double>(base), i));
    const auto exact = phi0(theta(CoordFamily::geom_phase(c, base))).to_complex();
    CHECK(std::abs(prod - exact) < 1e-9);
  }
}

TEST_CASE("phi1 and phi0 are unital, involutive and agree on periodic tails") {
  const auto c = CoordinateAlgebra::scalars();
  CHECK(phi1(algebra_unit(c)) == Cyc(1));
  CHECK(phi0(algebra_unit(c)) == Cyc(1));
  Sampler s(3);
  for (int k = 0; k < 40; ++k) {
    TensorElement a(SpaceFamily::scalars());
    for (int t = 0; t < 3; ++t) a += s.nonzero_scalar() * theta(s.family(SpaceFamily::scalars()));
    CHECK(phi1(a) == phi0(a));
    CHECK(phi1(star(c, a)) == phi1(a).conj());
    const TensorElement g = theta(s.unit_scalar_family(true));
    CHECK(phi0(star(c, g)) == phi0(g).conj());
  }
}

TEST_CASE("hermitian form examples and laws") {
  const SpaceFamily c2 = SpaceFamily::constant(2);
  const CoordFamily e1 = CoordFamily::periodic(c2, {Vec{1, 0}});
  const CoordFamily e2 = CoordFamily::periodic(c2, {Vec{0, 1}});
  CHECK(herm_form(theta(e1), theta(e1)) == theta(P({1})));
  CHECK(herm_form(theta(e1), theta(e2)).is_zero());

  const auto c = CoordinateAlgebra::scalars();
  Sampler s(5);
  for (const SpaceFamily& spaces : {c2, SpaceFamily(std::vector<int>{1, 2})}) {
    for (int k = 0; k < 20; ++k) {
      const Sum a = sample_general_sum(s, spaces), b = sample_general_sum(s, spaces), d = sample_general_sum(s, spaces);
      const TensorElement x = a.element(), y = b.element(), z = d.element();
      const Cyc l = s.nonzero_scalar();
      CHECK(herm_form(l * x + z, y) == l * herm_form(x, y) + herm_form(z, y));
      CHECK(herm_form(x, l * y) == l.conj() * herm_form(x, y));
      CHECK(herm_form(y, x) == star(c, herm_form(x, y)));
      CHECK(phi1_inner(x, y) == oracle_phi1_inner(a, b));
      CHECK(phi1_inner(y, x) == phi1_inner(x, y).conj());
    }
  }
}

TEST_CASE("hermitian form on weighted spaces") {
  // Weighted form (1/2, 2): families drawn from non-normalized vectors.
  const SpaceFamily w = SpaceFamily::weighted({Cyc::rational(1, 2), Cyc(2)});
  const auto c = CoordinateAlgebra::scalars();
  Sampler s(6);
  for (int k = 0; k < 20; ++k) {
    Sum a, b;
    for (int t = 0; t < 2; ++t) {
      a.coeffs.push_back(s.nonzero_scalar());
      a.fams.push_back(s.family(w));
      b.coeffs.push_back(s.nonzero_scalar());
      b.fams.push_back(s.coin() ? a.fams[static_cast<std::size_t>(t)].with_override(1, s.nonzero_vector(2)) : s.family(w));
    }
    const TensorElement x = a.element(), y = b.element();
    CHECK(herm_form(y, x) == star(c, herm_form(x, y)));
    CHECK(phi1_inner(x, y) == oracle_phi1_inner(a, b));
  }
  const CoordFamily e = CoordFamily::periodic(w, {Vec{Cyc::sqrt_of(Rational(2)), Cyc(0)}}, {{0, Vec{1, 0}}});
  CHECK(phi1_inner(theta(e), theta(e)) == Cyc::rational(1, 2));
}

TEST_CASE("non-positivity outside the contractive span") {
  // Tails 1/2 and 2: <x - y, x - y> = 0 - 1 - 1 + 0.
  const TensorElement xi = theta(P({Cyc::rational(1, 2)})) - theta(P({2}));
  CHECK(phi1_inner(xi, xi) == Cyc(-2));
  CHECK_FALSE(psd_test(gram({xi})).psd);
  CHECK_THROWS_AS(certify_gram({xi}, SpanKind::kContractive), DomainError);
  // Overrides on a trivial tail: (1/4 - 1) - (1 - 4).
  const TensorElement eta = theta(P({1}, {{0, Cyc::rational(1, 2)}})) - theta(P({1}, {{0, Cyc(2)}}));
  CHECK(phi1_inner(eta, eta) == Cyc::rational(9, 4));
}

TEST_CASE("Gram matrices: orthonormal classes, semidefinite contractive span") {
  Sampler s(7);
  const SpaceFamily c2 = SpaceFamily::constant(2);
  // Distinct-class unit generators are orthonormal.
  std::vector<TensorElement> gens;
  std::vector<ClassId> seen;
  while (gens.size() < 5) {
    const CoordFamily u = s.unit_family(c2);
    const ClassId w = class_of(u);
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
    seen.push_back(w);
    gens.push_back(theta(u));
  }
  CHECK(gram(gens) == CycMatrix::identity(5));
  CHECK(certify_gram(gens, SpanKind::kUnit).definite);

  for (int k = 0; k < 25; ++k) {
    std::vector<TensorElement> xs;
    for (int j = 0, n = s.uniform(2, 6); j < n; ++j) xs.push_back(sample_sum(s, c2, true).element());
    const PsdReport r = certify_gram(xs, SpanKind::kContractive);
    CHECK(r.hermitian);
    CHECK(r.psd);
    std::vector<TensorElement> us;
    for (int j = 0; j < 3; ++j) us.push_back(sample_sum(s, c2, false).element());
    for (const auto& u : us)
      if (!u.is_zero()) CHECK(positive_real(phi1_inner(u, u)));
    CHECK(certify_gram(us, SpanKind::kUnit).psd);
  }
  CHECK_THROWS_AS(certify_gram({theta(CoordFamily::periodic(c2, {Vec{Cyc::rational(1, 2), 0}}))}, SpanKind::kUnit),
                  DomainError);
}

TEST_CASE("psd_test: exact and numeric paths agree") {
  CHECK(psd_test(CycMatrix::from_rows({{2, 1}, {1, 2}})).definite);
  CHECK(psd_test(CycMatrix::from_rows({{2, 1}, {1, 2}})).exact);
  CHECK_FALSE(psd_test(CycMatrix::from_rows({{1, 2}, {2, 1}})).psd);
  const PsdReport semi = psd_test(CycMatrix::from_rows({{1, 1}, {1, 1}}));
  CHECK(semi.psd);
  CHECK_FALSE(semi.definite);
  CHECK_FALSE(psd_test(CycMatrix::from_rows({{0, 1}, {1, 0}})).psd);
  CHECK_FALSE(psd_test(CycMatrix::from_rows({{1, 2}, {3, 1}})).hermitian);
  const PsdReport cplx = psd_test(CycMatrix::from_rows({{2, I}, {-I, 2}}));
  CHECK_FALSE(cplx.exact);
  CHECK(cplx.definite);
  CHECK(std::abs(cplx.min_eigenvalue - 1.0) < 1e-12);
  CHECK_FALSE(psd_test(CycMatrix::from_rows({{1, 2 * I}, {-2 * I, 1}})).psd);

  // Random rational Hermitian matrices B B^T (+ shift): compare with Eigen via
  // an embedded imaginary perturbation of zero (forces the numeric path).
  Sampler s(9);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = static_cast<std::size_t>(s.uniform(1, 4));
    CycMatrix b(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b(r, c) = Cyc::rational(s.uniform(-2, 2), 1);
    const CycMatrix g = b * b.transpose() - Cyc(s.uniform(0, 1)) * CycMatrix::identity(n);
    const PsdReport exact = psd_test(g);
    REQUIRE(exact.exact);
    // Conjugating by diag(i, 1, ...) keeps eigenvalues but leaves the rationals.
    CycMatrix d = CycMatrix::identity(n);
    d(0, 0) = I;
    const PsdReport numeric = psd_test(d * g * d.adjoint());
    if (n > 1 && !(d * g * d.adjoint() == g)) {
      bool all_rational = true;
      for (const Cyc& c : (d * g * d.adjoint()).data()) all_rational = all_rational && c.is_rational();
      if (!all_rational) {
        CHECK_FALSE(numeric.exact);
        if (std::abs(numeric.min_eigenvalue) > 1e-6) {
          CHECK(exact.psd == numeric.psd);
          CHECK(exact.definite == numeric.definite);
        }
      }
    }
  }
}

TEST_CASE("decomposition of the contractive span") {
  const SpaceFamily c2 = SpaceFamily::constant(2);
  GeneratorSum a;
  const CoordFamily k_gen = CoordFamily::periodic(c2, {Vec{Cyc::rational(1, 2), 0}});
  const CoordFamily unit_gen = CoordFamily::periodic(c2, {Vec{0, 1}}, {{1, Vec{1, 0}}});
  a.add(Cyc(3), k_gen);
  a.add(Cyc(2), unit_gen);
  const auto [k_part, un_part] = decomp_ct(a);
  REQUIRE(k_part.terms().size() == 1);
  CHECK(k_part.terms()[0].family == k_gen);
  REQUIRE(un_part.terms().size() == 1);
  CHECK(un_part.terms()[0].family == unit_gen);

  GeneratorSum bad;
  bad.add(Cyc(1), CoordFamily::periodic(c2, {Vec{0, 1}}, {{0, Vec{Cyc::rational(1, 2), 0}}}));
  CHECK_THROWS_AS(decomp_ct(bad), DomainError);
  GeneratorSum big;
  big.add(Cyc(1), CoordFamily::periodic(c2, {Vec{2, 0}}));
  CHECK_THROWS_AS(decomp_ct(big), DomainError);

  // The K part is null and orthogonal to every contractive element.
  Sampler s(13);
  for (int k = 0; k < 30; ++k) {
    GeneratorSum g;
    const Sum src = sample_sum(s, c2, true, 4);
    for (std::size_t j = 0; j < src.fams.size(); ++j) g.add(src.coeffs[j], src.fams[j]);
    const auto [kp, up] = decomp_ct(g);
    CHECK(kp.terms().size() + up.terms().size() == g.terms().size());
    CHECK(up.all_unit());
    const TensorElement other = sample_sum(s, c2, true).element();
    if (!kp.terms().empty()) {
      CHECK(phi1_inner(kp.element(), other).is_zero());
      CHECK(phi1_inner(kp.element(), kp.element()).is_zero());
    }
    if (!up.terms().empty()) CHECK(phi1_inner(g.element(), other) == phi1_inner(up.element(), other));
  }
}

TEST_CASE("module inner product") {
  const ClassId minus = class_of(P({-1}));
  CHECK(module_inner(theta(P({-1})), theta(P({1}))) == GroupAlgebraElement::lambda(minus));
  Sampler s(17);
  const SpaceFamily c2 = SpaceFamily::constant(2);
  for (int k = 0; k < 50; ++k) {
    const TensorElement x = sample_sum(s, c2, false).element(), y = sample_sum(s, c2, false).element();
    CHECK(module_inner(x, y).chi() == phi1_inner(x, y));
    const ClassId w = class_of(s.unit_scalar_family(false));
    CHECK(module_inner(group_act(w, x), y) == GroupAlgebraElement::lambda(w) * module_inner(x, y));
    // Geometric-phase classes act on one-dimensional coordinates.
    const TensorElement sx = theta(s.unit_scalar_family(true)), sy = theta(s.unit_scalar_family(true));
    const ClassId v = class_of(s.unit_scalar_family(true));
    CHECK(module_inner(group_act(v, sx), sy) == GroupAlgebraElement::lambda(v) * module_inner(sx, sy));
    CHECK(module_inner(y, x) == module_inner(x, y).star());
  }
  // chi o Phi o E = phi1 on scalar elements.
  for (int k = 0; k < 30; ++k) {
    TensorElement a(SpaceFamily::scalars());
    for (int t = 0; t < 3; ++t) a += s.nonzero_scalar() * theta(s.coin() ? s.unit_scalar_family(true) : s.family(SpaceFamily::scalars()));
    CHECK(group_algebra_iso(expectation(a)).chi() == phi1(a));
  }
}

TEST_CASE("truncation to a finite subgroup") {
  const ClassId one = class_of(P({1})), minus = class_of(P({-1}));
  const std::vector<ClassId> g{one, minus};
  const TensorElement s = 2 * theta(P({-1})) + theta(CoordFamily::geom_phase(Rational(1, 3), 2)) + theta(P({1}, {{0, I}}));
  const GroupAlgebraElement t = truncate_EG(s, g);
  CHECK(t == GroupAlgebraElement::lambda(minus, Cyc(2)) + GroupAlgebraElement::lambda(one, I));
  CHECK_THROWS_AS(truncate_EG(s, {one, class_of(P({I}))}), DomainError);
  CHECK_THROWS_AS(truncate_EG(s, {minus}), DomainError);
}

TEST_CASE("delta isomorphism and coset blocks") {
  const ClassId one = class_of(P({1}));
  CHECK(delta_iso(theta(P({1}))) == std::map<ClassId, Cyc>{{one, Cyc(1)}});
  CHECK_THROWS_AS(delta_iso(theta(P({2}))), DomainError);
  Sampler s(19);
  const std::vector<ClassId> g{one, class_of(P({-1}))};
  for (int k = 0; k < 30; ++k) {
    TensorElement x(SpaceFamily::scalars()), y(SpaceFamily::scalars());
    for (int t = 0; t < 3; ++t) {
      x += s.nonzero_scalar() * theta(s.unit_scalar_family(true));
      y += s.nonzero_scalar() * theta(s.unit_scalar_family(true));
    }
    const auto fx = delta_iso(x), fy = delta_iso(y);
    CHECK(delta_inner(fx, fy) == phi1_inner(x, y));
    // Coset blocks partition the support and preserve the l2 form.
    const auto blocks = coset_blocks(fx, g);
    std::size_t count = 0;
    Cyc norm;
    for (const auto& [rep, blk] : blocks) {
      count += blk.coefficients().size();
      for (const auto& [h, c] : blk.coefficients()) {
        CHECK(std::find(g.begin(), g.end(), h) != g.end());
        CHECK(fx.at(class_product(rep, h)) == c);
        norm += c * c.conj();
      }
    }
    CHECK(count == fx.size());
    CHECK(norm == delta_inner(fx, fx));
  }
  // Images of distinct classes are orthonormal.
  const auto a = delta_iso(theta(P({-1}))), b = delta_iso(theta(P({I})));
  CHECK(delta_inner(a, a) == Cyc(1));
  CHECK(delta_inner(a, b) == Cyc(0));
}

TEST_CASE("theta preserves coordinatewise inner products") {
  Sampler s(23);
  const SpaceFamily sp(std::vector<int>{2, 1});
  for (int k = 0; k < 60; ++k) {
    const CoordFamily x = s.unit_family(sp);
    CoordFamily y = s.coin() ? x : s.unit_family(sp);
    if (s.coin()) {
      const auto i = static_cast<std::size_t>(s.uniform(0, 4));
      y = y.with_override(i, s.unit_vector(sp, i));
    }
    CHECK(phi1_inner(theta(x), theta(y)) == oracle_phi1_elementary(x, y));
  }
}
