#include "doctest.h"
#include "gitp/sampling.hpp"
#include "gitp/staralgebra.hpp"

using namespace gitp;

namespace {

const Cyc I = Cyc::zeta(4);

// Independent 2x2 oracle on row-major [m00, m01, m10, m11].
Vec mat_mul(const Vec& a, const Vec& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Vec mat_adj(const Vec& a) { return {a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()}; }

Vec M(Cyc a, Cyc b, Cyc c, Cyc d) { return {a, b, c, d}; }

// Pointwise family built from coordinate evaluations over a window that
// covers every override and both periods.
CoordFamily oracle_pointwise(const CoordinateAlgebra& alg, const CoordFamily& x, const CoordFamily& y,
                             Vec (*f)(const Vec&, const Vec&)) {
  const std::size_t p = x.tail().period() * y.tail().period();
  const std::size_t h = std::max(x.horizon(), y.horizon());
  const std::size_t start = ((h + p - 1) / p) * p;
  std::vector<Vec> tail;
  for (std::size_t r = 0; r < p; ++r) tail.push_back(f(x.at(start + r), y.at(start + r)));
  std::map<std::size_t, Vec> ov;
  for (std::size_t i = 0; i < h; ++i) ov[i] = f(x.at(i), y.at(i));
  return algebra_family(alg, std::move(tail), std::move(ov));
}

CoordFamily P(std::vector<Cyc> tail, std::map<std::size_t, Cyc> ov = {}) {
  return CoordFamily::scalar(std::move(tail), std::move(ov));
}

/// Sampled unitary family in the algebra's pool with general overrides.
CoordFamily sample_family(Sampler& s, const CoordinateAlgebra& alg, bool unitary_overrides) {
  const auto pool = alg.unitary_pool();
  std::vector<Vec> tail;
  const int period = s.uniform(1, 2);
  for (int r = 0; r < period; ++r) tail.push_back(s.pick(pool));
  std::map<std::size_t, Vec> ov;
  const int n = s.uniform(0, 2);
  for (int k = 0; k < n; ++k)
    ov[static_cast<std::size_t>(s.uniform(0, 3))] =
        unitary_overrides ? s.pick(pool) : s.nonzero_vector(alg.dim());
  return algebra_family(alg, std::move(tail), std::move(ov));
}

TensorElement sample_element(Sampler& s, const CoordinateAlgebra& alg, int terms) {
  TensorElement out(alg.coordinate_space());
  for (int t = 0; t < terms; ++t) out += s.nonzero_scalar() * theta(sample_family(s, alg, false));
  return out;
}

/// Identity-summand element: unit tail with finitely many general overrides.
TensorElement sample_identity_part(Sampler& s, const CoordinateAlgebra& alg) {
  TensorElement out(alg.coordinate_space());
  for (int t = 0; t < 2; ++t) {
    std::map<std::size_t, Vec> ov;
    ov[static_cast<std::size_t>(s.uniform(0, 2))] = s.nonzero_vector(alg.dim());
    out += s.nonzero_scalar() * theta(algebra_family(alg, {alg.unit()}, ov));
  }
  return out;
}

}  // namespace

TEST_CASE("built-in algebras pass their axioms and expose unitaries") {
  for (const auto& alg : {CoordinateAlgebra::scalars(), CoordinateAlgebra::matrix(2), CoordinateAlgebra::functions(3),
                          CoordinateAlgebra::cyclic_group(2), CoordinateAlgebra::cyclic_group(4)}) {
    CAPTURE(alg.name());
    const auto pool = alg.unitary_pool();
    CHECK(pool.size() >= alg.dim());
    for (const Vec& u : pool) CHECK(alg.is_unitary(u));
    CHECK(CycMatrix::from_rows(pool).rank() == alg.dim());
    CHECK(alg.coordinate_space().norm2(0, alg.unit()) == Cyc(1));
  }
  const auto m2 = CoordinateAlgebra::matrix(2);
  CHECK(m2.star(M(0, 1, 0, 0)) == M(0, 0, 1, 0));
  CHECK(m2.star(M(I, 2, 3, 4)) == mat_adj(M(I, 2, 3, 4)));
  CHECK_FALSE(m2.is_unitary(M(1, 1, 0, 1)));
  CHECK_THROWS_AS(CoordinateAlgebra::matrix(3), CapExceeded);
  // Non-associative table is rejected at construction.
  CHECK_THROWS_AS(CoordinateAlgebra::group({{0, 1, 2}, {1, 0, 0}, {2, 1, 0}}, "bad"), DomainError);
}

TEST_CASE("coordinate products agree with 2x2 matrix multiplication") {
  const auto m2 = CoordinateAlgebra::matrix(2);
  Sampler s(11);
  for (int k = 0; k < 40; ++k) {
    const Vec a = s.nonzero_vector(4), b = s.nonzero_vector(4);
    CHECK(m2.mul(a, b) == mat_mul(a, b));
    CHECK(m2.star(a) == mat_adj(a));
  }
}

TEST_CASE("multiplication of elementary tensors is pointwise") {
  const auto c = CoordinateAlgebra::scalars();
  CHECK(mul(c, theta(P({-1})), theta(P({-1}))) == theta(P({1})));
  const auto m2 = CoordinateAlgebra::matrix(2);
  const TensorElement e = algebra_unit(m2);
  Sampler s(21);
  for (int k = 0; k < 40; ++k) {
    const CoordFamily x = sample_family(s, m2, false);
    const CoordFamily y = sample_family(s, m2, false);
    CHECK(mul(m2, e, theta(x)) == theta(x));
    CHECK(mul(m2, theta(x), e) == theta(x));
    CHECK(mul(m2, theta(x), theta(y)) == theta(oracle_pointwise(m2, x, y, mat_mul)));
    CHECK(star(m2, theta(x)) == theta(oracle_pointwise(m2, x, x, [](const Vec& a, const Vec&) { return mat_adj(a); })));
  }
}

TEST_CASE("star of a unitary family is coordinatewise") {
  const auto m2 = CoordinateAlgebra::matrix(2);
  const CoordFamily u = algebra_family(m2, {M(0, 1, 1, 0), M(1, 0, 0, I)}, {{1, M(0, -I, I, 0)}});
  REQUIRE(is_unitary_family(m2, u));
  const CoordFamily us = algebra_family(m2, {M(0, 1, 1, 0), M(1, 0, 0, -I)}, {{1, M(0, -I, I, 0)}});
  CHECK(star(m2, theta(u)) == theta(us));
  CHECK(mul(m2, theta(u), theta(us)) == algebra_unit(m2));
}

TEST_CASE("algebra laws and grading on sampled combinations") {
  for (const auto& alg : {CoordinateAlgebra::matrix(2), CoordinateAlgebra::cyclic_group(3),
                          CoordinateAlgebra::functions(2), CoordinateAlgebra::scalars()}) {
    CAPTURE(alg.name());
    Sampler s(31);
    for (int k = 0; k < 12; ++k) {
      const TensorElement a = sample_element(s, alg, 2), b = sample_element(s, alg, 2), c = sample_element(s, alg, 1);
      CHECK(mul(alg, mul(alg, a, b), c) == mul(alg, a, mul(alg, b, c)));
      CHECK(mul(alg, a, b + c) == mul(alg, a, b) + mul(alg, a, c));
      CHECK(star(alg, mul(alg, a, b)) == mul(alg, star(alg, b), star(alg, a)));
      CHECK(star(alg, star(alg, a)) == a);
      CHECK(star(alg, I * a) == I.conj() * star(alg, a));
      // Grading: single-class factors land in the product class.
      const CoordFamily x = sample_family(s, alg, false), y = sample_family(s, alg, false);
      const TensorElement ab = mul(alg, theta(x), theta(y));
      if (!ab.is_zero()) {
        CHECK(ab.component_count() == 1);
        CHECK(ab.components().begin()->first == class_mul(alg, class_of(x), class_of(y)));
      }
      CHECK(star(alg, theta(x)).components().begin()->first == class_star(alg, class_of(x)));
    }
  }
}

TEST_CASE("inner action") {
  const auto m2 = CoordinateAlgebra::matrix(2);
  Sampler s(41);
  const TensorElement a = sample_element(s, m2, 3);
  CHECK(inner_action(m2, unit_family(m2), a) == a);
  // Central unitary family: identity.
  const CoordFamily z = algebra_family(m2, {M(I, 0, 0, I)}, {{0, M(-1, 0, 0, -1)}});
  CHECK(inner_action(m2, z, a) == a);
  // sigma_x conjugation swaps the off-diagonal override.
  const CoordFamily sx = algebra_family(m2, {M(0, 1, 1, 0)});
  const TensorElement b = theta(algebra_family(m2, {m2.unit()}, {{2, M(0, 3, 0, 0)}}));
  CHECK(inner_action(m2, sx, b) == theta(algebra_family(m2, {m2.unit()}, {{2, M(0, 0, 3, 0)}})));
  CHECK_THROWS_AS(inner_action(m2, algebra_family(m2, {M(1, 1, 0, 1)}), a), DomainError);
  // *-automorphism on samples.
  for (int k = 0; k < 10; ++k) {
    const CoordFamily u = sample_family(s, m2, true);
    const TensorElement x = sample_element(s, m2, 2), y = sample_element(s, m2, 2);
    CHECK(inner_action(m2, u, mul(m2, x, y)) == mul(m2, inner_action(m2, u, x), inner_action(m2, u, y)));
    CHECK(inner_action(m2, u, star(m2, x)) == star(m2, inner_action(m2, u, x)));
  }
}

TEST_CASE("cocycle values on canonical and perturbed sections") {
  const auto c = CoordinateAlgebra::scalars();
  const ClassId mu = class_of(P({-1}));
  TwistedAction canonical(c);
  CHECK(canonical.cocycle(mu, class_star(c, mu)) == algebra_unit(c));
  TwistedAction perturbed(c);
  perturbed.perturb(mu, {{0, Vec{I}}});
  CHECK(perturbed.cocycle(mu, mu) == -algebra_unit(c));
  CHECK_THROWS_AS(perturbed.perturb(trivial_class(c), {{0, Vec{I}}}), DomainError);
  CHECK_THROWS_AS(perturbed.perturb(mu, {{0, Vec{Cyc(2)}}}), DomainError);
}

TEST_CASE("Busby-Smith identities hold for canonical and perturbed sections") {
  for (const auto& alg : {CoordinateAlgebra::matrix(2), CoordinateAlgebra::scalars(), CoordinateAlgebra::cyclic_group(2)}) {
    CAPTURE(alg.name());
    Sampler s(51);
    for (int k = 0; k < 6; ++k) {
      std::vector<ClassId> classes;
      for (int j = 0; j < 3; ++j) classes.push_back(class_of(sample_family(s, alg, true)));
      for (bool perturb : {false, true}) {
        TwistedAction tw(alg);
        if (perturb)
          for (const ClassId& w : classes)
            if (w != trivial_class(alg)) tw.perturb(w, {{static_cast<std::size_t>(s.uniform(0, 2)), s.pick(alg.unitary_pool())}});
        const ClassId &mu = classes[0], &nu = classes[1], &sg = classes[2];
        const ClassId e = trivial_class(alg);
        const TensorElement b = sample_identity_part(s, alg);
        const TensorElement m = tw.cocycle(mu, nu);
        CHECK(tw.act(mu, tw.act(nu, b)) == mul(alg, mul(alg, m, tw.act(class_mul(alg, mu, nu), b)), star(alg, m)));
        CHECK(mul(alg, m, tw.cocycle(class_mul(alg, mu, nu), sg)) ==
              mul(alg, tw.act(mu, tw.cocycle(nu, sg)), tw.cocycle(mu, class_mul(alg, nu, sg))));
        CHECK(tw.cocycle(e, mu) == algebra_unit(alg));
        CHECK(tw.cocycle(mu, e) == algebra_unit(alg));
        CHECK(tw.act(e, b) == b);
        if (!perturb) CHECK(m == algebra_unit(alg));
      }
    }
  }
}

TEST_CASE("crossed product isomorphism") {
  const auto m2 = CoordinateAlgebra::matrix(2);
  Sampler s(61);
  for (int k = 0; k < 8; ++k) {
    std::vector<ClassId> classes{trivial_class(m2)};
    for (int j = 0; j < 2; ++j) classes.push_back(class_of(sample_family(s, m2, true)));
    TwistedAction tw(m2);
    for (const ClassId& w : classes)
      if (w != trivial_class(m2) && s.coin()) tw.perturb(w, {{1, s.pick(m2.unitary_pool())}});
    auto sample_f = [&]() {
      CrossedElement f;
      for (const ClassId& w : classes)
        if (s.coin(0.7)) f[w] = sample_identity_part(s, m2);
      return f;
    };
    const CrossedElement f = sample_f(), g = sample_f();
    CHECK(crossed_product_iso(tw, convolve(tw, f, g)) == mul(m2, crossed_product_iso(tw, f), crossed_product_iso(tw, g)));
    CHECK(crossed_product_iso(tw, crossed_star(tw, f)) == star(m2, crossed_product_iso(tw, f)));
    CHECK(crossed_product_inverse(tw, crossed_product_iso(tw, f)) == f);
    const TensorElement a = crossed_product_iso(tw, f) + theta(sample_family(s, m2, false));
    CHECK(crossed_product_iso(tw, crossed_product_inverse(tw, a)) == a);
  }
  // Identity class: Psi(delta_e (x) b) = b.
  TwistedAction tw(m2);
  Sampler s2(62);
  const TensorElement b = sample_identity_part(s2, m2);
  CHECK(crossed_product_iso(tw, CrossedElement{{trivial_class(m2), b}}) == b);
  CrossedElement bad{{class_of(algebra_family(m2, {M(2, 0, 0, 1)})), b}};
  CHECK_THROWS_AS(crossed_product_iso(tw, bad), DomainError);
}

TEST_CASE("phi and the group algebra bridge") {
  const ClassId one = class_of(P({1}));
  CHECK(phi_char(P({1}, {{0, I}, {1, -I}})) == Cyc(1));
  CHECK(group_algebra_iso(theta(P({1}, {{0, I}, {1, -I}}))) == GroupAlgebraElement::lambda(one));
  CHECK(phi_char(P({-1})) == Cyc(1));
  CHECK(group_algebra_iso(theta(P({-1}))) == GroupAlgebraElement::lambda(class_of(P({-1}))));
  CHECK(phi_char(P({I}, {{2, Cyc(1)}})) == -I);
  CHECK_THROWS_AS(phi_char(P({Cyc(2)})), DomainError);
  CHECK_THROWS_AS(group_algebra_iso(theta(P({Cyc(2)}))), DomainError);

  const auto c = CoordinateAlgebra::scalars();
  Sampler s(71);
  for (int k = 0; k < 50; ++k) {
    const CoordFamily x = s.unit_scalar_family(true), y = s.unit_scalar_family(true);
    CHECK(phi_char(scalar_product(x, y)) == phi_char(x) * phi_char(y));
    const TensorElement a = s.nonzero_scalar() * theta(x) + s.nonzero_scalar() * theta(s.unit_scalar_family(false));
    const TensorElement b = s.nonzero_scalar() * theta(y);
    CHECK(group_algebra_iso(mul(c, a, b)) == group_algebra_iso(a) * group_algebra_iso(b));
    CHECK(group_algebra_iso(star(c, a)) == group_algebra_iso(a).star());
    CHECK(group_algebra_inverse(group_algebra_iso(a)) == a);
    CHECK(theta(x) == phi_char(x) * theta(class_of(x).section()));
  }
  const TensorElement mix = theta(P({Cyc::rational(1, 2)})) + 3 * theta(P({-1}, {{0, Cyc(1)}}));
  CHECK(expectation(mix) == 3 * theta(P({-1}, {{0, Cyc(1)}})));
}

TEST_CASE("partition-tail scalar families realize a finite abelian group faithfully") {
  // Z2 x Z2 via period-2 sign tails.
  std::vector<TensorElement> images;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) images.push_back(theta(P({a ? Cyc(-1) : Cyc(1), b ? Cyc(-1) : Cyc(1)})));
  TensorElement sum(SpaceFamily::scalars());
  for (std::size_t k = 0; k < images.size(); ++k) sum += Cyc(static_cast<long>(k + 1)) * images[k];
  CHECK(decompose(sum).size() == 4);
  const auto c = CoordinateAlgebra::scalars();
  CHECK(mul(c, images[1], images[2]) == images[3]);
}

TEST_CASE("embedding of the restricted product group") {
  const auto z2 = CoordinateAlgebra::cyclic_group(2);
  const GroupFamily s{{1}, {}};
  CHECK(mul(z2, embed_group_element(z2, s), embed_group_element(z2, s)) == embed_group_element(z2, GroupFamily{{0}, {}}));
  CHECK(embed_group_element(z2, GroupFamily{{0}, {}}) == algebra_unit(z2));
  CHECK_THROWS_AS(embed_group_element(z2, GroupFamily{{2}, {}}), DomainError);

  const auto z3 = CoordinateAlgebra::cyclic_group(3);
  Sampler r(81);
  auto sample_g = [&]() {
    GroupFamily t;
    for (int k = 0, n = r.uniform(1, 2); k < n; ++k) t.tail.push_back(r.uniform(0, 2));
    for (int k = 0, n = r.uniform(0, 2); k < n; ++k) t.overrides[static_cast<std::size_t>(r.uniform(0, 3))] = r.uniform(0, 2);
    return t;
  };
  for (int k = 0; k < 30; ++k) {
    const GroupFamily x = sample_g(), y = sample_g();
    CHECK(mul(z3, embed_group_element(z3, x), embed_group_element(z3, y)) ==
          embed_group_element(z3, group_family_product(z3, x, y)));
    CHECK(star(z3, embed_group_element(z3, x)) == embed_group_element(z3, group_family_inverse(z3, x)));
  }
  // Distinct classes give independent components.
  const TensorElement combo = embed_group_element(z3, GroupFamily{{1}, {}}) +
                              embed_group_element(z3, GroupFamily{{2}, {}}) +
                              embed_group_element(z3, GroupFamily{{0, 1}, {}});
  CHECK(decompose(combo).size() == 3);
  // Same class, distinct finite parts: independent blocks.
  const TensorElement same = embed_group_element(z3, GroupFamily{{1}, {{0, 0}}}) +
                             embed_group_element(z3, GroupFamily{{1}, {{0, 2}}}) +
                             embed_group_element(z3, GroupFamily{{1}, {}});
  REQUIRE(same.component_count() == 1);
  CHECK(rank_of_vectors({same.components().begin()->second.data}) == 1);
  CHECK_FALSE(same.is_zero());
}

TEST_CASE("centers") {
  const auto m2 = CoordinateAlgebra::matrix(2);
  const auto z = coordinate_center(m2);
  REQUIRE(z.size() == 1);
  CHECK(z[0][1].is_zero());
  CHECK(z[0][2].is_zero());
  CHECK(z[0][0] == z[0][3]);
  CHECK(coordinate_center(CoordinateAlgebra::cyclic_group(3)).size() == 3);
  CHECK(coordinate_center(CoordinateAlgebra::functions(4)).size() == 4);

  CHECK(center_membership(m2, theta(algebra_family(m2, {M(I, 0, 0, I)}))));
  const ClassId sx = class_of(algebra_family(m2, {M(0, 1, 1, 0)}));
  CHECK_FALSE(center_membership(m2, theta(sx.section())));
  const auto conj = distinct_conjugate_classes(m2, sx, 3);
  REQUIRE(conj.size() == 3);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(conj[a] != sx);
    for (std::size_t b = a + 1; b < 3; ++b) CHECK(conj[a] != conj[b]);
  }
  // Conjugates are what the inner action actually produces.
  const auto ws = conjugating_families(m2, sx, 3);
  for (std::size_t a = 0; a < 3; ++a) {
    const TensorElement img = inner_action(m2, ws[a], theta(sx.section()));
    REQUIRE(img.component_count() == 1);
    CHECK(img.components().begin()->first == conj[a]);
  }
  CHECK_THROWS_AS(distinct_conjugate_classes(m2, trivial_class(m2), 2), WitnessNotFound);

  // Sampled central elements (coordinates in the center) pass; adding a
  // non-central coordinate anywhere fails.
  Sampler s(91);
  for (int k = 0; k < 20; ++k) {
    const Cyc u = s.unit_scalar(), v = s.nonzero_scalar();
    const CoordFamily cen = algebra_family(m2, {M(u, 0, 0, u)}, {{static_cast<std::size_t>(s.uniform(0, 3)), M(v, 0, 0, v)}});
    CHECK(center_membership(m2, s.nonzero_scalar() * theta(cen)));
    const CoordFamily non = cen.with_override(5, M(1, v, 0, 1));
    CHECK_FALSE(center_membership(m2, theta(non)));
  }
}
