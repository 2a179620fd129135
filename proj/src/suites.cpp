#include "gitp/suites.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>

#include "gitp/innerprod.hpp"
#include "gitp/representations.hpp"
#include "gitp/sampling.hpp"

namespace gitp {

Scale parse_scale(const std::string& name) {
  if (name == "small") return Scale::kSmall;
  if (name == "medium") return Scale::kMedium;
  throw DomainError("unknown scale '" + name + "' (expected small or medium)");
}

std::string to_string(Scale s) { return s == Scale::kSmall ? "small" : "medium"; }

Scale default_scale() {
  const char* env = std::getenv("GITP_SCALE");
  return env && *env ? parse_scale(env) : Scale::kSmall;
}

namespace {

constexpr std::size_t kMaxFailureRecords = 20;
constexpr std::size_t kMaxWitnesses = 8;

class Runner {
 public:
  Runner(SuiteReport& report, std::uint64_t seed, Scale scale) : report_(report), seed_(seed), scale_(scale) {}

  std::size_t count(std::size_t small) const { return scale_ == Scale::kSmall ? small : 3 * small; }

  class Case {
   public:
    Case(Runner& run, std::size_t index) : run_(run), index_(index), s(case_seed(run.seed_, index)) {}

    bool check(bool ok, const std::string& what, const std::string& detail = "") {
      ++run_.report_.checks;
      if (!ok) run_.fail(index_, what, detail);
      return ok;
    }
    void witness(const std::string& label, const std::string& value) { run_.witness(label, value); }

   private:
    Runner& run_;
    std::size_t index_;

   public:
    Sampler s;
  };

  /// Runs `n` cases; an exception inside a case counts as one failed check.
  void cases(std::size_t n, const std::function<void(Case&)>& body) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t index = next_index_++;
      Case c(*this, index);
      ++report_.cases;
      try {
        body(c);
      } catch (const std::exception& e) {
        ++report_.checks;
        fail(index, "no exception", e.what());
      }
    }
  }

  void witness(const std::string& label, const std::string& value) {
    if (report_.witnesses.size() < kMaxWitnesses) report_.witnesses.push_back({label, value});
  }

 private:
  void fail(std::size_t index, const std::string& what, const std::string& detail) {
    ++report_.failures;
    if (report_.failure_records.size() < kMaxFailureRecords) report_.failure_records.push_back({index, what, detail});
  }

  SuiteReport& report_;
  std::uint64_t seed_;
  Scale scale_;
  std::size_t next_index_ = 0;
};

using Case = Runner::Case;

// ---------------------------------------------------------------- helpers

CoordFamily P(std::vector<Cyc> tail, std::map<std::size_t, Cyc> ov = {}) {
  return CoordFamily::scalar(std::move(tail), std::move(ov));
}

/// Unit tail with finitely many general overrides: the identity summand.
TensorElement identity_part(Sampler& s, const CoordinateAlgebra& alg) {
  TensorElement out(alg.coordinate_space());
  for (int t = 0; t < 2; ++t) {
    std::map<std::size_t, Vec> ov;
    ov[static_cast<std::size_t>(s.uniform(0, 2))] = s.nonzero_vector(alg.dim());
    out += s.nonzero_scalar() * theta(algebra_family(alg, {alg.unit()}, ov));
  }
  return out;
}

/// Class of the pointwise image of the periodic tails under f.
ClassId pointwise_class(const CoordinateAlgebra& alg, const CoordFamily& x, const CoordFamily& y,
                        const std::function<Vec(const Vec&, const Vec&)>& f) {
  const std::size_t p = std::lcm(x.tail().period(), y.tail().period());
  std::vector<Vec> tail;
  for (std::size_t r = 0; r < p; ++r) tail.push_back(f(x.tail().periodic_at(r), y.tail().periodic_at(r)));
  return class_of(algebra_family(alg, std::move(tail)));
}

/// Unit or 3/5-scaled unit family (the two halves of the contractive span).
CoordFamily contractive_family(Sampler& s, const SpaceFamily& spaces, bool strict) {
  const CoordFamily u = s.unit_family(spaces);
  if (!strict) return u;
  std::vector<Vec> tail;
  for (const Vec& v : u.tail().periodic()) {
    Vec w = v;
    for (Cyc& c : w) c = Cyc::rational(3, 5) * c;
    tail.push_back(std::move(w));
  }
  return CoordFamily::periodic(spaces, std::move(tail), u.overrides());
}

/// Linear independence of elements through their normal-form coordinates.
bool independent(const std::vector<TensorElement>& xs) {
  std::map<ClassId, std::vector<std::size_t>> supports;
  for (const auto& x : xs)
    for (const auto& [omega, blk] : x.components()) supports[omega] = support_union(supports[omega], blk.support);
  std::vector<Vec> rows;
  for (const auto& x : xs) {
    Vec row;
    for (const auto& [omega, support] : supports) {
      const auto it = x.components().find(omega);
      const Vec part = it == x.components().end()
                           ? Vec(embed_block(Block{{}, Vec{Cyc(0)}}, omega, support).size())
                           : embed_block(it->second, omega, support);
      row.insert(row.end(), part.begin(), part.end());
    }
    rows.push_back(std::move(row));
  }
  return rank_of_vectors(rows) == xs.size();
}

GroupFamily sample_group_family(Sampler& s, int order) {
  GroupFamily t;
  for (int k = 0, n = s.uniform(1, 2); k < n; ++k) t.tail.push_back(s.uniform(0, order - 1));
  for (int k = 0, n = s.uniform(0, 2); k < n; ++k) t.overrides[static_cast<std::size_t>(s.uniform(0, 3))] = s.uniform(0, order - 1);
  return t;
}

bool same_function(const GroupFamily& a, const GroupFamily& b) {
  for (std::size_t i = 0; i < 12; ++i)
    if (a.at(i) != b.at(i)) return false;
  return true;
}

/// Element that is zero by multilinearity but written with several terms.
TensorElement multilinear_zero(Sampler& s, const CoordinateAlgebra& alg) {
  const CoordFamily u = s.unitary_family(alg, true);
  const auto i0 = static_cast<std::size_t>(s.uniform(0, 3));
  const Vec v = s.nonzero_vector(alg.dim());
  const Cyc lambda = s.nonzero_scalar();
  Vec lv = v;
  for (Cyc& c : lv) c = lambda * c;
  return theta(u.with_override(i0, lv)) - lambda * theta(u.with_override(i0, v));
}

// ---------------------------------------------------------------- suites

void decomposition(Runner& run) {
  run.cases(run.count(200), [](Case& c) {
    Sampler& s = c.s;
    const SpaceFamily sp(std::vector<int>{s.uniform(1, 3), s.uniform(1, 3)});
    std::vector<CoordFamily> bases;
    for (int k = 0, n = s.uniform(1, 5); k < n; ++k) bases.push_back(s.family(sp, {2, 2, 3}));
    TensorElement a(sp);
    for (int k = 0, n = s.uniform(1, 6); k < n; ++k) {
      CoordFamily f = s.pick(bases);
      if (s.coin()) {
        const auto i = static_cast<std::size_t>(s.uniform(0, 3));
        f = f.with_override(i, s.nonzero_vector(static_cast<std::size_t>(sp.dim(i))));
      }
      a += s.scalar() * theta(f);
    }
    const auto parts = decompose(a);
    c.check(parts.size() <= 5, "at most one summand per generator class");
    TensorElement sum(sp);
    for (const auto& [omega, part] : parts) {
      c.check(part.component_count() == 1 && part.components().begin()->first == omega, "part lies in its class");
      c.check(!part.is_zero(), "parts are non-zero");
      for (const auto& [w, blk] : part.components()) c.check(blk.support.size() <= 4, "support within |F| <= 4");
      sum += part;
    }
    c.check(sum == a, "parts sum to the element", a.to_string());

    // Forced relations with mutually inequivalent generators.
    std::vector<CoordFamily> reps;
    while (reps.size() < 3) {
      const CoordFamily f = s.family(sp, {2, 1, 3});
      bool fresh = true;
      for (const auto& r : reps) fresh = fresh && !sim(r, f);
      if (fresh) reps.push_back(f);
    }
    TensorElement total(sp);
    std::vector<TensorElement> pieces;
    for (const auto& u : reps) {
      const auto i0 = static_cast<std::size_t>(s.uniform(0, 3));
      const CoordFamily v = u.with_override(i0, s.nonzero_vector(static_cast<std::size_t>(sp.dim(i0))));
      const Cyc lambda = s.nonzero_scalar();
      Vec w0 = u.at(i0);
      for (std::size_t k = 0; k < w0.size(); ++k) w0[k] = lambda * w0[k] + v.at(i0)[k];
      pieces.push_back(lambda * theta(u) + theta(v) - theta(u.with_override(i0, w0)));
      total += s.nonzero_scalar() * pieces.back();
    }
    c.check(total.is_zero(), "forced relation vanishes");
    for (const auto& p : pieces) c.check(p.is_zero(), "each summand of a forced relation vanishes");
  });
}

void inner_negative(Runner& run) {
  run.cases(1, [&run](Case& c) {
    const TensorElement xi = theta(P({Cyc::rational(1, 2)})) - theta(P({2}));
    const Cyc v = phi1_inner(xi, xi);
    c.check(v == Cyc(-2), "<x, x> = -2 for x = theta(1/2) - theta(2)", v.to_string());
    c.check(!psd_test(gram({xi})).psd, "form is not positive outside the contractive span");
    run.witness("phi1_inner", v.to_string());
    const TensorElement eta = theta(P({1}, {{0, Cyc::rational(1, 2)}})) - theta(P({1}, {{0, Cyc(2)}}));
    const Cyc w = phi1_inner(eta, eta);
    c.check(w == Cyc::rational(9, 4), "override variant gives 9/4", w.to_string());
    run.witness("override variant", w.to_string());
  });
}

void positivity(Runner& run) {
  std::size_t exact = 0, numeric = 0;
  run.cases(run.count(200), [&](Case& c) {
    Sampler& s = c.s;
    const SpaceFamily sp = SpaceFamily::constant(s.uniform(1, 2));
    std::vector<TensorElement> gens, units;
    std::vector<Cyc> coeffs;
    for (int k = 0, n = s.uniform(1, 6); k < n; ++k) {
      const bool strict = s.coin(0.3);
      gens.push_back(theta(contractive_family(s, sp, strict)));
      if (!strict) units.push_back(gens.back());
      coeffs.push_back(s.nonzero_scalar());
    }
    const PsdReport r = certify_gram(gens, SpanKind::kContractive);
    (r.exact ? exact : numeric)++;
    c.check(r.hermitian && r.psd, "Gram matrix of contractive generators is PSD",
            "min eigenvalue " + std::to_string(r.min_eigenvalue));
    TensorElement x(sp), u(sp);
    for (std::size_t k = 0; k < gens.size(); ++k) x += coeffs[k] * gens[k];
    for (std::size_t k = 0; k < units.size(); ++k) u += coeffs[k] * units[k];
    const Cyc nx = phi1_inner(x, x);
    c.check(nx.is_real() && nx.to_complex().real() >= -kPsdTolerance, "<x, x> >= 0", nx.to_string());
    if (!units.empty()) c.check(certify_gram(units, SpanKind::kUnit).psd, "Gram matrix of unit generators is PSD");
    if (!u.is_zero()) {
      const Cyc nu = phi1_inner(u, u);
      c.check(nu.is_real() && nu.to_complex().real() > 0, "definite on the unit span", nu.to_string());
    }
  });
  run.witness("exact gram certificates", std::to_string(exact));
  run.witness("numeric gram certificates", std::to_string(numeric));
}

void grading(Runner& run) {
  run.cases(run.count(200), [](Case& c) {
    Sampler& s = c.s;
    const CoordinateAlgebra alg = c.s.coin() ? CoordinateAlgebra::matrix(2) : CoordinateAlgebra::cyclic_group(2);
    auto single_class = [&](CoordFamily& fam) {
      fam = s.unitary_family(alg, true);
      const auto i = static_cast<std::size_t>(s.uniform(0, 3));
      return s.nonzero_scalar() * theta(fam) + s.nonzero_scalar() * theta(fam.with_override(i, s.nonzero_vector(alg.dim())));
    };
    CoordFamily x, y;
    const TensorElement a = single_class(x), b = single_class(y);
    const ClassId product_class = pointwise_class(alg, x, y, [&](const Vec& p, const Vec& q) { return alg.mul(p, q); });
    const ClassId star_class = pointwise_class(alg, x, x, [&](const Vec& p, const Vec&) { return alg.star(p); });
    c.check(class_mul(alg, class_of(x), class_of(y)) == product_class, "class product is pointwise");
    c.check(class_star(alg, class_of(x)) == star_class, "class involution is pointwise");
    const TensorElement ab = mul(alg, a, b);
    for (const auto& kv : ab.components()) c.check(kv.first == product_class, "product lies in class omega omega'");
    const TensorElement as = star(alg, a);
    for (const auto& kv : as.components()) c.check(kv.first == star_class, "star lies in class omega*");
    c.check(star(alg, as) == a, "star is involutive");
    c.check(star(alg, ab) == mul(alg, star(alg, b), as), "star is anti-multiplicative");
  });
}

void cocycle_canonical(Runner& run) {
  run.cases(run.count(100), [](Case& c) {
    static const CoordinateAlgebra algs[] = {CoordinateAlgebra::matrix(2), CoordinateAlgebra::scalars(),
                                             CoordinateAlgebra::cyclic_group(2)};
    const CoordinateAlgebra& alg = algs[c.s.uniform(0, 2)];
    const TwistedAction tw(alg);
    const ClassId mu = class_of(c.s.unitary_family(alg, true)), nu = class_of(c.s.unitary_family(alg, true));
    c.check(tw.cocycle(mu, nu) == algebra_unit(alg), "canonical cocycle is the unit");
    const TensorElement b = identity_part(c.s, alg);
    c.check(tw.act(mu, tw.act(nu, b)) == tw.act(class_mul(alg, mu, nu), b), "canonical action is an action");
  });
}

void cocycle_perturbed(Runner& run) {
  run.cases(run.count(100), [&run](Case& c) {
    Sampler& s = c.s;
    static const CoordinateAlgebra algs[] = {CoordinateAlgebra::matrix(2), CoordinateAlgebra::scalars(),
                                             CoordinateAlgebra::cyclic_group(2)};
    const CoordinateAlgebra& alg = algs[s.uniform(0, 2)];
    std::vector<ClassId> cls;
    for (int j = 0; j < 3; ++j) cls.push_back(class_of(s.unitary_family(alg, false)));
    TwistedAction tw(alg);
    const ClassId e = trivial_class(alg);
    const auto pool = alg.unitary_pool();
    for (const ClassId& w : cls)
      if (w != e) tw.perturb(w, {{static_cast<std::size_t>(s.uniform(0, 2)), s.pick(pool)}});
    const ClassId &mu = cls[0], &nu = cls[1], &sg = cls[2];
    const TensorElement b = identity_part(s, alg);
    const TensorElement m = tw.cocycle(mu, nu);
    c.check(tw.act(mu, tw.act(nu, b)) == mul(alg, mul(alg, m, tw.act(class_mul(alg, mu, nu), b)), star(alg, m)),
            "twisted action identity");
    c.check(mul(alg, m, tw.cocycle(class_mul(alg, mu, nu), sg)) ==
                mul(alg, tw.act(mu, tw.cocycle(nu, sg)), tw.cocycle(mu, class_mul(alg, nu, sg))),
            "cocycle identity");
    c.check(tw.cocycle(e, mu) == algebra_unit(alg) && tw.cocycle(mu, e) == algebra_unit(alg), "normalized cocycle");
    c.check(m.component_count() == 1 && m.components().begin()->first == e, "cocycle lies in the identity summand");
    if (m != algebra_unit(alg)) run.witness("non-trivial cocycle", alg.name() + ": " + m.to_string());
  });
}

void crossed_product(Runner& run) {
  run.cases(run.count(100), [](Case& c) {
    Sampler& s = c.s;
    const CoordinateAlgebra alg = s.coin() ? CoordinateAlgebra::matrix(2) : CoordinateAlgebra::cyclic_group(2);
    std::vector<ClassId> cls{trivial_class(alg)};
    for (int j = 0; j < 2; ++j) cls.push_back(class_of(s.unitary_family(alg, false)));
    TwistedAction tw(alg);
    for (const ClassId& w : cls)
      if (w != trivial_class(alg) && s.coin()) tw.perturb(w, {{1, s.pick(alg.unitary_pool())}});
    auto sample_f = [&]() {
      CrossedElement f;
      for (const ClassId& w : cls)
        if (s.coin(0.7)) f[w] = identity_part(s, alg);
      return f;
    };
    const CrossedElement f = sample_f(), g = sample_f();
    c.check(crossed_product_inverse(tw, crossed_product_iso(tw, f)) == f, "inverse after iso is the identity");
    c.check(crossed_product_iso(tw, convolve(tw, f, g)) == mul(alg, crossed_product_iso(tw, f), crossed_product_iso(tw, g)),
            "iso is multiplicative");
    c.check(crossed_product_iso(tw, crossed_star(tw, f)) == star(alg, crossed_product_iso(tw, f)), "iso is involutive");
    const TensorElement a = crossed_product_iso(tw, f) + theta(s.unitary_family(alg, true));
    c.check(crossed_product_iso(tw, crossed_product_inverse(tw, a)) == a, "iso after inverse is the identity");
  });
}

void busby_smith(Runner& run) {
  cocycle_canonical(run);
  cocycle_perturbed(run);
  crossed_product(run);
}

void group_algebra(Runner& run) {
  const CoordinateAlgebra c1 = CoordinateAlgebra::scalars();
  run.cases(run.count(100), [&c1](Case& c) {
    Sampler& s = c.s;
    const CoordFamily x = s.unit_scalar_family(true), y = s.unit_scalar_family(true);
    const TensorElement a = s.nonzero_scalar() * theta(x) + s.nonzero_scalar() * theta(s.unit_scalar_family(true));
    const TensorElement b = s.nonzero_scalar() * theta(y);
    c.check(group_algebra_iso(mul(c1, a, b)) == group_algebra_iso(a) * group_algebra_iso(b), "Phi is multiplicative");
    c.check(group_algebra_iso(star(c1, a)) == group_algebra_iso(a).star(), "Phi is involutive");
    c.check(group_algebra_inverse(group_algebra_iso(a)) == a, "Phi is invertible");
    // chi o Phi o E = phi1 on general scalar elements.
    TensorElement g(SpaceFamily::scalars());
    for (int k = 0, n = s.uniform(1, 4); k < n; ++k)
      g += s.nonzero_scalar() * theta(s.coin() ? s.family(SpaceFamily::scalars()) : s.unit_scalar_family(true));
    c.check(group_algebra_iso(expectation(g)).chi() == phi1(g), "chi o Phi o E = phi1", g.to_string());
  });
}

void group_embedding(Runner& run) {
  for (int order : {2, 3}) {
    const CoordinateAlgebra alg = CoordinateAlgebra::cyclic_group(order);
    run.cases(run.count(50), [&](Case& c) {
      const GroupFamily x = sample_group_family(c.s, order), y = sample_group_family(c.s, order);
      c.check(mul(alg, embed_group_element(alg, x), embed_group_element(alg, y)) ==
                  embed_group_element(alg, group_family_product(alg, x, y)),
              "lambda is multiplicative");
      c.check(star(alg, embed_group_element(alg, x)) == embed_group_element(alg, group_family_inverse(alg, x)),
              "lambda is involutive");
    });
    run.cases(1, [&](Case& c) {
      std::vector<GroupFamily> fams;
      while (fams.size() < 20) {
        const GroupFamily t = sample_group_family(c.s, order);
        bool fresh = true;
        for (const auto& f : fams) fresh = fresh && !same_function(f, t);
        if (fresh) fams.push_back(t);
      }
      std::vector<TensorElement> images;
      for (const auto& f : fams) images.push_back(embed_group_element(alg, f));
      c.check(independent(images), "20 distinct images are linearly independent");
    });
  }
}

void center(Runner& run) {
  const CoordinateAlgebra m2 = CoordinateAlgebra::matrix(2);
  auto scalar_matrix = [](const Cyc& z) { return Vec{z, Cyc(0), Cyc(0), z}; };
  auto central_element = [&](Sampler& s) {
    TensorElement out(m2.coordinate_space());
    for (int k = 0, n = s.uniform(1, 3); k < n; ++k) {
      std::vector<Vec> tail;
      for (int r = 0, p = s.uniform(1, 2); r < p; ++r) tail.push_back(scalar_matrix(s.unit_scalar()));
      std::map<std::size_t, Vec> ov;
      if (s.coin()) ov[static_cast<std::size_t>(s.uniform(0, 3))] = scalar_matrix(s.nonzero_scalar());
      out += s.nonzero_scalar() * theta(algebra_family(m2, std::move(tail), std::move(ov)));
    }
    return out;
  };
  run.cases(run.count(50), [&](Case& c) {
    c.check(center_membership(m2, central_element(c.s)), "central classes with central coordinates are central");
  });
  run.cases(run.count(50), [&](Case& c) {
    CoordFamily x;
    bool central_tail = true;
    while (central_tail) {
      x = c.s.unitary_family(m2, true);
      central_tail = true;
      for (const Vec& v : x.tail().periodic()) central_tail = central_tail && m2.is_central(v);
    }
    const TensorElement a = central_element(c.s) + c.s.nonzero_scalar() * theta(x);
    c.check(!center_membership(m2, a), "a non-central class leaves the center");
    const ClassId omega = class_of(x);
    const auto conj = distinct_conjugate_classes(m2, omega, 3);
    std::set<ClassId> distinct(conj.begin(), conj.end());
    distinct.insert(omega);
    c.check(conj.size() == 3 && distinct.size() == 4, "three distinct conjugate classes");
    const auto ws = conjugating_families(m2, omega, 3);
    for (std::size_t k = 0; k < ws.size() && k < conj.size(); ++k) {
      const TensorElement img = inner_action(m2, ws[k], theta(omega.section()));
      c.check(img.component_count() == 1 && img.components().begin()->first == conj[k],
              "conjugates come from the inner action");
    }
  });
}

void separation(Runner& run) {
  run.cases(1, [&run](Case& c) {
    const CoordFamily g = CoordFamily::geom_phase(Rational(1), 2);
    const CoordFamily one = P({1});
    c.check(approx(g, one), "approx(gphase, 1)");
    c.check(!sim(g, one), "not sim(gphase, 1)");
    c.check(kappa(class_of(g)) == kappa(class_of(one)), "kappa signatures agree");
    c.check(class_of(g) != class_of(one), "classes differ");
    const TensorElement w = theta(g);
    c.check(phi0(w) == Cyc(1), "phi0 of the witness is 1", phi0(w).to_string());
    c.check(phi1(w).is_zero(), "phi1 of the witness is 0", phi1(w).to_string());
    const TensorElement collapse = theta(one) - w;
    c.check(!collapse.is_zero(), "theta(e) - theta(gphase) is non-zero in normal form");
    c.check(phi0(collapse).is_zero(), "but vanishes under phi0");
    run.witness("witness", g.to_string());
  });
}

void injectivity(Runner& run) {
  const CoordinateAlgebra m2 = CoordinateAlgebra::matrix(2);
  const CoordinateRep def = CoordinateRep::defining(m2);
  run.cases(run.count(100), [&](Case& c) {
    Sampler& s = c.s;
    const TensorElement a = s.coin(0.2) ? multilinear_zero(s, m2) : s.ut_element(m2, 4);
    const KernelReport r = kernel_check(def, a);
    const KernelVerdict expected = a.is_zero() ? KernelVerdict::kInKernel : KernelVerdict::kNotInKernel;
    c.check(r.verdict == expected, "kernel_check agrees with normal-form zero", to_string(r.verdict) + ": " + r.detail);
    if (r.witness) {
      c.check(!apply_rep(def, a, theta(*r.witness)).is_zero(), "witness has a non-zero image");
      c.witness("kernel witness", r.witness->to_string());
    }
    std::vector<ClassId> classes;
    for (int k = 0, n = s.uniform(1, 3); k < n; ++k) {
      const ClassId w = class_of(s.unitary_family(m2, false));
      if (w != trivial_class(m2)) classes.push_back(w);
    }
    const CoordFamily xi = strong_faithfulness_witness(def, classes);
    const ClassId mu = class_of(xi);
    for (const ClassId& w : classes) c.check(class_action(def, w, mu) != mu, "witness is moved by every class");
  });
}

void left_regular(Runner& run) {
  const CoordinateAlgebra c1 = CoordinateAlgebra::scalars();
  const CoordinateRep reg = CoordinateRep::left_regular(c1);
  run.cases(run.count(50), [&](Case& c) {
    Sampler& s = c.s;
    auto sample = [&]() {
      TensorElement out(SpaceFamily::scalars());
      for (int k = 0, n = s.uniform(1, 3); k < n; ++k) out += s.nonzero_scalar() * theta(s.unit_scalar_family(true));
      return out;
    };
    const TensorElement a = sample(), xi = sample();
    const TensorElement image = apply_rep(reg, a, xi);
    const GroupAlgebraElement lhs = group_algebra_iso(image);
    const GroupAlgebraElement rhs = group_algebra_iso(a) * group_algebra_iso(xi);
    c.check(lhs == rhs, "Phi(Psi(a) xi) = lambda(Phi(a)) Phi(xi)", lhs.to_string() + " vs " + rhs.to_string());
    c.check(group_algebra_inverse(rhs) == image, "transport back through Phi inverse");
  });
}

void hilbert_algebra(Runner& run) {
  const CoordinateAlgebra z2 = CoordinateAlgebra::cyclic_group(2);
  run.cases(1, [&](Case& c) {
    const HilbertReport r = hilbert_algebra_check(z2, run.count(100), c.s.rng()());
    c.check(r.samples == run.count(100), "all samples ran");
    c.check(r.star_isometry_failures == 0, "involution is isometric",
            std::to_string(r.star_isometry_failures) + " failures");
    c.check(r.adjoint_failures == 0, "<xy, z> = <y, x* z>", std::to_string(r.adjoint_failures) + " failures");
    const TensorElement e = algebra_unit(z2);
    c.check(phi1_inner(e, e) == Cyc(1), "||e|| = 1");
    run.witness("max left-multiplication bound", std::to_string(r.max_left_bound));
  });
}

void adjoint(Runner& run) {
  const CoordinateAlgebra m2 = CoordinateAlgebra::matrix(2);
  const CoordinateAlgebra z2 = CoordinateAlgebra::cyclic_group(2);
  CycMatrix swap(2, 2);
  swap(0, 1) = Cyc(1);
  swap(1, 0) = Cyc(1);
  const std::vector<CoordinateRep> reps{CoordinateRep::defining(m2), CoordinateRep::left_regular(m2),
                                        CoordinateRep(z2, SpaceFamily::constant(2), {CycMatrix::identity(2), swap})};
  run.cases(run.count(100), [&](Case& c) {
    Sampler& s = c.s;
    const CoordinateRep& rep = reps[static_cast<std::size_t>(s.uniform(0, 2))];
    const CoordinateAlgebra& alg = rep.algebra();
    auto vector_element = [&]() {
      TensorElement out(rep.space());
      for (int k = 0, n = s.uniform(1, 2); k < n; ++k) out += s.nonzero_scalar() * theta(s.unit_family(rep.space()));
      return out;
    };
    const TensorElement a = s.ut_element(alg, 2), xi = vector_element(), eta = vector_element();
    const Cyc lhs = phi1_inner(apply_rep(rep, a, xi), eta);
    const Cyc rhs = phi1_inner(xi, apply_rep(rep, star(alg, a), eta));
    c.check(lhs == rhs, "<Psi(a) xi, eta> = <xi, Psi(a*) eta>", lhs.to_string() + " vs " + rhs.to_string());
  });
}

struct SuiteEntry {
  SuiteInfo info;
  void (*body)(Runner&);
};

const std::vector<SuiteEntry>& entries() {
  static const std::vector<SuiteEntry> kEntries = {
      {{"decomposition", "the algebraic tensor product is the direct sum of its class summands"}, decomposition},
      {{"inner-negative", "the sesquilinear form is not positive on the whole space"}, inner_negative},
      {{"positivity", "the form is positive on the contractive span and definite on the unit span"}, positivity},
      {{"grading", "the unitary-graded span is graded by classes and closed under the involution"}, grading},
      {{"cocycle-canonical", "canonical sections give a trivial cocycle"}, cocycle_canonical},
      {{"cocycle-perturbed", "perturbed sections give a Busby-Smith cocycle twisted action"}, cocycle_perturbed},
      {{"crossed-product", "the unitary-graded span is a twisted crossed product"}, crossed_product},
      {{"busby-smith", "cocycle twisted action and crossed product decomposition"}, busby_smith},
      {{"group-algebra", "Phi is a *-isomorphism onto the group algebra of unit scalar classes"}, group_algebra},
      {{"group-embedding", "elementary tensors of group elements form a basis of the product group algebra"},
       group_embedding},
      {{"center", "the center is the fixed-point algebra; non-central classes have infinite conjugacy classes"},
       center},
      {{"separation", "equivalence modulo finitely many coordinates is finer than von Neumann equivalence"},
       separation},
      {{"injectivity", "injective coordinate representations induce an injective representation"}, injectivity},
      {{"left-regular", "identity coordinate representations give the left regular representation"}, left_regular},
      {{"hilbert-algebra", "the unitary-graded span of Hilbert algebras is a unital Hilbert algebra"},
       hilbert_algebra},
      {{"adjoint", "the induced representation is *-compatible"}, adjoint},
  };
  return kEntries;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> kCatalog = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return kCatalog;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, Scale scale) {
  for (const auto& e : entries()) {
    if (e.info.name != name) continue;
    SuiteReport report;
    report.suite = e.info.name;
    report.anchor = e.info.anchor;
    report.seed = seed;
    report.scale = scale;
    Runner run(report, seed, scale);
    const auto start = std::chrono::steady_clock::now();
    e.body(run);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  throw DomainError("unknown suite '" + name + "'");
}

nlohmann::ordered_json to_json(const SuiteReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["anchor"] = r.anchor;
  j["seed"] = r.seed;
  j["scale"] = to_string(r.scale);
  j["cases"] = r.cases;
  j["checks"] = r.checks;
  j["failures"] = r.failures;
  j["passed"] = r.passed();
  j["failure_records"] = nlohmann::ordered_json::array();
  for (const auto& f : r.failure_records)
    j["failure_records"].push_back({{"case", f.case_index}, {"check", f.check}, {"detail", f.detail}});
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back({{"label", w.label}, {"value", w.value}});
  if (include_timing) j["timing"] = {{"elapsed_ms", r.elapsed_ms}};
  return j;
}

}  // namespace gitp
