#include "gitp/families.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace gitp {

namespace {

std::size_t lcm_size(std::size_t a, std::size_t b) {
  const long long l = lcm_checked(static_cast<long long>(a), static_cast<long long>(b));
  if (l > 1 << 20) throw CapExceeded("combined tail period too large");
  return static_cast<std::size_t>(l);
}

template <typename T, typename Eq>
std::size_t minimal_period(const std::vector<T>& values, Eq eq) {
  const std::size_t n = values.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = eq(values[i], values[i % p]);
    if (ok) return p;
  }
  return n;
}

std::string vec_to_string(const Vec& v) {
  if (v.size() == 1) return v[0].to_string();
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += v[k].to_string();
  }
  return out + "]";
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

}  // namespace

bool real_positive(const Cyc& x) {
  if (!x.is_real()) return false;
  if (x.is_rational()) return sgn(x.as_rational()) > 0;
  const double d = x.to_complex().real();
  if (std::abs(d) < 1e-12) throw DomainError("cannot certify the sign of " + x.to_string());
  return d > 0;
}

bool real_at_most_one(const Cyc& x) {
  if (!x.is_real()) throw DomainError("expected a real value, got " + x.to_string());
  if (x.is_one()) return true;
  if (x.is_rational()) return x.as_rational() <= 1;
  const double d = x.to_complex().real();
  if (std::abs(d - 1.0) < 1e-12) throw DomainError("cannot certify " + x.to_string() + " <= 1");
  return d < 1.0;
}

// ---------------------------------------------------------------- SpaceFamily

SpaceFamily::SpaceFamily(std::vector<int> dims, std::vector<Vec> weights)
    : dims_(std::move(dims)), weights_(std::move(weights)) {
  if (dims_.empty()) throw DomainError("space family needs at least one dimension");
  for (int d : dims_) {
    if (d < 1) throw DomainError("coordinate spaces must be non-zero");
    if (d > kMaxValueDim) throw CapExceeded("coordinate dimension exceeds " + std::to_string(kMaxValueDim));
  }
  if (weights_.empty()) {
    for (int d : dims_) weights_.emplace_back(static_cast<std::size_t>(d), Cyc(1));
  }
  if (weights_.size() != dims_.size()) throw DomainError("weights must align with the dimension period");
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (weights_[k].size() != static_cast<std::size_t>(dims_[k]))
      throw DomainError("weight vector length differs from coordinate dimension");
    for (const Cyc& w : weights_[k])
      if (!real_positive(w)) throw DomainError("inner-product weights must be positive reals");
  }
  std::vector<std::pair<int, Vec>> slots;
  for (std::size_t k = 0; k < dims_.size(); ++k) slots.emplace_back(dims_[k], weights_[k]);
  const std::size_t p = minimal_period(slots, [](const auto& a, const auto& b) { return a == b; });
  dims_.resize(p);
  weights_.resize(p);
}

SpaceFamily SpaceFamily::weighted(Vec weights) {
  const int d = static_cast<int>(weights.size());
  return SpaceFamily(std::vector<int>{d}, std::vector<Vec>{std::move(weights)});
}

bool SpaceFamily::all_one_dimensional() const {
  return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 1; });
}

bool SpaceFamily::standard_form() const {
  for (const auto& w : weights_)
    for (const Cyc& x : w)
      if (!x.is_one()) return false;
  return true;
}

Cyc SpaceFamily::inner(std::size_t i, const Vec& x, const Vec& y) const {
  const Vec& w = weights_at(i);
  if (x.size() != w.size() || y.size() != w.size())
    throw DomainError("vector length differs from coordinate dimension at index " + std::to_string(i));
  Cyc sum;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (x[k].is_zero() || y[k].is_zero()) continue;
    sum += w[k] * x[k] * y[k].conj();
  }
  return sum;
}

std::strong_ordering operator<=>(const SpaceFamily& a, const SpaceFamily& b) {
  if (auto c = a.dims_ <=> b.dims_; c != 0) return c;
  if (a.weights_.size() != b.weights_.size()) return a.weights_.size() <=> b.weights_.size();
  for (std::size_t k = 0; k < a.weights_.size(); ++k)
    if (auto c = a.weights_[k] <=> b.weights_[k]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string SpaceFamily::to_string() const {
  std::string out = "dims=[";
  for (std::size_t k = 0; k < dims_.size(); ++k) out += (k ? "," : "") + std::to_string(dims_[k]);
  out += "]";
  if (!standard_form()) {
    out += " weights=[";
    for (std::size_t k = 0; k < weights_.size(); ++k) out += (k ? "," : "") + vec_to_string(weights_[k]);
    out += "]";
  }
  return out;
}

// ---------------------------------------------------------------- Phase / Tail

Cyc Phase::value_at(std::size_t i) const {
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(i));
  Rational t = turns / Rational(power);
  return Cyc::root_of_unity(t);
}

Cyc Phase::infinite_product() const {
  Rational t = turns * Rational(base, base - 1);
  t.canonicalize();
  return Cyc::root_of_unity(t);
}

std::strong_ordering operator<=>(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (auto c = a[k] <=> b[k]; c != 0) return c;
  return std::strong_ordering::equal;
}

Tail::Tail(std::vector<Vec> periodic, std::vector<Phase> phases)
    : periodic_(std::move(periodic)) {
  if (periodic_.empty()) throw DomainError("tail needs at least one value");
  periodic_.resize(minimal_period(periodic_, [](const Vec& a, const Vec& b) { return a == b; }));
  std::map<long, Rational> merged;
  for (const Phase& ph : phases) {
    if (ph.base < 2) throw DomainError("geometric phase needs q = 1/m with m >= 2");
    merged[ph.base] += ph.turns;
  }
  for (auto& [base, turns] : merged) {
    turns.canonicalize();
    if (sgn(turns) != 0) phases_.push_back(Phase{base, turns});
  }
  if (!phases_.empty())
    for (const Vec& v : periodic_)
      if (v.size() != 1) throw DomainError("geometric phases are restricted to one-dimensional coordinates");
}

Cyc Tail::phase_at(std::size_t i) const {
  Cyc out(1);
  for (const Phase& ph : phases_) out *= ph.value_at(i);
  return out;
}

Vec Tail::value_at(std::size_t i) const {
  if (phases_.empty()) return periodic_at(i);
  return Vec{periodic_at(i)[0] * phase_at(i)};
}

bool Tail::has_zero_value() const {
  return std::any_of(periodic_.begin(), periodic_.end(), [](const Vec& v) { return is_zero_vec(v); });
}

std::strong_ordering operator<=>(const Tail& a, const Tail& b) {
  if (a.periodic_.size() != b.periodic_.size()) return a.periodic_.size() <=> b.periodic_.size();
  for (std::size_t k = 0; k < a.periodic_.size(); ++k)
    if (auto c = a.periodic_[k] <=> b.periodic_[k]; c != 0) return c;
  if (a.phases_.size() != b.phases_.size()) return a.phases_.size() <=> b.phases_.size();
  for (std::size_t k = 0; k < a.phases_.size(); ++k) {
    if (auto c = a.phases_[k].base <=> b.phases_[k].base; c != 0) return c;
    const int c = cmp(a.phases_[k].turns, b.phases_[k].turns);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- CoordFamily

namespace {

void check_alignment(const SpaceFamily& spaces, const Tail& tail) {
  const std::size_t window = lcm_size(spaces.period(), tail.period());
  for (std::size_t i = 0; i < window; ++i)
    if (tail.periodic_at(i).size() != static_cast<std::size_t>(spaces.dim(i)))
      throw DomainError("tail value at index " + std::to_string(i) + " has length " +
                        std::to_string(tail.periodic_at(i).size()) + ", expected " +
                        std::to_string(spaces.dim(i)));
  if (tail.has_phases() && !spaces.all_one_dimensional())
    throw DomainError("geometric phases are restricted to one-dimensional coordinates");
}

}  // namespace

CoordFamily::CoordFamily(SpaceFamily spaces, Tail tail, std::map<std::size_t, Vec> overrides)
    : spaces_(std::move(spaces)), tail_(std::move(tail)) {
  check_alignment(spaces_, tail_);
  for (auto& [i, v] : overrides) {
    if (v.size() != static_cast<std::size_t>(spaces_.dim(i)))
      throw DomainError("override at index " + std::to_string(i) + " has wrong length");
    if (v != tail_.value_at(i)) overrides_.emplace(i, std::move(v));
  }
}

CoordFamily CoordFamily::periodic(SpaceFamily spaces, std::vector<Vec> values,
                                  std::map<std::size_t, Vec> overrides) {
  return CoordFamily(std::move(spaces), Tail(std::move(values)), std::move(overrides));
}

CoordFamily CoordFamily::scalar(std::vector<Cyc> values, std::map<std::size_t, Cyc> overrides) {
  std::vector<Vec> tail;
  for (auto& v : values) tail.push_back(Vec{v});
  std::map<std::size_t, Vec> ov;
  for (auto& [i, v] : overrides) ov.emplace(i, Vec{v});
  return CoordFamily(SpaceFamily::scalars(), Tail(std::move(tail)), std::move(ov));
}

CoordFamily CoordFamily::geom_phase(const Rational& c, long base, std::map<std::size_t, Cyc> overrides) {
  std::map<std::size_t, Vec> ov;
  for (auto& [i, v] : overrides) ov.emplace(i, Vec{v});
  return CoordFamily(SpaceFamily::scalars(), Tail({Vec{Cyc(1)}}, {Phase{base, c}}), std::move(ov));
}

Vec CoordFamily::at(std::size_t i) const {
  if (auto it = overrides_.find(i); it != overrides_.end()) return it->second;
  return tail_.value_at(i);
}

std::size_t CoordFamily::horizon() const {
  return overrides_.empty() ? 0 : overrides_.rbegin()->first + 1;
}

bool CoordFamily::has_zero_coordinate() const {
  if (tail_.has_zero_value()) return true;
  return std::any_of(overrides_.begin(), overrides_.end(),
                     [](const auto& kv) { return is_zero_vec(kv.second); });
}

bool CoordFamily::is_unit() const {
  const std::size_t window = lcm_size(spaces_.period(), tail_.period());
  for (std::size_t i = 0; i < window; ++i)
    if (!spaces_.norm2(i, tail_.periodic_at(i)).is_one()) return false;
  for (const auto& [i, v] : overrides_)
    if (!spaces_.norm2(i, v).is_one()) return false;
  return true;
}

bool CoordFamily::in_unit_ball() const {
  const std::size_t window = lcm_size(spaces_.period(), tail_.period());
  for (std::size_t i = 0; i < window; ++i)
    if (!real_at_most_one(spaces_.norm2(i, tail_.periodic_at(i)))) return false;
  for (const auto& [i, v] : overrides_)
    if (!real_at_most_one(spaces_.norm2(i, v))) return false;
  return true;
}

CoordFamily CoordFamily::with_override(std::size_t i, Vec value) const {
  auto ov = overrides_;
  ov[i] = std::move(value);
  return CoordFamily(spaces_, tail_, std::move(ov));
}

std::string CoordFamily::to_string() const {
  std::string out = "fam(tail=[";
  for (std::size_t k = 0; k < tail_.period(); ++k) {
    if (k) out += ", ";
    out += vec_to_string(tail_.periodic()[k]);
  }
  out += "]";
  for (const Phase& ph : tail_.phases())
    out += "*gphase(" + rational_to_string(ph.turns) + ", 1/" + std::to_string(ph.base) + ")";
  if (!overrides_.empty()) {
    out += ";";
    bool first = true;
    for (const auto& [i, v] : overrides_) {
      out += first ? " " : ", ";
      first = false;
      out += std::to_string(i) + "->" + vec_to_string(v);
    }
  }
  return out + ")";
}

// ---------------------------------------------------------------- ClassId

ClassId::ClassId(SpaceFamily spaces, Tail tail) : spaces_(std::move(spaces)), tail_(std::move(tail)) {
  check_alignment(spaces_, tail_);
}

bool ClassId::is_trivial_scalar() const {
  return spaces_.all_one_dimensional() && !tail_.has_phases() && tail_.period() == 1 &&
         tail_.periodic()[0][0].is_one();
}

std::strong_ordering operator<=>(const ClassId& a, const ClassId& b) {
  if (auto c = a.spaces_ <=> b.spaces_; c != 0) return c;
  return a.tail_ <=> b.tail_;
}

// ---------------------------------------------------------------- relations

namespace {

void require_same_spaces(const CoordFamily& x, const CoordFamily& y, const char* what) {
  if (x.spaces() != y.spaces())
    throw DomainError(std::string(what) + ": families live over different space families");
}

void require_unit(const CoordFamily& x, const char* what) {
  if (!x.is_unit()) throw DomainError(std::string(what) + ": family has a non-unit coordinate");
}

}  // namespace

bool sim(const CoordFamily& x, const CoordFamily& y) {
  require_same_spaces(x, y, "sim");
  return x.tail() == y.tail();
}

ClassId class_of(const CoordFamily& x) {
  if (x.has_zero_coordinate()) throw DomainError("class_of: family has a zero coordinate");
  return ClassId(x.spaces(), x.tail());
}

CoordFamily section(const ClassId& omega) { return omega.section(); }

bool approx(const CoordFamily& x, const CoordFamily& y) {
  require_same_spaces(x, y, "approx");
  require_unit(x, "approx");
  require_unit(y, "approx");
  // Phase factors converge geometrically to 1 and never affect summability;
  // the periodic parts must pair to exactly 1 at every residue.
  const std::size_t window =
      lcm_size(x.spaces().period(), lcm_size(x.tail().period(), y.tail().period()));
  for (std::size_t r = 0; r < window; ++r)
    if (!x.spaces().inner(r, x.tail().periodic_at(r), y.tail().periodic_at(r)).is_one()) return false;
  return true;
}

bool approx_t(const CoordFamily& x, const CoordFamily& y) {
  if (!x.spaces().all_one_dimensional() || !y.spaces().all_one_dimensional())
    throw DomainError("approx_t: only one-dimensional coordinates are supported");
  require_same_spaces(x, y, "approx_t");
  require_unit(x, "approx_t");
  require_unit(y, "approx_t");
  // Overrides are finite and never affect the relation.
  return approx(scalar_quotient(x.without_overrides(), y.without_overrides()), ones_family());
}

ApproxSignature kappa(const ClassId& omega) {
  if (!omega.section().is_unit()) throw DomainError("kappa: class is not a unit class");
  return ApproxSignature{omega.spaces(), omega.tail().periodic()};
}

// ---------------------------------------------------------------- pointwise ops

CoordFamily combine(const CoordFamily& x, const CoordFamily& y, const SpaceFamily& out,
                    const CoordOp2& f, PhaseRule rule) {
  if (rule == PhaseRule::kNone && (x.tail().has_phases() || y.tail().has_phases()))
    throw DomainError("operation is not defined on geometric-phase tails");
  const std::size_t window =
      lcm_size(out.period(), lcm_size(x.tail().period(), y.tail().period()));
  std::vector<Vec> values;
  values.reserve(window);
  for (std::size_t r = 0; r < window; ++r)
    values.push_back(f(r, x.tail().periodic_at(r), y.tail().periodic_at(r)));
  std::vector<Phase> phases = x.tail().phases();
  for (const Phase& ph : y.tail().phases())
    phases.push_back(Phase{ph.base, rule == PhaseRule::kSubtract ? Rational(-ph.turns) : ph.turns});
  std::set<std::size_t> indices;
  for (const auto& kv : x.overrides()) indices.insert(kv.first);
  for (const auto& kv : y.overrides()) indices.insert(kv.first);
  std::map<std::size_t, Vec> overrides;
  for (std::size_t i : indices) overrides.emplace(i, f(i, x.at(i), y.at(i)));
  return CoordFamily(out, Tail(std::move(values), std::move(phases)), std::move(overrides));
}

CoordFamily transform(const CoordFamily& x, const SpaceFamily& out, const CoordOp1& f,
                      bool negate_phases, bool allow_phases) {
  if (!allow_phases && x.tail().has_phases())
    throw DomainError("operation is not defined on geometric-phase tails");
  const std::size_t window = lcm_size(out.period(), x.tail().period());
  std::vector<Vec> values;
  values.reserve(window);
  for (std::size_t r = 0; r < window; ++r) values.push_back(f(r, x.tail().periodic_at(r)));
  std::vector<Phase> phases;
  for (const Phase& ph : x.tail().phases())
    phases.push_back(Phase{ph.base, negate_phases ? Rational(-ph.turns) : ph.turns});
  std::map<std::size_t, Vec> overrides;
  for (const auto& [i, v] : x.overrides()) overrides.emplace(i, f(i, v));
  return CoordFamily(out, Tail(std::move(values), std::move(phases)), std::move(overrides));
}

namespace {

void require_scalar(const CoordFamily& x, const char* what) {
  if (!x.spaces().all_one_dimensional())
    throw DomainError(std::string(what) + ": expected a one-dimensional family");
}

}  // namespace

CoordFamily scalar_product(const CoordFamily& x, const CoordFamily& y) {
  require_scalar(x, "scalar_product");
  require_scalar(y, "scalar_product");
  return combine(
      x, y, SpaceFamily::scalars(),
      [](std::size_t, const Vec& a, const Vec& b) { return Vec{a[0] * b[0]}; }, PhaseRule::kAdd);
}

CoordFamily scalar_quotient(const CoordFamily& x, const CoordFamily& y) {
  require_scalar(x, "scalar_quotient");
  require_scalar(y, "scalar_quotient");
  return combine(
      x, y, SpaceFamily::scalars(),
      [](std::size_t, const Vec& a, const Vec& b) { return Vec{a[0] / b[0]}; },
      PhaseRule::kSubtract);
}

CoordFamily scalar_conj(const CoordFamily& x) {
  require_scalar(x, "scalar_conj");
  return transform(
      x, SpaceFamily::scalars(), [](std::size_t, const Vec& a) { return Vec{a[0].conj()}; }, true, true);
}

CoordFamily scale_family(const CoordFamily& beta, const CoordFamily& x) {
  require_scalar(beta, "scale_family");
  return combine(
      beta, x, x.spaces(),
      [](std::size_t, const Vec& b, const Vec& v) {
        Vec out = v;
        for (Cyc& c : out) c = b[0] * c;
        return out;
      },
      PhaseRule::kAdd);
}

CoordFamily inner_family(const CoordFamily& x, const CoordFamily& y) {
  require_same_spaces(x, y, "inner_family");
  const SpaceFamily& spaces = x.spaces();
  return combine(
      x, y, SpaceFamily::scalars(),
      [&spaces](std::size_t i, const Vec& a, const Vec& b) { return Vec{spaces.inner(i, a, b)}; },
      PhaseRule::kSubtract);
}

ClassId class_product(const ClassId& a, const ClassId& b) {
  return class_of(scalar_product(a.section(), b.section()));
}

ClassId class_inverse(const ClassId& a) { return class_of(scalar_quotient(ones_family(), a.section())); }

CoordFamily ones_family() { return CoordFamily::scalar({Cyc(1)}); }

// ---------------------------------------------------------------- vector pool

namespace {
constexpr int kMaxPoolOrder = 24;
}  // namespace

std::vector<Vec> unit_vector_pool(const SpaceFamily& spaces, std::size_t i, std::size_t size) {
  const std::size_t d = static_cast<std::size_t>(spaces.dim(i));
  std::vector<Vec> raw;
  for (std::size_t a = 0; a < d; ++a) {
    Vec v(d);
    v[a] = Cyc(1);
    raw.push_back(std::move(v));
  }
  if (d == 1) {
    for (int n : {2, 4, 3, 8, 5, 6, 12}) raw.push_back(Vec{Cyc::zeta(n)});
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      for (auto [s, t] : {std::pair{Cyc::rational(3, 5), Cyc::rational(4, 5)},
                          std::pair{Cyc::rational(4, 5), Cyc::rational(3, 5)},
                          std::pair{Cyc::rational(3, 5), Cyc::rational(-4, 5)}}) {
        Vec v(d);
        v[a] = s;
        v[b] = t;
        raw.push_back(std::move(v));
      }
    }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      for (int n : {4, 3, 8}) {
        Vec v(d);
        v[a] = Cyc(1);
        v[b] = Cyc::zeta(n);
        raw.push_back(std::move(v));
      }
  if (d > 2) {
    Vec v(d, Cyc(1));
    raw.push_back(v);
    for (std::size_t a = 0; a < d; ++a) v[a] = Cyc::zeta(static_cast<int>(d) + 1, static_cast<long>(a));
    raw.push_back(v);
  }
  std::vector<Vec> pool;
  for (Vec& v : raw) {
    if (pool.size() >= size) break;
    const Cyc n2 = spaces.norm2(i, v);
    if (!n2.is_one()) {
      if (!n2.is_rational()) continue;
      const Cyc root = Cyc::sqrt_of(n2.as_rational());
      // Keep the pool in small cyclotomic fields; large conductors make every
      // downstream product expensive.
      if (root.order() > kMaxPoolOrder) continue;
      const Cyc scale = root.inverse();
      for (Cyc& c : v) c = scale * c;
    }
    pool.push_back(std::move(v));
  }
  return pool;
}

}  // namespace gitp
