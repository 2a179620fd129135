#include "gitp/staralgebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gitp {

namespace {

Vec zero_vec(std::size_t d) { return Vec(d, Cyc(0)); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- CoordinateAlgebra

CoordinateAlgebra::CoordinateAlgebra(Kind kind, std::string name, std::size_t dim, Vec structure, Vec unit,
                                     CycMatrix involution, Vec weights, std::vector<std::vector<int>> group_table)
    : kind_(kind),
      name_(std::move(name)),
      dim_(dim),
      structure_(std::move(structure)),
      unit_(std::move(unit)),
      involution_(std::move(involution)),
      weights_(std::move(weights)),
      table_(std::move(group_table)) {
  if (dim_ == 0) throw DomainError("algebra must be non-zero");
  if (dim_ > static_cast<std::size_t>(kMaxCoordinateDim))
    throw CapExceeded("algebra dimension exceeds " + std::to_string(kMaxCoordinateDim));
  const std::size_t d = dim_;
  if (structure_.size() != d * d * d) throw DomainError("structure constants have the wrong size");
  if (unit_.size() != d || weights_.size() != d) throw DomainError("unit/weights have the wrong size");
  if (involution_.rows() != d || involution_.cols() != d) throw DomainError("involution has the wrong shape");
  (void)coordinate_space();  // validates the weights

  sparse_.assign(d * d, {});
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) {
        const Cyc& c = structure_[(j * d + k) * d + l];
        if (!c.is_zero()) sparse_[j * d + k].emplace_back(l, c);
      }

  // Associativity, unit, involutive anti-automorphism, trace compatibility.
  for (std::size_t j = 0; j < d; ++j) {
    const Vec bj = basis(j);
    if (mul(unit_, bj) != bj || mul(bj, unit_) != bj) throw DomainError(name_ + ": unit axiom fails");
    if (star(star(bj)) != bj) throw DomainError(name_ + ": involution is not involutive");
    for (std::size_t k = 0; k < d; ++k) {
      const Vec bk = basis(k);
      const Vec jk = mul(bj, bk);
      if (star(jk) != mul(star(bk), star(bj))) throw DomainError(name_ + ": involution is not anti-multiplicative");
      for (std::size_t l = 0; l < d; ++l) {
        const Vec bl = basis(l);
        if (mul(jk, bl) != mul(bj, mul(bk, bl))) throw DomainError(name_ + ": multiplication is not associative");
        if (inner(jk, bl) != inner(bk, mul(star(bj), bl)))
          throw DomainError(name_ + ": weights are not a trace form for left multiplication");
      }
    }
  }
  if (!table_.empty()) {
    for (std::size_t g = 0; g < table_.size(); ++g) {
      bool left = true;
      for (std::size_t h = 0; h < table_.size(); ++h) left = left && table_[g][h] == static_cast<int>(h);
      if (left) identity_ = static_cast<int>(g);
    }
    if (identity_ < 0) throw DomainError(name_ + ": group table has no identity");
    for (std::size_t g = 0; g < table_.size(); ++g) (void)group_inverse(static_cast<int>(g));
  }
}

CoordinateAlgebra CoordinateAlgebra::scalars() {
  return CoordinateAlgebra(Kind::kScalar, "C", 1, Vec{Cyc(1)}, Vec{Cyc(1)}, CycMatrix::identity(1), Vec{Cyc(1)});
}

CoordinateAlgebra CoordinateAlgebra::matrix(int n) {
  if (n < 1) throw DomainError("matrix algebra needs n >= 1");
  if (n * n > kMaxCoordinateDim) throw CapExceeded("matrix algebra dimension exceeds the coordinate cap");
  const auto un = static_cast<std::size_t>(n);
  const std::size_t d = un * un;
  Vec structure(d * d * d);
  // E_ab E_cd = delta_bc E_ad
  for (std::size_t a = 0; a < un; ++a)
    for (std::size_t b = 0; b < un; ++b)
      for (std::size_t c = 0; c < un; ++c)
        for (std::size_t e = 0; e < un; ++e)
          if (b == c) structure[((a * un + b) * d + (c * un + e)) * d + (a * un + e)] = Cyc(1);
  Vec unit = zero_vec(d);
  for (std::size_t a = 0; a < un; ++a) unit[a * un + a] = Cyc(1);
  CycMatrix inv(d, d);
  for (std::size_t a = 0; a < un; ++a)
    for (std::size_t b = 0; b < un; ++b) inv(b * un + a, a * un + b) = Cyc(1);
  return CoordinateAlgebra(Kind::kMatrix, "M" + std::to_string(n), d, std::move(structure), std::move(unit),
                           std::move(inv), Vec(d, Cyc(Rational(1, n))));
}

CoordinateAlgebra CoordinateAlgebra::functions(int n) {
  if (n < 1) throw DomainError("function algebra needs n >= 1");
  if (n > kMaxCoordinateDim) throw CapExceeded("function algebra dimension exceeds the coordinate cap");
  const auto d = static_cast<std::size_t>(n);
  Vec structure(d * d * d);
  for (std::size_t k = 0; k < d; ++k) structure[(k * d + k) * d + k] = Cyc(1);
  return CoordinateAlgebra(Kind::kFunction, "C^" + std::to_string(n), d, std::move(structure), Vec(d, Cyc(1)),
                           CycMatrix::identity(d), Vec(d, Cyc(Rational(1, n))));
}

CoordinateAlgebra CoordinateAlgebra::group(std::vector<std::vector<int>> table, std::string name) {
  const std::size_t d = table.size();
  if (d == 0) throw DomainError("group table is empty");
  for (const auto& row : table) {
    if (row.size() != d) throw DomainError("group table is not square");
    for (int x : row)
      if (x < 0 || static_cast<std::size_t>(x) >= d) throw DomainError("group table entry out of range");
  }
  if (d > static_cast<std::size_t>(kMaxCoordinateDim)) throw CapExceeded("group order exceeds the coordinate cap");
  Vec structure(d * d * d);
  for (std::size_t g = 0; g < d; ++g)
    for (std::size_t h = 0; h < d; ++h) structure[(g * d + h) * d + static_cast<std::size_t>(table[g][h])] = Cyc(1);
  int e = -1;
  for (std::size_t g = 0; g < d && e < 0; ++g) {
    bool left = true;
    for (std::size_t h = 0; h < d; ++h) left = left && table[g][h] == static_cast<int>(h);
    if (left) e = static_cast<int>(g);
  }
  if (e < 0) throw DomainError(name + ": group table has no identity");
  Vec unit = zero_vec(d);
  unit[static_cast<std::size_t>(e)] = Cyc(1);
  CycMatrix inv(d, d);
  for (std::size_t g = 0; g < d; ++g) {
    int ginv = -1;
    for (std::size_t h = 0; h < d; ++h)
      if (table[g][h] == e && table[h][g] == e) ginv = static_cast<int>(h);
    if (ginv < 0) throw DomainError(name + ": element without inverse");
    inv(static_cast<std::size_t>(ginv), g) = Cyc(1);
  }
  return CoordinateAlgebra(Kind::kGroup, std::move(name), d, std::move(structure), std::move(unit), std::move(inv),
                           Vec(d, Cyc(1)), std::move(table));
}

CoordinateAlgebra CoordinateAlgebra::cyclic_group(int n) {
  if (n < 1) throw DomainError("cyclic group needs n >= 1");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = (g + h) % n;
  return group(std::move(table), "C[Z" + std::to_string(n) + "]");
}

Vec CoordinateAlgebra::basis(std::size_t k) const {
  Vec v = zero_vec(dim_);
  v.at(k) = Cyc(1);
  return v;
}

Vec CoordinateAlgebra::mul(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DomainError(name_ + ": element has the wrong length");
  Vec out = zero_vec(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (y[k].is_zero()) continue;
      const Cyc xy = x[j] * y[k];
      for (const auto& [l, c] : sparse_[j * dim_ + k]) out[l] += c * xy;
    }
  }
  return out;
}

Vec CoordinateAlgebra::star(const Vec& x) const {
  if (x.size() != dim_) throw DomainError(name_ + ": element has the wrong length");
  Vec c(dim_);
  for (std::size_t k = 0; k < dim_; ++k) c[k] = x[k].conj();
  return involution_.apply(c);
}

Cyc CoordinateAlgebra::inner(const Vec& x, const Vec& y) const { return coordinate_space().inner(0, x, y); }

bool CoordinateAlgebra::is_unitary(const Vec& x) const {
  const Vec xs = star(x);
  return mul(xs, x) == unit_ && mul(x, xs) == unit_;
}

bool CoordinateAlgebra::is_central(const Vec& x) const {
  for (std::size_t k = 0; k < dim_; ++k) {
    const Vec b = basis(k);
    if (mul(x, b) != mul(b, x)) return false;
  }
  return true;
}

CycMatrix CoordinateAlgebra::left_matrix(const Vec& a) const {
  CycMatrix m(dim_, dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    const Vec col = mul(a, basis(k));
    for (std::size_t r = 0; r < dim_; ++r) m(r, k) = col[r];
  }
  return m;
}

CycMatrix CoordinateAlgebra::right_matrix(const Vec& a) const {
  CycMatrix m(dim_, dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    const Vec col = mul(basis(k), a);
    for (std::size_t r = 0; r < dim_; ++r) m(r, k) = col[r];
  }
  return m;
}

std::vector<Vec> CoordinateAlgebra::unitary_pool() const {
  std::vector<Vec> pool;
  auto push = [&](const Vec& v) {
    if (is_unitary(v) && std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
  };
  const Cyc i = Cyc::zeta(4);
  switch (kind_) {
    case Kind::kScalar:
      for (const Cyc& c : {Cyc(1), Cyc(-1), i, Cyc::zeta(3)}) push(Vec{c});
      break;
    case Kind::kFunction:
      push(unit_);
      for (std::size_t k = 0; k < dim_; ++k) {
        Vec v = unit_;
        v[k] = Cyc(-1);
        push(v);
        v[k] = i;
        push(v);
      }
      break;
    case Kind::kMatrix: {
      std::size_t n = 1;
      while (n * n < dim_) ++n;
      auto mat = [&](const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Cyc>>& entries) {
        Vec v = zero_vec(dim_);
        for (const auto& [rc, c] : entries) v[rc.first * n + rc.second] = c;
        return v;
      };
      push(unit_);
      for (std::size_t k = 0; k < n; ++k) {
        Vec v = unit_;
        v[k * n + k] = Cyc(-1);
        push(v);
        v[k * n + k] = i;
        push(v);
      }
      {
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, Cyc>> shift;
        for (std::size_t a = 0; a < n; ++a) shift.push_back({{a, (a + 1) % n}, Cyc(1)});
        push(mat(shift));
      }
      if (n == 2) {
        push(mat({{{0, 1}, -i}, {{1, 0}, i}}));
        const Cyc c = Cyc::rational(3, 5), s = Cyc::rational(4, 5);
        push(mat({{{0, 0}, c}, {{0, 1}, -s}, {{1, 0}, s}, {{1, 1}, c}}));
        const Cyc h = Cyc::sqrt_of(Rational(1, 2));
        push(mat({{{0, 0}, h}, {{0, 1}, h}, {{1, 0}, h}, {{1, 1}, -h}}));
      }
      break;
    }
    case Kind::kGroup:
      for (std::size_t g = 0; g < dim_; ++g) push(basis(g));
      break;
  }
  return pool;
}

int CoordinateAlgebra::group_mul(int g, int h) const {
  if (table_.empty()) throw DomainError(name_ + ": not a group algebra");
  if (g < 0 || h < 0 || static_cast<std::size_t>(g) >= table_.size() || static_cast<std::size_t>(h) >= table_.size())
    throw DomainError(name_ + ": group element out of range");
  return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
}

int CoordinateAlgebra::group_inverse(int g) const {
  for (std::size_t h = 0; h < table_.size(); ++h)
    if (group_mul(g, static_cast<int>(h)) == identity_) return static_cast<int>(h);
  throw DomainError(name_ + ": element without inverse");
}

// ---------------------------------------------------------------- families

namespace {

void require_algebra_family(const CoordinateAlgebra& alg, const CoordFamily& x, const char* what) {
  if (x.spaces() != alg.coordinate_space())
    throw DomainError(std::string(what) + ": family does not live in " + alg.name());
}

void require_algebra_element(const CoordinateAlgebra& alg, const TensorElement& a, const char* what) {
  if (a.spaces() != alg.coordinate_space())
    throw DomainError(std::string(what) + ": element does not live over " + alg.name());
}

PhaseRule phase_rule(const CoordinateAlgebra& alg) {
  return alg.dim() == 1 ? PhaseRule::kAdd : PhaseRule::kNone;
}

}  // namespace

CoordFamily algebra_family(const CoordinateAlgebra& alg, std::vector<Vec> tail, std::map<std::size_t, Vec> overrides) {
  return CoordFamily::periodic(alg.coordinate_space(), std::move(tail), std::move(overrides));
}

CoordFamily unit_family(const CoordinateAlgebra& alg) { return algebra_family(alg, {alg.unit()}); }

TensorElement algebra_unit(const CoordinateAlgebra& alg) { return theta(unit_family(alg)); }

bool is_unitary_family(const CoordinateAlgebra& alg, const CoordFamily& u) {
  require_algebra_family(alg, u, "is_unitary_family");
  // Phases are unit scalars and do not affect unitarity.
  for (const Vec& v : u.tail().periodic())
    if (!alg.is_unitary(v)) return false;
  for (const auto& kv : u.overrides())
    if (!alg.is_unitary(kv.second)) return false;
  return true;
}

CoordFamily family_product(const CoordinateAlgebra& alg, const CoordFamily& x, const CoordFamily& y) {
  require_algebra_family(alg, x, "family_product");
  require_algebra_family(alg, y, "family_product");
  return combine(
      x, y, alg.coordinate_space(), [&alg](std::size_t, const Vec& a, const Vec& b) { return alg.mul(a, b); },
      phase_rule(alg));
}

CoordFamily family_star(const CoordinateAlgebra& alg, const CoordFamily& x) {
  require_algebra_family(alg, x, "family_star");
  return transform(
      x, alg.coordinate_space(), [&alg](std::size_t, const Vec& a) { return alg.star(a); }, true, alg.dim() == 1);
}

ClassId class_mul(const CoordinateAlgebra& alg, const ClassId& a, const ClassId& b) {
  const CoordFamily p = family_product(alg, a.section(), b.section());
  if (p.tail().has_zero_value()) throw DomainError("class product has zero coordinates");
  return ClassId(p.spaces(), p.tail());
}

ClassId class_star(const CoordinateAlgebra& alg, const ClassId& a) {
  const CoordFamily s = family_star(alg, a.section());
  return ClassId(s.spaces(), s.tail());
}

ClassId trivial_class(const CoordinateAlgebra& alg) { return ClassId(alg.coordinate_space(), Tail({alg.unit()})); }

bool is_unitary_graded(const CoordinateAlgebra& alg, const TensorElement& a) {
  require_algebra_element(alg, a, "is_unitary_graded");
  for (const auto& kv : a.components())
    if (!is_unitary_family(alg, kv.first.section())) return false;
  return true;
}

// ---------------------------------------------------------------- tensor level

namespace {

/// Product of two blocks sharing `support`, via sparse structure constants.
Vec block_product(const CoordinateAlgebra& alg, const Vec& x, const Vec& y, std::size_t positions) {
  const std::size_t d = alg.dim();
  std::size_t size = 1;
  for (std::size_t p = 0; p < positions; ++p) size *= d;
  Vec out(size);
  std::vector<std::size_t> jd(positions), kd(positions);
  std::vector<std::pair<std::size_t, Cyc>> acc, next;
  for (std::size_t J = 0; J < size; ++J) {
    if (x[J].is_zero()) continue;
    for (std::size_t p = 0, t = J; p < positions; ++p, t /= d) jd[positions - 1 - p] = t % d;
    for (std::size_t K = 0; K < size; ++K) {
      if (y[K].is_zero()) continue;
      for (std::size_t p = 0, t = K; p < positions; ++p, t /= d) kd[positions - 1 - p] = t % d;
      acc.assign(1, {0, x[J] * y[K]});
      for (std::size_t p = 0; p < positions && !acc.empty(); ++p) {
        next.clear();
        for (const auto& [idx, c] : acc)
          for (const auto& [l, sc] : alg.product_terms(jd[p], kd[p])) next.emplace_back(idx * d + l, c * sc);
        acc.swap(next);
      }
      for (const auto& [idx, c] : acc) out[idx] += c;
    }
  }
  return out;
}

}  // namespace

TensorElement mul(const CoordinateAlgebra& alg, const TensorElement& a, const TensorElement& b) {
  require_algebra_element(alg, a, "mul");
  require_algebra_element(alg, b, "mul");
  TensorElement out(alg.coordinate_space());
  for (const auto& [wa, ba] : a.components()) {
    for (const auto& [wb, bb] : b.components()) {
      const CoordFamily p = family_product(alg, wa.section(), wb.section());
      // Zero tail coordinates kill every elementary tensor of the product class.
      if (p.tail().has_zero_value()) continue;
      const ClassId target(p.spaces(), p.tail());
      const auto support = support_union(ba.support, bb.support);
      if (support.size() > kMaxSupport) throw CapExceeded("product support exceeds the cap");
      const Vec x = embed_block(ba, wa, support);
      const Vec y = embed_block(bb, wb, support);
      out.add_block(target, Block{support, block_product(alg, x, y, support.size())});
    }
  }
  return out;
}

TensorElement star(const CoordinateAlgebra& alg, const TensorElement& a) {
  require_algebra_element(alg, a, "star");
  TensorElement out(alg.coordinate_space());
  for (const auto& [w, blk] : a.components()) {
    const ClassId target = class_star(alg, w);
    Vec data = blk.data;
    for (Cyc& c : data) c = c.conj();
    std::vector<std::size_t> shape = block_shape(alg.coordinate_space(), blk.support);
    for (std::size_t axis = 0; axis < blk.support.size(); ++axis)
      data = apply_mode(data, shape, axis, alg.involution());
    out.add_block(target, Block{blk.support, std::move(data)});
  }
  return out;
}

TensorElement inner_action(const CoordinateAlgebra& alg, const CoordFamily& u, const TensorElement& a) {
  if (!is_unitary_family(alg, u)) throw DomainError("inner_action: family is not unitary");
  return mul(alg, mul(alg, theta(u), a), theta(family_star(alg, u)));
}

// ---------------------------------------------------------------- twisted action

TwistedAction::TwistedAction(CoordinateAlgebra alg) : alg_(std::move(alg)) {}

void TwistedAction::perturb(const ClassId& mu, std::map<std::size_t, Vec> overrides) {
  if (mu.spaces() != alg_.coordinate_space()) throw DomainError("perturb: class does not live in " + alg_.name());
  if (mu == trivial_class(alg_)) throw DomainError("perturb: the identity class keeps the unit section");
  if (!is_unitary_family(alg_, mu.section())) throw DomainError("perturb: class is not unitary");
  const CoordFamily c(mu.spaces(), mu.tail(), overrides);
  if (!is_unitary_family(alg_, c)) throw DomainError("perturb: overrides must be unitary");
  perturbations_[mu] = c.overrides();
}

CoordFamily TwistedAction::section(const ClassId& mu) const {
  const auto it = perturbations_.find(mu);
  if (it == perturbations_.end()) return mu.section();
  return CoordFamily(mu.spaces(), mu.tail(), it->second);
}

TensorElement TwistedAction::cocycle(const ClassId& mu, const ClassId& nu) const {
  const ClassId mn = class_mul(alg_, mu, nu);
  const CoordFamily m =
      family_product(alg_, family_product(alg_, section(mu), section(nu)), family_star(alg_, section(mn)));
  return theta(m);
}

TensorElement TwistedAction::act(const ClassId& mu, const TensorElement& b) const {
  return inner_action(alg_, section(mu), b);
}

namespace {

void require_identity_summand(const CoordinateAlgebra& alg, const TensorElement& a, const char* what) {
  const ClassId e = trivial_class(alg);
  for (const auto& kv : a.components())
    if (kv.first != e) throw DomainError(std::string(what) + ": value outside the identity-class summand");
}

void accumulate(CrossedElement& f, const ClassId& omega, const TensorElement& v) {
  if (v.is_zero()) return;
  auto it = f.find(omega);
  if (it == f.end()) {
    f.emplace(omega, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) f.erase(it);
}

void check_crossed(const TwistedAction& tw, const CrossedElement& f, const char* what) {
  for (const auto& [omega, v] : f) {
    if (!is_unitary_family(tw.algebra(), omega.section()))
      throw DomainError(std::string(what) + ": support class is not unitary");
    require_identity_summand(tw.algebra(), v, what);
  }
}

}  // namespace

CrossedElement convolve(const TwistedAction& tw, const CrossedElement& f, const CrossedElement& g) {
  check_crossed(tw, f, "convolve");
  check_crossed(tw, g, "convolve");
  const CoordinateAlgebra& alg = tw.algebra();
  CrossedElement out;
  for (const auto& [mu, fm] : f)
    for (const auto& [nu, gn] : g)
      accumulate(out, class_mul(alg, mu, nu), mul(alg, mul(alg, fm, tw.act(mu, gn)), tw.cocycle(mu, nu)));
  return out;
}

CrossedElement crossed_star(const TwistedAction& tw, const CrossedElement& f) {
  check_crossed(tw, f, "crossed_star");
  const CoordinateAlgebra& alg = tw.algebra();
  CrossedElement out;
  for (const auto& [tau, ft] : f) {
    const ClassId sigma = class_star(alg, tau);  // inverse class
    accumulate(out, sigma, mul(alg, star(alg, tw.cocycle(sigma, tau)), tw.act(sigma, star(alg, ft))));
  }
  return out;
}

CrossedElement crossed_add(const CrossedElement& f, const CrossedElement& g) {
  CrossedElement out = f;
  for (const auto& [omega, v] : g) accumulate(out, omega, v);
  return out;
}

TensorElement crossed_product_iso(const TwistedAction& tw, const CrossedElement& f) {
  check_crossed(tw, f, "crossed_product_iso");
  TensorElement out(tw.algebra().coordinate_space());
  for (const auto& [omega, v] : f) out += mul(tw.algebra(), v, tw.section_element(omega));
  return out;
}

CrossedElement crossed_product_inverse(const TwistedAction& tw, const TensorElement& a) {
  const CoordinateAlgebra& alg = tw.algebra();
  require_algebra_element(alg, a, "crossed_product_inverse");
  if (!is_unitary_graded(alg, a)) throw DomainError("crossed_product_inverse: element has non-unitary classes");
  CrossedElement out;
  for (const auto& [omega, part] : decompose(a))
    accumulate(out, omega, mul(alg, part, star(alg, tw.section_element(omega))));
  return out;
}

// ---------------------------------------------------------------- group algebra bridge

GroupAlgebraElement GroupAlgebraElement::lambda(const ClassId& omega, const Cyc& coeff) {
  GroupAlgebraElement g;
  g.add(omega, coeff);
  return g;
}

Cyc GroupAlgebraElement::coefficient(const ClassId& omega) const {
  const auto it = coeffs_.find(omega);
  return it == coeffs_.end() ? Cyc(0) : it->second;
}

Cyc GroupAlgebraElement::chi() const { return coefficient(ClassId(SpaceFamily::scalars(), Tail({Vec{Cyc(1)}}))); }

void GroupAlgebraElement::add(const ClassId& omega, const Cyc& c) {
  if (!omega.spaces().all_one_dimensional() || !omega.section().is_unit())
    throw DomainError("group algebra: class is not a unit scalar class");
  if (c.is_zero()) return;
  auto it = coeffs_.find(omega);
  if (it == coeffs_.end()) {
    coeffs_.emplace(omega, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

GroupAlgebraElement GroupAlgebraElement::star() const {
  GroupAlgebraElement out;
  for (const auto& [omega, c] : coeffs_) out.add(class_inverse(omega), c.conj());
  return out;
}

GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement out = a;
  for (const auto& [omega, c] : b.coeffs_) out.add(omega, c);
  return out;
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement out;
  for (const auto& [wa, ca] : a.coeffs_)
    for (const auto& [wb, cb] : b.coeffs_) out.add(class_product(wa, wb), ca * cb);
  return out;
}

GroupAlgebraElement operator*(const Cyc& s, const GroupAlgebraElement& a) {
  GroupAlgebraElement out;
  for (const auto& [omega, c] : a.coeffs_) out.add(omega, s * c);
  return out;
}

std::string GroupAlgebraElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [omega, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    const std::string cs = c.to_string();
    if (!c.is_one()) os << (c.is_rational() ? cs : "(" + cs + ")") << "*";
    os << "lambda(" << omega.to_string() << ")";
  }
  return os.str();
}

Cyc phi_char(const CoordFamily& alpha) {
  if (!alpha.spaces().all_one_dimensional() || !alpha.is_unit())
    throw DomainError("phi: expects a unit one-dimensional family");
  Cyc out(1);
  for (const auto& [i, v] : alpha.overrides()) out *= v[0] / alpha.tail().value_at(i)[0];
  return out;
}

GroupAlgebraElement group_algebra_iso(const TensorElement& a) {
  if (!a.spaces().all_one_dimensional()) throw DomainError("Phi: expects an element over one-dimensional spaces");
  GroupAlgebraElement out;
  for (const auto& kv : a.components()) {
    if (!kv.first.section().is_unit()) throw DomainError("Phi: class " + kv.first.to_string() + " is not unit");
    out.add(kv.first, a.scalar_coefficient(kv.first));
  }
  return out;
}

TensorElement group_algebra_inverse(const GroupAlgebraElement& g) {
  TensorElement out(SpaceFamily::scalars());
  for (const auto& [omega, c] : g.coefficients()) out += c * theta(omega.section());
  return out;
}

TensorElement expectation(const TensorElement& s) {
  TensorElement out(s.spaces());
  for (const auto& [omega, part] : decompose(s))
    if (omega.section().is_unit()) out += part;
  return out;
}

// ---------------------------------------------------------------- group elements

int GroupFamily::at(std::size_t i) const {
  const auto it = overrides.find(i);
  if (it != overrides.end()) return it->second;
  if (tail.empty()) throw DomainError("group family has an empty tail");
  return tail[i % tail.size()];
}

namespace {

void require_group(const CoordinateAlgebra& alg) {
  if (alg.kind() != CoordinateAlgebra::Kind::kGroup) throw DomainError(alg.name() + " is not a group algebra");
}

}  // namespace

GroupFamily group_family_product(const CoordinateAlgebra& alg, const GroupFamily& s, const GroupFamily& t) {
  require_group(alg);
  if (s.tail.empty() || t.tail.empty()) throw DomainError("group family has an empty tail");
  const std::size_t p = std::lcm(s.tail.size(), t.tail.size());
  GroupFamily out;
  for (std::size_t r = 0; r < p; ++r) out.tail.push_back(alg.group_mul(s.tail[r % s.tail.size()], t.tail[r % t.tail.size()]));
  for (const auto& kv : s.overrides) out.overrides[kv.first] = alg.group_mul(s.at(kv.first), t.at(kv.first));
  for (const auto& kv : t.overrides) out.overrides[kv.first] = alg.group_mul(s.at(kv.first), t.at(kv.first));
  return out;
}

GroupFamily group_family_inverse(const CoordinateAlgebra& alg, const GroupFamily& t) {
  require_group(alg);
  GroupFamily out;
  for (int g : t.tail) out.tail.push_back(alg.group_inverse(g));
  for (const auto& [i, g] : t.overrides) out.overrides[i] = alg.group_inverse(g);
  return out;
}

TensorElement embed_group_element(const CoordinateAlgebra& alg, const GroupFamily& t) {
  require_group(alg);
  if (t.tail.empty()) throw DomainError("group family has an empty tail");
  auto delta = [&alg](int g) {
    if (g < 0 || static_cast<std::size_t>(g) >= alg.group_order()) throw DomainError("group element out of range");
    return alg.basis(static_cast<std::size_t>(g));
  };
  std::vector<Vec> tail;
  for (int g : t.tail) tail.push_back(delta(g));
  std::map<std::size_t, Vec> ov;
  for (const auto& [i, g] : t.overrides) ov[i] = delta(g);
  return theta(algebra_family(alg, std::move(tail), std::move(ov)));
}

// ---------------------------------------------------------------- centers

std::vector<Vec> coordinate_center(const CoordinateAlgebra& alg) {
  const std::size_t d = alg.dim();
  std::vector<Vec> rows;
  for (std::size_t k = 0; k < d; ++k) {
    const CycMatrix c = alg.right_matrix(alg.basis(k)) - alg.left_matrix(alg.basis(k));
    for (std::size_t r = 0; r < d; ++r) {
      Vec row(d);
      for (std::size_t col = 0; col < d; ++col) row[col] = c(r, col);
      rows.push_back(std::move(row));
    }
  }
  return CycMatrix::from_rows(rows).nullspace();
}

bool center_membership(const CoordinateAlgebra& alg, const TensorElement& a) {
  require_algebra_element(alg, a, "center_membership");
  std::vector<CycMatrix> commutators;
  for (std::size_t k = 0; k < alg.dim(); ++k)
    commutators.push_back(alg.left_matrix(alg.basis(k)) - alg.right_matrix(alg.basis(k)));
  for (const auto& [omega, blk] : a.components()) {
    // A central element commutes with every inner automorphism, so its class
    // is fixed by all unitary conjugations: its tail values must be central.
    for (const Vec& v : omega.tail().periodic())
      if (!alg.is_central(v)) return false;
    const auto shape = block_shape(alg.coordinate_space(), blk.support);
    for (std::size_t axis = 0; axis < blk.support.size(); ++axis)
      for (const CycMatrix& c : commutators)
        if (!is_zero_vec(apply_mode(blk.data, shape, axis, c))) return false;
  }
  return true;
}

std::vector<CoordFamily> conjugating_families(const CoordinateAlgebra& alg, const ClassId& omega, std::size_t k) {
  if (omega.spaces() != alg.coordinate_space()) throw DomainError("class does not live in " + alg.name());
  const Tail& tail = omega.tail();
  std::size_t residue = tail.period();
  Vec witness;
  for (std::size_t r = 0; r < tail.period() && residue == tail.period(); ++r) {
    const Vec& c = tail.periodic_at(r);
    if (alg.is_central(c)) continue;
    for (const Vec& u : alg.unitary_pool())
      if (alg.mul(alg.mul(u, c), alg.star(u)) != c) {
        residue = r;
        witness = u;
        break;
      }
  }
  if (residue == tail.period()) throw WitnessNotFound("class has central tail values; no conjugating unitary", 0);
  std::vector<CoordFamily> out;
  const Vec& e = alg.unit();
  for (long p = 2; out.size() < k; ++p) {
    if (!is_prime(p)) continue;
    const std::size_t period = tail.period() * static_cast<std::size_t>(p);
    std::vector<Vec> values(period, e);
    values[residue] = witness;
    out.push_back(algebra_family(alg, std::move(values)));
  }
  return out;
}

std::vector<ClassId> distinct_conjugate_classes(const CoordinateAlgebra& alg, const ClassId& omega, std::size_t k) {
  std::vector<ClassId> out;
  for (const CoordFamily& w : conjugating_families(alg, omega, k)) {
    const CoordFamily conj = family_product(alg, family_product(alg, w, omega.section()), family_star(alg, w));
    ClassId c(conj.spaces(), conj.tail());
    if (c == omega || std::find(out.begin(), out.end(), c) != out.end())
      throw Error("conjugate classes failed to separate");
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace gitp
