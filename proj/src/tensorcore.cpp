#include "gitp/tensorcore.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gitp {

std::vector<std::size_t> block_shape(const SpaceFamily& spaces, const std::vector<std::size_t>& support) {
  std::vector<std::size_t> shape;
  shape.reserve(support.size());
  for (std::size_t i : support) shape.push_back(static_cast<std::size_t>(spaces.dim(i)));
  return shape;
}

namespace {

std::size_t product(const std::vector<std::size_t>& shape, std::size_t from, std::size_t to) {
  std::size_t p = 1;
  for (std::size_t k = from; k < to; ++k) p *= shape[k];
  return p;
}

void check_support(const std::vector<std::size_t>& support) {
  if (support.size() > kMaxSupport)
    throw CapExceeded("block support of size " + std::to_string(support.size()) + " exceeds " +
                      std::to_string(kMaxSupport));
  for (std::size_t k = 1; k < support.size(); ++k)
    if (support[k - 1] >= support[k]) throw DomainError("block support must be strictly increasing");
}

// Inserts the vector s as a new axis at position `axis`.
Vec insert_axis(const Vec& data, const std::vector<std::size_t>& shape, std::size_t axis, const Vec& s) {
  const std::size_t pre = product(shape, 0, axis);
  const std::size_t post = product(shape, axis, shape.size());
  Vec out(pre * s.size() * post);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t a = 0; a < s.size(); ++a) {
      if (s[a].is_zero()) continue;
      for (std::size_t q = 0; q < post; ++q) {
        const Cyc& v = data[p * post + q];
        if (!v.is_zero()) out[(p * s.size() + a) * post + q] = v * s[a];
      }
    }
  return out;
}

// If data = b' (x) s along `axis`, returns b'; otherwise an empty vector.
std::optional<Vec> factor_axis(const Vec& data, const std::vector<std::size_t>& shape, std::size_t axis,
                               const Vec& s) {
  const std::size_t d = shape[axis];
  const std::size_t pre = product(shape, 0, axis);
  const std::size_t post = product(shape, axis + 1, shape.size());
  std::size_t k0 = 0;
  while (k0 < d && s[k0].is_zero()) ++k0;
  const Cyc inv = s[k0].inverse();
  Vec out(pre * post);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t q = 0; q < post; ++q) {
      const Cyc& lead = data[(p * d + k0) * post + q];
      const Cyc lambda = lead.is_zero() ? Cyc(0) : lead * inv;
      for (std::size_t a = 0; a < d; ++a) {
        const Cyc& v = data[(p * d + a) * post + q];
        if (a == k0) continue;
        if (lambda.is_zero() ? !v.is_zero() : v != lambda * s[a]) return std::nullopt;
      }
      out[p * post + q] = lambda;
    }
  return out;
}

}  // namespace

Vec apply_mode(const Vec& data, const std::vector<std::size_t>& shape, std::size_t axis, const CycMatrix& m) {
  if (m.cols() != shape[axis]) throw DomainError("operator does not match coordinate dimension");
  const std::size_t pre = product(shape, 0, axis);
  const std::size_t post = product(shape, axis + 1, shape.size());
  const std::size_t in = shape[axis], outd = m.rows();
  Vec out(pre * outd * post);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t c = 0; c < in; ++c)
      for (std::size_t q = 0; q < post; ++q) {
        const Cyc& v = data[(p * in + c) * post + q];
        if (v.is_zero()) continue;
        for (std::size_t r = 0; r < outd; ++r)
          if (!m(r, c).is_zero()) out[(p * outd + r) * post + q] += m(r, c) * v;
      }
  return out;
}

std::vector<std::size_t> support_union(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Vec embed_block(const Block& block, const ClassId& omega, const std::vector<std::size_t>& target) {
  Vec data = block.data;
  std::vector<std::size_t> current = block.support;
  std::vector<std::size_t> shape = block_shape(omega.spaces(), current);
  for (std::size_t j : target) {
    auto pos = std::lower_bound(current.begin(), current.end(), j);
    if (pos != current.end() && *pos == j) continue;
    const std::size_t axis = static_cast<std::size_t>(pos - current.begin());
    data = insert_axis(data, shape, axis, omega.section_at(j));
    current.insert(pos, j);
    shape.insert(shape.begin() + static_cast<std::ptrdiff_t>(axis), static_cast<std::size_t>(omega.spaces().dim(j)));
  }
  if (current != target) throw DomainError("embedding target must contain the block support");
  return data;
}

Block normalize_block(const ClassId& omega, Block block) {
  check_support(block.support);
  std::vector<std::size_t> shape = block_shape(omega.spaces(), block.support);
  if (block.data.size() != product(shape, 0, shape.size()))
    throw DomainError("block data does not match the support shape");
  if (is_zero_vec(block.data)) return Block{{}, {}};
  for (std::size_t axis = block.support.size(); axis-- > 0;) {
    auto reduced = factor_axis(block.data, shape, axis, omega.section_at(block.support[axis]));
    if (!reduced) continue;
    block.data = std::move(*reduced);
    block.support.erase(block.support.begin() + static_cast<std::ptrdiff_t>(axis));
    shape.erase(shape.begin() + static_cast<std::ptrdiff_t>(axis));
  }
  return block;
}

// ---------------------------------------------------------------- TensorElement

void TensorElement::check_spaces() const {
  for (int d : spaces_.dims())
    if (d > kMaxCoordinateDim)
      throw CapExceeded("tensor coordinates are limited to dimension " + std::to_string(kMaxCoordinateDim));
}

TensorElement TensorElement::from_block(const ClassId& omega, Block block) {
  TensorElement t(omega.spaces());
  t.add_block(omega, std::move(block));
  return t;
}

void TensorElement::add_block(const ClassId& omega, Block block) {
  if (omega.spaces() != spaces_) throw DomainError("class lives over a different space family");
  block = normalize_block(omega, std::move(block));
  if (block.data.empty()) return;
  auto it = components_.find(omega);
  if (it == components_.end()) {
    components_.emplace(omega, std::move(block));
    return;
  }
  const auto support = support_union(it->second.support, block.support);
  Vec sum = embed_block(it->second, omega, support);
  const Vec other = embed_block(block, omega, support);
  for (std::size_t k = 0; k < sum.size(); ++k)
    if (!other[k].is_zero()) sum[k] += other[k];
  Block merged = normalize_block(omega, Block{support, std::move(sum)});
  if (merged.data.empty())
    components_.erase(it);
  else
    it->second = std::move(merged);
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  if (other.spaces_ != spaces_) throw DomainError("adding elements over different space families");
  for (const auto& [omega, block] : other.components_) add_block(omega, block);
  warning_ = warning_ || other.warning_;
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) { return *this += Cyc(-1) * other; }

TensorElement operator*(const Cyc& s, const TensorElement& a) {
  TensorElement out(a.spaces_);
  out.warning_ = a.warning_;
  if (s.is_zero()) return out;
  for (const auto& [omega, block] : a.components_) {
    Block b = block;
    for (Cyc& c : b.data) c = s * c;
    out.components_.emplace(omega, std::move(b));
  }
  return out;
}

TensorElement TensorElement::part(const ClassId& omega) const {
  TensorElement out(spaces_);
  if (auto it = components_.find(omega); it != components_.end()) out.components_.emplace(omega, it->second);
  return out;
}

Cyc TensorElement::scalar_coefficient(const ClassId& omega) const {
  auto it = components_.find(omega);
  if (it == components_.end()) return Cyc(0);
  if (!it->second.support.empty()) throw DomainError("component is not a multiple of the section");
  return it->second.data[0];
}

std::string TensorElement::to_string() const {
  if (components_.empty()) return "0";
  std::string out;
  for (const auto& [omega, block] : components_) {
    const auto shape = block_shape(spaces_, block.support);
    for (std::size_t flat = 0; flat < block.data.size(); ++flat) {
      const Cyc& c = block.data[flat];
      if (c.is_zero()) continue;
      CoordFamily fam = omega.section();
      std::size_t rest = flat;
      for (std::size_t axis = block.support.size(); axis-- > 0;) {
        const std::size_t k = rest % shape[axis];
        rest /= shape[axis];
        Vec e(shape[axis]);
        e[k] = Cyc(1);
        fam = fam.with_override(block.support[axis], e);
      }
      std::string coeff = c.to_string();
      const bool simple = c.is_monomial() || c.is_rational();
      std::string term;
      if (c.is_one())
        term = "theta(" + fam.to_string() + ")";
      else if (c == Cyc(-1))
        term = "-theta(" + fam.to_string() + ")";
      else
        term = (simple ? coeff : "(" + coeff + ")") + "*theta(" + fam.to_string() + ")";
      if (out.empty())
        out = term;
      else if (term[0] == '-')
        out += " - " + term.substr(1);
      else
        out += " + " + term;
    }
  }
  return out;
}

TensorElement theta(const CoordFamily& x) {
  TensorElement out(x.spaces());
  if (x.has_zero_coordinate()) {
    out.set_zero_coordinate_warning(true);
    return out;
  }
  const ClassId omega = class_of(x);
  Cyc coefficient(1);
  Block block{{}, {Cyc(1)}};
  for (const auto& [i, v] : x.overrides()) {
    if (x.spaces().dim(i) == 1) {
      coefficient *= v[0] / omega.section_at(i)[0];
      continue;
    }
    if (block.support.size() == kMaxSupport) throw CapExceeded("too many multi-dimensional overrides");
    block.data = insert_axis(block.data, block_shape(x.spaces(), block.support), block.support.size(), v);
    block.support.push_back(i);
  }
  for (Cyc& c : block.data) c = coefficient * c;
  out.add_block(omega, std::move(block));
  return out;
}

std::map<ClassId, TensorElement> decompose(const TensorElement& a) {
  std::map<ClassId, TensorElement> parts;
  for (const auto& [omega, block] : a.components()) parts.emplace(omega, TensorElement::from_block(omega, block));
  return parts;
}

// ---------------------------------------------------------------- operators

namespace {

SpaceFamily entry_spaces(const SpaceFamily& domain, const SpaceFamily& codomain) {
  const std::size_t window = static_cast<std::size_t>(
      lcm_checked(static_cast<long long>(domain.period()), static_cast<long long>(codomain.period())));
  std::vector<int> dims;
  for (std::size_t i = 0; i < window; ++i) dims.push_back(domain.dim(i) * codomain.dim(i));
  return SpaceFamily(dims);
}

bool scalar_like(const SpaceFamily& domain, const SpaceFamily& codomain) {
  return domain.all_one_dimensional() && codomain.all_one_dimensional();
}

}  // namespace

OperatorFamily::OperatorFamily(SpaceFamily domain, SpaceFamily codomain, CoordFamily entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
  const SpaceFamily expected = entry_spaces(domain_, codomain_);
  if (entries_.spaces().dims() != expected.dims())
    throw DomainError("operator entries do not match domain and codomain dimensions");
}

OperatorFamily OperatorFamily::identity(const SpaceFamily& spaces) {
  std::vector<CycMatrix> tail;
  for (std::size_t i = 0; i < spaces.period(); ++i)
    tail.push_back(CycMatrix::identity(static_cast<std::size_t>(spaces.dim(i))));
  return periodic(spaces, spaces, tail);
}

OperatorFamily OperatorFamily::periodic(const SpaceFamily& domain, const SpaceFamily& codomain,
                                        const std::vector<CycMatrix>& tail,
                                        const std::map<std::size_t, CycMatrix>& overrides) {
  std::vector<Vec> values;
  for (const auto& m : tail) values.push_back(m.data());
  std::map<std::size_t, Vec> ov;
  for (const auto& [i, m] : overrides) ov.emplace(i, m.data());
  return OperatorFamily(domain, codomain, CoordFamily::periodic(entry_spaces(domain, codomain), values, ov));
}

OperatorFamily OperatorFamily::scalar(const CoordFamily& s, const SpaceFamily& spaces) {
  if (!s.spaces().all_one_dimensional()) throw DomainError("scalar operator needs a one-dimensional family");
  if (spaces.all_one_dimensional()) {
    return OperatorFamily(spaces, spaces, transform(
        s, entry_spaces(spaces, spaces), [](std::size_t, const Vec& v) { return v; }, false, true));
  }
  const SpaceFamily es = entry_spaces(spaces, spaces);
  return OperatorFamily(spaces, spaces, transform(
      s, es,
      [&spaces](std::size_t i, const Vec& v) {
        return (v[0] * CycMatrix::identity(static_cast<std::size_t>(spaces.dim(i)))).data();
      },
      false, false));
}

CycMatrix OperatorFamily::at(std::size_t i) const {
  return CycMatrix(static_cast<std::size_t>(codomain_.dim(i)), static_cast<std::size_t>(domain_.dim(i)),
                   entries_.at(i));
}

CycMatrix OperatorFamily::tail_at(std::size_t i) const {
  return CycMatrix(static_cast<std::size_t>(codomain_.dim(i)), static_cast<std::size_t>(domain_.dim(i)),
                   entries_.tail().value_at(i));
}

CoordFamily apply_pointwise(const OperatorFamily& t, const CoordFamily& x) {
  if (x.spaces() != t.domain()) throw DomainError("operator domain does not match the family");
  const SpaceFamily& dom = t.domain();
  const SpaceFamily& cod = t.codomain();
  return combine(
      t.entries(), x, cod,
      [&dom, &cod](std::size_t i, const Vec& m, const Vec& v) {
        return CycMatrix(static_cast<std::size_t>(cod.dim(i)), static_cast<std::size_t>(dom.dim(i)), m).apply(v);
      },
      scalar_like(dom, cod) ? PhaseRule::kAdd : PhaseRule::kNone);
}

OperatorFamily compose(const OperatorFamily& s, const OperatorFamily& t) {
  if (s.domain() != t.codomain()) throw DomainError("composition of mismatched operators");
  const SpaceFamily& a = t.domain();
  const SpaceFamily& b = t.codomain();
  const SpaceFamily& c = s.codomain();
  const SpaceFamily es = entry_spaces(a, c);
  auto entries = combine(
      s.entries(), t.entries(), es,
      [&](std::size_t i, const Vec& sm, const Vec& tm) {
        const auto na = static_cast<std::size_t>(a.dim(i)), nb = static_cast<std::size_t>(b.dim(i)),
                   nc = static_cast<std::size_t>(c.dim(i));
        return (CycMatrix(nc, nb, sm) * CycMatrix(nb, na, tm)).data();
      },
      scalar_like(a, c) && b.all_one_dimensional() ? PhaseRule::kAdd : PhaseRule::kNone);
  return OperatorFamily(a, c, std::move(entries));
}

TensorElement apply_operator(const OperatorFamily& t, const TensorElement& a) {
  if (a.spaces() != t.domain()) throw DomainError("operator domain does not match the element");
  TensorElement out(t.codomain());
  std::vector<std::size_t> op_support;
  for (const auto& kv : t.entries().overrides()) op_support.push_back(kv.first);
  for (const auto& [omega, block] : a.components()) {
    const CoordFamily image = apply_pointwise(t, omega.section());
    // A zero tail coordinate makes every elementary tensor of the class vanish.
    if (image.tail().has_zero_value()) continue;
    const ClassId target(t.codomain(), image.tail());
    const auto support = support_union(block.support, op_support);
    if (support.size() > kMaxSupport) throw CapExceeded("operator support enlarges the block beyond the cap");
    Vec data = embed_block(block, omega, support);
    std::vector<std::size_t> shape = block_shape(t.domain(), support);
    for (std::size_t axis = 0; axis < support.size(); ++axis) {
      data = apply_mode(data, shape, axis, t.at(support[axis]));
      shape[axis] = static_cast<std::size_t>(t.codomain().dim(support[axis]));
    }
    out.add_block(target, Block{support, std::move(data)});
  }
  return out;
}

CoordFamily operator_faithfulness_witness(const std::vector<OperatorFamily>& ts, std::size_t pool_size) {
  if (ts.empty()) throw DomainError("witness search needs at least one operator");
  const SpaceFamily& domain = ts.front().domain();
  for (const auto& t : ts)
    if (t.domain() != domain) throw DomainError("operators must share a domain");
  for (std::size_t k = 0; k < ts.size(); ++k)
    for (std::size_t l = k + 1; l < ts.size(); ++l)
      if (ts[k].codomain() == ts[l].codomain() && sim(ts[k].entries(), ts[l].entries()))
        throw DomainError("operators must be mutually inequivalent");

  std::size_t window = domain.period();
  for (const auto& t : ts)
    window = static_cast<std::size_t>(lcm_checked(static_cast<long long>(window),
                                                  static_cast<long long>(t.entries().tail().period())));

  struct Pair {
    std::size_t k, l;
    bool separated = false;
  };
  std::vector<Pair> pairs;
  for (std::size_t k = 0; k < ts.size(); ++k)
    for (std::size_t l = k + 1; l < ts.size(); ++l)
      if (ts[k].codomain() == ts[l].codomain()) pairs.push_back(Pair{k, l});

  // Scalar operators: images of a non-vanishing family are equivalent iff the
  // operators are, so every pair is already separated.
  if (domain.all_one_dimensional())
    for (auto& p : pairs) p.separated = true;

  std::vector<Vec> values;
  for (std::size_t r = 0; r < window; ++r) {
    const auto pool = unit_vector_pool(domain, r, pool_size);
    std::vector<CycMatrix> mats;
    for (const auto& t : ts) mats.push_back(t.tail_at(r));
    std::size_t best = pool.size(), best_score = 0;
    bool best_complete = false;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      std::vector<Vec> images;
      bool nonzero = true;
      for (const auto& m : mats) {
        images.push_back(m.apply(pool[c]));
        nonzero = nonzero && !is_zero_vec(images.back());
      }
      if (!nonzero) continue;
      std::size_t score = 0;
      bool complete = true;
      for (const auto& p : pairs) {
        const bool differ_here = !(mats[p.k] == mats[p.l]);
        const bool split = images[p.k] != images[p.l];
        if (split && !p.separated) ++score;
        if (differ_here && !split) complete = false;
      }
      if (best == pool.size() || (complete && !best_complete) ||
          (complete == best_complete && score > best_score)) {
        best = c;
        best_score = score;
        best_complete = complete;
      }
      if (complete) break;
    }
    if (best == pool.size()) throw WitnessNotFound("every pool vector is annihilated by some operator", r);
    for (auto& p : pairs)
      if (mats[p.k].apply(pool[best]) != mats[p.l].apply(pool[best])) p.separated = true;
    values.push_back(pool[best]);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (!pairs[i].separated) throw WitnessNotFound("no pool vector separates an operator pair", 0);
  CoordFamily x = CoordFamily::periodic(domain, values);
  // The separation above is a statement about tails; confirm it on the images.
  for (const auto& p : pairs)
    if (sim(apply_pointwise(ts[p.k], x), apply_pointwise(ts[p.l], x)))
      throw WitnessNotFound("images remained equivalent", 0);
  return x;
}

}  // namespace gitp
