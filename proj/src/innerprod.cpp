#include "gitp/innerprod.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <set>

namespace gitp {

namespace {

void require_scalars(const TensorElement& s, const char* what) {
  if (!s.spaces().all_one_dimensional())
    throw DomainError(std::string(what) + ": expects an element over one-dimensional spaces");
}

ClassId trivial_scalar_class(const SpaceFamily& spaces) {
  std::vector<Vec> ones(spaces.period(), Vec{Cyc(1)});
  return ClassId(spaces, Tail(std::move(ones)));
}

/// Weighted inner product of two blocks living on the same support.
Cyc block_inner(const SpaceFamily& spaces, const std::vector<std::size_t>& support, const Vec& x, const Vec& y) {
  const auto shape = block_shape(spaces, support);
  std::vector<std::size_t> digits(shape.size(), 0);
  Cyc sum;
  for (std::size_t flat = 0; flat < x.size(); ++flat) {
    if (!x[flat].is_zero() && !y[flat].is_zero()) {
      Cyc w(1);
      for (std::size_t p = 0; p < support.size(); ++p) w *= spaces.weights_at(support[p])[digits[p]];
      sum += w * x[flat] * y[flat].conj();
    }
    for (std::size_t p = shape.size(); p-- > 0;) {
      if (++digits[p] < shape[p]) break;
      digits[p] = 0;
    }
  }
  return sum;
}

}  // namespace

Cyc phi1(const TensorElement& s) {
  require_scalars(s, "phi1");
  return s.scalar_coefficient(trivial_scalar_class(s.spaces()));
}

Cyc phi0(const TensorElement& s) {
  require_scalars(s, "phi0");
  Cyc out;
  for (const auto& [omega, blk] : s.components()) {
    const auto& periodic = omega.tail().periodic();
    if (!std::all_of(periodic.begin(), periodic.end(), [](const Vec& v) { return v[0].is_one(); })) continue;
    Cyc prod = s.scalar_coefficient(omega);
    for (const Phase& ph : omega.tail().phases()) prod *= ph.infinite_product();
    out += prod;
  }
  return out;
}

TensorElement herm_form(const TensorElement& xi, const TensorElement& eta) {
  if (xi.spaces() != eta.spaces()) throw DomainError("herm_form: space families differ");
  const SpaceFamily& spaces = xi.spaces();
  TensorElement out(SpaceFamily::scalars());
  for (const auto& [wx, bx] : xi.components()) {
    for (const auto& [wy, by] : eta.components()) {
      const CoordFamily t = inner_family(wx.section(), wy.section());
      // Orthogonal tail coordinates collapse the whole term.
      if (t.tail().has_zero_value()) continue;
      const auto support = support_union(bx.support, by.support);
      if (support.size() > kMaxSupport) throw CapExceeded("herm_form: joint support exceeds the cap");
      Cyc value = block_inner(spaces, support, embed_block(bx, wx, support), embed_block(by, wy, support));
      if (value.is_zero()) continue;
      // On the support the term is the scalar value itself; relative to the
      // section of the target class it is value / prod_{i in F} t_i.
      const ClassId target(SpaceFamily::scalars(), t.tail());
      for (std::size_t i : support) value = value / target.section_at(i)[0];
      out.add_block(target, Block{{}, Vec{value}});
    }
  }
  return out;
}

Cyc phi1_inner(const TensorElement& xi, const TensorElement& eta) { return phi1(herm_form(xi, eta)); }

CycMatrix gram(const std::vector<TensorElement>& xs) {
  CycMatrix g(xs.size(), xs.size());
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a; b < xs.size(); ++b) {
      g(a, b) = phi1_inner(xs[a], xs[b]);
      g(b, a) = b == a ? g(a, b) : g(a, b).conj();
    }
  return g;
}

bool in_unit_span(const TensorElement& a) {
  for (const auto& kv : a.components())
    if (!kv.first.section().is_unit()) return false;
  return true;
}

bool in_contractive_span(const TensorElement& a) {
  for (const auto& kv : a.components())
    if (!kv.first.section().in_unit_ball()) return false;
  return true;
}

PsdReport psd_test(const CycMatrix& g) {
  if (!g.square()) throw DomainError("psd_test: matrix is not square");
  PsdReport report;
  report.hermitian = g == g.adjoint();
  if (!report.hermitian) return report;
  const std::size_t n = g.rows();
  const bool rational = std::all_of(g.data().begin(), g.data().end(), [](const Cyc& c) { return c.is_rational(); });
  if (rational) {
    report.exact = true;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m[r][c] = g(r, c).as_rational();
    std::vector<std::size_t> alive(n);
    for (std::size_t k = 0; k < n; ++k) alive[k] = k;
    std::size_t positive_pivots = 0;
    report.psd = true;
    while (!alive.empty()) {
      const auto piv = *std::max_element(alive.begin(), alive.end(),
                                         [&m](std::size_t a, std::size_t b) { return m[a][a] < m[b][b]; });
      if (m[piv][piv] < 0) {
        report.psd = false;
        break;
      }
      if (m[piv][piv] == 0) {
        // Largest diagonal is 0: PSD iff the remaining block vanishes.
        for (std::size_t r : alive)
          for (std::size_t c : alive)
            if (m[r][c] != 0) report.psd = false;
        break;
      }
      ++positive_pivots;
      alive.erase(std::find(alive.begin(), alive.end(), piv));
      for (std::size_t r : alive)
        for (std::size_t c : alive) m[r][c] -= m[r][piv] * m[piv][c] / m[piv][piv];
    }
    report.definite = report.psd && positive_pivots == n;
    return report;
  }
  Eigen::MatrixXcd h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g(r, c).to_complex();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = n == 0 ? 0.0 : solver.eigenvalues().minCoeff();
  report.psd = report.min_eigenvalue >= -kPsdTolerance;
  report.definite = report.min_eigenvalue > kPsdTolerance;
  return report;
}

PsdReport certify_gram(const std::vector<TensorElement>& xs, SpanKind kind) {
  for (const auto& x : xs) {
    if (kind == SpanKind::kUnit && !in_unit_span(x))
      throw DomainError("certify_gram: element is not in the span of unit elementary tensors");
    if (kind == SpanKind::kContractive && !in_contractive_span(x))
      throw DomainError("certify_gram: element is not in the span of contractive elementary tensors");
  }
  return psd_test(gram(xs));
}

// ---------------------------------------------------------------- generators

GeneratorSum::GeneratorSum(std::vector<Generator> terms) : terms_(std::move(terms)) {}

void GeneratorSum::add(Cyc coeff, CoordFamily family) { terms_.push_back(Generator{std::move(coeff), std::move(family)}); }

TensorElement GeneratorSum::element() const {
  if (terms_.empty()) return TensorElement();
  TensorElement out(terms_.front().family.spaces());
  for (const auto& t : terms_) out += t.coeff * theta(t.family);
  return out;
}

bool GeneratorSum::all_contractive() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Generator& g) { return g.family.in_unit_ball(); });
}

bool GeneratorSum::all_unit() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Generator& g) { return g.family.is_unit(); });
}

std::pair<GeneratorSum, GeneratorSum> decomp_ct(const GeneratorSum& a) {
  GeneratorSum k_part, un_part;
  for (const auto& g : a.terms()) {
    if (!g.family.in_unit_ball()) throw DomainError("decomp_ct: generator " + g.family.to_string() + " is not contractive");
    const CoordFamily tail_only = g.family.without_overrides();
    if (!tail_only.is_unit()) {
      k_part.add(g.coeff, g.family);
    } else if (g.family.is_unit()) {
      un_part.add(g.coeff, g.family);
    } else {
      throw DomainError("decomp_ct: generator " + g.family.to_string() +
                        " has a unit tail but sub-unit overrides; rescale it first");
    }
  }
  return {std::move(k_part), std::move(un_part)};
}

// ---------------------------------------------------------------- module form

GroupAlgebraElement module_inner(const TensorElement& xi, const TensorElement& eta) {
  return group_algebra_iso(expectation(herm_form(xi, eta)));
}

TensorElement group_act(const ClassId& omega, const TensorElement& xi) {
  if (!omega.spaces().all_one_dimensional() || !omega.section().is_unit())
    throw DomainError("group_act: class is not a unit scalar class");
  return apply_operator(OperatorFamily::scalar(omega.section(), xi.spaces()), xi);
}

void require_subgroup(const std::vector<ClassId>& g) {
  const std::set<ClassId> members(g.begin(), g.end());
  if (!members.count(trivial_scalar_class(SpaceFamily::scalars())))
    throw DomainError("subgroup must contain the identity class");
  for (const ClassId& a : g) {
    if (!a.spaces().all_one_dimensional() || !a.section().is_unit())
      throw DomainError("subgroup members must be unit scalar classes");
    if (!members.count(class_inverse(a))) throw DomainError("subgroup is not closed under inverses");
    for (const ClassId& b : g)
      if (!members.count(class_product(a, b))) throw DomainError("subgroup is not closed under products");
  }
}

GroupAlgebraElement truncate_EG(const TensorElement& s, const std::vector<ClassId>& g) {
  require_subgroup(g);
  require_scalars(s, "truncate_EG");
  const std::set<ClassId> members(g.begin(), g.end());
  GroupAlgebraElement out;
  for (const auto& kv : s.components())
    if (members.count(kv.first)) out.add(kv.first, s.scalar_coefficient(kv.first));
  return out;
}

std::map<ClassId, Cyc> delta_iso(const TensorElement& a) {
  require_scalars(a, "delta_iso");
  std::map<ClassId, Cyc> out;
  for (const auto& kv : a.components()) {
    if (!kv.first.section().is_unit()) throw DomainError("delta_iso: class " + kv.first.to_string() + " is not unit");
    out.emplace(kv.first, a.scalar_coefficient(kv.first));
  }
  return out;
}

Cyc delta_inner(const std::map<ClassId, Cyc>& f, const std::map<ClassId, Cyc>& g) {
  Cyc sum;
  for (const auto& [omega, c] : f) {
    const auto it = g.find(omega);
    if (it != g.end()) sum += c * it->second.conj();
  }
  return sum;
}

std::map<ClassId, GroupAlgebraElement> coset_blocks(const std::map<ClassId, Cyc>& f, const std::vector<ClassId>& g) {
  require_subgroup(g);
  std::map<ClassId, GroupAlgebraElement> out;
  for (const auto& [omega, c] : f) {
    ClassId rep = omega;
    for (const ClassId& h : g) rep = std::min(rep, class_product(omega, h));
    // omega = rep * h with h = rep^{-1} omega in G.
    out[rep].add(class_product(class_inverse(rep), omega), c);
  }
  return out;
}

}  // namespace gitp
