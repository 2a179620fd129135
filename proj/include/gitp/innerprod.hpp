#pragma once

// Scalar functionals on C^{(x)I}, the C^{(x)I}-valued hermitian form, the
// phi_1 inner product with its Gram/positivity checks, and the group-algebra
// valued module inner product.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gitp/families.hpp"
#include "gitp/linalg.hpp"
#include "gitp/staralgebra.hpp"
#include "gitp/tensorcore.hpp"

namespace gitp {

/// Coefficient of the trivial class [1].
Cyc phi1(const TensorElement& s);
/// Classes with all-ones periodic part contribute coefficient times the
/// closed-form infinite product of their phases; other classes contribute 0.
Cyc phi0(const TensorElement& s);

/// <(x) x_i, (x) y_i> = (x) <x_i, y_i>, linear in the first argument.
TensorElement herm_form(const TensorElement& xi, const TensorElement& eta);
Cyc phi1_inner(const TensorElement& xi, const TensorElement& eta);
CycMatrix gram(const std::vector<TensorElement>& xs);

/// Every component class has a unit tail (membership in the span of unit
/// elementary tensors).
bool in_unit_span(const TensorElement& a);
/// Every component class has a tail in the closed unit ball.
bool in_contractive_span(const TensorElement& a);

struct PsdReport {
  bool hermitian = false;
  bool psd = false;
  bool definite = false;
  bool exact = false;           ///< exact rational elimination vs numeric eigenvalues
  double min_eigenvalue = 0.0;  ///< numeric path only
  std::string method() const { return exact ? "exact" : "numeric"; }
};

inline constexpr double kPsdTolerance = 1e-9;

/// Exact symmetric elimination with diagonal pivoting for rational matrices,
/// otherwise self-adjoint eigenvalues with tolerance kPsdTolerance.
PsdReport psd_test(const CycMatrix& g);

enum class SpanKind { kUnit, kContractive };

/// Gram positivity under the stated contract: elements must be certified
/// members of the unit (definite) or contractive (semidefinite) span.
PsdReport certify_gram(const std::vector<TensorElement>& xs, SpanKind kind);

/// Unnormalized finite sum of elementary tensors, keeping its generators.
struct Generator {
  Cyc coeff;
  CoordFamily family;
};

class GeneratorSum {
 public:
  GeneratorSum() = default;
  explicit GeneratorSum(std::vector<Generator> terms);

  const std::vector<Generator>& terms() const { return terms_; }
  void add(Cyc coeff, CoordFamily family);
  TensorElement element() const;
  bool all_contractive() const;
  bool all_unit() const;

 private:
  std::vector<Generator> terms_;
};

/// Splits contractive generators into the null part K (infinitely many
/// coordinates of norm < 1) and the unit part.  Generators with a unit tail
/// but sub-unit overrides are rejected; rescale them first.
std::pair<GeneratorSum, GeneratorSum> decomp_ct(const GeneratorSum& a);

/// Phi(E(herm_form(xi, eta))).
GroupAlgebraElement module_inner(const TensorElement& xi, const TensorElement& eta);
/// Action of lambda_omega: multiplication by the section of omega.
TensorElement group_act(const ClassId& omega, const TensorElement& xi);

/// A finite set of unit scalar classes closed under products and inverses.
void require_subgroup(const std::vector<ClassId>& g);
/// E_G: keeps the unit classes of s lying in G.
GroupAlgebraElement truncate_EG(const TensorElement& s, const std::vector<ClassId>& g);

/// Phi-hat: (x) beta -> phi(beta) delta_[beta] for unit scalar elements.
std::map<ClassId, Cyc> delta_iso(const TensorElement& a);
Cyc delta_inner(const std::map<ClassId, Cyc>& f, const std::map<ClassId, Cyc>& g);
/// Rearranges a delta association into blocks over the cosets omega G, keyed
/// by the smallest class of each coset; block entries are indexed by G.
std::map<ClassId, GroupAlgebraElement> coset_blocks(const std::map<ClassId, Cyc>& f, const std::vector<ClassId>& g);

}  // namespace gitp
