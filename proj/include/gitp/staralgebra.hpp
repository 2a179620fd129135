#pragma once

// The *-algebra spanned by elementary tensors of unitary families, its
// twisted crossed-product description, the bridge to the group algebra of
// unit scalar classes, and centers.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gitp/families.hpp"
#include "gitp/linalg.hpp"
#include "gitp/tensorcore.hpp"

namespace gitp {

/// Finite-dimensional unital *-algebra given by structure constants on a
/// fixed basis b_0..b_{d-1}.  Axioms are verified at construction.
class CoordinateAlgebra {
 public:
  enum class Kind { kScalar, kMatrix, kFunction, kGroup };

  /// structure[(j * d + k) * d + l] = coefficient of b_l in b_j b_k;
  /// involution column k = coordinates of b_k^*; weights give the trace
  /// form <x, y> = sum_k w_k x_k conj(y_k) (orthogonal basis).
  CoordinateAlgebra(Kind kind, std::string name, std::size_t dim, Vec structure, Vec unit,
                    CycMatrix involution, Vec weights, std::vector<std::vector<int>> group_table = {});

  static CoordinateAlgebra scalars();
  /// M_n with matrix units E_ab at index a * n + b and the normalized trace.
  static CoordinateAlgebra matrix(int n);
  /// C^n with pointwise operations and the uniform state.
  static CoordinateAlgebra functions(int n);
  /// C[G] from a multiplication table (rows g, columns h -> gh) with the
  /// canonical trace.
  static CoordinateAlgebra group(std::vector<std::vector<int>> table, std::string name);
  static CoordinateAlgebra cyclic_group(int n);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const Vec& unit() const { return unit_; }
  const Vec& weights() const { return weights_; }
  Vec basis(std::size_t k) const;
  /// Spaces of algebra-valued families, carrying the trace form.
  SpaceFamily coordinate_space() const { return SpaceFamily::weighted(weights_); }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec star(const Vec& x) const;
  Cyc inner(const Vec& x, const Vec& y) const;
  bool is_unitary(const Vec& x) const;
  bool is_central(const Vec& x) const;
  /// Matrix of x -> a x (left) or x -> x a (right).
  CycMatrix left_matrix(const Vec& a) const;
  CycMatrix right_matrix(const Vec& a) const;
  const CycMatrix& involution() const { return involution_; }
  /// Non-zero structure constants for b_j b_k.
  const std::vector<std::pair<std::size_t, Cyc>>& product_terms(std::size_t j, std::size_t k) const {
    return sparse_[j * dim_ + k];
  }

  /// A fixed list of unitaries (spanning the algebra for every built-in kind).
  std::vector<Vec> unitary_pool() const;

  // Group algebras only.
  std::size_t group_order() const { return table_.size(); }
  int group_mul(int g, int h) const;
  int group_inverse(int g) const;
  int group_identity() const { return identity_; }

  friend bool operator==(const CoordinateAlgebra& a, const CoordinateAlgebra& b) {
    return a.name_ == b.name_ && a.structure_ == b.structure_ && a.involution_ == b.involution_ &&
           a.weights_ == b.weights_;
  }

 private:
  Kind kind_;
  std::string name_;
  std::size_t dim_;
  Vec structure_;
  Vec unit_;
  CycMatrix involution_;
  Vec weights_;
  std::vector<std::vector<int>> table_;
  int identity_ = -1;
  std::vector<std::vector<std::pair<std::size_t, Cyc>>> sparse_;
};

/// Family of algebra elements over the algebra's coordinate spaces.
CoordFamily algebra_family(const CoordinateAlgebra& alg, std::vector<Vec> tail,
                           std::map<std::size_t, Vec> overrides = {});
/// The unit family e = [e_i].
CoordFamily unit_family(const CoordinateAlgebra& alg);
TensorElement algebra_unit(const CoordinateAlgebra& alg);
bool is_unitary_family(const CoordinateAlgebra& alg, const CoordFamily& u);
/// Pointwise product and involution of families.
CoordFamily family_product(const CoordinateAlgebra& alg, const CoordFamily& x, const CoordFamily& y);
CoordFamily family_star(const CoordinateAlgebra& alg, const CoordFamily& x);

ClassId class_mul(const CoordinateAlgebra& alg, const ClassId& a, const ClassId& b);
ClassId class_star(const CoordinateAlgebra& alg, const ClassId& a);
ClassId trivial_class(const CoordinateAlgebra& alg);
/// Every component class has unitary tail values.
bool is_unitary_graded(const CoordinateAlgebra& alg, const TensorElement& a);

TensorElement mul(const CoordinateAlgebra& alg, const TensorElement& a, const TensorElement& b);
TensorElement star(const CoordinateAlgebra& alg, const TensorElement& a);
/// (x) u_i * a * (x) u_i^*.
TensorElement inner_action(const CoordinateAlgebra& alg, const CoordFamily& u, const TensorElement& a);

/// Cocycle twisted action (action by conjugation with sections, 2-cocycle
/// m(mu, nu) = theta(c_mu c_nu c_{mu nu}^*)).  Sections are canonical unless
/// a class was given finitely many unitary overrides.
class TwistedAction {
 public:
  explicit TwistedAction(CoordinateAlgebra alg);

  void perturb(const ClassId& mu, std::map<std::size_t, Vec> overrides);
  bool perturbed() const { return !perturbations_.empty(); }

  const CoordinateAlgebra& algebra() const { return alg_; }
  CoordFamily section(const ClassId& mu) const;
  TensorElement section_element(const ClassId& mu) const { return theta(section(mu)); }
  TensorElement cocycle(const ClassId& mu, const ClassId& nu) const;
  /// Conjugation by theta(c_mu).
  TensorElement act(const ClassId& mu, const TensorElement& b) const;

 private:
  CoordinateAlgebra alg_;
  std::map<ClassId, std::map<std::size_t, Vec>> perturbations_;
};

/// Finitely supported functions from unitary classes to the identity-class
/// summand.
using CrossedElement = std::map<ClassId, TensorElement>;

CrossedElement convolve(const TwistedAction& tw, const CrossedElement& f, const CrossedElement& g);
CrossedElement crossed_star(const TwistedAction& tw, const CrossedElement& f);
CrossedElement crossed_add(const CrossedElement& f, const CrossedElement& g);
/// Psi(f) = sum_omega f(omega) theta(c_omega).
TensorElement crossed_product_iso(const TwistedAction& tw, const CrossedElement& f);
/// f(omega) = a_omega theta(c_omega)^*.
CrossedElement crossed_product_inverse(const TwistedAction& tw, const TensorElement& a);

/// Elements of C[Omega^ut] for unit scalar classes, basis lambda_omega.
class GroupAlgebraElement {
 public:
  GroupAlgebraElement() = default;
  static GroupAlgebraElement lambda(const ClassId& omega, const Cyc& coeff = Cyc(1));

  const std::map<ClassId, Cyc>& coefficients() const { return coeffs_; }
  Cyc coefficient(const ClassId& omega) const;
  /// Trace: coefficient of the identity class.
  Cyc chi() const;
  bool is_zero() const { return coeffs_.empty(); }

  void add(const ClassId& omega, const Cyc& c);
  GroupAlgebraElement star() const;
  friend GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(const Cyc& s, const GroupAlgebraElement& a);
  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

  std::string to_string() const;

 private:
  std::map<ClassId, Cyc> coeffs_;
};

/// phi(alpha) = prod over overrides of alpha_i / c([alpha])_i.
Cyc phi_char(const CoordFamily& alpha);
/// Phi(theta(alpha)) = phi(alpha) lambda_[alpha], for unit scalar classes.
GroupAlgebraElement group_algebra_iso(const TensorElement& a);
TensorElement group_algebra_inverse(const GroupAlgebraElement& g);
/// Conditional expectation keeping unit-modulus classes.
TensorElement expectation(const TensorElement& s);

/// Families of group elements t = [t_i] for the group algebra `alg`.
struct GroupFamily {
  std::vector<int> tail;
  std::map<std::size_t, int> overrides;

  int at(std::size_t i) const;
};

GroupFamily group_family_product(const CoordinateAlgebra& alg, const GroupFamily& s, const GroupFamily& t);
GroupFamily group_family_inverse(const CoordinateAlgebra& alg, const GroupFamily& t);
/// lambda(t) = theta([delta_{t_i}]).
TensorElement embed_group_element(const CoordinateAlgebra& alg, const GroupFamily& t);

std::vector<Vec> coordinate_center(const CoordinateAlgebra& alg);
bool center_membership(const CoordinateAlgebra& alg, const TensorElement& a);
/// For a class with a non-central tail value, k pairwise distinct classes
/// [w c w^*] obtained by conjugating with prime-periodic unitary families.
std::vector<ClassId> distinct_conjugate_classes(const CoordinateAlgebra& alg, const ClassId& omega,
                                                std::size_t k);
/// The unitary families used by distinct_conjugate_classes.
std::vector<CoordFamily> conjugating_families(const CoordinateAlgebra& alg, const ClassId& omega,
                                              std::size_t k);

}  // namespace gitp
