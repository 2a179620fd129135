#pragma once

// Finitely describable coordinate families x = [x_i]_{i in N}.
//
// A family is a tail generator (a purely periodic part, optionally times
// geometric phase factors on one-dimensional coordinates) plus finitely many
// overrides.  Because two purely periodic sequences that agree eventually
// agree everywhere, the canonical tail of a family is the canonical
// representative of its class under "equal at all but finitely many
// coordinates"; the class identifier doubles as the section c(omega).

#include <compare>
#include <functional>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gitp/linalg.hpp"
#include "gitp/scalars.hpp"

namespace gitp {

/// Largest coordinate dimension of a space carrying tensor blocks.
inline constexpr int kMaxCoordinateDim = 4;
/// Largest length of a coordinate value (flattened operators included).
inline constexpr int kMaxValueDim = 16;

/// Periodic family of coordinate spaces C^{d_i}, each carrying the weighted
/// hermitian form <x, y> = sum_j w_j x_j conj(y_j).
class SpaceFamily {
 public:
  SpaceFamily() : SpaceFamily(std::vector<int>{1}) {}
  explicit SpaceFamily(std::vector<int> dims, std::vector<Vec> weights = {});

  static SpaceFamily constant(int dim) { return SpaceFamily(std::vector<int>{dim}); }
  static SpaceFamily weighted(Vec weights);
  static SpaceFamily scalars() { return constant(1); }

  std::size_t period() const { return dims_.size(); }
  int dim(std::size_t i) const { return dims_[i % dims_.size()]; }
  const std::vector<int>& dims() const { return dims_; }
  bool all_one_dimensional() const;
  bool standard_form() const;

  const Vec& weights_at(std::size_t i) const { return weights_[i % weights_.size()]; }
  Cyc inner(std::size_t i, const Vec& x, const Vec& y) const;
  Cyc norm2(std::size_t i, const Vec& x) const { return inner(i, x, x); }

  friend bool operator==(const SpaceFamily&, const SpaceFamily&) = default;
  friend std::strong_ordering operator<=>(const SpaceFamily& a, const SpaceFamily& b);

  std::string to_string() const;

 private:
  std::vector<int> dims_;
  std::vector<Vec> weights_;
};

/// Factor exp(2 pi i * turns / base^i) at coordinate i (q = 1/base).
struct Phase {
  long base = 2;
  Rational turns;

  Cyc value_at(std::size_t i) const;
  /// exp(2 pi i * turns * base / (base - 1)), the infinite product over i >= 0.
  Cyc infinite_product() const;

  friend bool operator==(const Phase& a, const Phase& b) {
    return a.base == b.base && a.turns == b.turns;
  }
};

std::strong_ordering operator<=>(const Vec& a, const Vec& b);

/// Canonical tail generator.
class Tail {
 public:
  Tail() = default;
  explicit Tail(std::vector<Vec> periodic, std::vector<Phase> phases = {});

  const std::vector<Vec>& periodic() const { return periodic_; }
  const std::vector<Phase>& phases() const { return phases_; }
  std::size_t period() const { return periodic_.size(); }
  bool has_phases() const { return !phases_.empty(); }

  /// The periodic part alone at coordinate i.
  const Vec& periodic_at(std::size_t i) const { return periodic_[i % periodic_.size()]; }
  Cyc phase_at(std::size_t i) const;
  Vec value_at(std::size_t i) const;
  bool has_zero_value() const;

  Tail without_phases() const { return Tail(periodic_); }

  friend bool operator==(const Tail& a, const Tail& b) {
    return a.periodic_ == b.periodic_ && a.phases_ == b.phases_;
  }
  friend std::strong_ordering operator<=>(const Tail& a, const Tail& b);

 private:
  std::vector<Vec> periodic_;
  std::vector<Phase> phases_;
};

class ClassId;

class CoordFamily {
 public:
  CoordFamily() = default;
  CoordFamily(SpaceFamily spaces, Tail tail, std::map<std::size_t, Vec> overrides = {});

  static CoordFamily periodic(SpaceFamily spaces, std::vector<Vec> values,
                              std::map<std::size_t, Vec> overrides = {});
  /// One-dimensional family from scalar tail values.
  static CoordFamily scalar(std::vector<Cyc> values, std::map<std::size_t, Cyc> overrides = {});
  /// value(i) = exp(2 pi i c q^i) with q = 1/base.
  static CoordFamily geom_phase(const Rational& c, long base,
                                std::map<std::size_t, Cyc> overrides = {});

  const SpaceFamily& spaces() const { return spaces_; }
  const Tail& tail() const { return tail_; }
  const std::map<std::size_t, Vec>& overrides() const { return overrides_; }

  Vec at(std::size_t i) const;
  /// One past the largest override index.
  std::size_t horizon() const;
  bool has_zero_coordinate() const;
  /// Every coordinate (tail and overrides) has exact norm 1.
  bool is_unit() const;
  /// Every coordinate has exact norm^2 <= 1.
  bool in_unit_ball() const;

  CoordFamily with_override(std::size_t i, Vec value) const;
  CoordFamily without_overrides() const { return CoordFamily(spaces_, tail_); }

  std::string to_string() const;

  friend bool operator==(const CoordFamily& a, const CoordFamily& b) {
    return a.spaces_ == b.spaces_ && a.tail_ == b.tail_ && a.overrides_ == b.overrides_;
  }

 private:
  SpaceFamily spaces_;
  Tail tail_;
  std::map<std::size_t, Vec> overrides_;
};

/// Canonical representative of a class of families under ~.
class ClassId {
 public:
  ClassId() = default;
  ClassId(SpaceFamily spaces, Tail tail);

  const SpaceFamily& spaces() const { return spaces_; }
  const Tail& tail() const { return tail_; }
  Vec section_at(std::size_t i) const { return tail_.value_at(i); }
  CoordFamily section() const { return CoordFamily(spaces_, tail_); }

  /// Tail [1, 1, ...] on one-dimensional coordinates.
  bool is_trivial_scalar() const;
  std::string to_string() const { return section().to_string(); }

  friend bool operator==(const ClassId& a, const ClassId& b) = default;
  friend std::strong_ordering operator<=>(const ClassId& a, const ClassId& b);

 private:
  SpaceFamily spaces_;
  Tail tail_;
};

/// The kappa image of a unit class: its tail with summable phase factors removed.
struct ApproxSignature {
  SpaceFamily spaces;
  std::vector<Vec> periodic;

  friend bool operator==(const ApproxSignature&, const ApproxSignature&) = default;
};

/// x ~ y: x_i = y_i for all but finitely many i.
bool sim(const CoordFamily& x, const CoordFamily& y);
/// Throws DomainError on a zero coordinate.
ClassId class_of(const CoordFamily& x);
CoordFamily section(const ClassId& omega);
/// von Neumann equivalence: sum_i |<x_i, y_i> - 1| < infinity (unit families).
bool approx(const CoordFamily& x, const CoordFamily& y);
/// x_i = alpha_i y_i e.f. with alpha ~= 1 (one-dimensional unit families).
bool approx_t(const CoordFamily& x, const CoordFamily& y);
ApproxSignature kappa(const ClassId& omega);

/// How phase factors transform under a pointwise binary operation.
enum class PhaseRule {
  kNone,      ///< inputs must not carry phases
  kAdd,       ///< multiplicative in both arguments
  kSubtract,  ///< multiplicative in the first, conjugate/inverse in the second
};

using CoordOp2 = std::function<Vec(std::size_t, const Vec&, const Vec&)>;
using CoordOp1 = std::function<Vec(std::size_t, const Vec&)>;

/// Pointwise combination f(x_i, y_i) into the spaces `out`.
CoordFamily combine(const CoordFamily& x, const CoordFamily& y, const SpaceFamily& out,
                    const CoordOp2& f, PhaseRule rule);
/// Pointwise map; `negate_phases` for conjugate-linear maps on scalars.
CoordFamily transform(const CoordFamily& x, const SpaceFamily& out, const CoordOp1& f,
                      bool negate_phases, bool allow_phases);

CoordFamily scalar_product(const CoordFamily& x, const CoordFamily& y);
CoordFamily scalar_quotient(const CoordFamily& x, const CoordFamily& y);
CoordFamily scalar_conj(const CoordFamily& x);
/// Pointwise scalar times vector: beta_i x_i.
CoordFamily scale_family(const CoordFamily& beta, const CoordFamily& x);
/// Pointwise <x_i, y_i> as a one-dimensional family.
CoordFamily inner_family(const CoordFamily& x, const CoordFamily& y);

/// Product group law on one-dimensional classes.
ClassId class_product(const ClassId& a, const ClassId& b);
ClassId class_inverse(const ClassId& a);

/// All-ones one-dimensional family.
CoordFamily ones_family();

/// Deterministic pool of unit vectors of the space at coordinate i: standard
/// basis vectors, Pythagorean (3/5, 4/5) combinations and zeta-phase
/// combinations, each normalized for the weighted form.  Candidates whose
/// normalization would leave small cyclotomic fields are skipped, so weighted
/// spaces may yield fewer than `size` vectors.
std::vector<Vec> unit_vector_pool(const SpaceFamily& spaces, std::size_t i, std::size_t size = 8);

/// Exact decision of x <= 1 for a real cyclotomic number; non-rational values
/// fall back to a floating-point comparison with an exactness guard.
bool real_at_most_one(const Cyc& x);
bool real_positive(const Cyc& x);

}  // namespace gitp
