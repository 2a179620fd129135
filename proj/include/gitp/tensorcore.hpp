#pragma once

// Normal form for elements of the infinite tensor product.
//
// An element is a finite map  class omega -> block, where a block with
// support F is an element b of the finite tensor product over F and stands
// for J_F^{c(omega)}(b) = b (x) (x)_{i not in F} c(omega)_i.  Blocks are kept
// at their unique minimal support: position j is dropped whenever the block
// factors as b' (x) c(omega)_j.  One-dimensional coordinates therefore never
// appear in a support, and equality of elements is structural.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gitp/families.hpp"
#include "gitp/linalg.hpp"

namespace gitp {

/// Largest support of a block.
inline constexpr std::size_t kMaxSupport = 8;

struct Block {
  std::vector<std::size_t> support;  ///< strictly increasing
  Vec data;                          ///< row-major over the support order

  friend bool operator==(const Block&, const Block&) = default;
};

/// Shape of the block at `support` over `spaces`.
std::vector<std::size_t> block_shape(const SpaceFamily& spaces, const std::vector<std::size_t>& support);
/// Re-expresses `block` (class omega) at a larger support `target`.
Vec embed_block(const Block& block, const ClassId& omega, const std::vector<std::size_t>& target);
/// Applies `m` (rows x cols) along axis `axis` of a row-major tensor.
Vec apply_mode(const Vec& data, const std::vector<std::size_t>& shape, std::size_t axis, const CycMatrix& m);
std::vector<std::size_t> support_union(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

class TensorElement {
 public:
  TensorElement() = default;
  explicit TensorElement(SpaceFamily spaces) : spaces_(std::move(spaces)) { check_spaces(); }

  /// J_F^{c(omega)}(data), normalized.
  static TensorElement from_block(const ClassId& omega, Block block);

  const SpaceFamily& spaces() const { return spaces_; }
  const std::map<ClassId, Block>& components() const { return components_; }
  std::size_t component_count() const { return components_.size(); }
  bool is_zero() const { return components_.empty(); }
  /// Set when the element came from theta of a family with a zero coordinate.
  bool zero_coordinate_warning() const { return warning_; }
  void set_zero_coordinate_warning(bool w) { warning_ = w; }

  /// The coefficient block of class omega (zero element if absent).
  TensorElement part(const ClassId& omega) const;
  /// Single-dimensional shortcut: coefficient of theta(section(omega)).
  Cyc scalar_coefficient(const ClassId& omega) const;

  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const Cyc& s, const TensorElement& a);
  friend TensorElement operator-(const TensorElement& a) { return Cyc(-1) * a; }

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.spaces_ == b.spaces_ && a.components_ == b.components_;
  }

  /// Adds data for class omega (any support; normalized on insertion).
  void add_block(const ClassId& omega, Block block);

  /// Sum of coeff * theta(fam(...)) terms over basis vectors; parses back.
  std::string to_string() const;

 private:
  void check_spaces() const;

  SpaceFamily spaces_;
  std::map<ClassId, Block> components_;
  bool warning_ = false;
};

/// Reduces `block` to the minimal support for class omega; empty data when zero.
Block normalize_block(const ClassId& omega, Block block);

/// Theta(x) = (x)_i x_i.  A zero coordinate yields the zero element with
/// the warning flag set.
TensorElement theta(const CoordFamily& x);

std::map<ClassId, TensorElement> decompose(const TensorElement& a);

/// Coordinatewise linear maps T_i : X_i -> Y_i, stored as a family of
/// row-major flattened matrices.
class OperatorFamily {
 public:
  OperatorFamily(SpaceFamily domain, SpaceFamily codomain, CoordFamily entries);

  static OperatorFamily identity(const SpaceFamily& spaces);
  static OperatorFamily periodic(const SpaceFamily& domain, const SpaceFamily& codomain,
                                 const std::vector<CycMatrix>& tail,
                                 const std::map<std::size_t, CycMatrix>& overrides = {});
  /// Multiplication by a scalar family s_i on every coordinate.
  static OperatorFamily scalar(const CoordFamily& s, const SpaceFamily& spaces);

  const SpaceFamily& domain() const { return domain_; }
  const SpaceFamily& codomain() const { return codomain_; }
  const CoordFamily& entries() const { return entries_; }
  CycMatrix at(std::size_t i) const;
  CycMatrix tail_at(std::size_t i) const;

 private:
  SpaceFamily domain_;
  SpaceFamily codomain_;
  CoordFamily entries_;
};

/// Pointwise image family T x.
CoordFamily apply_pointwise(const OperatorFamily& t, const CoordFamily& x);
/// (S T)_i = S_i T_i.
OperatorFamily compose(const OperatorFamily& s, const OperatorFamily& t);
/// Action of (x)_i T_i on the tensor product.
TensorElement apply_operator(const OperatorFamily& t, const TensorElement& a);

/// A family x whose images under the given operators are pairwise
/// inequivalent, chosen per residue from the unit-vector pool so as to avoid
/// the finite union of kernels of T^(k)_r - T^(l)_r.
CoordFamily operator_faithfulness_witness(const std::vector<OperatorFamily>& ts,
                                          std::size_t pool_size = 8);

class WitnessNotFound : public Error {
 public:
  WitnessNotFound(const std::string& what, std::size_t coordinate)
      : Error(what + " (coordinate " + std::to_string(coordinate) + ")"), coordinate_(coordinate) {}
  std::size_t coordinate() const { return coordinate_; }

 private:
  std::size_t coordinate_;
};

}  // namespace gitp
