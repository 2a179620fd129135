#pragma once

// Tensor-type *-representations of the unitary-graded algebra on the span of
// elementary tensors, the induced class action, injectivity via witness
// search, finite-dimensional GNS and Hilbert-algebra checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gitp/families.hpp"
#include "gitp/linalg.hpp"
#include "gitp/staralgebra.hpp"
#include "gitp/tensorcore.hpp"

namespace gitp {

/// Unital *-representation of a coordinate algebra on a weighted C^n, given
/// by the images of the basis.  Homomorphism, unit and adjoint laws are
/// verified at construction; injectivity is recorded as a rank certificate.
class CoordinateRep {
 public:
  CoordinateRep(CoordinateAlgebra alg, SpaceFamily space, std::vector<CycMatrix> images);

  /// Left multiplication on the algebra with its trace form.
  static CoordinateRep left_regular(const CoordinateAlgebra& alg);
  /// M_n on C^n (matrix units to matrix units).
  static CoordinateRep defining(const CoordinateAlgebra& matrix_alg);

  const CoordinateAlgebra& algebra() const { return alg_; }
  const SpaceFamily& space() const { return space_; }
  std::size_t dim() const { return static_cast<std::size_t>(space_.dim(0)); }
  const std::vector<CycMatrix>& images() const { return images_; }
  CycMatrix image(const Vec& a) const;
  bool injective() const { return injective_; }
  std::size_t image_rank() const { return rank_; }

 private:
  CoordinateAlgebra alg_;
  SpaceFamily space_;
  std::vector<CycMatrix> images_;
  std::size_t rank_ = 0;
  bool injective_ = false;
};

/// (x) Psi_i applied to a on xi.  Components of class omega map class mu into
/// omega . mu.
TensorElement apply_rep(const CoordinateRep& rep, const TensorElement& a, const TensorElement& xi);
/// omega . mu = [Psi(c(omega)_i) c(mu)_i].
ClassId class_action(const CoordinateRep& rep, const ClassId& omega, const ClassId& mu);

/// Unit family xi with omega . [xi] != [xi] for every listed class, chosen per
/// residue from the unit-vector pool.  Throws WitnessNotFound.
CoordFamily strong_faithfulness_witness(const CoordinateRep& rep, const std::vector<ClassId>& classes,
                                        std::size_t pool_size = 8);

enum class KernelVerdict { kInKernel, kNotInKernel, kIndeterminate };
std::string to_string(KernelVerdict v);

struct KernelReport {
  KernelVerdict verdict = KernelVerdict::kIndeterminate;
  /// Vector family on which the image was found nonzero.
  std::optional<CoordFamily> witness;
  std::string detail;
};

/// Decides whether the represented element vanishes.  kInKernel only for
/// a = 0; kNotInKernel is backed by an explicit vector with non-zero image.
KernelReport kernel_check(const CoordinateRep& rep, const TensorElement& a, std::size_t pool_size = 8);

struct GnsResult {
  CoordinateRep rep;
  Vec cyclic;               ///< coordinates of the class of the unit
  std::vector<Vec> basis;   ///< orthogonal representatives in the algebra
  std::size_t null_dim = 0;
};

/// GNS construction for the state rho(b_k) = rho[k].  Orthogonal (not
/// normalized) representatives keep everything exact; the Hilbert space
/// carries their squared norms as weights.
GnsResult gns(const CoordinateAlgebra& alg, const Vec& rho);
Cyc state_value(const CoordinateAlgebra& alg, const Vec& rho, const Vec& a);

struct HilbertReport {
  std::size_t samples = 0;
  std::size_t star_isometry_failures = 0;
  std::size_t adjoint_failures = 0;
  double max_left_bound = 0.0;  ///< largest sampled bound on ||L_x|| (finite blocks)
  bool passed() const { return star_isometry_failures == 0 && adjoint_failures == 0; }
};

/// Coordinate axioms (unit norm, isometric involution, <xy, z> = <y, x* z>)
/// are checked first and raise DomainError naming the axiom; the tensor-level
/// identities are then tested on sampled unitary-graded elements.
HilbertReport hilbert_algebra_check(const CoordinateAlgebra& alg, std::size_t samples, std::uint64_t seed);

}  // namespace gitp
