#pragma once

// Seeded random generators for families and tensor elements.  Everything is
// drawn from small exact pools so that sampled values stay in low-order
// cyclotomic fields.

#include <cstdint>
#include <random>
#include <vector>

#include "gitp/families.hpp"
#include "gitp/staralgebra.hpp"
#include "gitp/tensorcore.hpp"

namespace gitp {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  int uniform(int lo, int hi);  // inclusive
  bool coin(double p = 0.5);
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<int>(items.size()) - 1))];
  }

  /// Roots of unity of order <= 6 and the Pythagorean unit 3/5 + 4/5 i.
  Cyc unit_scalar();
  /// Non-zero scalar with small rational and root-of-unity parts.
  Cyc nonzero_scalar();
  /// Possibly-zero scalar.
  Cyc scalar();
  Vec nonzero_vector(std::size_t dim);
  Vec unit_vector(const SpaceFamily& spaces, std::size_t i);

  struct FamilyShape {
    int max_period = 2;
    int max_overrides = 2;
    int max_index = 5;
  };

  /// Non-vanishing family; override indices are drawn from [0, max_index].
  CoordFamily family(const SpaceFamily& spaces, const FamilyShape& shape);
  CoordFamily family(const SpaceFamily& spaces) { return family(spaces, FamilyShape{}); }
  CoordFamily unit_family(const SpaceFamily& spaces, const FamilyShape& shape);
  CoordFamily unit_family(const SpaceFamily& spaces) { return unit_family(spaces, FamilyShape{}); }
  /// Unit-modulus scalar family, optionally with a geometric phase.
  CoordFamily unit_scalar_family(bool allow_phase, const FamilyShape& shape);
  CoordFamily unit_scalar_family(bool allow_phase) { return unit_scalar_family(allow_phase, FamilyShape{}); }

  /// Family of pool unitaries; overrides are unitary or, on request, arbitrary
  /// non-zero algebra elements.
  CoordFamily unitary_family(const CoordinateAlgebra& alg, bool general_overrides = false);
  /// Combination of up to `max_terms` elementary tensors of unitary classes.
  TensorElement ut_element(const CoordinateAlgebra& alg, int max_terms = 3);

  /// Random finite combination of elementary tensors drawn from `families`.
  TensorElement combination(const std::vector<CoordFamily>& families);

 private:
  std::mt19937_64 rng_;
};

/// Per-case seed derived from a suite seed and case index.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace gitp
