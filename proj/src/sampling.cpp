#include "gitp/sampling.hpp"

namespace gitp {

int Sampler::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Sampler::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Cyc Sampler::unit_scalar() {
  static const std::vector<Cyc> units = {
      Cyc(1),       Cyc(-1),         Cyc::zeta(4), Cyc::zeta(4, 3), Cyc::zeta(3),
      Cyc::zeta(3, 2), Cyc::zeta(6), Cyc::rational(3, 5) + Cyc::rational(4, 5) * Cyc::zeta(4)};
  return pick(units);
}

Cyc Sampler::nonzero_scalar() {
  Cyc s;
  do {
    s = Cyc::rational(uniform(-3, 3), uniform(1, 3)) + Cyc::rational(uniform(-1, 1), 2) * unit_scalar();
  } while (s.is_zero());
  return s;
}

Cyc Sampler::scalar() { return coin(0.2) ? Cyc(0) : nonzero_scalar(); }

Vec Sampler::nonzero_vector(std::size_t dim) {
  Vec v(dim);
  do {
    for (Cyc& c : v) c = coin(0.4) ? Cyc(0) : nonzero_scalar();
  } while (is_zero_vec(v));
  return v;
}

Vec Sampler::unit_vector(const SpaceFamily& spaces, std::size_t i) {
  const auto pool = unit_vector_pool(spaces, i, 8);
  Vec v = pick(pool);
  if (spaces.dim(i) > 1 && coin(0.3)) {
    const Cyc phase = unit_scalar();
    for (Cyc& c : v) c = phase * c;
  }
  return v;
}

CoordFamily Sampler::family(const SpaceFamily& spaces, const FamilyShape& shape) {
  const std::size_t period =
      static_cast<std::size_t>(lcm_checked(static_cast<long long>(spaces.period()), uniform(1, shape.max_period)));
  std::vector<Vec> tail;
  for (std::size_t r = 0; r < period; ++r)
    tail.push_back(coin(0.5) ? unit_vector(spaces, r) : nonzero_vector(static_cast<std::size_t>(spaces.dim(r))));
  std::map<std::size_t, Vec> ov;
  const int n = uniform(0, shape.max_overrides);
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(uniform(0, shape.max_index));
    ov[i] = nonzero_vector(static_cast<std::size_t>(spaces.dim(i)));
  }
  return CoordFamily::periodic(spaces, std::move(tail), std::move(ov));
}

CoordFamily Sampler::unit_family(const SpaceFamily& spaces, const FamilyShape& shape) {
  const std::size_t period =
      static_cast<std::size_t>(lcm_checked(static_cast<long long>(spaces.period()), uniform(1, shape.max_period)));
  std::vector<Vec> tail;
  for (std::size_t r = 0; r < period; ++r) tail.push_back(unit_vector(spaces, r));
  std::map<std::size_t, Vec> ov;
  const int n = uniform(0, shape.max_overrides);
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(uniform(0, shape.max_index));
    ov[i] = unit_vector(spaces, i);
  }
  return CoordFamily::periodic(spaces, std::move(tail), std::move(ov));
}

CoordFamily Sampler::unit_scalar_family(bool allow_phase, const FamilyShape& shape) {
  std::vector<Vec> tail;
  const int period = uniform(1, shape.max_period);
  for (int r = 0; r < period; ++r) tail.push_back(Vec{coin(0.5) ? Cyc(1) : unit_scalar()});
  std::vector<Phase> phases;
  if (allow_phase && coin(0.3)) phases.push_back(Phase{uniform(2, 3), Rational(uniform(1, 2), uniform(1, 3))});
  std::map<std::size_t, Vec> ov;
  const int n = uniform(0, shape.max_overrides);
  for (int k = 0; k < n; ++k) ov[static_cast<std::size_t>(uniform(0, shape.max_index))] = Vec{unit_scalar()};
  return CoordFamily(SpaceFamily::scalars(), Tail(std::move(tail), std::move(phases)), std::move(ov));
}

CoordFamily Sampler::unitary_family(const CoordinateAlgebra& alg, bool general_overrides) {
  const auto pool = alg.unitary_pool();
  std::vector<Vec> tail;
  for (int r = 0, period = uniform(1, 2); r < period; ++r) tail.push_back(pick(pool));
  std::map<std::size_t, Vec> ov;
  for (int k = 0, n = uniform(0, 2); k < n; ++k)
    ov[static_cast<std::size_t>(uniform(0, 3))] = general_overrides ? nonzero_vector(alg.dim()) : pick(pool);
  return algebra_family(alg, std::move(tail), std::move(ov));
}

TensorElement Sampler::ut_element(const CoordinateAlgebra& alg, int max_terms) {
  TensorElement out(alg.coordinate_space());
  for (int t = 0, n = uniform(1, max_terms); t < n; ++t) out += nonzero_scalar() * theta(unitary_family(alg, true));
  return out;
}

TensorElement Sampler::combination(const std::vector<CoordFamily>& families) {
  TensorElement out(families.front().spaces());
  for (const auto& f : families) out += nonzero_scalar() * theta(f);
  return out;
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace gitp
