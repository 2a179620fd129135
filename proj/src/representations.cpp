#include "gitp/representations.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numeric>

#include "gitp/innerprod.hpp"
#include "gitp/sampling.hpp"

namespace gitp {

namespace {

CycMatrix weight_matrix(const Vec& w, bool inverse) {
  CycMatrix m(w.size(), w.size());
  for (std::size_t k = 0; k < w.size(); ++k) m(k, k) = inverse ? w[k].inverse() : w[k];
  return m;
}

Vec flatten(const CycMatrix& m) { return m.data(); }

PhaseRule rep_phase_rule(const CoordinateRep& rep) {
  return rep.algebra().dim() == 1 && rep.dim() == 1 ? PhaseRule::kAdd : PhaseRule::kNone;
}

CoordFamily image_family(const CoordinateRep& rep, const CoordFamily& algebra_side, const CoordFamily& vector_side) {
  return combine(
      algebra_side, vector_side, rep.space(),
      [&rep](std::size_t, const Vec& a, const Vec& x) { return rep.image(a).apply(x); }, rep_phase_rule(rep));
}

}  // namespace

// ---------------------------------------------------------------- CoordinateRep

CoordinateRep::CoordinateRep(CoordinateAlgebra alg, SpaceFamily space, std::vector<CycMatrix> images)
    : alg_(std::move(alg)), space_(std::move(space)), images_(std::move(images)) {
  if (space_.period() != 1) throw DomainError("representation space must be a single weighted C^n");
  if (space_.dim(0) > kMaxCoordinateDim) throw CapExceeded("representation dimension exceeds the coordinate cap");
  const std::size_t d = alg_.dim(), n = dim();
  if (images_.size() != d) throw DomainError("need one image per basis element");
  for (const auto& m : images_)
    if (m.rows() != n || m.cols() != n) throw DomainError("image matrices must be n x n");
  if (image(alg_.unit()) != CycMatrix::identity(n)) throw DomainError("representation is not unital");
  const CycMatrix w = weight_matrix(space_.weights_at(0), false);
  const CycMatrix winv = weight_matrix(space_.weights_at(0), true);
  for (std::size_t j = 0; j < d; ++j) {
    if (image(alg_.star(alg_.basis(j))) != winv * images_[j].adjoint() * w)
      throw DomainError("representation is not *-compatible");
    for (std::size_t k = 0; k < d; ++k)
      if (image(alg_.mul(alg_.basis(j), alg_.basis(k))) != images_[j] * images_[k])
        throw DomainError("representation is not multiplicative");
  }
  std::vector<Vec> rows;
  for (const auto& m : images_) rows.push_back(flatten(m));
  rank_ = rank_of_vectors(rows);
  injective_ = rank_ == d;
}

CoordinateRep CoordinateRep::left_regular(const CoordinateAlgebra& alg) {
  std::vector<CycMatrix> images;
  for (std::size_t k = 0; k < alg.dim(); ++k) images.push_back(alg.left_matrix(alg.basis(k)));
  return CoordinateRep(alg, alg.coordinate_space(), std::move(images));
}

CoordinateRep CoordinateRep::defining(const CoordinateAlgebra& matrix_alg) {
  if (matrix_alg.kind() != CoordinateAlgebra::Kind::kMatrix) throw DomainError("defining representation needs M_n");
  std::size_t n = 1;
  while (n * n < matrix_alg.dim()) ++n;
  std::vector<CycMatrix> images;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      CycMatrix m(n, n);
      m(a, b) = Cyc(1);
      images.push_back(std::move(m));
    }
  return CoordinateRep(matrix_alg, SpaceFamily::constant(static_cast<int>(n)), std::move(images));
}

CycMatrix CoordinateRep::image(const Vec& a) const {
  if (a.size() != alg_.dim()) throw DomainError("algebra element has the wrong length");
  CycMatrix out(dim(), dim());
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].is_zero()) out = out + a[k] * images_[k];
  return out;
}

// ---------------------------------------------------------------- action

TensorElement apply_rep(const CoordinateRep& rep, const TensorElement& a, const TensorElement& xi) {
  if (a.spaces() != rep.algebra().coordinate_space()) throw DomainError("apply_rep: element is not over the algebra");
  if (xi.spaces() != rep.space()) throw DomainError("apply_rep: vector is not over the representation space");
  const std::size_t d = rep.algebra().dim();
  TensorElement out(rep.space());
  for (const auto& [omega, ba] : a.components()) {
    for (const auto& [mu, bx] : xi.components()) {
      const CoordFamily img = image_family(rep, omega.section(), mu.section());
      if (img.tail().has_zero_value()) continue;
      const auto support = support_union(ba.support, bx.support);
      if (support.size() > kMaxSupport) throw CapExceeded("apply_rep: joint support exceeds the cap");
      const Vec av = embed_block(ba, omega, support);
      const Vec xv = embed_block(bx, mu, support);
      const auto shape = block_shape(rep.space(), support);
      Vec result(xv.size());
      std::vector<std::size_t> digits(support.size());
      for (std::size_t flat = 0; flat < av.size(); ++flat) {
        if (!av[flat].is_zero()) {
          for (std::size_t p = 0, t = flat; p < support.size(); ++p, t /= d) digits[support.size() - 1 - p] = t % d;
          Vec y = xv;
          for (std::size_t p = 0; p < support.size(); ++p) y = apply_mode(y, shape, p, rep.images()[digits[p]]);
          for (std::size_t k = 0; k < y.size(); ++k)
            if (!y[k].is_zero()) result[k] += av[flat] * y[k];
        }
      }
      out.add_block(ClassId(rep.space(), img.tail()), Block{support, std::move(result)});
    }
  }
  return out;
}

ClassId class_action(const CoordinateRep& rep, const ClassId& omega, const ClassId& mu) {
  const CoordFamily img = image_family(rep, omega.section(), mu.section());
  if (img.tail().has_zero_value()) throw DomainError("class_action: image has zero coordinates");
  return ClassId(rep.space(), img.tail());
}

CoordFamily strong_faithfulness_witness(const CoordinateRep& rep, const std::vector<ClassId>& classes,
                                        std::size_t pool_size) {
  if (!rep.injective()) throw DomainError("strong faithfulness needs an injective coordinate representation");
  const CoordinateAlgebra& alg = rep.algebra();
  std::size_t period = rep.space().period();
  for (const ClassId& w : classes) {
    if (w.spaces() != alg.coordinate_space()) throw DomainError("witness: class is not over the algebra");
    if (w == trivial_class(alg)) throw DomainError("witness: the identity class cannot be separated");
    if (!is_unitary_family(alg, w.section())) throw DomainError("witness: class is not unitary");
    period = std::lcm(period, w.tail().period());
  }
  const CycMatrix id = CycMatrix::identity(rep.dim());
  std::vector<Vec> values;
  for (std::size_t r = 0; r < period; ++r) {
    std::vector<CycMatrix> active;
    for (const ClassId& w : classes) {
      CycMatrix v = rep.image(w.tail().periodic_at(r));
      if (v != id) active.push_back(std::move(v));
    }
    std::optional<Vec> chosen;
    for (const Vec& v : unit_vector_pool(rep.space(), r, pool_size)) {
      bool ok = true;
      for (const CycMatrix& m : active) ok = ok && m.apply(v) != v;
      if (ok) {
        chosen = v;
        break;
      }
    }
    if (!chosen) throw WitnessNotFound("unit-vector pool exhausted", r);
    values.push_back(std::move(*chosen));
  }
  CoordFamily xi = CoordFamily::periodic(rep.space(), std::move(values));
  const ClassId mu = class_of(xi);
  for (const ClassId& w : classes)
    if (class_action(rep, w, mu) == mu) throw WitnessNotFound("class " + w.to_string() + " is not separated", 0);
  return xi;
}

std::string to_string(KernelVerdict v) {
  switch (v) {
    case KernelVerdict::kInKernel:
      return "in-kernel";
    case KernelVerdict::kNotInKernel:
      return "not-in-kernel";
    case KernelVerdict::kIndeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

KernelReport kernel_check(const CoordinateRep& rep, const TensorElement& a, std::size_t pool_size) {
  KernelReport report;
  if (a.is_zero()) {
    report.verdict = KernelVerdict::kInKernel;
    report.detail = "element is zero in normal form";
    return report;
  }
  const CoordinateAlgebra& alg = rep.algebra();
  if (!is_unitary_graded(alg, a)) throw DomainError("kernel_check: element has non-unitary classes");
  std::vector<ClassId> omegas;
  for (const auto& kv : a.components()) omegas.push_back(kv.first);
  // Separate the components: omega_j . [xi] != omega_k . [xi] for j != k.
  std::vector<ClassId> quotients;
  for (const ClassId& wj : omegas)
    for (const ClassId& wk : omegas)
      if (wj != wk) {
        const ClassId q = class_mul(alg, class_star(alg, wk), wj);
        if (std::find(quotients.begin(), quotients.end(), q) == quotients.end()) quotients.push_back(q);
      }
  CoordFamily xi;
  try {
    xi = strong_faithfulness_witness(rep, quotients, pool_size);
  } catch (const WitnessNotFound& e) {
    report.detail = std::string("witness search failed: ") + e.what();
    return report;
  } catch (const DomainError& e) {
    report.detail = std::string("witness search unavailable: ") + e.what();
    return report;
  }
  const std::size_t n = rep.dim();
  constexpr std::size_t kMaxProbes = 4096;
  for (const auto& [omega, blk] : a.components()) {
    const auto& support = blk.support;
    std::size_t probes = 1;
    for (std::size_t p = 0; p < support.size() && probes <= kMaxProbes; ++p) probes *= n;
    if (probes > kMaxProbes) continue;
    // Isolated in its own class, the component acts on the finite part over
    // its support; an injective finite tensor product of Psi is non-zero on
    // some elementary basis vector.
    for (std::size_t flat = 0; flat < probes; ++flat) {
      CoordFamily eta = xi;
      for (std::size_t p = 0, t = flat; p < support.size(); ++p, t /= n) {
        Vec e(n);
        e[t % n] = Cyc(1);
        eta = eta.with_override(support[support.size() - 1 - p], e);
      }
      if (!apply_rep(rep, a, theta(eta)).is_zero()) {
        report.verdict = KernelVerdict::kNotInKernel;
        report.witness = eta;
        report.detail = "non-zero image on " + eta.to_string();
        return report;
      }
    }
  }
  report.detail = "no probe produced a non-zero image";
  return report;
}

// ---------------------------------------------------------------- GNS

Cyc state_value(const CoordinateAlgebra& alg, const Vec& rho, const Vec& a) {
  if (rho.size() != alg.dim() || a.size() != alg.dim()) throw DomainError("state has the wrong length");
  Cyc sum;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].is_zero() && !rho[k].is_zero()) sum += rho[k] * a[k];
  return sum;
}

GnsResult gns(const CoordinateAlgebra& alg, const Vec& rho) {
  const std::size_t d = alg.dim();
  auto ip = [&](const Vec& x, const Vec& y) { return state_value(alg, rho, alg.mul(alg.star(y), x)); };
  CycMatrix g(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) g(j, k) = ip(alg.basis(j), alg.basis(k));
  const PsdReport psd = psd_test(g);
  if (!psd.hermitian || !psd.psd) throw DomainError("gns: the state is not positive");

  std::vector<Vec> basis;
  Vec weights;
  for (std::size_t j = 0; j < d; ++j) {
    Vec v = alg.basis(j);
    for (std::size_t l = 0; l < basis.size(); ++l) {
      const Cyc c = ip(v, basis[l]) / weights[l];
      for (std::size_t k = 0; k < d; ++k) v[k] -= c * basis[l][k];
    }
    const Cyc w = ip(v, v);
    if (w.is_zero()) continue;
    if (!real_positive(w)) throw DomainError("gns: the state is not positive");
    basis.push_back(std::move(v));
    weights.push_back(w);
  }
  if (basis.empty()) throw DomainError("gns: the state vanishes");
  auto coords = [&](const Vec& x) {
    Vec c(basis.size());
    for (std::size_t l = 0; l < basis.size(); ++l) c[l] = ip(x, basis[l]) / weights[l];
    return c;
  };
  const std::size_t r = basis.size();
  std::vector<CycMatrix> images;
  for (std::size_t k = 0; k < d; ++k) {
    CycMatrix m(r, r);
    for (std::size_t l = 0; l < r; ++l) {
      const Vec col = coords(alg.mul(alg.basis(k), basis[l]));
      for (std::size_t i = 0; i < r; ++i) m(i, l) = col[i];
    }
    images.push_back(std::move(m));
  }
  Vec cyclic = coords(alg.unit());
  CoordinateRep rep(alg, SpaceFamily::weighted(weights), std::move(images));
  return GnsResult{std::move(rep), std::move(cyclic), std::move(basis), d - r};
}

// ---------------------------------------------------------------- Hilbert algebras

namespace {

Eigen::MatrixXcd to_eigen(const CycMatrix& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).to_complex();
  return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

/// Left multiplications by basis elements, conjugated into an orthonormal frame.
std::vector<Eigen::MatrixXcd> orthonormal_left(const CoordinateAlgebra& alg) {
  Eigen::VectorXd sq(static_cast<Eigen::Index>(alg.dim()));
  for (std::size_t k = 0; k < alg.dim(); ++k) sq(static_cast<Eigen::Index>(k)) = std::sqrt(alg.weights()[k].to_complex().real());
  std::vector<Eigen::MatrixXcd> out;
  for (std::size_t k = 0; k < alg.dim(); ++k)
    out.push_back(sq.asDiagonal() * to_eigen(alg.left_matrix(alg.basis(k))) * sq.cwiseInverse().asDiagonal());
  return out;
}

double left_bound(const CoordinateAlgebra& alg, const TensorElement& x, const std::vector<Eigen::MatrixXcd>& lb) {
  const std::size_t d = alg.dim();
  std::vector<double> basis_norm;
  for (const auto& m : lb) basis_norm.push_back(spectral_norm(m));
  double total = 0.0;
  for (const auto& [omega, blk] : x.components()) {
    const std::size_t positions = blk.support.size();
    if (blk.data.size() <= 64) {
      Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(blk.data.size()),
                                                     static_cast<Eigen::Index>(blk.data.size()));
      for (std::size_t flat = 0; flat < blk.data.size(); ++flat) {
        if (blk.data[flat].is_zero()) continue;
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
        for (std::size_t p = 0, t = flat, div = blk.data.size() / d; p < positions; ++p, t %= div, div /= d)
          term = kron(term, lb[t / div]);
        sum += blk.data[flat].to_complex() * term;
      }
      total += spectral_norm(sum);
    } else {
      for (std::size_t flat = 0; flat < blk.data.size(); ++flat) {
        if (blk.data[flat].is_zero()) continue;
        double term = std::abs(blk.data[flat].to_complex());
        for (std::size_t p = 0, t = flat; p < positions; ++p, t /= d) term *= basis_norm[t % d];
        total += term;
      }
    }
  }
  return total;
}

}  // namespace

HilbertReport hilbert_algebra_check(const CoordinateAlgebra& alg, std::size_t samples, std::uint64_t seed) {
  const std::size_t d = alg.dim();
  if (alg.inner(alg.unit(), alg.unit()) != Cyc(1)) throw DomainError("hilbert algebra axiom failed: ||e|| != 1");
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      const Vec bj = alg.basis(j), bk = alg.basis(k);
      if (alg.inner(alg.star(bj), alg.star(bk)) != alg.inner(bk, bj))
        throw DomainError("hilbert algebra axiom failed: involution is not an isometry");
      for (std::size_t l = 0; l < d; ++l) {
        const Vec bl = alg.basis(l);
        if (alg.inner(alg.mul(bj, bk), bl) != alg.inner(bk, alg.mul(alg.star(bj), bl)))
          throw DomainError("hilbert algebra axiom failed: <xy, z> != <y, x* z>");
      }
    }
  HilbertReport report;
  const auto lb = orthonormal_left(alg);
  Sampler s(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const TensorElement x = s.ut_element(alg, 2), y = s.ut_element(alg, 2), z = s.ut_element(alg, 2);
    const TensorElement xs = star(alg, x);
    if (phi1_inner(xs, xs) != phi1_inner(x, x)) ++report.star_isometry_failures;
    if (phi1_inner(mul(alg, x, y), z) != phi1_inner(y, mul(alg, xs, z))) ++report.adjoint_failures;
    report.max_left_bound = std::max(report.max_left_bound, left_bound(alg, x, lb));
    ++report.samples;
  }
  return report;
}

}  // namespace gitp
