#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gitp/linalg.hpp"
#include "gitp/scalars.hpp"

using gitp::Cyc;
using gitp::Rational;

namespace {

// Independent floating-point oracle: a value built as sum r_k zeta_n^k.
struct Sample {
  Cyc exact;
  std::complex<double> approx;
};

Sample random_sample(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> terms(0, 3);
  std::uniform_int_distribution<int> expo(0, n - 1);
  Sample s{Cyc(0), {0.0, 0.0}};
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    const long num = coeff(rng);
    const long d = den(rng);
    const int k = expo(rng);
    s.exact += Cyc::rational(num, d) * Cyc::zeta(n, k);
    s.approx += (double(num) / double(d)) * std::polar(1.0, 2 * std::numbers::pi * k / n);
  }
  return s;
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

}  // namespace

TEST_CASE("roots of unity satisfy their defining relations") {
  CHECK(Cyc::zeta(4) * Cyc::zeta(4) == Cyc(-1));
  CHECK((Cyc(1) + Cyc::zeta(3) + Cyc::zeta(3, 2)).is_zero());
  CHECK(Cyc::zeta(12).pow(12).is_one());
  CHECK(Cyc::zeta(8).pow(2) == Cyc::zeta(4));
  CHECK(Cyc::zeta(6) == -Cyc::zeta(3, 2));
  CHECK(Cyc::root_of_unity(Rational(1, 2)) == Cyc(-1));
  CHECK(Cyc::root_of_unity(Rational(7, 3)) == Cyc::zeta(3));
}

TEST_CASE("unit modulus is decided exactly") {
  const Cyc s = Cyc::rational(3, 5) + Cyc::rational(4, 5) * Cyc::zeta(4);
  CHECK(s.is_unit_modulus());
  CHECK_FALSE((Cyc::rational(1, 2) * Cyc::zeta(5)).is_unit_modulus());
  CHECK((Cyc::zeta(7, 3)).is_unit_modulus());
  CHECK_FALSE(Cyc(0).is_unit_modulus());
}

TEST_CASE("canonical form shrinks to the conductor") {
  const Cyc a = Cyc::zeta(12, 3);  // = i
  CHECK(a.order() == 4);
  CHECK((Cyc::zeta(15, 5) + Cyc::zeta(15, 10)) == Cyc(-1));
  CHECK((Cyc::zeta(9, 3) * Cyc::zeta(9, 6)).is_one());
}

TEST_CASE("inverse of zero is rejected") {
  CHECK_THROWS_AS(Cyc(0).inverse(), gitp::DomainError);
  CHECK_THROWS_AS(Cyc(1) / Cyc(0), gitp::DomainError);
}

TEST_CASE("printing is canonical") {
  CHECK(Cyc(0).to_string() == "0");
  CHECK(Cyc::rational(-3, 4).to_string() == "-3/4");
  CHECK((Cyc::rational(3, 5) + Cyc::rational(4, 5) * Cyc::zeta(4)).to_string() ==
        "3/5 + 4/5*zeta(4)");
}

TEST_CASE("arithmetic agrees with the complex oracle") {
  std::mt19937_64 rng(11);
  const int orders[] = {1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 20};
  std::uniform_int_distribution<int> pick(0, std::size(orders) - 1);
  for (int round = 0; round < 300; ++round) {
    const auto a = random_sample(rng, orders[pick(rng)]);
    const auto b = random_sample(rng, orders[pick(rng)]);
    CHECK(close((a.exact + b.exact).to_complex(), a.approx + b.approx));
    CHECK(close((a.exact - b.exact).to_complex(), a.approx - b.approx));
    CHECK(close((a.exact * b.exact).to_complex(), a.approx * b.approx));
    CHECK(close(a.exact.conj().to_complex(), std::conj(a.approx)));
    if (!b.exact.is_zero()) {
      CHECK(close((a.exact / b.exact).to_complex(), a.approx / b.approx));
      CHECK((b.exact * b.exact.inverse()).is_one());
    }
    // exact zero test agrees with the oracle
    CHECK(a.exact.is_zero() == (std::abs(a.approx) < 1e-12));
  }
}

TEST_CASE("field laws hold under canonical equality") {
  std::mt19937_64 rng(29);
  const int orders[] = {3, 4, 5, 8, 12};
  std::uniform_int_distribution<int> pick(0, std::size(orders) - 1);
  for (int round = 0; round < 200; ++round) {
    const Cyc a = random_sample(rng, orders[pick(rng)]).exact;
    const Cyc b = random_sample(rng, orders[pick(rng)]).exact;
    const Cyc c = random_sample(rng, orders[pick(rng)]).exact;
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(a.conj().conj() == a);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == Cyc(0));
    // total order is consistent with equality
    CHECK(((a <=> b) == 0) == (a == b));
    // order of the result divides lcm of operand orders
    const long long l = gitp::lcm_checked(a.order(), b.order());
    CHECK(l % (a * b).order() == 0);
    CHECK(l % (a + b).order() == 0);
  }
}

TEST_CASE("embedding into a larger cyclotomic field commutes with arithmetic") {
  // zeta_n^k rewritten as zeta_{mn}^{mk} must give identical canonical forms.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int n : {3, 4, 5, 6}) {
    for (int m : {2, 3, 5}) {
      Cyc a, a_big, b, b_big;
      for (int k = 0; k < n; ++k) {
        const long ca = coeff(rng), cb = coeff(rng);
        a += Cyc(ca) * Cyc::zeta(n, k);
        a_big += Cyc(ca) * Cyc::zeta(m * n, m * k);
        b += Cyc(cb) * Cyc::zeta(n, k);
        b_big += Cyc(cb) * Cyc::zeta(m * n, m * k);
      }
      CHECK(a == a_big);
      CHECK(a * b == a_big * b_big);
      CHECK(a + b == a_big + b_big);
      CHECK(a.conj() == a_big.conj());
    }
  }
}

TEST_CASE("galois conjugation is a field automorphism") {
  const Cyc a = Cyc::zeta(5) + Cyc::rational(1, 2);
  const Cyc b = Cyc::zeta(5, 2) - Cyc(3);
  CHECK((a * b).galois(2) == a.galois(2) * b.galois(2));
  CHECK(a.galois(4) == a.conj());
}

TEST_CASE("matrix rank, nullspace and inverse") {
  using gitp::CycMatrix;
  const Cyc i = Cyc::zeta(4);
  const auto m = CycMatrix::from_rows({{Cyc(1), i}, {-i, Cyc(1)}});
  CHECK(m.rank() == 1);
  const auto ns = m.nullspace();
  REQUIRE(ns.size() == 1);
  CHECK(gitp::is_zero_vec(m.apply(ns[0])));
  const auto u = CycMatrix::from_rows({{Cyc(0), Cyc(1)}, {Cyc(1), Cyc(0)}});
  CHECK(u.inverse() == u);
  CHECK(u * u == CycMatrix::identity(2));
  CHECK_THROWS_AS(m.inverse(), gitp::DomainError);
  const auto k = gitp::kron(u, CycMatrix::identity(2));
  CHECK(k.rows() == 4);
  CHECK(k * k == CycMatrix::identity(4));
}

TEST_CASE("square roots of rationals are exact") {
  for (long n : {2L, 3L, 5L, 6L, 7L, 8L, 12L, 13L}) {
    const Cyc r = Cyc::sqrt_of(Rational(n));
    CHECK(r * r == Cyc(n));
    CHECK(r.is_real());
    CHECK(r.to_complex().real() > 0);
  }
  const Cyc h = Cyc::sqrt_of(Rational(1, 2));
  CHECK(h * h == Cyc::rational(1, 2));
  CHECK(Cyc::sqrt_of(Rational(9, 4)) == Cyc::rational(3, 2));
  CHECK_THROWS_AS(Cyc::sqrt_of(Rational(-1)), gitp::DomainError);
}
