#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element is stored in the basis obtained by tensoring the power bases of
// Q(zeta_{p^k}) over the prime powers p^k || N.  Every basis element is a
// single root of unity zeta_N^e, so a value is a sparse map e -> rational.
// After every operation the order N is shrunk to the conductor of the
// element, which makes the representation unique: two values are equal iff
// their (order, terms) pairs are identical.

#include <compare>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gitp {

using Rational = mpq_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the mathematical input was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A desk-scale size cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Largest cyclotomic order the arithmetic accepts.
inline constexpr int kMaxCyclotomicOrder = 1 << 16;

class Cyc {
 public:
  using Term = std::pair<int, Rational>;

  Cyc() = default;
  Cyc(long value);  // NOLINT(google-explicit-constructor)
  explicit Cyc(const Rational& value);

  /// zeta_n^k = exp(2 pi i k / n).
  static Cyc zeta(int n, long k = 1);
  static Cyc rational(long num, long den);
  /// exp(2 pi i q) for a rational q.
  static Cyc root_of_unity(const Rational& turns);
  /// Positive square root of a non-negative rational (quadratic Gauss sums).
  static Cyc sqrt_of(const Rational& value);

  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_rational() const { return order_ == 1; }
  bool is_real() const;
  /// Exact test of s * conj(s) == 1.
  bool is_unit_modulus() const;
  /// Non-zero element whose canonical form is a single basis root times a
  /// rational.
  bool is_monomial() const { return terms_.size() == 1; }

  /// Throws DomainError unless the value is rational.
  Rational as_rational() const;

  Cyc conj() const;
  /// Throws DomainError on zero.
  Cyc inverse() const;
  /// The automorphism zeta -> zeta^k (k must be coprime to the order).
  Cyc galois(long k) const;
  Cyc pow(long exponent) const;

  /// Canonical form in the surface syntax, e.g. "3/5 + 4/5*zeta(4)".
  std::string to_string() const;
  /// Read-only floating point view for reports.
  std::complex<double> to_complex() const;

  Cyc& operator+=(const Cyc& other);
  Cyc& operator-=(const Cyc& other);
  Cyc& operator*=(const Cyc& other);

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(const Cyc& a, const Cyc& b);
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }
  friend Cyc operator-(const Cyc& a);

  friend bool operator==(const Cyc& a, const Cyc& b);
  /// Total order consistent with equality (order first, then terms).
  friend std::strong_ordering operator<=>(const Cyc& a, const Cyc& b);

 private:
  Cyc(int order, std::vector<Term> terms);
  static Cyc from_dense(int order, std::vector<Term> terms);

  int order_ = 1;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Cyc& value);

/// Euler's totient.
int euler_phi(int n);
long long lcm_checked(long long a, long long b);

}  // namespace gitp
