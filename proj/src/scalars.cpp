#include "gitp/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>

namespace gitp {

namespace {

struct PrimePower {
  int p = 0;
  int pk = 0;
  int k = 0;
  long long cofactor_inverse = 0;  // (n / p^k)^{-1} mod p^k
};

long long mod_inverse(long long a, long long m) {
  if (m == 1) return 0;
  long long g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  long long b = a1;
  while (b != 0) {
    long long q = g / b;
    std::tie(g, b) = std::make_pair(b, g - q * b);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  // g == gcd(a, m) == 1 for the moduli used here.
  x %= m;
  if (x < 0) x += m;
  return x;
}

std::vector<PrimePower> factor_order(int n) {
  std::vector<PrimePower> out;
  int rest = n;
  for (int p = 2; static_cast<long long>(p) * p <= rest; ++p) {
    if (rest % p != 0) continue;
    PrimePower pp;
    pp.p = p;
    pp.pk = 1;
    while (rest % p == 0) {
      rest /= p;
      pp.pk *= p;
      ++pp.k;
    }
    out.push_back(pp);
  }
  if (rest > 1) out.push_back(PrimePower{rest, rest, 1, 0});
  for (auto& pp : out) pp.cofactor_inverse = mod_inverse(n / pp.pk, pp.pk);
  return out;
}

long long component_exponent(const PrimePower& pp, long long e) {
  return (e % pp.pk) * pp.cofactor_inverse % pp.pk;
}

// Writes zeta_n^e as a signed sum of basis roots.
std::vector<std::pair<int, int>> reduce_root(int n, const std::vector<PrimePower>& primes,
                                             long long e) {
  e %= n;
  if (e < 0) e += n;
  std::vector<std::pair<int, int>> acc{{0, 1}};
  std::vector<std::pair<int, int>> next;
  for (const auto& pp : primes) {
    const long long cof = n / pp.pk;
    const long long j = component_exponent(pp, e);
    const long long phi = pp.pk - pp.pk / pp.p;
    next.clear();
    if (j < phi) {
      for (auto [x, s] : acc) next.emplace_back(static_cast<int>((x + j * cof) % n), s);
    } else {
      // Phi_{p^k}(z) = sum_{t<p} z^{t p^{k-1}} eliminates the top block.
      const long long r = j - phi;
      const long long step = pp.pk / pp.p;
      for (int t = 0; t + 1 < pp.p; ++t) {
        const long long jj = t * step + r;
        for (auto [x, s] : acc) next.emplace_back(static_cast<int>((x + jj * cof) % n), -s);
      }
    }
    std::swap(acc, next);
  }
  return acc;
}

void check_order(long long n) {
  if (n < 1) throw DomainError("cyclotomic order must be positive");
  if (n > kMaxCyclotomicOrder)
    throw CapExceeded("cyclotomic order " + std::to_string(n) + " exceeds cap " +
                      std::to_string(kMaxCyclotomicOrder));
}

}  // namespace

int euler_phi(int n) {
  int result = n;
  int rest = n;
  for (int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    result -= result / p;
  }
  if (rest > 1) result -= result / rest;
  return result;
}

long long lcm_checked(long long a, long long b) {
  return std::lcm(a, b);
}

Cyc::Cyc(long value) {
  if (value != 0) terms_.emplace_back(0, Rational(value));
}

Cyc::Cyc(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v != 0) terms_.emplace_back(0, v);
}

Cyc::Cyc(int order, std::vector<Term> terms) : order_(order), terms_(std::move(terms)) {}

Cyc Cyc::from_dense(int order, std::vector<Term> raw) {
  check_order(order);
  const auto primes = factor_order(order);
  std::map<int, Rational> acc;
  for (auto& [e, c] : raw) {
    if (c == 0) continue;
    for (auto [be, sign] : reduce_root(order, primes, e)) {
      if (sign > 0)
        acc[be] += c;
      else
        acc[be] -= c;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (c != 0) terms.emplace_back(e, std::move(c));

  int n = order;
  if (terms.empty()) n = 1;
  // Shrink to the conductor: a prime p can be dropped when every term lives
  // in the power basis of the subfield.
  while (n > 1) {
    bool dropped = false;
    for (const auto& pp : factor_order(n)) {
      const bool inside = std::all_of(terms.begin(), terms.end(), [&](const Term& t) {
        const long long j = component_exponent(pp, t.first);
        return pp.k >= 2 ? j % pp.p == 0 : j == 0;
      });
      if (!inside) continue;
      n /= pp.p;
      for (auto& t : terms) t.first /= pp.p;
      dropped = true;
      break;
    }
    if (!dropped) break;
  }
  return Cyc(n, std::move(terms));
}

Cyc Cyc::zeta(int n, long k) {
  if (n < 1) throw DomainError("zeta order must be positive");
  long long e = k % n;
  if (e < 0) e += n;
  return from_dense(n, {{static_cast<int>(e), Rational(1)}});
}

Cyc Cyc::rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Cyc(q);
}

Cyc Cyc::root_of_unity(const Rational& turns) {
  Rational t = turns;
  t.canonicalize();
  const mpz_class& den = t.get_den();
  if (den > kMaxCyclotomicOrder)
    throw CapExceeded("root of unity order " + den.get_str() + " exceeds cap");
  const long n = den.get_si();
  mpz_class num = t.get_num() % den;
  if (num < 0) num += den;
  return zeta(static_cast<int>(n), num.get_si());
}

namespace {

// sqrt(p) for a prime p, via the Gauss sum g with g^2 = (-1)^((p-1)/2) p.
Cyc sqrt_prime(long p) {
  if (p == 2) return Cyc::zeta(8) + Cyc::zeta(8, 7);
  if (p > kMaxCyclotomicOrder / 4) throw CapExceeded("square root needs too large a cyclotomic field");
  Cyc g;
  for (long a = 1; a < p; ++a) {
    long r = 1, base = a % p, e = (p - 1) / 2;
    while (e > 0) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    g += (r == 1 ? Cyc(1) : Cyc(-1)) * Cyc::zeta(static_cast<int>(p), a);
  }
  return p % 4 == 1 ? g : -Cyc::zeta(4) * g;
}

}  // namespace

Cyc Cyc::sqrt_of(const Rational& value) {
  if (sgn(value) < 0) throw DomainError("square root of a negative rational");
  if (sgn(value) == 0) return Cyc(0);
  // sqrt(n/d) = sqrt(n d) / d; pull out square factors of n d.
  mpz_class m = value.get_num() * value.get_den();
  mpz_class outside = 1;
  Cyc root(1);
  for (long p = 2; mpz_class(p) * p <= m; ++p) {
    int count = 0;
    while (m % p == 0) {
      m /= p;
      ++count;
    }
    for (int c = 0; c < count / 2; ++c) outside *= p;
    if (count % 2 == 1) root *= sqrt_prime(p);
  }
  if (m > 1) {
    if (!m.fits_slong_p()) throw CapExceeded("square root argument too large");
    root *= sqrt_prime(m.get_si());
  }
  Rational scale(outside, value.get_den());
  scale.canonicalize();
  return Cyc(scale) * root;
}

bool Cyc::is_real() const { return conj() == *this; }

bool Cyc::is_one() const {
  return order_ == 1 && terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

bool Cyc::is_unit_modulus() const { return (*this * conj()).is_one(); }

Rational Cyc::as_rational() const {
  if (!is_rational()) throw DomainError("value " + to_string() + " is not rational");
  return terms_.empty() ? Rational(0) : terms_[0].second;
}

Cyc Cyc::conj() const {
  if (order_ <= 2) return *this;
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& [e, c] : terms_) raw.emplace_back((order_ - e) % order_, c);
  return from_dense(order_, std::move(raw));
}

Cyc Cyc::galois(long k) const {
  if (std::gcd(static_cast<long>(order_), k) != 1)
    throw DomainError("galois exponent must be coprime to the order");
  if (order_ <= 2) return *this;
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  long long kk = k % order_;
  if (kk < 0) kk += order_;
  for (const auto& [e, c] : terms_)
    raw.emplace_back(static_cast<int>(e * kk % order_), c);
  return from_dense(order_, std::move(raw));
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  if (is_monomial()) {
    const auto& [e, c] = terms_[0];
    Rational inv = 1 / c;
    return from_dense(order_, {{(order_ - e) % order_, inv}});
  }
  // Product of the non-trivial Galois conjugates divided by the norm.
  Cyc others(1);
  for (int k = 2; k < order_; ++k)
    if (std::gcd(k, order_) == 1) others *= galois(k);
  const Cyc norm = *this * others;
  return others * Cyc(1 / norm.as_rational());
}

Cyc Cyc::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Cyc result(1);
  Cyc base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Cyc& Cyc::operator+=(const Cyc& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (order_ == 1 && other.order_ == 1) {
    Rational s = terms_[0].second + other.terms_[0].second;
    return *this = Cyc(s);
  }
  const long long n = std::lcm<long long>(order_, other.order_);
  check_order(n);
  std::vector<Term> raw;
  raw.reserve(terms_.size() + other.terms_.size());
  const long long fa = n / order_, fb = n / other.order_;
  for (const auto& [e, c] : terms_) raw.emplace_back(static_cast<int>(e * fa), c);
  for (const auto& [e, c] : other.terms_) raw.emplace_back(static_cast<int>(e * fb), c);
  return *this = from_dense(static_cast<int>(n), std::move(raw));
}

Cyc& Cyc::operator-=(const Cyc& other) { return *this += -other; }

Cyc& Cyc::operator*=(const Cyc& other) { return *this = *this * other; }

Cyc operator*(const Cyc& a, const Cyc& b) {
  if (a.is_zero() || b.is_zero()) return Cyc();
  if (a.order_ == 1 && b.order_ == 1) return Cyc(Rational(a.terms_[0].second * b.terms_[0].second));
  if (b.order_ == 1) {
    std::vector<Cyc::Term> terms = a.terms_;
    for (auto& t : terms) t.second *= b.terms_[0].second;
    return Cyc(a.order_, std::move(terms));
  }
  if (a.order_ == 1) return b * a;
  const long long n = std::lcm<long long>(a.order_, b.order_);
  check_order(n);
  const long long fa = n / a.order_, fb = n / b.order_;
  std::map<int, Rational> raw;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      raw[static_cast<int>((ea * fa + eb * fb) % n)] += ca * cb;
  std::vector<Cyc::Term> terms;
  terms.reserve(raw.size());
  for (auto& [e, c] : raw) terms.emplace_back(e, std::move(c));
  return Cyc::from_dense(static_cast<int>(n), std::move(terms));
}

Cyc operator-(const Cyc& a) {
  Cyc r = a;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

bool operator==(const Cyc& a, const Cyc& b) {
  return a.order_ == b.order_ && a.terms_ == b.terms_;
}

std::strong_ordering operator<=>(const Cyc& a, const Cyc& b) {
  if (auto c = a.order_ <=> b.order_; c != 0) return c;
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].first <=> b.terms_[i].first; c != 0) return c;
    const int cmp = ::cmp(a.terms_[i].second, b.terms_[i].second);
    if (cmp != 0) return cmp < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string Cyc::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    Rational mag = abs(c);
    std::string monomial;
    if (e != 0) {
      monomial = "zeta(" + std::to_string(order_) + ")";
      if (e != 1) monomial += "^" + std::to_string(e);
    }
    std::string piece;
    if (monomial.empty())
      piece = mag.get_str();
    else if (mag == 1)
      piece = monomial;
    else
      piece = mag.get_str() + "*" + monomial;
    if (first)
      out += negative ? "-" + piece : piece;
    else
      out += (negative ? " - " : " + ") + piece;
    first = false;
  }
  return out;
}

std::complex<double> Cyc::to_complex() const {
  std::complex<double> z = 0;
  for (const auto& [e, c] : terms_) {
    const double angle = 2.0 * std::numbers::pi * e / order_;
    z += c.get_d() * std::polar(1.0, angle);
  }
  return z;
}

std::ostream& operator<<(std::ostream& os, const Cyc& value) { return os << value.to_string(); }

}  // namespace gitp
