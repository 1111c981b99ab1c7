#include "ggr/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "ggr/errors.hpp"

namespace ggr {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

void require_same_order(const CycloNum& a, const CycloNum& b) {
  if (a.order() != b.order())
    throw InvalidArgument("cyclotomic: operands live in Z[zeta_" + std::to_string(a.order()) + "] and Z[zeta_" +
                          std::to_string(b.order()) + "]");
}

// Returns (p, k) when m = p^k with k >= 1, else (0, 0).
std::pair<int, int> prime_power(int m) {
  if (m < 2) return {0, 0};
  int p = 2;
  while (m % p != 0) ++p;
  int k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return m == 1 ? std::make_pair(p, k) : std::make_pair(0, 0);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InvalidArgument("rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  auto g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

CycloNum::CycloNum(int m) : m_(m), c_(m > 0 ? m : 1, 0) {
  if (m < 1) throw InvalidArgument("cyclotomic: order must be >= 1");
}

CycloNum CycloNum::root_of_unity(int m, std::int64_t j) {
  CycloNum z(m);
  z.c_[mod(j, m)] = 1;
  return z;
}

CycloNum CycloNum::from_integer(int m, std::int64_t v) {
  CycloNum z(m);
  z.c_[0] = v;
  return z;
}

void CycloNum::add_root(std::int64_t j, std::int64_t count) { c_[mod(j, m_)] += count; }

CycloNum CycloNum::conj() const {
  CycloNum z(m_);
  for (int j = 0; j < m_; ++j) z.c_[(m_ - j) % m_] = c_[j];
  return z;
}

CycloNum CycloNum::galois(std::int64_t k) const {
  if (std::gcd(mod(k, m_), static_cast<std::int64_t>(m_)) != 1)
    throw InvalidArgument("cyclotomic: Galois exponent not coprime to the order");
  CycloNum z(m_);
  for (int j = 0; j < m_; ++j) z.c_[mod(static_cast<std::int64_t>(j) * k, m_)] += c_[j];
  return z;
}

CycloNum CycloNum::embed(int big_m) const {
  if (big_m % m_ != 0) throw InvalidArgument("cyclotomic: cannot embed order " + std::to_string(m_) + " into " +
                                             std::to_string(big_m));
  CycloNum z(big_m);
  const int step = big_m / m_;
  for (int j = 0; j < m_; ++j) z.c_[j * step] = c_[j];
  return z;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  require_same_order(*this, o);
  for (int j = 0; j < m_; ++j) c_[j] += o.c_[j];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  require_same_order(*this, o);
  for (int j = 0; j < m_; ++j) c_[j] -= o.c_[j];
  return *this;
}

CycloNum& CycloNum::operator*=(std::int64_t s) {
  for (auto& v : c_) v *= s;
  return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  require_same_order(a, b);
  const int m = a.m_;
  std::vector<int> nz;
  for (int j = 0; j < m; ++j)
    if (b.c_[j] != 0) nz.push_back(j);
  CycloNum z(m);
  for (int i = 0; i < m; ++i) {
    const auto ai = a.c_[i];
    if (ai == 0) continue;
    for (int j : nz) {
      int k = i + j;
      if (k >= m) k -= m;
      z.c_[k] += ai * b.c_[j];
    }
  }
  return z;
}

void CycloNum::add_product(const CycloNum& a, const CycloNum& b, std::int64_t scale) {
  require_same_order(*this, a);
  require_same_order(a, b);
  const int m = m_;
  std::vector<int> nz;
  for (int j = 0; j < m; ++j)
    if (b.c_[j] != 0) nz.push_back(j);
  for (int i = 0; i < m; ++i) {
    const auto ai = a.c_[i];
    if (ai == 0) continue;
    for (int j : nz) {
      int k = i + j;
      if (k >= m) k -= m;
      c_[k] += scale * ai * b.c_[j];
    }
  }
}

bool CycloNum::is_zero() const {
  for (auto v : power_basis(*this))
    if (v != 0) return false;
  return true;
}

std::size_t CycloNum::nonzero_count() const {
  std::size_t n = 0;
  for (auto v : c_) n += v != 0;
  return n;
}

std::string CycloNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < m_; ++j) {
    if (c_[j] == 0) continue;
    if (!first) os << (c_[j] > 0 ? " + " : " - ");
    else if (c_[j] < 0) os << "-";
    auto a = c_[j] < 0 ? -c_[j] : c_[j];
    if (j == 0) os << a;
    else {
      if (a != 1) os << a << "*";
      os << "z" << m_ << "^" << j;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool same_value(const CycloNum& a, const CycloNum& b) { return (a - b).is_zero(); }

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

int mobius(std::int64_t n) {
  int r = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

std::vector<std::int64_t> cyclotomic_polynomial(int m) {
  static std::mutex mu;
  static std::map<int, std::vector<std::int64_t>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact division.
  std::vector<std::int64_t> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d) continue;
    auto den = cyclotomic_polynomial(d);
    const int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
    std::vector<std::int64_t> quot(dn - dd + 1, 0);
    for (int k = dn; k >= dd; --k) {
      auto c = num[k];  // den is monic
      quot[k - dd] = c;
      for (int i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
    }
    for (int i = 0; i < dd; ++i)
      if (num[i] != 0) throw InternalFault("cyclotomic polynomial division left a remainder");
    num = std::move(quot);
  }
  std::lock_guard lock(mu);
  cache.emplace(m, num);
  return num;
}

std::vector<std::int64_t> power_basis_by_division(const CycloNum& z) {
  const int m = z.order();
  auto phi = cyclotomic_polynomial(m);
  const int deg = static_cast<int>(phi.size()) - 1;
  std::vector<std::int64_t> r(z.coeffs().begin(), z.coeffs().end());
  for (int k = m - 1; k >= deg; --k) {
    auto c = r[k];
    if (c == 0) continue;
    for (int i = 0; i <= deg; ++i) r[k - deg + i] -= c * phi[i];
  }
  r.resize(deg);
  return r;
}

std::vector<std::int64_t> power_basis(const CycloNum& z) {
  const int m = z.order();
  if (m == 1) return {z.coeff(0)};
  auto [p, k] = prime_power(m);
  if (p == 0) return power_basis_by_division(z);
  // zeta^(j) for j >= (p-1)s equals -sum_{i<p-1} zeta^(j-(p-1)s+is), s = m/p
  const int s = m / p;
  const int top = (p - 1) * s;
  std::vector<std::int64_t> r(z.coeffs().begin(), z.coeffs().end());
  for (int j = m - 1; j >= top; --j) {
    auto v = r[j];
    if (v == 0) continue;
    r[j] = 0;
    for (int i = 0; i <= p - 2; ++i) r[j - top + i * s] -= v;
  }
  r.resize(top);
  return r;
}

std::int64_t trace_of_root(int m, std::int64_t j) {
  const auto g = std::gcd(mod(j, m), static_cast<std::int64_t>(m));
  const std::int64_t o = m / (g == 0 ? m : g);
  return mobius(o) * (euler_phi(m) / euler_phi(o));
}

Rational rational_value(const CycloNum& z) {
  const int m = z.order();
  const auto reduced = power_basis(z);
  for (std::size_t i = 1; i < reduced.size(); ++i)
    if (reduced[i] != 0) throw NotRational("cyclotomic number " + z.to_string() + " is not rational");
  std::int64_t tr = 0;
  for (int j = 0; j < m; ++j)
    if (z.coeff(j) != 0) tr += z.coeff(j) * trace_of_root(m, j);
  Rational value(tr, euler_phi(m));
  if (!(value == Rational(reduced[0])))
    throw InternalFault("cyclotomic: trace formula disagrees with power-basis reduction");
  return value;
}

std::int64_t exact_quotient(const CycloNum& z, std::int64_t divisor, const std::string& what) {
  Rational v;
  try {
    v = rational_value(z);
  } catch (const NotRational&) {
    throw InternalFault(what + ": character sum is not rational");
  }
  Rational q(v.num, v.den * divisor);
  if (!q.is_integer()) throw InternalFault(what + ": expected an integer, got " + q.to_string());
  return q.num;
}

std::complex<double> evaluate(const CycloNum& z) {
  const int m = z.order();
  std::complex<long double> acc = 0;
  for (int j = 0; j < m; ++j) {
    if (z.coeff(j) == 0) continue;
    long double ang = 2.0L * std::numbers::pi_v<long double> * j / m;
    acc += std::complex<long double>(std::cos(ang), std::sin(ang)) * static_cast<long double>(z.coeff(j));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace ggr
