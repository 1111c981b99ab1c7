#pragma once

// Exact arithmetic in Z[zeta_m] using the group-algebra representation
// Z[x]/(x^m - 1): a CycloNum is a vector of m integer coefficients, the j-th
// one counting zeta^j. Character sums over finite groups are naturally
// exponent-indexed counters, so accumulation is just coefficient addition.
//
// Distinct coefficient vectors can denote the same algebraic number; use
// same_value()/is_zero() (reduction modulo the cyclotomic polynomial) or
// rational_value() to compare.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ggr {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);
  bool is_integer() const { return den == 1; }
  std::string to_string() const;
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

class CycloNum {
 public:
  CycloNum() : CycloNum(1) {}
  explicit CycloNum(int m);

  static CycloNum root_of_unity(int m, std::int64_t j);
  static CycloNum from_integer(int m, std::int64_t v);

  int order() const { return m_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  std::int64_t coeff(int j) const { return c_[j]; }

  /// coeff(j mod m) += count.
  void add_root(std::int64_t j, std::int64_t count = 1);

  /// Complex conjugation zeta^j -> zeta^-j.
  CycloNum conj() const;
  /// The Galois automorphism zeta -> zeta^k; requires gcd(k, m) = 1.
  CycloNum galois(std::int64_t k) const;
  /// The same number viewed in Z[zeta_M]; requires m | M.
  CycloNum embed(int big_m) const;

  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(std::int64_t s);
  /// *this += scale * a * b without temporaries.
  void add_product(const CycloNum& a, const CycloNum& b, std::int64_t scale = 1);
  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator*(CycloNum a, std::int64_t s) { return a *= s; }

  /// Representation equality (not algebraic equality).
  friend bool operator==(const CycloNum& a, const CycloNum& b) { return a.m_ == b.m_ && a.c_ == b.c_; }

  /// Algebraic zero test.
  bool is_zero() const;
  std::size_t nonzero_count() const;
  std::string to_string() const;

 private:
  int m_;
  std::vector<std::int64_t> c_;
};

/// Algebraic equality.
bool same_value(const CycloNum& a, const CycloNum& b);

/// Coefficients with respect to the power basis 1, zeta, ..., zeta^(phi(m)-1).
/// For prime-power m this uses the relation 1 + zeta^(m/p) + ... = 0; other
/// m divide by the cyclotomic polynomial.
std::vector<std::int64_t> power_basis(const CycloNum& z);

/// Same reduction always done by long division by Phi_m (test oracle).
std::vector<std::int64_t> power_basis_by_division(const CycloNum& z);

/// Phi_m with integer coefficients, constant term first.
std::vector<std::int64_t> cyclotomic_polynomial(int m);

std::int64_t euler_phi(std::int64_t n);
int mobius(std::int64_t n);

/// Tr_{Q(zeta_m)/Q}(zeta^j).
std::int64_t trace_of_root(int m, std::int64_t j);

/// The rational number z, computed as Tr(z)/phi(m). Throws NotRational when
/// z is not fixed by the Galois group.
Rational rational_value(const CycloNum& z);

/// rational_value(z) / divisor, which must be an integer; any other outcome
/// throws InternalFault (it signals an arithmetic bug).
std::int64_t exact_quotient(const CycloNum& z, std::int64_t divisor, const std::string& what);

/// Floating-point evaluation with zeta = exp(2 pi i / m); diagnostics only.
std::complex<double> evaluate(const CycloNum& z);

}  // namespace ggr
