#pragma once

// Polynomials over the residue field F_q (a Ring with ell = 1), minimal and
// characteristic polynomials, and factorization by trial division against a
// sieve of monic irreducibles.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ggr/local_ring.hpp"
#include "ggr/matrix.hpp"

namespace ggr {

class Poly {
 public:
  /// Zero polynomial over the field.
  explicit Poly(Ring field);
  /// Coefficients from t^0 upwards; trailing zeros are trimmed.
  Poly(Ring field, std::vector<Elem> coeffs);
  static Poly monomial(const Ring& field, int degree, Elem c = 1);

  const Ring& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator<(const Poly& o) const;

  /// Quotient and remainder; throws InvalidArgument on division by zero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly make_monic() const;
  Matrix evaluate(const Matrix& x) const;

  /// E.g. "t^2 + 2t + 1" (field elements printed as codes).
  std::string to_string() const;

 private:
  Ring field_;
  std::vector<Elem> c_;
  void trim();
};

/// det(tI - x) for x over a field.
Poly char_poly(const Matrix& x);
/// Monic generator of the annihilator ideal of x, via the first linear
/// dependency among I, x, x^2, ...
Poly min_poly(const Matrix& x);

using Factorization = std::vector<std::pair<Poly, int>>;

/// Monic irreducibles over F_q of degree <= cap, grouped by degree. Degree d
/// is built on first request by striking out every product g*h with g an
/// irreducible of degree <= d/2. Optionally persisted in a cache directory,
/// keyed by (q, residue modulus, cap).
class IrreducibleSieve {
 public:
  IrreducibleSieve(Ring field, int cap, std::optional<std::filesystem::path> cache_dir = std::nullopt);
  const Ring& field() const { return field_; }
  int cap() const { return cap_; }
  const std::vector<Poly>& of_degree(int d) const;
  bool is_irreducible(const Poly& f) const;
  /// True when the sieve was read from disk rather than computed.
  bool loaded_from_cache() const { return from_cache_; }

 private:
  Ring field_;
  int cap_;
  std::optional<std::filesystem::path> cache_path_;
  bool from_cache_ = false;
  mutable std::mutex mu_;
  // Degree d list at index d; built on demand so that large q stay cheap
  // until a high degree is actually requested.
  mutable std::vector<std::unique_ptr<std::vector<Poly>>> by_degree_;

  std::vector<Poly> build_degree(int d) const;
  void save() const;
};

/// Shared sieve per (field, cap); built on first use.
const IrreducibleSieve& sieve_for(const Ring& field, int cap = 8);

/// Factor a monic polynomial of degree <= cap into monic irreducibles with
/// multiplicities, factors sorted. Throws CapExceeded above the cap.
Factorization factor_poly(const Poly& f, int cap = 8);

}  // namespace ggr
