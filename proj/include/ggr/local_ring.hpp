#pragma once

// Finite local rings o_l realised as Z/p^l ("mixed") or F_q[t]/(t^l)
// ("equal" characteristic).
//
// Elements are stored as canonical integer codes. In both families the code
// of x is sum_i c_i q^i where c_i is the i-th digit of x in base q (for Z/p^l
// the digits are the p-adic digits, for F_q[t]/(t^l) they are the F_q codes
// of the coefficients of t^i). Consequences used throughout:
//   * projection to o_i is `code % q^i`,
//   * the valuation is the number of trailing zero base-q digits,
//   * multiplication and division by the uniformizer power w^k are
//     `code * q^k mod q^l` and `code / q^k`.
// Element enumeration order is increasing code.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ggr {

using Elem = std::uint32_t;

enum class RingKind { Mixed, Equal };

bool is_prime(std::int64_t n);

class Ring {
 public:
  /// Validates and builds o_l. Throws InvalidArgument for a non-prime p or
  /// non-positive sizes, Unsupported for mixed characteristic with f > 1
  /// (Galois rings) or for rings too large for 32-bit codes.
  static Ring make(RingKind kind, int p, int f, int ell);

  /// Parses "mixed:p^l" or "equal:q^l" (q a prime power).
  static Ring parse(std::string_view text);

  /// Inverse of parse().
  std::string to_string() const;

  RingKind kind() const;
  int p() const;
  int f() const;
  int ell() const;
  /// Residue field size.
  int q() const;
  /// q^l.
  std::uint64_t size() const;
  bool is_field() const { return ell() == 1; }

  /// The ring o_i, 1 <= i <= l, of the same family.
  Ring truncated(int i) const;
  Ring residue_field() const { return truncated(1); }

  Elem from_int(std::int64_t v) const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;
  /// Throws InvalidArgument for a non-unit.
  Elem inv(Elem a) const;

  bool is_unit(Elem a) const { return a % static_cast<Elem>(q()) != 0; }
  /// In [0, l]; valuation(0) = l.
  int valuation(Elem a) const;

  /// Image of x under o_l -> o_i.
  Elem project(Elem x, int i) const;
  /// Code of w^k (0 when k >= l).
  Elem uniformizer_pow(int k) const;
  Elem times_uniformizer_pow(Elem x, int k) const;
  /// x / w^v; requires valuation(x) >= v. The result is one representative
  /// of the quotient (defined modulo w^(l-v)).
  Elem divide_uniformizer_pow(Elem x, int v) const;

  /// Order m of the roots of unity taken by additive characters:
  /// p^l (mixed) or p (equal).
  int char_modulus() const;
  /// Exponent in Z/m of the fixed primitive character phi at x.
  /// Mixed: x mod p^l. Equal: Tr_{F_q/F_p} of the t^(l-1) coefficient.
  int additive_exponent(Elem x) const;

  std::vector<Elem> elements() const;
  std::vector<Elem> units() const;

  /// Residue-field modulus polynomial (monic, in the variable X), or
  /// "prime field" when f = 1.
  std::string modulus_string() const;
  std::string format(Elem x) const;

  /// Field operations on base-q digits (F_q codes).
  Elem field_add(Elem a, Elem b) const;
  Elem field_mul(Elem a, Elem b) const;
  int field_trace(Elem a) const;

  bool operator==(const Ring& other) const;
  bool operator!=(const Ring& other) const { return !(*this == other); }

  struct Impl;

 private:
  explicit Ring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// An element bundled with its ring.
struct RingElem {
  Ring ring;
  Elem code = 0;

  friend RingElem operator+(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a, const RingElem& b);
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  friend bool operator==(const RingElem& a, const RingElem& b) {
    return a.ring == b.ring && a.code == b.code;
  }
};

/// Project onto o_i as an element of Ring::truncated(i).
RingElem project(const RingElem& x, int i);

/// phi_a(x) = phi(a x) for a unit a.
class AdditiveChar {
 public:
  AdditiveChar(Ring ring, Elem twist);
  const Ring& ring() const { return ring_; }
  Elem twist() const { return twist_; }
  int modulus() const { return ring_.char_modulus(); }
  int exponent(Elem x) const { return ring_.additive_exponent(ring_.mul(twist_, x)); }
  /// Nontrivial on w^(l-1) o_l.
  bool is_primitive() const;

 private:
  Ring ring_;
  Elem twist_;
};

/// Throws InvalidArgument when a is not a unit.
AdditiveChar primitive_char(const Ring& ring, Elem a);

}  // namespace ggr
