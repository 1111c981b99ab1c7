#pragma once

// Regular (cyclic) matrices over o_r, a-regular normal forms, and the type
// invariants of regular classes.

#include <cstdint>
#include <string>
#include <vector>

#include "ggr/group_tables.hpp"
#include "ggr/matrix.hpp"
#include "ggr/poly.hpp"

namespace ggr {

/// Regularity tested on the residue matrix: char poly = min poly over F_q.
bool is_regular(const Matrix& x);

/// Exhaustive search for v in o_r^n with v, xv, ..., x^(n-1)v a basis.
bool has_cyclic_vector(const Matrix& x);
/// Every projection x mod w^i (1 <= i <= r) is regular: char = min at i = 1,
/// cyclic vector for i >= 2.
bool all_projections_regular(const Matrix& x);
/// The matrix-algebra centralizer of x is commutative (its module generators
/// commute pairwise).
bool centralizer_is_abelian(const Matrix& x);
/// |C_{M_n(o_r)}(x)| = |o_r[x]|; since o_r[x] lies in the centralizer this
/// is equality of the two algebras.
bool centralizer_equals_polynomial_algebra(const Matrix& x);

/// Subdiagonal (a, 1, ..., 1), last column coeffs (x_1, ..., x_n), zero
/// elsewhere. Throws InvalidArgument for a non-unit a or a wrong length.
Matrix a_regular(const Ring& ring, Elem a, const std::vector<Elem>& coeffs);

/// Throws Unsupported for SL when p divides 2n.
void require_sl_tame(const GroupSpec& spec);

/// The a-regular representatives of g(o_r): all coefficient tuples for gl,
/// those with x_n = 0 (trace zero) for sl. Count q^(n r) resp. q^((n-1) r).
std::vector<Matrix> a_regular_representatives(Family family, const Ring& ring, int n, Elem a);

/// q^(d r) with d = n (gl) or n - 1 (sl); SL requires p not dividing 2n.
std::uint64_t count_a_regular_classes(Family family, int n, const Ring& ring);

struct TypeEntry {
  int degree = 0;
  int exponent = 0;
  int count = 0;
  friend bool operator==(const TypeEntry&, const TypeEntry&) = default;
  friend auto operator<=>(const TypeEntry&, const TypeEntry&) = default;
};

/// tau = (tau_{d,e}), stored as sorted nonzero entries.
class TypeMatrix {
 public:
  TypeMatrix() = default;
  /// Validates that sum d e tau_{d,e} = n.
  TypeMatrix(int n, std::vector<TypeEntry> entries);
  int n() const { return n_; }
  const std::vector<TypeEntry>& entries() const { return entries_; }
  int at(int d, int e) const;
  /// "tau[1,2]=1" style, entries joined by ","
  std::string to_string() const;
  friend bool operator==(const TypeMatrix&, const TypeMatrix&) = default;
  friend bool operator<(const TypeMatrix& a, const TypeMatrix& b) { return a.entries_ < b.entries_; }

 private:
  int n_ = 0;
  std::vector<TypeEntry> entries_;
};

/// Type of a regular residue matrix from the factorization of its char poly.
/// Throws InvalidArgument for non-regular input.
TypeMatrix type_of(const Matrix& x_bar);

/// All n-typical matrices.
std::vector<TypeMatrix> all_types(int n);

/// gcd of the occurring exponents together with r.
int iota(const TypeMatrix& tau, int r);

/// prod (q^(d e) - q^(d (e - 1)))^tau_{d,e} = |C_{GL_n(F_q)}(x)| for x of type tau.
std::uint64_t centralizer_order_residue(const TypeMatrix& tau, int q);

/// A regular matrix of type tau over F_q: block-diagonal companion matrices
/// of f^e for the first tau_{d,e} monic irreducibles f of degree d (in sieve
/// order, skipping ones already used). Throws InvalidArgument when F_q has
/// too few irreducibles of some degree.
Matrix representative_of_type(const TypeMatrix& tau, const Ring& field);

/// For n = 2: "cuspidal", "split non-semisimple" or "split semisimple";
/// otherwise to_string().
std::string type_label(const TypeMatrix& tau);

}  // namespace ggr
