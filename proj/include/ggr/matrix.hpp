#pragma once

// Dense matrices over a local ring o_r (or its residue field).

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ggr/local_ring.hpp"

namespace ggr {

class Matrix {
 public:
  Matrix(Ring ring, int rows, int cols);
  Matrix(Ring ring, int n) : Matrix(std::move(ring), n, n) {}

  static Matrix identity(const Ring& ring, int n);
  /// Entries given as integers and reduced with Ring::from_int (so for
  /// equal characteristic they must already be codes or small integers).
  static Matrix from_rows(const Ring& ring, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static Matrix from_codes(const Ring& ring, int rows, int cols, std::vector<Elem> codes);
  /// Companion-style matrix: ones on the subdiagonal, last column -c_0..-c_{n-1}
  /// for the monic polynomial with low-to-high coefficients c (length n + 1).
  static Matrix companion(const Ring& ring, const std::vector<Elem>& monic);

  const Ring& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Elem at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, Elem v) { e_[static_cast<std::size_t>(i) * cols_ + j] = v; }
  const std::vector<Elem>& codes() const { return e_; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(Elem s) const;
  Matrix transpose() const;
  Matrix pow(std::uint64_t e) const;
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  /// Entrywise image in M(o_i).
  Matrix project(int i) const;
  /// Some entrywise lift to a longer ring of the same family (codes are kept).
  Matrix lift_to(const Ring& longer) const;

  Elem trace() const;
  Elem det() const;
  bool is_invertible() const { return ring_.is_unit(det()); }
  /// Throws InvalidArgument when the determinant is not a unit.
  Matrix inverse() const;
  bool is_zero() const;
  bool is_scalar() const;

  std::string to_string() const;

 private:
  Ring ring_;
  int rows_, cols_;
  std::vector<Elem> e_;
};

/// Coefficients of det(tI - M), highest degree first, computed division-free
/// (Berkowitz), so valid over any o_r. Length n + 1, leading entry 1.
std::vector<Elem> berkowitz(const Matrix& m);

/// det(tI - M) with coefficients from t^0 upwards (monic).
std::vector<Elem> char_poly_coeffs(const Matrix& m);

}  // namespace ggr
