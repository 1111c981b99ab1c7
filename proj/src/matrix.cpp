#include "ggr/matrix.hpp"

#include <sstream>

#include "ggr/errors.hpp"

namespace ggr {

Matrix::Matrix(Ring ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw InvalidArgument("matrix: negative dimension");
}

Matrix Matrix::identity(const Ring& ring, int n) {
  Matrix m(ring, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(const Ring& ring, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  Matrix m(ring, r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw InvalidArgument("matrix: ragged rows");
    int j = 0;
    for (auto v : row) m.set(i, j++, ring.from_int(v));
    ++i;
  }
  return m;
}

Matrix Matrix::from_codes(const Ring& ring, int rows, int cols, std::vector<Elem> codes) {
  if (codes.size() != static_cast<std::size_t>(rows) * cols) throw InvalidArgument("matrix: wrong code count");
  Matrix m(ring, rows, cols);
  for (auto c : codes)
    if (c >= ring.size()) throw InvalidArgument("matrix: code out of range");
  m.e_ = std::move(codes);
  return m;
}

Matrix Matrix::companion(const Ring& ring, const std::vector<Elem>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  if (n < 1 || monic.back() != 1) throw InvalidArgument("matrix: companion needs a monic polynomial of degree >= 1");
  Matrix m(ring, n);
  for (int i = 1; i < n; ++i) m.set(i, i - 1, 1);
  for (int i = 0; i < n; ++i) m.set(i, n - 1, ring.neg(monic[i]));
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || ring_ != o.ring_) throw InvalidArgument("matrix: shape mismatch in +");
  Matrix r(ring_, rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = ring_.add(e_[k], o.e_[k]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || ring_ != o.ring_) throw InvalidArgument("matrix: shape mismatch in -");
  Matrix r(ring_, rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = ring_.sub(e_[k], o.e_[k]);
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || ring_ != o.ring_) throw InvalidArgument("matrix: shape mismatch in *");
  Matrix r(ring_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      Elem acc = 0;
      for (int k = 0; k < cols_; ++k) acc = ring_.add(acc, ring_.mul(at(i, k), o.at(k, j)));
      r.set(i, j, acc);
    }
  return r;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix r(*this);
  for (auto& v : r.e_) v = ring_.mul(v, s);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

Matrix Matrix::pow(std::uint64_t e) const {
  if (!is_square()) throw InvalidArgument("matrix: pow of non-square matrix");
  Matrix result = identity(ring_, rows_), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Matrix Matrix::project(int i) const {
  Ring small = ring_.truncated(i);
  Matrix r(small, rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = ring_.project(e_[k], i);
  return r;
}

Matrix Matrix::lift_to(const Ring& longer) const {
  if (longer.kind() != ring_.kind() || longer.q() != ring_.q() || longer.ell() < ring_.ell())
    throw InvalidArgument("matrix: lift target is not a longer ring of the same family");
  Matrix r(longer, rows_, cols_);
  r.e_ = e_;
  return r;
}

Elem Matrix::trace() const {
  if (!is_square()) throw InvalidArgument("matrix: trace of non-square matrix");
  Elem t = 0;
  for (int i = 0; i < rows_; ++i) t = ring_.add(t, at(i, i));
  return t;
}

Elem Matrix::det() const {
  if (!is_square()) throw InvalidArgument("matrix: det of non-square matrix");
  const int n = rows_;
  if (n == 0) return 1;
  if (n == 1) return at(0, 0);
  if (n == 2) return ring_.sub(ring_.mul(at(0, 0), at(1, 1)), ring_.mul(at(0, 1), at(1, 0)));
  auto c = berkowitz(*this);
  return n % 2 == 0 ? c[n] : ring_.neg(c[n]);
}

Matrix Matrix::inverse() const {
  if (!is_square()) throw InvalidArgument("matrix: inverse of non-square matrix");
  const int n = rows_;
  Matrix a(*this), inv = identity(ring_, n);
  auto swap_rows = [](Matrix& m, int r1, int r2) {
    for (int j = 0; j < m.cols_; ++j) std::swap(m.e_[r1 * m.cols_ + j], m.e_[r2 * m.cols_ + j]);
  };
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (ring_.is_unit(a.at(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) throw InvalidArgument("matrix: not invertible (determinant is not a unit)");
    swap_rows(a, k, piv);
    swap_rows(inv, k, piv);
    const Elem s = ring_.inv(a.at(k, k));
    for (int j = 0; j < n; ++j) {
      a.set(k, j, ring_.mul(a.at(k, j), s));
      inv.set(k, j, ring_.mul(inv.at(k, j), s));
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const Elem f = a.at(i, k);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        a.set(i, j, ring_.sub(a.at(i, j), ring_.mul(f, a.at(k, j))));
        inv.set(i, j, ring_.sub(inv.at(i, j), ring_.mul(f, inv.at(k, j))));
      }
    }
  }
  return inv;
}

bool Matrix::is_zero() const {
  for (auto v : e_)
    if (v) return false;
  return true;
}

bool Matrix::is_scalar() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if ((i == j && at(i, j) != at(0, 0)) || (i != j && at(i, j) != 0)) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << ring_.format(at(i, j));
  }
  os << "]";
  return os.str();
}

std::vector<Elem> berkowitz(const Matrix& m) {
  if (!m.is_square()) throw InvalidArgument("berkowitz: non-square matrix");
  const Ring& R = m.ring();
  const int n = m.rows();
  std::vector<Elem> c = {1};
  if (n == 0) return c;
  c.push_back(R.neg(m.at(0, 0)));
  for (int r = 1; r < n; ++r) {
    // Leading block A = m[0..r-1][0..r-1], row R_ = m[r][0..r-1], column S = m[0..r-1][r].
    std::vector<Elem> v(r + 2);
    v[0] = 1;
    v[1] = R.neg(m.at(r, r));
    std::vector<Elem> s(r);
    for (int i = 0; i < r; ++i) s[i] = m.at(i, r);
    for (int k = 0; k < r; ++k) {
      Elem dot = 0;
      for (int i = 0; i < r; ++i) dot = R.add(dot, R.mul(m.at(r, i), s[i]));
      v[k + 2] = R.neg(dot);
      std::vector<Elem> next(r, 0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) next[i] = R.add(next[i], R.mul(m.at(i, j), s[j]));
      s = std::move(next);
    }
    std::vector<Elem> nc(r + 2, 0);
    for (int i = 0; i < r + 2; ++i)
      for (int j = 0; j <= i && j < static_cast<int>(c.size()); ++j) nc[i] = R.add(nc[i], R.mul(v[i - j], c[j]));
    c = std::move(nc);
  }
  return c;
}

std::vector<Elem> char_poly_coeffs(const Matrix& m) {
  auto c = berkowitz(m);
  return {c.rbegin(), c.rend()};
}

}  // namespace ggr
