#include "ggr/linsys.hpp"

#include <cmath>
#include <limits>

#include "ggr/errors.hpp"

namespace ggr {

SolutionSpace solve_homogeneous(const Matrix& input) {
  const Ring& R = input.ring();
  const int ell = R.ell();
  const int rows = input.rows(), cols = input.cols();
  Matrix a = input;
  Matrix q = Matrix::identity(R, cols);  // y = Q z

  auto swap_rows = [&](int r1, int r2) {
    for (int j = 0; j < cols; ++j) {
      Elem t = a.at(r1, j);
      a.set(r1, j, a.at(r2, j));
      a.set(r2, j, t);
    }
  };
  auto swap_cols = [&](Matrix& m, int c1, int c2) {
    for (int i = 0; i < m.rows(); ++i) {
      Elem t = m.at(i, c1);
      m.set(i, c1, m.at(i, c2));
      m.set(i, c2, t);
    }
  };

  SolutionSpace out;
  std::vector<int> vals;
  const int steps = std::min(rows, cols);
  int k = 0;
  for (; k < steps; ++k) {
    int best = ell, bi = -1, bj = -1;
    for (int i = k; i < rows && best > 0; ++i)
      for (int j = k; j < cols; ++j) {
        int v = R.valuation(a.at(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi < 0) break;  // remaining block is zero
    swap_rows(k, bi);
    swap_cols(a, k, bj);
    swap_cols(q, k, bj);
    const Elem piv = a.at(k, k);
    // piv = u w^v; scale the row so the pivot becomes w^v exactly.
    const Elem u = R.divide_uniformizer_pow(piv, best);
    const Elem uinv = R.inv(u);
    for (int j = k; j < cols; ++j) a.set(k, j, R.mul(a.at(k, j), uinv));
    // Clear column k below and row k to the right; every entry has valuation >= best.
    for (int i = k + 1; i < rows; ++i) {
      const Elem e = a.at(i, k);
      if (e == 0) continue;
      const Elem f = R.divide_uniformizer_pow(e, best);
      for (int j = k; j < cols; ++j) a.set(i, j, R.sub(a.at(i, j), R.mul(f, a.at(k, j))));
    }
    for (int j = k + 1; j < cols; ++j) {
      const Elem e = a.at(k, j);
      if (e == 0) continue;
      const Elem f = R.divide_uniformizer_pow(e, best);
      // column_j -= f * column_k, in both A and Q
      for (int i = 0; i < rows; ++i) a.set(i, j, R.sub(a.at(i, j), R.mul(f, a.at(i, k))));
      for (int i = 0; i < cols; ++i) q.set(i, j, R.sub(q.at(i, j), R.mul(f, q.at(i, k))));
    }
    vals.push_back(best);
  }
  for (int j = static_cast<int>(vals.size()); j < cols; ++j) vals.push_back(ell);

  // z_t ranges over w^(l - v_t) o_l: q^(v_t) choices.
  for (int t = 0; t < cols; ++t) {
    const int v = vals[t];
    out.log_q_count += v;
    if (v == 0) continue;
    const Elem scale = R.uniformizer_pow(ell - v);
    std::vector<Elem> g(cols);
    for (int i = 0; i < cols; ++i) g[i] = R.mul(q.at(i, t), scale);
    out.generators.push_back(std::move(g));
  }
  out.invariants = vals;
  const long double bits = out.log_q_count * std::log2(static_cast<long double>(R.q()));
  if (bits >= 63) throw CapExceeded("solve_homogeneous: solution count does not fit in 64 bits");
  out.count = 1;
  for (int i = 0; i < out.log_q_count; ++i) out.count *= static_cast<std::uint64_t>(R.q());
  return out;
}

std::uint64_t image_size(const Matrix& a) {
  const auto sol = solve_homogeneous(a);
  const int log_total = a.ring().ell() * a.cols() - sol.log_q_count;
  std::uint64_t r = 1;
  for (int i = 0; i < log_total; ++i) r *= static_cast<std::uint64_t>(a.ring().q());
  return r;
}

Matrix commutator_map(const Matrix& x) {
  const Ring& R = x.ring();
  const int n = x.rows();
  Matrix m(R, n * n, n * n);
  // (xy - yx)_{ij} = sum_k x_ik y_kj - y_ik x_kj
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int row = i * n + j;
      for (int k = 0; k < n; ++k) {
        m.set(row, k * n + j, R.add(m.at(row, k * n + j), x.at(i, k)));
        m.set(row, i * n + k, R.sub(m.at(row, i * n + k), x.at(k, j)));
      }
    }
  return m;
}

Matrix commutator_map_trace_zero(const Matrix& x) {
  const Ring& R = x.ring();
  const int n = x.rows();
  const Matrix full = commutator_map(x);
  // y_nn = -(y_11 + ... + y_(n-1)(n-1)); drop the column of y_nn.
  const int last = n * n - 1;
  Matrix m(R, n * n, last);
  for (int r = 0; r < n * n; ++r)
    for (int c = 0; c < last; ++c) {
      Elem v = full.at(r, c);
      if (c % (n + 1) == 0) v = R.sub(v, full.at(r, last));
      m.set(r, c, v);
    }
  return m;
}

}  // namespace ggr
