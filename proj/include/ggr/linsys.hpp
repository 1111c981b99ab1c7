#pragma once

// Homogeneous linear systems A y = 0 over o_l, solved by a Smith-style
// diagonalization (row and column operations, pivoting on an entry of least
// valuation). Over a local principal ideal ring every matrix reduces to
// diag(w^v_1, ..., w^v_r, 0, ...), so the solution module is read off
// directly.

#include <cstdint>
#include <vector>

#include "ggr/matrix.hpp"

namespace ggr {

struct SolutionSpace {
  /// log_q of the number of solutions.
  int log_q_count = 0;
  /// Exact count (q^log_q_count); throws CapExceeded from solve_homogeneous
  /// if it does not fit in 64 bits.
  std::uint64_t count = 1;
  /// Generators of the solution module as vectors of length cols(A).
  std::vector<std::vector<Elem>> generators;
  /// Valuations of the diagonal entries after reduction (l for zero pivots
  /// and free columns).
  std::vector<int> invariants;
};

SolutionSpace solve_homogeneous(const Matrix& a);

/// |{A y : y in o_l^cols}| = q^(l cols) / |ker A|.
std::uint64_t image_size(const Matrix& a);

/// The linear map y -> xy - yx on M_n(o_r), as an n^2 x n^2 matrix acting on
/// row-major vec(y). Its kernel is the matrix-algebra centralizer of x.
Matrix commutator_map(const Matrix& x);

/// Restriction of commutator_map to trace-zero y, in coordinates where the
/// last diagonal entry is eliminated (n^2 - 1 unknowns).
Matrix commutator_map_trace_zero(const Matrix& x);

}  // namespace ggr
