#include "ggr/regular_elements.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ggr/errors.hpp"
#include "ggr/linsys.hpp"

namespace ggr {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Columns v, xv, ..., x^(n-1) v.
Matrix krylov(const Matrix& x, const std::vector<Elem>& v) {
  const Ring& R = x.ring();
  const int n = x.rows();
  Matrix k(R, n);
  std::vector<Elem> cur = v;
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) k.set(i, c, cur[i]);
    std::vector<Elem> next(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) next[i] = R.add(next[i], R.mul(x.at(i, j), cur[j]));
    cur = std::move(next);
  }
  return k;
}

Matrix from_vec(const Ring& R, int n, const std::vector<Elem>& v) {
  return Matrix::from_codes(R, n, n, v);
}

}  // namespace

bool is_regular(const Matrix& x) {
  if (!x.is_square()) throw InvalidArgument("is_regular: non-square matrix");
  const Matrix xb = x.project(1);
  return min_poly(xb).degree() == xb.rows();
}

bool has_cyclic_vector(const Matrix& x) {
  const Ring& R = x.ring();
  const int n = x.rows();
  const std::uint64_t total = upow(R.size(), n);
  std::vector<Elem> v(n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      v[i] = static_cast<Elem>(t % R.size());
      t /= R.size();
    }
    // A cyclic vector must be nonzero mod w; skip the rest cheaply.
    bool unit_entry = false;
    for (auto e : v) unit_entry |= R.is_unit(e);
    if (!unit_entry) continue;
    if (R.is_unit(krylov(x, v).det())) return true;
  }
  return false;
}

bool all_projections_regular(const Matrix& x) {
  for (int i = 1; i <= x.ring().ell(); ++i) {
    const Matrix xi = x.project(i);
    const bool ok = i == 1 ? min_poly(xi) == char_poly(xi) : has_cyclic_vector(xi);
    if (!ok) return false;
  }
  return true;
}

bool centralizer_is_abelian(const Matrix& x) {
  const Ring& R = x.ring();
  const int n = x.rows();
  const auto sol = solve_homogeneous(commutator_map(x));
  std::vector<Matrix> gens;
  for (const auto& g : sol.generators) gens.push_back(from_vec(R, n, g));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

bool centralizer_equals_polynomial_algebra(const Matrix& x) {
  const Ring& R = x.ring();
  const int n = x.rows();
  // Columns vec(I), vec(x), ..., vec(x^(n-1)); the image is o_r[x].
  Matrix span(R, n * n, n);
  Matrix p = Matrix::identity(R, n);
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < n * n; ++k) span.set(k, c, p.codes()[k]);
    p = p * x;
  }
  return image_size(span) == solve_homogeneous(commutator_map(x)).count;
}

Matrix a_regular(const Ring& ring, Elem a, const std::vector<Elem>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  if (n < 1) throw InvalidArgument("a_regular: need at least one coefficient");
  if (!ring.is_unit(a)) throw InvalidArgument("a_regular: a = " + ring.format(a) + " is not a unit");
  Matrix x(ring, n);
  for (int i = 1; i < n; ++i) x.set(i, i - 1, i == 1 ? a : 1);
  for (int i = 0; i < n; ++i) x.set(i, n - 1, coeffs[i]);
  return x;
}

void require_sl_tame(const GroupSpec& spec) {
  if (spec.family == Family::SL && (spec.ring.p() == 2 || spec.n % spec.ring.p() == 0))
    throw Unsupported("SL" + std::to_string(spec.n) + " over " + spec.ring.to_string() +
                      ": regular-class predictions need p not dividing 2n");
}

std::vector<Matrix> a_regular_representatives(Family family, const Ring& ring, int n, Elem a) {
  const int free = family == Family::GL ? n : n - 1;
  const std::uint64_t total = upow(ring.size(), free);
  std::vector<Matrix> out;
  out.reserve(total);
  std::vector<Elem> c(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < free; ++i) {
      c[i] = static_cast<Elem>(t % ring.size());
      t /= ring.size();
    }
    out.push_back(a_regular(ring, a, c));
  }
  return out;
}

std::uint64_t count_a_regular_classes(Family family, int n, const Ring& ring) {
  require_sl_tame(GroupSpec(family, n, ring));
  return upow(ring.q(), (family == Family::GL ? n : n - 1) * ring.ell());
}

TypeMatrix::TypeMatrix(int n, std::vector<TypeEntry> entries) : n_(n) {
  std::map<std::pair<int, int>, int> merged;
  for (const auto& e : entries) {
    if (e.degree < 1 || e.exponent < 1 || e.count < 0) throw InvalidArgument("type matrix: bad entry");
    if (e.count) merged[{e.degree, e.exponent}] += e.count;
  }
  int total = 0;
  for (const auto& [de, c] : merged) {
    entries_.push_back({de.first, de.second, c});
    total += de.first * de.second * c;
  }
  if (total != n) throw InvalidArgument("type matrix: not " + std::to_string(n) + "-typical");
}

int TypeMatrix::at(int d, int e) const {
  for (const auto& t : entries_)
    if (t.degree == d && t.exponent == e) return t.count;
  return 0;
}

std::string TypeMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    os << (i ? "," : "") << "tau[" << entries_[i].degree << "," << entries_[i].exponent << "]=" << entries_[i].count;
  return os.str();
}

TypeMatrix type_of(const Matrix& x_bar) {
  if (!x_bar.ring().is_field()) throw InvalidArgument("type_of: expects a residue-field matrix");
  if (!is_regular(x_bar)) throw InvalidArgument("type_of: " + x_bar.to_string() + " is not regular");
  std::vector<TypeEntry> entries;
  for (const auto& [f, e] : factor_poly(char_poly(x_bar))) entries.push_back({f.degree(), e, 1});
  return TypeMatrix(x_bar.rows(), std::move(entries));
}

std::vector<TypeMatrix> all_types(int n) {
  std::vector<std::pair<int, int>> cells;
  for (int d = 1; d <= n; ++d)
    for (int e = 1; d * e <= n; ++e) cells.emplace_back(d, e);
  std::vector<TypeMatrix> out;
  std::vector<TypeEntry> cur;
  auto rec = [&](auto&& self, std::size_t idx, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(n, cur);
      return;
    }
    if (idx == cells.size()) return;
    const auto [d, e] = cells[idx];
    for (int c = 0; c * d * e <= remaining; ++c) {
      if (c) cur.push_back({d, e, c});
      self(self, idx + 1, remaining - c * d * e);
      if (c) cur.pop_back();
    }
  };
  rec(rec, 0, n);
  std::sort(out.begin(), out.end());
  return out;
}

int iota(const TypeMatrix& tau, int r) {
  int g = r;
  for (const auto& t : tau.entries()) g = std::gcd(g, t.exponent);
  return g;
}

std::uint64_t centralizer_order_residue(const TypeMatrix& tau, int q) {
  std::uint64_t r = 1;
  for (const auto& t : tau.entries()) {
    const std::uint64_t units = upow(q, t.degree * t.exponent) - upow(q, t.degree * (t.exponent - 1));
    for (int c = 0; c < t.count; ++c) r *= units;
  }
  return r;
}

Matrix representative_of_type(const TypeMatrix& tau, const Ring& field) {
  const auto& sieve = sieve_for(field);
  std::map<int, std::size_t> used;
  Matrix x(field, tau.n());
  int offset = 0;
  for (const auto& t : tau.entries()) {
    const auto& irr = sieve.of_degree(t.degree);
    for (int c = 0; c < t.count; ++c) {
      std::size_t& k = used[t.degree];
      if (k >= irr.size())
        throw InvalidArgument("representative_of_type: too few irreducibles of degree " + std::to_string(t.degree));
      Poly f = irr[k++];
      Poly g = Poly::monomial(field, 0);
      for (int e = 0; e < t.exponent; ++e) g = g * f;
      const Matrix block = Matrix::companion(field, g.coeffs());
      for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j) x.set(offset + i, offset + j, block.at(i, j));
      offset += block.rows();
    }
  }
  return x;
}

std::string type_label(const TypeMatrix& tau) {
  if (tau.n() == 2) {
    if (tau.at(2, 1) == 1) return "cuspidal";
    if (tau.at(1, 2) == 1) return "split non-semisimple";
    if (tau.at(1, 1) == 2) return "split semisimple";
  }
  return tau.to_string();
}

}  // namespace ggr
