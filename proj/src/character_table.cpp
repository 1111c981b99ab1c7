#include "ggr/character_table.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include <json.hpp>

#include "ggr/cache.hpp"
#include "ggr/errors.hpp"
#include "ggr/whittaker.hpp"

namespace ggr {

namespace {

using i64 = std::int64_t;

i64 mulmod(i64 a, i64 b, i64 r) { return static_cast<i64>(static_cast<__int128>(a) * b % r); }

i64 powmod(i64 b, i64 e, i64 r) {
  i64 x = 1;
  b %= r;
  if (b < 0) b += r;
  while (e > 0) {
    if (e & 1) x = mulmod(x, b, r);
    b = mulmod(b, b, r);
    e >>= 1;
  }
  return x;
}

i64 invmod(i64 a, i64 r) {
  a %= r;
  if (a < 0) a += r;
  if (a == 0) throw InternalFault("character table: inverting 0 mod " + std::to_string(r));
  return powmod(a, r - 2, r);
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> f;
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      f.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) f.push_back(n);
  return f;
}

i64 primitive_root(i64 r) {
  const auto fs = prime_factors(r - 1);
  for (i64 g = 2; g < r; ++g) {
    bool ok = true;
    for (auto f : fs) ok = ok && powmod(g, (r - 1) / f, r) != 1;
    if (ok) return g;
  }
  throw InternalFault("no primitive root mod " + std::to_string(r));
}

using Vec = std::vector<i64>;
using Mat = std::vector<Vec>;  // row-major

// Row-reduce a set of vectors in place into reduced echelon form; returns pivots.
std::vector<int> rref(Mat& rows, i64 r) {
  std::vector<int> pivots;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  std::size_t rank = 0;
  for (int c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const i64 s = invmod(rows[rank][c], r);
    for (auto& v : rows[rank]) v = mulmod(v, s, r);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const i64 f = rows[i][c];
      for (int j = 0; j < cols; ++j) rows[i][j] = ((rows[i][j] - mulmod(f, rows[rank][j], r)) % r + r) % r;
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

// Null space of a square matrix a (d x d) over F_r, as vectors of length d.
Mat kernel(Mat a, i64 r) {
  const int d = static_cast<int>(a.size());
  auto pivots = rref(a, r);
  std::vector<bool> is_piv(d, false);
  for (int p : pivots) is_piv[p] = true;
  Mat out;
  for (int f = 0; f < d; ++f) {
    if (is_piv[f]) continue;
    Vec v(d, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (r - a[i][f]) % r;
    out.push_back(std::move(v));
  }
  return out;
}

// Characteristic polynomial (low-to-high, monic) via Hessenberg reduction.
Vec charpoly_mod(Mat h, i64 r) {
  const int n = static_cast<int>(h.size());
  for (int m = 1; m + 1 < n; ++m) {
    int piv = -1;
    for (int i = m; i < n; ++i)
      if (h[i][m - 1] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      std::swap(h[piv], h[m]);
      for (int i = 0; i < n; ++i) std::swap(h[i][piv], h[i][m]);
    }
    const i64 inv = invmod(h[m][m - 1], r);
    for (int i = m + 1; i < n; ++i) {
      if (h[i][m - 1] == 0) continue;
      const i64 u = mulmod(h[i][m - 1], inv, r);
      for (int j = 0; j < n; ++j) h[i][j] = ((h[i][j] - mulmod(u, h[m][j], r)) % r + r) % r;
      for (int j = 0; j < n; ++j) h[j][m] = (h[j][m] + mulmod(u, h[j][i], r)) % r;
    }
  }
  // p_k = char poly of leading k x k block.
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (int k = 1; k <= n; ++k) {
    Vec next(k + 1, 0);
    // (t - h_kk) p_(k-1)
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      next[i + 1] = (next[i + 1] + p[k - 1][i]) % r;
      next[i] = ((next[i] - mulmod(h[k - 1][k - 1], p[k - 1][i], r)) % r + r) % r;
    }
    i64 prod = 1;
    for (int i = k - 1; i >= 1; --i) {
      prod = mulmod(prod, h[i][i - 1], r);
      if (prod == 0) break;
      const i64 c = mulmod(h[i - 1][k - 1], prod, r);
      for (std::size_t j = 0; j < p[i - 1].size(); ++j) next[j] = ((next[j] - mulmod(c, p[i - 1][j], r)) % r + r) % r;
    }
    p[k] = std::move(next);
  }
  return p[n];
}

std::vector<i64> roots_mod(const Vec& poly, i64 r) {
  std::vector<i64> out;
  const int d = static_cast<int>(poly.size()) - 1;
  for (i64 x = 0; x < r; ++x) {
    i64 acc = 0;
    for (int i = d; i >= 0; --i) acc = (mulmod(acc, x, r) + poly[i]) % r;
    if (acc == 0) out.push_back(x);
  }
  return out;
}

bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

int ClassData::power_class(int c, std::int64_t k) const {
  const int o = orders[c];
  k %= o;
  if (k < 0) k += o;
  ElemId result = 0, base = reps[c];
  while (k) {
    if (k & 1) result = table->mul(result, base);
    base = table->mul(base, base);
    k >>= 1;
  }
  return static_cast<int>(class_of[result]);
}

ClassData conjugacy_classes(std::shared_ptr<const GroupTable> table) {
  const GroupTable& t = *table;
  const std::size_t n = t.size();
  constexpr std::uint32_t kNone = 0xffffffffu;
  ClassData cd;
  cd.table = table;
  cd.class_of.assign(n, kNone);

  const bool all_conjugators = n < 10000;
  std::vector<ElemId> gens;
  if (!all_conjugators) {
    // Greedy generating set, candidates in a fixed pseudo-random order.
    std::vector<ElemId> order(n);
    std::iota(order.begin(), order.end(), ElemId{0});
    std::mt19937_64 rng(0x5eed);
    std::shuffle(order.begin() + 1, order.end(), rng);
    std::vector<bool> in(n, false);
    in[0] = true;
    std::size_t size = 1;
    for (ElemId cand : order) {
      if (size == n) break;
      if (in[cand]) continue;
      gens.push_back(cand);
      std::fill(in.begin(), in.end(), false);
      std::deque<ElemId> queue{0};
      in[0] = true;
      size = 1;
      while (!queue.empty()) {
        const ElemId h = queue.front();
        queue.pop_front();
        for (ElemId s : gens) {
          const ElemId hs = t.mul(h, s);
          if (!in[hs]) {
            in[hs] = true;
            ++size;
            queue.push_back(hs);
          }
        }
      }
    }
  }

  for (ElemId x = 0; x < n; ++x) {
    if (cd.class_of[x] != kNone) continue;
    const auto c = static_cast<std::uint32_t>(cd.reps.size());
    cd.reps.push_back(x);
    std::vector<ElemId> mem{x};
    cd.class_of[x] = c;
    if (all_conjugators) {
      for (ElemId g = 0; g < n; ++g) {
        const ElemId y = t.conjugate(g, x);
        if (cd.class_of[y] == kNone) {
          cd.class_of[y] = c;
          mem.push_back(y);
        }
      }
    } else {
      for (std::size_t head = 0; head < mem.size(); ++head)
        for (ElemId s : gens) {
          const ElemId y = t.conjugate(s, mem[head]);
          if (cd.class_of[y] == kNone) {
            cd.class_of[y] = c;
            mem.push_back(y);
          }
        }
    }
    std::sort(mem.begin(), mem.end());
    cd.sizes.push_back(mem.size());
    cd.members.push_back(std::move(mem));
  }

  cd.exponent = 1;
  for (std::size_t c = 0; c < cd.reps.size(); ++c) {
    cd.inverse_class.push_back(static_cast<int>(cd.class_of[t.inverse(cd.reps[c])]));
    int o = 1;
    for (ElemId y = cd.reps[c]; y != 0; y = t.mul(y, cd.reps[c])) ++o;
    cd.orders.push_back(o);
    cd.exponent = std::lcm(cd.exponent, o);
  }
  return cd;
}

CharTable character_table(const ClassData& cd, const CharTableOptions& options) {
  const GroupTable& t = *cd.table;
  const i64 order = static_cast<i64>(t.size());
  if (static_cast<std::uint64_t>(order) > options.cap)
    throw CapExceeded("character table: |G| = " + std::to_string(order) + " exceeds cap " + std::to_string(options.cap));
  const int K = static_cast<int>(cd.count());
  const int e = cd.exponent;

  // Smallest prime r = 1 mod e with r > 2 sqrt|G|.
  const auto bound = static_cast<i64>(2 * std::sqrt(static_cast<long double>(order))) + 1;
  i64 r = 0;
  for (i64 cand = e + 1; cand <= static_cast<i64>(options.prime_bound); cand += e)
    if (cand > bound && is_prime_i64(cand)) {
      r = cand;
      break;
    }
  if (r == 0) throw CapExceeded("character table: no prime = 1 mod " + std::to_string(e) + " below the search bound");

  // Simultaneous eigenspaces of the class matrices.
  struct Space {
    Mat basis;  // reduced echelon rows
    std::vector<int> pivots;
  };
  std::vector<Space> spaces(1);
  spaces[0].basis.assign(K, Vec(K, 0));
  for (int i = 0; i < K; ++i) {
    spaces[0].basis[i][i] = 1;
    spaces[0].pivots.push_back(i);
  }

  auto class_matrix = [&](int j) {
    // a[k][l] = #{x in C_j : x^-1 g_l in C_k}
    Mat a(K, Vec(K, 0));
    for (int l = 0; l < K; ++l)
      for (ElemId x : cd.members[j]) ++a[cd.class_of[t.mul(t.inverse(x), cd.reps[l])]][l];
    for (auto& row : a)
      for (auto& v : row) v %= r;
    return a;
  };

  for (int j = 1; j < K; ++j) {
    bool done = true;
    for (const auto& s : spaces) done = done && s.basis.size() == 1;
    if (done) break;
    const Mat a = class_matrix(j);
    std::vector<Space> next;
    for (auto& s : spaces) {
      const int d = static_cast<int>(s.basis.size());
      if (d == 1) {
        next.push_back(std::move(s));
        continue;
      }
      // A[p][i] = (a b_i) at pivot p
      Mat img(d, Vec(K, 0));
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < K; ++k) {
          i64 acc = 0;
          for (int l = 0; l < K; ++l)
            if (a[k][l] && s.basis[i][l]) acc = (acc + mulmod(a[k][l], s.basis[i][l], r)) % r;
          img[i][k] = acc;
        }
      Mat A(d, Vec(d, 0));
      for (int p = 0; p < d; ++p)
        for (int i = 0; i < d; ++i) A[p][i] = img[i][s.pivots[p]];
      const auto roots = roots_mod(charpoly_mod(A, r), r);
      int total = 0;
      for (i64 lambda : roots) {
        Mat shifted = A;
        for (int i = 0; i < d; ++i) shifted[i][i] = ((shifted[i][i] - lambda) % r + r) % r;
        const Mat ker = kernel(shifted, r);
        total += static_cast<int>(ker.size());
        Space sub;
        for (const auto& c : ker) {
          Vec v(K, 0);
          for (int i = 0; i < d; ++i)
            if (c[i])
              for (int k = 0; k < K; ++k) v[k] = (v[k] + mulmod(c[i], s.basis[i][k], r)) % r;
          sub.basis.push_back(std::move(v));
        }
        sub.pivots = rref(sub.basis, r);
        next.push_back(std::move(sub));
      }
      if (total != d) throw InternalFault("character table: class matrix not diagonalizable mod " + std::to_string(r));
    }
    spaces = std::move(next);
  }
  for (const auto& s : spaces)
    if (s.basis.size() != 1) throw InternalFault("character table: class matrices failed to split the characters");
  if (static_cast<int>(spaces.size()) != K) throw InternalFault("character table: wrong number of characters");

  // Power maps for the lift.
  std::vector<std::vector<int>> powers(K);
  for (int l = 0; l < K; ++l)
    for (int j = 0; j < cd.orders[l]; ++j) powers[l].push_back(cd.power_class(l, j));

  const i64 z = powmod(primitive_root(r), (r - 1) / e, r);  // primitive e-th root mod r
  CharTable ct;
  ct.classes = cd;
  ct.prime = r;
  struct Row {
    i64 degree;
    std::vector<CycloNum> values;
  };
  std::vector<Row> rows;
  for (const auto& s : spaces) {
    Vec w = s.basis[0];
    if (w[0] == 0) throw InternalFault("character table: eigenvector vanishes on the identity class");
    const i64 s0 = invmod(w[0], r);
    for (auto& v : w) v = mulmod(v, s0, r);
    i64 sum = 0;
    for (int l = 0; l < K; ++l)
      sum = (sum + mulmod(mulmod(w[l], w[cd.inverse_class[l]], r), invmod(static_cast<i64>(cd.sizes[l] % r), r), r)) % r;
    const i64 deg_sq = mulmod(order % r, invmod(sum, r), r);
    i64 deg = 0;
    for (i64 d = 1; d * d <= order; ++d)
      if (mulmod(d, d, r) == deg_sq) {
        deg = d;
        break;
      }
    if (deg == 0) throw InternalFault("character table: no degree matches mod " + std::to_string(r));
    Vec chi(K);
    for (int l = 0; l < K; ++l) chi[l] = mulmod(mulmod(w[l], deg, r), invmod(static_cast<i64>(cd.sizes[l] % r), r), r);

    Row row{deg, {}};
    for (int l = 0; l < K; ++l) {
      const int o = cd.orders[l];
      const i64 zo = powmod(z, e / o, r);
      const i64 inv_o = invmod(o, r);
      CycloNum value(e);
      i64 total = 0;
      for (int k = 0; k < o; ++k) {
        // m_k = (1/o) sum_j chi(g^j) zo^(-jk)
        i64 acc = 0;
        const i64 step = powmod(zo, (static_cast<i64>(o) - k) % o, r);
        i64 zz = 1;
        for (int j = 0; j < o; ++j) {
          acc = (acc + mulmod(chi[powers[l][j]], zz, r)) % r;
          zz = mulmod(zz, step, r);
        }
        const i64 mk = mulmod(acc, inv_o, r);
        if (mk > deg) throw InternalFault("character table: eigenvalue multiplicity out of range");
        total += mk;
        if (mk) value.add_root(static_cast<i64>(k) * (e / o), mk);
      }
      if (total != deg) throw InternalFault("character table: multiplicities do not sum to the degree");
      row.values.push_back(std::move(value));
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    for (std::size_t l = 0; l < a.values.size(); ++l)
      if (a.values[l].coeffs() != b.values[l].coeffs()) return a.values[l].coeffs() > b.values[l].coeffs();
    return false;
  });
  for (auto& row : rows) {
    ct.degrees.push_back(row.degree);
    ct.rows.push_back(std::move(row.values));
  }
  return ct;
}

OrthogonalityReport check_orthogonality(const CharTable& ct) {
  OrthogonalityReport rep;
  const auto& cd = ct.classes;
  const int K = static_cast<int>(cd.count());
  const int e = cd.exponent;
  const auto order = static_cast<i64>(cd.table->size());
  std::vector<std::vector<CycloNum>> conj(ct.rows.size());
  for (std::size_t i = 0; i < ct.rows.size(); ++i)
    for (const auto& v : ct.rows[i]) conj[i].push_back(v.conj());

  rep.rows_ok = static_cast<int>(ct.rows.size()) == K;
  for (std::size_t i = 0; i < ct.rows.size() && rep.rows_ok; ++i)
    for (std::size_t j = i; j < ct.rows.size() && rep.rows_ok; ++j) {
      CycloNum acc(e);
      for (int l = 0; l < K; ++l) acc.add_product(ct.rows[i][l], conj[j][l], static_cast<i64>(cd.sizes[l]));
      rep.rows_ok = same_value(acc, CycloNum::from_integer(e, i == j ? order : 0));
    }
  rep.columns_ok = rep.rows_ok || static_cast<int>(ct.rows.size()) == K;
  for (int k = 0; k < K && rep.columns_ok; ++k)
    for (int l = k; l < K && rep.columns_ok; ++l) {
      CycloNum acc(e);
      for (std::size_t i = 0; i < ct.rows.size(); ++i) acc.add_product(ct.rows[i][k], conj[i][l]);
      const i64 expect = k == l ? order / static_cast<i64>(cd.sizes[k]) : 0;
      rep.columns_ok = same_value(acc, CycloNum::from_integer(e, expect));
    }
  i64 sq = 0;
  rep.degrees_divide = true;
  for (std::size_t i = 0; i < ct.degrees.size(); ++i) {
    sq += ct.degrees[i] * ct.degrees[i];
    rep.degrees_divide = rep.degrees_divide && order % ct.degrees[i] == 0;
    // chi(1) must equal the recorded degree.
    rep.degrees_divide = rep.degrees_divide && same_value(ct.rows[i][0], CycloNum::from_integer(e, ct.degrees[i]));
  }
  rep.degree_sum_ok = sq == order;
  return rep;
}

std::vector<CycloNum> unipotent_class_sums(const CharTable& ct, Elem a) {
  const auto& cd = ct.classes;
  const GroupTable& t = *cd.table;
  const NonDegenerateCharacter theta(t.spec(), a);
  const int m = theta.modulus(), e = cd.exponent;
  if (e % m != 0) throw InternalFault("unipotent sums: modulus does not divide the exponent");
  std::vector<CycloNum> sums(cd.count(), CycloNum(e));
  for (const auto& u : unipotent_elements(t.spec(), 0))
    sums[cd.class_of[t.id_of(u)]].add_root(-static_cast<i64>(theta.exponent(u)) * (e / m));
  return sums;
}

std::vector<std::int64_t> decompose_induced(const CharTable& ct, Elem a) {
  const auto& cd = ct.classes;
  const auto sums = unipotent_class_sums(ct, a);
  const auto usize = static_cast<i64>(cd.table->spec().unipotent_order(0));
  std::vector<std::int64_t> mult;
  for (const auto& row : ct.rows) {
    CycloNum acc(cd.exponent);
    for (std::size_t l = 0; l < cd.count(); ++l)
      if (sums[l].nonzero_count()) acc.add_product(row[l], sums[l]);
    mult.push_back(exact_quotient(acc, usize, "multiplicity in the induced character"));
  }
  return mult;
}

std::vector<RegularInfo> classify_regular(const CharTable& ct) {
  const auto& cd = ct.classes;
  const GroupTable& t = *cd.table;
  const GroupSpec& spec = t.spec();
  const Ring& R = spec.ring;
  const int ell = R.ell(), n = spec.n, nn = n * n, e = cd.exponent;
  if (ell < 2) throw InvalidArgument("classify_regular: needs l >= 2");
  const Ring F = R.residue_field();
  const int m = R.char_modulus();
  if (e % m != 0) throw InternalFault("classify_regular: modulus does not divide the exponent");
  const auto kernel_group = congruence_subgroup(t, ell - 1);
  const AdditiveChar phi = primitive_char(R, 1);

  // Representatives x of gl_n(F_q) (GL) or of gl_n(F_q)/scalars (SL, x_nn = 0).
  std::vector<Matrix> xs;
  const std::uint64_t total = [&] {
    std::uint64_t v = 1;
    for (int k = 0; k < nn; ++k) v *= F.q();
    return v;
  }();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix x(F, n);
    std::uint64_t s = idx;
    for (int k = 0; k < nn; ++k) {
      x.set(k / n, k % n, static_cast<Elem>(s % F.q()));
      s /= F.q();
    }
    if (spec.family == Family::SL && x.at(n - 1, n - 1) != 0) continue;
    xs.push_back(std::move(x));
  }

  std::vector<Matrix> k_minus_i;
  std::vector<std::uint32_t> k_class;
  for (ElemId id : kernel_group.members) {
    k_minus_i.push_back(t.element(id) - Matrix::identity(R, n));
    k_class.push_back(cd.class_of[id]);
  }

  const auto ksize = static_cast<i64>(kernel_group.size());
  std::vector<std::vector<int>> support(ct.rows.size());
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    const Matrix lift = xs[xi].lift_to(R);
    std::vector<CycloNum> tsum(cd.count(), CycloNum(e));
    std::vector<bool> used(cd.count(), false);
    for (std::size_t k = 0; k < k_minus_i.size(); ++k) {
      const int ex = phi.exponent((lift * k_minus_i[k]).trace());
      tsum[k_class[k]].add_root(-static_cast<i64>(ex) * (e / m));
      used[k_class[k]] = true;
    }
    for (std::size_t i = 0; i < ct.rows.size(); ++i) {
      CycloNum acc(e);
      for (std::size_t l = 0; l < cd.count(); ++l)
        if (used[l]) acc.add_product(ct.rows[i][l], tsum[l]);
      if (exact_quotient(acc, ksize, "restriction to the last congruence subgroup") != 0)
        support[i].push_back(static_cast<int>(xi));
    }
  }

  std::vector<RegularInfo> out(ct.rows.size());
  for (std::size_t i = 0; i < ct.rows.size(); ++i) {
    auto& info = out[i];
    info.orbit_size = static_cast<int>(support[i].size());
    info.regular = !support[i].empty();
    for (int xi : support[i]) info.regular = info.regular && is_regular(xs[xi]);
    if (info.regular) {
      for (int xi : support[i]) {
        const TypeMatrix tau = type_of(xs[xi]);
        if (info.type && !(*info.type == tau)) throw InternalFault("classify_regular: orbit mixes types");
        info.type = tau;
      }
      info.label = type_label(*info.type);
    } else {
      info.label = "non-regular";
    }
  }
  return out;
}

std::int64_t restriction_norm(const CharTable& gl_table, std::size_t chi) {
  const auto& cd = gl_table.classes;
  const GroupTable& t = *cd.table;
  if (t.spec().family != Family::GL) throw InvalidArgument("restriction_norm: needs a GL table");
  CycloNum acc(cd.exponent);
  i64 sl_order = 0;
  for (std::size_t l = 0; l < cd.count(); ++l) {
    if (t.element(cd.reps[l]).det() != 1) continue;
    sl_order += static_cast<i64>(cd.sizes[l]);
    acc.add_product(gl_table.rows[chi][l], gl_table.rows[chi][l].conj(), static_cast<i64>(cd.sizes[l]));
  }
  GroupSpec sl(Family::SL, t.spec().n, t.spec().ring);
  if (static_cast<std::uint64_t>(sl_order) != sl.order()) throw InternalFault("restriction_norm: det-one classes miscounted");
  return exact_quotient(acc, sl_order, "restriction norm");
}

std::vector<std::vector<Elem>> special_regular_scan(const CharTable& sl_table) {
  const Ring& R = sl_table.classes.table->spec().ring;
  std::vector<std::vector<Elem>> out(sl_table.rows.size());
  for (Elem a : R.units()) {
    const auto mult = decompose_induced(sl_table, a);
    for (std::size_t i = 0; i < mult.size(); ++i) {
      if (mult[i] > 1) throw InternalFault("special_regular_scan: multiplicity above one");
      if (mult[i] == 1) out[i].push_back(a);
    }
  }
  return out;
}

namespace {

std::string table_key(const ClassData& cd) {
  return cd.table->spec().name() + "|classes=" + std::to_string(cd.count());
}

}  // namespace

void save_char_table(const CharTable& ct, const std::filesystem::path& dir) {
  nlohmann::json j;
  j["version"] = kAlgorithmVersion;
  j["key"] = table_key(ct.classes);
  j["reps"] = ct.classes.reps;
  j["exponent"] = ct.classes.exponent;
  j["prime"] = ct.prime;
  j["degrees"] = ct.degrees;
  auto rows = nlohmann::json::array();
  for (const auto& row : ct.rows) {
    auto r = nlohmann::json::array();
    for (const auto& v : row) {
      auto sparse = nlohmann::json::array();
      for (int k = 0; k < v.order(); ++k)
        if (v.coeff(k)) sparse.push_back({k, v.coeff(k)});
      r.push_back(std::move(sparse));
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  write_file_atomic(dir / cache_file_name("chartab", table_key(ct.classes)), j.dump());
}

std::optional<CharTable> load_char_table(const ClassData& classes, const std::filesystem::path& dir) {
  auto text = read_file(dir / cache_file_name("chartab", table_key(classes)));
  if (!text) return std::nullopt;
  try {
    auto j = nlohmann::json::parse(*text);
    if (j.at("version").get<std::string>() != kAlgorithmVersion) return std::nullopt;
    if (j.at("key").get<std::string>() != table_key(classes)) return std::nullopt;
    if (j.at("reps").get<std::vector<ElemId>>() != classes.reps) return std::nullopt;
    if (j.at("exponent").get<int>() != classes.exponent) return std::nullopt;
    CharTable ct;
    ct.classes = classes;
    ct.prime = j.at("prime").get<i64>();
    ct.degrees = j.at("degrees").get<std::vector<i64>>();
    for (const auto& r : j.at("rows")) {
      std::vector<CycloNum> row;
      for (const auto& sparse : r) {
        CycloNum v(classes.exponent);
        for (const auto& kv : sparse) v.add_root(kv.at(0).get<i64>(), kv.at(1).get<i64>());
        row.push_back(std::move(v));
      }
      if (row.size() != classes.count()) return std::nullopt;
      ct.rows.push_back(std::move(row));
    }
    if (ct.rows.size() != classes.count() || ct.degrees.size() != ct.rows.size()) return std::nullopt;
    return ct;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

}  // namespace ggr
