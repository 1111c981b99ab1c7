#include "ggr/group_tables.hpp"

#include <algorithm>
#include <cstring>
#include <random>
#include <sstream>

#include "ggr/cache.hpp"
#include "ggr/errors.hpp"
#include "ggr/linsys.hpp"

namespace ggr {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t gl_residue_order(int n, int q) {
  std::uint64_t r = 1;
  const std::uint64_t qn = upow(q, n);
  for (int i = 0; i < n; ++i) r *= qn - upow(q, i);
  return r;
}

}  // namespace

GroupSpec::GroupSpec(Family fam, int n_, Ring r) : family(fam), n(n_), ring(std::move(r)) {
  if (n < 1) throw InvalidArgument("group: n must be >= 1");
}

GroupSpec GroupSpec::parse(std::string_view group, std::string_view ring) {
  if (group.size() < 3) throw InvalidArgument("group: expected GLn or SLn, got '" + std::string(group) + "'");
  Family fam;
  if (group.substr(0, 2) == "GL") fam = Family::GL;
  else if (group.substr(0, 2) == "SL") fam = Family::SL;
  else throw InvalidArgument("group: expected GLn or SLn, got '" + std::string(group) + "'");
  int n = 0;
  for (char c : group.substr(2)) {
    if (c < '0' || c > '9') throw InvalidArgument("group: bad rank in '" + std::string(group) + "'");
    n = n * 10 + (c - '0');
    if (n > 64) throw InvalidArgument("group: rank too large");
  }
  return GroupSpec(fam, n, Ring::parse(ring));
}

std::string GroupSpec::group_string() const {
  return (family == Family::GL ? "GL" : "SL") + std::to_string(n);
}

std::string GroupSpec::name() const { return group_string() + "(" + ring.to_string() + ")"; }

std::uint64_t GroupSpec::residue_order() const {
  auto g = gl_residue_order(n, ring.q());
  return family == Family::GL ? g : g / (ring.q() - 1);
}

std::uint64_t GroupSpec::order() const {
  return upow(ring.q(), lie_dim() * (ring.ell() - 1)) * residue_order();
}

std::uint64_t GroupSpec::unipotent_order(int k) const {
  if (k < 0 || k > ring.ell()) throw InvalidArgument("unipotent_order: k out of range");
  return upow(ring.q(), (ring.ell() - k) * n * (n - 1) / 2);
}

int GroupSpec::lie_dim() const { return family == Family::GL ? n * n : n * n - 1; }
int GroupSpec::regular_dim() const { return family == Family::GL ? n : n - 1; }

bool GroupSpec::contains(const Matrix& g) const {
  if (g.ring() != ring || g.rows() != n || g.cols() != n) return false;
  const Elem d = g.det();
  return family == Family::GL ? ring.is_unit(d) : d == 1;
}

void for_each_element(const GroupSpec& spec, const std::function<void(const Matrix&)>& fn, int part, int parts) {
  if (parts < 1 || part < 0 || part >= parts) throw InvalidArgument("for_each_element: bad partition");
  const Ring& R = spec.ring;
  const Ring F = R.residue_field();
  const int n = spec.n, nn = n * n, q = R.q();
  const std::uint64_t residues = upow(q, nn);
  const std::uint64_t lifts = upow(R.size() / q, nn);
  const std::uint64_t hsize = R.size() / q;
  Matrix r(F, n), g(R, n);
  std::uint64_t position = 0;
  for (std::uint64_t idx = 0; idx < residues; ++idx) {
    std::uint64_t t = idx;
    for (int k = 0; k < nn; ++k) {
      r.set(k / n, k % n, static_cast<Elem>(t % q));
      t /= q;
    }
    const Elem d = r.det();
    if (spec.family == Family::GL ? d == 0 : d != 1) continue;
    if (position++ % parts != static_cast<std::uint64_t>(part)) continue;
    for (std::uint64_t h = 0; h < lifts; ++h) {
      std::uint64_t s = h;
      for (int k = 0; k < nn; ++k) {
        g.set(k / n, k % n, static_cast<Elem>(r.at(k / n, k % n) + q * (s % hsize)));
        s /= hsize;
      }
      if (spec.family == Family::SL && R.ell() > 1 && g.det() != 1) continue;
      fn(g);
    }
  }
}

std::uint64_t GroupTable::pack(const Elem* c) const {
  std::uint64_t key = 0;
  for (int k = 0; k < nn_; ++k) key = key * spec_.ring.size() + c[k];
  return key;
}

std::optional<ElemId> GroupTable::find_key(std::uint64_t key) const {
  if (key == key_[0]) return ElemId{0};
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), key,
                             [&](ElemId id, std::uint64_t k) { return key_[id] < k; });
  if (it == sorted_.end() || key_[*it] != key) return std::nullopt;
  return *it;
}

void GroupTable::index() {
  key_.resize(count_);
  for (std::size_t i = 0; i < count_; ++i) key_[i] = pack(codes(static_cast<ElemId>(i)));
  sorted_.resize(count_ - 1);
  for (std::size_t i = 1; i < count_; ++i) sorted_[i - 1] = static_cast<ElemId>(i);
  inv_.assign(count_, 0);
  for (std::size_t i = 0; i < count_; ++i) inv_[i] = id_of(element(static_cast<ElemId>(i)).inverse());
}

GroupTable GroupTable::build(const GroupSpec& spec, std::uint64_t cap, std::optional<std::filesystem::path> cache_dir) {
  const std::uint64_t order = spec.order();
  if (order > cap)
    throw CapExceeded("group table: |" + spec.name() + "| = " + std::to_string(order) + " exceeds cap " +
                      std::to_string(cap));
  const int nn = spec.n * spec.n;
  long double key_space = 1;
  for (int k = 0; k < nn; ++k) key_space *= static_cast<long double>(spec.ring.size());
  if (key_space >= 18446744073709551615.0L) throw Unsupported("group table: matrix keys exceed 64 bits");

  GroupTable t(spec);
  t.nn_ = nn;
  t.count_ = order;

  std::optional<std::filesystem::path> file;
  const std::string header = std::string("ggr-group-table ") + std::string(kAlgorithmVersion) + " " + spec.name() +
                             " " + std::to_string(order) + "\n";
  if (cache_dir) {
    file = *cache_dir / cache_file_name("group", spec.name());
    file->replace_extension(".bin");
    if (auto data = read_file(*file); data && data->size() == header.size() + order * nn * sizeof(Elem) &&
                                        data->compare(0, header.size(), header) == 0) {
      t.codes_.resize(order * nn);
      std::memcpy(t.codes_.data(), data->data() + header.size(), order * nn * sizeof(Elem));
      t.from_cache_ = true;
    }
  }

  if (!t.from_cache_) {
    std::vector<std::pair<std::uint64_t, std::vector<Elem>>> all;
    all.reserve(order);
    const Matrix id = Matrix::identity(spec.ring, spec.n);
    for_each_element(spec, [&](const Matrix& g) { all.emplace_back(t.pack(g.codes().data()), g.codes()); });
    if (all.size() != order)
      throw InternalFault("group table: enumerated " + std::to_string(all.size()) + " elements of " + spec.name() +
                          ", closed form says " + std::to_string(order));
    const std::uint64_t id_key = t.pack(id.codes().data());
    std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
      const bool ai = a.first == id_key, bi = b.first == id_key;
      if (ai != bi) return ai;
      return a.first < b.first;
    });
    t.codes_.reserve(order * nn);
    for (auto& [k, c] : all) t.codes_.insert(t.codes_.end(), c.begin(), c.end());
    if (file) {
      std::string blob = header;
      blob.append(reinterpret_cast<const char*>(t.codes_.data()), t.codes_.size() * sizeof(Elem));
      try {
        write_file_atomic(*file, blob);
      } catch (const Error&) {
        // best effort
      }
    }
  }
  t.index();
  if (!(t.element(0) == Matrix::identity(spec.ring, spec.n))) throw InternalFault("group table: identity not at id 0");
  return t;
}

Matrix GroupTable::element(ElemId id) const {
  const Elem* c = codes(id);
  return Matrix::from_codes(spec_.ring, spec_.n, spec_.n, std::vector<Elem>(c, c + nn_));
}

std::optional<ElemId> GroupTable::find(const Matrix& g) const {
  if (g.ring() != spec_.ring || g.rows() != spec_.n || g.cols() != spec_.n) return std::nullopt;
  return find_key(pack(g.codes().data()));
}

ElemId GroupTable::id_of(const Matrix& g) const {
  auto id = find(g);
  if (!id) throw InternalFault("group table: " + g.to_string() + " not in " + spec_.name());
  return *id;
}

ElemId GroupTable::mul(ElemId a, ElemId b) const {
  const Ring& R = spec_.ring;
  const int n = spec_.n;
  const Elem* x = codes(a);
  const Elem* y = codes(b);
  Elem out[64];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem acc = 0;
      for (int k = 0; k < n; ++k) acc = R.add(acc, R.mul(x[i * n + k], y[k * n + j]));
      out[i * n + j] = acc;
    }
  auto id = find_key(pack(out));
  if (!id) throw InternalFault("group table: product left the group");
  return *id;
}

ElemId GroupTable::conjugate(ElemId g, ElemId x) const { return mul(mul(g, x), inv_[g]); }

bool SubgroupHandle::contains(ElemId id) const { return std::binary_search(members.begin(), members.end(), id); }

std::vector<Matrix> unipotent_elements(const GroupSpec& spec, int k) {
  const Ring& R = spec.ring;
  if (k < 0 || k > R.ell()) throw InvalidArgument("unipotent subgroup: k out of range");
  const int n = spec.n;
  const int slots = n * (n - 1) / 2;
  const std::uint64_t per = R.size() / upow(R.q(), k);  // |w^k o_l|
  const std::uint64_t total = upow(per, slots);
  std::vector<Matrix> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix u = Matrix::identity(R, n);
    // Last slot varies fastest: lexicographic order on (x_12, x_13, ..., x_(n-1)n).
    std::uint64_t t = idx;
    for (int s = slots - 1; s >= 0; --s) {
      int i = 0, rem = s;
      while (rem >= n - 1 - i) {
        rem -= n - 1 - i;
        ++i;
      }
      const int j = i + 1 + rem;
      u.set(i, j, R.times_uniformizer_pow(static_cast<Elem>(t % per), k));
      t /= per;
    }
    out.push_back(std::move(u));
  }
  return out;
}

SubgroupHandle unipotent_subgroup(const GroupTable& table, int k) {
  SubgroupHandle h{"U(w^" + std::to_string(k) + ")", {}};
  for (const auto& u : unipotent_elements(table.spec(), k)) h.members.push_back(table.id_of(u));
  std::sort(h.members.begin(), h.members.end());
  return h;
}

SubgroupHandle congruence_subgroup(const GroupTable& table, int i) {
  const Ring& R = table.spec().ring;
  if (i < 1 || i > R.ell()) throw InvalidArgument("congruence subgroup: level out of range");
  SubgroupHandle h{"K^" + std::to_string(i), {}};
  const int nn = table.spec().n * table.spec().n;
  for (ElemId id = 0; id < table.size(); ++id) {
    const Elem* c = table.codes(id);
    bool ok = true;
    for (int k = 0; k < nn && ok; ++k) ok = R.project(c[k], i) == (k % (table.spec().n + 1) == 0 ? 1u : 0u);
    if (ok) h.members.push_back(id);
  }
  return h;
}

SubgroupHandle centralizer(const GroupTable& table, const Matrix& x) {
  if (x.ring() != table.spec().ring) throw InvalidArgument("centralizer: x is over a different ring");
  SubgroupHandle h{"centralizer", {}};
  for (ElemId id = 0; id < table.size(); ++id) {
    const Matrix g = table.element(id);
    if (g * x == x * g) h.members.push_back(id);
  }
  return h;
}

bool is_subgroup(const GroupTable& table, const SubgroupHandle& h) {
  if (!h.contains(0)) return false;
  for (auto a : h.members) {
    if (!h.contains(table.inverse(a))) return false;
    for (auto b : h.members)
      if (!h.contains(table.mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const GroupTable& table, const SubgroupHandle& h) {
  for (ElemId g = 0; g < table.size(); ++g)
    for (auto x : h.members)
      if (!h.contains(table.conjugate(g, x))) return false;
  return true;
}

bool is_normal_sampled(const GroupTable& table, const SubgroupHandle& h, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
  for (int s = 0; s < samples; ++s) {
    const auto g = static_cast<ElemId>(pick(rng));
    for (auto x : h.members)
      if (!h.contains(table.conjugate(g, x))) return false;
  }
  return true;
}

std::vector<Matrix> polynomial_algebra_units(const GroupSpec& spec, const Matrix& x) {
  const Ring& R = x.ring();
  const int n = x.rows();
  std::vector<Matrix> powers;
  powers.push_back(Matrix::identity(R, n));
  for (int i = 1; i < n; ++i) powers.push_back(powers.back() * x);
  const std::uint64_t total = upow(R.size(), n);
  std::vector<Matrix> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix y(R, n);
    std::uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      const auto c = static_cast<Elem>(t % R.size());
      t /= R.size();
      if (c) y = y + powers[i].scaled(c);
    }
    const Elem d = y.det();
    if (spec.family == Family::GL ? R.is_unit(d) : d == 1) out.push_back(std::move(y));
  }
  // Distinct coefficient tuples can give the same matrix when x is not regular.
  std::sort(out.begin(), out.end(), [](const Matrix& a, const Matrix& b) { return a.codes() < b.codes(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t lie_centralizer_size(Family family, const Matrix& x) {
  return solve_homogeneous(family == Family::GL ? commutator_map(x) : commutator_map_trace_zero(x)).count;
}

std::uint64_t centralizer_order_brute(const GroupSpec& spec, const Matrix& x) {
  std::uint64_t count = 0;
  const Matrix xx = x;
  for_each_element(spec, [&](const Matrix& g) {
    if (g * xx == xx * g) ++count;
  });
  return count;
}

}  // namespace ggr
