#include "ggr/poly.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "ggr/cache.hpp"
#include "ggr/errors.hpp"

namespace ggr {

namespace {

void require_field(const Ring& r) {
  if (!r.is_field()) throw InvalidArgument("poly: coefficient ring " + r.to_string() + " is not a field");
}

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Monic polynomial of degree d whose lower coefficients are the base-q digits of idx.
Poly monic_from_index(const Ring& F, int d, std::uint64_t idx) {
  std::vector<Elem> c(d + 1);
  for (int i = 0; i < d; ++i) {
    c[i] = static_cast<Elem>(idx % F.q());
    idx /= F.q();
  }
  c[d] = 1;
  return Poly(F, std::move(c));
}

std::uint64_t index_of_monic(const Poly& f) {
  std::uint64_t idx = 0;
  for (int i = f.degree() - 1; i >= 0; --i) idx = idx * f.field().q() + f.coeff(i);
  return idx;
}

}  // namespace

Poly::Poly(Ring field) : field_(std::move(field)) { require_field(field_); }

Poly::Poly(Ring field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  require_field(field_);
  for (auto v : c_)
    if (v >= static_cast<Elem>(field_.q())) throw InvalidArgument("poly: coefficient out of range");
  trim();
}

Poly Poly::monomial(const Ring& field, int degree, Elem c) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(field, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Poly(field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(field_);
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
  }
  return Poly(field_, std::move(r));
}

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw InvalidArgument("poly: division by zero polynomial");
  std::vector<Elem> r = c_;
  const int dd = d.degree();
  if (degree() < dd) return {Poly(field_), *this};
  std::vector<Elem> quo(degree() - dd + 1, 0);
  const Elem lead_inv = field_.inv(d.c_.back());
  for (int k = degree(); k >= dd; --k) {
    if (r[k] == 0) continue;
    const Elem f = field_.mul(r[k], lead_inv);
    quo[k - dd] = f;
    for (int i = 0; i <= dd; ++i) r[k - dd + i] = field_.sub(r[k - dd + i], field_.mul(f, d.c_[i]));
  }
  return {Poly(field_, std::move(quo)), Poly(field_, std::move(r))};
}

Poly Poly::make_monic() const {
  if (is_zero()) throw InvalidArgument("poly: zero polynomial has no monic associate");
  const Elem s = field_.inv(c_.back());
  std::vector<Elem> r(c_);
  for (auto& v : r) v = field_.mul(v, s);
  return Poly(field_, std::move(r));
}

Matrix Poly::evaluate(const Matrix& x) const {
  if (x.ring() != field_) throw InvalidArgument("poly: matrix over a different ring");
  Matrix acc(field_, x.rows());
  for (int i = degree(); i >= 0; --i) acc = acc * x + Matrix::identity(field_, x.rows()).scaled(c_[i]);
  return acc;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c_[i] != 1 || i == 0) os << c_[i];
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Poly char_poly(const Matrix& x) { return Poly(x.ring(), char_poly_coeffs(x)); }

Poly min_poly(const Matrix& x) {
  const Ring& F = x.ring();
  require_field(F);
  if (!x.is_square()) throw InvalidArgument("min_poly: non-square matrix");
  const int n = x.rows();
  const int N = n * n;
  // Incrementally row-reduce the vectors vec(x^k), remembering each reduced
  // vector as a combination of powers. The first power that reduces to zero
  // yields the minimal polynomial.
  std::vector<std::vector<Elem>> basis;        // reduced vectors, pivot normalized to 1
  std::vector<std::vector<Elem>> combos;       // coefficients over powers for each basis vector
  std::vector<int> pivots;
  Matrix power = Matrix::identity(F, n);
  for (int k = 0; k <= n; ++k) {
    std::vector<Elem> v(power.codes());
    std::vector<Elem> combo(k + 1, 0);
    combo[k] = 1;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Elem f = v[pivots[b]];
      if (f == 0) continue;
      for (int i = 0; i < N; ++i) v[i] = F.sub(v[i], F.mul(f, basis[b][i]));
      for (std::size_t i = 0; i < combos[b].size(); ++i) combo[i] = F.sub(combo[i], F.mul(f, combos[b][i]));
    }
    int piv = -1;
    for (int i = 0; i < N; ++i)
      if (v[i] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Poly(F, std::move(combo)).make_monic();
    const Elem s = F.inv(v[piv]);
    for (auto& e : v) e = F.mul(e, s);
    for (auto& e : combo) e = F.mul(e, s);
    basis.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pivots.push_back(piv);
    power = power * x;
  }
  throw InternalFault("min_poly: no dependency among the first n + 1 powers");
}

IrreducibleSieve::IrreducibleSieve(Ring field, int cap, std::optional<std::filesystem::path> cache_dir)
    : field_(std::move(field)), cap_(cap) {
  require_field(field_);
  if (cap < 1) throw InvalidArgument("sieve: cap must be >= 1");
  by_degree_.resize(cap + 1);
  if (!cache_dir) return;
  const std::string key = field_.to_string() + "|" + field_.modulus_string() + "|cap=" + std::to_string(cap);
  cache_path_ = *cache_dir / cache_file_name("sieve", key);
  auto text = read_file(*cache_path_);
  if (!text) return;
  try {
    auto j = nlohmann::json::parse(*text);
    if (j.at("version").get<std::string>() != kAlgorithmVersion || j.at("key").get<std::string>() != key) return;
    for (auto& [deg, list] : j.at("degrees").items()) {
      const int d = std::stoi(deg);
      if (d < 1 || d > cap_) continue;
      auto polys = std::make_unique<std::vector<Poly>>();
      for (auto& c : list) polys->emplace_back(field_, c.get<std::vector<Elem>>());
      by_degree_[d] = std::move(polys);
    }
    from_cache_ = true;
  } catch (const nlohmann::json::exception&) {
    // A corrupt cache file is ignored and overwritten on the next save.
  }
}

std::vector<Poly> IrreducibleSieve::build_degree(int d) const {
  const std::uint64_t total = upow(field_.q(), d);
  if (total > (1ULL << 26)) throw CapExceeded("sieve: q^d = " + std::to_string(total) + " candidates is too many");
  std::vector<bool> reducible(total, false);
  for (int k = 1; 2 * k <= d; ++k) {
    const auto& gs = *by_degree_[k];
    const std::uint64_t hs = upow(field_.q(), d - k);
    for (const auto& g : gs)
      for (std::uint64_t h = 0; h < hs; ++h) reducible[index_of_monic(g * monic_from_index(field_, d - k, h))] = true;
  }
  std::vector<Poly> out;
  for (std::uint64_t i = 0; i < total; ++i)
    if (!reducible[i]) out.push_back(monic_from_index(field_, d, i));
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<Poly>& IrreducibleSieve::of_degree(int d) const {
  if (d < 1 || d > cap_)
    throw CapExceeded("sieve: degree " + std::to_string(d) + " outside [1, " + std::to_string(cap_) + "]");
  std::lock_guard lock(mu_);
  bool built = false;
  for (int k = 1; k <= d; ++k) {
    if (by_degree_[k]) continue;
    by_degree_[k] = std::make_unique<std::vector<Poly>>(build_degree(k));
    built = true;
  }
  if (built) save();
  return *by_degree_[d];
}

bool IrreducibleSieve::is_irreducible(const Poly& f) const {
  if (!f.is_monic() || f.degree() < 1) return false;
  const auto& list = of_degree(f.degree());
  return std::binary_search(list.begin(), list.end(), f);
}

void IrreducibleSieve::save() const {
  if (!cache_path_) return;
  nlohmann::json j;
  j["version"] = kAlgorithmVersion;
  j["key"] = field_.to_string() + "|" + field_.modulus_string() + "|cap=" + std::to_string(cap_);
  j["degrees"] = nlohmann::json::object();
  for (int d = 1; d <= cap_; ++d) {
    if (!by_degree_[d]) continue;
    auto arr = nlohmann::json::array();
    for (const auto& p : *by_degree_[d]) arr.push_back(p.coeffs());
    j["degrees"][std::to_string(d)] = std::move(arr);
  }
  try {
    write_file_atomic(*cache_path_, j.dump());
  } catch (const Error&) {
    // Caching is best effort; an unwritable directory only costs recomputation.
  }
}

const IrreducibleSieve& sieve_for(const Ring& field, int cap) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::unique_ptr<IrreducibleSieve>> registry;
  std::lock_guard lock(mu);
  auto& slot = registry[{field.to_string(), cap}];
  if (!slot) slot = std::make_unique<IrreducibleSieve>(field, cap, default_cache_dir());
  return *slot;
}

Factorization factor_poly(const Poly& f, int cap) {
  if (!f.is_monic()) throw InvalidArgument("factor_poly: polynomial must be monic");
  if (f.degree() > cap)
    throw CapExceeded("factor_poly: degree " + std::to_string(f.degree()) + " exceeds cap " + std::to_string(cap));
  Factorization out;
  if (f.degree() == 0) return out;
  const auto& sieve = sieve_for(f.field(), cap);
  Poly rest = f;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    for (const auto& g : sieve.of_degree(d)) {
      int e = 0;
      while (rest.degree() >= d) {
        auto [quo, rem] = rest.divmod(g);
        if (!rem.is_zero()) break;
        rest = quo;
        ++e;
      }
      if (e) out.emplace_back(g, e);
    }
  }
  if (rest.degree() >= 1) {
    if (!sieve.is_irreducible(rest)) throw InternalFault("factor_poly: cofactor " + rest.to_string() + " not irreducible");
    out.emplace_back(rest, 1);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [g, e] : out)
    if (!sieve.is_irreducible(g)) throw InternalFault("factor_poly: factor " + g.to_string() + " not irreducible");
  return out;
}

}  // namespace ggr
