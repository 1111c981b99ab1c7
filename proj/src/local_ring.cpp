#include "ggr/local_ring.hpp"

#include <charconv>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>
#include <numeric>
#include <sstream>
#include <utility>

#include "ggr/errors.hpp"

namespace ggr {

namespace {

// Conway polynomials for the non-prime residue fields of order <= 64,
// coefficients from X^0 upwards (monic, last entry 1).
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{5, 2}, {2, 4, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  return table;
}

constexpr std::uint64_t kTableLimit = 1024;

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct Ring::Impl {
  RingKind kind = RingKind::Mixed;
  int p = 2, f = 1, ell = 1, q = 2;
  std::uint64_t size = 2;
  std::vector<std::uint64_t> qpow;  // q^0 .. q^ell
  std::vector<int> modulus;         // empty for prime fields

  // Residue field tables, only for f >= 2 (q <= 64).
  std::vector<std::uint8_t> fadd, fmul, fneg;
  std::vector<int> ftrace;

  // Whole-ring tables for small rings.
  std::vector<std::uint16_t> add_tab, mul_tab;

  Elem fq_add(Elem a, Elem b) const {
    if (f == 1) return (a + b) % static_cast<Elem>(p);
    return fadd[a * q + b];
  }
  Elem fq_mul(Elem a, Elem b) const {
    if (f == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p);
    return fmul[a * q + b];
  }
  Elem fq_neg(Elem a) const {
    if (f == 1) return (p - a) % static_cast<Elem>(p);
    return fneg[a];
  }

  Elem add_slow(Elem a, Elem b) const {
    if (kind == RingKind::Mixed) return static_cast<Elem>((static_cast<std::uint64_t>(a) + b) % size);
    Elem r = 0;
    for (int i = ell - 1; i >= 0; --i) {
      Elem da = static_cast<Elem>(a / qpow[i] % q);
      Elem db = static_cast<Elem>(b / qpow[i] % q);
      r = r * q + fq_add(da, db);
    }
    return r;
  }

  Elem mul_slow(Elem a, Elem b) const {
    if (kind == RingKind::Mixed) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % size);
    std::vector<Elem> da(ell), db(ell), dc(ell, 0);
    for (int i = 0; i < ell; ++i) {
      da[i] = static_cast<Elem>(a / qpow[i] % q);
      db[i] = static_cast<Elem>(b / qpow[i] % q);
    }
    for (int i = 0; i < ell; ++i) {
      if (da[i] == 0) continue;
      for (int j = 0; i + j < ell; ++j)
        dc[i + j] = fq_add(dc[i + j], fq_mul(da[i], db[j]));
    }
    Elem r = 0;
    for (int i = ell - 1; i >= 0; --i) r = r * q + dc[i];
    return r;
  }

  Elem add(Elem a, Elem b) const {
    if (!add_tab.empty()) return add_tab[a * size + b];
    return add_slow(a, b);
  }
  Elem mul(Elem a, Elem b) const {
    if (!mul_tab.empty()) return mul_tab[a * size + b];
    return mul_slow(a, b);
  }
  Elem neg(Elem a) const {
    if (kind == RingKind::Mixed) return static_cast<Elem>((size - a) % size);
    Elem r = 0;
    for (int i = ell - 1; i >= 0; --i) r = r * q + fq_neg(static_cast<Elem>(a / qpow[i] % q));
    return r;
  }
};

Ring Ring::make(RingKind kind, int p, int f, int ell) {
  if (!is_prime(p)) throw InvalidArgument("ring: p = " + std::to_string(p) + " is not prime");
  if (f < 1) throw InvalidArgument("ring: residue degree f must be >= 1");
  if (ell < 1) throw InvalidArgument("ring: length l must be >= 1");
  if (kind == RingKind::Mixed && f > 1)
    throw Unsupported("ring: mixed characteristic with f > 1 (Galois rings) is unsupported");
  if (f > 1 && !conway_table().count({p, f}))
    throw Unsupported("ring: residue field of order " + std::to_string(p) + "^" + std::to_string(f) +
                      " is not in the modulus table (q <= 64)");

  // Rings are immutable; memoize so truncated() and parse() stay cheap.
  static std::mutex registry_mu;
  static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const Impl>> registry;
  const auto key = std::make_tuple(static_cast<int>(kind), p, f, ell);
  {
    std::lock_guard lock(registry_mu);
    if (auto it = registry.find(key); it != registry.end()) return Ring(it->second);
  }

  auto impl = std::make_shared<Impl>();
  impl->kind = kind;
  impl->p = p;
  impl->f = f;
  impl->ell = ell;
  impl->q = static_cast<int>(ipow(p, f));
  long double approx = 1;
  for (int i = 0; i < ell; ++i) approx *= impl->q;
  if (approx >= static_cast<long double>(std::numeric_limits<std::int32_t>::max()))
    throw Unsupported("ring: q^l exceeds the 32-bit code range");
  impl->qpow.resize(ell + 1);
  impl->qpow[0] = 1;
  for (int i = 1; i <= ell; ++i) impl->qpow[i] = impl->qpow[i - 1] * impl->q;
  impl->size = impl->qpow[ell];

  if (f > 1) {
    const int q = impl->q;
    impl->modulus = conway_table().at({p, f});
    impl->fadd.resize(q * q);
    impl->fmul.resize(q * q);
    impl->fneg.resize(q);
    auto digits = [&](int a) {
      std::vector<int> d(f);
      for (int i = 0; i < f; ++i, a /= p) d[i] = a % p;
      return d;
    };
    auto encode = [&](const std::vector<int>& d) {
      int r = 0;
      for (int i = f - 1; i >= 0; --i) r = r * p + d[i];
      return r;
    };
    for (int a = 0; a < q; ++a) {
      auto da = digits(a);
      std::vector<int> dn(f);
      for (int i = 0; i < f; ++i) dn[i] = (p - da[i]) % p;
      impl->fneg[a] = static_cast<std::uint8_t>(encode(dn));
      for (int b = 0; b < q; ++b) {
        auto db = digits(b);
        std::vector<int> ds(f);
        for (int i = 0; i < f; ++i) ds[i] = (da[i] + db[i]) % p;
        impl->fadd[a * q + b] = static_cast<std::uint8_t>(encode(ds));
        // schoolbook product then reduction by the monic modulus
        std::vector<int> prod(2 * f - 1, 0);
        for (int i = 0; i < f; ++i)
          for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (int k = 2 * f - 2; k >= f; --k) {
          int c = prod[k];
          if (c == 0) continue;
          prod[k] = 0;
          for (int i = 0; i < f; ++i)
            prod[k - f + i] = ((prod[k - f + i] - c * impl->modulus[i]) % p + p) % p;
        }
        prod.resize(f);
        impl->fmul[a * q + b] = static_cast<std::uint8_t>(encode(prod));
      }
    }
    impl->ftrace.resize(q);
    for (int a = 0; a < q; ++a) {
      int t = 0, power = a;
      for (int i = 0; i < f; ++i) {
        t = impl->fadd[t * q + power];
        int next = 1;
        for (int k = 0; k < p; ++k) next = impl->fmul[next * q + power];
        power = next;
      }
      if (t >= p) throw InternalFault("field trace left the prime field");
      impl->ftrace[a] = t;
    }
  }

  if (impl->size <= kTableLimit) {
    const auto n = impl->size;
    impl->add_tab.resize(n * n);
    impl->mul_tab.resize(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        impl->add_tab[a * n + b] = static_cast<std::uint16_t>(impl->add_slow(a, b));
        impl->mul_tab[a * n + b] = static_cast<std::uint16_t>(impl->mul_slow(a, b));
      }
  }
  std::lock_guard lock(registry_mu);
  auto [it, inserted] = registry.emplace(key, std::move(impl));
  return Ring(it->second);
}

Ring Ring::parse(std::string_view text) {
  auto colon = text.find(':');
  auto caret = text.find('^');
  if (colon == std::string_view::npos || caret == std::string_view::npos || caret < colon)
    throw InvalidArgument("ring: expected 'mixed:p^l' or 'equal:q^l', got '" + std::string(text) + "'");
  auto family = text.substr(0, colon);
  auto base_s = text.substr(colon + 1, caret - colon - 1);
  auto exp_s = text.substr(caret + 1);
  int base = 0, ell = 0;
  auto r1 = std::from_chars(base_s.data(), base_s.data() + base_s.size(), base);
  auto r2 = std::from_chars(exp_s.data(), exp_s.data() + exp_s.size(), ell);
  if (r1.ec != std::errc{} || r1.ptr != base_s.data() + base_s.size() || r2.ec != std::errc{} ||
      r2.ptr != exp_s.data() + exp_s.size())
    throw InvalidArgument("ring: malformed numbers in '" + std::string(text) + "'");
  if (family == "mixed") return make(RingKind::Mixed, base, 1, ell);
  if (family != "equal") throw InvalidArgument("ring: unknown family '" + std::string(family) + "'");
  if (base < 2) throw InvalidArgument("ring: residue field size must be >= 2");
  int p = 2;
  while (base % p != 0) ++p;
  int f = 0, rest = base;
  while (rest % p == 0) {
    rest /= p;
    ++f;
  }
  if (rest != 1) throw InvalidArgument("ring: " + std::to_string(base) + " is not a prime power");
  return make(RingKind::Equal, p, f, ell);
}

std::string Ring::to_string() const {
  return (kind() == RingKind::Mixed ? "mixed:" : "equal:") + std::to_string(q()) + "^" + std::to_string(ell());
}

RingKind Ring::kind() const { return impl_->kind; }
int Ring::p() const { return impl_->p; }
int Ring::f() const { return impl_->f; }
int Ring::ell() const { return impl_->ell; }
int Ring::q() const { return impl_->q; }
std::uint64_t Ring::size() const { return impl_->size; }

Ring Ring::truncated(int i) const {
  if (i < 1 || i > ell()) throw InvalidArgument("ring: truncation level out of range");
  if (i == ell()) return *this;
  return make(kind(), p(), f(), i);
}

Elem Ring::from_int(std::int64_t v) const {
  if (kind() == RingKind::Mixed) {
    auto m = static_cast<std::int64_t>(size());
    return static_cast<Elem>(((v % m) + m) % m);
  }
  // characteristic p: the integer v maps to the constant v mod p
  return static_cast<Elem>(((v % p()) + p()) % p());
}

Elem Ring::add(Elem a, Elem b) const { return impl_->add(a, b); }
Elem Ring::neg(Elem a) const { return impl_->neg(a); }
Elem Ring::sub(Elem a, Elem b) const { return impl_->add(a, impl_->neg(b)); }
Elem Ring::mul(Elem a, Elem b) const { return impl_->mul(a, b); }

Elem Ring::pow(Elem a, std::uint64_t e) const {
  Elem r = 1 % static_cast<Elem>(size());
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Ring::inv(Elem a) const {
  if (!is_unit(a)) throw InvalidArgument("ring: " + format(a) + " is not a unit in " + to_string());
  if (kind() == RingKind::Mixed) {
    std::int64_t m = static_cast<std::int64_t>(size()), r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t t = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
      std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
    }
    return static_cast<Elem>(((s0 % m) + m) % m);
  }
  std::uint64_t units = impl_->qpow[ell() - 1] * (q() - 1);
  return pow(a, units - 1);
}

int Ring::valuation(Elem a) const {
  if (a == 0) return ell();
  int v = 0;
  while (a % q() == 0) {
    a /= q();
    ++v;
  }
  return v;
}

Elem Ring::project(Elem x, int i) const {
  if (i < 1 || i > ell()) throw InvalidArgument("project: level out of range");
  return static_cast<Elem>(x % impl_->qpow[i]);
}

Elem Ring::uniformizer_pow(int k) const {
  if (k < 0) throw InvalidArgument("uniformizer_pow: negative exponent");
  if (k >= ell()) return 0;
  return static_cast<Elem>(impl_->qpow[k]);
}

Elem Ring::times_uniformizer_pow(Elem x, int k) const {
  if (k >= ell()) return 0;
  return static_cast<Elem>(static_cast<std::uint64_t>(x) * impl_->qpow[k] % size());
}

Elem Ring::divide_uniformizer_pow(Elem x, int v) const {
  if (valuation(x) < v) throw InvalidArgument("divide_uniformizer_pow: valuation too small");
  if (v >= ell()) return 0;
  return static_cast<Elem>(x / impl_->qpow[v]);
}

int Ring::char_modulus() const {
  return kind() == RingKind::Mixed ? static_cast<int>(size()) : p();
}

int Ring::additive_exponent(Elem x) const {
  if (kind() == RingKind::Mixed) return static_cast<int>(x);
  Elem top = static_cast<Elem>(x / impl_->qpow[ell() - 1]);
  return field_trace(top);
}

std::vector<Elem> Ring::elements() const {
  std::vector<Elem> out(size());
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

std::vector<Elem> Ring::units() const {
  std::vector<Elem> out;
  out.reserve(size());
  for (Elem x = 0; x < size(); ++x)
    if (is_unit(x)) out.push_back(x);
  return out;
}

std::string Ring::modulus_string() const {
  if (impl_->modulus.empty()) return "prime field";
  std::string s;
  for (int i = static_cast<int>(impl_->modulus.size()) - 1; i >= 0; --i) {
    int c = impl_->modulus[i];
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) s += "X";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

std::string Ring::format(Elem x) const {
  if (kind() == RingKind::Mixed) return std::to_string(x);
  std::string s;
  for (int i = 0; i < ell(); ++i) {
    auto d = x / impl_->qpow[i] % q();
    if (d == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || d != 1) s += std::to_string(d);
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Elem Ring::field_add(Elem a, Elem b) const { return impl_->fq_add(a, b); }
Elem Ring::field_mul(Elem a, Elem b) const { return impl_->fq_mul(a, b); }
int Ring::field_trace(Elem a) const {
  if (f() == 1) return static_cast<int>(a);
  return impl_->ftrace[a];
}

bool Ring::operator==(const Ring& other) const {
  if (impl_ == other.impl_) return true;
  return kind() == other.kind() && p() == other.p() && f() == other.f() && ell() == other.ell();
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  if (a.ring != b.ring) throw InvalidArgument("ring element: mixed rings");
  return {a.ring, a.ring.add(a.code, b.code)};
}
RingElem operator-(const RingElem& a, const RingElem& b) {
  if (a.ring != b.ring) throw InvalidArgument("ring element: mixed rings");
  return {a.ring, a.ring.sub(a.code, b.code)};
}
RingElem operator*(const RingElem& a, const RingElem& b) {
  if (a.ring != b.ring) throw InvalidArgument("ring element: mixed rings");
  return {a.ring, a.ring.mul(a.code, b.code)};
}

RingElem project(const RingElem& x, int i) {
  return {x.ring.truncated(i), x.ring.project(x.code, i)};
}

AdditiveChar::AdditiveChar(Ring ring, Elem twist) : ring_(std::move(ring)), twist_(twist) {}

bool AdditiveChar::is_primitive() const {
  const Elem step = ring_.uniformizer_pow(ring_.ell() - 1);
  for (Elem c = 0; c < static_cast<Elem>(ring_.q()); ++c)
    if (exponent(static_cast<Elem>(static_cast<std::uint64_t>(step) * c)) != 0) return true;
  return false;
}

AdditiveChar primitive_char(const Ring& ring, Elem a) {
  if (!ring.is_unit(a)) throw InvalidArgument("primitive_char: twist " + ring.format(a) + " is not a unit");
  return AdditiveChar(ring, a);
}

}  // namespace ggr
