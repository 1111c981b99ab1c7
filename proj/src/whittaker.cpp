#include "ggr/whittaker.hpp"

#include <array>
#include <chrono>
#include <thread>

#include "ggr/errors.hpp"
#include "ggr/regular_elements.hpp"

namespace ggr {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool is_upper_unitriangular(const Matrix& u) {
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j <= i; ++j)
      if (u.at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

constexpr int kMaxN = 8;
using Raw = std::array<Elem, kMaxN * kMaxN>;

void raw_mul(const Ring& R, int n, const Elem* x, const Elem* y, Elem* out) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem acc = 0;
      for (int k = 0; k < n; ++k) acc = R.add(acc, R.mul(x[i * n + k], y[k * n + j]));
      out[i * n + j] = acc;
    }
}

}  // namespace

NonDegenerateCharacter::NonDegenerateCharacter(GroupSpec spec, Elem a)
    : spec_(std::move(spec)), a_(a), phi_(primitive_char(spec_.ring, 1)) {
  if (!spec_.ring.is_unit(a)) throw InvalidArgument("theta_a: a = " + spec_.ring.format(a) + " is not a unit");
}

int NonDegenerateCharacter::exponent(const Matrix& u) const {
  if (u.ring() != spec_.ring || u.rows() != spec_.n || !is_upper_unitriangular(u))
    throw InvalidArgument("theta_a: " + u.to_string() + " is not in U");
  const Ring& R = spec_.ring;
  if (spec_.n < 2) return 0;
  Elem arg = R.mul(a_, u.at(0, 1));
  for (int i = 1; i + 1 < spec_.n; ++i) arg = R.add(arg, u.at(i, i + 1));
  return phi_.exponent(arg);
}

CycloNum NonDegenerateCharacter::value(const Matrix& u) const {
  return CycloNum::root_of_unity(modulus(), exponent(u));
}

DualityCharacter::DualityCharacter(const Ring& ring, int i, const Matrix& x, std::optional<Matrix> lift)
    : ring_(ring), i_(i), x_hat_(Matrix(ring, x.rows())) {
  const int ell = ring.ell();
  if (2 * i < ell) throw InvalidArgument("duality character: level i = " + std::to_string(i) + " below l/2");
  if (i >= ell) throw InvalidArgument("duality character: level i must be < l");
  if (x.ring() != ring.truncated(ell - i)) throw InvalidArgument("duality character: x must be over o_(l-i)");
  if (lift) {
    if (lift->ring() != ring || lift->project(ell - i) != x)
      throw InvalidArgument("duality character: lift does not reduce to x");
    x_hat_ = *lift;
  } else {
    x_hat_ = x.lift_to(ring);
  }
}

int DualityCharacter::exponent(const Matrix& k) const {
  const Matrix d = k - Matrix::identity(ring_, k.rows());
  for (auto c : d.codes())
    if (ring_.valuation(c) < i_) throw InvalidArgument("duality character: " + k.to_string() + " is not in K^i");
  return primitive_char(ring_, 1).exponent((x_hat_ * d).trace());
}

CycloNum DualityCharacter::value(const Matrix& k) const { return CycloNum::root_of_unity(modulus(), exponent(k)); }

std::vector<Matrix> congruence_elements(const GroupSpec& spec, int i) {
  const Ring& R = spec.ring;
  if (i < 1 || i > R.ell()) throw InvalidArgument("congruence_elements: level out of range");
  const int n = spec.n, nn = n * n;
  const std::uint64_t per = R.size() / upow(R.q(), i);
  const std::uint64_t total = upow(per, nn);
  std::vector<Matrix> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix k = Matrix::identity(R, n);
    std::uint64_t t = idx;
    for (int s = 0; s < nn; ++s) {
      const Elem y = R.times_uniformizer_pow(static_cast<Elem>(t % per), i);
      t /= per;
      k.set(s / n, s % n, R.add(k.at(s / n, s % n), y));
    }
    if (spec.contains(k)) out.push_back(std::move(k));
  }
  return out;
}

std::uint64_t induced_dim(const GroupSpec& spec) { return spec.order() / spec.unipotent_order(0); }

NormResult induced_norm(const GroupSpec& spec, Elem a, int threads) {
  const Ring& R = spec.ring;
  const int n = spec.n;
  if (n > kMaxN) throw Unsupported("induced_norm: n > " + std::to_string(kMaxN));
  const NonDegenerateCharacter theta(spec, a);
  const AdditiveChar phi = primitive_char(R, 1);
  const int m = theta.modulus();
  const auto us = unipotent_elements(spec, 0);
  std::vector<Raw> u_raw(us.size());
  std::vector<int> u_exp(us.size());
  for (std::size_t k = 0; k < us.size(); ++k) {
    std::copy(us[k].codes().begin(), us[k].codes().end(), u_raw[k].begin());
    u_exp[k] = theta.exponent(us[k]);
  }
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  struct Partial {
    std::vector<std::int64_t> counter;
    std::uint64_t seen = 0;
  };
  std::vector<Partial> partials(threads, Partial{std::vector<std::int64_t>(m, 0), 0});

  auto worker = [&](int part) {
    Partial& out = partials[part];
    Raw g, gi, gu, w;
    for_each_element(
        spec,
        [&](const Matrix& gm) {
          ++out.seen;
          const Matrix inv = gm.inverse();
          std::copy(gm.codes().begin(), gm.codes().end(), g.begin());
          std::copy(inv.codes().begin(), inv.codes().end(), gi.begin());
          for (std::size_t k = 0; k < u_raw.size(); ++k) {
            raw_mul(R, n, g.data(), u_raw[k].data(), gu.data());
            // Rows bottom-up: the lower-left corner is the entry most likely
            // to be nonzero, so most non-members are rejected early.
            bool in_u = true;
            for (int i = n - 1; i >= 0 && in_u; --i)
              for (int j = 0; j <= i; ++j) {
                Elem acc = 0;
                for (int t = 0; t < n; ++t) acc = R.add(acc, R.mul(gu[i * n + t], gi[t * n + j]));
                if (acc != (i == j ? 1u : 0u)) {
                  in_u = false;
                  break;
                }
              }
            if (!in_u) continue;
            // Upper part of w = g u g^-1; only the superdiagonal matters.
            for (int i = 0; i + 1 < n; ++i) {
              Elem acc = 0;
              for (int t = 0; t < n; ++t) acc = R.add(acc, R.mul(gu[i * n + t], gi[t * n + i + 1]));
              w[i] = acc;
            }
            Elem arg = n >= 2 ? R.mul(a, w[0]) : 0;
            for (int i = 1; i + 1 < n; ++i) arg = R.add(arg, w[i]);
            const int e_w = phi.exponent(arg);
            const int idx = ((e_w - u_exp[k]) % m + m) % m;
            ++out.counter[idx];
          }
        },
        part, threads);
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  CycloNum total(m);
  NormResult res;
  for (const auto& p : partials) {
    for (int j = 0; j < m; ++j) total.add_root(j, p.counter[j]);
    res.enumerated_order += p.seen;
  }
  const auto usize = static_cast<std::int64_t>(us.size());
  res.norm = exact_quotient(total, usize * usize, "induced norm of " + spec.name());
  return res;
}

std::uint64_t regular_centralizer_order(const GroupSpec& spec_r, const Matrix& x) {
  return polynomial_algebra_units(spec_r, x).size();
}

std::uint64_t predicted_regular_count(const GroupSpec& spec, Elem a, SlRange range) {
  const int ell = spec.ring.ell();
  if (ell < 2) throw InvalidArgument("predicted_regular_count: needs l >= 2");
  if (range == SlRange::TameOnly) require_sl_tame(spec);
  const int m = ell / 2;
  const GroupSpec spec_m = spec.truncated(m);
  const Elem a_m = spec.ring.project(a, m);
  if (!spec.ring.is_unit(a)) throw InvalidArgument("predicted_regular_count: a is not a unit");
  std::uint64_t sum = 0;
  for (const auto& x : a_regular_representatives(spec.family, spec_m.ring, spec.n, a_m))
    sum += regular_centralizer_order(spec_m, x);
  if (ell % 2 == 1) sum *= upow(spec.ring.q(), spec.regular_dim());
  return sum;
}

std::uint64_t predicted_dim_sum(const GroupSpec& spec, Elem a, SlRange range) {
  const int ell = spec.ring.ell();
  if (ell < 2) throw InvalidArgument("predicted_dim_sum: needs l >= 2");
  if (!spec.ring.is_unit(a)) throw InvalidArgument("predicted_dim_sum: a is not a unit");
  if (range == SlRange::TameOnly) require_sl_tame(spec);
  const int m = ell / 2;
  const int d = spec.regular_dim();
  const int q = spec.ring.q();
  std::uint64_t r = upow(q, d * m) * spec.truncated(m).order();
  if (ell % 2 == 1) r *= upow(q, (spec.lie_dim() + d) / 2);
  return r;
}

VerificationReport verify_multiplicity_one(const GroupSpec& spec, Elem a, int threads) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.group = spec.group_string();
  rep.ring = spec.ring.to_string();
  rep.a = a;
  rep.index = induced_dim(spec);
  const auto nr = induced_norm(spec, a, threads);
  rep.ind_norm = nr.norm;
  rep.enumerated_order = nr.enumerated_order;
  rep.ind_dim = nr.enumerated_order / spec.unipotent_order(0);
  try {
    rep.predicted_regular_count = predicted_regular_count(spec, a);
    rep.predicted_dim_sum = predicted_dim_sum(spec, a);
  } catch (const Unsupported& e) {
    rep.prediction_note = e.what();
  } catch (const InvalidArgument& e) {
    rep.prediction_note = e.what();
  }
  const bool dim_ok = rep.ind_dim == rep.index && nr.enumerated_order == spec.order();
  if (rep.predicted_regular_count) {
    rep.norm_matches = static_cast<std::uint64_t>(rep.ind_norm) == *rep.predicted_regular_count;
    rep.dim_matches = dim_ok && rep.ind_dim == *rep.predicted_dim_sum;
  } else {
    rep.norm_matches = rep.ind_norm > 0 && static_cast<std::uint64_t>(rep.ind_norm) <= rep.ind_dim;
    rep.dim_matches = dim_ok;
  }
  rep.pass = rep.norm_matches && rep.dim_matches;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace ggr
