#pragma once

// Non-degenerate characters of U, duality characters of K^i, and the
// comparison between <Ind_U^G theta_a, Ind_U^G theta_a> computed by brute force
// and the count of regular representations predicted from centralizer orders.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ggr/cyclotomic.hpp"
#include "ggr/group_tables.hpp"
#include "ggr/local_ring.hpp"
#include "ggr/matrix.hpp"

namespace ggr {

/// theta_a(u) = phi(a u_12 + u_23 + ... + u_(n-1)n) on U(o_l).
class NonDegenerateCharacter {
 public:
  /// Throws InvalidArgument when a is not a unit.
  NonDegenerateCharacter(GroupSpec spec, Elem a);
  const GroupSpec& spec() const { return spec_; }
  Elem a() const { return a_; }
  /// Order of the roots of unity involved (p^l or p).
  int modulus() const { return phi_.modulus(); }
  /// Throws InvalidArgument when u is not upper unitriangular.
  int exponent(const Matrix& u) const;
  CycloNum value(const Matrix& u) const;

 private:
  GroupSpec spec_;
  Elem a_;
  AdditiveChar phi_;
};

/// phi_x(I + w^i y) = phi(w^i tr(x^ y)) on K^i, i >= ceil(l/2), where x lies
/// in M_n(o_(l-i)) and x^ is a lift to o_l. Since w^i y = k - I the value is
/// phi(tr(x^ (k - I))).
class DualityCharacter {
 public:
  /// x over o_(l-i); the lift defaults to the code-preserving one.
  DualityCharacter(const Ring& ring, int i, const Matrix& x, std::optional<Matrix> lift = std::nullopt);
  int level() const { return i_; }
  const Matrix& lift() const { return x_hat_; }
  int modulus() const { return ring_.char_modulus(); }
  /// Throws InvalidArgument when k is not in K^i.
  int exponent(const Matrix& k) const;
  CycloNum value(const Matrix& k) const;

 private:
  Ring ring_;
  int i_;
  Matrix x_hat_;
};

/// The elements of K^i = I + w^i M_n(o_l) (GL) of the given level, as
/// matrices over o_l, enumerated by the codes of y.
std::vector<Matrix> congruence_elements(const GroupSpec& spec, int i);

/// [G : U] from the closed-form orders.
std::uint64_t induced_dim(const GroupSpec& spec);

struct NormResult {
  std::int64_t norm = 0;
  /// |G| counted while streaming (cross-check of the closed form).
  std::uint64_t enumerated_order = 0;
};

/// <Ind theta_a, Ind theta_a>_G = (1/|U|^2) sum_{u in U} sum_{g : g u g^-1 in U}
/// theta_a(g u g^-1) conj(theta_a(u)), exact. threads <= 0 means hardware
/// concurrency. The result does not depend on the thread count.
NormResult induced_norm(const GroupSpec& spec, Elem a, int threads = 1);

/// Centralizer order |C_{G(o_r)}(x)| for regular x, as the number of units of
/// o_r[x] lying in G.
std::uint64_t regular_centralizer_order(const GroupSpec& spec_r, const Matrix& x);

/// How predictions treat SL with p | 2n, where they are not established.
enum class SlRange { TameOnly, Extrapolate };

/// Sum over a-regular classes x of g(o_m) of |C_{G(o_m)}(x)|, times
/// q^d when l = 2m + 1 is odd (m = floor(l/2)). Requires l >= 2; SL requires
/// p not dividing 2n unless range is Extrapolate.
std::uint64_t predicted_regular_count(const GroupSpec& spec, Elem a, SlRange range = SlRange::TameOnly);

/// q^(d m) |G(o_m)| for even l, q^(d m) q^((d_g + d)/2) |G(o_m)| for odd l.
std::uint64_t predicted_dim_sum(const GroupSpec& spec, Elem a, SlRange range = SlRange::TameOnly);

struct VerificationReport {
  std::string group;
  std::string ring;
  Elem a = 0;
  std::uint64_t ind_dim = 0;
  std::int64_t ind_norm = 0;
  std::uint64_t index = 0;            // closed-form [G:U]
  std::uint64_t enumerated_order = 0;  // |G| seen while streaming
  std::optional<std::uint64_t> predicted_regular_count;
  std::optional<std::uint64_t> predicted_dim_sum;
  /// Reason predictions were not made (e.g. SL with p | 2n).
  std::string prediction_note;
  bool norm_matches = false;
  bool dim_matches = false;
  bool pass = false;
  double seconds = 0;
};

/// Pass iff norm = predicted count and dim = predicted dim sum = index. When
/// predictions are refused the verdict falls back to the properties
/// 0 < norm <= dim and dim = index.
VerificationReport verify_multiplicity_one(const GroupSpec& spec, Elem a, int threads = 1);

}  // namespace ggr
