#pragma once

// GL_n(o_l) and SL_n(o_l): closed-form orders, streaming enumeration, indexed
// tables, and the subgroups U(w^k o_l), K^i, centralizers.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ggr/local_ring.hpp"
#include "ggr/matrix.hpp"

namespace ggr {

enum class Family { GL, SL };

struct GroupSpec {
  Family family = Family::GL;
  int n = 2;
  Ring ring;

  GroupSpec(Family fam, int n_, Ring r);
  /// group text "GL2" / "SL3", ring text as in Ring::parse.
  static GroupSpec parse(std::string_view group, std::string_view ring);

  /// "GL2"
  std::string group_string() const;
  /// "GL2(mixed:3^2)"
  std::string name() const;

  std::uint64_t order() const;
  /// |GL_n(F_q)| or |SL_n(F_q)|.
  std::uint64_t residue_order() const;
  /// |U(w^k o_l)| = q^((l - k) n(n-1)/2).
  std::uint64_t unipotent_order(int k = 0) const;
  /// n^2 (gl) or n^2 - 1 (sl).
  int lie_dim() const;
  /// Centralizer dimension of a regular element: n (gl) or n - 1 (sl).
  int regular_dim() const;
  /// Whether g is an element of the group (invertible, det = 1 for SL).
  bool contains(const Matrix& g) const;
  GroupSpec truncated(int i) const { return GroupSpec(family, n, ring.truncated(i)); }
};

/// Calls fn(g) for every element of G(o_l), in residue-fiber order: residue
/// matrices in increasing code order, each followed by all its lifts. With
/// parts > 1 only the residue matrices whose position is congruent to part
/// mod parts are visited, so parts workers cover G exactly once.
void for_each_element(const GroupSpec& spec, const std::function<void(const Matrix&)>& fn, int part = 0,
                      int parts = 1);

using ElemId = std::uint32_t;

class GroupTable {
 public:
  static constexpr std::uint64_t kDefaultCap = 200000;

  /// Enumerates G(o_l). Throws CapExceeded above cap. When cache_dir is set
  /// the packed element list is read from / written to it.
  static GroupTable build(const GroupSpec& spec, std::uint64_t cap = kDefaultCap,
                          std::optional<std::filesystem::path> cache_dir = std::nullopt);

  const GroupSpec& spec() const { return spec_; }
  std::size_t size() const { return count_; }
  bool loaded_from_cache() const { return from_cache_; }

  Matrix element(ElemId id) const;
  std::optional<ElemId> find(const Matrix& g) const;
  /// find() that throws InternalFault when g is not in the table.
  ElemId id_of(const Matrix& g) const;

  ElemId mul(ElemId a, ElemId b) const;
  ElemId inverse(ElemId a) const { return inv_[a]; }
  /// g x g^-1
  ElemId conjugate(ElemId g, ElemId x) const;

  /// Row-major codes of element id.
  const Elem* codes(ElemId id) const { return &codes_[static_cast<std::size_t>(id) * nn_]; }

 private:
  GroupSpec spec_;
  int nn_ = 0;
  std::size_t count_ = 0;
  bool from_cache_ = false;
  std::vector<Elem> codes_;
  // key_[id] is the packed key; sorted_ lists ids 1..count-1 by key.
  std::vector<std::uint64_t> key_;
  std::vector<ElemId> sorted_;
  std::vector<ElemId> inv_;

  explicit GroupTable(GroupSpec spec) : spec_(std::move(spec)) {}
  std::uint64_t pack(const Elem* c) const;
  std::optional<ElemId> find_key(std::uint64_t key) const;
  void index();
};

struct SubgroupHandle {
  std::string tag;
  std::vector<ElemId> members;  // sorted
  bool contains(ElemId id) const;
  std::size_t size() const { return members.size(); }
};

/// The matrices of U(w^k o_l) (upper unitriangular, strictly upper entries in
/// w^k o_l), in lexicographic order of the strictly upper entries.
std::vector<Matrix> unipotent_elements(const GroupSpec& spec, int k = 0);

SubgroupHandle unipotent_subgroup(const GroupTable& table, int k = 0);
/// K^i = ker(G(o_l) -> G(o_i)).
SubgroupHandle congruence_subgroup(const GroupTable& table, int i);
/// Elements of the table commuting with x (x over the table's ring).
SubgroupHandle centralizer(const GroupTable& table, const Matrix& x);
/// Product-closure check plus inverses and identity.
bool is_subgroup(const GroupTable& table, const SubgroupHandle& h);
/// Exhaustive normality check.
bool is_normal(const GroupTable& table, const SubgroupHandle& h);
/// Normality checked against `samples` pseudo-random conjugators.
bool is_normal_sampled(const GroupTable& table, const SubgroupHandle& h, int samples, std::uint64_t seed);

/// Elements of o_r[x] = {c_0 + c_1 x + ... + c_(n-1) x^(n-1)} lying in G(o_r).
/// For regular x this is the group centralizer.
std::vector<Matrix> polynomial_algebra_units(const GroupSpec& spec, const Matrix& x);

/// |{y in g(o_r) : xy = yx}| by solve_homogeneous (trace-zero y for SL).
std::uint64_t lie_centralizer_size(Family family, const Matrix& x);

/// Centralizer order of x in G(o_r) by brute force over for_each_element.
std::uint64_t centralizer_order_brute(const GroupSpec& spec, const Matrix& x);

}  // namespace ggr
