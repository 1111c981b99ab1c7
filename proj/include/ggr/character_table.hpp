#pragma once

// Conjugacy classes and exact complex character tables (Dixon-Schneider:
// class matrices split over F_r, r = 1 mod exponent, eigenvectors lifted to
// cyclotomic values through eigenvalue multiplicities), plus the character
// computations built on them: Ind_U^G theta_a decomposition, classification
// of regular irreducibles, GL -> SL restriction norms.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ggr/cyclotomic.hpp"
#include "ggr/group_tables.hpp"
#include "ggr/regular_elements.hpp"

namespace ggr {

struct ClassData {
  std::shared_ptr<const GroupTable> table;
  std::vector<std::uint32_t> class_of;       // per element id
  std::vector<ElemId> reps;                  // smallest id in each class
  std::vector<std::uint64_t> sizes;
  std::vector<std::vector<ElemId>> members;  // sorted ids per class
  std::vector<int> inverse_class;
  std::vector<int> orders;                   // element order per class
  int exponent = 1;                          // lcm of the orders

  std::size_t count() const { return reps.size(); }
  /// Class of rep(c)^k.
  int power_class(int c, std::int64_t k) const;
};

/// Classes ordered by smallest member id (the identity class is 0). Below
/// 10^4 elements the orbit of each element is computed under conjugation by
/// the whole group; above, by a greedily chosen generating set.
ClassData conjugacy_classes(std::shared_ptr<const GroupTable> table);

struct CharTableOptions {
  std::uint64_t cap = 100000;
  std::uint64_t prime_bound = 10000000;
};

struct CharTable {
  ClassData classes;
  /// rows[i][l] = chi_i(g_l) in Z[zeta_e], e = classes.exponent.
  std::vector<std::vector<CycloNum>> rows;
  std::vector<std::int64_t> degrees;
  /// The prime used for splitting.
  std::int64_t prime = 0;

  std::size_t size() const { return rows.size(); }
  int order_of_values() const { return classes.exponent; }
};

/// Throws CapExceeded above options.cap or when no suitable prime lies below
/// options.prime_bound; InternalFault if splitting fails to separate the
/// characters.
CharTable character_table(const ClassData& classes, const CharTableOptions& options = {});

struct OrthogonalityReport {
  bool rows_ok = false;
  bool columns_ok = false;
  bool degree_sum_ok = false;  // sum deg^2 = |G|
  bool degrees_divide = false;
  bool ok() const { return rows_ok && columns_ok && degree_sum_ok && degrees_divide; }
};

/// Both orthogonality relations, checked exactly.
OrthogonalityReport check_orthogonality(const CharTable& ct);

/// Class-wise sums S_l = sum over u in U cap C_l of conj(theta_a(u)), as
/// numbers in Z[zeta_e].
std::vector<CycloNum> unipotent_class_sums(const CharTable& ct, Elem a);

/// m_i = <Ind_U^G theta_a, chi_i> for every irreducible.
std::vector<std::int64_t> decompose_induced(const CharTable& ct, Elem a);

struct RegularInfo {
  bool regular = false;
  /// Number of x (in the representative set) with nonzero pairing.
  int orbit_size = 0;
  std::optional<TypeMatrix> type;
  /// type_label(type) for regular characters, "non-regular" otherwise.
  std::string label;
};

/// For each chi: the x in g(F_q) with <chi|K^(l-1), phi_x> != 0, where for SL
/// x runs over representatives of gl_n(F_q) modulo scalars (x_nn = 0).
/// Requires l >= 2.
std::vector<RegularInfo> classify_regular(const CharTable& ct);

/// <Res chi, Res chi>_SL = (1/|SL|) sum over det-one classes |C_l| |chi(g_l)|^2
/// for a character table of GL_n(o_l).
std::int64_t restriction_norm(const CharTable& gl_table, std::size_t chi);

/// For each chi of an SL table: the units a (codes) with multiplicity one in
/// Ind theta_a.
std::vector<std::vector<Elem>> special_regular_scan(const CharTable& sl_table);

/// Persist / restore a table (keyed by group and algorithm version).
void save_char_table(const CharTable& ct, const std::filesystem::path& dir);
std::optional<CharTable> load_char_table(const ClassData& classes, const std::filesystem::path& dir);

}  // namespace ggr
