#pragma once

// Job configuration, the report envelope ("report/v1") and the closed-form
// GL2 / SL2 regular-representation tables evaluated by gl2-sl2-tables.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ggr {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "report/v1";

struct JobConfig {
  std::string subcommand;  // verify | gl2-sl2-tables | branching | chartab | classes
  std::string group = "GL2";
  std::string ring;
  /// Unit code; ignored when all_units is set.
  std::optional<std::uint32_t> a;
  bool all_units = false;
  std::uint64_t table_cap = 200000;
  std::uint64_t chartab_cap = 100000;
  int threads = 1;
  std::string out;              // empty: stdout
  std::string format = "text";  // text | json
  std::string cache_dir;        // empty: no cache
  bool timings = false;

  nlohmann::json to_json() const;
  /// Throws InvalidArgument on unknown keys or wrong types.
  static JobConfig from_json(const nlohmann::json& j);
  /// Throws InvalidArgument for an unknown subcommand or format, a
  /// non-positive cap or thread count, or a missing ring.
  void validate() const;
  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

struct CheckRecord {
  std::string name;
  std::string anchor;
  /// null when the check only reports a value.
  nlohmann::json predicted;
  nlohmann::json computed;
  bool pass = true;
};

/// predicted = null gives an unasserted record; otherwise pass is
/// predicted == computed.
CheckRecord make_check(std::string name, std::string anchor, nlohmann::json predicted, nlohmann::json computed);

struct ReportEnvelope {
  std::string tool_version = kToolVersion;
  JobConfig config;
  std::vector<CheckRecord> checks;
  std::vector<std::pair<std::string, double>> timings;
  nlohmann::json cache = {{"dir", nullptr}};

  bool all_pass() const;
  /// Every asserted record has pass == (predicted == computed) and every
  /// unasserted record passes.
  bool consistent() const;
  const CheckRecord* find(const std::string& name) const;
  /// Timings are emitted only when config.timings is set.
  nlohmann::json to_json() const;
  std::string to_text() const;
  /// to_json().dump(2) or to_text() per config.format, newline-terminated.
  std::string render() const;
};

struct TableCell {
  std::string type;  // type_label of the type
  std::int64_t count = 0;
  std::int64_t dim = 0;
};

/// Counts and dimensions of the regular irreducibles of GL2(o_l), l >= 2, by
/// type (cuspidal, split non-semisimple, split semisimple).
std::vector<TableCell> gl2_regular_table(std::int64_t q, int ell);
/// Same for SL2(o_l); the formulas are integral only for odd q, so even q
/// throws Unsupported.
std::vector<TableCell> sl2_regular_table(std::int64_t q, int ell);
/// (q^2 - 1)(q - 1) q^(3l - 3)
std::int64_t gl2_dim_sum_closed_form(std::int64_t q, int ell);
/// (q^2 - 1)(q + 1) q^(2l - 3)
std::int64_t sl2_dim_sum_closed_form(std::int64_t q, int ell);
/// The SL2 index as printed with the table: (q^2 - 1) q^(2l - 4). The value
/// from group orders is (q^2 - 1) q^(2l - 2).
std::int64_t sl2_printed_index(std::int64_t q, int ell);

}  // namespace ggr
