#include "ggr/report.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include "ggr/errors.hpp"

namespace ggr {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  if (e < 0) throw InvalidArgument("negative exponent in a table formula");
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void require_table_args(std::int64_t q, int ell) {
  if (q < 2) throw InvalidArgument("table formulas: q must be at least 2");
  if (ell < 2) throw InvalidArgument("table formulas: need l >= 2");
}

const std::set<std::string> kSubcommands = {"verify", "gl2-sl2-tables", "branching", "chartab", "classes"};

}  // namespace

nlohmann::json JobConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["group"] = group;
  j["ring"] = ring;
  j["a"] = a ? nlohmann::json(*a) : nlohmann::json(nullptr);
  j["all_units"] = all_units;
  j["table_cap"] = table_cap;
  j["chartab_cap"] = chartab_cap;
  j["threads"] = threads;
  j["out"] = out;
  j["format"] = format;
  j["cache_dir"] = cache_dir;
  j["timings"] = timings;
  return j;
}

JobConfig JobConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config: expected an object");
  static const std::set<std::string> known = {"subcommand", "group",  "ring",   "a",         "all_units", "table_cap",
                                              "chartab_cap", "threads", "out", "format", "cache_dir", "timings"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw InvalidArgument("config: unknown key '" + k + "'");
  JobConfig c;
  try {
    if (j.contains("subcommand")) c.subcommand = j["subcommand"].get<std::string>();
    if (j.contains("group")) c.group = j["group"].get<std::string>();
    if (j.contains("ring")) c.ring = j["ring"].get<std::string>();
    if (j.contains("a") && !j["a"].is_null()) c.a = j["a"].get<std::uint32_t>();
    if (j.contains("all_units")) c.all_units = j["all_units"].get<bool>();
    if (j.contains("table_cap")) c.table_cap = j["table_cap"].get<std::uint64_t>();
    if (j.contains("chartab_cap")) c.chartab_cap = j["chartab_cap"].get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("cache_dir")) c.cache_dir = j["cache_dir"].get<std::string>();
    if (j.contains("timings")) c.timings = j["timings"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return c;
}

void JobConfig::validate() const {
  if (!kSubcommands.count(subcommand)) throw InvalidArgument("config: unknown subcommand '" + subcommand + "'");
  if (format != "text" && format != "json") throw InvalidArgument("config: format must be text or json");
  if (ring.empty()) throw InvalidArgument("config: --ring is required");
  if (table_cap == 0 || chartab_cap == 0) throw InvalidArgument("config: caps must be positive");
  if (threads < 1) throw InvalidArgument("config: threads must be positive");
}

CheckRecord make_check(std::string name, std::string anchor, nlohmann::json predicted, nlohmann::json computed) {
  CheckRecord r{std::move(name), std::move(anchor), std::move(predicted), std::move(computed), true};
  if (!r.predicted.is_null()) r.pass = r.predicted == r.computed;
  return r;
}

bool ReportEnvelope::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

bool ReportEnvelope::consistent() const {
  for (const auto& c : checks) {
    if (c.predicted.is_null() && !c.pass) return false;
    if (!c.predicted.is_null() && c.pass != (c.predicted == c.computed)) return false;
  }
  return true;
}

const CheckRecord* ReportEnvelope::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::json ReportEnvelope::to_json() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = tool_version;
  j["config"] = config.to_json();
  auto arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"anchor", c.anchor}, {"predicted", c.predicted}, {"computed", c.computed},
                   {"pass", c.pass}});
  j["checks"] = std::move(arr);
  auto t = nlohmann::json::object();
  if (config.timings)
    for (const auto& [k, v] : timings) t[k] = v;
  j["timings"] = std::move(t);
  j["cache"] = cache;
  return j;
}

std::string ReportEnvelope::to_text() const {
  std::ostringstream os;
  os << "ggr " << tool_version << "  " << config.subcommand << "  " << config.group << " over " << config.ring << "\n";
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.predicted.is_null()) os << "  predicted=" << c.predicted.dump();
    os << "  computed=" << c.computed.dump() << "\n";
    os << "     " << c.anchor << "\n";
  }
  if (!cache.empty()) os << "cache: " << cache.dump() << "\n";
  if (config.timings)
    for (const auto& [k, v] : timings) os << "time " << k << ": " << std::fixed << std::setprecision(3) << v << " s\n";
  std::size_t failed = 0;
  for (const auto& c : checks) failed += !c.pass;
  os << (failed ? "RESULT: FAIL (" + std::to_string(failed) + " of " + std::to_string(checks.size()) + " checks)"
                : "RESULT: PASS (" + std::to_string(checks.size()) + " checks)")
     << "\n";
  return os.str();
}

std::string ReportEnvelope::render() const { return config.format == "json" ? to_json().dump(2) + "\n" : to_text(); }

std::vector<TableCell> gl2_regular_table(std::int64_t q, int ell) {
  require_table_args(q, ell);
  return {
      {"cuspidal", (q - 1) * (q * q - 1) * ipow(q, 2 * ell - 3) / 2, ipow(q, ell - 1) * (q - 1)},
      {"split non-semisimple", (q - 1) * ipow(q, 2 * ell - 2), (q * q - 1) * ipow(q, ell - 2)},
      {"split semisimple", ipow(q, 2 * ell - 3) * (q - 1) * (q - 1) * (q - 1) / 2, ipow(q, ell - 1) * (q + 1)},
  };
}

std::vector<TableCell> sl2_regular_table(std::int64_t q, int ell) {
  require_table_args(q, ell);
  if (q % 2 == 0) throw Unsupported("SL2 table formulas need odd q");
  return {
      {"cuspidal", (q * q - 1) * ipow(q, ell - 2) / 2, ipow(q, ell - 1) * (q - 1)},
      {"split non-semisimple", 4 * ipow(q, ell - 1), (q * q - 1) * ipow(q, ell - 2) / 2},
      {"split semisimple", ipow(q, ell - 2) * (q - 1) * (q - 1) / 2, ipow(q, ell - 1) * (q + 1)},
  };
}

std::int64_t gl2_dim_sum_closed_form(std::int64_t q, int ell) {
  require_table_args(q, ell);
  return (q * q - 1) * (q - 1) * ipow(q, 3 * ell - 3);
}

std::int64_t sl2_dim_sum_closed_form(std::int64_t q, int ell) {
  require_table_args(q, ell);
  return (q * q - 1) * (q + 1) * ipow(q, 2 * ell - 3);
}

std::int64_t sl2_printed_index(std::int64_t q, int ell) {
  require_table_args(q, ell);
  return (q * q - 1) * ipow(q, 2 * ell - 4);
}

}  // namespace ggr
