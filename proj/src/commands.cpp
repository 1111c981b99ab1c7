#include "ggr/commands.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "ggr/character_table.hpp"
#include "ggr/errors.hpp"
#include "ggr/whittaker.hpp"

namespace ggr {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::optional<std::filesystem::path> cache_path(const JobConfig& c) {
  if (c.cache_dir.empty()) return std::nullopt;
  return std::filesystem::path(c.cache_dir);
}

/// Every report opens with the ring and the F_q modulus in use, so that
/// element codes in the report can be read back.
ReportEnvelope start(const JobConfig& c, const Ring& ring) {
  ReportEnvelope r;
  r.config = c;
  r.cache = json::object();
  r.cache["dir"] = c.cache_dir.empty() ? json(nullptr) : json(c.cache_dir);
  r.checks.push_back(make_check("ring", "o_l and the modulus fixed for its residue field", nullptr,
                                {{"ring", ring.to_string()},
                                 {"q", ring.q()},
                                 {"l", ring.ell()},
                                 {"residue_field_modulus", ring.residue_field().modulus_string()}}));
  return r;
}

struct Tables {
  std::shared_ptr<const GroupTable> table;
  std::optional<CharTable> ct;
};

/// Group table and, unless only_classes, the character table; both through
/// the cache when one is configured. Cache provenance goes into the report.
Tables load_tables(const GroupSpec& spec, const JobConfig& c, ReportEnvelope& rep, const std::string& prefix) {
  const auto dir = cache_path(c);
  if (spec.order() > c.chartab_cap)
    throw CapExceeded(spec.name() + ": order " + std::to_string(spec.order()) + " exceeds the character-table cap " +
                      std::to_string(c.chartab_cap));
  auto t0 = Clock::now();
  Tables out;
  out.table = std::make_shared<const GroupTable>(GroupTable::build(spec, c.table_cap, dir));
  rep.timings.emplace_back(prefix + "group_table", seconds_since(t0));
  if (dir) rep.cache[prefix + "group_table"] = out.table->loaded_from_cache() ? "hit" : "miss";

  t0 = Clock::now();
  auto classes = conjugacy_classes(out.table);
  rep.timings.emplace_back(prefix + "classes", seconds_since(t0));

  t0 = Clock::now();
  if (dir) out.ct = load_char_table(classes, *dir);
  if (dir) rep.cache[prefix + "char_table"] = out.ct ? "hit" : "miss";
  if (!out.ct) {
    CharTableOptions opt;
    opt.cap = c.chartab_cap;
    out.ct = character_table(classes, opt);
    if (dir) save_char_table(*out.ct, *dir);
  }
  rep.timings.emplace_back(prefix + "char_table", seconds_since(t0));
  return out;
}

json multiset(const std::vector<std::int64_t>& values) {
  std::map<std::int64_t, std::int64_t> m;
  for (auto v : values) ++m[v];
  json out = json::array();
  for (const auto& [v, k] : m) out.push_back({{"value", v}, {"count", k}});
  return out;
}

/// One value when all agree, otherwise the sorted distinct values.
json uniform_or_list(const std::vector<std::int64_t>& values) {
  std::set<std::int64_t> s(values.begin(), values.end());
  if (s.size() == 1) return *s.begin();
  return json(std::vector<std::int64_t>(s.begin(), s.end()));
}

bool tame(const GroupSpec& spec) { return spec.ring.p() != 2 && spec.n % spec.ring.p() != 0; }

std::vector<Elem> selected_units(const JobConfig& c, const Ring& R) {
  if (c.all_units) return R.units();
  const Elem a = c.a.value_or(1);
  if (a >= R.size() || !R.is_unit(a)) throw InvalidArgument("--a " + std::to_string(a) + " is not a unit of " + R.to_string());
  return {a};
}

void add_printed_index_record(ReportEnvelope& rep, const GroupSpec& spec, const std::string& name) {
  const auto q = spec.ring.q();
  const int ell = spec.ring.ell();
  const auto printed = sl2_printed_index(q, ell);
  const auto index = static_cast<std::int64_t>(spec.order() / spec.unipotent_order(0));
  rep.checks.push_back(make_check(name, "SL2 index [SL2:U] as printed beside the SL2 table, (q^2-1) q^(2l-4)", nullptr,
                                  {{"printed", printed}, {"from_group_orders", index}, {"consistent", printed == index}}));
}

}  // namespace

ReportEnvelope cmd_verify(const JobConfig& c) {
  const GroupSpec spec = GroupSpec::parse(c.group, c.ring);
  ReportEnvelope rep = start(c, spec.ring);
  const auto units = selected_units(c, spec.ring);
  bool order_checked = false;
  for (Elem a : units) {
    const auto t0 = Clock::now();
    const auto v = verify_multiplicity_one(spec, a, c.threads);
    const std::string tag = "[a=" + spec.ring.format(a) + "]";
    rep.timings.emplace_back("verify" + tag, seconds_since(t0));
    if (!order_checked) {
      rep.checks.push_back(make_check("group_order", "|G| from streaming enumeration vs closed form", spec.order(),
                                      v.enumerated_order));
      order_checked = true;
    }
    rep.checks.push_back(make_check("induced_dim" + tag,
                                    v.predicted_dim_sum ? "dim Ind_U^G theta_a vs q^(dm)|G(o_m)| dimension-sum formula"
                                                        : "dim Ind_U^G theta_a vs [G:U] from group orders",
                                    v.predicted_dim_sum ? json(*v.predicted_dim_sum) : json(v.index), v.ind_dim));
    if (v.predicted_regular_count) {
      rep.checks.push_back(make_check("induced_norm" + tag,
                                      "<Ind theta_a, Ind theta_a> vs sum of |C_G(o_m)(x)| over a-regular classes x",
                                      *v.predicted_regular_count, v.ind_norm));
    } else {
      rep.checks.push_back(make_check("induced_norm" + tag, "<Ind theta_a, Ind theta_a> (no count prediction)", nullptr,
                                      v.ind_norm));
      rep.checks.push_back(make_check("norm_bounds" + tag, "0 < <Ind theta_a, Ind theta_a> <= dim Ind theta_a", true,
                                      v.ind_norm > 0 && static_cast<std::uint64_t>(v.ind_norm) <= v.ind_dim));
      rep.checks.push_back(make_check("prediction_refused" + tag, "reason the regular-count prediction was not made",
                                      nullptr, v.prediction_note));
    }
  }
  if (spec.family == Family::SL && spec.n == 2 && spec.ring.ell() >= 2)
    add_printed_index_record(rep, spec, "sl2_printed_index");
  return rep;
}

ReportEnvelope cmd_tables(const JobConfig& c) {
  const Ring R = Ring::parse(c.ring);
  const auto q = static_cast<std::int64_t>(R.q());
  const int ell = R.ell();
  if (ell < 2) throw InvalidArgument("gl2-sl2-tables: needs l >= 2");
  ReportEnvelope rep = start(c, R);

  auto section = [&](Family fam, const std::string& key, const std::vector<TableCell>& cells) {
    const GroupSpec spec(fam, 2, R);
    std::optional<Tables> tabs;
    std::string mode = "cross-checked against the character table";
    if (spec.order() <= c.chartab_cap) {
      tabs = load_tables(spec, c, rep, key + ".");
    } else {
      mode = "formula-only: |G| = " + std::to_string(spec.order()) + " exceeds the character-table cap";
    }
    rep.checks.push_back(make_check(key + ".mode", "how the table cells were checked", nullptr, mode));
    std::map<std::string, std::vector<std::int64_t>> degrees_by_type;
    if (tabs) {
      const auto info = classify_regular(*tabs->ct);
      for (std::size_t i = 0; i < info.size(); ++i)
        if (info[i].regular) degrees_by_type[info[i].label].push_back(tabs->ct->degrees[i]);
    }
    for (const auto& cell : cells) {
      const std::string name = key + "." + cell.type;
      if (tabs) {
        const auto& d = degrees_by_type[cell.type];
        rep.checks.push_back(make_check(name + ".count", "number of regular irreducibles of this type",
                                        cell.count, static_cast<std::int64_t>(d.size())));
        rep.checks.push_back(make_check(name + ".dim", "dimension of the regular irreducibles of this type", cell.dim,
                                        d.empty() ? json(nullptr) : uniform_or_list(d)));
      } else {
        rep.checks.push_back(make_check(name + ".count", "number of regular irreducibles of this type (formula)",
                                        nullptr, cell.count));
        rep.checks.push_back(make_check(name + ".dim", "dimension of the regular irreducibles of this type (formula)",
                                        nullptr, cell.dim));
      }
    }
    if (tabs) {
      std::int64_t other = 0;
      for (const auto& [type, d] : degrees_by_type)
        if (type != "cuspidal" && type != "split non-semisimple" && type != "split semisimple") other += d.size();
      rep.checks.push_back(make_check(key + ".unlabelled_regular", "regular irreducibles outside the three types", 0, other));
    }
    std::int64_t sum = 0;
    for (const auto& cell : cells) sum += cell.count * cell.dim;
    return std::pair{spec, sum};
  };

  const auto [gl, gl_sum] = section(Family::GL, "gl2", gl2_regular_table(q, ell));
  rep.checks.push_back(make_check("gl2.dim_sum", "sum of dims over the table = (q^2-1)(q-1)q^(3l-3)",
                                  gl2_dim_sum_closed_form(q, ell), gl_sum));
  rep.checks.push_back(make_check("gl2.index", "(q^2-1)(q-1)q^(3l-3) = [GL2:U] from group orders",
                                  gl2_dim_sum_closed_form(q, ell),
                                  static_cast<std::int64_t>(gl.order() / gl.unipotent_order(0))));

  if (q % 2 == 0) {
    rep.checks.push_back(make_check("sl2.mode", "how the table cells were checked", nullptr,
                                    "skipped: the SL2 formulas are integral only for odd q"));
    return rep;
  }
  const auto [sl, sl_sum] = section(Family::SL, "sl2", sl2_regular_table(q, ell));
  const auto sl_index = static_cast<std::int64_t>(sl.order() / sl.unipotent_order(0));
  rep.checks.push_back(make_check("sl2.dim_sum", "sum of dims over the table = (q^2-1)(q+1)q^(2l-3)",
                                  sl2_dim_sum_closed_form(q, ell), sl_sum));
  rep.checks.push_back(make_check("sl2.dim_sum_exceeds_index", "SL2 dim sum strictly exceeds [SL2:U]", true,
                                  sl_sum > sl_index));
  add_printed_index_record(rep, sl, "sl2.printed_index");
  return rep;
}

ReportEnvelope cmd_branching(const JobConfig& c) {
  const GroupSpec spec = GroupSpec::parse(c.group, c.ring);
  if (spec.ring.ell() < 2) throw InvalidArgument("branching: needs l >= 2");
  ReportEnvelope rep = start(c, spec.ring);
  const bool assert_iota = tame(spec);
  const int q = spec.ring.q();
  const auto tabs = load_tables(spec, c, rep, "");
  const auto& ct = *tabs.ct;
  const auto t0 = Clock::now();
  const auto info = classify_regular(ct);

  if (spec.family == Family::GL) {
    std::map<TypeMatrix, std::vector<std::int64_t>> norms;
    bool within_n = true;
    for (std::size_t i = 0; i < info.size(); ++i) {
      if (!info[i].regular) continue;
      const auto nrm = restriction_norm(ct, i);
      within_n = within_n && nrm >= 1 && nrm <= spec.n;
      norms[*info[i].type].push_back(nrm);
    }
    for (const auto& [tau, v] : norms) {
      const std::string label = type_label(tau);
      rep.checks.push_back(make_check("branching.count[" + label + "]", "regular GL irreducibles of this type", nullptr,
                                      static_cast<std::int64_t>(v.size())));
      rep.checks.push_back(make_check("branching.norm[" + label + "]",
                                      assert_iota ? "<Res chi, Res chi>_SL = iota(tau, q-1)"
                                                  : "<Res chi, Res chi>_SL (iota not asserted: p | 2n)",
                                      assert_iota ? json(iota(tau, q - 1)) : json(nullptr), uniform_or_list(v)));
    }
    rep.checks.push_back(make_check("branching.norm_at_most_n", "1 <= <Res chi, Res chi>_SL <= n for every regular chi",
                                    true, within_n));
  } else {
    const auto scan = special_regular_scan(ct);
    const auto units = spec.ring.units();
    std::set<Elem> squares;
    for (Elem u : units) squares.insert(spec.ring.mul(u, u));
    auto is_square_class = [&](const std::vector<Elem>& s) {
      if (s.empty()) return false;
      std::set<Elem> coset;
      for (Elem x : squares) coset.insert(spec.ring.mul(s[0], x));
      return coset == std::set<Elem>(s.begin(), s.end());
    };
    struct Tally {
      std::int64_t regular = 0, all_units = 0, square_class = 0;
    };
    std::map<TypeMatrix, Tally> tally;
    std::int64_t nonregular_present = 0;
    for (std::size_t i = 0; i < info.size(); ++i) {
      if (!info[i].regular) {
        nonregular_present += !scan[i].empty();
        continue;
      }
      auto& t = tally[*info[i].type];
      ++t.regular;
      t.all_units += scan[i].size() == units.size();
      t.square_class += is_square_class(scan[i]);
    }
    for (const auto& [tau, t] : tally) {
      const std::string label = type_label(tau);
      const bool special = iota(tau, q - 1) == 1;
      rep.checks.push_back(make_check("special_regular.count[" + label + "]", "regular SL irreducibles of this type",
                                      nullptr, t.regular));
      rep.checks.push_back(make_check("special_regular.all_units[" + label + "]",
                                      assert_iota ? "constituent of Ind theta_a for every unit a iff iota(tau, q-1) = 1"
                                                  : "constituent of Ind theta_a for every unit a (not asserted: p | 2n)",
                                      assert_iota ? json(special ? t.regular : 0) : json(nullptr), t.all_units));
      if (!special)
        rep.checks.push_back(make_check("special_regular.square_class[" + label + "]",
                                        "units a with a theta_a-model form one class mod squares",
                                        assert_iota ? json(t.regular) : json(nullptr), t.square_class));
    }
    rep.checks.push_back(make_check("special_regular.nonregular_absent",
                                    "non-regular irreducibles never occur in Ind theta_a",
                                    assert_iota ? json(0) : json(nullptr), nonregular_present));
  }
  rep.timings.emplace_back("branching", seconds_since(t0));
  return rep;
}

ReportEnvelope cmd_chartab(const JobConfig& c) {
  const GroupSpec spec = GroupSpec::parse(c.group, c.ring);
  ReportEnvelope rep = start(c, spec.ring);
  const auto tabs = load_tables(spec, c, rep, "");
  const auto& ct = *tabs.ct;
  const auto t0 = Clock::now();
  const auto orth = check_orthogonality(ct);
  rep.timings.emplace_back("orthogonality", seconds_since(t0));
  std::int64_t sq = 0;
  for (auto d : ct.degrees) sq += d * d;
  rep.checks.push_back(make_check("class_count", "conjugacy classes = irreducible characters", nullptr,
                                  static_cast<std::int64_t>(ct.classes.count())));
  rep.checks.push_back(make_check("degree_sum_squares", "sum of deg^2 = |G|", spec.order(), sq));
  rep.checks.push_back(make_check("orthogonality.rows", "row orthogonality, exact", true, orth.rows_ok));
  rep.checks.push_back(make_check("orthogonality.columns", "column orthogonality, exact", true, orth.columns_ok));
  rep.checks.push_back(make_check("degrees_divide_order", "each degree divides |G|", true, orth.degrees_divide));
  rep.checks.push_back(make_check("degrees", "degree multiset", nullptr, multiset(ct.degrees)));
  rep.checks.push_back(make_check("splitting_prime", "prime used to split the class matrices", nullptr, ct.prime));
  return rep;
}

ReportEnvelope cmd_classes(const JobConfig& c) {
  const GroupSpec spec = GroupSpec::parse(c.group, c.ring);
  ReportEnvelope rep = start(c, spec.ring);
  const auto dir = cache_path(c);
  auto t0 = Clock::now();
  auto table = std::make_shared<const GroupTable>(GroupTable::build(spec, c.table_cap, dir));
  rep.timings.emplace_back("group_table", seconds_since(t0));
  if (dir) rep.cache["group_table"] = table->loaded_from_cache() ? "hit" : "miss";
  t0 = Clock::now();
  const auto cd = conjugacy_classes(table);
  rep.timings.emplace_back("classes", seconds_since(t0));
  std::vector<std::int64_t> sizes(cd.sizes.begin(), cd.sizes.end());
  std::int64_t total = 0;
  for (auto s : sizes) total += s;
  std::vector<std::int64_t> orders(cd.orders.begin(), cd.orders.end());
  rep.checks.push_back(make_check("class_count", "number of conjugacy classes", nullptr,
                                  static_cast<std::int64_t>(cd.count())));
  rep.checks.push_back(make_check("class_size_sum", "class sizes sum to |G|", spec.order(), total));
  rep.checks.push_back(make_check("class_sizes", "class size multiset", nullptr, multiset(sizes)));
  rep.checks.push_back(make_check("exponent", "lcm of element orders", nullptr, cd.exponent));
  rep.checks.push_back(make_check("element_orders", "element order per class, as a multiset", nullptr, multiset(orders)));
  return rep;
}

JobResult run_job(const JobConfig& c) {
  JobResult r;
  try {
    c.validate();
    const auto t0 = Clock::now();
    ReportEnvelope rep;
    if (c.subcommand == "verify")
      rep = cmd_verify(c);
    else if (c.subcommand == "gl2-sl2-tables")
      rep = cmd_tables(c);
    else if (c.subcommand == "branching")
      rep = cmd_branching(c);
    else if (c.subcommand == "chartab")
      rep = cmd_chartab(c);
    else
      rep = cmd_classes(c);
    rep.timings.emplace_back("total", seconds_since(t0));
    r.exit_code = rep.all_pass() ? kExitPass : kExitMismatch;
    r.report = std::move(rep);
  } catch (const CapExceeded& e) {
    r.exit_code = kExitCap;
    r.diagnostic = std::string("cap exceeded: ") + e.what();
  } catch (const InvalidArgument& e) {
    r.exit_code = kExitCap;
    r.diagnostic = std::string("invalid configuration: ") + e.what();
  } catch (const Unsupported& e) {
    r.exit_code = kExitCap;
    r.diagnostic = std::string("unsupported: ") + e.what();
  } catch (const InternalFault& e) {
    r.exit_code = kExitInternal;
    r.diagnostic = std::string("internal fault: ") + e.what();
  } catch (const std::exception& e) {
    r.exit_code = kExitInternal;
    r.diagnostic = std::string("error: ") + e.what();
  }
  return r;
}

}  // namespace ggr
