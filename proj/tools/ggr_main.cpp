#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ggr/cache.hpp"
#include "ggr/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gelfand-Graev multiplicity and regular-representation checks for GL_n / SL_n over finite local rings"};
  app.require_subcommand(1);
  ggr::JobConfig config;
  std::string a_text = "1";
  bool all_units = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--ring", config.ring, "mixed:p^l (Z/p^l) or equal:q^l (F_q[t]/t^l)")->required();
    sub->add_option("--threads", config.threads, "worker threads for streaming sums")->check(CLI::PositiveNumber);
    sub->add_option("--cache-dir", config.cache_dir, "cache directory (default: $" + std::string(ggr::kCacheDirEnv) + ")");
    sub->add_option("--out", config.out, "write the report to this file instead of stdout");
    sub->add_option("--format", config.format, "report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--table-cap", config.table_cap, "largest group enumerated into a table")->check(CLI::PositiveNumber);
    sub->add_option("--chartab-cap", config.chartab_cap, "largest group given a character table")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timings", config.timings, "include phase timings in the report");
  };
  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group", config.group, "GL<n> or SL<n>")->required();
  };

  auto* verify = app.add_subcommand("verify", "compare <Ind theta_a, Ind theta_a> and dim with the predicted counts");
  add_group(verify);
  add_common(verify);
  verify->add_option("--a", a_text, "unit code, or 'all'");
  verify->add_flag("--all-units", all_units, "run every unit a");

  auto* tables = app.add_subcommand("gl2-sl2-tables", "evaluate the GL2/SL2 regular-representation tables");
  add_common(tables);

  auto* branching = app.add_subcommand("branching", "GL -> SL restriction norms (GL) or special-regular scan (SL)");
  add_group(branching);
  add_common(branching);

  auto* chartab = app.add_subcommand("chartab", "build, cache and check the character table");
  add_group(chartab);
  add_common(chartab);

  auto* classes = app.add_subcommand("classes", "build and summarize the conjugacy classes");
  add_group(classes);
  add_common(classes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ggr::kExitCap;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  if (a_text == "all") {
    config.all_units = true;
  } else if (all_units) {
    config.all_units = true;
  } else {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(a_text, &used);
      if (used != a_text.size()) throw std::invalid_argument(a_text);
      config.a = static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      std::cerr << "ggr: --a expects a unit code or 'all', got '" << a_text << "'\n";
      return ggr::kExitCap;
    }
  }
  if (config.subcommand != "verify") config.a.reset();
  if (config.cache_dir.empty())
    if (auto d = ggr::default_cache_dir()) config.cache_dir = d->string();

  const auto result = ggr::run_job(config);
  if (!result.report) {
    std::cerr << "ggr: " << result.diagnostic << "\n";
    return result.exit_code;
  }
  const std::string text = result.report->render();
  if (config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.out, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
      std::cerr << "ggr: cannot write " << config.out << "\n";
      return ggr::kExitCap;
    }
  }
  return result.exit_code;
}
