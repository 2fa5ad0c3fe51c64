#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hkgeom/curvature.hpp"
#include "hkgeom/error.hpp"
#include "hkgeom/harness.hpp"
#include "hkgeom/ma_jet.hpp"

namespace {

constexpr int kUsageError = 2;

bool write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  hk::SuiteConfig config;

  // --tol.KEY=VAL does not fit CLI11's option model; strip those first.
  std::vector<std::string> rest;
  std::vector<std::pair<std::string, std::string>> tol_flags;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--tol.", 0) == 0) {
      const auto eq = arg.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: expected --tol.KEY=VALUE, got '" << arg << "'\n";
        return kUsageError;
      }
      tol_flags.emplace_back(arg.substr(2, eq - 2), arg.substr(eq + 1));
    } else {
      rest.push_back(arg);
    }
  }

  CLI::App app{"Verification suites for adapted complex structures, Kähler curvature and Nahm gauge theory"};
  std::string suite = "all", context, config_path, out_dir, format = "json", dump_jet, dump_curvature;
  int grid = 0, steps = 0;
  std::uint64_t seed = 0;
  bool timing = false, list = false;
  app.add_option("--suite", suite, "Suite to run (or 'all')");
  app.add_option("--context", context, "Lie algebra context (su2, su2_u1, su3, su3_u2, so3, so4, t1, t2)");
  app.add_option("--grid", grid, "Grid intervals for path-space suites")->check(CLI::PositiveNumber);
  app.add_option("--steps", steps, "RK4 steps for roundtrip suites")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  app.add_option("--config", config_path, "Configuration file with [general] and per-suite sections");
  app.add_option("--out", out_dir, "Directory for the report and auxiliary tables");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timing", timing, "Record wall-clock milliseconds (reports are then not reproducible)");
  app.add_flag("--list", list, "List suite names and exit");
  app.add_option("--dump-jet", dump_jet, "Print the degree-4 potential for a named curvature tensor as JSON");
  app.add_option("--dump-curvature", dump_curvature, "Print a named curvature tensor as JSON");

  std::vector<std::string> reversed(rest.rbegin(), rest.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (list) {
      for (const auto& s : hk::suite_names()) std::cout << s << '\n';
      return 0;
    }
    if (!dump_curvature.empty()) {
      std::cout << hk::curvature_to_json(hk::named_curvature(dump_curvature)) << '\n';
      return 0;
    }
    if (!dump_jet.empty()) {
      std::cout << hk::jet_to_json(hk::potential_expansion(hk::named_curvature(dump_jet))) << '\n';
      return 0;
    }

    // Flags outrank the config file, so record them as pinned before reading it.
    config.suite = suite;
    if (!context.empty()) {
      hk::apply_setting(config, "context", context);
      config.pinned.insert("context");
    }
    if (grid > 0) {
      config.grid = grid;
      config.pinned.insert("grid");
    }
    if (steps > 0) {
      config.steps = steps;
      config.pinned.insert("steps");
    }
    if (*seed_opt) {
      config.seed = seed;
      config.pinned.insert("seed");
    }
    if (timing) {
      config.timing = true;
      config.pinned.insert("timing");
    }
    for (const auto& [k, v] : tol_flags) {
      hk::apply_setting(config, k, v);
      config.pinned.insert(k);
    }
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return kUsageError;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      hk::parse_config_text(ss.str(), config);
    }

    const auto records = hk::run_suite(config);
    const std::string report = format == "json" ? hk::report_json(records) : hk::report_csv(records);
    if (out_dir.empty()) {
      std::cout << report;
    } else {
      namespace fs = std::filesystem;
      fs::create_directories(out_dir);
      bool ok = write_file(fs::path(out_dir) / ("report." + format), report);
      for (const auto& [name, text] : hk::suite_tables(config)) ok = write_file(fs::path(out_dir) / name, text) && ok;
      if (!ok) {
        std::cerr << "error: could not write into '" << out_dir << "'\n";
        return kUsageError;
      }
    }
    int passed = 0, failed = 0;
    for (const auto& r : records) (r.status == "fail" ? failed : passed)++;
    std::cerr << passed << " passed, " << failed << " failed\n";
    return hk::exit_code(records);
  } catch (const hk::GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool usage = e.kind() == hk::ErrorKind::UnknownSuite || e.kind() == hk::ErrorKind::ConfigParseError ||
                       e.kind() == hk::ErrorKind::MalformedInput;
    return usage ? kUsageError : 1;
  }
}
