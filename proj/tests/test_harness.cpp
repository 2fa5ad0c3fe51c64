#include <doctest.h>

#include <functional>

#include "hkgeom/error.hpp"
#include "hkgeom/harness.hpp"

using namespace hk;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected a GeometryError");
  return ErrorKind::MalformedInput;
}

}  // namespace

TEST_CASE("config parsing and precedence") {
  SuiteConfig c;
  parse_config_text("# defaults\ngrid = 500\nseed=7\ntol.flat = 1e-10\n[nahm-gauge]\ngrid=64\n", c);
  CHECK(c.grid == 500);
  CHECK(c.seed == 7u);
  CHECK(c.tolerance("flat", 1.0) == 1e-10);
  CHECK(c.tolerance("missing", 3.0) == 3.0);
  CHECK(c.sections.at("nahm-gauge").at("grid") == "64");

  SuiteConfig pinned;
  pinned.grid = 100;
  pinned.pinned.insert("grid");
  parse_config_text("grid=900\nsteps=300\n", pinned);
  CHECK(pinned.grid == 100);
  CHECK(pinned.steps == 300);

  SuiteConfig bad;
  CHECK(kind_of([&] { parse_config_text("grid=-3\n", bad); }) == ErrorKind::ConfigParseError);
  CHECK(kind_of([&] { parse_config_text("grid=abc\n", bad); }) == ErrorKind::ConfigParseError);
  CHECK(kind_of([&] { parse_config_text("nonsense\n", bad); }) == ErrorKind::ConfigParseError);
  CHECK(kind_of([&] { parse_config_text("[no-such-suite]\n", bad); }) == ErrorKind::ConfigParseError);
  CHECK(kind_of([&] { apply_setting(bad, "colour", "red"); }) == ErrorKind::ConfigParseError);
}

TEST_CASE("suite selection and reports") {
  SuiteConfig c;
  c.suite = "no-such-suite";
  CHECK(kind_of([&] { run_suite(c); }) == ErrorKind::UnknownSuite);
  c.suite = "kahler-curvature";
  c.context = "not-a-context";
  CHECK_THROWS_AS(run_suite(c), GeometryError);

  c.context = "su2_u1";
  const auto first = run_suite(c);
  const auto second = run_suite(c);
  CHECK(!first.empty());
  CHECK(report_json(first) == report_json(second));
  CHECK(report_csv(first) == report_csv(second));
  CHECK(exit_code(first) == 0);
  for (const auto& r : first) {
    CHECK(r.suite == "kahler-curvature");
    CHECK(r.status == "pass");
    CHECK(r.ms == 0);
  }
  CHECK(report_csv(first).rfind("suite,case,status,metric,tol,ms,note\n", 0) == 0);

  auto failing = first;
  failing.front().status = "fail";
  CHECK(exit_code(failing) == 1);

  const auto tables = suite_tables(c);
  CHECK(tables.count("kahler_curvature_s2.csv") == 1u);
  CHECK(tables.count("ma_residual_vs_eps.csv") == 0u);
}

TEST_CASE("ma-expansion suite passes with defaults") {
  SuiteConfig c;
  c.suite = "ma-expansion";
  for (const auto& r : run_suite(c)) CHECK_MESSAGE(r.status == "pass", r.case_id);
}
