#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "stepcat/dp.hpp"
#include "stepcat/gd.hpp"
#include "stepcat/io.hpp"

using namespace stepcat;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("schedule files round-trip bit-exactly") {
  FamilyStore bullet = dom_pp(5);
  const Schedule& h = bullet.schedule(5);
  auto path = temp_file("stepcat_io_roundtrip.json");
  write_schedule_file(h, path);
  Schedule back = read_schedule_file(path);
  CHECK(back.steps() == h.steps());  // bitwise
  CHECK(back.kind() == h.kind());
  CHECK(back.sum() == h.sum());
  REQUIRE(back.construction());
  CHECK(flatten(*back.construction()) == back.steps());
  CHECK(back.construction()->op == ConcatOp::ConPD);

  // writing the reloaded schedule reproduces the same bytes
  auto path2 = temp_file("stepcat_io_roundtrip2.json");
  write_schedule_file(back, path2);
  std::ifstream a(path), b(path2);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);

  // a reloaded schedule passes the same checks as the original
  CHECK(tightness_objective(back).relative_gap <= 1e-10);
  CHECK_NOTHROW(certificate_dominant(back));
}

TEST_CASE("schedule file validation") {
  nlohmann::json j = schedule_to_json(Schedule({1.5}, ScheduleKind::Dominant));
  j["sum"] = 9.0;
  CHECK_THROWS_AS(schedule_from_json(j), std::invalid_argument);

  nlohmann::json j2 = schedule_to_json(Schedule({1.5}, ScheduleKind::Dominant));
  j2["kind"] = "nonsense";
  CHECK_THROWS_AS(schedule_from_json(j2), std::invalid_argument);

  CHECK_THROWS_AS(read_schedule_file(temp_file("stepcat_io_missing.json")), std::runtime_error);
}

TEST_CASE("empty primitive schedule serializes with n = 0 and constant 1") {
  nlohmann::ordered_json j = schedule_to_json(Schedule::empty(ScheduleKind::Primitive));
  CHECK(j["n"] == 0);
  CHECK(j["steps"].empty());
  CHECK(j["sum"] == 0.0);
  CHECK(j["objective_constant"] == 1.0);
  CHECK(j["gradient_constant"].is_null());
  Schedule back = schedule_from_json(j);
  CHECK(back.length() == 0);
  CHECK(back.kind() == ScheduleKind::Primitive);
}

TEST_CASE("gbounded schedule files carry the gradient constant") {
  FamilyStore tri = tri_family(2);
  nlohmann::ordered_json j = schedule_to_json(tri.schedule(2));
  CHECK(j["objective_constant"].is_null());
  CHECK(j["gradient_constant"].get<double>() == doctest::Approx(0.131892).epsilon(1e-5));
  CHECK(j["kind"] == "gbounded");
}

TEST_CASE("table rendering: paper constants at 6 decimals") {
  TableSpec spec;
  spec.metric = TableMetric::Objective;
  spec.rows = {1, 3, 7};
  spec.columns = {kMethodOurs};
  std::string csv = render_table_csv(spec);
  CHECK(csv.find("1,0.250000") != std::string::npos);
  CHECK(csv.find("3,0.085786") != std::string::npos);
  CHECK(csv.find("7,0.032662") != std::string::npos);
  CHECK(render_table_csv(spec) == csv);  // byte-identical re-render

  TableSpec grad;
  grad.metric = TableMetric::Gradient;
  grad.rows = {2};
  grad.columns = {kMethodRotaru};
  CHECK(render_table_csv(grad).find("2,0.133975") != std::string::npos);

  TableSpec big;
  big.metric = TableMetric::Objective;
  big.rows = {511};
  big.columns = {kMethodOurs};
  CHECK(render_table_csv(big).find("511,0.000152") != std::string::npos);
}

TEST_CASE("table rendering: unavailable cells stay empty") {
  TableSpec spec;
  spec.metric = TableMetric::Objective;
  spec.rows = {2, 3};
  spec.columns = {kMethodGrimmer, kMethodOurs};
  std::string csv = render_table_csv(spec);
  // grimmer has no construction at n = 2
  CHECK(csv.find("2,,0.131892") != std::string::npos);
  CHECK(csv.find("3,0.085786,0.085786") != std::string::npos);
  CHECK(csv.find("# empty cells: unavailable") != std::string::npos);
}

TEST_CASE("table rendering: dasgupta column is flagged reference data") {
  TableSpec spec;
  spec.metric = TableMetric::Objective;
  spec.rows = {6, 63};
  spec.columns = {kMethodDasGupta, kMethodOurs};
  std::string csv = render_table_csv(spec);
  CHECK(csv.find("reference (not computed)") != std::string::npos);
  CHECK(csv.find("6,0.040197,0.039086") != std::string::npos);
  CHECK(csv.find("63,,0.002159") != std::string::npos);  // no reference value at 63

  CHECK(dasgupta_reference(6).has_value());
  CHECK(!dasgupta_reference(63).has_value());
}

TEST_CASE("table_cell and JSON rendering") {
  CHECK(*table_cell(TableMetric::Objective, kMethodTeboulle, 1) ==
        doctest::Approx(0.261204).epsilon(1e-5));
  CHECK(!table_cell(TableMetric::Objective, kMethodGrimmer, 2).has_value());

  TableSpec spec;
  spec.metric = TableMetric::Objective;
  spec.rows = {1, 2};
  spec.columns = TableSpec::default_columns(TableMetric::Objective);
  nlohmann::ordered_json j = render_table_json(spec);
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][0]["ours"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(j["rows"][1]["grimmer"].is_null());
}
