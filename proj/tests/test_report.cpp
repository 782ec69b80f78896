#include <sstream>

#include "gibbsloss/report.hpp"
#include "support.hpp"

using namespace testing;

namespace {

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("FNV-1a 64 reference vectors") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("format names") {
  CHECK(parse_format("text") == Format::Text);
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(code_of([] { parse_format("xml"); }) == ErrorCode::UnsupportedFormat);
  CHECK(to_string(Format::Csv) == "csv");
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(3) == "3");
  CHECK(format_number(1.0 / 3) == "0.3333333333333333");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("metadata records tool, inputs and config") {
  const nlohmann::json meta =
      run_metadata("depth", {{"system", "FIG1.json", fnv1a64_hex("x")}}, nlohmann::json{{"word", "b a b"}});
  CHECK(meta["tool"] == "gibbsloss");
  CHECK(meta["version"] == "0.1.0");
  CHECK(meta["command"] == "depth");
  REQUIRE(meta["inputs"].size() == 1);
  CHECK(meta["inputs"][0]["role"] == "system");
  CHECK(meta["inputs"][0]["fnv1a64"] == fnv1a64_hex("x"));
  CHECK(meta["config"]["word"] == "b a b");
}

TEST_CASE("JSON output is canonical and deterministic") {
  const System s = fixture("FIG1");
  const Report a = class_report(s, periodic_classes(s, labels(s, "a"), Side::Right));
  const Report b = class_report(s, periodic_classes(s, labels(s, "a"), Side::Right));
  const std::string ja = emit_report(a, Format::Json);
  CHECK(ja == emit_report(b, Format::Json));
  const auto doc = nlohmann::json::parse(ja);
  CHECK(doc["kind"] == "classes");
  CHECK(doc.contains("metadata"));
  CHECK(doc.contains("result"));
  // Sorted keys: "kind" < "metadata" < "result".
  CHECK(ja.find("\"kind\"") < ja.find("\"metadata\""));
  CHECK(ja.find("\"metadata\"") < ja.find("\"result\""));
  CHECK(doc.dump(2) == ja.substr(0, ja.find_last_not_of('\n') + 1));
}

TEST_CASE("CSV is only available for series") {
  const System s = fixture("FIG2");
  CHECK(code_of([&] { emit_report(system_report(s), Format::Csv); }) == ErrorCode::UnsupportedFormat);

  DiagnoseOptions options;
  options.n_max = 12;
  const ObstructionReport obs = obstruction_diagnose(s, fixture_measure(s, "fig2_p05"), labels(s, "0"), options);
  Report r = obstruction_report(s, obs);
  r.metadata = run_metadata("gibbs-diagnose", {}, nlohmann::json::object());
  const auto rows = lines_of(emit_report(r, Format::Csv));
  REQUIRE(rows.size() >= 3);
  CHECK(rows[0].rfind("# ", 0) == 0);
  CHECK(nlohmann::json::parse(rows[0].substr(2))["tool"] == "gibbsloss");
  CHECK(rows[1] == "n,residue,cylinder_log_measure,ratio");
  CHECK(rows[2].rfind("1,1,", 0) == 0);
  CHECK(rows[2].substr(rows[2].rfind(',') + 1) == "0.75");
}

TEST_CASE("text tables are aligned") {
  Report r;
  r.kind = "demo";
  r.summary = {{"alpha", "1"}, {"longer key", "2"}};
  r.tables.push_back(Table{"rows", {"x", "value"}, {{"1", "a"}, {"22", "bbb"}}});
  const auto out = lines_of(emit_report(r, Format::Text));
  CHECK(first_line(emit_report(r, Format::Text)) == "demo");
  bool saw_alpha = false, saw_header = false;
  for (const auto& line : out) {
    if (line == "alpha       1") saw_alpha = true;
    if (line == "  x   value") saw_header = true;
  }
  CHECK(saw_alpha);
  CHECK(saw_header);
}

TEST_CASE("property reports carry every verdict") {
  const System s = fixture("FIG4");
  std::vector<PropertyVerdict> verdicts{nearly_fiber_mixing_verdict(s), eresolving_check(s, Side::Right)};
  const Report r = property_report(s, verdicts, continuing_diagnosis(s, 3));
  const auto doc = nlohmann::json::parse(emit_report(r, Format::Json));
  CHECK(doc["result"]["verdicts"].size() == 2);
  CHECK(doc["result"]["verdicts"][0]["status"] == "holds");
  CHECK(doc["result"].contains("degree_battery"));
  CHECK(to_json(verdicts[1])["property"] == "right-eresolving");
}

}  // TEST_SUITE
