#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace testing;
using nlohmann::json;

namespace {

std::string error_text(const json& doc) {
  try {
    validate_system(parse_system(doc));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("malformed system documents name the offending field") {
  auto text = [](const char* doc) { return error_text(json::parse(doc)); };
  CHECK(text(R"({"allowed": [], "labels": {}})").find("'alphabet'") != std::string::npos);
  CHECK(text(R"({"alphabet": ["a"], "labels": {"a": "0"}})").find("'allowed'") != std::string::npos);
  CHECK(text(R"({"alphabet": ["a"], "allowed": [["a", "a"]]})").find("'labels'") != std::string::npos);
  CHECK(text(R"({"alphabet": ["a"], "allowed": [["a"]], "labels": {"a": "0"}})").find("pair") != std::string::npos);
  CHECK(text(R"({"alphabet": ["a"], "allowed": [["a", "a"]], "labels": {"a": 3}})").find("labels.a") !=
        std::string::npos);
  CHECK(code_of([] { parse_system(json::array()); }) == ErrorCode::MalformedInput);
}

TEST_CASE("parsed fixtures round-trip through validation") {
  for (const auto& name : fixture_names()) {
    const json doc = read_json_file(std::string(GIBBSLOSS_FIXTURE_DIR) + "/" + name + ".json");
    const RawSystem raw = parse_system(doc);
    const System s = validate_system(raw);
    CHECK(s.size() == raw.alphabet.size());
    CHECK(s.edge_count() == raw.allowed.size());
  }
}

TEST_CASE("measure documents") {
  const System s = fixture("FIG2");
  const json good = json::parse(R"({"matrix": {"e": {"e": 0.5, "f": 0.5}, "f": {"g": 1.0}, "g": {"e": 0.5, "f": 0.5}}})");
  CHECK(validate_markov(s, parse_measure(good)).fully_supported);

  json unknown = good;
  unknown["matrix"]["z"] = json::parse(R"({"e": 1.0})");
  CHECK(code_of([&] { validate_markov(s, parse_measure(unknown)); }) == ErrorCode::UnknownSymbolInRelation);

  json with_initial = good;
  with_initial["initial"] = json::parse(R"({"e": 0.5, "f": 0.25, "g": 0.25})");
  CHECK(code_of([&] { validate_markov(s, parse_measure(with_initial)); }) == ErrorCode::NotInvariant);

  json partial = good;
  partial["matrix"]["e"] = json::parse(R"({"f": 1.0})");
  partial["fully_supported"] = true;
  CHECK(code_of([&] { validate_markov(s, parse_measure(partial)); }) == ErrorCode::SupportViolation);

  CHECK(code_of([] { parse_measure(json::parse(R"({"matrix": 3})")); }) == ErrorCode::MalformedInput);
}

TEST_CASE("file errors") {
  CHECK(code_of([] { load_system("/nonexistent/system.json"); }) == ErrorCode::FileNotFound);
  const auto path = std::filesystem::temp_directory_path() / "gibbsloss_io_test.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  try {
    load_system(path);
    FAIL("expected MalformedInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedInput);
    CHECK(std::string(e.what()).find(path.string()) != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("error codes have stable names") {
  CHECK(to_string(ErrorCode::FileNotFound) == "FileNotFound");
  CHECK(to_string(ErrorCode::EmptyAfterTrim) == "EmptyAfterTrim");
  const Error e(ErrorCode::TooShort, "word too short");
  CHECK(e.detail() == "word too short");
  CHECK(std::string(e.what()).find("TooShort") == 0);
}

}  // TEST_SUITE
