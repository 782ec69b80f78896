#include "gibbsloss/io.hpp"

#include <fstream>
#include <sstream>

namespace gibbsloss {

namespace {

[[noreturn]] void malformed(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::MalformedInput, "field '" + field + "': " + what);
}

double probability(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) malformed(field, "expected a number");
  return v.get<double>();
}

}  // namespace

RawSystem parse_system(const nlohmann::json& doc) {
  if (!doc.is_object()) malformed("<root>", "expected an object");
  RawSystem raw;

  if (!doc.contains("alphabet") || !doc["alphabet"].is_array()) malformed("alphabet", "expected an array of names");
  for (const auto& s : doc["alphabet"]) {
    if (!s.is_string()) malformed("alphabet", "symbol names must be strings");
    raw.alphabet.push_back(s.get<std::string>());
  }

  if (!doc.contains("allowed") || !doc["allowed"].is_array()) malformed("allowed", "expected an array of pairs");
  for (const auto& pair : doc["allowed"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      malformed("allowed", "each entry must be a pair of symbol names");
    raw.allowed.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }

  if (!doc.contains("labels") || !doc["labels"].is_object()) malformed("labels", "expected an object");
  for (const auto& [sym, lab] : doc["labels"].items()) {
    if (!lab.is_string()) malformed("labels." + sym, "label must be a string");
    raw.labels[sym] = lab.get<std::string>();
  }
  return raw;
}

RawMeasure parse_measure(const nlohmann::json& doc) {
  if (!doc.is_object()) malformed("<root>", "expected an object");
  RawMeasure raw;
  if (!doc.contains("matrix") || !doc["matrix"].is_object()) malformed("matrix", "expected an object of rows");
  for (const auto& [from, row] : doc["matrix"].items()) {
    if (!row.is_object()) malformed("matrix." + from, "expected an object");
    for (const auto& [to, v] : row.items()) raw.matrix[from][to] = probability(v, "matrix." + from + "." + to);
  }
  if (doc.contains("initial")) {
    if (!doc["initial"].is_object()) malformed("initial", "expected an object");
    raw.initial.emplace();
    for (const auto& [sym, v] : doc["initial"].items()) (*raw.initial)[sym] = probability(v, "initial." + sym);
  }
  if (doc.contains("fully_supported")) {
    if (!doc["fully_supported"].is_boolean()) malformed("fully_supported", "expected a boolean");
    raw.fully_supported = doc["fully_supported"].get<bool>();
  }
  return raw;
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  const std::string bytes = read_file_bytes(path);
  try {
    return nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
}

System load_system(const std::filesystem::path& path) {
  try {
    return validate_system(parse_system(read_json_file(path)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FileNotFound) throw;
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

MarkovMeasure load_measure(const System& system, const std::filesystem::path& path) {
  try {
    return validate_markov(system, parse_measure(read_json_file(path)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FileNotFound) throw;
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace gibbsloss
