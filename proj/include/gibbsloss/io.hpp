#pragma once

// JSON readers for system and measure descriptions.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gibbsloss/markov.hpp"
#include "gibbsloss/shift_space.hpp"

namespace gibbsloss {

/// Parses {"alphabet": [...], "allowed": [[a, b], ...], "labels": {a: l, ...}}.
/// Structural problems raise MalformedInput naming the offending field.
RawSystem parse_system(const nlohmann::json& doc);

/// Parses {"matrix": {a: {b: p}}, "initial": {a: p}?, "fully_supported": bool?}.
RawMeasure parse_measure(const nlohmann::json& doc);

/// Reads a file as JSON; FileNotFound if it cannot be opened, MalformedInput on syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

System load_system(const std::filesystem::path& path);
MarkovMeasure load_measure(const System& system, const std::filesystem::path& path);

std::string read_file_bytes(const std::filesystem::path& path);

}  // namespace gibbsloss
