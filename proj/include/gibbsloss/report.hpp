#pragma once

// Rendering of analysis results as text tables, canonical JSON or CSV series.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gibbsloss/classes.hpp"
#include "gibbsloss/depth.hpp"
#include "gibbsloss/diagnose.hpp"
#include "gibbsloss/growth.hpp"
#include "gibbsloss/markov.hpp"
#include "gibbsloss/properties.hpp"

namespace gibbsloss {

inline constexpr std::string_view kToolName = "gibbsloss";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Format { Text, Json, Csv };

/// "text", "json" or "csv"; anything else is UnsupportedFormat.
Format parse_format(std::string_view name);
std::string_view to_string(Format f) noexcept;

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string kind;
  nlohmann::json metadata = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> summary;  // text-mode key/value lines
  std::vector<Table> tables;
  std::optional<Table> series;  // the only payload CSV can carry
};

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

struct InputFile {
  std::string role;
  std::string path;
  std::string digest;
};

nlohmann::json run_metadata(std::string_view command, const std::vector<InputFile>& inputs,
                            const nlohmann::json& config);

/// Text renders summary and tables, JSON is sorted-key canonical, CSV needs a series.
std::string emit_report(const Report& report, Format format);

/// Shortest round-trip decimal for a double ("inf"/"-inf"/"nan" spelled out).
std::string format_number(double x);

nlohmann::json to_json(const System& system, const ClassReport& report);
nlohmann::json to_json(const PropertyVerdict& verdict);
nlohmann::json to_json(const System& system, const ObstructionReport& report);

Report system_report(const System& system);
Report blocks_report(const System& system, int n, Target target, const std::vector<Word>& words);
Report fiber_report(const System& system, const Word& w, const std::vector<Word>& preimages);
Report depth_report(const System& system, const DepthCertificate& cert);
Report tau_report(const System& system, const Word& w, const TauWitness& tau);
Report degree_report(const System& system, const DegreeEstimate& estimate);
Report class_report(const System& system, const ClassReport& report);
Report property_report(const System& system, const std::vector<PropertyVerdict>& verdicts,
                       const std::optional<ContinuingReport>& continuing = std::nullopt);
Report pushforward_report(const System& system, const Word& w, PushMode mode, double value, double log_value);
Report obstruction_report(const System& system, const ObstructionReport& report);
Report tune_report(const System& system, const ClassReport& classes, int c, double target, const TuneResult& tune);

}  // namespace gibbsloss
