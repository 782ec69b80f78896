#include "gibbsloss/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace gibbsloss {

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw Error(ErrorCode::UnsupportedFormat, "unknown output format '" + std::string(name) + "'");
}

std::string_view to_string(Format f) noexcept {
  switch (f) {
    case Format::Text: return "text";
    case Format::Json: return "json";
    case Format::Csv: return "csv";
  }
  return "text";
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

nlohmann::json run_metadata(std::string_view command, const std::vector<InputFile>& inputs,
                            const nlohmann::json& config) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : inputs) files.push_back({{"role", f.role}, {"path", f.path}, {"fnv1a64", f.digest}});
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"inputs", files}, {"config", config}};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string render_table(const Table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  for (std::size_t j = 0; j < t.header.size(); ++j) width[j] = t.header[j].size();
  for (const auto& row : t.rows)
    for (std::size_t j = 0; j < row.size() && j < width.size(); ++j) width[j] = std::max(width[j], row[j].size());
  std::ostringstream os;
  if (!t.title.empty()) os << t.title << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t j = 0; j < width.size(); ++j) {
      const std::string cell = j < cells.size() ? cells[j] : "";
      s += cell;
      if (j + 1 < width.size()) s += std::string(width[j] - cell.size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << "  " << s << "\n";
  };
  line(t.header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : t.rows) line(row);
  return os.str();
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string sym_list(const Alphabet& alphabet, const std::vector<Symbol>& syms) {
  std::vector<std::string> names;
  for (Symbol s : syms) names.push_back(alphabet.name(s));
  return "{" + join(names, ", ") + "}";
}

nlohmann::json words_json(const Alphabet& alphabet, const std::vector<Word>& words) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : words) out.push_back(format_word(alphabet, w));
  return out;
}

std::string pair_text(const System& system, const EndpointPair& p) {
  return "(" + system.symbols().name(p.first) + ", " + system.symbols().name(p.second) + ")";
}

}  // namespace

std::string emit_report(const Report& report, Format format) {
  switch (format) {
    case Format::Json: {
      const nlohmann::json doc{{"kind", report.kind}, {"metadata", report.metadata}, {"result", report.result}};
      return doc.dump(2) + "\n";
    }
    case Format::Csv: {
      if (!report.series)
        throw Error(ErrorCode::UnsupportedFormat, "csv output is only available for series results");
      std::ostringstream os;
      os << "# " << report.metadata.dump() << "\n";
      os << join(report.series->header, ",") << "\n";
      for (const auto& row : report.series->rows) os << join(row, ",") << "\n";
      return os.str();
    }
    case Format::Text: {
      std::ostringstream os;
      os << report.kind << "\n";
      if (report.metadata.contains("tool"))
        os << "  " << report.metadata["tool"].get<std::string>() << " " << report.metadata["version"].get<std::string>()
           << "\n";
      if (report.metadata.contains("inputs"))
        for (const auto& f : report.metadata["inputs"])
          os << "  " << f["role"].get<std::string>() << ": " << f["path"].get<std::string>() << " ["
             << f["fnv1a64"].get<std::string>() << "]\n";
      if (report.metadata.contains("config")) os << "  config: " << report.metadata["config"].dump() << "\n";
      os << "\n";
      std::size_t key_width = 0;
      for (const auto& [k, v] : report.summary) key_width = std::max(key_width, k.size());
      for (const auto& [k, v] : report.summary) os << k << std::string(key_width - k.size(), ' ') << "  " << v << "\n";
      for (const auto& t : report.tables) os << "\n" << render_table(t);
      if (report.series) os << "\n" << render_table(*report.series);
      return os.str();
    }
  }
  throw Error(ErrorCode::UnsupportedFormat, "unknown output format");
}

nlohmann::json to_json(const System& system, const ClassReport& report) {
  const auto& syms = system.symbols();
  nlohmann::json classes = nlohmann::json::array();
  for (int c = 0; c < report.class_count(); ++c) {
    const auto& cls = report.classes[static_cast<std::size_t>(c)];
    nlohmann::json core = nlohmann::json::array();
    for (auto [i, a] : cls.core) core.push_back({{"residue", i}, {"symbol", syms.name(a)}});
    nlohmann::json support = nlohmann::json::array(), marked = nlohmann::json::array();
    for (const auto& set : report.support[static_cast<std::size_t>(c)]) {
      nlohmann::json names = nlohmann::json::array();
      for (Symbol a : set) names.push_back(syms.name(a));
      support.push_back(names);
    }
    for (const auto& set : report.marked[static_cast<std::size_t>(c)]) {
      nlohmann::json names = nlohmann::json::array();
      for (Symbol a : set) names.push_back(syms.name(a));
      marked.push_back(names);
    }
    classes.push_back({{"index", c},
                       {"representative", format_word(syms, cls.representative)},
                       {"period", cls.period},
                       {"core", core},
                       {"support", support},
                       {"marked", marked}});
  }
  nlohmann::json transitions = nlohmann::json::array();
  for (std::size_t t = 0; t < report.transitions.size(); ++t)
    transitions.push_back({{"from", report.transitions[t].first},
                           {"to", report.transitions[t].second},
                           {"nonstop", static_cast<bool>(report.nonstop[t])}});
  return {{"point", format_word(system.labels(), report.point.cycle)},
          {"phase", report.point.phase},
          {"word", format_word(system.labels(), report.word)},
          {"point_period", report.word.size()},
          {"side", to_string(report.side)},
          {"q", report.q},
          {"class_count", report.class_count()},
          {"classes", classes},
          {"transitions", transitions}};
}

nlohmann::json to_json(const PropertyVerdict& verdict) {
  nlohmann::json out{{"property", verdict.property},
                     {"status", to_string(verdict.status)},
                     {"witness", verdict.witness},
                     {"horizon", verdict.horizon}};
  if (!verdict.note.empty()) out["note"] = verdict.note;
  if (!verdict.parts.empty()) {
    out["parts"] = nlohmann::json::array();
    for (const auto& p : verdict.parts) out["parts"].push_back(to_json(p));
  }
  return out;
}

nlohmann::json to_json(const System& system, const ObstructionReport& rep) {
  const auto& opt = rep.options;
  nlohmann::json extensions = nlohmann::json::array();
  for (const auto& e : rep.extensions)
    extensions.push_back({{"label", system.labels().name(e.label)},
                          {"side", to_string(e.side)},
                          {"decay_factor", e.decay_factor},
                          {"fired", e.fired},
                          {"series", e.series}});
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.series.single_step)
    rows.push_back({{"n", r.n}, {"residue", r.residue}, {"cylinder_log_measure", r.log_measure}, {"ratio", r.ratio}});
  return {{"verdict", to_string(rep.verdict)},
          {"word", format_word(system.labels(), rep.word)},
          {"note", rep.note},
          {"options",
           {{"n_max", opt.n_max},
            {"tol_ratio", opt.tol_ratio},
            {"alpha_min", opt.alpha_min},
            {"fit_tol", opt.fit_tol},
            {"decay_margin", opt.decay_margin},
            {"drift_factor", opt.drift_factor}}},
          {"period_reduction",
           {{"residue_limits", rep.period.residue_limits},
            {"spread", rep.period.spread},
            {"drift", rep.period.drift},
            {"fired", rep.period.fired}}},
          {"transitional_polynomial",
           {{"lambda", rep.polynomial.lambda},
            {"alpha", rep.polynomial.alpha},
            {"c", rep.polynomial.c},
            {"rms", rep.polynomial.rms},
            {"lambda_free", rep.polynomial.lambda_free},
            {"alpha_free", rep.polynomial.alpha_free},
            {"fired", rep.polynomial.fired}}},
          {"continuing_vanishing", extensions},
          {"series", {{"period", rep.series.period}, {"q", rep.series.q}, {"rows", rows}}}};
}

Report system_report(const System& system) {
  Report r;
  r.kind = "system";
  const MixingWitness mix = is_mixing(system);
  nlohmann::json labels = nlohmann::json::object();
  nlohmann::json symbols = nlohmann::json::array();
  for (Symbol a = 0; a < static_cast<Symbol>(system.size()); ++a) {
    symbols.push_back(system.symbols().name(a));
    labels[system.symbols().name(a)] = system.labels().name(system.label(a));
  }
  r.result = {{"symbols", symbols},
              {"labels", labels},
              {"label_alphabet", words_json(system.labels(), {})},
              {"edges", system.edge_count()},
              {"trimmed", system.trimmed()},
              {"mixing", mix.mixing}};
  for (Symbol l = 0; l < static_cast<Symbol>(system.labels().size()); ++l)
    r.result["label_alphabet"].push_back(system.labels().name(l));
  if (mix.mixing) r.result["mixing_exponent"] = mix.exponent;
  r.summary = {{"symbols", std::to_string(system.size())},
               {"labels", std::to_string(system.labels().size())},
               {"allowed 2-blocks", std::to_string(system.edge_count())},
               {"trimmed", system.trimmed().empty() ? "none" : join(system.trimmed(), ", ")},
               {"mixing", mix.mixing ? "yes (exponent " + std::to_string(mix.exponent) + ")" : "no"}};
  Table t{"labeling", {"symbol", "label", "successors"}, {}};
  for (Symbol a = 0; a < static_cast<Symbol>(system.size()); ++a) {
    const auto succ = system.successors(a);
    t.rows.push_back({system.symbols().name(a), system.labels().name(system.label(a)),
                      sym_list(system.symbols(), {succ.begin(), succ.end()})});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report blocks_report(const System& system, int n, Target target, const std::vector<Word>& words) {
  Report r;
  r.kind = "blocks";
  const Alphabet& alphabet = target == Target::Domain ? system.symbols() : system.labels();
  r.result = {{"length", n},
              {"target", target == Target::Domain ? "domain" : "image"},
              {"count", words.size()},
              {"words", words_json(alphabet, words)}};
  r.summary = {{"target", target == Target::Domain ? "domain" : "image"},
               {"length", std::to_string(n)},
               {"count", std::to_string(words.size())}};
  Table t{"", {"word"}, {}};
  for (const auto& w : words) t.rows.push_back({format_word(alphabet, w)});
  r.tables.push_back(std::move(t));
  return r;
}

Report fiber_report(const System& system, const Word& w, const std::vector<Word>& preimages) {
  Report r;
  r.kind = "fiber";
  r.result = {{"word", format_word(system.labels(), w)},
              {"size", preimages.size()},
              {"preimages", words_json(system.symbols(), preimages)}};
  r.summary = {{"word", format_word(system.labels(), w)}, {"fiber size", std::to_string(preimages.size())}};
  Table t{"", {"preimage"}, {}};
  for (const auto& x : preimages) t.rows.push_back({format_word(system.symbols(), x)});
  r.tables.push_back(std::move(t));
  return r;
}

namespace {

nlohmann::json tau_json(const System& system, const TauWitness& tau) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& block : tau.partition) {
    nlohmann::json b = nlohmann::json::array();
    for (const auto& [s, t] : block) b.push_back({system.symbols().name(s), system.symbols().name(t)});
    blocks.push_back(b);
  }
  return {{"value", tau.value}, {"exact", tau.exact}, {"partition", blocks}};
}

Table tau_table(const System& system, const TauWitness& tau) {
  Table t{"tangled blocks of endpoint pairs", {"block", "endpoint pairs"}, {}};
  for (std::size_t i = 0; i < tau.partition.size(); ++i) {
    std::vector<std::string> pairs;
    for (const auto& p : tau.partition[i]) pairs.push_back(pair_text(system, p));
    t.rows.push_back({std::to_string(i + 1), join(pairs, " ")});
  }
  return t;
}

}  // namespace

Report depth_report(const System& system, const DepthCertificate& cert) {
  Report r;
  r.kind = "depth";
  nlohmann::json routing = nlohmann::json::array();
  for (Symbol a : cert.depth.routing) routing.push_back(system.symbols().name(a));
  r.result = {{"word", format_word(system.labels(), cert.word)},
              {"depth", {{"value", cert.depth.value}, {"position", cert.depth.position}, {"routing_set", routing}}},
              {"tau", tau_json(system, cert.tau)}};
  r.summary = {{"w", format_word(system.labels(), cert.word)},
               {"d", std::to_string(cert.depth.value)},
               {"tau", std::to_string(cert.tau.value) + (cert.tau.exact ? "" : " (greedy upper bound)")}};
  r.tables.push_back(Table{"routing witness",
                           {"position", "M"},
                           {{std::to_string(cert.depth.position), sym_list(system.symbols(), cert.depth.routing)}}});
  r.tables.push_back(tau_table(system, cert.tau));
  return r;
}

Report tau_report(const System& system, const Word& w, const TauWitness& tau) {
  Report r;
  r.kind = "tau";
  r.result = {{"word", format_word(system.labels(), w)}, {"tau", tau_json(system, tau)}};
  r.summary = {{"w", format_word(system.labels(), w)},
               {"tau", std::to_string(tau.value) + (tau.exact ? "" : " (greedy upper bound)")}};
  r.tables.push_back(tau_table(system, tau));
  return r;
}

Report degree_report(const System& system, const DegreeEstimate& est) {
  Report r;
  r.kind = "degree";
  r.result = {{"value", est.value},
              {"min_depth", est.min_depth},
              {"witness", format_word(system.labels(), est.witness)},
              {"stabilized", est.stabilized},
              {"depth_tau_agree", est.agree},
              {"horizon", est.horizon},
              {"running_min", est.running_min}};
  r.summary = {{"class degree estimate", std::to_string(est.value)},
               {"witness", format_word(system.labels(), est.witness)},
               {"min depth", std::to_string(est.min_depth)},
               {"stabilized", est.stabilized ? "yes" : "no"},
               {"horizon N", std::to_string(est.horizon)}};
  Table t{"running minimum of tau", {"length", "min tau"}, {}};
  for (std::size_t i = 0; i < est.running_min.size(); ++i)
    t.rows.push_back({std::to_string(i + 3), std::to_string(est.running_min[i])});
  r.tables.push_back(std::move(t));
  return r;
}

Report class_report(const System& system, const ClassReport& report) {
  Report r;
  r.kind = "classes";
  r.result = to_json(system, report);
  r.summary = {{"point", format_word(system.labels(), report.word) + " (period " + std::to_string(report.word.size()) + ")"},
               {"side", std::string(to_string(report.side))},
               {"analysis period q", std::to_string(report.q)},
               {"classes", std::to_string(report.class_count())},
               {"transitions", std::to_string(report.transitions.size())}};
  Table classes{"classes", {"class", "representative", "period", "marked (residue 0)"}, {}};
  for (int c = 0; c < report.class_count(); ++c) {
    const auto& cls = report.classes[static_cast<std::size_t>(c)];
    classes.rows.push_back({std::to_string(c), format_word(system.symbols(), cls.representative),
                            std::to_string(cls.period),
                            sym_list(system.symbols(), report.marked[static_cast<std::size_t>(c)].front())});
  }
  r.tables.push_back(std::move(classes));
  if (!report.transitions.empty()) {
    Table t{"transitions", {"from", "to", "nonstop"}, {}};
    for (std::size_t i = 0; i < report.transitions.size(); ++i)
      t.rows.push_back({std::to_string(report.transitions[i].first), std::to_string(report.transitions[i].second),
                        report.nonstop[i] ? "yes" : "no"});
    r.tables.push_back(std::move(t));
  }
  return r;
}

Report property_report(const System& system, const std::vector<PropertyVerdict>& verdicts,
                       const std::optional<ContinuingReport>& continuing) {
  Report r;
  r.kind = "properties";
  r.result["verdicts"] = nlohmann::json::array();
  Table t{"verdicts", {"property", "status", "witness"}, {}};
  auto add = [&](const PropertyVerdict& v, const std::string& indent, auto&& self) -> void {
    t.rows.push_back({indent + v.property, std::string(to_string(v.status)),
                      v.witness.empty() ? v.note : v.witness.dump()});
    for (const auto& p : v.parts) self(p, indent + "  ", self);
  };
  for (const auto& v : verdicts) {
    r.result["verdicts"].push_back(to_json(v));
    add(v, "", add);
  }
  r.tables.push_back(std::move(t));
  if (continuing) {
    nlohmann::json battery = nlohmann::json::array();
    Table b{"class degree battery", {"point", "right classes", "left classes"}, {}};
    for (const auto& rec : continuing->battery) {
      battery.push_back({{"point", format_word(system.labels(), rec.cycle)}, {"right", rec.right}, {"left", rec.left}});
      b.rows.push_back({format_word(system.labels(), rec.cycle), std::to_string(rec.right), std::to_string(rec.left)});
    }
    r.result["degree_battery"] = {{"points", battery}, {"constant", continuing->degree_constant}};
    r.summary.emplace_back("degree constant on periodic points", continuing->degree_constant ? "yes" : "no");
    r.tables.push_back(std::move(b));
  }
  return r;
}

Report pushforward_report(const System& system, const Word& w, PushMode mode, double value, double log_value) {
  Report r;
  r.kind = "pushforward";
  r.result = {{"word", format_word(system.labels(), w)},
              {"mode", mode == PushMode::Transfer ? "transfer" : "brute"},
              {"measure", value},
              {"log_measure", std::isfinite(log_value) ? nlohmann::json(log_value) : nlohmann::json("-inf")}};
  r.summary = {{"word", format_word(system.labels(), w)},
               {"mode", mode == PushMode::Transfer ? "transfer" : "brute"},
               {"nu[w]", format_number(value)},
               {"log nu[w]", format_number(log_value)}};
  return r;
}

Report obstruction_report(const System& system, const ObstructionReport& rep) {
  Report r;
  r.kind = "gibbs-diagnose";
  r.result = to_json(system, rep);
  r.summary = {{"point", format_word(system.labels(), rep.word)},
               {"verdict", std::string(to_string(rep.verdict))},
               {"note", rep.note},
               {"n_max", std::to_string(rep.options.n_max)}};

  Table tests{"tests", {"test", "fired", "evidence"}, {}};
  std::vector<std::string> limits;
  for (double x : rep.period.residue_limits) limits.push_back(format_number(x));
  tests.rows.push_back({"period-reduction", rep.period.fired ? "yes" : "no",
                        "residue limits {" + join(limits, ", ") + "}, spread " + format_number(rep.period.spread)});
  tests.rows.push_back({"transitional-polynomial", rep.polynomial.fired ? "yes" : "no",
                        "lambda " + format_number(rep.polynomial.lambda) + ", alpha " +
                            format_number(rep.polynomial.alpha) + ", rms " + format_number(rep.polynomial.rms)});
  for (const auto& e : rep.extensions)
    tests.rows.push_back({"continuing-vanishing (" + std::string(to_string(e.side)) + " " +
                              system.labels().name(e.label) + ")",
                          e.fired ? "yes" : "no", "decay factor " + format_number(e.decay_factor)});
  r.tables.push_back(std::move(tests));

  Table series{"ratio series", {"n", "residue", "cylinder_log_measure", "ratio"}, {}};
  for (const auto& row : rep.series.single_step)
    series.rows.push_back({std::to_string(row.n), std::to_string(row.residue), format_number(row.log_measure),
                           format_number(row.ratio)});
  r.series = std::move(series);
  return r;
}

Report tune_report(const System& system, const ClassReport& classes, int c, double target, const TuneResult& tune) {
  Report r;
  r.kind = "tune-rate";
  const auto& cls = classes.classes.at(static_cast<std::size_t>(c));
  nlohmann::json matrix = nlohmann::json::object();
  const auto& P = tune.measure.transition;
  for (Symbol a = 0; a < static_cast<Symbol>(system.size()); ++a)
    for (Symbol b : system.successors(a)) matrix[system.symbols().name(a)][system.symbols().name(b)] = P(a, b);
  r.result = {{"point", format_word(system.labels(), classes.word)},
              {"class", c},
              {"representative", format_word(system.symbols(), cls.representative)},
              {"target", target},
              {"t", tune.t},
              {"lambda", tune.lambda},
              {"iterations", tune.iterations},
              {"measure", {{"matrix", matrix}}}};
  r.summary = {{"class", std::to_string(c) + " (" + format_word(system.symbols(), cls.representative) + ")"},
               {"target", format_number(target)},
               {"t*", format_number(tune.t)},
               {"lambda(t*)", format_number(tune.lambda)},
               {"iterations", std::to_string(tune.iterations)}};
  return r;
}

}  // namespace gibbsloss
