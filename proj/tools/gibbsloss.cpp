// Command-line front end for the gibbsloss library.

#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "gibbsloss/acceptance.hpp"
#include "gibbsloss/io.hpp"
#include "gibbsloss/report.hpp"

namespace {

using namespace gibbsloss;

constexpr int kExitUsage = 64;
constexpr int kExitAnalysis = 65;

struct Options {
  std::string system_path;
  std::string measure_path;
  std::string word;
  std::string format = "text";
  std::string out;
  std::size_t size_cap = kDefaultSizeCap;
  int length = 3;
  std::string target = "image";
  std::string side = "right";
  std::string mode = "transfer";
  std::string property = "nearly-fiber-mixing";
  int horizon_n = kDefaultWordHorizon;
  int period_bound = kDefaultPeriodBound;
  DiagnoseOptions diagnose;
  int class_index = 0;
  double target_rate = 0;
  std::vector<std::string> edge;
  double t_lo = 0;
  double t_hi = 1;
  std::string fixtures = GIBBSLOSS_FIXTURE_DIR;
};

struct Outcome {
  Report report;
  int exit = 0;
};

Side parse_side(const std::string& s) {
  if (s == "right") return Side::Right;
  if (s == "left") return Side::Left;
  throw Error(ErrorCode::InvalidArgument, "side must be 'right' or 'left'");
}

bool is_usage_error(ErrorCode code) {
  return code == ErrorCode::FileNotFound || code == ErrorCode::UnsupportedFormat || code == ErrorCode::InvalidArgument;
}

class Runner {
 public:
  explicit Runner(Options& o) : o_(o) {}

  const System& system() {
    if (!system_) {
      system_ = load_system(o_.system_path);
      inputs_.push_back({"system", o_.system_path, fnv1a64_hex(read_file_bytes(o_.system_path))});
    }
    return *system_;
  }
  MarkovMeasure measure() {
    if (o_.measure_path.empty()) throw Error(ErrorCode::InvalidArgument, "--measure is required");
    MarkovMeasure mu = load_measure(system(), o_.measure_path);
    inputs_.push_back({"measure", o_.measure_path, fnv1a64_hex(read_file_bytes(o_.measure_path))});
    return mu;
  }
  Word label_word() {
    if (o_.word.empty()) throw Error(ErrorCode::InvalidArgument, "--word is required");
    return parse_word(system().labels(), o_.word);
  }
  const std::vector<InputFile>& inputs() const { return inputs_; }

 private:
  Options& o_;
  std::optional<System> system_;
  std::vector<InputFile> inputs_;
};

nlohmann::json diagnose_config(const DiagnoseOptions& d) {
  return {{"n_max", d.n_max},
          {"tol_ratio", d.tol_ratio},
          {"alpha_min", d.alpha_min},
          {"fit_tol", d.fit_tol},
          {"decay_margin", d.decay_margin},
          {"drift_factor", d.drift_factor}};
}

Outcome run_properties(Runner& r, const Options& o) {
  const System& s = r.system();
  const auto right = eresolving_check(s, Side::Right);
  const auto left = eresolving_check(s, Side::Left);
  const auto fiber_mixing = fiber_mixing_certificate(s, o.horizon_n, o.size_cap);
  const auto continuing = continuing_diagnosis(s, o.period_bound);
  const auto nearly = nearly_fiber_mixing_verdict(s, o.period_bound, o.horizon_n, o.size_cap);
  const std::vector<PropertyVerdict> all{nearly, fiber_mixing, right, left, continuing.right, continuing.left};
  const auto it = std::find_if(all.begin(), all.end(), [&](const auto& v) { return v.property == o.property; });
  if (it == all.end()) throw Error(ErrorCode::InvalidArgument, "unknown property '" + o.property + "'");
  Outcome out{property_report(s, all, continuing), exit_code(it->status)};
  out.report.summary.insert(out.report.summary.begin(),
                            {"requested", it->property + ": " + std::string(to_string(it->status))});
  out.report.result["requested"] = it->property;
  return out;
}

Outcome run_tune(Runner& r, const Options& o) {
  const System& s = r.system();
  const MarkovMeasure mu = r.measure();
  if (o.edge.size() != 2) throw Error(ErrorCode::InvalidArgument, "--edge takes FROM TO");
  const Symbol from = s.symbols().at(o.edge[0]);
  const Symbol to = s.symbols().at(o.edge[1]);
  if (!s.allowed(from, to)) throw Error(ErrorCode::InvalidArgument, "--edge is not an allowed 2-block");
  const ClassReport classes = periodic_classes(s, r.label_word(), Side::Right);
  if (o.class_index < 0 || o.class_index >= classes.class_count())
    throw Error(ErrorCode::InvalidArgument, "--class out of range");
  const auto family = single_transition_family(mu.transition, from, to);
  const TuneResult tune = tune_class_rate(s, family, classes, o.class_index, o.target_rate, o.t_lo, o.t_hi);
  return {tune_report(s, classes, o.class_index, o.target_rate, tune), 0};
}

void write_output(const Options& o, const std::string& bytes) {
  if (o.out.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::FileNotFound, "cannot write '" + o.out + "'");
  f << bytes;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Transition classes, structural properties and Gibbs diagnostics for 1-block factor maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto common = [&](CLI::App* sub, bool needs_system = true) {
    if (needs_system) sub->add_option("system", o.system_path, "System JSON file")->required();
    sub->add_option("--format", o.format, "Output format: text, json or csv")->capture_default_str();
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
    sub->add_option("--size-cap", o.size_cap, "Cap on enumerated words")
        ->envname("GIBBSLOSS_SIZE_CAP")
        ->capture_default_str();
  };
  auto word_opt = [&](CLI::App* sub, const char* help) { sub->add_option("--word", o.word, help)->required(); };
  auto measure_opt = [&](CLI::App* sub) { sub->add_option("--measure", o.measure_path, "Measure JSON file")->required(); };

  std::map<std::string, std::function<Outcome(Runner&)>> handlers;
  std::map<std::string, std::function<nlohmann::json()>> configs;

  auto* validate = app.add_subcommand("validate", "Validate a system and summarize it");
  common(validate);
  handlers["validate"] = [&](Runner& r) { return Outcome{system_report(r.system()), 0}; };
  configs["validate"] = [] { return nlohmann::json::object(); };

  auto* blocks_cmd = app.add_subcommand("blocks", "List allowed domain words or image words of a length");
  common(blocks_cmd);
  blocks_cmd->add_option("--length", o.length, "Word length")->required();
  blocks_cmd->add_option("--target", o.target, "domain or image")->capture_default_str();
  handlers["blocks"] = [&](Runner& r) {
    if (o.target != "domain" && o.target != "image")
      throw Error(ErrorCode::InvalidArgument, "--target must be 'domain' or 'image'");
    const Target t = o.target == "domain" ? Target::Domain : Target::Image;
    return Outcome{blocks_report(r.system(), o.length, t, blocks(r.system(), o.length, t, o.size_cap)), 0};
  };
  configs["blocks"] = [&] { return nlohmann::json{{"length", o.length}, {"target", o.target}}; };

  auto* fiber_cmd = app.add_subcommand("fiber", "Enumerate the preimages of an image word");
  common(fiber_cmd);
  word_opt(fiber_cmd, "Image word");
  handlers["fiber"] = [&](Runner& r) {
    const Word w = r.label_word();
    return Outcome{fiber_report(r.system(), w, fiber(r.system(), w, o.size_cap)), 0};
  };
  configs["fiber"] = [&] { return nlohmann::json{{"word", o.word}}; };

  auto* depth_cmd = app.add_subcommand("depth", "Depth and tau-depth of an image word with witnesses");
  common(depth_cmd);
  word_opt(depth_cmd, "Image word of length at least 3");
  handlers["depth"] = [&](Runner& r) { return Outcome{depth_report(r.system(), depth_certificate(r.system(), r.label_word())), 0}; };
  configs["depth"] = [&] { return nlohmann::json{{"word", o.word}}; };

  auto* tau_cmd = app.add_subcommand("tau", "Tau-depth of an image word");
  common(tau_cmd);
  word_opt(tau_cmd, "Image word");
  handlers["tau"] = [&](Runner& r) {
    const Word w = r.label_word();
    return Outcome{tau_report(r.system(), w, tau_depth(r.system(), w)), 0};
  };
  configs["tau"] = [&] { return nlohmann::json{{"word", o.word}}; };

  auto* degree_cmd = app.add_subcommand("degree", "Estimate the class degree from image words up to a length");
  common(degree_cmd);
  degree_cmd->add_option("--horizon-N", o.horizon_n, "Largest word length")->capture_default_str();
  handlers["degree"] = [&](Runner& r) {
    return Outcome{degree_report(r.system(), class_degree_estimate(r.system(), o.horizon_n, o.size_cap)), 0};
  };
  configs["degree"] = [&] { return nlohmann::json{{"horizon_N", o.horizon_n}}; };

  auto* classes_cmd = app.add_subcommand("classes", "Transition classes over a periodic point u^infinity");
  common(classes_cmd);
  word_opt(classes_cmd, "One period u of the point");
  classes_cmd->add_option("--side", o.side, "right or left")->capture_default_str();
  handlers["classes"] = [&](Runner& r) {
    return Outcome{class_report(r.system(), periodic_classes(r.system(), r.label_word(), parse_side(o.side))), 0};
  };
  configs["classes"] = [&] { return nlohmann::json{{"word", o.word}, {"side", o.side}}; };

  auto* props = app.add_subcommand("properties", "Structural property verdicts; exit status follows --property");
  common(props);
  props->add_option("--property", o.property,
                    "nearly-fiber-mixing, fiber-mixing, right-eresolving, left-eresolving, right-continuing or "
                    "left-continuing")
      ->capture_default_str();
  props->add_option("--period-bound-P", o.period_bound, "Largest period of scanned periodic points")->capture_default_str();
  props->add_option("--horizon-N", o.horizon_n, "Largest word length")->capture_default_str();
  handlers["properties"] = [&](Runner& r) { return run_properties(r, o); };
  configs["properties"] = [&] {
    return nlohmann::json{{"property", o.property}, {"period_bound_P", o.period_bound}, {"horizon_N", o.horizon_n}};
  };

  auto* push = app.add_subcommand("pushforward", "Measure of an image cylinder under the pushforward");
  common(push);
  measure_opt(push);
  word_opt(push, "Image word");
  push->add_option("--mode", o.mode, "transfer or brute")->capture_default_str();
  handlers["pushforward"] = [&](Runner& r) {
    if (o.mode != "transfer" && o.mode != "brute") throw Error(ErrorCode::InvalidArgument, "--mode must be 'transfer' or 'brute'");
    const MarkovMeasure mu = r.measure();
    const Word w = r.label_word();
    const PushMode mode = o.mode == "brute" ? PushMode::Brute : PushMode::Transfer;
    const double value = pushforward(r.system(), mu, w, mode, o.size_cap);
    return Outcome{pushforward_report(r.system(), w, mode, value, log_pushforward(r.system(), mu, w)), 0};
  };
  configs["pushforward"] = [&] { return nlohmann::json{{"word", o.word}, {"mode", o.mode}}; };

  auto* diag = app.add_subcommand("gibbs-diagnose", "Test the pushforward for Gibbs obstructions along u^infinity");
  common(diag);
  measure_opt(diag);
  word_opt(diag, "One period u of the point");
  diag->add_option("--n-max", o.diagnose.n_max, "Number of periods examined")->capture_default_str();
  diag->add_option("--tol-ratio", o.diagnose.tol_ratio, "Residue spread threshold")->capture_default_str();
  diag->add_option("--alpha-min", o.diagnose.alpha_min, "Smallest polynomial exponent that counts")->capture_default_str();
  diag->add_option("--fit-tol", o.diagnose.fit_tol, "Largest RMS residual of the polynomial fit")->capture_default_str();
  diag->add_option("--decay-margin", o.diagnose.decay_margin, "Quotients must stay below 1 - margin")->capture_default_str();
  handlers["gibbs-diagnose"] = [&](Runner& r) {
    const MarkovMeasure mu = r.measure();
    return Outcome{obstruction_report(r.system(), obstruction_diagnose(r.system(), mu, r.label_word(), o.diagnose)), 0};
  };
  configs["gibbs-diagnose"] = [&] {
    auto j = diagnose_config(o.diagnose);
    j["word"] = o.word;
    return j;
  };

  auto* tune = app.add_subcommand("tune-rate", "Tune one transition probability so a class reaches a growth rate");
  common(tune);
  measure_opt(tune);
  word_opt(tune, "One period u of the point");
  tune->add_option("--class", o.class_index, "Class index in the class report")->capture_default_str();
  tune->add_option("--target", o.target_rate, "Target Perron rate per analysis period")->required();
  tune->add_option("--edge", o.edge, "Allowed 2-block FROM TO whose probability is tuned")->expected(2)->required();
  tune->add_option("--t-lo", o.t_lo, "Lower end of the parameter interval")->capture_default_str();
  tune->add_option("--t-hi", o.t_hi, "Upper end of the parameter interval")->capture_default_str();
  handlers["tune-rate"] = [&](Runner& r) { return run_tune(r, o); };
  configs["tune-rate"] = [&] {
    return nlohmann::json{{"word", o.word}, {"class", o.class_index}, {"target", o.target_rate},
                          {"edge", o.edge},  {"t_lo", o.t_lo},         {"t_hi", o.t_hi}};
  };

  auto* repro = app.add_subcommand("reproduce", "Run the fixture acceptance suite and print a pass/fail matrix");
  repro->add_option("--fixtures", o.fixtures, "Fixture directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "reproduce") {
      bool all = true;
      for (const auto& res : acceptance::run_all(o.fixtures)) {
        std::cout << acceptance::format_line(res) << "\n";
        all = all && res.passed;
      }
      return all ? 0 : 1;
    }
    const Format format = parse_format(o.format);
    Runner runner(o);
    Outcome outcome = handlers.at(command)(runner);
    nlohmann::json config = configs.at(command)();
    config["format"] = o.format;
    config["size_cap"] = o.size_cap;
    outcome.report.metadata = run_metadata(command, runner.inputs(), config);
    write_output(o, emit_report(outcome.report, format));
    return outcome.exit;
  } catch (const Error& e) {
    std::cerr << "gibbsloss " << command << ": " << e.what() << "\n";
    return is_usage_error(e.code()) ? kExitUsage : kExitAnalysis;
  } catch (const std::exception& e) {
    std::cerr << "gibbsloss " << command << ": " << e.what() << "\n";
    return kExitAnalysis;
  }
}
