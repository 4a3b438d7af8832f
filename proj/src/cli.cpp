#include "xstates/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "xstates/io.hpp"

namespace xstates::cli {

namespace {

using io::Json;

struct Options {
  std::string in;
  std::string out;
  std::string state;
  std::uint64_t seed = 1;
  std::uint64_t n = 1;
  int grid = 64;
  unsigned threads = 0;
  std::string format = "json";
  std::string side = "B";
  std::string gd_variant = "general";
  bool complex_phases = false;
};

// Collects what the run did; written next to the output even on failure.
class Manifest {
 public:
  Manifest(std::string subcommand, const Options& o) : start_(std::chrono::steady_clock::now()) {
    j_["subcommand"] = std::move(subcommand);
    j_["version"] = kVersion;
    j_["in"] = o.in;
    j_["out"] = o.out;
  }

  Json& operator[](const char* key) { return j_[key]; }

  void finish(const std::string& out, int exit_code, const std::string& status) {
    if (out.empty()) return;
    j_["exit_code"] = exit_code;
    j_["status"] = status;
    j_["duration_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    try {
      io::write_file_atomic(out + ".manifest.json", io::dump(j_) + "\n");
    } catch (const Error&) {
      // The primary failure is reported by the caller.
    }
  }

 private:
  Json j_;
  std::chrono::steady_clock::time_point start_;
};

Side parse_side(const std::string& s) { return s == "A" ? Side::A : Side::B; }

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty())
    out << contents;
  else
    io::write_file_atomic(path, contents);
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::IoError: return kIoError;
    case ErrorKind::NotPreserving: return kEvolveNotPreserving;
    case ErrorKind::StepRejected: return kStepRejected;
    default: return kInvalidInput;
  }
}

int run_measures(const Options& o, std::ostream& out, std::ostream& err) {
  Manifest manifest("measures", o);
  try {
    const XState x = io::state_from_json(io::read_json_file(o.in));
    ReportOptions options;
    options.discord_side = parse_side(o.side);
    const MeasureReport r = report(x, options);
    std::string text;
    if (o.format == "csv") {
      text = io::report_to_csv(r);
    } else {
      Json j = io::report_to_json(r);
      j["geometric_discord"] =
          o.gd_variant == "paper" ? r.geometric_discord_paper : r.geometric_discord_general;
      j["geometric_discord_variant"] = o.gd_variant;
      text = io::dump(j) + "\n";
    }
    emit(o.out, text, out);
    manifest.finish(o.out, kOk, "ok");
    return kOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    manifest.finish(o.out, exit_for(e), e.what());
    return exit_for(e);
  }
}

int run_generate(const Options& o, std::ostream& out, std::ostream& err) {
  Manifest manifest("gen", o);
  manifest["seed"] = o.seed;
  manifest["n"] = o.n;
  manifest["complex_phases"] = o.complex_phases;
  try {
    if (o.n < 1) throw Error(ErrorKind::InvalidArgument, "--n must be >= 1");
    std::string text;
    std::uint64_t entangled = 0;
    for (std::uint64_t i = 0; i < o.n; ++i) {
      const XState x = random_xstate(o.seed, i, RandomOptions{o.complex_phases});
      if (concurrence(x) > 0.0) ++entangled;
      text += io::dump(io::state_to_json(x), -1) + "\n";
    }
    manifest["fraction_entangled"] = static_cast<double>(entangled) / static_cast<double>(o.n);
    emit(o.out, text, out);
    manifest.finish(o.out, kOk, "ok");
    return kOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    const int code = e.kind() == ErrorKind::IoError ? kIoError : kInvalidInput;
    manifest.finish(o.out, code, e.what());
    return code;
  }
}

int run_validate_approx(const Options& o, std::ostream& out, std::ostream& err) {
  Manifest manifest("validate-approx", o);
  manifest["seed"] = o.seed;
  manifest["n"] = o.n;
  manifest["grid"] = o.grid;
  try {
    const CampaignStats stats = approx_error_campaign(o.n, o.seed, o.grid, o.threads);
    Json j = io::campaign_to_json(stats);
    j["thresholds"] = Json::array({1e-3, 1e-4, 1e-5, 1e-6, 1e-7});
    emit(o.out, io::dump(j) + "\n", out);
    manifest["max_err"] = stats.max_err;
    manifest.finish(o.out, kOk, "ok");
    return kOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    const int code = e.kind() == ErrorKind::IoError ? kIoError : kInvalidInput;
    manifest.finish(o.out, code, e.what());
    return code;
  }
}

int run_evolve(const Options& o, std::ostream& out, std::ostream& err) {
  Manifest manifest("evolve", o);
  try {
    io::DynamicsConfig cfg = io::dynamics_config_from_json(io::read_json_file(o.in));
    if (!o.state.empty()) cfg.initial_state = io::state_from_json(io::read_json_file(o.state));
    if (!cfg.initial_state) throw Error(ErrorKind::ParseError, "no initial_state in config and no --state given");
    manifest["dt"] = cfg.options.dt;
    manifest["t_max"] = cfg.options.t_max;
    manifest["sample_every"] = cfg.options.sample_every;

    const Verdict verdict = check_lindblad(cfg.spec);
    if (!verdict.preserving) {
      err << "NotPreserving:";
      for (const auto& reason : verdict.offending) err << "\n  " << reason;
      err << '\n';
      manifest.finish(o.out, kEvolveNotPreserving, "NotPreserving");
      return kEvolveNotPreserving;
    }
    const Trajectory traj = evolve(cfg.spec, *cfg.initial_state, cfg.options);
    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj);
    emit(o.out, csv.str(), out);
    const std::optional<double> esd = esd_time(traj);
    manifest["esd_time"] = esd ? Json(*esd) : Json(nullptr);
    manifest["max_leakage"] = traj.max_leakage;
    manifest.finish(o.out, kOk, "ok");
    return kOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    manifest.finish(o.out, exit_for(e), e.what());
    return exit_for(e);
  }
}

int run_check(const Options& o, std::ostream& out, std::ostream& err) {
  Manifest manifest("check", o);
  try {
    const Json j = io::read_json_file(o.in);
    Verdict verdict;
    std::string kind;
    if (j.is_object() && j.contains("kraus")) {
      kind = "channel";
      verdict = check_kraus(io::kraus_from_json(j));
    } else {
      kind = "generator";
      verdict = check_lindblad(io::dynamics_config_from_json(j).spec);
    }
    std::ostringstream text;
    for (std::size_t i = 0; i < verdict.grades.size(); ++i)
      text << "operator " << i << ": " << to_string(verdict.grades[i]) << '\n';
    text << kind << ": " << (verdict.preserving ? "Preserving" : "NotPreserving") << '\n';
    for (const auto& reason : verdict.offending) text << "  " << reason << '\n';
    emit(o.out, text.str(), out);
    const int code = verdict.preserving ? kOk : kNotPreserving;
    manifest["verdict"] = verdict.preserving ? "Preserving" : "NotPreserving";
    manifest.finish(o.out, code, "ok");
    return code;
  } catch (const Error& e) {
    err << e.what() << '\n';
    const int code = e.kind() == ErrorKind::IoError ? kIoError : kInvalidInput;
    manifest.finish(o.out, code, e.what());
    return code;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form properties and dynamics of two-qubit X states", "xstates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto* measures = app.add_subcommand("measures", "Compute the full measure report of one state");
  measures->add_option("--in", o.in, "State file")->required();
  measures->add_option("--out", o.out, "Report file (stdout if omitted)");
  measures->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  measures->add_option("--side", o.side, "Measured subsystem for discord")->check(CLI::IsMember({"A", "B"}));
  measures->add_option("--gd-variant", o.gd_variant)->check(CLI::IsMember({"general", "paper"}));

  auto* gen = app.add_subcommand("gen", "Generate a random X-state corpus, one state per line");
  gen->add_option("--n", o.n)->required();
  gen->add_option("--seed", o.seed);
  gen->add_option("--out", o.out);
  gen->add_flag("--complex-phases", o.complex_phases, "Attach uniform phases to the coherences");

  auto* validate_approx = app.add_subcommand("validate-approx", "Compare approximate discord to the numerical oracle");
  validate_approx->add_option("--n", o.n)->required();
  validate_approx->add_option("--seed", o.seed);
  validate_approx->add_option("--grid", o.grid)->check(CLI::PositiveNumber);
  validate_approx->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  validate_approx->add_option("--out", o.out);

  auto* evolve_cmd = app.add_subcommand("evolve", "Integrate an X-preserving master equation");
  evolve_cmd->add_option("--in", o.in, "Dynamics config")->required();
  evolve_cmd->add_option("--state", o.state, "Initial state file (overrides initial_state)");
  evolve_cmd->add_option("--out", o.out, "Trajectory CSV (stdout if omitted)");

  auto* check = app.add_subcommand("check", "Classify a Kraus channel or Lindblad generator");
  check->add_option("--in", o.in, "Kraus or generator file")->required();
  check->add_option("--out", o.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInvalidInput;
  }

  if (measures->parsed()) return run_measures(o, out, err);
  if (gen->parsed()) return run_generate(o, out, err);
  if (validate_approx->parsed()) return run_validate_approx(o, out, err);
  if (evolve_cmd->parsed()) return run_evolve(o, out, err);
  return run_check(o, out, err);
}

}  // namespace xstates::cli
