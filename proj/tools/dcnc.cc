// dcnc: equilibria vs. integral complementarity solutions of
// discretely-constrained Nash-Cournot games.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dcnc/analysis.h"
#include "dcnc/io.h"

namespace {

using dcnc::DcncError;
using dcnc::ErrorCode;
using dcnc::Json;

// Exit-code taxonomy. Relation codes let scripts assert a classification
// without parsing the report.
enum ExitCode : int {
  kExitEqual = 0,
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitValidationError = 3,
  kExitStrictSubset = 10,
  kExitEmptyMcp = 11,
  kExitBothEmpty = 12,
};

int RelationExit(dcnc::Relation r) {
  switch (r) {
    case dcnc::Relation::kEqual: return kExitEqual;
    case dcnc::Relation::kStrictSubset: return kExitStrictSubset;
    case dcnc::Relation::kEmptyMcpNonemptyNash: return kExitEmptyMcp;
    case dcnc::Relation::kBothEmpty: return kExitBothEmpty;
  }
  return kExitVerificationFailed;
}

struct CommonFlags {
  std::optional<int> threads;
  size_t pattern_budget = size_t{1} << 16;
  size_t lattice_cap = 1'000'000;
  std::string out;
  bool json = false;

  void Attach(CLI::App* cmd, bool with_json = true) {
    cmd->add_option("--threads", threads, "Worker threads (default: $DCNC_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--pattern-budget", pattern_budget,
                    "Max complementarity patterns per player")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lattice-cap", lattice_cap, "Max lattice points enumerated")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", out, "Output path");
    if (with_json) cmd->add_flag("--json", json, "Print JSON instead of the table");
  }

  dcnc::Limits Limits() const {
    dcnc::Limits limits;
    limits.pattern_budget = pattern_budget;
    limits.lattice_cap = lattice_cap;
    limits.threads = 1;
    if (threads) {
      limits.threads = *threads;
    } else if (const char* env = std::getenv("DCNC_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) limits.threads = v;
    }
    return limits;
  }
};

dcnc::Rational ParseParam(const std::string& text) {
  dcnc::Rational q;
  if (!dcnc::Rational::TryParse(text, &q)) {
    throw DcncError(ErrorCode::kParse, "--param expects an integer or p/q, got '" + text + "'");
  }
  return q;
}

dcnc::BuiltinCase ParseCase(const std::string& name) {
  auto c = dcnc::ParseBuiltinCase(name);
  if (!c) {
    throw DcncError(ErrorCode::kInvalidArgument,
                    "unknown case '" + name + "' (expected example1, example2-l2, example2-l1)");
  }
  return *c;
}

dcnc::ValidatedGame Validate(const dcnc::GameSpec& spec) {
  auto result = dcnc::ValidateGame(spec);
  for (const auto& d : result.diagnostics) std::cerr << d.ToString() << "\n";
  if (!result.game) throw DcncError(ErrorCode::kNotValidated, "validation failed");
  return std::move(*result.game);
}

int EmitReport(const dcnc::GameSpec& spec, const CommonFlags& flags) {
  const dcnc::ValidatedGame game = Validate(spec);
  const auto report = dcnc::MakeInclusionReport(game, flags.Limits());
  const std::string json = dcnc::RenderReportText(report);
  if (!flags.out.empty()) dcnc::WriteFile(flags.out, json);
  std::cout << (flags.json ? json : dcnc::RenderReportTable(report));
  return RelationExit(report.relation);
}

int RunCheck(const std::string& path, const std::string& profile_text,
             const std::optional<std::string>& lambda_text,
             const std::optional<std::string>& multipliers_text, const CommonFlags& flags) {
  const dcnc::ValidatedGame game = Validate(dcnc::ParseGameText(dcnc::ReadFile(path)));
  const auto limits = flags.Limits();
  const dcnc::StrategyProfile x = dcnc::ParseProfile(profile_text);
  if (static_cast<int>(x.x.size()) != game.num_vars()) {
    throw DcncError(ErrorCode::kDimensionMismatch,
                    "profile has " + std::to_string(x.x.size()) + " entries, game has " +
                        std::to_string(game.num_vars()));
  }
  for (const auto& v : x.x) {
    if (!v.IsInteger()) throw DcncError(ErrorCode::kInfeasibleProfile, "profile is not integral");
  }
  const dcnc::RelaxedKktSystem system = dcnc::BuildKktSystem(game);

  Json verdict;
  verdict["game"] = game.spec().name;
  verdict["profile"] = Json::array();
  for (const auto& v : x.x) verdict["profile"].push_back(dcnc::RationalToJson(v));
  std::string text;

  const auto deviation = dcnc::CheckEquilibrium(game, x, limits);
  verdict["equilibrium"] = !deviation.has_value();
  text += "equilibrium: " + std::string(deviation ? "no" : "yes") + "\n";
  if (deviation) {
    verdict["deviation"] = dcnc::WitnessToJson(*deviation);
    text += "  player " + std::to_string(deviation->player + 1) + " deviates to " +
            dcnc::FormatTuple(deviation->to) + ", improving by " +
            deviation->improvement.ToString() + "\n";
  }

  const auto membership = dcnc::McpMembership(game, system, x, limits);
  if (const auto* cert = std::get_if<dcnc::KktCertificate>(&membership)) {
    verdict["mcp_member"] = true;
    verdict["certificate"] = dcnc::CertificateToJson(system, *cert);
    text += "MCP member: yes\n";
  } else {
    const auto& ref = std::get<dcnc::MembershipRefutation>(membership);
    verdict["mcp_member"] = false;
    verdict["refutation"] = dcnc::RefutationToJson(system, ref);
    text += "MCP member: no (player " + std::to_string(ref.player + 1) + ", " +
            std::to_string(ref.patterns.size()) + " pattern(s) refuted)\n";
    for (const auto& pattern : verdict["refutation"]["patterns"]) {
      text += "  " + pattern["contradiction"].get<std::string>() + "\n";
    }
  }

  int exit_code = kExitOk;
  if (lambda_text || multipliers_text) {
    std::vector<dcnc::RationalVector> aux;
    if (lambda_text) {
      aux = dcnc::LambdaListToMultipliers(dcnc::ParseProfile(*lambda_text).x, system);
    } else {
      std::string body = *multipliers_text;
      if (body.empty() || body.front() != '{') body = dcnc::ReadFile(body);
      aux = dcnc::ParseMultipliers(Json::parse(body), system);
    }
    std::optional<std::string> failure;
    for (size_t p = 0; p < aux.size() && !failure; ++p) {
      if (auto why = dcnc::CheckPlayerKkt(system.players[p], x.x, aux[p])) {
        failure = "player " + std::to_string(p + 1) + ": " + *why;
      }
    }
    verdict["supplied_multipliers"]["verified"] = !failure.has_value();
    if (failure) {
      verdict["supplied_multipliers"]["failure"] = *failure;
      exit_code = kExitVerificationFailed;
    }
    text += "supplied multipliers: " + (failure ? "FAIL, " + *failure : std::string("verified")) +
            "\n";
  }

  const std::string json = verdict.dump(2) + "\n";
  if (!flags.out.empty()) dcnc::WriteFile(flags.out, json);
  std::cout << (flags.json ? json : text);
  return exit_code;
}

int RunVerifyReport(const std::string& path, const CommonFlags& flags) {
  const Json j = Json::parse(dcnc::ReadFile(path));
  std::vector<dcnc::ParsedReport> reports;
  if (j.contains("schema") && j["schema"] == "dcnc-sweep") {
    for (const auto& row : j.at("rows")) reports.push_back(dcnc::ParseReport(row.at("report")));
  } else {
    reports.push_back(dcnc::ParseReport(j));
  }
  size_t failures = 0;
  for (const auto& report : reports) {
    for (const auto& f : dcnc::VerifyReport(report, flags.Limits())) {
      std::cout << report.game.name << ": FAIL " << f << "\n";
      ++failures;
    }
  }
  std::cout << (failures ? "report does not verify\n" : "report verifies\n");
  return failures ? kExitVerificationFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria vs. integral KKT solutions of discretely-constrained games"};
  app.require_subcommand(1);

  CommonFlags flags;

  std::string game_path;
  auto* solve = app.add_subcommand("solve", "Classify a game file");
  solve->add_option("game", game_path, "Game JSON file")->required();
  flags.Attach(solve);

  std::string case_name;
  std::string param;
  std::string emit_game;
  auto* builtin = app.add_subcommand("builtin", "Run a built-in counterexample");
  builtin->add_option("name", case_name, "example1 | example2-l2 | example2-l1")->required();
  builtin->add_option("--param", param, "epsilon (example1) or delta (example2), p/q")
      ->required();
  builtin->add_option("--emit-game", emit_game, "Also write the generated game file");
  flags.Attach(builtin);

  std::string grid;
  std::string sweep_report;
  auto* sweep = app.add_subcommand("sweep", "Sweep a built-in case over a parameter grid");
  sweep->add_option("name", case_name, "example1 | example2-l2 | example2-l1")->required();
  sweep->add_option("--grid", grid, "start:stop:step or comma list (use --grid=... for negatives)")
      ->required();
  sweep->add_option("--report", sweep_report, "Also write the full JSON reports");
  flags.Attach(sweep, false);

  std::string profile;
  std::optional<std::string> lambda;
  std::optional<std::string> multipliers;
  auto* check = app.add_subcommand("check", "Check one profile against both definitions");
  check->add_option("game", game_path, "Game JSON file")->required();
  check->add_option("--profile", profile, "Comma-separated joint profile")->required();
  auto* lambda_opt = check->add_option("--lambda", lambda, "Comma-separated multipliers");
  check->add_option("--multipliers", multipliers, "Multiplier JSON (inline or file)")
      ->excludes(lambda_opt);
  flags.Attach(check);

  std::string report_path;
  auto* verify = app.add_subcommand("verify-report", "Re-verify all evidence in a report");
  verify->add_option("report", report_path, "Report JSON file")->required();
  flags.Attach(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (*solve) return EmitReport(dcnc::ParseGameText(dcnc::ReadFile(game_path)), flags);
    if (*builtin) {
      const auto spec = dcnc::MakeBuiltin(ParseCase(case_name), ParseParam(param));
      if (!emit_game.empty()) dcnc::WriteFile(emit_game, dcnc::RenderGameText(spec));
      return EmitReport(spec, flags);
    }
    if (*sweep) {
      const auto c = ParseCase(case_name);
      const auto rows = dcnc::Sweep(c, dcnc::ParseGrid(grid), flags.Limits());
      const std::string csv = dcnc::SweepCsv(rows);
      if (!flags.out.empty()) dcnc::WriteFile(flags.out, csv);
      if (!sweep_report.empty()) {
        dcnc::WriteFile(sweep_report, dcnc::SweepToJson(c, rows).dump(2) + "\n");
      }
      std::cout << csv;
      return kExitOk;
    }
    if (*check) return RunCheck(game_path, profile, lambda, multipliers, flags);
    if (*verify) return RunVerifyReport(report_path, flags);
  } catch (const DcncError& e) {
    std::cerr << "dcnc: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kParse:
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kDimensionMismatch:
      case ErrorCode::kInfeasibleProfile:
      case ErrorCode::kNonPositiveEpsilon:
        return kExitInputError;
      case ErrorCode::kInclusionViolated:
        return kExitVerificationFailed;
      default:
        return kExitValidationError;
    }
  } catch (const Json::exception& e) {
    std::cerr << "dcnc: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
