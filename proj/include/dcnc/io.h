#ifndef DCNC_IO_H_
#define DCNC_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "dcnc/analysis.h"
#include "json.hpp"

namespace dcnc {

using Json = nlohmann::ordered_json;

inline constexpr int kGameSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

// Game file <-> GameSpec. Parsing is strict: unknown keys, floats and
// missing required fields are rejected with a JSON-pointer location.
GameSpec GameFromJson(const Json& j);
Json GameToJson(const GameSpec& game);
// Parses text; syntax errors carry line and column.
GameSpec ParseGameText(std::string_view text);
std::string RenderGameText(const GameSpec& game);

Json RationalToJson(const Rational& q);
Rational RationalFromJson(const Json& j, const std::string& where);

Json ReportToJson(const InclusionReport& report);
std::string RenderReportText(const InclusionReport& report);

struct ParsedReport {
  GameSpec game;
  Relation relation = Relation::kBothEmpty;
  EquilibriumSet nash;
  EquilibriumSet mcp;
  std::vector<KktCertificate> certificates;
  std::vector<MembershipRefutation> refutations;
};

ParsedReport ParseReport(const Json& j);

// Re-checks every piece of evidence in a report against its embedded game.
// Returns the list of failures; empty means the report verifies.
std::vector<std::string> VerifyReport(const ParsedReport& report, const Limits& limits = {});

// Human-readable summary; 2x2 single-variable games get a payoff matrix.
std::string RenderReportTable(const InclusionReport& report);

std::string SweepCsv(const std::vector<SweepRow>& rows);
Json SweepToJson(BuiltinCase c, const std::vector<SweepRow>& rows);

// Parses "1,1" or "(1,1)" into a profile of the given dimension.
StrategyProfile ParseProfile(std::string_view text);

// Multipliers for cmd_check: {"players":[{"player":1,"multipliers":{name:value}}]}
// or a flat lambda list for games without equalities or absolute-value terms.
std::vector<RationalVector> ParseMultipliers(const Json& j, const RelaxedKktSystem& system);
std::vector<RationalVector> LambdaListToMultipliers(const RationalVector& lambdas,
                                                    const RelaxedKktSystem& system);

Json CertificateToJson(const RelaxedKktSystem& system, const KktCertificate& cert);
Json RefutationToJson(const RelaxedKktSystem& system, const MembershipRefutation& ref);
Json WitnessToJson(const DeviationWitness& w);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace dcnc

#endif  // DCNC_IO_H_
