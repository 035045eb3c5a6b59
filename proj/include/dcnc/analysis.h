#ifndef DCNC_ANALYSIS_H_
#define DCNC_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcnc/kkt.h"
#include "dcnc/model.h"
#include "dcnc/nash.h"

namespace dcnc {

enum class Relation {
  kEqual,
  kStrictSubset,
  kEmptyMcpNonemptyNash,
  kBothEmpty,
};

std::string_view RelationName(Relation r);
std::optional<Relation> ParseRelation(std::string_view name);

// Throws kInclusionViolated when mcp is not a subset of nash.
Relation Classify(const EquilibriumSet& nash, const EquilibriumSet& mcp);

// A player's minimum of f_p over the whole joint lattice, and whether some
// minimizing profile is an equilibrium the complementarity system misses.
struct GlobalOptNote {
  int player = 0;
  Rational value;
  std::vector<StrategyProfile> minimizers;
  bool missed = false;
};

struct MissedEquilibrium {
  StrategyProfile profile;
  MembershipRefutation refutation;
};

struct InclusionReport {
  GameSpec game;
  EquilibriumSet nash;
  McpSolutionSet mcp;
  Relation relation = Relation::kBothEmpty;
  std::vector<MissedEquilibrium> witnesses;  // one per profile of nash \ mcp
  std::vector<GlobalOptNote> global_opt;     // one per player
};

InclusionReport MakeInclusionReport(const ValidatedGame& game, const Limits& limits = {});

enum class BuiltinCase { kExample1, kExample2L2, kExample2L1 };

std::string_view BuiltinCaseName(BuiltinCase c);
std::optional<BuiltinCase> ParseBuiltinCase(std::string_view name);

// Two players, f_p = -x_p - x_-p, x_p <= 1 + eps, x_p integral.
GameSpec BuiltinExample1(const Rational& eps);

enum class Example2Mode { kL2, kL1 };

// f_1 = D(x), f_2 = D(x) - delta x_1 x_2 with D = (2x_1 - 3x_2)^2 (L2) or
// |2x_1 - 3x_2| (L1); x_p <= 1, x_p integral.
GameSpec BuiltinExample2(const Rational& delta, Example2Mode mode);

GameSpec MakeBuiltin(BuiltinCase c, const Rational& param);

struct SweepRow {
  Rational param;
  InclusionReport report;

  const EquilibriumSet& nash() const { return report.nash; }
  const EquilibriumSet& mcp() const { return report.mcp.solutions; }
  Relation relation() const { return report.relation; }
};

// One report per grid value, in grid order. Rows run on limits.threads
// workers; the oracles inside each row run single threaded.
std::vector<SweepRow> Sweep(BuiltinCase c, const std::vector<Rational>& grid,
                            const Limits& limits = {});

// start:stop:step (inclusive of stop when hit exactly) or a comma list.
std::vector<Rational> ParseGrid(std::string_view spec);

struct RandomGameShape {
  int max_players = 3;
  int max_own_vars = 2;
  int max_bound = 3;
  int max_abs_terms = 1;
  int max_extra_rows = 1;
  int coef_range = 2;  // integer numerators drawn from [-range, range]
  int max_denominator = 2;
  int max_attempts = 100;
};

// Convex, validated game; deterministic in (seed, shape).
GameSpec RandomGame(uint64_t seed, const RandomGameShape& shape = {});

}  // namespace dcnc

#endif  // DCNC_ANALYSIS_H_
