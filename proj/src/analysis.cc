#include "dcnc/analysis.h"

#include <algorithm>
#include <random>

#include "dcnc/parallel.h"

namespace dcnc {

std::string_view RelationName(Relation r) {
  switch (r) {
    case Relation::kEqual: return "Equal";
    case Relation::kStrictSubset: return "StrictSubset";
    case Relation::kEmptyMcpNonemptyNash: return "EmptyMcpNonemptyNash";
    case Relation::kBothEmpty: return "BothEmpty";
  }
  return "Unknown";
}

std::optional<Relation> ParseRelation(std::string_view name) {
  for (Relation r : {Relation::kEqual, Relation::kStrictSubset,
                     Relation::kEmptyMcpNonemptyNash, Relation::kBothEmpty}) {
    if (RelationName(r) == name) return r;
  }
  return std::nullopt;
}

Relation Classify(const EquilibriumSet& nash, const EquilibriumSet& mcp) {
  for (const auto& x : mcp.profiles) {
    if (!nash.Contains(x)) {
      throw DcncError(ErrorCode::kInclusionViolated,
                      "complementarity solution " + x.ToString() + " is not an equilibrium");
    }
  }
  if (nash.empty()) return Relation::kBothEmpty;
  if (mcp.empty()) return Relation::kEmptyMcpNonemptyNash;
  if (mcp.size() == nash.size()) return Relation::kEqual;
  return Relation::kStrictSubset;
}

InclusionReport MakeInclusionReport(const ValidatedGame& game, const Limits& limits) {
  InclusionReport report;
  report.game = game.spec();
  report.nash = EnumerateDcNash(game, limits);
  report.mcp = SolveDcMcp(game, limits);
  report.relation = Classify(report.nash, report.mcp.solutions);

  const RelaxedKktSystem system = BuildKktSystem(game);
  for (const auto& x : report.nash.profiles) {
    if (report.mcp.solutions.Contains(x)) continue;
    auto result = McpMembership(game, system, x, limits);
    report.witnesses.push_back({x, std::get<MembershipRefutation>(std::move(result))});
  }

  const auto lattice = EnumerateJointLattice(game, limits);
  for (int p = 0; p < game.num_players(); ++p) {
    GlobalOptNote note;
    note.player = p;
    for (const auto& x : lattice) {
      Rational v = EvaluateObjective(game, p, x);
      if (note.minimizers.empty() || v < note.value) {
        note.value = std::move(v);
        note.minimizers.assign(1, x);
      } else if (v == note.value) {
        note.minimizers.push_back(x);
      }
    }
    for (const auto& x : note.minimizers) {
      if (report.nash.Contains(x) && !report.mcp.solutions.Contains(x)) note.missed = true;
    }
    report.global_opt.push_back(std::move(note));
  }
  return report;
}

std::string_view BuiltinCaseName(BuiltinCase c) {
  switch (c) {
    case BuiltinCase::kExample1: return "example1";
    case BuiltinCase::kExample2L2: return "example2-l2";
    case BuiltinCase::kExample2L1: return "example2-l1";
  }
  return "unknown";
}

std::optional<BuiltinCase> ParseBuiltinCase(std::string_view name) {
  for (BuiltinCase c : {BuiltinCase::kExample1, BuiltinCase::kExample2L2,
                        BuiltinCase::kExample2L1}) {
    if (BuiltinCaseName(c) == name) return c;
  }
  return std::nullopt;
}

namespace {

PlayerSpec BinaryLikePlayer(int id, int index, int num_vars, const Rational& upper) {
  PlayerSpec pl;
  pl.id = id;
  pl.first = index;
  pl.count = 1;
  pl.objective = Objective::Zero(num_vars);
  pl.ineq.push_back({{Rational(1)}, upper});
  pl.integral = {true};
  pl.upper = {std::nullopt};
  return pl;
}

}  // namespace

GameSpec BuiltinExample1(const Rational& eps) {
  if (eps.Sign() <= 0) {
    throw DcncError(ErrorCode::kNonPositiveEpsilon,
                    "epsilon must be positive, got " + eps.ToString());
  }
  GameSpec g;
  g.name = "example1(epsilon=" + eps.ToString() + ")";
  g.num_vars = 2;
  for (int p = 0; p < 2; ++p) {
    PlayerSpec pl = BinaryLikePlayer(p + 1, p, 2, Rational(1) + eps);
    pl.objective.lin = {Rational(-1), Rational(-1)};
    g.players.push_back(std::move(pl));
  }
  return g;
}

GameSpec BuiltinExample2(const Rational& delta, Example2Mode mode) {
  GameSpec g;
  g.name = std::string(mode == Example2Mode::kL2 ? "example2-l2" : "example2-l1") +
           "(delta=" + delta.ToString() + ")";
  g.num_vars = 2;
  for (int p = 0; p < 2; ++p) {
    PlayerSpec pl = BinaryLikePlayer(p + 1, p, 2, Rational(1));
    auto& q = pl.objective.quad;
    if (mode == Example2Mode::kL2) {
      // (2x1 - 3x2)^2 = 4x1^2 - 12x1x2 + 9x2^2
      q(0, 0) = Rational(4);
      q(1, 1) = Rational(9);
      q(0, 1) = q(1, 0) = Rational(-6);
    } else {
      pl.objective.abs_terms.push_back({Rational(1), {Rational(2), Rational(-3)}, Rational(0)});
    }
    if (p == 1) {
      // -delta x1 x2
      q(0, 1) -= delta / Rational(2);
      q(1, 0) = q(0, 1);
    }
    g.players.push_back(std::move(pl));
  }
  return g;
}

GameSpec MakeBuiltin(BuiltinCase c, const Rational& param) {
  switch (c) {
    case BuiltinCase::kExample1: return BuiltinExample1(param);
    case BuiltinCase::kExample2L2: return BuiltinExample2(param, Example2Mode::kL2);
    case BuiltinCase::kExample2L1: return BuiltinExample2(param, Example2Mode::kL1);
  }
  throw DcncError(ErrorCode::kInvalidArgument, "unknown builtin case");
}

std::vector<SweepRow> Sweep(BuiltinCase c, const std::vector<Rational>& grid,
                            const Limits& limits) {
  if (grid.empty()) throw DcncError(ErrorCode::kInvalidArgument, "empty parameter grid");
  Limits inner = limits;
  inner.threads = 1;
  return ParallelMap<SweepRow>(grid.size(), limits.threads, [&](size_t i) {
    const ValidatedGame game = ValidateOrThrow(MakeBuiltin(c, grid[i]));
    return SweepRow{grid[i], MakeInclusionReport(game, inner)};
  });
}

std::vector<Rational> ParseGrid(std::string_view spec) {
  std::vector<Rational> out;
  auto parse = [](std::string_view s) {
    Rational q;
    if (!Rational::TryParse(s, &q)) {
      throw DcncError(ErrorCode::kParse, "bad rational '" + std::string(s) + "' in grid");
    }
    return q;
  };
  if (spec.find(':') != std::string_view::npos) {
    const auto a = spec.find(':');
    const auto b = spec.find(':', a + 1);
    if (b == std::string_view::npos) {
      throw DcncError(ErrorCode::kParse, "range grid must be start:stop:step");
    }
    const Rational start = parse(spec.substr(0, a));
    const Rational stop = parse(spec.substr(a + 1, b - a - 1));
    const Rational step = parse(spec.substr(b + 1));
    if (step.Sign() <= 0) throw DcncError(ErrorCode::kParse, "grid step must be positive");
    for (Rational v = start; v <= stop; v += step) out.push_back(v);
  } else {
    size_t pos = 0;
    while (pos <= spec.size()) {
      const auto comma = spec.find(',', pos);
      const auto end = comma == std::string_view::npos ? spec.size() : comma;
      out.push_back(parse(spec.substr(pos, end - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  if (out.empty()) throw DcncError(ErrorCode::kInvalidArgument, "empty parameter grid");
  return out;
}

namespace {

// Portable draws: std::uniform_int_distribution is not specified bit-exactly
// across standard libraries, so map raw 64-bit outputs by modulus.
class Draw {
 public:
  explicit Draw(uint64_t seed) : rng_(seed) {}

  int Int(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool Chance(int percent) { return Int(0, 99) < percent; }
  Rational Small(int range, int max_den) {
    return Rational(Int(-range, range), Int(1, max_den));
  }

 private:
  std::mt19937_64 rng_;
};

GameSpec DrawGame(Draw& d, uint64_t seed, const RandomGameShape& shape) {
  GameSpec g;
  g.name = "random(seed=" + std::to_string(seed) + ")";
  const int players = d.Int(1, shape.max_players);
  std::vector<int> counts(players);
  for (auto& c : counts) {
    c = d.Int(1, shape.max_own_vars);
    g.num_vars += c;
  }
  const int n = g.num_vars;
  int first = 0;
  for (int p = 0; p < players; ++p) {
    PlayerSpec pl;
    pl.id = p + 1;
    pl.first = first;
    pl.count = counts[p];
    first += counts[p];
    const int np = pl.count;

    Objective obj = Objective::Zero(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        if (d.Chance(50)) obj.quad(i, j) = obj.quad(j, i) = d.Small(shape.coef_range, shape.max_denominator);
      }
      obj.lin[i] = d.Small(shape.coef_range, shape.max_denominator);
    }
    // Own block M'M / s is PSD.
    std::vector<std::vector<int>> m(np, std::vector<int>(np));
    for (auto& row : m) {
      for (auto& v : row) v = d.Int(-shape.coef_range, shape.coef_range);
    }
    const Rational scale(1, d.Int(1, shape.max_denominator));
    for (int i = 0; i < np; ++i) {
      for (int j = 0; j < np; ++j) {
        long s = 0;
        for (int k = 0; k < np; ++k) s += static_cast<long>(m[k][i]) * m[k][j];
        obj.quad(pl.first + i, pl.first + j) = Rational(s) * scale;
      }
    }
    obj.constant = d.Small(shape.coef_range, shape.max_denominator);
    const int abs_terms = d.Int(0, shape.max_abs_terms);
    for (int t = 0; t < abs_terms; ++t) {
      AbsTerm term;
      term.weight = Rational(d.Int(0, shape.coef_range), d.Int(1, shape.max_denominator));
      for (int i = 0; i < n; ++i) term.coef.push_back(Rational(d.Int(-shape.coef_range, shape.coef_range)));
      term.offset = d.Small(shape.coef_range, shape.max_denominator);
      obj.abs_terms.push_back(std::move(term));
    }
    pl.objective = std::move(obj);

    // Box rows x_i <= b_i, sometimes with a fractional bound.
    for (int i = 0; i < np; ++i) {
      AffineConstraint row{RationalVector(np, Rational(0)), Rational(0)};
      row.coef[i] = Rational(1);
      row.rhs = Rational(d.Int(0, shape.max_bound));
      if (d.Chance(25) && row.rhs < Rational(shape.max_bound)) row.rhs += Rational(1, 2);
      pl.ineq.push_back(std::move(row));
    }
    const int extra = d.Int(0, shape.max_extra_rows);
    for (int r = 0; r < extra; ++r) {
      AffineConstraint row{RationalVector(np), Rational(0)};
      for (auto& a : row.coef) a = Rational(d.Int(-shape.coef_range, shape.coef_range));
      row.rhs = Rational(d.Int(0, shape.max_bound));
      // Equalities are pinned through the origin-side point so X_p stays
      // nonempty; inequalities with rhs >= 0 always admit x = 0.
      if (np > 1 && d.Chance(20)) {
        row.rhs = Rational(0);
        pl.eq.push_back(std::move(row));
      } else {
        pl.ineq.push_back(std::move(row));
      }
    }
    pl.integral.assign(np, true);
    pl.upper.assign(np, std::nullopt);
    g.players.push_back(std::move(pl));
  }
  return g;
}

}  // namespace

GameSpec RandomGame(uint64_t seed, const RandomGameShape& shape) {
  Draw d(seed);
  for (int attempt = 0; attempt < shape.max_attempts; ++attempt) {
    GameSpec g = DrawGame(d, seed, shape);
    auto result = ValidateGame(g);
    if (result.game && result.game->convex()) return g;
  }
  throw DcncError(ErrorCode::kInvalidArgument,
                  "random game generation exhausted retries for seed " + std::to_string(seed));
}

}  // namespace dcnc
