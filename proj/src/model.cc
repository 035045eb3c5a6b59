#include "dcnc/model.h"

#include <algorithm>
#include <sstream>

namespace dcnc {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvexOwnBlock: return "NonConvexOwnBlock";
    case ErrorCode::kUnboundedLattice: return "UnboundedLattice";
    case ErrorCode::kNegativeAbsWeight: return "NegativeAbsWeight";
    case ErrorCode::kOwnershipOverlap: return "OwnershipOverlap";
    case ErrorCode::kOwnershipGap: return "OwnershipGap";
    case ErrorCode::kPlayerIdGap: return "PlayerIdGap";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kContinuousDecision: return "ContinuousDecision";
    case ErrorCode::kNonSymmetricQuadratic: return "NonSymmetricQuadratic";
    case ErrorCode::kNotValidated: return "NotValidated";
    case ErrorCode::kLatticeTooLarge: return "LatticeTooLarge";
    case ErrorCode::kEmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorCode::kInfeasibleProfile: return "InfeasibleProfile";
    case ErrorCode::kPatternBudgetExceeded: return "PatternBudgetExceeded";
    case ErrorCode::kNonPositiveEpsilon: return "NonPositiveEpsilon";
    case ErrorCode::kInclusionViolated: return "InclusionViolated";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string Diagnostic::ToString() const {
  std::ostringstream os;
  os << (warning ? "warning: " : "error: ") << ErrorCodeName(code);
  if (player >= 0) os << " (player " << player + 1 << ")";
  os << ": " << message;
  return os.str();
}

Objective Objective::Zero(int num_vars) {
  Objective o;
  o.quad = RationalMatrix(num_vars, num_vars);
  o.lin.assign(num_vars, Rational(0));
  return o;
}

namespace {

void Report(std::vector<Diagnostic>* out, ErrorCode code, int player,
            std::string message, bool warning = false) {
  out->push_back({code, player, std::move(message), warning});
}

// Upper bound on own variable i implied by a single sign-uniform row, if any.
std::optional<Rational> RowBound(const AffineConstraint& row, int i, bool equality) {
  bool all_nonneg = true;
  bool all_nonpos = true;
  for (const auto& a : row.coef) {
    if (a.Sign() < 0) all_nonneg = false;
    if (a.Sign() > 0) all_nonpos = false;
  }
  if (all_nonneg && row.coef[i].Sign() > 0) return row.rhs / row.coef[i];
  if (equality && all_nonpos && row.coef[i].Sign() < 0) return row.rhs / row.coef[i];
  return std::nullopt;
}

void CheckObjectiveShape(const Objective& obj, int n, int p,
                         std::vector<Diagnostic>* diags) {
  if (obj.quad.rows() != n || obj.quad.cols() != n) {
    Report(diags, ErrorCode::kDimensionMismatch, p, "quadratic matrix is not n x n");
    return;
  }
  if (!obj.quad.IsSymmetric()) {
    Report(diags, ErrorCode::kNonSymmetricQuadratic, p, "quadratic matrix not symmetric");
  }
  if (static_cast<int>(obj.lin.size()) != n) {
    Report(diags, ErrorCode::kDimensionMismatch, p, "linear vector length != n");
  }
  for (size_t t = 0; t < obj.abs_terms.size(); ++t) {
    const auto& term = obj.abs_terms[t];
    if (static_cast<int>(term.coef.size()) != n) {
      Report(diags, ErrorCode::kDimensionMismatch, p,
             "abs term " + std::to_string(t) + " coefficient length != n");
    }
    if (term.weight.Sign() < 0) {
      Report(diags, ErrorCode::kNegativeAbsWeight, p,
             "abs term " + std::to_string(t) + " has weight " + term.weight.ToString());
    }
  }
}

}  // namespace

ValidationResult ValidateGame(const GameSpec& spec) {
  ValidationResult result;
  auto* diags = &result.diagnostics;
  const int n = spec.num_vars;

  if (spec.players.empty()) {
    Report(diags, ErrorCode::kPlayerIdGap, -1, "game has no players");
  }
  std::vector<int> owner(std::max(n, 0), -1);
  for (int p = 0; p < spec.num_players(); ++p) {
    const auto& pl = spec.players[p];
    if (pl.id != p + 1) {
      Report(diags, ErrorCode::kPlayerIdGap, p,
             "player id " + std::to_string(pl.id) + " at position " +
                 std::to_string(p + 1));
    }
    if (pl.count <= 0 || pl.first < 0 || pl.first + pl.count > n) {
      Report(diags, ErrorCode::kDimensionMismatch, p, "owned range out of bounds");
      continue;
    }
    for (int i = pl.first; i < pl.first + pl.count; ++i) {
      if (owner[i] >= 0) {
        Report(diags, ErrorCode::kOwnershipOverlap, p,
               "variable " + std::to_string(i) + " already owned by player " +
                   std::to_string(owner[i] + 1));
      } else {
        owner[i] = p;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (owner[i] < 0) {
      Report(diags, ErrorCode::kOwnershipGap, -1,
             "variable " + std::to_string(i) + " has no owner");
    }
  }

  ValidatedGame game;
  game.spec_ = spec;
  for (int p = 0; p < spec.num_players(); ++p) {
    const auto& pl = spec.players[p];
    const int np = pl.count;
    CheckObjectiveShape(pl.objective, n, p, diags);
    bool rows_ok = true;
    for (const auto* rows : {&pl.ineq, &pl.eq}) {
      for (const auto& row : *rows) {
        if (static_cast<int>(row.coef.size()) != np) {
          Report(diags, ErrorCode::kDimensionMismatch, p,
                 "constraint row length != own variable count");
          rows_ok = false;
        }
      }
    }
    if (static_cast<int>(pl.integral.size()) != np ||
        static_cast<int>(pl.upper.size()) != np) {
      Report(diags, ErrorCode::kDimensionMismatch, p,
             "integral/upper lists must have one entry per own variable");
      game.inequalities_.emplace_back();
      game.box_upper_.emplace_back();
      continue;
    }
    for (int i = 0; i < np; ++i) {
      if (!pl.integral[i]) {
        Report(diags, ErrorCode::kContinuousDecision, p,
               "own variable " + std::to_string(i) + " is not integral");
      }
    }

    std::vector<AffineConstraint> ineq = pl.ineq;
    for (int i = 0; i < np; ++i) {
      if (!pl.upper[i]) continue;
      AffineConstraint bound{RationalVector(np, Rational(0)), *pl.upper[i]};
      bound.coef[i] = Rational(1);
      ineq.push_back(std::move(bound));
    }
    std::vector<long> box(np, 0);
    if (rows_ok) {
      for (int i = 0; i < np; ++i) {
        std::optional<Rational> ub;
        auto consider = [&](const AffineConstraint& row, bool equality) {
          auto b = RowBound(row, i, equality);
          if (b && (!ub || *b < *ub)) ub = b;
        };
        for (const auto& row : ineq) consider(row, false);
        for (const auto& row : pl.eq) consider(row, true);
        if (!ub) {
          Report(diags, ErrorCode::kUnboundedLattice, p,
                 "no finite upper bound on own variable " + std::to_string(i));
          continue;
        }
        const mpz_class fl = ub->Floor();
        if (!fl.fits_slong_p()) {
          Report(diags, ErrorCode::kUnboundedLattice, p, "bound does not fit a machine integer");
          continue;
        }
        box[i] = fl.get_si();
      }
    }
    game.inequalities_.push_back(std::move(ineq));
    game.box_upper_.push_back(std::move(box));

    if (pl.objective.quad.rows() == n && pl.objective.quad.IsSymmetric() && pl.count > 0 &&
        pl.first + pl.count <= n) {
      std::vector<int> own(np);
      for (int i = 0; i < np; ++i) own[i] = pl.first + i;
      if (!IsPositiveSemidefinite(pl.objective.quad.Principal(own))) {
        game.convex_ = false;
        Diagnostic d{ErrorCode::kNonConvexOwnBlock, p,
                     "own block of the quadratic term is not positive semidefinite", true};
        game.warnings_.push_back(d);
        diags->push_back(d);
      }
    }
  }

  const bool has_error = std::any_of(diags->begin(), diags->end(),
                                     [](const Diagnostic& d) { return !d.warning; });
  if (!has_error) result.game = std::move(game);
  return result;
}

ValidatedGame ValidateOrThrow(const GameSpec& spec) {
  auto result = ValidateGame(spec);
  if (!result.game) {
    std::string msg = "game '" + spec.name + "' failed validation";
    ErrorCode first = ErrorCode::kInvalidArgument;
    bool have_first = false;
    for (const auto& d : result.diagnostics) {
      if (d.warning) continue;
      if (!have_first) { first = d.code; have_first = true; }
      msg += "\n  " + d.ToString();
    }
    throw DcncError(first, msg);
  }
  return std::move(*result.game);
}

void ValidatedGame::RequireConvex() const {
  if (!convex_) {
    throw DcncError(ErrorCode::kNonConvexOwnBlock,
                    "KKT analysis requires convex own blocks");
  }
}

RationalVector ValidatedGame::OwnSlice(int p, const RationalVector& joint) const {
  const auto& pl = spec_.players[p];
  return RationalVector(joint.begin() + pl.first, joint.begin() + pl.first + pl.count);
}

void ValidatedGame::SetOwnSlice(int p, const RationalVector& own,
                                RationalVector* joint) const {
  const auto& pl = spec_.players[p];
  std::copy(own.begin(), own.end(), joint->begin() + pl.first);
}

Rational EvaluateQuadraticPart(const Objective& obj, const RationalVector& x) {
  const int n = static_cast<int>(x.size());
  Rational value = obj.constant;
  for (int i = 0; i < n; ++i) {
    if (x[i].IsZero()) continue;
    if (!obj.lin[i].IsZero()) value += obj.lin[i] * x[i];
    Rational row;
    for (int j = 0; j < n; ++j) {
      if (!obj.quad(i, j).IsZero() && !x[j].IsZero()) row += obj.quad(i, j) * x[j];
    }
    value += x[i] * row;
  }
  return value;
}

Rational EvaluateObjective(const ValidatedGame& game, int p,
                           const StrategyProfile& profile) {
  if (static_cast<int>(profile.x.size()) != game.num_vars()) {
    throw DcncError(ErrorCode::kDimensionMismatch,
                    "profile has " + std::to_string(profile.x.size()) +
                        " entries, game has " + std::to_string(game.num_vars()));
  }
  const auto& obj = game.player(p).objective;
  Rational value = EvaluateQuadraticPart(obj, profile.x);
  for (const auto& term : obj.abs_terms) {
    value += term.weight * (Dot(term.coef, profile.x) + term.offset).Abs();
  }
  return value;
}

bool IsOwnFeasible(const ValidatedGame& game, int p, const RationalVector& own) {
  const auto& pl = game.player(p);
  if (static_cast<int>(own.size()) != pl.count) return false;
  for (int i = 0; i < pl.count; ++i) {
    if (own[i].Sign() < 0) return false;
    if (pl.integral[i] && !own[i].IsInteger()) return false;
  }
  for (const auto& row : game.inequalities(p)) {
    if (row.Value(own).Sign() > 0) return false;
  }
  for (const auto& row : pl.eq) {
    if (!row.Value(own).IsZero()) return false;
  }
  return true;
}

bool IsProfileFeasible(const ValidatedGame& game, const StrategyProfile& profile) {
  if (static_cast<int>(profile.x.size()) != game.num_vars()) return false;
  for (int p = 0; p < game.num_players(); ++p) {
    if (!IsOwnFeasible(game, p, game.OwnSlice(p, profile.x))) return false;
  }
  return true;
}

std::vector<RationalVector> EnumerateFeasibleLattice(const ValidatedGame& game, int p,
                                                     const Limits& limits) {
  const auto& upper = game.box_upper(p);
  const int np = static_cast<int>(upper.size());
  size_t box_size = 1;
  for (long u : upper) {
    if (u < 0) return {};
    const size_t width = static_cast<size_t>(u) + 1;
    if (box_size > limits.lattice_cap / width) {
      box_size = limits.lattice_cap + 1;
      break;
    }
    box_size *= width;
  }
  if (box_size > limits.lattice_cap) {
    throw DcncError(ErrorCode::kLatticeTooLarge,
                    "player " + std::to_string(p + 1) + " box exceeds lattice cap " +
                        std::to_string(limits.lattice_cap));
  }

  std::vector<RationalVector> points;
  std::vector<long> cur(np, 0);
  RationalVector own(np, Rational(0));
  while (true) {
    if (IsOwnFeasible(game, p, own)) points.push_back(own);
    // Odometer increment, last coordinate fastest: lexicographic order.
    int k = np - 1;
    while (k >= 0 && cur[k] == upper[k]) {
      cur[k] = 0;
      own[k] = Rational(0);
      --k;
    }
    if (k < 0) break;
    ++cur[k];
    own[k] = Rational(cur[k]);
  }
  return points;
}

std::vector<StrategyProfile> EnumerateJointLattice(const ValidatedGame& game,
                                                   const Limits& limits) {
  std::vector<std::vector<RationalVector>> per_player;
  size_t total = 1;
  for (int p = 0; p < game.num_players(); ++p) {
    per_player.push_back(EnumerateFeasibleLattice(game, p, limits));
    if (per_player.back().empty()) return {};
    total *= per_player.back().size();
    if (total > limits.lattice_cap) {
      throw DcncError(ErrorCode::kLatticeTooLarge,
                      "joint lattice exceeds cap " + std::to_string(limits.lattice_cap));
    }
  }
  std::vector<StrategyProfile> out;
  out.reserve(total);
  std::vector<size_t> idx(game.num_players(), 0);
  while (true) {
    StrategyProfile prof{RationalVector(game.num_vars())};
    for (int p = 0; p < game.num_players(); ++p) {
      game.SetOwnSlice(p, per_player[p][idx[p]], &prof.x);
    }
    out.push_back(std::move(prof));
    int k = game.num_players() - 1;
    while (k >= 0 && idx[k] + 1 == per_player[k].size()) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dcnc
