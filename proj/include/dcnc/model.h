#ifndef DCNC_MODEL_H_
#define DCNC_MODEL_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dcnc/error.h"
#include "dcnc/rational.h"

namespace dcnc {

// Limits shared by the enumeration-based oracles.
struct Limits {
  size_t lattice_cap = 1'000'000;
  size_t pattern_budget = size_t{1} << 16;
  int threads = 1;
};

// weight * |coef . x + offset|, with coef over the joint vector.
struct AbsTerm {
  Rational weight;
  RationalVector coef;
  Rational offset;

  friend bool operator==(const AbsTerm&, const AbsTerm&) = default;
};

// f(x) = x'Qx + c'x + d + sum_t w_t |a_t'x + b_t| over the joint vector x.
struct Objective {
  RationalMatrix quad;
  RationalVector lin;
  Rational constant;
  std::vector<AbsTerm> abs_terms;

  static Objective Zero(int num_vars);

  friend bool operator==(const Objective&, const Objective&) = default;
};

// coef . x_own <= rhs (inequality) or coef . x_own == rhs (equality).
struct AffineConstraint {
  RationalVector coef;
  Rational rhs;

  // g(x_own) = coef . x_own - rhs.
  Rational Value(const RationalVector& own) const { return Dot(coef, own) - rhs; }

  friend bool operator==(const AffineConstraint&, const AffineConstraint&) = default;
};

struct PlayerSpec {
  int id = 0;
  int first = 0;  // first joint index owned
  int count = 0;  // number of own variables
  Objective objective;
  std::vector<AffineConstraint> ineq;
  std::vector<AffineConstraint> eq;
  std::vector<bool> integral;
  // Declared upper bounds; nullopt means derive from the constraints.
  // A declared bound is enforced as an extra inequality x_i <= u.
  std::vector<std::optional<Rational>> upper;

  friend bool operator==(const PlayerSpec&, const PlayerSpec&) = default;
};

struct GameSpec {
  std::string name;
  int num_vars = 0;
  std::vector<PlayerSpec> players;

  int num_players() const { return static_cast<int>(players.size()); }

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

struct StrategyProfile {
  RationalVector x;

  std::string ToString() const { return FormatTuple(x); }

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
  friend auto operator<=>(const StrategyProfile& a, const StrategyProfile& b) {
    return a.x <=> b.x;
  }
};

struct Diagnostic {
  ErrorCode code;
  int player;  // -1 when not player specific
  std::string message;
  bool warning = false;

  std::string ToString() const;
};

struct ValidationResult;

// A game that passed validation. Immutable; all oracles take this type.
class ValidatedGame {
 public:
  const GameSpec& spec() const { return spec_; }
  int num_vars() const { return spec_.num_vars; }
  int num_players() const { return spec_.num_players(); }
  const PlayerSpec& player(int p) const { return spec_.players[p]; }

  // Inequalities actually enforced for player p: listed ones followed by
  // declared upper bounds.
  const std::vector<AffineConstraint>& inequalities(int p) const {
    return inequalities_[p];
  }
  // Integer box [0, upper] per own variable. Entries may be negative when
  // the constraints already exclude zero.
  const std::vector<long>& box_upper(int p) const { return box_upper_[p]; }

  // False when some player's own block of Q is not PSD. Such games still
  // support Nash enumeration but are refused by the KKT side.
  bool convex() const { return convex_; }
  const std::vector<Diagnostic>& warnings() const { return warnings_; }

  void RequireConvex() const;

  RationalVector OwnSlice(int p, const RationalVector& joint) const;
  // Overwrites player p's slice of joint with own.
  void SetOwnSlice(int p, const RationalVector& own, RationalVector* joint) const;

 private:
  friend ValidationResult ValidateGame(const GameSpec& spec);
  ValidatedGame() = default;

  GameSpec spec_;
  std::vector<std::vector<AffineConstraint>> inequalities_;
  std::vector<std::vector<long>> box_upper_;
  bool convex_ = true;
  std::vector<Diagnostic> warnings_;
};

struct ValidationResult {
  std::optional<ValidatedGame> game;
  std::vector<Diagnostic> diagnostics;
};

// Collects every violation rather than stopping at the first. The game is
// present iff no error-level diagnostic was produced.
ValidationResult ValidateGame(const GameSpec& spec);

// Throws DcncError carrying all diagnostics when validation fails.
ValidatedGame ValidateOrThrow(const GameSpec& spec);

Rational EvaluateObjective(const ValidatedGame& game, int p,
                           const StrategyProfile& profile);

// x'Qx + c'x + d only.
Rational EvaluateQuadraticPart(const Objective& objective, const RationalVector& x);

// True when own satisfies nonnegativity, integrality and every constraint of
// player p exactly.
bool IsOwnFeasible(const ValidatedGame& game, int p, const RationalVector& own);

bool IsProfileFeasible(const ValidatedGame& game, const StrategyProfile& profile);

// All integral points of X_p in lexicographic order.
std::vector<RationalVector> EnumerateFeasibleLattice(const ValidatedGame& game,
                                                     int p,
                                                     const Limits& limits = {});

// Cartesian product of the per-player lattices, lexicographic in the joint
// vector (players ordered by their owned ranges).
std::vector<StrategyProfile> EnumerateJointLattice(const ValidatedGame& game,
                                                   const Limits& limits = {});

}  // namespace dcnc

#endif  // DCNC_MODEL_H_
