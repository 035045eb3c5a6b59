#ifndef DCNC_KKT_H_
#define DCNC_KKT_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dcnc/linfeas.h"
#include "dcnc/model.h"
#include "dcnc/nash.h"

namespace dcnc {

// Affine function of the joint decision vector x and one player's
// continuous KKT unknowns (multipliers and epigraph variables).
struct KktAffine {
  RationalVector x_coef;
  RationalVector aux_coef;
  Rational constant;

  Rational Evaluate(const RationalVector& x, const RationalVector& aux) const;
  bool DependsOnAux() const;
};

// expression >= 0  complementary to  partner >= 0.
struct ComplementarityPair {
  enum class Kind { kVariable, kConstraint };
  Kind kind;
  std::string label;
  KktAffine expression;
  // Exactly one of these is set: a joint x index or an aux unknown index.
  int partner_x = -1;
  int partner_aux = -1;
};

// Per-player relaxed KKT system. Aux unknown layout: lambda (one per
// enforced inequality, >= 0), gamma (one per equality, free), then per
// absolute-value term: t (free), mu+ (>= 0), mu- (>= 0).
struct KktPlayerBlock {
  int player = 0;
  std::vector<std::string> aux_names;
  std::vector<bool> aux_nonneg;
  int num_lambda = 0;
  int num_gamma = 0;
  int num_abs = 0;
  // Own-variable stationarity rows (paired with x_i), in own order.
  std::vector<KktAffine> stationarity;
  // Conditions that must hold with equality: epigraph stationarity
  // w - mu+ - mu- = 0 and the primal equalities h(x) = 0.
  std::vector<KktAffine> equalities;
  std::vector<std::string> equality_labels;
  // Variable pairs first (own order), then constraint pairs: inequalities,
  // then epigraph pairs (+, - per term).
  std::vector<ComplementarityPair> pairs;

  int num_aux() const { return static_cast<int>(aux_names.size()); }
  int lambda_index(int j) const { return j; }
  int gamma_index(int k) const { return num_lambda + k; }
  int t_index(int t) const { return num_lambda + num_gamma + 3 * t; }
  int mu_plus_index(int t) const { return t_index(t) + 1; }
  int mu_minus_index(int t) const { return t_index(t) + 2; }
};

struct RelaxedKktSystem {
  std::vector<KktPlayerBlock> players;
};

// Refuses non-convex games (kNonConvexOwnBlock).
RelaxedKktSystem BuildKktSystem(const ValidatedGame& game);

// Own entries of 2Qx + c for player p (absolute-value terms excluded).
RationalVector Gradient(const ValidatedGame& game, int p, const RationalVector& x);

enum class Branch {
  kExpressionZero,  // primal-positive / constraint-active
  kPartnerZero,     // primal-zero / constraint-inactive
};

std::string BranchName(ComplementarityPair::Kind kind, Branch branch);

struct ComplementarityPattern {
  std::vector<Branch> branches;  // one per pair of the block

  friend bool operator==(const ComplementarityPattern&,
                         const ComplementarityPattern&) = default;
};

// Every pattern consistent with the fixed profile x. Pairs whose sides are
// both fixed by x receive their forced branch; the remaining pairs branch
// both ways. Throws kPatternBudgetExceeded past limits.pattern_budget.
std::vector<ComplementarityPattern> EnumeratePatterns(const KktPlayerBlock& block,
                                                      const RationalVector& x,
                                                      const Limits& limits = {});

// Linear system over the block's aux unknowns encoding the KKT conditions
// at fixed x under the given pattern.
LinearSystem PatternSystem(const KktPlayerBlock& block, const RationalVector& x,
                           const ComplementarityPattern& pattern);

struct PlayerKktSolution {
  RationalVector aux;  // block layout
  ComplementarityPattern pattern;
};

struct KktCertificate {
  StrategyProfile profile;
  std::vector<PlayerKktSolution> players;
};

struct PatternRefutation {
  ComplementarityPattern pattern;
  FarkasCertificate certificate;
};

struct MembershipRefutation {
  StrategyProfile profile;
  int player = 0;  // the player whose KKT system has no solution
  std::vector<PatternRefutation> patterns;
};

using PlayerMembershipResult = std::variant<PlayerKktSolution, MembershipRefutation>;
using MembershipResult = std::variant<KktCertificate, MembershipRefutation>;

PlayerMembershipResult PlayerMembership(const RelaxedKktSystem& system, int p,
                                        const StrategyProfile& x,
                                        const Limits& limits = {});

// Decides whether integral x admits multipliers satisfying every player's
// KKT conditions. Players are examined in order; the first failing player's
// exhaustive refutation is returned.
MembershipResult McpMembership(const ValidatedGame& game, const RelaxedKktSystem& system,
                               const StrategyProfile& x, const Limits& limits = {});
MembershipResult McpMembership(const ValidatedGame& game, const StrategyProfile& x,
                               const Limits& limits = {});

// Substitutes aux values into the KKT conditions of player p at x. Returns
// a description of the first violated condition, or nullopt when all hold.
std::optional<std::string> CheckPlayerKkt(const KktPlayerBlock& block,
                                          const RationalVector& x,
                                          const RationalVector& aux);

bool VerifyKktCertificate(const RelaxedKktSystem& system, const KktCertificate& cert);

// Checks that the refutation covers every pattern consistent with its
// profile and that each Farkas certificate verifies.
bool VerifyRefutation(const RelaxedKktSystem& system, const MembershipRefutation& ref,
                      const Limits& limits = {});

struct McpSolutionSet {
  EquilibriumSet solutions;
  std::vector<KktCertificate> certificates;  // parallel to solutions.profiles
};

McpSolutionSet SolveDcMcp(const ValidatedGame& game, const Limits& limits = {});

}  // namespace dcnc

#endif  // DCNC_KKT_H_
