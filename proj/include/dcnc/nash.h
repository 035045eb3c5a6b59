#ifndef DCNC_NASH_H_
#define DCNC_NASH_H_

#include <optional>
#include <vector>

#include "dcnc/model.h"

namespace dcnc {

// A strictly improving unilateral deviation: f_p(to, x_-p) < f_p(from).
struct DeviationWitness {
  int player = 0;
  StrategyProfile from;
  RationalVector to;
  Rational improvement;  // f_p(from) - f_p(to, x_-p) > 0
};

struct EquilibriumSet {
  std::vector<StrategyProfile> profiles;  // sorted, duplicate free
  bool exhaustive = true;

  bool Contains(const StrategyProfile& x) const;
  bool empty() const { return profiles.empty(); }
  size_t size() const { return profiles.size(); }
  // "{(0,0),(1,1)}"
  std::string ToString() const;

  friend bool operator==(const EquilibriumSet&, const EquilibriumSet&) = default;
};

struct BestResponse {
  std::vector<RationalVector> argmin;  // every minimizer, lexicographic
  Rational value;
};

// Complete argmin of f_p(., x_-p) over X_p. The own slice of `context` is
// ignored; its other slices give x_-p.
BestResponse BestResponseSet(const ValidatedGame& game, int p,
                             const StrategyProfile& context,
                             const Limits& limits = {});

// nullopt when x is an equilibrium (ties never break one). Otherwise the
// first improving deviation in scan order: players ascending, own points
// lexicographic. Throws kInfeasibleProfile when x is outside the lattice.
std::optional<DeviationWitness> CheckEquilibrium(const ValidatedGame& game,
                                                 const StrategyProfile& x,
                                                 const Limits& limits = {});

bool VerifyWitness(const ValidatedGame& game, const DeviationWitness& w);

// All pure equilibria over the joint lattice.
EquilibriumSet EnumerateDcNash(const ValidatedGame& game, const Limits& limits = {});

}  // namespace dcnc

#endif  // DCNC_NASH_H_
