#include "dcnc/nash.h"

#include <algorithm>
#include <map>

#include "dcnc/parallel.h"

namespace dcnc {

bool EquilibriumSet::Contains(const StrategyProfile& x) const {
  return std::binary_search(profiles.begin(), profiles.end(), x);
}

std::string EquilibriumSet::ToString() const {
  std::string s = "{";
  for (size_t i = 0; i < profiles.size(); ++i) {
    if (i) s += ",";
    s += profiles[i].ToString();
  }
  return s + "}";
}

BestResponse BestResponseSet(const ValidatedGame& game, int p,
                             const StrategyProfile& context, const Limits& limits) {
  const auto points = EnumerateFeasibleLattice(game, p, limits);
  if (points.empty()) {
    throw DcncError(ErrorCode::kEmptyFeasibleSet,
                    "player " + std::to_string(p + 1) + " has no feasible lattice point");
  }
  BestResponse br;
  StrategyProfile probe = context;
  for (const auto& own : points) {
    game.SetOwnSlice(p, own, &probe.x);
    Rational v = EvaluateObjective(game, p, probe);
    if (br.argmin.empty() || v < br.value) {
      br.argmin.assign(1, own);
      br.value = std::move(v);
    } else if (v == br.value) {
      br.argmin.push_back(own);
    }
  }
  return br;
}

std::optional<DeviationWitness> CheckEquilibrium(const ValidatedGame& game,
                                                 const StrategyProfile& x,
                                                 const Limits& limits) {
  if (!IsProfileFeasible(game, x)) {
    throw DcncError(ErrorCode::kInfeasibleProfile,
                    "profile " + x.ToString() + " is not in the joint lattice");
  }
  for (int p = 0; p < game.num_players(); ++p) {
    const Rational current = EvaluateObjective(game, p, x);
    StrategyProfile probe = x;
    for (const auto& own : EnumerateFeasibleLattice(game, p, limits)) {
      game.SetOwnSlice(p, own, &probe.x);
      const Rational v = EvaluateObjective(game, p, probe);
      if (v < current) return DeviationWitness{p, x, own, current - v};
    }
  }
  return std::nullopt;
}

bool VerifyWitness(const ValidatedGame& game, const DeviationWitness& w) {
  if (w.player < 0 || w.player >= game.num_players()) return false;
  if (!IsProfileFeasible(game, w.from)) return false;
  if (!IsOwnFeasible(game, w.player, w.to)) return false;
  StrategyProfile moved = w.from;
  game.SetOwnSlice(w.player, w.to, &moved.x);
  const Rational gain =
      EvaluateObjective(game, w.player, w.from) - EvaluateObjective(game, w.player, moved);
  return gain.Sign() > 0 && gain == w.improvement;
}

EquilibriumSet EnumerateDcNash(const ValidatedGame& game, const Limits& limits) {
  const auto lattice = EnumerateJointLattice(game, limits);
  const int np = game.num_players();

  // Best-response values keyed by the opponents' decisions (own slice zeroed).
  std::vector<std::map<RationalVector, Rational>> best(np);
  for (int p = 0; p < np; ++p) {
    std::vector<StrategyProfile> contexts;
    for (const auto& x : lattice) {
      StrategyProfile key = x;
      game.SetOwnSlice(p, RationalVector(game.player(p).count, Rational(0)), &key.x);
      if (contexts.empty() || contexts.back() != key) contexts.push_back(std::move(key));
    }
    std::sort(contexts.begin(), contexts.end());
    contexts.erase(std::unique(contexts.begin(), contexts.end()), contexts.end());
    const auto values = ParallelMap<Rational>(
        contexts.size(), limits.threads,
        [&](size_t i) { return BestResponseSet(game, p, contexts[i], limits).value; });
    for (size_t i = 0; i < contexts.size(); ++i) best[p].emplace(contexts[i].x, values[i]);
  }

  const auto flags = ParallelMap<char>(lattice.size(), limits.threads, [&](size_t i) {
    const auto& x = lattice[i];
    for (int p = 0; p < np; ++p) {
      StrategyProfile key = x;
      game.SetOwnSlice(p, RationalVector(game.player(p).count, Rational(0)), &key.x);
      if (EvaluateObjective(game, p, x) != best[p].at(key.x)) return char{0};
    }
    return char{1};
  });

  EquilibriumSet out;
  for (size_t i = 0; i < lattice.size(); ++i) {
    if (flags[i]) out.profiles.push_back(lattice[i]);
  }
  return out;
}

}  // namespace dcnc
