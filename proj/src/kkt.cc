#include "dcnc/kkt.h"

#include "dcnc/parallel.h"

namespace dcnc {

Rational KktAffine::Evaluate(const RationalVector& x, const RationalVector& aux) const {
  return Dot(x_coef, x) + Dot(aux_coef, aux) + constant;
}

bool KktAffine::DependsOnAux() const {
  for (const auto& a : aux_coef) {
    if (!a.IsZero()) return true;
  }
  return false;
}

std::string BranchName(ComplementarityPair::Kind kind, Branch branch) {
  if (kind == ComplementarityPair::Kind::kVariable) {
    return branch == Branch::kExpressionZero ? "primal-positive" : "primal-zero";
  }
  return branch == Branch::kExpressionZero ? "constraint-active" : "constraint-inactive";
}

RationalVector Gradient(const ValidatedGame& game, int p, const RationalVector& x) {
  const auto& pl = game.player(p);
  const auto& obj = pl.objective;
  RationalVector g(pl.count);
  for (int i = 0; i < pl.count; ++i) {
    const int row = pl.first + i;
    Rational v = obj.lin[row];
    for (int j = 0; j < game.num_vars(); ++j) {
      if (!obj.quad(row, j).IsZero() && !x[j].IsZero()) v += 2 * obj.quad(row, j) * x[j];
    }
    g[i] = std::move(v);
  }
  return g;
}

namespace {

KktAffine ZeroAffine(int n, int m) {
  return {RationalVector(n, Rational(0)), RationalVector(m, Rational(0)), Rational(0)};
}

std::string Index2(int p, int j) {
  return "[" + std::to_string(p + 1) + "," + std::to_string(j + 1) + "]";
}

KktPlayerBlock BuildBlock(const ValidatedGame& game, int p) {
  const auto& pl = game.player(p);
  const auto& ineq = game.inequalities(p);
  const auto& obj = pl.objective;
  const int n = game.num_vars();

  KktPlayerBlock b;
  b.player = p;
  b.num_lambda = static_cast<int>(ineq.size());
  b.num_gamma = static_cast<int>(pl.eq.size());
  b.num_abs = static_cast<int>(obj.abs_terms.size());
  for (int j = 0; j < b.num_lambda; ++j) {
    b.aux_names.push_back("lambda" + Index2(p, j));
    b.aux_nonneg.push_back(true);
  }
  for (int k = 0; k < b.num_gamma; ++k) {
    b.aux_names.push_back("gamma" + Index2(p, k));
    b.aux_nonneg.push_back(false);
  }
  for (int t = 0; t < b.num_abs; ++t) {
    b.aux_names.push_back("t" + Index2(p, t));
    b.aux_nonneg.push_back(false);
    b.aux_names.push_back("mu+" + Index2(p, t));
    b.aux_nonneg.push_back(true);
    b.aux_names.push_back("mu-" + Index2(p, t));
    b.aux_nonneg.push_back(true);
  }
  const int m = b.num_aux();

  // Stationarity in own variable i:
  //   (2Qx + c)_i + sum_j lambda_j alpha_ji + sum_k gamma_k eta_ki
  //     + sum_t (mu+_t - mu-_t) a_ti
  for (int i = 0; i < pl.count; ++i) {
    const int xi = pl.first + i;
    KktAffine row = ZeroAffine(n, m);
    for (int j = 0; j < n; ++j) row.x_coef[j] = 2 * obj.quad(xi, j);
    row.constant = obj.lin[xi];
    for (int j = 0; j < b.num_lambda; ++j) row.aux_coef[b.lambda_index(j)] = ineq[j].coef[i];
    for (int k = 0; k < b.num_gamma; ++k) row.aux_coef[b.gamma_index(k)] = pl.eq[k].coef[i];
    for (int t = 0; t < b.num_abs; ++t) {
      row.aux_coef[b.mu_plus_index(t)] = obj.abs_terms[t].coef[xi];
      row.aux_coef[b.mu_minus_index(t)] = -obj.abs_terms[t].coef[xi];
    }
    b.stationarity.push_back(row);
    b.pairs.push_back({ComplementarityPair::Kind::kVariable,
                       "stationarity" + Index2(p, i) + " _|_ x" + std::to_string(xi + 1),
                       std::move(row), xi, -1});
  }

  // -g_j(x) = rhs - alpha . x_own >= 0  _|_  lambda_j >= 0
  for (int j = 0; j < b.num_lambda; ++j) {
    KktAffine slack = ZeroAffine(n, m);
    for (int i = 0; i < pl.count; ++i) slack.x_coef[pl.first + i] = -ineq[j].coef[i];
    slack.constant = ineq[j].rhs;
    b.pairs.push_back({ComplementarityPair::Kind::kConstraint,
                       "slack" + Index2(p, j) + " _|_ " + b.aux_names[b.lambda_index(j)],
                       std::move(slack), -1, b.lambda_index(j)});
  }

  for (int k = 0; k < b.num_gamma; ++k) {
    KktAffine h = ZeroAffine(n, m);
    for (int i = 0; i < pl.count; ++i) h.x_coef[pl.first + i] = pl.eq[k].coef[i];
    h.constant = -pl.eq[k].rhs;
    b.equalities.push_back(std::move(h));
    b.equality_labels.push_back("equality" + Index2(p, k));
  }

  // Epigraph of w |a.x + c|: a.x + c - t <= 0 [mu+], -(a.x + c) - t <= 0 [mu-],
  // with stationarity in the free t: w - mu+ - mu- = 0.
  for (int t = 0; t < b.num_abs; ++t) {
    const auto& term = obj.abs_terms[t];
    KktAffine tstat = ZeroAffine(n, m);
    tstat.constant = term.weight;
    tstat.aux_coef[b.mu_plus_index(t)] = Rational(-1);
    tstat.aux_coef[b.mu_minus_index(t)] = Rational(-1);
    b.equalities.push_back(std::move(tstat));
    b.equality_labels.push_back("epigraph-stationarity" + Index2(p, t));

    for (int sign : {1, -1}) {
      KktAffine slack = ZeroAffine(n, m);
      for (int j = 0; j < n; ++j) slack.x_coef[j] = -sign * term.coef[j];
      slack.aux_coef[b.t_index(t)] = Rational(1);
      slack.constant = -sign * term.offset;
      const int partner = sign > 0 ? b.mu_plus_index(t) : b.mu_minus_index(t);
      b.pairs.push_back({ComplementarityPair::Kind::kConstraint,
                         std::string(sign > 0 ? "epigraph+" : "epigraph-") + Index2(p, t) +
                             " _|_ " + b.aux_names[partner],
                         std::move(slack), -1, partner});
    }
  }
  return b;
}

// Value of a side of the pair that is fixed by x, if it is.
std::optional<Rational> FixedExpression(const ComplementarityPair& pair,
                                        const RationalVector& x) {
  if (pair.expression.DependsOnAux()) return std::nullopt;
  return Dot(pair.expression.x_coef, x) + pair.expression.constant;
}

std::optional<Rational> FixedPartner(const ComplementarityPair& pair,
                                     const RationalVector& x) {
  if (pair.partner_x < 0) return std::nullopt;
  return x[pair.partner_x];
}

// Forced branch of a pair with a side fixed by x; the fixed side being zero
// means that side is the one pinned (the other side then only needs >= 0).
std::optional<Branch> ForcedBranch(const ComplementarityPair& pair,
                                   const RationalVector& x) {
  if (auto v = FixedPartner(pair, x)) {
    return v->IsZero() ? Branch::kPartnerZero : Branch::kExpressionZero;
  }
  if (auto v = FixedExpression(pair, x)) {
    return v->IsZero() ? Branch::kExpressionZero : Branch::kPartnerZero;
  }
  return std::nullopt;
}

// expression(x, y) as an affine function of y alone: coef . y + constant.
std::pair<RationalVector, Rational> Restrict(const KktAffine& e, const RationalVector& x) {
  return {e.aux_coef, Dot(e.x_coef, x) + e.constant};
}

}  // namespace

RelaxedKktSystem BuildKktSystem(const ValidatedGame& game) {
  game.RequireConvex();
  RelaxedKktSystem system;
  for (int p = 0; p < game.num_players(); ++p) system.players.push_back(BuildBlock(game, p));
  return system;
}

std::vector<ComplementarityPattern> EnumeratePatterns(const KktPlayerBlock& block,
                                                      const RationalVector& x,
                                                      const Limits& limits) {
  ComplementarityPattern base;
  std::vector<int> free_pairs;
  for (size_t k = 0; k < block.pairs.size(); ++k) {
    const auto forced = ForcedBranch(block.pairs[k], x);
    base.branches.push_back(forced.value_or(Branch::kExpressionZero));
    if (!forced) free_pairs.push_back(static_cast<int>(k));
  }
  if (free_pairs.size() >= 63 ||
      (size_t{1} << free_pairs.size()) > limits.pattern_budget) {
    throw DcncError(ErrorCode::kPatternBudgetExceeded,
                    std::to_string(free_pairs.size()) + " free pairs for player " +
                        std::to_string(block.player + 1) + " exceed pattern budget " +
                        std::to_string(limits.pattern_budget));
  }
  std::vector<ComplementarityPattern> out;
  const size_t count = size_t{1} << free_pairs.size();
  for (size_t mask = 0; mask < count; ++mask) {
    ComplementarityPattern pat = base;
    // Highest free pair is the most significant bit: lexicographic order.
    for (size_t b = 0; b < free_pairs.size(); ++b) {
      const bool bit = (mask >> (free_pairs.size() - 1 - b)) & 1;
      pat.branches[free_pairs[b]] = bit ? Branch::kPartnerZero : Branch::kExpressionZero;
    }
    out.push_back(std::move(pat));
  }
  return out;
}

LinearSystem PatternSystem(const KktPlayerBlock& block, const RationalVector& x,
                           const ComplementarityPattern& pattern) {
  LinearSystem sys;
  for (int a = 0; a < block.num_aux(); ++a) sys.AddUnknown(block.aux_names[a], block.aux_nonneg[a]);
  const int m = block.num_aux();

  auto add_eq = [&](const KktAffine& e, const std::string& label) {
    auto [coef, c] = Restrict(e, x);
    if (c.IsZero() && !e.DependsOnAux()) return;  // 0 = 0
    sys.eq_rows.push_back({std::move(coef), -c, label + " = 0"});
  };
  auto add_nonneg = [&](const KktAffine& e, const std::string& label) {
    auto [coef, c] = Restrict(e, x);
    for (auto& v : coef) v = -v;
    sys.ineq_rows.push_back({std::move(coef), c, label + " >= 0"});
  };
  auto add_fixed_nonneg = [&](const Rational& v, const std::string& label) {
    // Only a violated constant condition carries information.
    if (v.Sign() < 0) sys.ineq_rows.push_back({RationalVector(m, Rational(0)), v, label + " >= 0"});
  };

  for (size_t k = 0; k < block.equalities.size(); ++k) {
    add_eq(block.equalities[k], block.equality_labels[k]);
  }
  for (size_t k = 0; k < block.pairs.size(); ++k) {
    const auto& pair = block.pairs[k];
    const std::string expr_label = pair.label.substr(0, pair.label.find(" _|_"));
    const Branch branch = pattern.branches[k];
    if (branch == Branch::kExpressionZero) {
      add_eq(pair.expression, expr_label);
    } else {
      add_nonneg(pair.expression, expr_label);
    }
    if (pair.partner_x >= 0) {
      const Rational& v = x[pair.partner_x];
      add_fixed_nonneg(v, "x" + std::to_string(pair.partner_x + 1));
      if (branch == Branch::kPartnerZero && !v.IsZero()) {
        sys.eq_rows.push_back({RationalVector(m, Rational(0)), -v,
                               "x" + std::to_string(pair.partner_x + 1) + " = 0"});
      }
    } else if (branch == Branch::kPartnerZero) {
      RationalVector coef(m, Rational(0));
      coef[pair.partner_aux] = Rational(1);
      sys.eq_rows.push_back({std::move(coef), Rational(0),
                             block.aux_names[pair.partner_aux] + " = 0"});
    }
  }
  return sys;
}

std::optional<std::string> CheckPlayerKkt(const KktPlayerBlock& block,
                                          const RationalVector& x,
                                          const RationalVector& aux) {
  if (static_cast<int>(aux.size()) != block.num_aux()) {
    return "expected " + std::to_string(block.num_aux()) + " multipliers, got " +
           std::to_string(aux.size());
  }
  for (int a = 0; a < block.num_aux(); ++a) {
    if (block.aux_nonneg[a] && aux[a].Sign() < 0) {
      return block.aux_names[a] + " = " + aux[a].ToString() + " < 0";
    }
  }
  for (size_t k = 0; k < block.equalities.size(); ++k) {
    const Rational v = block.equalities[k].Evaluate(x, aux);
    if (!v.IsZero()) return block.equality_labels[k] + " = " + v.ToString() + " != 0";
  }
  for (const auto& pair : block.pairs) {
    const Rational e = pair.expression.Evaluate(x, aux);
    const Rational& partner = pair.partner_x >= 0 ? x[pair.partner_x] : aux[pair.partner_aux];
    if (e.Sign() < 0) return pair.label + ": expression " + e.ToString() + " < 0";
    if (partner.Sign() < 0) return pair.label + ": partner " + partner.ToString() + " < 0";
    const Rational product = e * partner;
    if (!product.IsZero()) {
      return pair.label + ": complementarity " + e.ToString() + "*" + partner.ToString() +
             " = " + product.ToString() + " != 0";
    }
  }
  return std::nullopt;
}

PlayerMembershipResult PlayerMembership(const RelaxedKktSystem& system, int p,
                                        const StrategyProfile& x, const Limits& limits) {
  const auto& block = system.players.at(p);
  MembershipRefutation refutation{x, p, {}};
  for (auto& pattern : EnumeratePatterns(block, x.x, limits)) {
    const LinearSystem sys = PatternSystem(block, x.x, pattern);
    const FeasibilityOutcome outcome = SolveFeasibility(sys);
    if (outcome.feasible()) return PlayerKktSolution{outcome.point(), std::move(pattern)};
    refutation.patterns.push_back({std::move(pattern), outcome.certificate()});
  }
  return refutation;
}

MembershipResult McpMembership(const ValidatedGame& game, const RelaxedKktSystem& system,
                               const StrategyProfile& x, const Limits& limits) {
  if (static_cast<int>(x.x.size()) != game.num_vars()) {
    throw DcncError(ErrorCode::kDimensionMismatch, "profile dimension mismatch");
  }
  for (int p = 0; p < game.num_players(); ++p) {
    const auto& pl = game.player(p);
    for (int i = 0; i < pl.count; ++i) {
      const Rational& v = x.x[pl.first + i];
      if (pl.integral[i] && !v.IsInteger()) {
        throw DcncError(ErrorCode::kInfeasibleProfile,
                        "profile " + x.ToString() + " is not integral");
      }
    }
  }
  KktCertificate cert{x, {}};
  for (int p = 0; p < game.num_players(); ++p) {
    auto result = PlayerMembership(system, p, x, limits);
    if (auto* ref = std::get_if<MembershipRefutation>(&result)) return std::move(*ref);
    cert.players.push_back(std::get<PlayerKktSolution>(std::move(result)));
  }
  return cert;
}

MembershipResult McpMembership(const ValidatedGame& game, const StrategyProfile& x,
                               const Limits& limits) {
  return McpMembership(game, BuildKktSystem(game), x, limits);
}

bool VerifyKktCertificate(const RelaxedKktSystem& system, const KktCertificate& cert) {
  if (cert.players.size() != system.players.size()) return false;
  for (size_t p = 0; p < system.players.size(); ++p) {
    if (CheckPlayerKkt(system.players[p], cert.profile.x, cert.players[p].aux)) return false;
  }
  return true;
}

bool VerifyRefutation(const RelaxedKktSystem& system, const MembershipRefutation& ref,
                      const Limits& limits) {
  if (ref.player < 0 || ref.player >= static_cast<int>(system.players.size())) return false;
  const auto& block = system.players[ref.player];
  const auto expected = EnumeratePatterns(block, ref.profile.x, limits);
  if (expected.size() != ref.patterns.size()) return false;
  for (size_t k = 0; k < expected.size(); ++k) {
    if (!(expected[k] == ref.patterns[k].pattern)) return false;
    const LinearSystem sys = PatternSystem(block, ref.profile.x, expected[k]);
    if (!VerifyCertificate(sys, ref.patterns[k].certificate)) return false;
  }
  return true;
}

McpSolutionSet SolveDcMcp(const ValidatedGame& game, const Limits& limits) {
  const RelaxedKktSystem system = BuildKktSystem(game);
  const auto lattice = EnumerateJointLattice(game, limits);
  const auto results = ParallelMap<std::optional<KktCertificate>>(
      lattice.size(), limits.threads, [&](size_t i) -> std::optional<KktCertificate> {
        auto r = McpMembership(game, system, lattice[i], limits);
        if (auto* c = std::get_if<KktCertificate>(&r)) return std::move(*c);
        return std::nullopt;
      });
  McpSolutionSet out;
  for (size_t i = 0; i < lattice.size(); ++i) {
    if (!results[i]) continue;
    out.solutions.profiles.push_back(lattice[i]);
    out.certificates.push_back(*results[i]);
  }
  return out;
}

}  // namespace dcnc
