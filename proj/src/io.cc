#include "dcnc/io.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace dcnc {
namespace {

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw DcncError(ErrorCode::kParse, (where.empty() ? std::string("/") : where) + ": " + what);
}

std::string At(const std::string& where, std::string_view key) {
  return where + "/" + std::string(key);
}
std::string At(const std::string& where, size_t index) {
  return where + "/" + std::to_string(index);
}

void CheckKeys(const Json& obj, const std::string& where,
               std::initializer_list<std::string_view> required,
               std::initializer_list<std::string_view> optional = {}) {
  if (!obj.is_object()) Fail(where, "expected an object");
  for (auto key : required) {
    if (!obj.contains(std::string(key))) Fail(At(where, key), "missing required field");
  }
  for (const auto& [key, value] : obj.items()) {
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) Fail(At(where, key), "unknown field");
  }
}

const Json& Array(const Json& j, const std::string& where) {
  if (!j.is_array()) Fail(where, "expected an array");
  return j;
}

int Int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) Fail(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) Fail(where, "integer out of range");
  return static_cast<int>(v);
}

std::string String(const Json& j, const std::string& where) {
  if (!j.is_string()) Fail(where, "expected a string");
  return j.get<std::string>();
}

RationalVector RationalList(const Json& j, const std::string& where) {
  RationalVector out;
  for (size_t i = 0; i < Array(j, where).size(); ++i) {
    out.push_back(RationalFromJson(j[i], At(where, i)));
  }
  return out;
}

Json RationalListJson(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(RationalToJson(q));
  return out;
}

Json ProfileJson(const StrategyProfile& x) { return RationalListJson(x.x); }

StrategyProfile ProfileFromJson(const Json& j, const std::string& where) {
  return {RationalList(j, where)};
}

Objective ObjectiveFromJson(const Json& j, const std::string& where, int n) {
  CheckKeys(j, where, {"quadratic", "linear", "constant"}, {"abs_terms"});
  Objective obj = Objective::Zero(n);
  std::set<std::pair<int, int>> seen;
  const std::string qw = At(where, "quadratic");
  for (size_t k = 0; k < Array(j["quadratic"], qw).size(); ++k) {
    const std::string ew = At(qw, k);
    const Json& e = j["quadratic"][k];
    if (!e.is_array() || e.size() != 3) Fail(ew, "expected [i, j, value]");
    int r = Int(e[0], At(ew, 0));
    int c = Int(e[1], At(ew, 1));
    if (r < 0 || r >= n || c < 0 || c >= n) Fail(ew, "index out of range");
    if (r > c) std::swap(r, c);
    if (!seen.insert({r, c}).second) Fail(ew, "duplicate quadratic entry");
    obj.quad(r, c) = obj.quad(c, r) = RationalFromJson(e[2], At(ew, 2));
  }
  obj.lin = RationalList(j["linear"], At(where, "linear"));
  if (static_cast<int>(obj.lin.size()) != n) {
    Fail(At(where, "linear"), "expected " + std::to_string(n) + " entries");
  }
  obj.constant = RationalFromJson(j["constant"], At(where, "constant"));
  if (j.contains("abs_terms")) {
    const std::string aw = At(where, "abs_terms");
    for (size_t t = 0; t < Array(j["abs_terms"], aw).size(); ++t) {
      const std::string tw = At(aw, t);
      const Json& e = j["abs_terms"][t];
      CheckKeys(e, tw, {"weight", "coef", "offset"});
      AbsTerm term{RationalFromJson(e["weight"], At(tw, "weight")),
                   RationalList(e["coef"], At(tw, "coef")),
                   RationalFromJson(e["offset"], At(tw, "offset"))};
      if (static_cast<int>(term.coef.size()) != n) {
        Fail(At(tw, "coef"), "expected " + std::to_string(n) + " entries");
      }
      obj.abs_terms.push_back(std::move(term));
    }
  }
  return obj;
}

std::vector<AffineConstraint> ConstraintsFromJson(const Json& j, const std::string& where) {
  std::vector<AffineConstraint> rows;
  for (size_t k = 0; k < Array(j, where).size(); ++k) {
    const std::string rw = At(where, k);
    CheckKeys(j[k], rw, {"coef", "rhs"});
    rows.push_back({RationalList(j[k]["coef"], At(rw, "coef")),
                    RationalFromJson(j[k]["rhs"], At(rw, "rhs"))});
  }
  return rows;
}

Json ConstraintsJson(const std::vector<AffineConstraint>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["coef"] = RationalListJson(r.coef);
    row["rhs"] = RationalToJson(r.rhs);
    out.push_back(std::move(row));
  }
  return out;
}

Branch BranchFromName(const std::string& name, const std::string& where) {
  if (name == "primal-positive" || name == "constraint-active") return Branch::kExpressionZero;
  if (name == "primal-zero" || name == "constraint-inactive") return Branch::kPartnerZero;
  Fail(where, "unknown pattern branch '" + name + "'");
}

Json PatternJson(const KktPlayerBlock& block, const ComplementarityPattern& pattern) {
  Json out = Json::array();
  for (size_t k = 0; k < pattern.branches.size(); ++k) {
    out.push_back(BranchName(block.pairs[k].kind, pattern.branches[k]));
  }
  return out;
}

ComplementarityPattern PatternFromJson(const Json& j, const std::string& where) {
  ComplementarityPattern p;
  for (size_t k = 0; k < Array(j, where).size(); ++k) {
    p.branches.push_back(BranchFromName(String(j[k], At(where, k)), At(where, k)));
  }
  return p;
}

Json MultipliersJson(const KktPlayerBlock& block, const RationalVector& aux) {
  Json out = Json::object();
  for (int a = 0; a < block.num_aux(); ++a) out[block.aux_names[a]] = RationalToJson(aux[a]);
  return out;
}

RationalVector MultipliersFromJson(const Json& j, const KktPlayerBlock& block,
                                   const std::string& where) {
  if (!j.is_object()) Fail(where, "expected an object of named multipliers");
  RationalVector aux(block.num_aux());
  for (int a = 0; a < block.num_aux(); ++a) {
    const auto& name = block.aux_names[a];
    if (!j.contains(name)) Fail(At(where, name), "missing multiplier");
    aux[a] = RationalFromJson(j[name], At(where, name));
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(block.aux_names.begin(), block.aux_names.end(), key) == block.aux_names.end()) {
      Fail(At(where, key), "unknown multiplier");
    }
  }
  return aux;
}

std::string Contradiction(const LinearSystem& sys, const FarkasCertificate& cert) {
  const RationalVector c = cert.Combination(sys);
  LinearRow combined{c, cert.CombinedRhs(sys), ""};
  return "0 <= " + sys.RowToString(combined, false) + " < 0";
}

}  // namespace

Json RationalToJson(const Rational& q) {
  if (q.IsInteger() && q.Numerator().fits_slong_p()) return Json(q.Numerator().get_si());
  return Json(q.ToString());
}

Rational RationalFromJson(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    Rational q;
    if (!Rational::TryParse(j.get<std::string>(), &q)) {
      Fail(where, "not a rational: '" + j.get<std::string>() + "'");
    }
    return q;
  }
  if (j.is_number_float()) Fail(where, "floating-point numbers are not accepted; use \"p/q\"");
  Fail(where, "expected an integer or a \"p/q\" string");
}

GameSpec GameFromJson(const Json& j) {
  CheckKeys(j, "", {"schema", "version", "num_vars", "players"}, {"name"});
  if (String(j["schema"], "/schema") != "dcnc-game") Fail("/schema", "expected \"dcnc-game\"");
  if (Int(j["version"], "/version") != kGameSchemaVersion) Fail("/version", "unsupported version");
  GameSpec g;
  if (j.contains("name")) g.name = String(j["name"], "/name");
  g.num_vars = Int(j["num_vars"], "/num_vars");
  if (g.num_vars <= 0) Fail("/num_vars", "must be positive");
  for (size_t p = 0; p < Array(j["players"], "/players").size(); ++p) {
    const std::string w = At("/players", p);
    const Json& e = j["players"][p];
    CheckKeys(e, w, {"id", "owned", "objective", "inequalities", "integral", "upper"},
              {"equalities"});
    PlayerSpec pl;
    pl.id = Int(e["id"], At(w, "id"));
    const Json& owned = e["owned"];
    if (!owned.is_array() || owned.size() != 2) Fail(At(w, "owned"), "expected [first, count]");
    pl.first = Int(owned[0], At(At(w, "owned"), 0));
    pl.count = Int(owned[1], At(At(w, "owned"), 1));
    pl.objective = ObjectiveFromJson(e["objective"], At(w, "objective"), g.num_vars);
    pl.ineq = ConstraintsFromJson(e["inequalities"], At(w, "inequalities"));
    if (e.contains("equalities")) pl.eq = ConstraintsFromJson(e["equalities"], At(w, "equalities"));
    const std::string iw = At(w, "integral");
    for (size_t i = 0; i < Array(e["integral"], iw).size(); ++i) {
      if (!e["integral"][i].is_boolean()) Fail(At(iw, i), "expected a boolean");
      pl.integral.push_back(e["integral"][i].get<bool>());
    }
    const std::string uw = At(w, "upper");
    for (size_t i = 0; i < Array(e["upper"], uw).size(); ++i) {
      if (e["upper"][i].is_null()) {
        pl.upper.emplace_back(std::nullopt);
      } else {
        pl.upper.emplace_back(RationalFromJson(e["upper"][i], At(uw, i)));
      }
    }
    g.players.push_back(std::move(pl));
  }
  return g;
}

Json GameToJson(const GameSpec& g) {
  Json j;
  j["schema"] = "dcnc-game";
  j["version"] = kGameSchemaVersion;
  j["name"] = g.name;
  j["num_vars"] = g.num_vars;
  j["players"] = Json::array();
  for (const auto& pl : g.players) {
    Json p;
    p["id"] = pl.id;
    p["owned"] = Json::array({pl.first, pl.count});
    Json obj;
    obj["quadratic"] = Json::array();
    for (int r = 0; r < pl.objective.quad.rows(); ++r) {
      for (int c = r; c < pl.objective.quad.cols(); ++c) {
        if (pl.objective.quad(r, c).IsZero()) continue;
        obj["quadratic"].push_back(Json::array({r, c, RationalToJson(pl.objective.quad(r, c))}));
      }
    }
    obj["linear"] = RationalListJson(pl.objective.lin);
    obj["constant"] = RationalToJson(pl.objective.constant);
    obj["abs_terms"] = Json::array();
    for (const auto& t : pl.objective.abs_terms) {
      Json term;
      term["weight"] = RationalToJson(t.weight);
      term["coef"] = RationalListJson(t.coef);
      term["offset"] = RationalToJson(t.offset);
      obj["abs_terms"].push_back(std::move(term));
    }
    p["objective"] = std::move(obj);
    p["inequalities"] = ConstraintsJson(pl.ineq);
    p["equalities"] = ConstraintsJson(pl.eq);
    p["integral"] = Json::array();
    for (bool b : pl.integral) p["integral"].push_back(b);
    p["upper"] = Json::array();
    for (const auto& u : pl.upper) p["upper"].push_back(u ? RationalToJson(*u) : Json(nullptr));
    j["players"].push_back(std::move(p));
  }
  return j;
}

GameSpec ParseGameText(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const size_t byte = std::min(e.byte, text.size());
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
    throw DcncError(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": malformed JSON");
  }
  return GameFromJson(j);
}

std::string RenderGameText(const GameSpec& game) { return GameToJson(game).dump(2) + "\n"; }

Json WitnessToJson(const DeviationWitness& w) {
  Json j;
  j["player"] = w.player + 1;
  j["from"] = ProfileJson(w.from);
  j["to"] = RationalListJson(w.to);
  j["improvement"] = RationalToJson(w.improvement);
  return j;
}

Json CertificateToJson(const RelaxedKktSystem& system, const KktCertificate& cert) {
  Json j;
  j["profile"] = ProfileJson(cert.profile);
  j["players"] = Json::array();
  for (size_t p = 0; p < cert.players.size(); ++p) {
    const auto& block = system.players[p];
    Json e;
    e["player"] = static_cast<int>(p) + 1;
    e["pattern"] = PatternJson(block, cert.players[p].pattern);
    e["multipliers"] = MultipliersJson(block, cert.players[p].aux);
    j["players"].push_back(std::move(e));
  }
  return j;
}

Json RefutationToJson(const RelaxedKktSystem& system, const MembershipRefutation& ref) {
  const auto& block = system.players[ref.player];
  Json j;
  j["profile"] = ProfileJson(ref.profile);
  j["player"] = ref.player + 1;
  j["patterns"] = Json::array();
  for (const auto& pr : ref.patterns) {
    const LinearSystem sys = PatternSystem(block, ref.profile.x, pr.pattern);
    Json e;
    e["pattern"] = PatternJson(block, pr.pattern);
    e["unknowns"] = Json::array();
    for (const auto& name : sys.unknown_names) e["unknowns"].push_back(name);
    e["equalities"] = Json::array();
    for (const auto& row : sys.eq_rows) e["equalities"].push_back(sys.RowToString(row, true));
    e["inequalities"] = Json::array();
    for (const auto& row : sys.ineq_rows) e["inequalities"].push_back(sys.RowToString(row, false));
    e["eq_multipliers"] = RationalListJson(pr.certificate.eq_multipliers);
    e["ineq_multipliers"] = RationalListJson(pr.certificate.ineq_multipliers);
    e["contradiction"] = Contradiction(sys, pr.certificate);
    j["patterns"].push_back(std::move(e));
  }
  return j;
}

Json ReportToJson(const InclusionReport& report) {
  const ValidatedGame game = ValidateOrThrow(report.game);
  const RelaxedKktSystem system = BuildKktSystem(game);
  Json j;
  j["schema"] = "dcnc-report";
  j["version"] = kReportSchemaVersion;
  j["descriptor"] = report.game.name;
  j["relation"] = RelationName(report.relation);
  j["nash"] = Json::array();
  for (const auto& x : report.nash.profiles) j["nash"].push_back(ProfileJson(x));
  j["mcp"] = Json::array();
  for (const auto& cert : report.mcp.certificates) {
    j["mcp"].push_back(CertificateToJson(system, cert));
  }
  j["missed"] = Json::array();
  for (const auto& w : report.witnesses) {
    j["missed"].push_back(RefutationToJson(system, w.refutation));
  }
  j["global_optima"] = Json::array();
  for (const auto& note : report.global_opt) {
    Json e;
    e["player"] = note.player + 1;
    e["value"] = RationalToJson(note.value);
    e["minimizers"] = Json::array();
    for (const auto& x : note.minimizers) e["minimizers"].push_back(ProfileJson(x));
    e["missed_by_mcp"] = note.missed;
    j["global_optima"].push_back(std::move(e));
  }
  j["game"] = GameToJson(report.game);
  return j;
}

std::string RenderReportText(const InclusionReport& report) {
  return ReportToJson(report).dump(2) + "\n";
}

ParsedReport ParseReport(const Json& j) {
  CheckKeys(j, "", {"schema", "version", "descriptor", "relation", "nash", "mcp", "missed",
                    "global_optima", "game"});
  if (String(j["schema"], "/schema") != "dcnc-report") Fail("/schema", "expected \"dcnc-report\"");
  if (Int(j["version"], "/version") != kReportSchemaVersion) Fail("/version", "unsupported version");
  ParsedReport out;
  out.game = GameFromJson(j["game"]);
  const auto rel = ParseRelation(String(j["relation"], "/relation"));
  if (!rel) Fail("/relation", "unknown relation");
  out.relation = *rel;
  const ValidatedGame game = ValidateOrThrow(out.game);
  const RelaxedKktSystem system = BuildKktSystem(game);

  for (size_t i = 0; i < Array(j["nash"], "/nash").size(); ++i) {
    out.nash.profiles.push_back(ProfileFromJson(j["nash"][i], At("/nash", i)));
  }
  for (size_t i = 0; i < Array(j["mcp"], "/mcp").size(); ++i) {
    const std::string w = At("/mcp", i);
    const Json& e = j["mcp"][i];
    CheckKeys(e, w, {"profile", "players"});
    KktCertificate cert;
    cert.profile = ProfileFromJson(e["profile"], At(w, "profile"));
    const std::string pw = At(w, "players");
    if (Array(e["players"], pw).size() != system.players.size()) Fail(pw, "player count mismatch");
    for (size_t p = 0; p < e["players"].size(); ++p) {
      const std::string ew = At(pw, p);
      const Json& pe = e["players"][p];
      CheckKeys(pe, ew, {"player", "pattern", "multipliers"});
      if (Int(pe["player"], At(ew, "player")) != static_cast<int>(p) + 1) {
        Fail(At(ew, "player"), "players must be listed in order");
      }
      cert.players.push_back({MultipliersFromJson(pe["multipliers"], system.players[p],
                                                  At(ew, "multipliers")),
                              PatternFromJson(pe["pattern"], At(ew, "pattern"))});
    }
    out.mcp.profiles.push_back(cert.profile);
    out.certificates.push_back(std::move(cert));
  }
  for (size_t i = 0; i < Array(j["missed"], "/missed").size(); ++i) {
    const std::string w = At("/missed", i);
    const Json& e = j["missed"][i];
    CheckKeys(e, w, {"profile", "player", "patterns"});
    MembershipRefutation ref;
    ref.profile = ProfileFromJson(e["profile"], At(w, "profile"));
    ref.player = Int(e["player"], At(w, "player")) - 1;
    if (ref.player < 0 || ref.player >= game.num_players()) Fail(At(w, "player"), "no such player");
    const std::string pw = At(w, "patterns");
    for (size_t k = 0; k < Array(e["patterns"], pw).size(); ++k) {
      const std::string kw = At(pw, k);
      const Json& pe = e["patterns"][k];
      CheckKeys(pe, kw, {"pattern", "unknowns", "equalities", "inequalities", "eq_multipliers",
                         "ineq_multipliers", "contradiction"});
      ref.patterns.push_back({PatternFromJson(pe["pattern"], At(kw, "pattern")),
                              {RationalList(pe["eq_multipliers"], At(kw, "eq_multipliers")),
                               RationalList(pe["ineq_multipliers"], At(kw, "ineq_multipliers"))}});
    }
    out.refutations.push_back(std::move(ref));
  }
  return out;
}

std::vector<std::string> VerifyReport(const ParsedReport& report, const Limits& limits) {
  std::vector<std::string> failures;
  const ValidatedGame game = ValidateOrThrow(report.game);
  const RelaxedKktSystem system = BuildKktSystem(game);

  auto sorted_unique = [](const EquilibriumSet& s) {
    return std::is_sorted(s.profiles.begin(), s.profiles.end()) &&
           std::adjacent_find(s.profiles.begin(), s.profiles.end()) == s.profiles.end();
  };
  if (!sorted_unique(report.nash)) failures.push_back("nash set is not sorted and duplicate free");
  if (!sorted_unique(report.mcp)) failures.push_back("mcp set is not sorted and duplicate free");

  for (const auto& x : report.nash.profiles) {
    try {
      if (auto w = CheckEquilibrium(game, x, limits)) {
        failures.push_back("listed equilibrium " + x.ToString() + " has deviation by player " +
                           std::to_string(w->player + 1));
      }
    } catch (const DcncError& e) {
      failures.push_back("listed equilibrium " + x.ToString() + ": " + e.what());
    }
  }
  // Completeness of the listed equilibria. With it, refutations for every
  // listed equilibrium outside the mcp set also make that set complete.
  try {
    if (EnumerateDcNash(game, limits).profiles != report.nash.profiles) {
      failures.push_back("nash set is not the complete equilibrium set");
    }
  } catch (const DcncError& e) {
    failures.push_back(std::string("nash recomputation: ") + e.what());
  }
  for (const auto& cert : report.certificates) {
    if (!IsProfileFeasible(game, cert.profile)) {
      failures.push_back("certificate profile " + cert.profile.ToString() + " is infeasible");
      continue;
    }
    for (size_t p = 0; p < cert.players.size(); ++p) {
      if (auto why = CheckPlayerKkt(system.players[p], cert.profile.x, cert.players[p].aux)) {
        failures.push_back("certificate " + cert.profile.ToString() + " player " +
                           std::to_string(p + 1) + ": " + *why);
      }
    }
  }
  std::vector<StrategyProfile> refuted;
  for (const auto& ref : report.refutations) {
    if (!VerifyRefutation(system, ref, limits)) {
      failures.push_back("refutation for " + ref.profile.ToString() + " does not verify");
    }
    refuted.push_back(ref.profile);
  }
  std::vector<StrategyProfile> expected_missed;
  for (const auto& x : report.nash.profiles) {
    if (!report.mcp.Contains(x)) expected_missed.push_back(x);
  }
  std::sort(refuted.begin(), refuted.end());
  if (refuted != expected_missed) {
    failures.push_back("refutations do not cover exactly the equilibria missing from the mcp set");
  }
  try {
    if (Classify(report.nash, report.mcp) != report.relation) {
      failures.push_back("relation does not match the listed sets");
    }
  } catch (const DcncError& e) {
    failures.push_back(e.what());
  }
  return failures;
}

namespace {

bool IsTwoByTwo(const GameSpec& g) {
  return g.num_players() == 2 && g.num_vars == 2 && g.players[0].count == 1 &&
         g.players[1].count == 1 && g.players[0].first == 0;
}

}  // namespace

std::string RenderReportTable(const InclusionReport& report) {
  std::ostringstream os;
  const ValidatedGame game = ValidateOrThrow(report.game);
  const RelaxedKktSystem system = BuildKktSystem(game);
  os << "game: " << report.game.name << "\n";

  if (IsTwoByTwo(report.game)) {
    const auto rows = EnumerateFeasibleLattice(game, 0);
    const auto cols = EnumerateFeasibleLattice(game, 1);
    std::vector<std::vector<std::string>> cells;
    size_t width = 6;
    for (const auto& r : rows) {
      cells.emplace_back();
      for (const auto& c : cols) {
        StrategyProfile x{{r[0], c[0]}};
        std::string cell = "(" + EvaluateObjective(game, 0, x).ToString() + "," +
                           EvaluateObjective(game, 1, x).ToString() + ")";
        width = std::max(width, cell.size());
        cells.back().push_back(std::move(cell));
      }
    }
    os << "payoffs (f1,f2):\n" << std::setw(8) << "";
    for (const auto& c : cols) os << std::setw(width + 2) << ("x2=" + c[0].ToString());
    os << "\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      os << std::setw(8) << std::left << ("x1=" + rows[i][0].ToString()) << std::right;
      for (const auto& cell : cells[i]) os << std::setw(width + 2) << cell;
      os << "\n";
    }
  }
  os << "S_nash = " << report.nash.ToString() << "\n";
  os << "S_mcp  = " << report.mcp.solutions.ToString() << "\n";
  os << "relation: " << RelationName(report.relation) << "\n";
  for (const auto& cert : report.mcp.certificates) {
    os << "certificate " << cert.profile.ToString() << ":";
    for (size_t p = 0; p < cert.players.size(); ++p) {
      const auto& block = system.players[p];
      for (int a = 0; a < block.num_aux(); ++a) {
        os << " " << block.aux_names[a] << "=" << cert.players[p].aux[a];
      }
    }
    os << "\n";
  }
  for (const auto& w : report.witnesses) {
    const auto& ref = w.refutation;
    const auto& block = system.players[ref.player];
    os << "missed " << w.profile.ToString() << ": no multipliers for player "
       << ref.player + 1 << " (" << ref.patterns.size() << " pattern(s))\n";
    for (const auto& pr : ref.patterns) {
      const LinearSystem sys = PatternSystem(block, ref.profile.x, pr.pattern);
      os << "  pattern:";
      for (size_t k = 0; k < pr.pattern.branches.size(); ++k) {
        os << " " << BranchName(block.pairs[k].kind, pr.pattern.branches[k]);
      }
      os << "\n";
      for (size_t i = 0; i < sys.eq_rows.size(); ++i) {
        if (pr.certificate.eq_multipliers[i].IsZero()) continue;
        os << "    " << pr.certificate.eq_multipliers[i] << " x [" << sys.eq_rows[i].label
           << "]  " << sys.RowToString(sys.eq_rows[i], true) << "\n";
      }
      for (size_t i = 0; i < sys.ineq_rows.size(); ++i) {
        if (pr.certificate.ineq_multipliers[i].IsZero()) continue;
        os << "    " << pr.certificate.ineq_multipliers[i] << " x [" << sys.ineq_rows[i].label
           << "]  " << sys.RowToString(sys.ineq_rows[i], false) << "\n";
      }
      os << "    => " << Contradiction(sys, pr.certificate) << "\n";
    }
  }
  for (const auto& note : report.global_opt) {
    os << "player " << note.player + 1 << " global minimum " << note.value << " at";
    for (const auto& x : note.minimizers) os << " " << x.ToString();
    if (note.missed) os << "  [equilibrium missed by the complementarity system]";
    os << "\n";
  }
  return os.str();
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out = "param,nash_set,mcp_set,relation\n";
  for (const auto& row : rows) {
    out += row.param.ToString() + ",\"" + row.nash().ToString() + "\",\"" +
           row.mcp().ToString() + "\"," + std::string(RelationName(row.relation())) + "\n";
  }
  return out;
}

Json SweepToJson(BuiltinCase c, const std::vector<SweepRow>& rows) {
  Json j;
  j["schema"] = "dcnc-sweep";
  j["version"] = kReportSchemaVersion;
  j["case"] = BuiltinCaseName(c);
  j["rows"] = Json::array();
  for (const auto& row : rows) {
    Json e;
    e["param"] = RationalToJson(row.param);
    e["report"] = ReportToJson(row.report);
    j["rows"].push_back(std::move(e));
  }
  return j;
}

StrategyProfile ParseProfile(std::string_view text) {
  if (!text.empty() && text.front() == '(') text.remove_prefix(1);
  if (!text.empty() && text.back() == ')') text.remove_suffix(1);
  StrategyProfile x;
  size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    Rational q;
    if (!Rational::TryParse(text.substr(pos, end - pos), &q)) {
      throw DcncError(ErrorCode::kParse,
                      "bad profile entry '" + std::string(text.substr(pos, end - pos)) + "'");
    }
    x.x.push_back(q);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return x;
}

std::vector<RationalVector> ParseMultipliers(const Json& j, const RelaxedKktSystem& system) {
  CheckKeys(j, "", {"players"});
  const Json& players = Array(j["players"], "/players");
  if (players.size() != system.players.size()) Fail("/players", "player count mismatch");
  std::vector<RationalVector> out;
  for (size_t p = 0; p < players.size(); ++p) {
    const std::string w = At("/players", p);
    CheckKeys(players[p], w, {"player", "multipliers"});
    if (Int(players[p]["player"], At(w, "player")) != static_cast<int>(p) + 1) {
      Fail(At(w, "player"), "players must be listed in order");
    }
    out.push_back(MultipliersFromJson(players[p]["multipliers"], system.players[p],
                                      At(w, "multipliers")));
  }
  return out;
}

std::vector<RationalVector> LambdaListToMultipliers(const RationalVector& lambdas,
                                                    const RelaxedKktSystem& system) {
  std::vector<RationalVector> out;
  size_t next = 0;
  for (const auto& block : system.players) {
    if (block.num_gamma || block.num_abs) {
      throw DcncError(ErrorCode::kInvalidArgument,
                      "--lambda only applies to games without equalities or absolute-value "
                      "terms; use --multipliers");
    }
    RationalVector aux;
    for (int j = 0; j < block.num_lambda; ++j) {
      if (next >= lambdas.size()) {
        throw DcncError(ErrorCode::kDimensionMismatch, "too few lambda values");
      }
      aux.push_back(lambdas[next++]);
    }
    out.push_back(std::move(aux));
  }
  if (next != lambdas.size()) {
    throw DcncError(ErrorCode::kDimensionMismatch, "too many lambda values");
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DcncError(ErrorCode::kParse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DcncError(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << contents;
}

}  // namespace dcnc
