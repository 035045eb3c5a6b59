// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any
// failure. Reference values are computed here from test-side oracles or are
// fixed constants; the library only supplies the results being judged.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "dcnc/analysis.h"
#include "dcnc/io.h"
#include "dcnc/kkt.h"
#include "dcnc/nash.h"
#include "oracles.h"

#ifndef DCNC_DATA_DIR
#define DCNC_DATA_DIR "data"
#endif

using namespace dcnc;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

RationalVector V(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Evidence collected across criteria 1-4 and audited in criterion 5.
struct Evidence {
  std::vector<std::pair<GameSpec, KktCertificate>> certificates;
  std::vector<std::pair<GameSpec, MembershipRefutation>> refutations;

  void Add(const InclusionReport& r) {
    for (const auto& c : r.mcp.certificates) certificates.emplace_back(r.game, c);
    for (const auto& w : r.witnesses) refutations.emplace_back(r.game, w.refutation);
  }
};

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Outcome Criterion1(Evidence* ev) {
  Outcome o;
  const auto start = Clock::now();
  const ValidatedGame g = ValidateOrThrow(BuiltinExample1(Rational(1, 2)));
  const auto report = MakeInclusionReport(g);
  const auto sys = BuildKktSystem(g);
  o.Require(report.nash.ToString() == "{(1,1)}", "nash set " + report.nash.ToString());
  o.Require(report.mcp.solutions.empty(), "mcp set " + report.mcp.solutions.ToString());
  o.Require(report.relation == Relation::kEmptyMcpNonemptyNash, "relation");
  o.Require(report.witnesses.size() == 1 && report.witnesses[0].profile.x == V({1, 1}),
            "no refutation for (1,1)");
  if (o.pass) {
    const auto& ref = report.witnesses[0].refutation;
    o.Require(VerifyRefutation(sys, ref), "refutation does not verify");
    o.Require(ref.patterns.size() == 1, "expected a single forced pattern");
    if (o.pass) {
      // The contradiction must combine lambda = 1 (stationarity) with
      // lambda = 0 (inactive constraint).
      const auto ps = PatternSystem(sys.players[ref.player], ref.profile.x, ref.patterns[0].pattern);
      const auto& cert = ref.patterns[0].certificate;
      bool one = false, zero = false;
      for (size_t i = 0; i < ps.eq_rows.size(); ++i) {
        const auto& row = ps.eq_rows[i];
        if (cert.eq_multipliers[i].IsZero() || row.coef != V({1})) continue;
        one = one || row.rhs == Rational(1);
        zero = zero || row.rhs == Rational(0);
      }
      o.Require(one && zero, "certificate does not use lambda = 1 against lambda = 0");
      o.Require(VerifyOutcome(ps, cert), "farkas certificate fails");
    }
  }
  ev->Add(report);
  const double t = Seconds(start);
  o.Require(t < 0.1, "runtime " + std::to_string(t) + " s");
  o.detail = o.pass ? "nash {(1,1)}, mcp {}, t=" + std::to_string(t) + "s" : o.detail;
  return o;
}

Outcome Criterion2(Evidence* ev) {
  Outcome o;
  const auto start = Clock::now();
  const auto grid = ParseGrid("-4,-3,-2,0,1,2,5,6,7");
  const auto rows = Sweep(BuiltinCase::kExample2L2, grid);
  const StrategyProfile zero{V({0, 0})}, one{V({1, 1})};
  for (const auto& row : rows) {
    const std::string at = "delta=" + row.param.ToString() + ": ";
    const bool low = row.param < Rational(-3);
    o.Require(row.nash().ToString() == (low ? "{(0,0)}" : "{(0,0),(1,1)}"),
              at + "nash " + row.nash().ToString());
    o.Require(row.mcp().Contains(zero), at + "mcp lacks (0,0)");
    o.Require(row.mcp().Contains(one) == (row.param >= Rational(6)), at + "mcp and (1,1)");
    const bool strict = row.param >= Rational(-3) && row.param < Rational(6);
    o.Require((row.relation() == Relation::kStrictSubset) == strict, at + "relation");
    if (row.param == Rational(2) || row.param == Rational(5)) {
      const auto& note = row.report.global_opt[1];
      o.Require(note.missed && note.minimizers.size() == 1 && note.minimizers[0] == one,
                at + "global optimum of player 2 not flagged");
    }
    ev->Add(row.report);
  }
  const double t = Seconds(start);
  o.Require(t < 0.5, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "9 grid points, t=" + std::to_string(t) + "s";
  return o;
}

// L1 variant written out by hand: f1 = |2x1 - 3x2|, f2 = f1 - delta x1 x2,
// x_p in {0, 1}.
struct L1Oracle {
  static Rational F(int p, const Rational& d, long x1, long x2) {
    const Rational a = Rational(2 * x1 - 3 * x2).Abs();
    return p == 0 ? a : a - d * Rational(x1 * x2);
  }
  static bool Nash(const Rational& d, long x1, long x2) {
    for (long y = 0; y <= 1; ++y) {
      if (F(0, d, y, x2) < F(0, d, x1, x2)) return false;
      if (F(1, d, x1, y) < F(1, d, x1, x2)) return false;
    }
    return true;
  }
  static bool Kkt(const Rational& d, long x1, long x2) {
    const Rational a(2 * x1 - 3 * x2);
    const bool p1 = oracle::ScalarBoxKkt(Rational(x1), Rational(1), Rational(0),
                                         {{Rational(1), Rational(2), a}});
    const bool p2 = oracle::ScalarBoxKkt(Rational(x2), Rational(1), -d * Rational(x1),
                                         {{Rational(1), Rational(-3), a}});
    return p1 && p2;
  }
};

Outcome Criterion3(Evidence* ev) {
  Outcome o;
  const auto grid = ParseGrid("-8:8:1/4");
  // Oracle first: thresholds as the smallest grid value from which (1,1)
  // stays in each set.
  auto threshold = [&](const std::function<bool(const Rational&)>& in) -> std::optional<Rational> {
    std::optional<Rational> t;
    for (const auto& d : grid) {
      if (in(d) && !t) t = d;
      if (!in(d) && t) return std::nullopt;  // not monotone
    }
    return t;
  };
  const auto nash_t = threshold([](const Rational& d) { return L1Oracle::Nash(d, 1, 1); });
  const auto mcp_t = threshold([](const Rational& d) { return L1Oracle::Kkt(d, 1, 1); });
  o.Require(nash_t && *nash_t == Rational(-1), "oracle nash threshold");
  o.Require(mcp_t && *mcp_t == Rational(3), "oracle mcp threshold");
  if (!o.pass) return o;

  for (const auto& row : Sweep(BuiltinCase::kExample2L1, grid)) {
    const std::string at = "delta=" + row.param.ToString() + ": ";
    for (long x1 = 0; x1 <= 1; ++x1) {
      for (long x2 = 0; x2 <= 1; ++x2) {
        const StrategyProfile x{V({x1, x2})};
        o.Require(row.nash().Contains(x) == L1Oracle::Nash(row.param, x1, x2),
                  at + "nash membership of " + x.ToString());
        o.Require(row.mcp().Contains(x) == L1Oracle::Kkt(row.param, x1, x2),
                  at + "mcp membership of " + x.ToString());
      }
    }
    ev->Add(row.report);
  }
  if (o.pass) o.detail = "(1,1) in nash iff delta >= -1, in mcp iff delta >= 3; 65 grid points";
  return o;
}

Outcome Criterion4(Evidence* ev) {
  Outcome o;
  int violations = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const GameSpec spec = RandomGame(seed);
    const ValidatedGame g = ValidateOrThrow(spec);
    const auto report = MakeInclusionReport(g);  // throws on an inclusion violation
    const auto table = oracle::NashByPayoffTable(spec, 4);
    std::set<RationalVector> nash;
    for (const auto& x : report.nash.profiles) nash.insert(x.x);
    o.Require(nash == table, "seed " + std::to_string(seed) + ": nash set differs from payoff table");
    for (const auto& x : report.mcp.solutions.profiles) violations += !table.count(x.x);
    ev->Add(report);
  }
  o.Require(violations == 0, std::to_string(violations) + " inclusion violations");

  std::set<Relation> seen;
  for (const char* file : {"example1.json", "example2.json", "example2-l1.json", "example2-delta7.json"}) {
    const GameSpec spec = ParseGameText(ReadFile(std::string(DCNC_DATA_DIR) + "/" + file));
    const auto report = MakeInclusionReport(ValidateOrThrow(spec));
    seen.insert(report.relation);
    ev->Add(report);
  }
  for (Relation r : {Relation::kEqual, Relation::kStrictSubset, Relation::kEmptyMcpNonemptyNash}) {
    o.Require(seen.count(r) > 0, "no bundled case with relation " + std::string(RelationName(r)));
  }
  if (o.pass) o.detail = "200 seeds, 0 violations; bundled cases cover Equal, StrictSubset, EmptyMcpNonemptyNash";
  return o;
}

Outcome Criterion5(const Evidence& ev) {
  Outcome o;
  size_t certs = 0, farkas = 0;
  for (const auto& [spec, cert] : ev.certificates) {
    const auto sys = BuildKktSystem(ValidateOrThrow(spec));
    o.Require(VerifyKktCertificate(sys, cert), spec.name + ": certificate " + cert.profile.ToString());
    for (int p = 0; p < spec.num_players(); ++p) {
      o.Require(oracle::KktBySubstitution(spec, p, cert.profile.x, cert.players[p].aux),
                spec.name + ": substitution " + cert.profile.ToString());
    }
    ++certs;
  }
  for (const auto& [spec, ref] : ev.refutations) {
    const auto sys = BuildKktSystem(ValidateOrThrow(spec));
    o.Require(VerifyRefutation(sys, ref), spec.name + ": refutation " + ref.profile.ToString());
    for (const auto& pr : ref.patterns) {
      const auto ps = PatternSystem(sys.players[ref.player], ref.profile.x, pr.pattern);
      o.Require(VerifyOutcome(ps, pr.certificate), spec.name + ": farkas " + ref.profile.ToString());
      ++farkas;
    }
  }

  std::mt19937_64 rng(99);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
  int agree = 0;
  for (int k = 0; k < 1000; ++k) {
    LinearSystem s;
    const int n = pick(1, 4);
    for (int j = 0; j < n; ++j) s.AddUnknown("y" + std::to_string(j), pick(0, 2) > 0);
    const int rows = pick(1, 6);
    for (int r = 0; r < rows; ++r) {
      LinearRow row;
      for (int j = 0; j < n; ++j) row.coef.emplace_back(pick(-3, 3), pick(1, 3));
      row.rhs = Rational(pick(-4, 4), pick(1, 2));
      (pick(0, 3) == 0 ? s.eq_rows : s.ineq_rows).push_back(row);
    }
    const auto out = SolveFeasibility(s);
    const bool ok = out.feasible() == oracle::BruteFeasible(s) && VerifyOutcome(s, out);
    o.Require(ok, "linfeas instance " + std::to_string(k));
    agree += ok;
  }
  if (o.pass) {
    o.detail = std::to_string(certs) + " kkt certificates, " + std::to_string(farkas) +
               " farkas certificates, " + std::to_string(agree) + "/1000 linfeas agree";
  }
  return o;
}

Outcome Criterion6() {
  Outcome o;
  std::mt19937_64 rng(6);
  auto rat = [&] {
    return Rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 7) + 1);
  };
  for (int k = 0; k < 100; ++k) {
    const GameSpec spec = RandomGame(1000 + k);
    const ValidatedGame g = ValidateOrThrow(spec);
    RationalVector x;
    for (int i = 0; i < spec.num_vars; ++i) x.push_back(rat());
    const Rational h = Rational(1, static_cast<long>(rng() % 9) + 1);
    for (int p = 0; p < spec.num_players(); ++p) {
      Objective smooth = spec.players[p].objective;
      smooth.abs_terms.clear();
      const auto grad = Gradient(g, p, x);
      for (int i = 0; i < spec.players[p].count; ++i) {
        RationalVector up = x, down = x;
        up[spec.players[p].first + i] += h;
        down[spec.players[p].first + i] -= h;
        const Rational dq = (oracle::Objective(smooth, up) - oracle::Objective(smooth, down)) / (2 * h);
        o.Require(dq == grad[i], "gradient mismatch at point " + std::to_string(k));
      }
    }
  }
  // Epigraph: min t s.t. v - t <= 0, -v - t <= 0 is |v|. Checked as
  // feasibility at t <= |v| with the point forced to t = |v|, and a Farkas
  // refutation of t <= |v| - 1/1000.
  for (int k = 0; k < 100; ++k) {
    const GameSpec spec = RandomGame(2000 + k);
    RationalVector x;
    for (int i = 0; i < spec.num_vars; ++i) x.push_back(rat());
    for (const auto& pl : spec.players) {
      Rational via_epigraph;
      for (const auto& term : pl.objective.abs_terms) {
        const Rational v = Dot(term.coef, x) + term.offset;
        auto system = [&](const Rational& cap) {
          LinearSystem s;
          s.AddUnknown("t", false);
          s.ineq_rows.push_back({{Rational(-1)}, -v, "v - t <= 0"});
          s.ineq_rows.push_back({{Rational(-1)}, v, "-v - t <= 0"});
          s.ineq_rows.push_back({{Rational(1)}, cap, "t <= cap"});
          return s;
        };
        const auto at = SolveFeasibility(system(v.Abs()));
        o.Require(at.feasible() && at.point()[0] == v.Abs(), "epigraph value at profile " + std::to_string(k));
        const auto s_below = system(v.Abs() - Rational(1, 1000));
        const auto below = SolveFeasibility(s_below);
        o.Require(!below.feasible() && VerifyOutcome(s_below, below), "epigraph below |v|");
        if (at.feasible()) via_epigraph += term.weight * at.point()[0];
      }
      Objective smooth = pl.objective;
      smooth.abs_terms.clear();
      o.Require(oracle::Objective(smooth, x) + via_epigraph ==
                    EvaluateObjective(ValidateOrThrow(spec), pl.id - 1, {x}),
                "objective with epigraph values");
    }
  }
  if (o.pass) o.detail = "100 gradient points, 100 epigraph profiles";
  return o;
}

std::string AllReports(int threads) {
  Limits lim;
  lim.threads = threads;
  std::string out;
  for (const char* file : {"example1.json", "example2.json", "example2-l1.json", "example2-delta7.json"}) {
    const GameSpec spec = ParseGameText(ReadFile(std::string(DCNC_DATA_DIR) + "/" + file));
    out += ReportToJson(MakeInclusionReport(ValidateOrThrow(spec), lim)).dump(2);
  }
  for (uint64_t seed = 0; seed < 30; ++seed) {
    out += ReportToJson(MakeInclusionReport(ValidateOrThrow(RandomGame(seed)), lim)).dump(2);
  }
  for (auto c : {BuiltinCase::kExample2L2, BuiltinCase::kExample2L1}) {
    out += SweepToJson(c, Sweep(c, ParseGrid("-4:7:1/2"), lim)).dump(2);
  }
  return out;
}

Outcome Criterion7() {
  Outcome o;
  const std::string a = AllReports(1), b = AllReports(1), c = AllReports(4), d = AllReports(4);
  o.Require(a == b, "two single-threaded runs differ");
  o.Require(a == c && c == d, "threads=4 output differs from threads=1");
  if (o.pass) o.detail = std::to_string(a.size()) + " bytes identical across 4 runs";
  return o;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  Evidence ev;
  int failures = 0;
  auto report = [&](int n, const char* title, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("criterion %d %-28s %s  %s\n", n, title, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  };
  report(1, "example1 empty mcp", [&] { return Criterion1(&ev); });
  report(2, "example2 delta sweep", [&] { return Criterion2(&ev); });
  report(3, "L1 variant thresholds", [&] { return Criterion3(&ev); });
  report(4, "inclusion on random games", [&] { return Criterion4(&ev); });
  report(5, "certificate audits", [&] { return Criterion5(ev); });
  report(6, "exactness", [] { return Criterion6(); });
  report(7, "determinism", [] { return Criterion7(); });
  const double t = Seconds(start);
  const bool fast = t < 60;
  failures += !fast;
  std::printf("suite runtime %.2fs %s\n", t, fast ? "PASS" : "FAIL");
  return failures == 0 ? 0 : 1;
}
