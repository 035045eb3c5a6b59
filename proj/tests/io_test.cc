#include "dcnc/io.h"

#include <gtest/gtest.h>

#include "dcnc/analysis.h"

namespace dcnc {
namespace {

std::string ParseError(const std::string& text) {
  try {
    ParseGameText(text);
  } catch (const DcncError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    return e.what();
  }
  return "";
}

std::string Example1Text() { return RenderGameText(BuiltinExample1(Rational(1, 2))); }

TEST(GameIoTest, RoundTrip) {
  std::vector<GameSpec> games = {BuiltinExample1(Rational(1, 2)),
                                 BuiltinExample2(Rational(-7, 2), Example2Mode::kL2),
                                 BuiltinExample2(Rational(3), Example2Mode::kL1)};
  for (uint64_t seed = 0; seed < 100; ++seed) games.push_back(RandomGame(seed));
  for (const auto& g : games) {
    const std::string text = RenderGameText(g);
    const GameSpec back = ParseGameText(text);
    EXPECT_EQ(back, g) << g.name;
    EXPECT_EQ(RenderGameText(back), text);
  }
}

TEST(GameIoTest, DeclaredUpperRoundTrips) {
  GameSpec g = BuiltinExample1(Rational(1));
  g.players[0].upper = {Rational(3, 2)};
  EXPECT_EQ(ParseGameText(RenderGameText(g)), g);
}

TEST(GameIoTest, RationalsAsIntegersOrStrings) {
  EXPECT_EQ(RationalFromJson(Json(3), "/x"), Rational(3));
  EXPECT_EQ(RationalFromJson(Json("-1/2"), "/x"), Rational(-1, 2));
  EXPECT_EQ(RationalToJson(Rational(-1, 2)), Json("-1/2"));
  EXPECT_EQ(RationalToJson(Rational(4)), Json(4));
  EXPECT_THROW(RationalFromJson(Json(0.5), "/x"), DcncError);
  EXPECT_THROW(RationalFromJson(Json("0.5"), "/x"), DcncError);
  EXPECT_THROW(RationalFromJson(Json(true), "/x"), DcncError);
}

TEST(GameIoTest, StrictRejection) {
  Json j = Json::parse(Example1Text());
  j["players"][0]["colour"] = "red";
  EXPECT_NE(ParseError(j.dump()).find("/players/0/colour"), std::string::npos);

  j = Json::parse(Example1Text());
  j["players"][1].erase("upper");
  EXPECT_NE(ParseError(j.dump()).find("/players/1/upper"), std::string::npos);

  j = Json::parse(Example1Text());
  j["players"][0]["inequalities"][0]["rhs"] = 1.5;
  EXPECT_NE(ParseError(j.dump()).find("/players/0/inequalities/0/rhs"), std::string::npos);

  j = Json::parse(Example1Text());
  j["schema"] = "something-else";
  EXPECT_NE(ParseError(j.dump()).find("/schema"), std::string::npos);

  j = Json::parse(Example1Text());
  j["players"][0]["objective"]["quadratic"] = Json::parse("[[0,1,1],[1,0,2]]");
  EXPECT_NE(ParseError(j.dump()).find("duplicate"), std::string::npos);

  EXPECT_NE(ParseError("{\n  \"schema\": \"dcnc-game\",\n  oops\n}").find("line 3"),
            std::string::npos);
}

TEST(GameIoTest, QuadraticIsSymmetricFromTriples) {
  Json j = Json::parse(Example1Text());
  j["players"][0]["objective"]["quadratic"] = Json::parse("[[1,0,\"1/2\"]]");
  const GameSpec g = GameFromJson(j);
  EXPECT_EQ(g.players[0].objective.quad(0, 1), Rational(1, 2));
  EXPECT_EQ(g.players[0].objective.quad(1, 0), Rational(1, 2));
}

TEST(ProfileIoTest, Parse) {
  EXPECT_EQ(ParseProfile("1,0").x, (RationalVector{Rational(1), Rational(0)}));
  EXPECT_EQ(ParseProfile("(1/2,3)").x, (RationalVector{Rational(1, 2), Rational(3)}));
  EXPECT_THROW(ParseProfile("1,,2"), DcncError);
}

InclusionReport Report(const GameSpec& g) { return MakeInclusionReport(ValidateOrThrow(g)); }

TEST(ReportIoTest, ReportsVerify) {
  std::vector<GameSpec> games = {BuiltinExample1(Rational(1, 2)),
                                 BuiltinExample2(Rational(2), Example2Mode::kL2),
                                 BuiltinExample2(Rational(6), Example2Mode::kL2),
                                 BuiltinExample2(Rational(0), Example2Mode::kL1)};
  for (uint64_t seed = 0; seed < 40; ++seed) games.push_back(RandomGame(seed));
  for (const auto& g : games) {
    const Json j = ReportToJson(Report(g));
    const ParsedReport parsed = ParseReport(Json::parse(j.dump()));
    EXPECT_TRUE(VerifyReport(parsed).empty()) << g.name;
    EXPECT_EQ(parsed.game, g);
  }
}

TEST(ReportIoTest, TamperedReportsFail) {
  const Json good = ReportToJson(Report(BuiltinExample2(Rational(2), Example2Mode::kL2)));

  Json j = good;
  j["relation"] = "Equal";
  EXPECT_FALSE(VerifyReport(ParseReport(j)).empty());

  j = good;
  j["mcp"][0]["players"][0]["multipliers"]["lambda[1,1]"] = 1;
  EXPECT_FALSE(VerifyReport(ParseReport(j)).empty());

  j = good;
  j["missed"][0]["patterns"][0]["eq_multipliers"][0] = -1;
  EXPECT_FALSE(VerifyReport(ParseReport(j)).empty());

  // Dropping an equilibrium together with its refutation is still caught.
  j = good;
  j["nash"].erase(1);
  j["missed"] = Json::array();
  j["relation"] = "Equal";
  EXPECT_FALSE(VerifyReport(ParseReport(j)).empty());

  j = good;
  j["game"]["players"][1]["objective"]["linear"][1] = 6;
  EXPECT_FALSE(VerifyReport(ParseReport(j)).empty());
}

TEST(ReportIoTest, TextRenderings) {
  const auto r = Report(BuiltinExample2(Rational(2), Example2Mode::kL2));
  const std::string text = RenderReportText(r);
  EXPECT_NE(text.find("StrictSubset"), std::string::npos);
  EXPECT_NE(RenderReportTable(r).find("(1,1)"), std::string::npos);
  const auto rows = Sweep(BuiltinCase::kExample2L2, ParseGrid("5,6"));
  EXPECT_EQ(SweepCsv(rows),
            "param,nash_set,mcp_set,relation\n"
            "5,\"{(0,0),(1,1)}\",\"{(0,0)}\",StrictSubset\n"
            "6,\"{(0,0),(1,1)}\",\"{(0,0),(1,1)}\",Equal\n");
  EXPECT_EQ(SweepToJson(BuiltinCase::kExample2L2, rows)["schema"], "dcnc-sweep");
}

TEST(MultiplierIoTest, LambdaListAndNamedForms) {
  const ValidatedGame g = ValidateOrThrow(BuiltinExample2(Rational(6), Example2Mode::kL2));
  const auto sys = BuildKktSystem(g);
  const auto aux = LambdaListToMultipliers({Rational(4), Rational(0)}, sys);
  ASSERT_EQ(aux.size(), 2u);
  EXPECT_EQ(aux[0], RationalVector{Rational(4)});
  EXPECT_THROW(LambdaListToMultipliers({Rational(4)}, sys), DcncError);
  const Json named = Json::parse(
      R"({"players":[{"player":1,"multipliers":{"lambda[1,1]":4}},)"
      R"({"player":2,"multipliers":{"lambda[2,1]":"0"}}]})");
  EXPECT_EQ(ParseMultipliers(named, sys), aux);
}

}  // namespace
}  // namespace dcnc
