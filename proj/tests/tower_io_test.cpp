#include <gtest/gtest.h>

#include "towerlab/fixtures.hpp"
#include "towerlab/tower_io.hpp"

using namespace towerlab;

namespace {

const std::string kData = TOWERLAB_TEST_DATA;

std::string minimal_doc(const std::string& g) {
  return "{\n  \"p\": 7,\n  \"g\": " + g +
         ",\n  \"h\": \"[0,0,1]\",\n  \"S\": [0, 1, \"inf\"],\n"
         "  \"operator\": {\"a1\": \"[1]\", \"a2\": \"[0]\"},\n  \"phi\": \"[1]\"\n}\n";
}

}  // namespace

TEST(ParseRatFunc, RoundTripsThroughFormat) {
  const Field f = Field::make(7);
  const RatFunc r = parse_ratfunc(f, "[0,4]/[1,2,1]");
  EXPECT_EQ(r, RatFunc::from_ints(f, {0, 4}, {1, 2, 1}));
  EXPECT_EQ(parse_ratfunc(f, format_ratfunc(r)), r);
  EXPECT_EQ(parse_ratfunc(f, "[0,0,1]"), RatFunc::x(f).pow(2));
  EXPECT_EQ(parse_ratfunc(f, "[-1,8]"), RatFunc::from_ints(f, {6, 1}, {1}));
}

TEST(ParseTower, SyntaxErrorsCarryPosition) {
  try {
    parse_tower("{\n  \"p\": 7,\n  \"g\": \n}");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 4u);
    EXPECT_TRUE(e.pointer.empty());
  }
}

TEST(ParseTower, ValueErrorsCarryPointer) {
  try {
    parse_tower(minimal_doc("\"[0,4]/[1,x,1]\""));
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3u);
    EXPECT_GT(e.column, 0u);
    EXPECT_EQ(e.pointer, "/g");
  }
  try {
    parse_tower("{\"p\": 9, \"g\": \"[1]\"}");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pointer, "/p");
  }
  EXPECT_THROW(read_tower_file(kData + "/does-not-exist.json"), ParseError);
  EXPECT_THROW(read_tower_file(kData + "/bad-g.json"), ParseError);
}

TEST(ParseTower, MinimalDocument) {
  const TowerDefinition d = parse_tower(minimal_doc("\"[0,4]/[1,2,1]\""));
  EXPECT_EQ(d.field.characteristic(), 7u);
  EXPECT_EQ(d.k, 0u);
  EXPECT_EQ(d.S.size(), 3u);
  EXPECT_FALSE(d.pullback.has_value());
  EXPECT_FALSE(d.witness.has_value());
}

TEST(WriteTower, RoundTripsEveryFixture) {
  for (const auto& name : tower_fixture_names())
    for (std::uint32_t p : {5u, 7u, 11u}) {
      const TowerDefinition d = fixture_definition(name, p);
      const TowerDefinition back = parse_tower(write_tower(d));
      EXPECT_EQ(back.name, d.name);
      EXPECT_EQ(back.field, d.field);
      EXPECT_EQ(back.g, d.g);
      EXPECT_EQ(back.h, d.h);
      EXPECT_EQ(back.S, d.S);
      EXPECT_EQ(back.op, d.op);
      EXPECT_EQ(back.phi, d.phi);
      EXPECT_EQ(back.witness, d.witness);
      EXPECT_EQ(back.modular_level, d.modular_level);
      EXPECT_EQ(back.pullback.has_value(), d.pullback.has_value());
      EXPECT_EQ(write_tower(back), write_tower(d)) << name << " " << p;
    }
}

TEST(BuildTower, FixturesBuildAndMatch) {
  for (const auto& name : tower_fixture_names()) {
    const TowerSpec t = build_tower(fixture_definition(name, 7), Guards{});
    const Fixture fx = tower_fixture(name, 7);
    EXPECT_EQ(t.corr.g, fx.spec.corr.g) << name;
    EXPECT_EQ(t.corr.h, fx.spec.corr.h) << name;
    EXPECT_EQ(t.corr.delta, fx.spec.corr.delta) << name;
  }
  EXPECT_THROW(build_tower(read_tower_file(kData + "/not-adapted.json"), Guards{}), CorrespondenceError);
}

TEST(RunExperiment, EmptySplittingSetIsNotCertified) {
  const TowerDefinition d = read_tower_file(kData + "/empty-T.json");
  const ExperimentReport r = run_experiment(d, "empty-T.json", 0, 1, 0, Guards{});
  EXPECT_EQ(r.splitting.frak_t_size, 0u);
  EXPECT_EQ(r.verdict, "not certified good");
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(RunExperiment, GuardHitIsExitThree) {
  Guards g;
  g.max_enum = 10'000;
  const ExperimentReport r = run_experiment(fixture_definition("x0-2m", 7), "fixture", 0, 12, 0, g);
  ASSERT_TRUE(r.guard_exhausted.has_value());
  EXPECT_TRUE(r.checks_ok());
  EXPECT_EQ(r.exit_code(), 3);
  EXPECT_FALSE(r.levels.empty());
}

TEST(RunExperiment, ExapropReport) {
  const ExperimentReport r = run_experiment(fixture_definition("exaprop", 7), "fixture", 0, 2, 0, Guards{});
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(r.k, 2u);
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_EQ(r.levels[2].split_count, 96u);
  const std::string csv = report_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "tower,p,m,k,count,split_count,expected_split,above_S,fibers_full,S_closure,T_closure,branch_confined");
  EXPECT_NE(csv.find("exaprop,7,2,2,120,96,96,24,1,1,1,1"), std::string::npos);
  EXPECT_NE(report_table(r).find("verdict"), std::string::npos);
}

TEST(RunExperiment, JsonIsDeterministicAcrossThreads) {
  Guards one, many;
  many.threads = 4;
  const TowerDefinition d = fixture_definition("x0-2-3m", 7);
  const std::string a = report_json(run_experiment(d, "fixture", 0, 2, 0, one));
  const std::string b = report_json(run_experiment(d, "fixture", 0, 2, 0, many));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find(ExperimentReport::kSchemaVersion), std::string::npos);
}
