#include <doctest.h>

#include <filesystem>

#include "holowalk/error.hpp"
#include "holowalk/ore.hpp"
#include "holowalk/walks.hpp"
#include "support/brute_force.hpp"

using namespace holowalk;

TEST_CASE("step set parsing") {
  CHECK(parseStepSet("E,W,NE,SW") == StepSet::gessel());
  CHECK(parseStepSet("SW,NE,W,E") == StepSet::gessel());
  CHECK(parseStepSet("W,S,NE") == StepSet::kreweras());
  CHECK(StepSet::gessel().canonicalString() == "E,W,NE,SW");
  CHECK(StepSet::kreweras().canonicalString() == "W,S,NE");
  CHECK_THROWS_AS(parseStepSet("X"), ParseError);
  CHECK_THROWS_AS(parseStepSet(""), ParseError);
  CHECK_THROWS_AS(parseStepSet("E,E"), ParseError);
  try {
    parseStepSet("E,QQ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("QQ") != std::string::npos);
  }
}

TEST_CASE("small counts") {
  const CountTable g = buildTable(StepSet::gessel(), 4);
  CHECK(g.at(2, 0, 0) == 2);
  CHECK(g.at(4, 0, 0) == 11);
  const CountTable k = buildTable(StepSet::kreweras(), 3);
  CHECK(k.at(3, 0, 0) == 2);
  CHECK(k.at(0, 0, 0) == 1);
  CHECK(k.at(0, 1, 0) == 0);
}

TEST_CASE("oracle zero extension and range") {
  const WalkOracle o(buildTable(StepSet::gessel(), 6));
  CHECK(oracleValue(o, 0, 0, 0) == 1);
  CHECK(oracleValue(o, 5, -1, 2) == 0);
  CHECK(oracleValue(o, 1, 0, 0) == 0);
  CHECK(oracleValue(o, -1, 0, 0) == 0);
  CHECK(oracleValue(o, 3, 4, 0) == 0);
  CHECK_THROWS_AS(oracleValue(o, 7, 0, 0), RangeError);
  try {
    oracleValue(o, 9, 0, 0);
  } catch (const RangeError& e) {
    CHECK(e.requiredLevel() == 9);
  }
  const WalkOracle z = WalkOracle::zero(5);
  CHECK(z.value(3, 1, 1) == 0);
}

TEST_CASE("trivial operators") {
  const MultiPoly one(1);
  OreOperator tg = OreOperator::shift({1, 1, 1});
  for (ShiftExp e : {ShiftExp{0, 2, 1}, ShiftExp{0, 0, 1}, ShiftExp{0, 2, 2}, ShiftExp{0, 0, 0}}) {
    tg -= OreOperator::shift(e);
  }
  CHECK(trivialOperator(StepSet::gessel()) == tg);
  OreOperator tk = OreOperator::shift({1, 1, 1});
  for (ShiftExp e : {ShiftExp{0, 2, 1}, ShiftExp{0, 1, 2}, ShiftExp{0, 0, 0}}) {
    tk -= OreOperator::shift(e);
  }
  CHECK(trivialOperator(StepSet::kreweras()) == tk);
  CHECK(trivialOperator(parseStepSet("E")) == OreOperator::shift({1, 1, 0}) - OreOperator::identity());
}

TEST_CASE("table agrees with brute-force enumeration") {
  for (const char* s : {"E,W,NE,SW", "W,S,NE", "N,S,E,W", "NE,SW,N", "E,N,NW,SE,S"}) {
    const StepSet steps = parseStepSet(s);
    const CountTable t = buildTable(steps, 7);
    for (long n = 0; n <= 7; ++n) {
      const auto ends = bruteforce::countWalks(steps, n);
      for (long i = 0; i <= n + 1; ++i) {
        for (long j = 0; j <= n + 1; ++j) {
          auto it = ends.find({i, j});
          const long want = it == ends.end() ? 0 : it->second;
          CHECK(t.at(n, i, j) == want);
        }
      }
    }
  }
}

TEST_CASE("row sums without a boundary") {
  const StepSet s = parseStepSet("E,N,NE");
  const CountTable t = buildTable(s, 10);
  for (long n = 0; n <= 10; ++n) {
    Integer sum = 0;
    for (long i = 0; i <= n; ++i) {
      for (long j = 0; j <= n; ++j) sum += t.at(n, i, j);
    }
    Integer want;
    mpz_ui_pow_ui(want.get_mpz_t(), 3, n);
    CHECK(sum == want);
  }
}

TEST_CASE("trivial operator annihilates the counts") {
  for (const StepSet& s : {StepSet::gessel(), StepSet::kreweras(), parseStepSet("N,S,E,W,NE")}) {
    const WalkOracle o(buildTable(s, 13));
    CHECK(oreApply(trivialOperator(s), o, Box{0, 12, 0, 12, 0, 12}).allZero());
  }
}

TEST_CASE("parity and period of returns") {
  const WalkOracle g(buildTable(StepSet::gessel(), 25));
  for (long n = 1; n <= 25; n += 2) CHECK(oracleValue(g, n, 0, 0) == 0);
  const WalkOracle k(buildTable(StepSet::kreweras(), 24));
  for (long n = 0; n <= 24; ++n) {
    if (n % 3 != 0) CHECK(oracleValue(k, n, 0, 0) == 0);
  }
}

TEST_CASE("diagonal sequence matches the full table") {
  for (const StepSet& s : {StepSet::gessel(), StepSet::kreweras()}) {
    const CountTable t = buildTable(s, 30);
    const auto d = diagonalSequence(s, 30);
    REQUIRE(d.size() == 31);
    for (long n = 0; n <= 30; ++n) CHECK(d[n] == t.at(n, 0, 0));
  }
}

TEST_CASE("table cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "holowalk_test_cache";
  std::filesystem::remove_all(dir);
  const CountTable built = loadOrBuildTable(StepSet::gessel(), 9, dir);
  CHECK(std::filesystem::exists(dir));
  const CountTable loaded = loadOrBuildTable(StepSet::gessel(), 9, dir);
  for (long n = 0; n <= 9; ++n) CHECK(loaded.level(n) == built.level(n));
  const CountTable parsed = tableFromJson(tableToJson(built));
  CHECK(tableToJson(parsed) == tableToJson(built));
  CHECK_THROWS_AS(tableFromJson("{\"steps\":\"E\""), ParseError);
  std::filesystem::remove_all(dir);
}
