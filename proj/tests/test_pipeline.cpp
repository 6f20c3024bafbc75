#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "holowalk/closedform.hpp"
#include "holowalk/error.hpp"
#include "holowalk/pipeline.hpp"
#include "holowalk/walks.hpp"

using namespace holowalk;

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("holowalk_" + name)) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void writeText(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string readText(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PipelineConfig gesselConfig() {
  PipelineConfig c;
  c.steps = "E,W,NE,SW";
  c.bounds = "Sn=1,Si=2,Sj=2";
  c.verifyLength = 60;
  return c;
}

// (m+2)(2m+3) b(m+1) = 6(3m+1)(3m+2) b(m) written for n = 3m.
UniOperator krewerasRecurrence() {
  UniOperator p;
  p.addTerm(3, RatFunc(UniPoly(std::vector<Rational>{6, Rational(7, 3), Rational(2, 9)})));
  p.addTerm(0, RatFunc(UniPoly(std::vector<Rational>{-12, -18, -6})));
  return p.cleared();
}

}  // namespace

TEST_CASE("config JSON round trip") {
  PipelineConfig c;
  CHECK(configFromJson(configToJson(c)) == c);
  c.truncation = 9;
  c.closedForm = "gessel";
  c.cacheDir = "/tmp/x";
  c.bounds = "n=1,Sn=2";
  c.verifyLength = 77;
  CHECK(configFromJson(configToJson(c)) == c);
  CHECK(configFromJson(parseJson(dumpJson(configToJson(c)))) == c);
  CHECK_THROWS_AS(configFromJson(parseJson(R"({"colour":"red"})")), ParseError);
  CHECK_THROWS_AS(configFromJson(parseJson(R"({"nMax":"ten"})")), ParseError);
}

TEST_CASE("count command") {
  std::ostringstream out, err;
  PipelineConfig c = gesselConfig();
  CHECK(cmdCount(c, 4, 0, 0, out, err) == kExitOk);
  CHECK(out.str() == "11\n");
  out.str("");
  CHECK(cmdCount(c, 3, 0, 0, out, err) == kExitOk);
  CHECK(out.str() == "0\n");
  c.steps = "W,S,NE";
  out.str("");
  CHECK(cmdCount(c, 6, 0, 0, out, err) == kExitOk);
  CHECK(out.str() == "16\n");
  c.steps = "E,W,ZZ";
  CHECK(cmdCount(c, 6, 0, 0, out, err) == kExitError);
  CHECK(err.str().find("ZZ") != std::string::npos);
}

TEST_CASE("guess and certify commands") {
  TempDir dir("pipeline_guess");
  PipelineConfig c = gesselConfig();
  c.out = dir.file("cands.json");
  std::ostringstream out, err;
  REQUIRE(cmdGuess(c, out, err) == kExitOk);
  const Json g = readJsonFile(*c.out);
  CHECK(g["version"] == kVersion);
  CHECK(configFromJson(g["config"]) == c);
  const auto ops = loadOperators(g);
  REQUIRE(ops.size() == 1);
  CHECK(ops[0] == normalized(trivialOperator(StepSet::gessel())));

  // Determinism: a second run writes the same bytes.
  const std::string first = readText(*c.out);
  REQUIRE(cmdGuess(c, out, err) == kExitOk);
  CHECK(readText(*c.out) == first);

  PipelineConfig cc = gesselConfig();
  cc.out = dir.file("cert.json");
  CHECK(cmdCertify(cc, *c.out, out, err) == kExitOk);
  CHECK(readJsonFile(*cc.out)["certificates"][0]["verdict"] == "certified");

  writeText(dir.file("bad.json"),
            dumpJson(operatorToJson(trivialOperator(StepSet::gessel()) + OreOperator::identity())));
  CHECK(cmdCertify(cc, dir.file("bad.json"), out, err) == kExitNegative);
  const Json refuted = readJsonFile(*cc.out);
  CHECK(refuted["certificates"][0]["counterexample"] == Json::array({0, 0, 0}));

  writeText(dir.file("malformed.json"),
            R"({"terms":[{"shift":[0,0,0],"coeff":[{"exp":[0,0,0],"num":"1/","den":"2"}]}]})");
  CHECK(cmdCertify(cc, dir.file("malformed.json"), out, err) == kExitError);
}

TEST_CASE("guess without candidates exits 1") {
  PipelineConfig c = gesselConfig();
  c.bounds = "n=2,i=2,j=2,Sn=2,Si=2,Sj=2,deg=2";
  c.shape = "quasiholonomic";
  std::ostringstream out, err;
  CHECK(cmdGuess(c, out, err) == kExitNegative);
  CHECK(err.str().find("no candidates") != std::string::npos);
  c.steps = "bogus";
  CHECK(cmdGuess(c, out, err) == kExitError);
}

TEST_CASE("table command and cache directory") {
  TempDir dir("pipeline_table");
  PipelineConfig c = gesselConfig();
  c.nMax = 6;
  c.cacheDir = dir.file("cache");
  std::ostringstream out, err;
  CHECK(cmdTable(c, out, err) == kExitOk);
  const CountTable t = tableFromJson(out.str());
  CHECK(t.maxLevel() == 6);
  CHECK(t.at(4, 0, 0) == 11);
  CHECK(std::distance(std::filesystem::directory_iterator(*c.cacheDir),
                      std::filesystem::directory_iterator{}) == 1);
}

TEST_CASE("import recurrence") {
  TempDir dir("pipeline_import");
  PipelineConfig c;
  c.verifyLength = 120;
  std::ostringstream out, err;
  writeText(dir.file("good.json"), dumpJson(uniOperatorToJson(krewerasRecurrence())));
  CHECK(cmdImportRecurrence(c, dir.file("good.json"), out, err) == kExitOk);

  UniOperator wrong = krewerasRecurrence();
  wrong.addTerm(0, RatFunc(1));
  writeText(dir.file("wrong.json"), dumpJson(uniOperatorToJson(wrong)));
  std::ostringstream err2;
  CHECK(cmdImportRecurrence(c, dir.file("wrong.json"), out, err2) == kExitNegative);
  CHECK(err2.str().find("rejected: fails sequence check at n=") != std::string::npos);

  writeText(dir.file("truncated.json"), R"({"var":"n","terms":[{"power":0,)");
  CHECK(cmdImportRecurrence(c, dir.file("truncated.json"), out, err) == kExitError);
  CHECK(cmdImportRecurrence(c, dir.file("missing.json"), out, err) == kExitError);
}

TEST_CASE("prove with an imported recurrence") {
  TempDir dir("pipeline_prove_import");
  writeText(dir.file("p.json"), dumpJson(uniOperatorToJson(krewerasRecurrence(), true)));
  PipelineConfig c;
  c.closedForm = "kreweras";
  c.importRecurrence = dir.file("p.json");
  c.verifyLength = 100;
  std::ostringstream out, err;
  CHECK(cmdProve(c, out, err) == kExitOk);
  const Json j = parseJson(out.str());
  CHECK(j["proof"]["verdict"] == "PROVED");
  CHECK(j["import"]["status"] == "accepted");

  c.closedForm = "gessel";
  std::ostringstream out2;
  CHECK(cmdProve(c, out2, err) == kExitNegative);
  c.closedForm.reset();
  CHECK(cmdProve(c, out2, err) == kExitError);
}

TEST_CASE("prove gessel from an interlaced recurrence") {
  TempDir dir("pipeline_gessel");
  // (3n+10)(n+4) f(n+2) = 16(3n+5)(n+1) f(n)
  UniOperator p;
  p.addTerm(2, RatFunc(UniPoly(std::vector<Rational>{10, 3}) * UniPoly(std::vector<Rational>{4, 1})));
  p.addTerm(0, RatFunc(UniPoly(-16) * UniPoly(std::vector<Rational>{5, 3}) *
                       UniPoly(std::vector<Rational>{1, 1})));
  writeText(dir.file("g.json"), dumpJson(uniOperatorToJson(p)));
  PipelineConfig c = gesselConfig();
  c.closedForm = "gessel";
  c.importRecurrence = dir.file("g.json");
  c.verifyLength = 200;
  std::ostringstream out, err;
  CHECK(cmdProve(c, out, err) == kExitOk);
  CHECK(parseJson(out.str())["proof"]["verdict"] == "PROVED");

  // Dropping the factor (n+1) breaks it.
  UniOperator q;
  q.addTerm(2, p.coeff(2));
  q.addTerm(0, RatFunc(UniPoly(-16) * UniPoly(std::vector<Rational>{5, 3})));
  writeText(dir.file("q.json"), dumpJson(uniOperatorToJson(q)));
  c.importRecurrence = dir.file("q.json");
  std::ostringstream out2;
  CHECK(cmdProve(c, out2, err) == kExitNegative);
}

TEST_CASE("check closed form command") {
  PipelineConfig c = gesselConfig();
  c.closedForm = "gessel";
  c.nMax = 30;
  std::ostringstream out, err;
  CHECK(cmdCheckClosedForm(c, out, err) == kExitOk);
  c.steps = "W,S,NE";
  CHECK(cmdCheckClosedForm(c, out, err) == kExitNegative);
}

TEST_CASE("eliminate command rejects uncertified generators") {
  TempDir dir("pipeline_elim");
  writeText(dir.file("bad.json"),
            dumpJson(operatorToJson(OreOperator::shift({1, 0, 0}) - OreOperator::identity())));
  PipelineConfig c;
  c.verifyLength = 30;
  std::ostringstream out, err;
  CHECK(cmdEliminate(c, {dir.file("bad.json")}, out, err) == kExitNegative);
}
