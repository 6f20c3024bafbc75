#include "holowalk/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <memory>

#include "holowalk/closedform.hpp"
#include "holowalk/error.hpp"
#include "holowalk/guess.hpp"
#include "holowalk/walks.hpp"

namespace holowalk {

namespace {

// Extra diagonal terms so that a recurrence of this order is still checked
// at every n <= verifyLength.
constexpr long kDiagonalSlack = 64;

class OracleProvider {
 public:
  explicit OracleProvider(const PipelineConfig& cfg)
      : steps_(parseStepSet(cfg.steps)), minLevel_(cfg.nMax) {
    if (cfg.cacheDir) cacheDir_ = std::filesystem::path(*cfg.cacheDir);
  }

  const StepSet& steps() const { return steps_; }

  const WalkOracle& atLeast(long level, std::ostream& err) {
    level = std::max(level, minLevel_);
    if (!oracle_ || oracle_->maxLevel() < level) {
      err << "[table] building " << steps_.canonicalString() << " up to n=" << level << "\n";
      oracle_ = std::make_unique<WalkOracle>(loadOrBuildTable(steps_, level, cacheDir_));
    }
    return *oracle_;
  }

 private:
  StepSet steps_;
  long minLevel_;
  std::optional<std::filesystem::path> cacheDir_;
  std::unique_ptr<WalkOracle> oracle_;
};

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

Json envelope(const PipelineConfig& cfg, const char* command) {
  return {{"version", kVersion}, {"command", command}, {"config", configToJson(cfg)}};
}

void emit(const PipelineConfig& cfg, const Json& j, std::ostream& out) {
  if (cfg.out) {
    writeFileAtomically(*cfg.out, dumpJson(j));
  } else {
    out << dumpJson(j);
  }
}

EliminationConfig eliminationConfig(const PipelineConfig& cfg) {
  EliminationConfig e;
  e.truncation = cfg.truncation;
  e.multiplierBound = cfg.multiplierBound;
  e.retryCap = cfg.retryCap;
  return e;
}

struct GuessRun {
  AnsatzTemplate tmpl;
  GuessResult result;
};

GuessRun runGuess(const PipelineConfig& cfg, OracleProvider& oracles, std::ostream& err) {
  GuessRun run;
  run.tmpl = buildTemplate(parseBounds(cfg.bounds), parseShape(cfg.shape));
  PointPolicy policy;
  policy.n = cfg.pointN;
  policy.j = cfg.pointJ;
  policy.margin = cfg.pointMargin;
  const PointPolicy resolved = resolvePointPolicy(run.tmpl, policy);
  long level = requiredLevel(run.tmpl, freshPoints(resolved));
  const WalkOracle& o = oracles.atLeast(level, err);
  err << "[guess] " << run.tmpl.support.size() << " unknowns, grid n<=" << resolved.n
      << ", i,j<=" << resolved.j << "\n";
  run.result = guessOperators(run.tmpl, o, resolved, {});
  err << "[guess] kernel dimension " << run.result.kernelDimension << ", "
      << run.result.candidates.size() << " candidate(s)\n";
  return run;
}

Json guessJson(const GuessRun& run) {
  Json cands = Json::array();
  for (const auto& c : run.result.candidates) cands.push_back(operatorToJson(c));
  const auto& s = run.result.stats;
  return {{"shape", toString(run.tmpl.shape)},
          {"unknowns", run.tmpl.support.size()},
          {"points", {{"n", run.result.points.n}, {"j", run.result.points.j},
                      {"margin", run.result.points.margin}}},
          {"rows", s.rows},
          {"rowsUsedExactly", s.rowsUsedExactly},
          {"rank", s.rank},
          {"kernelDimension", run.result.kernelDimension},
          {"degenerateDropped", run.result.degenerateDropped},
          {"candidates", std::move(cands)}};
}

struct CertifyRun {
  std::vector<OreOperator> certified;
  Json certificates = Json::array();
  bool anyRefuted = false;
  bool anyInconclusive = false;
};

CertifyRun runCertify(const std::vector<OreOperator>& ops, const PipelineConfig& cfg,
                      OracleProvider& oracles, std::ostream& err) {
  CertifyRun run;
  const OreOperator t = trivialOperator(oracles.steps());
  long level = 0;
  for (const auto& op : ops) level = std::max(level, certificationLevel(op));
  const WalkOracle& o = oracles.atLeast(level, err);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const Certificate cert = certifyOperator(ops[k], t, o, cfg.certifyMargin);
    err << "[certify] operator " << k << ": " << toString(cert.verdict) << "\n";
    Json c = certificateToJson(cert);
    c["operator"] = operatorToJson(ops[k]);
    run.certificates.push_back(std::move(c));
    switch (cert.verdict) {
      case Verdict::certified: run.certified.push_back(ops[k]); break;
      case Verdict::refuted: run.anyRefuted = true; break;
      case Verdict::inconclusiveError: run.anyInconclusive = true; break;
    }
  }
  return run;
}

Json takayamaJson(const TakayamaResult& r) {
  Json attempts = Json::array();
  for (const auto& a : r.attempts) {
    attempts.push_back({{"truncation", a.truncation}, {"vectors", a.vectors},
                        {"positions", a.positions}, {"found", a.found}});
  }
  Json j = {{"attempts", std::move(attempts)}};
  if (r.op) {
    j["operator"] = uniOperatorToJson(*r.op, true);
    j["order"] = r.op->order();
    j["verifiedUpTo"] = r.verifiedUpTo;
    j["maxExceptionalIndex"] = r.maxExceptionalIndex;
  }
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

Json verdictJson(const ProofVerdict& v) {
  Json j = {{"verdict", v.proved ? "PROVED" : "FAILED"}, {"checkedUpTo", v.checkedUpTo},
            {"message", v.message}};
  if (!v.proved) j["failedCondition"] = v.failedCondition;
  if (v.failingIndex) j["failingIndex"] = *v.failingIndex;
  return j;
}

std::vector<Integer> diagonalFor(const OracleProvider& oracles, const PipelineConfig& cfg,
                                 std::ostream& err) {
  if (cfg.verifyLength < 0) throw Error("verify length must be nonnegative");
  const long len = cfg.verifyLength + kDiagonalSlack;
  err << "[diagonal] f(n;0,0) for n<=" << len << "\n";
  return diagonalSequence(oracles.steps(), len);
}

// Returns the failing index, if any, of P on the diagonal.
std::optional<long> checkImported(const UniOperator& p, const std::vector<Integer>& diag,
                                  long* checkedUpTo) {
  const long hi = static_cast<long>(diag.size()) - 1 - p.order();
  const RecurrenceCheck rc = checkRecurrenceOnSequence(p, diag, 0, hi);
  *checkedUpTo = hi;
  if (!rc.ok) return rc.failingIndex;
  return std::nullopt;
}

UniOperator loadRecurrence(const std::filesystem::path& file) {
  Json j = readJsonFile(file);
  // Accept our own eliminate / prove outputs as well as a bare operator.
  if (j.contains("elimination")) j = j.at("elimination");
  if (j.contains("operator") && !j.contains("terms")) j = j.at("operator");
  const UniOperator p = uniOperatorFromJson(j);
  if (p.isZero()) throw ParseError("recurrence in " + file.string() + " is the zero operator");
  return p;
}

}  // namespace

Json configToJson(const PipelineConfig& cfg) {
  Json j = {{"steps", cfg.steps},
            {"nMax", cfg.nMax},
            {"bounds", cfg.bounds},
            {"shape", cfg.shape},
            {"pointN", cfg.pointN},
            {"pointJ", cfg.pointJ},
            {"pointMargin", cfg.pointMargin},
            {"certifyMargin", cfg.certifyMargin},
            {"truncation", nullptr},
            {"multiplierBound", cfg.multiplierBound},
            {"retryCap", cfg.retryCap},
            {"verifyLength", cfg.verifyLength},
            {"closedForm", nullptr},
            {"importRecurrence", nullptr},
            {"cacheDir", nullptr},
            {"out", nullptr}};
  if (cfg.truncation) j["truncation"] = *cfg.truncation;
  if (cfg.closedForm) j["closedForm"] = *cfg.closedForm;
  if (cfg.importRecurrence) j["importRecurrence"] = *cfg.importRecurrence;
  if (cfg.cacheDir) j["cacheDir"] = *cfg.cacheDir;
  if (cfg.out) j["out"] = *cfg.out;
  return j;
}

PipelineConfig configFromJson(const Json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  PipelineConfig cfg;
  auto getString = [&](const std::string& key, std::string& dst) {
    if (!j.at(key).is_string()) throw ParseError("config '" + key + "' must be a string");
    dst = j.at(key).get<std::string>();
  };
  auto getOptString = [&](const std::string& key, std::optional<std::string>& dst) {
    if (j.at(key).is_null()) {
      dst.reset();
      return;
    }
    std::string s;
    getString(key, s);
    dst = s;
  };
  auto getLong = [&](const std::string& key, auto& dst) {
    if (!j.at(key).is_number_integer()) throw ParseError("config '" + key + "' must be an integer");
    dst = j.at(key).get<std::remove_reference_t<decltype(dst)>>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "steps") getString(key, cfg.steps);
    else if (key == "nMax") getLong(key, cfg.nMax);
    else if (key == "bounds") getString(key, cfg.bounds);
    else if (key == "shape") getString(key, cfg.shape);
    else if (key == "pointN") getLong(key, cfg.pointN);
    else if (key == "pointJ") getLong(key, cfg.pointJ);
    else if (key == "pointMargin") getLong(key, cfg.pointMargin);
    else if (key == "certifyMargin") getLong(key, cfg.certifyMargin);
    else if (key == "truncation") {
      if (value.is_null()) {
        cfg.truncation.reset();
      } else {
        int d = 0;
        getLong(key, d);
        cfg.truncation = d;
      }
    } else if (key == "multiplierBound") getLong(key, cfg.multiplierBound);
    else if (key == "retryCap") getLong(key, cfg.retryCap);
    else if (key == "verifyLength") getLong(key, cfg.verifyLength);
    else if (key == "closedForm") getOptString(key, cfg.closedForm);
    else if (key == "importRecurrence") getOptString(key, cfg.importRecurrence);
    else if (key == "cacheDir") getOptString(key, cfg.cacheDir);
    else if (key == "out") getOptString(key, cfg.out);
    else throw ParseError("unknown config key '" + key + "'");
  }
  return cfg;
}

std::vector<OreOperator> loadOperators(const Json& j) {
  std::vector<OreOperator> ops;
  if (j.contains("terms")) {
    ops.push_back(operatorFromJson(j));
  } else if (j.contains("operator")) {
    ops.push_back(operatorFromJson(j.at("operator")));
  } else if (j.contains("candidates") || (j.contains("guess") && j.at("guess").contains("candidates"))) {
    const Json& c = j.contains("candidates") ? j.at("candidates") : j.at("guess").at("candidates");
    if (!c.is_array()) throw ParseError("'candidates' must be an array");
    for (const auto& op : c) ops.push_back(operatorFromJson(op));
  } else if (j.contains("certificates")) {
    if (!j.at("certificates").is_array()) throw ParseError("'certificates' must be an array");
    for (const auto& c : j.at("certificates")) {
      if (c.value("verdict", "") == "certified") ops.push_back(operatorFromJson(c.at("operator")));
    }
  } else {
    throw ParseError("no operator found in input");
  }
  return ops;
}

int cmdCount(const PipelineConfig& cfg, long n, long i, long j, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    if (n < 0) throw Error("n must be nonnegative");
    OracleProvider oracles(cfg);
    const WalkOracle& o = oracles.atLeast(n, err);
    out << oracleValue(o, n, i, j).get_str(10) << "\n";
    return kExitOk;
  });
}

int cmdTable(const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.nMax < 0) throw Error("n-max must be nonnegative");
    const StepSet steps = parseStepSet(cfg.steps);
    std::optional<std::filesystem::path> cache;
    if (cfg.cacheDir) cache = std::filesystem::path(*cfg.cacheDir);
    const CountTable table = loadOrBuildTable(steps, cfg.nMax, cache);
    const std::string text = tableToJson(table);
    if (cfg.out) {
      writeFileAtomically(*cfg.out, text);
    } else {
      out << text;
    }
    return kExitOk;
  });
}

int cmdGuess(const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    OracleProvider oracles(cfg);
    const GuessRun run = runGuess(cfg, oracles, err);
    Json j = envelope(cfg, "guess");
    const Json g = guessJson(run);
    for (auto& [k, v] : g.items()) j[k] = v;
    emit(cfg, j, out);
    if (run.result.candidates.empty()) {
      err << "no candidates\n";
      return kExitNegative;
    }
    return kExitOk;
  });
}

int cmdCertify(const PipelineConfig& cfg, const std::filesystem::path& operatorFile,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ops = loadOperators(readJsonFile(operatorFile));
    if (ops.empty()) throw Error("no operators to certify in " + operatorFile.string());
    OracleProvider oracles(cfg);
    const CertifyRun run = runCertify(ops, cfg, oracles, err);
    Json j = envelope(cfg, "certify");
    j["certificates"] = run.certificates;
    emit(cfg, j, out);
    if (run.anyInconclusive) return kExitError;
    return run.anyRefuted ? kExitNegative : kExitOk;
  });
}

int cmdEliminate(const PipelineConfig& cfg, const std::vector<std::filesystem::path>& operatorFiles,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<OreOperator> ops;
    for (const auto& f : operatorFiles) {
      for (auto& op : loadOperators(readJsonFile(f))) ops.push_back(std::move(op));
    }
    if (ops.empty()) throw Error("no generators given");
    OracleProvider oracles(cfg);
    // Generators are certified again here; elimination is only sound for
    // true annihilators.
    const CertifyRun cert = runCertify(ops, cfg, oracles, err);
    if (cert.certified.size() != ops.size()) {
      err << "rejected: " << ops.size() - cert.certified.size() << " generator(s) not certified\n";
      return kExitNegative;
    }
    const auto diag = diagonalFor(oracles, cfg, err);
    const TakayamaResult r = takayamaPipeline(cert.certified, eliminationConfig(cfg), diag);
    Json j = envelope(cfg, "eliminate");
    j["elimination"] = takayamaJson(r);
    emit(cfg, j, out);
    if (!r.op) {
      err << r.failure << "\n";
      return kExitNegative;
    }
    return kExitOk;
  });
}

int cmdProve(const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.closedForm) throw Error("prove needs --closed-form");
    const HypergeomTerm term = toHypergeomTerm(parseClosedForm(*cfg.closedForm));
    OracleProvider oracles(cfg);
    Json j = envelope(cfg, "prove");
    const auto diag = diagonalFor(oracles, cfg, err);
    std::optional<UniOperator> p;
    int negative = kExitOk;

    if (cfg.importRecurrence) {
      const UniOperator imported = loadRecurrence(*cfg.importRecurrence);
      long checked = -1;
      const auto bad = checkImported(imported, diag, &checked);
      Json imp = {{"file", *cfg.importRecurrence}, {"order", imported.order()},
                  {"checkedUpTo", checked}};
      if (bad) {
        imp["status"] = "rejected";
        imp["failingIndex"] = *bad;
        err << "rejected: fails sequence check at n=" << *bad << "\n";
        negative = kExitNegative;
      } else {
        imp["status"] = "accepted";
        p = imported;
      }
      j["import"] = std::move(imp);
    } else {
      const GuessRun g = runGuess(cfg, oracles, err);
      j["guess"] = guessJson(g);
      const CertifyRun c = runCertify(g.result.candidates, cfg, oracles, err);
      j["certificates"] = c.certificates;
      if (c.certified.empty()) {
        err << "no certified candidates\n";
        negative = kExitNegative;
      } else {
        const TakayamaResult r = takayamaPipeline(c.certified, eliminationConfig(cfg), diag);
        j["elimination"] = takayamaJson(r);
        if (r.op) {
          p = r.op;
        } else {
          err << r.failure << "\n";
          negative = kExitNegative;
        }
      }
    }

    if (p) {
      const WalkOracle& o = oracles.atLeast(initialValueBound(*p), err);
      const ProofVerdict v = proveEquality(*p, term, o);
      err << "[prove] " << (v.proved ? "PROVED" : "FAILED") << ": " << v.message << "\n";
      j["proof"] = verdictJson(v);
      if (!v.proved) negative = kExitNegative;
    } else {
      j["proof"] = {{"verdict", "FAILED"}, {"failedCondition", "no-recurrence"}};
    }
    emit(cfg, j, out);
    return negative;
  });
}

int cmdCheckClosedForm(const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.closedForm) throw Error("check-closed-form needs --closed-form");
    const HypergeomTerm term = toHypergeomTerm(parseClosedForm(*cfg.closedForm));
    const long nMax = cfg.nMax > 0 ? cfg.nMax : 40;
    OracleProvider oracles(cfg);
    const WalkOracle& o = oracles.atLeast(nMax, err);
    const auto g = term.sequence(nMax + 1);
    Json j = envelope(cfg, "check-closed-form");
    j["checkedUpTo"] = nMax;
    for (long n = 0; n <= nMax; ++n) {
      if (g[n] != Rational(oracleValue(o, n, 0, 0))) {
        j["status"] = "mismatch";
        j["failingIndex"] = n;
        emit(cfg, j, out);
        err << "mismatch at n=" << n << "\n";
        return kExitNegative;
      }
    }
    j["status"] = "match";
    emit(cfg, j, out);
    return kExitOk;
  });
}

int cmdImportRecurrence(const PipelineConfig& cfg, const std::filesystem::path& file,
                        std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const UniOperator p = loadRecurrence(file);
    OracleProvider oracles(cfg);
    const auto diag = diagonalFor(oracles, cfg, err);
    long checked = -1;
    const auto bad = checkImported(p, diag, &checked);
    Json j = envelope(cfg, "import-recurrence");
    j["order"] = p.order();
    j["checkedUpTo"] = checked;
    if (bad) {
      j["status"] = "rejected";
      j["failingIndex"] = *bad;
      emit(cfg, j, out);
      err << "rejected: fails sequence check at n=" << *bad << "\n";
      return kExitNegative;
    }
    j["status"] = "accepted";
    j["operator"] = uniOperatorToJson(p, true);
    emit(cfg, j, out);
    return kExitOk;
  });
}

}  // namespace holowalk
