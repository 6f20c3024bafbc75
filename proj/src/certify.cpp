#include "holowalk/certify.hpp"

#include "holowalk/error.hpp"
#include "holowalk/walks.hpp"

namespace holowalk {

std::string toString(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusiveError: return "inconclusive-error";
  }
  return "inconclusive-error";
}

BaseCheck checkBaseCases(const OreOperator& w, const WalkOracle& o, long margin) {
  const auto d = degrees(w);
  const long rn = d ? d->ordSn : 0;
  BaseCheck bc;
  bc.op = w;
  bc.box = Box{0, 0, 0, rn + margin, 0, rn + margin};
  const ValueGrid grid = oreApply(w, o, bc.box);
  bc.counterexample = grid.firstNonzero();
  bc.allZero = !bc.counterexample.has_value();
  return bc;
}

long certificationLevel(const OreOperator& r) {
  // Each chain step lowers the coefficient degree by at least one and raises
  // the S_n order by at most one (T has S_n order 1).
  const auto d = degrees(r);
  return d ? d->ordSn + d->totalPolyDeg + 1 : 0;
}

Certificate certifyOperator(const OreOperator& r, const OreOperator& t, const WalkOracle& o,
                            long margin) {
  if (margin < 0) throw Error("base-case margin must be nonnegative");
  if (r.isZero()) throw Error("certification of the zero operator");
  if (!t.hasConstantCoefficients()) {
    throw UnsupportedError("certification needs a constant-coefficient transfer operator");
  }
  Certificate cert;
  OreOperator w = r;
  for (;;) {
    BaseCheck bc = checkBaseCases(w, o, margin);
    const bool ok = bc.allZero;
    cert.baseChecks.push_back(std::move(bc));
    if (!ok) {
      cert.verdict = Verdict::refuted;
      cert.counterexample = cert.baseChecks.back().counterexample;
      const auto& p = *cert.counterexample;
      cert.message = "nonzero value at (n,i,j)=(" + std::to_string(p[0]) + "," +
                     std::to_string(p[1]) + "," + std::to_string(p[2]) + ")";
      if (cert.baseChecks.size() > 1) cert.message += " for chain remainder " +
                                                      std::to_string(cert.baseChecks.size() - 1);
      return cert;
    }
    DivRem qr = oreDivRem(t * w, t);
    cert.chain.push_back(qr.remainder);
    if (qr.remainder.isZero()) {
      cert.verdict = Verdict::certified;
      return cert;
    }
    const int before = degrees(w)->totalPolyDeg;
    const int after = degrees(qr.remainder)->totalPolyDeg;
    if (after >= before) {
      cert.verdict = Verdict::inconclusiveError;
      cert.message = "remainder degree " + std::to_string(after) +
                     " did not drop below " + std::to_string(before) + "; operators " +
                     toString(w) + " and " + toString(qr.remainder);
      return cert;
    }
    w = std::move(qr.remainder);
  }
}

bool evidenceCheck(const OreOperator& r, const WalkOracle& o, const Box& box) {
  return oreApply(r, o, box).allZero();
}

}  // namespace holowalk
