#pragma once

// Rigorous verification that an operator annihilates the walk counts.
//
// If T is the one-step transfer operator and (T W) f = 0, then W f obeys
// the walk recurrence, so W f = 0 once it vanishes at n = 0 for
// 0 <= i, j <= ord_Sn(W). (T W) f = 0 is reduced to V f = 0 with
// T W = U T + V; the remainder V has strictly smaller coefficient degree,
// so the chain W, V, V', ... ends at 0.

#include <optional>
#include <string>
#include <vector>

#include "holowalk/ore.hpp"

namespace holowalk {

class WalkOracle;

struct BaseCheck {
  OreOperator op;
  Box box;
  bool allZero = true;
  std::optional<Point3> counterexample;
};

enum class Verdict { certified, refuted, inconclusiveError };

std::string toString(Verdict v);

struct Certificate {
  /// Remainders V_0, V_1, ..., ending with the zero operator when certified.
  std::vector<OreOperator> chain;
  std::vector<BaseCheck> baseChecks;
  Verdict verdict = Verdict::inconclusiveError;
  std::optional<Point3> counterexample;
  std::string message;
};

inline constexpr long kDefaultBaseMargin = 2;

/// Evaluates (W f)(0; i, j) for 0 <= i, j <= ord_Sn(W) + margin.
BaseCheck checkBaseCases(const OreOperator& w, const WalkOracle& o, long margin);

/// Oracle level that certifyOperator needs for operator R.
long certificationLevel(const OreOperator& r);

Certificate certifyOperator(const OreOperator& r, const OreOperator& t, const WalkOracle& o,
                            long margin = kDefaultBaseMargin);

/// True iff R f vanishes on the whole box (numerical evidence, not a proof).
bool evidenceCheck(const OreOperator& r, const WalkOracle& o, const Box& box);

}  // namespace holowalk
