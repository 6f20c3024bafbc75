#pragma once

// Closed forms for the return counts at the origin and the final proof step:
// a recurrence P for f(n; 0, 0) and a hypergeometric term g agree everywhere
// once g satisfies P identically and the initial segments coincide.

#include <optional>
#include <string>
#include <vector>

#include "holowalk/eliminate.hpp"
#include "holowalk/exactmath.hpp"

namespace holowalk {

class WalkOracle;

/// Rising factorial a (a+1) ... (a+k-1); 1 for k = 0.
Rational pochhammer(const Rational& a, long k);

/// 16^m (5/6)_m (1/2)_m / ((5/3)_m (2)_m). Throws InternalError if not integral.
Integer gesselRHS(long m);
/// 4^m binom(3m, m) / ((m+1)(2m+1)). Throws InternalError if not integral.
Integer krewerasRHS(long m);

enum class ClosedForm { gessel, kreweras };
std::string toString(ClosedForm c);
ClosedForm parseClosedForm(const std::string& text);

/// g(n) = b((n - residue) / period) for n = residue mod period, 0 otherwise,
/// with b(0) = initial and b(m+1) = ratio(m) b(m).
struct HypergeomTerm {
  RatFunc ratio;
  Rational initial = 1;
  int period = 1;
  int residue = 0;

  Rational at(long n) const;
  /// g(0), ..., g(count - 1).
  std::vector<Rational> sequence(long count) const;
};

HypergeomTerm toHypergeomTerm(ClosedForm which);

struct RecurrenceCheck {
  bool ok = true;
  /// True for the zero operator, which holds for every sequence.
  bool vacuous = false;
  /// Indices skipped because a coefficient denominator vanishes there.
  std::vector<long> skipped;
  std::optional<long> failingIndex;
};

/// Checks sum_k c_k(n) seq[n+k] = 0 for lo <= n <= hi. Throws Error if seq
/// is too short for the window.
RecurrenceCheck checkRecurrenceOnSequence(const UniOperator& p, const std::vector<Rational>& seq,
                                          long lo, long hi);
RecurrenceCheck checkRecurrenceOnSequence(const UniOperator& p, const std::vector<Integer>& seq,
                                          long lo, long hi);

/// Exact check that P g = 0 as an identity in n, one residue class at a time.
bool symbolicSatisfies(const UniOperator& p, const HypergeomTerm& t);

struct ProofVerdict {
  bool proved = false;
  /// "symbolic", "initial-values" or empty when proved.
  std::string failedCondition;
  std::optional<long> failingIndex;
  /// Initial values were compared for 0 <= n <= checkedUpTo.
  long checkedUpTo = -1;
  std::string message;
};

/// Largest index that must be compared so that P propagates equality:
/// order(P) + max(0, largest nonnegative root of the leading coefficient).
long initialValueBound(const UniOperator& p);

/// P must annihilate f(n; 0, 0). Throws RangeError if the oracle is too short.
ProofVerdict proveEquality(const UniOperator& p, const HypergeomTerm& t, const WalkOracle& o);

}  // namespace holowalk
