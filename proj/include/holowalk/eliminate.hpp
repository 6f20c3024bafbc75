#pragma once

// Elimination of S_i and S_j from certified annihilators.
//
// Setting i = j = 0 in S_i^a S_j^b R turns an annihilator R into a linear
// relation, over Q(n)[S_n], among the sequences f(n; p, q). Each relation is
// a ModuleVector indexed by (p, q). Echelonizing these vectors so that every
// position other than (0, 0) is cleared leaves an operator P(n, S_n) with
// P f(n; 0, 0) = 0. The cofactors that would witness the full quasi-holonomic
// annihilator are never formed.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holowalk/exactmath.hpp"
#include "holowalk/ore.hpp"

namespace holowalk {

/// Operator sum_k c_k(n) S_n^k with rational-function coefficients.
class UniOperator {
 public:
  using TermMap = std::map<int, RatFunc>;

  UniOperator() = default;

  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  /// Highest S_n power (-1 for zero).
  int order() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  RatFunc coeff(int power) const;
  bool isPolynomial() const;

  void addTerm(int power, const RatFunc& c);

  /// Denominators cleared, integer coefficients with no common content,
  /// positive leading coefficient.
  UniOperator cleared() const;

  /// sum_k c_k(n) seq[n + k]; throws Error at a pole.
  Rational applyAt(const std::vector<Rational>& seq, long n) const;

  UniOperator& operator+=(const UniOperator& o);
  friend UniOperator operator+(UniOperator a, const UniOperator& b) { return a += b; }
  /// Left product c(n) S_n^shift * op.
  friend UniOperator leftMultiply(const RatFunc& c, int shift, const UniOperator& op);
  friend bool operator==(const UniOperator& a, const UniOperator& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

std::string toString(const UniOperator& op);

/// Index (e_i, e_j) of the sequence f(n; e_i, e_j).
using Position = std::pair<int, int>;

struct ModuleVector {
  std::map<Position, UniOperator> components;

  bool isZero() const { return components.empty(); }
  /// Largest e_i + e_j among nonzero components (-1 if zero).
  int length() const;
  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;
};

struct EliminationConfig {
  /// Largest e_i + e_j kept; vectors reaching beyond are left out.
  /// Unset means the default derived from the generators.
  std::optional<int> truncation;
  int multiplierBound = 2;
  int retryCap = 2;
};

/// Coefficients evaluated at i = j = 0; terms regrouped by (e_i, e_j).
ModuleVector reduceModIJ(const OreOperator& r);

/// max over generators of (ord_Si + b) + (ord_Sj + b), b the multiplier bound.
int defaultTruncation(const std::vector<OreOperator>& ops, const EliminationConfig& cfg);

struct ModuleGeneration {
  std::vector<ModuleVector> vectors;
  int truncation = 0;
  std::size_t droppedBeyondTruncation = 0;
};

/// Reductions of S_i^a S_j^b R for every generator R, with
/// a <= min(multiplierBound, deg_i R) and b <= min(multiplierBound, deg_j R).
/// Throws Error when every product reduces to zero.
ModuleGeneration generateModule(const std::vector<OreOperator>& ops, const EliminationConfig& cfg);

struct EliminationResult {
  /// Cleared-denominator P supported on position (0, 0) only.
  std::optional<UniOperator> op;
  std::size_t vectorCount = 0;
  std::size_t positionCount = 0;
  /// Largest n >= 0 at which a divided-out row content vanished (-1 if none).
  /// P f(n; 0, 0) = 0 follows from the relations for every other n >= 0.
  long maxExceptionalIndex = -1;
};

/// Position-over-term echelonization over Q[n][S_n]; positions with larger
/// (e_i + e_j, e_i) are cleared first. A missing `op` means the truncated
/// module contains no element supported on (0, 0).
EliminationResult eliminateShifts(const std::vector<ModuleVector>& vectors);

struct EliminationAttempt {
  int truncation = 0;
  std::size_t vectors = 0;
  std::size_t positions = 0;
  bool found = false;
};

struct TakayamaResult {
  std::optional<UniOperator> op;
  std::vector<EliminationAttempt> attempts;
  long verifiedUpTo = -1;
  long maxExceptionalIndex = -1;
  std::string failure;
};

/// True iff P kills seq at every n for which P's window fits; the first
/// failing index is stored in `failingIndex`.
bool verifyOnSequence(const UniOperator& p, const std::vector<Integer>& seq,
                      long* failingIndex = nullptr);

/// generateModule + eliminateShifts, retrying with truncation + 1 up to
/// retryCap times. A found P is returned only after it annihilates the whole
/// `diagonal` sequence f(0; 0, 0), f(1; 0, 0), ... and that check covers
/// every exceptional index.
TakayamaResult takayamaPipeline(const std::vector<OreOperator>& ops, const EliminationConfig& cfg,
                                const std::vector<Integer>& diagonal);

}  // namespace holowalk
