#pragma once

// Quarter-plane walk enumeration: step sets, exact count tables f(n; i, j)
// and the oracle view used by the operator machinery.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holowalk/exactmath.hpp"

namespace holowalk {

class OreOperator;

struct Step {
  int dx;
  int dy;
  friend bool operator==(const Step&, const Step&) = default;
};

/// Nonempty set of unit steps out of the eight compass directions.
class StepSet {
 public:
  /// Throws ParseError on an empty list, a repeated step or a non-unit step.
  explicit StepSet(std::vector<Step> steps);

  static StepSet gessel();
  static StepSet kreweras();

  const std::vector<Step>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }

  /// Comma-separated direction names in the fixed order E,W,N,S,NE,NW,SE,SW.
  std::string canonicalString() const;

  friend bool operator==(const StepSet&, const StepSet&) = default;

 private:
  std::vector<Step> steps_;
};

/// Parses e.g. "E,W,NE,SW". Names are case-sensitive; whitespace around
/// tokens is ignored.
StepSet parseStepSet(const std::string& text);

/// Exact counts f(n; i, j) for 0 <= n <= maxLevel, 0 <= i, j <= n.
class CountTable {
 public:
  CountTable(StepSet steps, std::vector<std::vector<Integer>> levels);

  const StepSet& steps() const { return steps_; }
  long maxLevel() const { return static_cast<long>(levels_.size()) - 1; }

  /// Zero outside 0 <= i, j <= n; throws RangeError when n > maxLevel().
  const Integer& at(long n, long i, long j) const;

  /// Level n as a row-major (n+1) x (n+1) grid, index i * (n+1) + j.
  const std::vector<Integer>& level(long n) const { return levels_.at(n); }

 private:
  StepSet steps_;
  std::vector<std::vector<Integer>> levels_;
};

/// Level-by-level transfer: f(n+1; i, j) = sum over steps of f(n; i-dx, j-dy).
CountTable buildTable(const StepSet& steps, long nMax);

/// Read-only sequence oracle with zero extension to all of Z^3.
class WalkOracle {
 public:
  explicit WalkOracle(std::shared_ptr<const CountTable> table);
  explicit WalkOracle(CountTable table);

  /// Oracle answering 0 everywhere up to the given level.
  static WalkOracle zero(long maxLevel);

  long maxLevel() const { return maxLevel_; }
  const CountTable* table() const { return table_.get(); }

  /// 0 for n, i or j negative; RangeError if n exceeds maxLevel().
  Integer value(long n, long i, long j) const;

 private:
  WalkOracle(std::shared_ptr<const CountTable> table, long maxLevel);
  std::shared_ptr<const CountTable> table_;
  long maxLevel_;
};

Integer oracleValue(const WalkOracle& o, long n, long i, long j);

/// The one-step transfer operator
///   T = S_n S_i^a S_j^b - sum_{(dx,dy)} S_i^{a-dx} S_j^{b-dy},
/// a = max(0, max dx), b = max(0, max dy).
OreOperator trivialOperator(const StepSet& steps);

/// f(n; 0, 0) for n = 0..nMax, computed level by level while keeping only
/// the cells from which the origin is still reachable.
std::vector<Integer> diagonalSequence(const StepSet& steps, long nMax);

// Cache file: {"steps": "...", "nMax": N, "levels": [[["<dec>", ...], ...], ...]}.
std::string tableToJson(const CountTable& table);
CountTable tableFromJson(const std::string& text);

/// Loads the table for (steps, nMax) from `cacheDir` or builds and stores it.
/// Writes go to a temporary file that is renamed into place.
CountTable loadOrBuildTable(const StepSet& steps, long nMax,
                            const std::optional<std::filesystem::path>& cacheDir);

}  // namespace holowalk
