#pragma once

// Ansatz-based discovery of annihilating operators: evaluate an operator
// template with unknown coefficients against the walk counts at many
// points and take the exact kernel of the resulting linear system.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "holowalk/linalg.hpp"
#include "holowalk/ore.hpp"

namespace holowalk {

class WalkOracle;

/// (e1..e6) for n^e1 i^e2 j^e3 S_n^e4 S_i^e5 S_j^e6.
using AnsatzTuple = std::array<int, 6>;

enum class AnsatzShape { fullBox, quasiHolonomic, custom };

std::string toString(AnsatzShape shape);
AnsatzShape parseShape(const std::string& text);

/// Per-symbol caps in the order n, i, j, Sn, Si, Sj, plus optional caps on
/// the total coefficient degree e1+e2+e3 and total order e4+e5+e6.
struct AnsatzBounds {
  std::array<int, 6> caps{0, 0, 0, 0, 0, 0};
  std::optional<int> totalDegree;
  std::optional<int> totalOrder;
  friend bool operator==(const AnsatzBounds&, const AnsatzBounds&) = default;
};

/// Parses "n=1,i=2,j=2,Sn=1,Si=2,Sj=2,deg=2,ord=4"; omitted caps are 0.
AnsatzBounds parseBounds(const std::string& text);
std::string toString(const AnsatzBounds& b);

struct AnsatzTemplate {
  std::vector<AnsatzTuple> support;
  AnsatzShape shape = AnsatzShape::custom;
};

/// Enumerates the tuples inside the caps in lexicographic order. The
/// quasi-holonomic shape drops every tuple with e2 = e3 = 0 and
/// (e5, e6) != (0, 0). Throws Error when nothing is left.
AnsatzTemplate buildTemplate(const AnsatzBounds& bounds, AnsatzShape shape);

/// Template with the given tuples (deduplicated, order preserved).
AnsatzTemplate customTemplate(const std::vector<AnsatzTuple>& tuples);

/// Support of an operator as ansatz tuples (one per coefficient monomial).
std::vector<AnsatzTuple> supportOf(const OreOperator& op);

struct LinearSystem {
  RationalMatrix matrix;
  std::vector<Point3> points;
  std::size_t columns = 0;
};

/// Row r, column c: n^e1 i^e2 j^e3 f(n+e4; i+e5, j+e6) at point r.
LinearSystem assembleSystem(const AnsatzTemplate& t, const WalkOracle& o,
                            const std::vector<Point3>& points);

/// Kernel basis of the system (see linalg.hpp for normalization).
std::vector<IntegerVector> nullspace(const LinearSystem& sys, const NullspaceOptions& opts = {},
                                     NullspaceStats* stats = nullptr);

/// Materializes a coefficient vector over the template's support.
OreOperator operatorFromVector(const AnsatzTemplate& t, const IntegerVector& v);

/// Basis vectors with a nonzero residual on any fresh point are dropped;
/// survivors come back normalized.
std::vector<OreOperator> filterCandidates(const std::vector<IntegerVector>& basis,
                                          const AnsatzTemplate& t, const WalkOracle& o,
                                          const std::vector<Point3>& freshPoints);

/// Grid n in [1, N], i, j in [0, J].
struct PointPolicy {
  long n = 0;
  long j = 0;
  long margin = 20;
};

/// The N, J used for a template when the policy leaves them at 0: J = N/2
/// and N the smallest even value giving at least 3 * |support| + margin points.
PointPolicy resolvePointPolicy(const AnsatzTemplate& t, const PointPolicy& policy);

std::vector<Point3> gridPoints(const PointPolicy& resolved);

/// Points just outside the assembly grid: n in [N+1, N+3], i, j in [0, J+2].
std::vector<Point3> freshPoints(const PointPolicy& resolved);

/// Highest level of f a template touches on a set of points.
long requiredLevel(const AnsatzTemplate& t, const std::vector<Point3>& points);

struct GuessResult {
  std::vector<OreOperator> candidates;
  /// Candidates dropped because nothing survives i = j = 0 (quasi-holonomic shape only).
  std::size_t degenerateDropped = 0;
  std::size_t kernelDimension = 0;
  PointPolicy points;
  NullspaceStats stats;
};

/// Full guessing run: assemble, solve, filter. For the quasi-holonomic shape
/// a candidate whose i = j = 0 part vanishes (such as i*T) is dropped, since
/// it carries no recurrence in n.
GuessResult guessOperators(const AnsatzTemplate& t, const WalkOracle& o,
                           const PointPolicy& policy, const NullspaceOptions& opts = {});

}  // namespace holowalk
