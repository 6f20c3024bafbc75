#include "holowalk/guess.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "holowalk/error.hpp"
#include "holowalk/walks.hpp"

namespace holowalk {

namespace {

constexpr std::array<const char*, 6> kCapNames{"n", "i", "j", "Sn", "Si", "Sj"};

Integer ipow(long base, int e) {
  Integer r;
  Integer b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

std::string toString(AnsatzShape shape) {
  switch (shape) {
    case AnsatzShape::fullBox: return "full";
    case AnsatzShape::quasiHolonomic: return "quasiholonomic";
    case AnsatzShape::custom: return "custom";
  }
  return "custom";
}

AnsatzShape parseShape(const std::string& text) {
  if (text == "full") return AnsatzShape::fullBox;
  if (text == "quasiholonomic") return AnsatzShape::quasiHolonomic;
  if (text == "custom") return AnsatzShape::custom;
  throw ParseError("unknown ansatz shape '" + text + "'");
}

AnsatzBounds parseBounds(const std::string& text) {
  AnsatzBounds b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("bound '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bound '" + item + "' has a non-integer value");
    }
    if (value < 0) throw ParseError("bound '" + item + "' is negative");
    auto it = std::find(kCapNames.begin(), kCapNames.end(), key);
    if (it != kCapNames.end()) {
      b.caps[it - kCapNames.begin()] = value;
    } else if (key == "deg") {
      b.totalDegree = value;
    } else if (key == "ord") {
      b.totalOrder = value;
    } else {
      throw ParseError("unknown bound key '" + key + "'");
    }
  }
  return b;
}

std::string toString(const AnsatzBounds& b) {
  std::string out;
  for (std::size_t k = 0; k < 6; ++k) {
    if (!out.empty()) out += ",";
    out += std::string(kCapNames[k]) + "=" + std::to_string(b.caps[k]);
  }
  if (b.totalDegree) out += ",deg=" + std::to_string(*b.totalDegree);
  if (b.totalOrder) out += ",ord=" + std::to_string(*b.totalOrder);
  return out;
}

AnsatzTemplate buildTemplate(const AnsatzBounds& bounds, AnsatzShape shape) {
  for (int c : bounds.caps) {
    if (c < 0) throw Error("ansatz caps must be nonnegative");
  }
  AnsatzTemplate t;
  t.shape = shape;
  const auto& c = bounds.caps;
  AnsatzTuple e{};
  for (e[0] = 0; e[0] <= c[0]; ++e[0])
    for (e[1] = 0; e[1] <= c[1]; ++e[1])
      for (e[2] = 0; e[2] <= c[2]; ++e[2])
        for (e[3] = 0; e[3] <= c[3]; ++e[3])
          for (e[4] = 0; e[4] <= c[4]; ++e[4])
            for (e[5] = 0; e[5] <= c[5]; ++e[5]) {
              if (bounds.totalDegree && e[0] + e[1] + e[2] > *bounds.totalDegree) continue;
              if (bounds.totalOrder && e[3] + e[4] + e[5] > *bounds.totalOrder) continue;
              if (shape == AnsatzShape::quasiHolonomic && e[1] == 0 && e[2] == 0 &&
                  (e[4] != 0 || e[5] != 0)) {
                continue;
              }
              t.support.push_back(e);
            }
  if (t.support.empty()) throw Error("ansatz template has empty support");
  return t;
}

AnsatzTemplate customTemplate(const std::vector<AnsatzTuple>& tuples) {
  AnsatzTemplate t;
  t.shape = AnsatzShape::custom;
  std::set<AnsatzTuple> seen;
  for (const auto& e : tuples) {
    for (int x : e) {
      if (x < 0) throw Error("ansatz exponents must be nonnegative");
    }
    if (seen.insert(e).second) t.support.push_back(e);
  }
  if (t.support.empty()) throw Error("ansatz template has empty support");
  return t;
}

std::vector<AnsatzTuple> supportOf(const OreOperator& op) {
  std::vector<AnsatzTuple> out;
  for (const auto& [s, c] : op.terms()) {
    for (const auto& [m, q] : c.terms()) out.push_back({m[0], m[1], m[2], s[0], s[1], s[2]});
  }
  return out;
}

long requiredLevel(const AnsatzTemplate& t, const std::vector<Point3>& points) {
  int maxShift = 0;
  for (const auto& e : t.support) maxShift = std::max(maxShift, e[3]);
  long maxN = 0;
  for (const auto& p : points) maxN = std::max(maxN, p[0]);
  return maxN + maxShift;
}

LinearSystem assembleSystem(const AnsatzTemplate& t, const WalkOracle& o,
                            const std::vector<Point3>& points) {
  for (const auto& p : points) {
    if (p[0] < 0 || p[1] < 0 || p[2] < 0) throw Error("assembly point outside the quadrant");
  }
  const long need = requiredLevel(t, points);
  if (need > o.maxLevel()) {
    throw RangeError("assembly needs table level " + std::to_string(need) + ", oracle has " +
                         std::to_string(o.maxLevel()),
                     need);
  }
  LinearSystem sys;
  sys.points = points;
  sys.columns = t.support.size();
  sys.matrix.reserve(points.size());
  for (const auto& p : points) {
    std::vector<Rational> row(t.support.size());
    for (std::size_t c = 0; c < t.support.size(); ++c) {
      const auto& e = t.support[c];
      const Integer f = o.value(p[0] + e[3], p[1] + e[4], p[2] + e[5]);
      if (f == 0) continue;
      row[c] = ipow(p[0], e[0]) * ipow(p[1], e[1]) * ipow(p[2], e[2]) * f;
    }
    sys.matrix.push_back(std::move(row));
  }
  return sys;
}

std::vector<IntegerVector> nullspace(const LinearSystem& sys, const NullspaceOptions& opts,
                                     NullspaceStats* stats) {
  return nullspace(sys.matrix, sys.columns, opts, stats);
}

OreOperator operatorFromVector(const AnsatzTemplate& t, const IntegerVector& v) {
  if (v.size() != t.support.size()) throw Error("coefficient vector does not match template");
  OreOperator op;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] == 0) continue;
    const auto& e = t.support[c];
    op.addTerm({e[3], e[4], e[5]}, MultiPoly::monomial({e[0], e[1], e[2]}, Rational(v[c])));
  }
  return op;
}

std::vector<OreOperator> filterCandidates(const std::vector<IntegerVector>& basis,
                                          const AnsatzTemplate& t, const WalkOracle& o,
                                          const std::vector<Point3>& freshPoints) {
  std::vector<OreOperator> out;
  for (const auto& v : basis) {
    const OreOperator op = operatorFromVector(t, v);
    if (op.isZero()) continue;
    const bool survives = std::all_of(freshPoints.begin(), freshPoints.end(),
                                      [&](const Point3& p) { return applyAt(op, o, p) == 0; });
    if (survives) out.push_back(normalized(op));
  }
  return out;
}

PointPolicy resolvePointPolicy(const AnsatzTemplate& t, const PointPolicy& policy) {
  PointPolicy r = policy;
  const long target = 3 * static_cast<long>(t.support.size()) + policy.margin;
  if (r.n <= 0) {
    r.n = 4;
    for (;; r.n += 2) {
      const long jj = r.j > 0 ? r.j : r.n / 2;
      if (r.n * (jj + 1) * (jj + 1) >= target) break;
    }
  }
  if (r.j <= 0) r.j = r.n / 2;
  return r;
}

std::vector<Point3> gridPoints(const PointPolicy& p) {
  std::vector<Point3> pts;
  for (long n = 1; n <= p.n; ++n)
    for (long i = 0; i <= p.j; ++i)
      for (long j = 0; j <= p.j; ++j) pts.push_back({n, i, j});
  return pts;
}

std::vector<Point3> freshPoints(const PointPolicy& p) {
  std::vector<Point3> pts;
  for (long n = p.n + 1; n <= p.n + 3; ++n)
    for (long i = 0; i <= p.j + 2; ++i)
      for (long j = 0; j <= p.j + 2; ++j) pts.push_back({n, i, j});
  return pts;
}

GuessResult guessOperators(const AnsatzTemplate& t, const WalkOracle& o,
                           const PointPolicy& policy, const NullspaceOptions& opts) {
  GuessResult res;
  res.points = resolvePointPolicy(t, policy);
  const auto pts = gridPoints(res.points);
  const auto sys = assembleSystem(t, o, pts);
  const auto basis = nullspace(sys, opts, &res.stats);
  res.kernelDimension = basis.size();
  auto candidates = filterCandidates(basis, t, o, freshPoints(res.points));
  for (auto& c : candidates) {
    if (t.shape == AnsatzShape::quasiHolonomic && substituteZero(c, {Var::i, Var::j}).isZero()) {
      ++res.degenerateDropped;
      continue;
    }
    res.candidates.push_back(std::move(c));
  }
  return res;
}

}  // namespace holowalk
