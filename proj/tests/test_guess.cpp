#include <doctest.h>

#include <random>

#include "holowalk/error.hpp"
#include "holowalk/guess.hpp"
#include "holowalk/walks.hpp"

using namespace holowalk;

namespace {

AnsatzBounds tBounds() { return parseBounds("Sn=1,Si=2,Sj=2"); }

// Coefficient vector of T over a template, or empty if T's support is not inside it.
IntegerVector vectorOf(const AnsatzTemplate& t, const OreOperator& op) {
  IntegerVector v(t.support.size());
  for (const auto& e : supportOf(op)) {
    auto it = std::find(t.support.begin(), t.support.end(), e);
    if (it == t.support.end()) return {};
    const Rational c = op.coeff({e[3], e[4], e[5]}).terms().at({e[0], e[1], e[2]});
    v[it - t.support.begin()] = c.get_num();
  }
  return v;
}

bool proportional(const IntegerVector& a, const IntegerVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if (a[x] * b[y] != a[y] * b[x]) return false;
  return true;
}

}  // namespace

TEST_CASE("template sizes") {
  CHECK(buildTemplate(parseBounds("n=1,i=1,j=1,Sn=1,Si=1,Sj=1"), AnsatzShape::fullBox)
            .support.size() == 64);
  CHECK(buildTemplate(parseBounds("n=1,Sn=2"), AnsatzShape::quasiHolonomic).support.size() == 6);
  const AnsatzTemplate t = buildTemplate(tBounds(), AnsatzShape::fullBox);
  for (const auto& e : supportOf(trivialOperator(StepSet::gessel()))) {
    CHECK(std::find(t.support.begin(), t.support.end(), e) != t.support.end());
  }
  const AnsatzTemplate q = buildTemplate(parseBounds("i=1,j=1,Sn=2,Si=2,Sj=2,deg=1"),
                                         AnsatzShape::quasiHolonomic);
  for (const auto& e : q.support) CHECK((e[1] + e[2] > 0 || (e[4] == 0 && e[5] == 0)));
}

TEST_CASE("bounds parsing") {
  const AnsatzBounds b = parseBounds("n=1,i=2,j=3,Sn=4,Si=5,Sj=6,deg=7,ord=8");
  CHECK(b.caps == std::array<int, 6>{1, 2, 3, 4, 5, 6});
  CHECK(b.totalDegree == 7);
  CHECK(b.totalOrder == 8);
  CHECK(parseBounds(toString(b)) == b);
  CHECK_THROWS_AS(parseBounds("q=1"), ParseError);
  CHECK_THROWS_AS(parseBounds("n=x"), ParseError);
  CHECK_THROWS_AS(parseBounds("n"), ParseError);
  CHECK_THROWS_AS(parseShape("round"), ParseError);
  CHECK_THROWS_AS(customTemplate({}), Error);
}

TEST_CASE("assembly examples") {
  const WalkOracle o(buildTable(StepSet::gessel(), 12));
  const LinearSystem one = assembleSystem(customTemplate({{0, 0, 0, 0, 0, 0}}), o, {{0, 0, 0}});
  REQUIRE(one.matrix.size() == 1);
  CHECK(one.matrix[0][0] == 1);
  const LinearSystem ns = assembleSystem(customTemplate({{1, 0, 0, 1, 0, 0}}), o, {{2, 0, 0}});
  CHECK(ns.matrix[0][0] == 0);
  const AnsatzTemplate tt = customTemplate(supportOf(trivialOperator(StepSet::gessel())));
  const IntegerVector tv = vectorOf(tt, trivialOperator(StepSet::gessel()));
  const LinearSystem sys = assembleSystem(tt, o, gridPoints({6, 3, 0}));
  for (const auto& row : sys.matrix) {
    Rational dot = 0;
    for (std::size_t c = 0; c < row.size(); ++c) dot += row[c] * Rational(tv[c]);
    CHECK(dot == 0);
  }
  CHECK_THROWS_AS(assembleSystem(tt, o, {{12, 0, 0}}), RangeError);
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace(RationalMatrix{{1, 0}, {0, 1}}, 2).empty());
  const auto k = nullspace(RationalMatrix{{1, 1}}, 2);
  REQUIRE(k.size() == 1);
  CHECK(proportional(k[0], IntegerVector{1, -1}));
  const auto k2 = nullspace(RationalMatrix{{1, 2, 3}, {2, 4, 6}}, 3, {false});
  CHECK(k2.size() == 2);
  CHECK(nullspace(RationalMatrix{}, 3).size() == 3);
}

TEST_CASE("nullspace with and without the modular prepass agree") {
  std::mt19937 rng(31);
  for (int k = 0; k < 40; ++k) {
    const std::size_t rows = 2 + rng() % 6, cols = 2 + rng() % 6;
    RationalMatrix m(rows, std::vector<Rational>(cols));
    for (auto& r : m)
      for (auto& x : r) x = static_cast<long>(rng() % 5) - 2;
    if (rows > 2) m[rows - 1] = m[0];
    const auto a = nullspace(m, cols, {true});
    const auto b = nullspace(m, cols, {false});
    CHECK(a == b);
    for (const auto& v : a) {
      for (const auto& r : m) {
        Rational dot = 0;
        for (std::size_t c = 0; c < cols; ++c) dot += r[c] * Rational(v[c]);
        CHECK(dot == 0);
      }
    }
  }
}

TEST_CASE("guessing recovers the trivial operator") {
  const StepSet s = StepSet::gessel();
  const WalkOracle o(buildTable(s, 20));
  const AnsatzTemplate t = buildTemplate(tBounds(), AnsatzShape::fullBox);
  const auto pts = gridPoints({6, 2, 0});
  REQUIRE(pts.size() >= 30);
  const auto basis = nullspace(assembleSystem(t, o, pts));
  const IntegerVector tv = vectorOf(t, trivialOperator(s));
  bool found = false;
  for (const auto& v : basis) found = found || proportional(v, tv);
  CHECK(found);
  const auto cands = filterCandidates(basis, t, o, freshPoints({6, 2, 0}));
  CHECK(std::find(cands.begin(), cands.end(), normalized(trivialOperator(s))) != cands.end());
  CHECK(filterCandidates({}, t, o, freshPoints({6, 2, 0})).empty());
}

TEST_CASE("fresh points reject accidental solutions") {
  const StepSet s = StepSet::gessel();
  const WalkOracle o(buildTable(s, 20));
  // f(n;0,0) vanishes at odd n, so S_n alone kills every odd-n point at i=j=0.
  const AnsatzTemplate t = customTemplate({{0, 0, 0, 1, 0, 0}});
  const auto basis = nullspace(assembleSystem(t, o, {{2, 0, 0}, {4, 0, 0}}));
  REQUIRE(basis.size() == 1);
  CHECK(filterCandidates(basis, t, o, {{3, 0, 0}, {5, 0, 0}}).empty());
  CHECK(filterCandidates(basis, t, o, {{2, 0, 0}}).size() == 1);
}

TEST_CASE("oversampling never enlarges the kernel") {
  std::mt19937 rng(32);
  const WalkOracle o(buildTable(StepSet::kreweras(), 24));
  for (int k = 0; k < 5; ++k) {
    AnsatzBounds b;
    b.caps = {static_cast<int>(rng() % 2), static_cast<int>(rng() % 2), static_cast<int>(rng() % 2),
              1, static_cast<int>(1 + rng() % 2), static_cast<int>(1 + rng() % 2)};
    const AnsatzTemplate t = buildTemplate(b, AnsatzShape::fullBox);
    const PointPolicy p = resolvePointPolicy(t, {});
    const auto small = nullspace(assembleSystem(t, o, gridPoints(p)));
    PointPolicy big = p;
    big.n = 2 * p.n;
    const auto large = nullspace(assembleSystem(t, o, gridPoints(big)));
    CHECK(large.size() <= small.size());
  }
}

TEST_CASE("candidates vanish on a disjoint box") {
  const StepSet s = StepSet::kreweras();
  const WalkOracle o(buildTable(s, 40));
  const AnsatzTemplate t = buildTemplate(parseBounds("n=1,i=1,j=1,Sn=1,Si=2,Sj=2,deg=1"),
                                         AnsatzShape::fullBox);
  const GuessResult g = guessOperators(t, o, {});
  CHECK_FALSE(g.candidates.empty());
  const long lo = g.points.n + 4;
  for (const auto& c : g.candidates) CHECK(oreApply(c, o, Box{lo, lo + 6, 0, 8, 0, 8}).allZero());
}

TEST_CASE("point policy") {
  const AnsatzTemplate t = buildTemplate(tBounds(), AnsatzShape::fullBox);
  const PointPolicy p = resolvePointPolicy(t, {});
  CHECK(p.n % 2 == 0);
  CHECK(p.j == p.n / 2);
  CHECK(static_cast<long>(gridPoints(p).size()) >= 3 * static_cast<long>(t.support.size()) + 20);
  for (const auto& f : freshPoints(p)) CHECK(f[0] > p.n);
}

TEST_CASE("small quasi-holonomic ansatz finds nothing for the diagonal") {
  const StepSet s = StepSet::gessel();
  const WalkOracle o(buildTable(s, 30));
  AnsatzBounds b = parseBounds("n=2,i=2,j=2,Sn=2,Si=2,Sj=2,deg=2");
  const GuessResult g = guessOperators(buildTemplate(b, AnsatzShape::quasiHolonomic), o, {});
  CHECK(g.candidates.empty());
}
