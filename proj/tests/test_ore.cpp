#include <doctest.h>

#include <random>

#include "holowalk/error.hpp"
#include "holowalk/ore.hpp"
#include "holowalk/walks.hpp"
#include "support/random_ops.hpp"

using namespace holowalk;

namespace {
const MultiPoly n = MultiPoly::variable(Var::n);
const MultiPoly i = MultiPoly::variable(Var::i);
const MultiPoly j = MultiPoly::variable(Var::j);
const OreOperator Sn = OreOperator::shift({1, 0, 0});
const OreOperator Si = OreOperator::shift({0, 1, 0});
const OreOperator Sj = OreOperator::shift({0, 0, 1});
const OreOperator one = OreOperator::identity();

bool noMonomialDivisible(const OreOperator& v, const ShiftExp& lm) {
  for (const auto& [e, c] : v.terms()) {
    if (e[0] >= lm[0] && e[1] >= lm[1] && e[2] >= lm[2]) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("addition") {
  const OreOperator t = trivialOperator(StepSet::gessel());
  CHECK(oreAdd(t, -t).isZero());
  CHECK(oreAdd(Sn, OreOperator(n) * Sn) == OreOperator::shift({1, 0, 0}, n + 1));
  CHECK(oreAdd(OreOperator(), t) == t);
}

TEST_CASE("multiplication follows the commutation rule") {
  CHECK(oreMul(Sn, OreOperator(n)) == OreOperator::shift({1, 0, 0}, n + 1));
  const OreOperator lhs = oreMul(OreOperator(i), Si - one);
  const OreOperator rhs = oreMul(Si - one, OreOperator(i - 1)) - one;
  CHECK(lhs == rhs);
  CHECK(lhs == OreOperator::shift({0, 1, 0}, i) - OreOperator(i));
  const OreOperator t = trivialOperator(StepSet::gessel());
  CHECK(oreMul(one, t) == t);
  CHECK(oreMul(Sn, OreOperator(n)) - oreMul(OreOperator(n), Sn) == Sn);
  CHECK(oreMul(Sn, OreOperator(n)) != oreMul(OreOperator(n), Sn));
}

TEST_CASE("application to the oracle") {
  const WalkOracle o(buildTable(StepSet::gessel(), 12));
  CHECK(oreApply(trivialOperator(StepSet::gessel()), o, Box{0, 10, 0, 10, 0, 10}).allZero());
  const ValueGrid id = oreApply(one, o, Box{0, 5, 0, 3, 0, 3});
  for (long a = 0; a <= 5; ++a)
    for (long b = 0; b <= 3; ++b)
      for (long c = 0; c <= 3; ++c) CHECK(id.at(a, b, c) == Rational(o.value(a, b, c)));
  CHECK(applyAt(Sn, o, {1, 0, 0}) == 2);
  CHECK_THROWS_AS(oreApply(Sn, o, Box{0, 12, 0, 0, 0, 0}), RangeError);
}

TEST_CASE("division examples") {
  const OreOperator t = trivialOperator(StepSet::gessel());
  CHECK(leadingMonomial(t) == ShiftExp{1, 1, 1});
  DivRem a = oreDivRem(t, t);
  CHECK(a.quotient == one);
  CHECK(a.remainder.isZero());
  DivRem b = oreDivRem(OreOperator(n) * t, t);
  CHECK(b.quotient == OreOperator(n));
  CHECK(b.remainder.isZero());
  DivRem c = oreDivRem(Sj, t);
  CHECK(c.quotient.isZero());
  CHECK(c.remainder == Sj);
  CHECK_THROWS_AS(oreDivRem(t, OreOperator(n) * t), UnsupportedError);
}

TEST_CASE("substitution of zero") {
  CHECK(substituteZero(OreOperator(i) * Si + OreOperator(n) * Sn, {Var::i, Var::j}) ==
        OreOperator(n) * Sn);
  const OreOperator t = trivialOperator(StepSet::gessel());
  CHECK(substituteZero(t, {Var::i, Var::j}) == t);
  CHECK(substituteZero(OreOperator(i + 1) * Si, {Var::i}) == Si);
}

TEST_CASE("degrees") {
  const auto dt = degrees(trivialOperator(StepSet::gessel()));
  REQUIRE(dt);
  CHECK(dt->ordSn == 1);
  CHECK(dt->ordSi == 2);
  CHECK(dt->ordSj == 2);
  CHECK(dt->totalPolyDeg == 0);
  const auto d = degrees(OreOperator::shift({3, 0, 0}, n * n * i));
  REQUIRE(d);
  CHECK(d->degN == 2);
  CHECK(d->degI == 1);
  CHECK(d->ordSn == 3);
  CHECK(d->totalPolyDeg == 3);
  CHECK_FALSE(degrees(OreOperator()).has_value());
}

TEST_CASE("normalization") {
  const OreOperator r = OreOperator::shift({1, 0, 0}, MultiPoly(Rational(-2, 3)) * n) +
                        OreOperator(MultiPoly(Rational(4, 3)));
  const OreOperator nr = normalized(r);
  CHECK(nr == OreOperator::shift({1, 0, 0}, n) - OreOperator(MultiPoly(2)));
  CHECK(normalized(nr) == nr);
}

TEST_CASE("associativity on random operators") {
  std::mt19937 rng(21);
  for (int k = 0; k < 100; ++k) {
    const OreOperator a = gen::op(rng, 1), b = gen::op(rng, 1), c = gen::op(rng, 1);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("division round trip on random operators") {
  std::mt19937 rng(22);
  for (const StepSet& s : {StepSet::gessel(), StepSet::kreweras()}) {
    const OreOperator t = trivialOperator(s);
    const ShiftExp lm = leadingMonomial(t);
    for (int k = 0; k < 100; ++k) {
      const OreOperator x = gen::op(rng, 3, 4);
      const DivRem qr = oreDivRem(x, t);
      CHECK(oreMul(qr.quotient, t) + qr.remainder == x);
      CHECK(noMonomialDivisible(qr.remainder, lm));
    }
  }
}

TEST_CASE("application is linear") {
  std::mt19937 rng(23);
  const WalkOracle o(buildTable(StepSet::kreweras(), 10));
  const Box box{0, 5, 0, 4, 0, 4};
  for (int k = 0; k < 30; ++k) {
    const OreOperator r1 = gen::op(rng, 2), r2 = gen::op(rng, 2);
    const MultiPoly a = gen::poly(rng, 1), b = gen::poly(rng, 1);
    const ValueGrid g = oreApply(OreOperator(a) * r1 + OreOperator(b) * r2, o, box);
    const ValueGrid g1 = oreApply(r1, o, box), g2 = oreApply(r2, o, box);
    for (long x = 0; x <= 5; ++x)
      for (long y = 0; y <= 4; ++y)
        for (long z = 0; z <= 4; ++z) {
          CHECK(g.at(x, y, z) == polyEval(a, {x, y, z}) * g1.at(x, y, z) +
                                     polyEval(b, {x, y, z}) * g2.at(x, y, z));
        }
  }
}

TEST_CASE("left multiples of annihilators annihilate") {
  std::mt19937 rng(24);
  const StepSet s = StepSet::gessel();
  const WalkOracle o(buildTable(s, 14));
  const OreOperator t = trivialOperator(s);
  for (int k = 0; k < 20; ++k) {
    const OreOperator x = gen::op(rng, 2);
    CHECK(oreApply(x * t, o, Box{0, 8, 0, 6, 0, 6}).allZero());
  }
}
