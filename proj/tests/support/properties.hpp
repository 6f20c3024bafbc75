#pragma once

// Randomized algebraic identities shared by the unit tests and the
// acceptance run. Each returns the number of instances that failed.

#include <random>

#include "holowalk/eliminate.hpp"
#include "holowalk/ore.hpp"
#include "holowalk/walks.hpp"
#include "support/random_ops.hpp"

namespace props {

using namespace holowalk;

// X = U T + V, and no monomial of V is a multiple of lm(T).
inline int divisionRoundTrip(int count, unsigned seed) {
  std::mt19937 rng(seed);
  int failures = 0;
  const OreOperator ts[] = {trivialOperator(StepSet::gessel()), trivialOperator(StepSet::kreweras())};
  for (int k = 0; k < count; ++k) {
    const OreOperator& t = ts[k % 2];
    const ShiftExp lm = leadingMonomial(t);
    const OreOperator x = gen::op(rng, 3, 5, 2);
    const DivRem qr = oreDivRem(x, t);
    bool ok = oreMul(qr.quotient, t) + qr.remainder == x;
    for (const auto& [e, c] : qr.remainder.terms()) {
      if (e[0] >= lm[0] && e[1] >= lm[1] && e[2] >= lm[2]) ok = false;
    }
    if (!ok) ++failures;
  }
  return failures;
}

// S_x p = p(x+1) S_x, and x (S_x - 1) = (S_x - 1)(x - 1) - 1 times a random
// operator on the right, for x in {n, i, j}.
inline int commutation(int count, unsigned seed) {
  std::mt19937 rng(seed);
  int failures = 0;
  const Var vars[] = {Var::n, Var::i, Var::j};
  for (int k = 0; k < count; ++k) {
    const Var v = vars[k % 3];
    ShiftExp e{0, 0, 0};
    e[static_cast<int>(v)] = 1;
    const OreOperator s = OreOperator::shift(e);
    const OreOperator one = OreOperator::identity();
    const MultiPoly x = MultiPoly::variable(v);
    const MultiPoly p = gen::poly(rng, 3);
    const OreOperator tail = gen::op(rng, 2, 2, 1);
    const bool rule = s * OreOperator(p) == OreOperator::shift(e, polySubstituteShift(p, v, 1));
    const OreOperator lhs = OreOperator(x) * (s - one) * tail;
    const OreOperator rhs = ((s - one) * OreOperator(x - 1) - one) * tail;
    if (!rule || lhs != rhs) ++failures;
  }
  return failures;
}

inline ModuleVector leftMultiplyVector(const RatFunc& c, int shift, const ModuleVector& v) {
  ModuleVector out;
  for (const auto& [pos, op] : v.components) {
    UniOperator m = leftMultiply(c, shift, op);
    if (!m.isZero()) out.components.emplace(pos, std::move(m));
  }
  return out;
}

// reduceModIJ(c(n) S_n^e R) = c(n) S_n^e reduceModIJ(R), and additivity.
inline int reductionIsModuleMap(int count, unsigned seed) {
  std::mt19937 rng(seed);
  int failures = 0;
  for (int k = 0; k < count; ++k) {
    const OreOperator r1 = gen::op(rng, 2, 4, 2);
    const OreOperator r2 = gen::op(rng, 2, 4, 2);
    UniPoly c = gen::uni(rng, 2);
    if (c.isZero()) c = UniPoly(1);
    const int e = static_cast<int>(gen::integer(rng, 0, 2));
    MultiPoly cn;
    for (int d = 0; d <= c.degree(); ++d) cn.addTerm({d, 0, 0}, c.coeff(d));
    const OreOperator lifted = OreOperator::shift({e, 0, 0}, cn) * r1;
    bool ok = reduceModIJ(lifted) == leftMultiplyVector(RatFunc(c), e, reduceModIJ(r1));
    ModuleVector sum = reduceModIJ(r1);
    for (const auto& [pos, op] : reduceModIJ(r2).components) {
      sum.components[pos] += op;
      if (sum.components[pos].isZero()) sum.components.erase(pos);
    }
    ok = ok && reduceModIJ(r1 + r2) == sum;
    if (!ok) ++failures;
  }
  return failures;
}

// Left multiples by i or j vanish after reduction.
inline int leftMultipleDegeneracy(int count, unsigned seed) {
  std::mt19937 rng(seed);
  int failures = 0;
  const MultiPoly i = MultiPoly::variable(Var::i);
  const MultiPoly j = MultiPoly::variable(Var::j);
  for (int k = 0; k < count; ++k) {
    const OreOperator r = gen::op(rng, 2, 4, 2);
    const MultiPoly extra = gen::poly(rng, 1);
    if (!reduceModIJ(OreOperator(i) * r).isZero()) ++failures;
    if (!reduceModIJ(OreOperator(j) * r).isZero()) ++failures;
    if (!reduceModIJ(OreOperator(i * extra + j) * r).isZero()) ++failures;
  }
  return failures;
}

}  // namespace props
