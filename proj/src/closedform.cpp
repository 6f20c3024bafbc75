#include "holowalk/closedform.hpp"

#include <algorithm>

#include "holowalk/error.hpp"
#include "holowalk/walks.hpp"

namespace holowalk {

namespace {

Integer requireInteger(const Rational& q, const char* what, long m) {
  if (q.get_den() != 1) {
    throw InternalError(std::string(what) + "(" + std::to_string(m) + ") = " + toString(q) +
                        " is not an integer");
  }
  return q.get_num();
}

UniPoly linear(long a, long b) { return UniPoly(std::vector<Rational>{Rational(b), Rational(a)}); }

}  // namespace

Rational pochhammer(const Rational& a, long k) {
  if (k < 0) throw Error("pochhammer needs k >= 0");
  Rational r = 1;
  for (long t = 0; t < k; ++t) r *= a + t;
  return r;
}

Integer gesselRHS(long m) {
  if (m < 0) throw Error("gesselRHS needs m >= 0");
  Integer p16;
  mpz_ui_pow_ui(p16.get_mpz_t(), 16, static_cast<unsigned long>(m));
  const Rational v = Rational(p16) * pochhammer(Rational(5, 6), m) * pochhammer(Rational(1, 2), m) /
                     (pochhammer(Rational(5, 3), m) * pochhammer(Rational(2), m));
  return requireInteger(v, "gesselRHS", m);
}

Integer krewerasRHS(long m) {
  if (m < 0) throw Error("krewerasRHS needs m >= 0");
  Integer p4;
  Integer binom;
  mpz_ui_pow_ui(p4.get_mpz_t(), 4, static_cast<unsigned long>(m));
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(3 * m), static_cast<unsigned long>(m));
  const Rational v(p4 * binom, Integer((m + 1) * (2 * m + 1)));
  Rational c = v;
  c.canonicalize();
  return requireInteger(c, "krewerasRHS", m);
}

std::string toString(ClosedForm c) { return c == ClosedForm::gessel ? "gessel" : "kreweras"; }

ClosedForm parseClosedForm(const std::string& text) {
  if (text == "gessel") return ClosedForm::gessel;
  if (text == "kreweras") return ClosedForm::kreweras;
  throw ParseError("unknown closed form '" + text + "'");
}

Rational HypergeomTerm::at(long n) const {
  if (n < residue || (n - residue) % period != 0) return 0;
  Rational b = initial;
  const long m = (n - residue) / period;
  for (long t = 0; t < m; ++t) b *= ratio.eval(Rational(t));
  return b;
}

std::vector<Rational> HypergeomTerm::sequence(long count) const {
  std::vector<Rational> out(std::max(0L, count));
  Rational b = initial;
  long m = 0;
  for (long n = residue; n < count; n += period, ++m) {
    if (m > 0) b *= ratio.eval(Rational(m - 1));
    out[n] = b;
  }
  return out;
}

HypergeomTerm toHypergeomTerm(ClosedForm which) {
  HypergeomTerm t;
  if (which == ClosedForm::gessel) {
    t.ratio = ratNormalize(UniPoly(4) * linear(6, 5) * linear(2, 1), linear(3, 5) * linear(1, 2));
    t.period = 2;
  } else {
    t.ratio = ratNormalize(UniPoly(6) * linear(3, 1) * linear(3, 2), linear(1, 2) * linear(2, 3));
    t.period = 3;
  }
  return t;
}

RecurrenceCheck checkRecurrenceOnSequence(const UniOperator& p, const std::vector<Rational>& seq,
                                          long lo, long hi) {
  RecurrenceCheck res;
  if (p.isZero()) {
    res.vacuous = true;
    return res;
  }
  if (lo < 0) throw Error("recurrence window starts below 0");
  if (hi >= lo && hi + p.order() >= static_cast<long>(seq.size())) {
    throw Error("sequence of length " + std::to_string(seq.size()) +
                " does not cover the window up to n=" + std::to_string(hi + p.order()));
  }
  UniPoly denLcm(1);
  for (const auto& [k, c] : p.terms()) {
    denLcm = exactDivide(denLcm * c.den(), UniPoly::gcd(denLcm, c.den()));
  }
  const UniOperator cleared = p.cleared();
  for (long n = lo; n <= hi; ++n) {
    if (denLcm.eval(Rational(n)) == 0) {
      res.skipped.push_back(n);
      continue;
    }
    Rational s = 0;
    for (const auto& [k, c] : cleared.terms()) s += c.num().eval(Rational(n)) * seq[n + k];
    if (s != 0) {
      res.ok = false;
      res.failingIndex = n;
      return res;
    }
  }
  return res;
}

RecurrenceCheck checkRecurrenceOnSequence(const UniOperator& p, const std::vector<Integer>& seq,
                                          long lo, long hi) {
  return checkRecurrenceOnSequence(p, std::vector<Rational>(seq.begin(), seq.end()), lo, hi);
}

bool symbolicSatisfies(const UniOperator& p, const HypergeomTerm& t) {
  if (t.period < 1 || t.residue < 0 || t.residue >= t.period) {
    throw Error("hypergeometric term has an invalid support pattern");
  }
  for (int c = 0; c < t.period; ++c) {
    // n = period * m + c; g(n + k) = b(m + s) when c + k = residue + s * period.
    RatFunc sum;
    RatFunc prod(1);
    int reached = 0;
    for (const auto& [k, coeff] : p.terms()) {
      const int offset = c + k - t.residue;
      if (offset < 0 || offset % t.period != 0) continue;
      const int s = offset / t.period;
      for (; reached < s; ++reached) prod *= t.ratio.shifted(Rational(reached));
      sum += coeff.composeAffine(Rational(t.period), Rational(c)) * prod;
    }
    if (!sum.isZero()) return false;
  }
  return true;
}

long initialValueBound(const UniOperator& p) {
  const UniOperator c = p.cleared();
  if (c.isZero()) return -1;
  long root = 0;
  for (long r : nonnegativeIntegerRoots(c.terms().rbegin()->second.num())) root = std::max(root, r);
  return c.order() + root;
}

ProofVerdict proveEquality(const UniOperator& p, const HypergeomTerm& t, const WalkOracle& o) {
  ProofVerdict v;
  if (p.isZero()) {
    v.failedCondition = "symbolic";
    v.message = "the zero operator determines nothing";
    return v;
  }
  if (!symbolicSatisfies(p, t)) {
    v.failedCondition = "symbolic";
    v.message = "closed form does not satisfy the recurrence";
    return v;
  }
  const long bound = initialValueBound(p);
  if (bound > o.maxLevel()) {
    throw RangeError("initial values up to n=" + std::to_string(bound) + " need a larger table",
                     bound);
  }
  v.checkedUpTo = bound;
  const auto g = t.sequence(bound + 1);
  for (long n = 0; n <= bound; ++n) {
    if (g[n] != Rational(oracleValue(o, n, 0, 0))) {
      v.failedCondition = "initial-values";
      v.failingIndex = n;
      v.message = "closed form and count differ at n=" + std::to_string(n);
      return v;
    }
  }
  v.proved = true;
  v.message = "recurrence satisfied identically; initial values agree for n <= " +
              std::to_string(bound);
  return v;
}

}  // namespace holowalk
