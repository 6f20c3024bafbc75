#pragma once

// The shift algebra Q[n,i,j]<S_n,S_i,S_j> with S_x p(x) = p(x+1) S_x.
// Operators are kept in left-normal form: polynomial coefficients written
// to the left of the shift monomials.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "holowalk/exactmath.hpp"

namespace holowalk {

class WalkOracle;

/// Exponents (e_n, e_i, e_j) of S_n^e_n S_i^e_i S_j^e_j.
using ShiftExp = std::array<int, 3>;

class OreOperator {
 public:
  using TermMap = std::map<ShiftExp, MultiPoly>;

  OreOperator() = default;
  OreOperator(const MultiPoly& coeff);  // NOLINT: coefficient times identity

  static OreOperator identity() { return OreOperator(MultiPoly(1)); }
  static OreOperator shift(const ShiftExp& e, const MultiPoly& coeff = MultiPoly(1));

  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  /// Coefficient of a shift monomial (zero if absent).
  MultiPoly coeff(const ShiftExp& e) const;
  bool hasConstantCoefficients() const;

  void addTerm(const ShiftExp& e, const MultiPoly& coeff);

  OreOperator& operator+=(const OreOperator& o);
  OreOperator& operator-=(const OreOperator& o);
  friend OreOperator operator+(OreOperator a, const OreOperator& b) { return a += b; }
  friend OreOperator operator-(OreOperator a, const OreOperator& b) { return a -= b; }
  friend OreOperator operator-(OreOperator a);
  friend OreOperator operator*(const OreOperator& a, const OreOperator& b);
  friend bool operator==(const OreOperator& a, const OreOperator& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

OreOperator oreAdd(const OreOperator& a, const OreOperator& b);
OreOperator oreMul(const OreOperator& a, const OreOperator& b);

/// Total order on shift monomials.
struct MonomialOrder {
  enum class Kind { lex, gradedLex };
  Kind kind = Kind::lex;

  /// True iff a < b. Lex compares S_n, then S_i, then S_j.
  bool less(const ShiftExp& a, const ShiftExp& b) const;
};

/// Leading shift monomial of a nonzero operator.
ShiftExp leadingMonomial(const OreOperator& op, const MonomialOrder& ord = {});

struct DivRem {
  OreOperator quotient;
  OreOperator remainder;
};

/// X = U T + V with no monomial of V divisible by lm(T). T must have
/// constant coefficients (UnsupportedError otherwise).
DivRem oreDivRem(const OreOperator& x, const OreOperator& t, const MonomialOrder& ord = {});

/// Evaluates every coefficient at the given variables set to 0.
OreOperator substituteZero(const OreOperator& op, const std::set<Var>& vars);

struct Degrees {
  int degN = 0;
  int degI = 0;
  int degJ = 0;
  int ordSn = 0;
  int ordSi = 0;
  int ordSj = 0;
  int totalPolyDeg = 0;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

/// Per-symbol maxima; std::nullopt for the zero operator.
std::optional<Degrees> degrees(const OreOperator& op);

/// Rational content removed and the leading coefficient (leading shift
/// monomial, then its lex-largest term) made positive.
OreOperator normalized(const OreOperator& op, const MonomialOrder& ord = {});

/// Inclusive box of evaluation points.
struct Box {
  long nLo = 0, nHi = 0;
  long iLo = 0, iHi = 0;
  long jLo = 0, jHi = 0;

  std::size_t size() const;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Values of (R f)(n, i, j) over a box, row-major in (n, i, j).
struct ValueGrid {
  Box box;
  std::vector<Rational> values;

  const Rational& at(long n, long i, long j) const;
  bool allZero() const;
  /// First point (in row-major order) with a nonzero value.
  std::optional<Point3> firstNonzero() const;
};

/// (R f)(n, i, j) = sum coeff(n, i, j) f(n + e_n; i + e_i, j + e_j).
Rational applyAt(const OreOperator& r, const WalkOracle& o, const Point3& p);

/// Throws RangeError if the box plus R's S_n offsets leaves the oracle's range.
ValueGrid oreApply(const OreOperator& r, const WalkOracle& o, const Box& box);

std::string toString(const OreOperator& op);

}  // namespace holowalk
