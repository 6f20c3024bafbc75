#pragma once

// Exact arithmetic: big integers and rationals (GMP), polynomials in the
// commuting variables n, i, j, and univariate polynomials / rational
// functions in a single variable.

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace holowalk {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Var { n = 0, i = 1, j = 2 };

/// Exponents (d_n, d_i, d_j) of a monomial n^d_n i^d_i j^d_j.
using Exponent3 = std::array<int, 3>;

/// Integer evaluation point (n, i, j).
using Point3 = std::array<long, 3>;

Rational parseRational(const std::string& text);
std::string toString(const Rational& q);

/// Polynomial in Q[n, i, j], stored as a canonical exponent -> coefficient map.
/// Zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent3, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& constant);  // NOLINT: implicit lift of scalars
  MultiPoly(long constant);             // NOLINT

  static MultiPoly variable(Var v);
  static MultiPoly monomial(const Exponent3& exps, const Rational& coeff = 1);

  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  Rational constantTerm() const;

  /// Total degree; -1 for the zero polynomial.
  int totalDegree() const;
  int degreeIn(Var v) const;

  /// Adds c * monomial in place, keeping the map canonical.
  void addTerm(const Exponent3& exps, const Rational& coeff);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(MultiPoly a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

enum class PolyOp { add, sub, mul };

MultiPoly polyArith(PolyOp kind, const MultiPoly& a, const MultiPoly& b);
Rational polyEval(const MultiPoly& p, const Point3& point);

/// p with `var` replaced by var + offset, i.e. S_var p = polySubstituteShift(p, var, 1) S_var.
MultiPoly polySubstituteShift(const MultiPoly& p, Var var, long offset);

/// Applies polySubstituteShift for all three variables at once.
MultiPoly polyShift(const MultiPoly& p, const std::array<int, 3>& offsets);

/// Sets the given variable to zero.
MultiPoly polySetZero(const MultiPoly& p, Var var);

std::string toString(const MultiPoly& p);

/// Dense univariate polynomial over Q, coefficients in ascending order.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(const Rational& constant);  // NOLINT
  UniPoly(long constant);             // NOLINT
  explicit UniPoly(std::vector<Rational> coeffs);

  static UniPoly x();

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool isZero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(int k) const;
  Rational leading() const;

  Rational eval(const Rational& at) const;
  /// p(x + offset)
  UniPoly shifted(const Rational& offset) const;
  /// p(a*x + b)
  UniPoly composeAffine(const Rational& a, const Rational& b) const;
  UniPoly monic() const;

  /// Positive rational c with p / c primitive integral (zero for p = 0).
  Rational content() const;
  /// Primitive integer polynomial with positive leading coefficient.
  UniPoly primitive() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const Rational& c);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(UniPoly a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient and remainder of division by a nonzero divisor.
  static std::pair<UniPoly, UniPoly> divRem(const UniPoly& a, const UniPoly& b);
  /// Monic gcd; gcd(0, 0) = 0.
  static UniPoly gcd(const UniPoly& a, const UniPoly& b);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Exact quotient a / b; throws InternalError when b does not divide a.
UniPoly exactDivide(const UniPoly& a, const UniPoly& b);

/// Nonnegative integer roots of p in increasing order (p must be nonzero).
std::vector<long> nonnegativeIntegerRoots(const UniPoly& p);

std::string toString(const UniPoly& p, const std::string& var = "n");

/// Element of Q(x): reduced fraction with monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const UniPoly& num);  // NOLINT
  RatFunc(const Rational& c);   // NOLINT
  RatFunc(long c);              // NOLINT

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }

  Rational eval(const Rational& at) const;
  RatFunc shifted(const Rational& offset) const;
  RatFunc composeAffine(const Rational& a, const Rational& b) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(RatFunc a);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend RatFunc ratNormalize(const UniPoly& num, const UniPoly& den);

 private:
  RatFunc(UniPoly num, UniPoly den, int /*alreadyNormal*/)
      : num_(std::move(num)), den_(std::move(den)) {}
  UniPoly num_;
  UniPoly den_;
};

/// Reduces num/den: gcd removed, denominator monic. Throws Error on den = 0.
RatFunc ratNormalize(const UniPoly& num, const UniPoly& den);

std::string toString(const RatFunc& r, const std::string& var = "n");

}  // namespace holowalk
