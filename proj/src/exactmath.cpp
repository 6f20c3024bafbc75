#include "holowalk/exactmath.hpp"

#include <algorithm>
#include <sstream>

#include "holowalk/error.hpp"

namespace holowalk {

Rational parseRational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  const auto slash = text.find('/');
  auto validInt = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') return false;
    }
    return true;
  };
  const std::string numText = text.substr(0, slash);
  const std::string denText = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!validInt(numText) || !validInt(denText) || denText[0] == '-' || denText[0] == '+') {
    throw ParseError("malformed rational literal '" + text + "'");
  }
  Integer num(numText[0] == '+' ? numText.substr(1) : numText, 10);
  Integer den(denText, 10);
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string toString(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str(10);
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Exponent3{0, 0, 0}, constant);
}

MultiPoly::MultiPoly(long constant) : MultiPoly(Rational(constant)) {}

MultiPoly MultiPoly::variable(Var v) {
  Exponent3 e{0, 0, 0};
  e[static_cast<int>(v)] = 1;
  return monomial(e);
}

MultiPoly MultiPoly::monomial(const Exponent3& exps, const Rational& coeff) {
  MultiPoly p;
  p.addTerm(exps, coeff);
  return p;
}

bool MultiPoly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent3{0, 0, 0});
}

Rational MultiPoly::constantTerm() const {
  auto it = terms_.find(Exponent3{0, 0, 0});
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::totalDegree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

int MultiPoly::degreeIn(Var v) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<int>(v)]);
  return d;
}

void MultiPoly::addTerm(const Exponent3& exps, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  for (const auto& [e, c] : other.terms_) addTerm(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  for (const auto& [e, c] : other.terms_) addTerm(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [e, v] : terms_) v *= c;
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      r.addTerm({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return r;
}

MultiPoly operator-(MultiPoly a) {
  for (auto& [e, c] : a.terms_) c = -c;
  return a;
}

MultiPoly polyArith(PolyOp kind, const MultiPoly& a, const MultiPoly& b) {
  switch (kind) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  return {};
}

namespace {

Integer ipow(long base, int exp) {
  Integer r;
  Integer b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

// Coefficients of (x + offset)^k in ascending powers of x.
std::vector<Integer> binomialExpansion(int k, long offset) {
  std::vector<Integer> out(k + 1);
  Integer binom = 1;
  for (int t = 0; t <= k; ++t) {
    out[t] = binom * ipow(offset, k - t);
    binom = binom * (k - t) / (t + 1);
  }
  return out;
}

}  // namespace

Rational polyEval(const MultiPoly& p, const Point3& point) {
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    sum += c * ipow(point[0], e[0]) * ipow(point[1], e[1]) * ipow(point[2], e[2]);
  }
  return sum;
}

MultiPoly polySubstituteShift(const MultiPoly& p, Var var, long offset) {
  if (offset == 0) return p;
  const int v = static_cast<int>(var);
  MultiPoly r;
  for (const auto& [e, c] : p.terms()) {
    const auto expansion = binomialExpansion(e[v], offset);
    for (int t = 0; t <= e[v]; ++t) {
      Exponent3 ne = e;
      ne[v] = t;
      r.addTerm(ne, c * expansion[t]);
    }
  }
  return r;
}

MultiPoly polyShift(const MultiPoly& p, const std::array<int, 3>& offsets) {
  MultiPoly r = p;
  for (int v = 0; v < 3; ++v) {
    if (offsets[v] != 0) r = polySubstituteShift(r, static_cast<Var>(v), offsets[v]);
  }
  return r;
}

MultiPoly polySetZero(const MultiPoly& p, Var var) {
  MultiPoly r;
  const int v = static_cast<int>(var);
  for (const auto& [e, c] : p.terms()) {
    if (e[v] == 0) r.addTerm(e, c);
  }
  return r;
}

std::string toString(const MultiPoly& p) {
  if (p.isZero()) return "0";
  static const char* names[3] = {"n", "i", "j"};
  std::ostringstream os;
  bool first = true;
  // Highest-degree terms first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = (mag == 1) && (e != Exponent3{0, 0, 0});
    if (!unit) os << mag.get_str();
    bool needStar = !unit;
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (needStar) os << "*";
      os << names[v];
      if (e[v] > 1) os << "^" << e[v];
      needStar = true;
    }
    first = false;
  }
  return os.str();
}

// ----------------------------------------------------------------- UniPoly

UniPoly::UniPoly(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

UniPoly::UniPoly(long constant) : UniPoly(Rational(constant)) {}

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::x() { return UniPoly(std::vector<Rational>{0, 1}); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Rational(0);
}

Rational UniPoly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational UniPoly::eval(const Rational& at) const {
  Rational r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * at + *it;
  return r;
}

UniPoly UniPoly::shifted(const Rational& offset) const { return composeAffine(1, offset); }

UniPoly UniPoly::composeAffine(const Rational& a, const Rational& b) const {
  // Horner in the polynomial ring: (((c_d) y + c_{d-1}) y + ...) with y = a x + b.
  UniPoly y(std::vector<Rational>{b, a});
  UniPoly r;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = r * y;
    r += UniPoly(*it);
  }
  return r;
}

UniPoly UniPoly::monic() const {
  if (isZero()) return *this;
  UniPoly r = *this;
  r *= Rational(1) / leading();
  return r;
}

Rational UniPoly::content() const {
  if (isZero()) return 0;
  Integer g = 0;
  Integer l = 1;
  for (const auto& c : coeffs_) {
    if (c == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  return r;
}

UniPoly UniPoly::primitive() const {
  if (isZero()) return *this;
  UniPoly r = *this;
  Rational c = content();
  if (leading() < 0) c = -c;
  r *= Rational(1) / c;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
  } else {
    for (auto& v : coeffs_) v *= c;
  }
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.isZero() || b.isZero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t p = 0; p < a.coeffs_.size(); ++p) {
    if (a.coeffs_[p] == 0) continue;
    for (std::size_t q = 0; q < b.coeffs_.size(); ++q) out[p + q] += a.coeffs_[p] * b.coeffs_[q];
  }
  return UniPoly(std::move(out));
}

UniPoly operator-(UniPoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

std::pair<UniPoly, UniPoly> UniPoly::divRem(const UniPoly& a, const UniPoly& b) {
  if (b.isZero()) throw Error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {UniPoly(), a};
  std::vector<Rational> quot(da - db + 1);
  const Rational lead = b.leading();
  for (int k = da; k >= db; --k) {
    if (rem[k] == 0) continue;
    Rational q = rem[k] / lead;
    quot[k - db] = q;
    for (int t = 0; t <= db; ++t) rem[k - db + t] -= q * b.coeffs_[t];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a.monic();
  UniPoly y = b.monic();
  while (!y.isZero()) {
    UniPoly r = divRem(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x;
}

UniPoly exactDivide(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = UniPoly::divRem(a, b);
  if (!r.isZero()) throw InternalError("inexact polynomial division");
  return q;
}

std::vector<long> nonnegativeIntegerRoots(const UniPoly& p) {
  if (p.isZero()) throw Error("root search on the zero polynomial");
  UniPoly q = p.primitive();
  std::vector<long> roots;
  int low = 0;
  while (q.coeff(low) == 0) ++low;
  if (low > 0) roots.push_back(0);
  std::vector<Integer> c;
  for (int k = low; k <= q.degree(); ++k) c.push_back(q.coeff(k).get_num());
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return roots;
  // Fujiwara bound: every root has |r| < 2 max_k |c_{d-k}/c_d|^{1/k}.
  Integer bound = 1;
  const Integer lead = abs(c[d]);
  for (int k = 1; k <= d; ++k) {
    Integer ratio = abs(c[d - k]);
    mpz_cdiv_q(ratio.get_mpz_t(), ratio.get_mpz_t(), lead.get_mpz_t());
    Integer rt;
    mpz_root(rt.get_mpz_t(), ratio.get_mpz_t(), static_cast<unsigned long>(k));
    rt += 1;
    if (rt > bound) bound = rt;
  }
  bound *= 2;
  if (bound > Integer(100000000)) {
    throw UnsupportedError("integer root bound " + bound.get_str() + " too large");
  }
  const long limit = bound.get_si();
  const Integer& trailing = c[0];
  for (long r = 1; r <= limit; ++r) {
    if (!mpz_divisible_ui_p(trailing.get_mpz_t(), static_cast<unsigned long>(r))) continue;
    Integer acc = 0;
    for (int k = d; k >= 0; --k) acc = acc * r + c[k];
    if (acc == 0) roots.push_back(r);
  }
  return roots;
}

std::string toString(const UniPoly& p, const std::string& var) {
  if (p.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coeffs()[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (k == 0 || mag != 1) os << mag.get_str() << (k > 0 ? "*" : "");
    if (k > 0) os << var;
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os.str();
}

// ----------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const UniPoly& num) : num_(num), den_(1) {}
RatFunc::RatFunc(const Rational& c) : num_(c), den_(1) {}
RatFunc::RatFunc(long c) : num_(c), den_(1) {}

RatFunc ratNormalize(const UniPoly& num, const UniPoly& den) {
  if (den.isZero()) throw Error("rational function with zero denominator");
  if (num.isZero()) return RatFunc(UniPoly(), UniPoly(1), 0);
  UniPoly g = UniPoly::gcd(num, den);
  UniPoly n = exactDivide(num, g);
  UniPoly d = exactDivide(den, g);
  const Rational lead = d.leading();
  n *= Rational(1) / lead;
  d *= Rational(1) / lead;
  return RatFunc(std::move(n), std::move(d), 0);
}

Rational RatFunc::eval(const Rational& at) const {
  const Rational d = den_.eval(at);
  if (d == 0) throw Error("rational function evaluated at a pole");
  return num_.eval(at) / d;
}

RatFunc RatFunc::shifted(const Rational& offset) const {
  return RatFunc(num_.shifted(offset), den_.shifted(offset), 0);
}

RatFunc RatFunc::composeAffine(const Rational& a, const Rational& b) const {
  return ratNormalize(num_.composeAffine(a, b), den_.composeAffine(a, b));
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) return *this = ratNormalize(num_ + o.num_, den_);
  return *this = ratNormalize(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  if (den_ == o.den_) return *this = ratNormalize(num_ - o.num_, den_);
  return *this = ratNormalize(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  return *this = ratNormalize(num_ * o.num_, den_ * o.den_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.isZero()) throw Error("rational function division by zero");
  return *this = ratNormalize(num_ * o.den_, den_ * o.num_);
}

RatFunc operator-(RatFunc a) {
  a.num_ = -a.num_;
  return a;
}

std::string toString(const RatFunc& r, const std::string& var) {
  if (r.den() == UniPoly(1)) return toString(r.num(), var);
  return "(" + toString(r.num(), var) + ")/(" + toString(r.den(), var) + ")";
}

}  // namespace holowalk
