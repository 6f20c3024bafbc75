#include "holowalk/ore.hpp"

#include <algorithm>
#include <sstream>

#include "holowalk/error.hpp"
#include "holowalk/walks.hpp"

namespace holowalk {

OreOperator::OreOperator(const MultiPoly& coeff) {
  if (!coeff.isZero()) terms_.emplace(ShiftExp{0, 0, 0}, coeff);
}

OreOperator OreOperator::shift(const ShiftExp& e, const MultiPoly& coeff) {
  OreOperator op;
  op.addTerm(e, coeff);
  return op;
}

MultiPoly OreOperator::coeff(const ShiftExp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? MultiPoly() : it->second;
}

bool OreOperator::hasConstantCoefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.isConstant(); });
}

void OreOperator::addTerm(const ShiftExp& e, const MultiPoly& coeff) {
  if (coeff.isZero()) return;
  if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw Error("negative shift exponent");
  auto [it, inserted] = terms_.try_emplace(e, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.isZero()) terms_.erase(it);
  }
}

OreOperator& OreOperator::operator+=(const OreOperator& o) {
  for (const auto& [e, c] : o.terms_) addTerm(e, c);
  return *this;
}

OreOperator& OreOperator::operator-=(const OreOperator& o) {
  for (const auto& [e, c] : o.terms_) addTerm(e, -c);
  return *this;
}

OreOperator operator-(OreOperator a) {
  for (auto& [e, c] : a.terms_) c = -c;
  return a;
}

OreOperator operator*(const OreOperator& a, const OreOperator& b) {
  OreOperator r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      // (ca S^ea)(cb S^eb) = ca * cb(shifted by ea) S^(ea+eb)
      r.addTerm({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * polyShift(cb, ea));
    }
  }
  return r;
}

OreOperator oreAdd(const OreOperator& a, const OreOperator& b) { return a + b; }
OreOperator oreMul(const OreOperator& a, const OreOperator& b) { return a * b; }

bool MonomialOrder::less(const ShiftExp& a, const ShiftExp& b) const {
  if (kind == Kind::gradedLex) {
    const int da = a[0] + a[1] + a[2];
    const int db = b[0] + b[1] + b[2];
    if (da != db) return da < db;
  }
  return a < b;
}

namespace {

std::vector<ShiftExp> monomialsDescending(const OreOperator& op, const MonomialOrder& ord) {
  std::vector<ShiftExp> keys;
  keys.reserve(op.terms().size());
  for (const auto& [e, c] : op.terms()) keys.push_back(e);
  std::sort(keys.begin(), keys.end(),
            [&](const ShiftExp& a, const ShiftExp& b) { return ord.less(b, a); });
  return keys;
}

bool divides(const ShiftExp& d, const ShiftExp& m) {
  return d[0] <= m[0] && d[1] <= m[1] && d[2] <= m[2];
}

}  // namespace

ShiftExp leadingMonomial(const OreOperator& op, const MonomialOrder& ord) {
  if (op.isZero()) throw Error("leading monomial of the zero operator");
  return monomialsDescending(op, ord).front();
}

DivRem oreDivRem(const OreOperator& x, const OreOperator& t, const MonomialOrder& ord) {
  if (t.isZero()) throw Error("division by the zero operator");
  if (!t.hasConstantCoefficients()) {
    throw UnsupportedError("division with remainder needs a constant-coefficient divisor");
  }
  const ShiftExp lm = leadingMonomial(t, ord);
  const Rational lc = t.coeff(lm).constantTerm();

  DivRem out;
  OreOperator rest = x;
  for (;;) {
    std::optional<ShiftExp> target;
    for (const auto& m : monomialsDescending(rest, ord)) {
      if (divides(lm, m)) {
        target = m;
        break;
      }
    }
    if (!target) break;
    const ShiftExp q{(*target)[0] - lm[0], (*target)[1] - lm[1], (*target)[2] - lm[2]};
    MultiPoly factor = rest.coeff(*target);
    factor *= Rational(1) / lc;
    out.quotient.addTerm(q, factor);
    // factor S^q T: T's coefficients are constants, so no commutation terms.
    for (const auto& [e, c] : t.terms()) {
      MultiPoly term = factor;
      term *= c.constantTerm();
      rest.addTerm({q[0] + e[0], q[1] + e[1], q[2] + e[2]}, -term);
    }
  }
  out.remainder = std::move(rest);
  return out;
}

OreOperator substituteZero(const OreOperator& op, const std::set<Var>& vars) {
  OreOperator r;
  for (const auto& [e, c] : op.terms()) {
    MultiPoly p = c;
    for (Var v : vars) p = polySetZero(p, v);
    r.addTerm(e, p);
  }
  return r;
}

std::optional<Degrees> degrees(const OreOperator& op) {
  if (op.isZero()) return std::nullopt;
  Degrees d;
  for (const auto& [e, c] : op.terms()) {
    d.ordSn = std::max(d.ordSn, e[0]);
    d.ordSi = std::max(d.ordSi, e[1]);
    d.ordSj = std::max(d.ordSj, e[2]);
    d.degN = std::max(d.degN, c.degreeIn(Var::n));
    d.degI = std::max(d.degI, c.degreeIn(Var::i));
    d.degJ = std::max(d.degJ, c.degreeIn(Var::j));
    d.totalPolyDeg = std::max(d.totalPolyDeg, c.totalDegree());
  }
  return d;
}

OreOperator normalized(const OreOperator& op, const MonomialOrder& ord) {
  if (op.isZero()) return op;
  Integer g = 0;
  Integer l = 1;
  for (const auto& [e, c] : op.terms()) {
    for (const auto& [m, q] : c.terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
  }
  Rational scale(l, g);
  scale.canonicalize();
  const MultiPoly& lead = op.coeff(leadingMonomial(op, ord));
  if (lead.terms().rbegin()->second < 0) scale = -scale;
  OreOperator r;
  for (const auto& [e, c] : op.terms()) {
    MultiPoly p = c;
    p *= scale;
    r.addTerm(e, p);
  }
  return r;
}

std::size_t Box::size() const {
  if (nHi < nLo || iHi < iLo || jHi < jLo) return 0;
  return static_cast<std::size_t>((nHi - nLo + 1) * (iHi - iLo + 1) * (jHi - jLo + 1));
}

const Rational& ValueGrid::at(long n, long i, long j) const {
  const long wi = box.iHi - box.iLo + 1;
  const long wj = box.jHi - box.jLo + 1;
  return values.at(((n - box.nLo) * wi + (i - box.iLo)) * wj + (j - box.jLo));
}

bool ValueGrid::allZero() const {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v == 0; });
}

std::optional<Point3> ValueGrid::firstNonzero() const {
  std::size_t k = 0;
  for (long n = box.nLo; n <= box.nHi; ++n) {
    for (long i = box.iLo; i <= box.iHi; ++i) {
      for (long j = box.jLo; j <= box.jHi; ++j, ++k) {
        if (values[k] != 0) return Point3{n, i, j};
      }
    }
  }
  return std::nullopt;
}

Rational applyAt(const OreOperator& r, const WalkOracle& o, const Point3& p) {
  Rational sum = 0;
  for (const auto& [e, c] : r.terms()) {
    const Integer v = o.value(p[0] + e[0], p[1] + e[1], p[2] + e[2]);
    if (v == 0) continue;
    sum += polyEval(c, p) * v;
  }
  return sum;
}

ValueGrid oreApply(const OreOperator& r, const WalkOracle& o, const Box& box) {
  ValueGrid grid{box, {}};
  if (box.size() == 0) return grid;
  const auto d = degrees(r);
  const long needed = box.nHi + (d ? d->ordSn : 0);
  if (needed > o.maxLevel()) {
    throw RangeError("operator application needs level " + std::to_string(needed) +
                         ", oracle has " + std::to_string(o.maxLevel()),
                     needed);
  }
  grid.values.reserve(box.size());
  for (long n = box.nLo; n <= box.nHi; ++n) {
    for (long i = box.iLo; i <= box.iHi; ++i) {
      for (long j = box.jLo; j <= box.jHi; ++j) grid.values.push_back(applyAt(r, o, {n, i, j}));
    }
  }
  return grid;
}

std::string toString(const OreOperator& op) {
  if (op.isZero()) return "0";
  static const char* names[3] = {"Sn", "Si", "Sj"};
  std::ostringstream os;
  bool first = true;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    os << "(" << toString(c) << ")";
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      os << "*" << names[v];
      if (e[v] > 1) os << "^" << e[v];
    }
    first = false;
  }
  return os.str();
}

}  // namespace holowalk
