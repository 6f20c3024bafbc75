#include "holowalk/eliminate.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include "holowalk/error.hpp"

namespace holowalk {

// ------------------------------------------------------------- UniOperator

RatFunc UniOperator::coeff(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? RatFunc() : it->second;
}

bool UniOperator::isPolynomial() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.den() == UniPoly(1); });
}

void UniOperator::addTerm(int power, const RatFunc& c) {
  if (power < 0) throw Error("negative S_n power");
  if (c.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(power, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

UniOperator UniOperator::cleared() const {
  if (isZero()) return *this;
  UniPoly l(1);
  for (const auto& [k, c] : terms_) {
    const UniPoly g = UniPoly::gcd(l, c.den());
    l = exactDivide(l * c.den(), g);
  }
  std::map<int, UniPoly> polys;
  Integer numGcd = 0;
  Integer denLcm = 1;
  for (const auto& [k, c] : terms_) {
    UniPoly p = c.num() * exactDivide(l, c.den());
    for (const auto& q : p.coeffs()) {
      if (q == 0) continue;
      mpz_gcd(numGcd.get_mpz_t(), numGcd.get_mpz_t(), q.get_num_mpz_t());
      mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), q.get_den_mpz_t());
    }
    polys.emplace(k, std::move(p));
  }
  Rational scale(denLcm, numGcd);
  scale.canonicalize();
  if (polys.rbegin()->second.leading() < 0) scale = -scale;
  UniOperator out;
  for (auto& [k, p] : polys) {
    p *= scale;
    out.terms_.emplace(k, RatFunc(p));
  }
  return out;
}

Rational UniOperator::applyAt(const std::vector<Rational>& seq, long n) const {
  Rational s = 0;
  for (const auto& [k, c] : terms_) s += c.eval(Rational(n)) * seq.at(n + k);
  return s;
}

UniOperator& UniOperator::operator+=(const UniOperator& o) {
  for (const auto& [k, c] : o.terms_) addTerm(k, c);
  return *this;
}

UniOperator leftMultiply(const RatFunc& c, int shift, const UniOperator& op) {
  UniOperator r;
  for (const auto& [k, a] : op.terms_) r.addTerm(k + shift, c * a.shifted(shift));
  return r;
}

std::string toString(const UniOperator& op) {
  if (op.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    if (!first) os << " + ";
    os << "(" << toString(it->second) << ")";
    if (it->first > 0) os << "*Sn";
    if (it->first > 1) os << "^" << it->first;
    first = false;
  }
  return os.str();
}

int ModuleVector::length() const {
  int len = -1;
  for (const auto& [p, c] : components) len = std::max(len, p.first + p.second);
  return len;
}

// ------------------------------------------------------------- reduction

ModuleVector reduceModIJ(const OreOperator& r) {
  ModuleVector v;
  for (const auto& [e, c] : r.terms()) {
    const MultiPoly atZero = polySetZero(polySetZero(c, Var::i), Var::j);
    if (atZero.isZero()) continue;
    std::vector<Rational> coeffs(atZero.degreeIn(Var::n) + 1);
    for (const auto& [m, q] : atZero.terms()) coeffs[m[0]] = q;
    UniOperator term;
    term.addTerm(e[0], RatFunc(UniPoly(std::move(coeffs))));
    auto& slot = v.components[{e[1], e[2]}];
    slot += term;
    if (slot.isZero()) v.components.erase({e[1], e[2]});
  }
  return v;
}

int defaultTruncation(const std::vector<OreOperator>& ops, const EliminationConfig& cfg) {
  int d = 0;
  for (const auto& op : ops) {
    const auto deg = degrees(op);
    if (!deg) continue;
    d = std::max(d, (deg->ordSi + cfg.multiplierBound) + (deg->ordSj + cfg.multiplierBound));
  }
  return d;
}

ModuleGeneration generateModule(const std::vector<OreOperator>& ops, const EliminationConfig& cfg) {
  if (cfg.multiplierBound < 0) throw Error("multiplier bound must be nonnegative");
  ModuleGeneration gen;
  gen.truncation = cfg.truncation.value_or(defaultTruncation(ops, cfg));
  if (gen.truncation < 0) throw Error("truncation must be nonnegative");
  bool anyNonzero = false;
  for (const auto& r : ops) {
    const auto deg = degrees(r);
    if (!deg) continue;
    const int maxA = std::min(cfg.multiplierBound, deg->degI);
    const int maxB = std::min(cfg.multiplierBound, deg->degJ);
    for (int a = 0; a <= maxA; ++a) {
      for (int b = 0; b <= maxB; ++b) {
        ModuleVector v = reduceModIJ(OreOperator::shift({0, a, b}) * r);
        if (v.isZero()) continue;
        anyNonzero = true;
        if (v.length() > gen.truncation) {
          ++gen.droppedBeyondTruncation;
          continue;
        }
        gen.vectors.push_back(std::move(v));
      }
    }
  }
  if (!anyNonzero) throw Error("all generators reduce to zero");
  return gen;
}

// ------------------------------------------------------------ elimination

namespace {

// Polynomial-coefficient operator sum_k c[k] S_n^k; trailing entry nonzero.
using PolyOre = std::vector<UniPoly>;
using Row = std::map<Position, PolyOre>;

void trimOre(PolyOre& o) {
  while (!o.empty() && o.back().isZero()) o.pop_back();
}

int oreDegree(const PolyOre& o) { return static_cast<int>(o.size()) - 1; }

// h(n) S_n^k * o
PolyOre leftMul(const UniPoly& h, int k, const PolyOre& o) {
  PolyOre r(o.size() + k);
  for (std::size_t j = 0; j < o.size(); ++j) {
    if (!o[j].isZero()) r[j + k] = h * o[j].shifted(k);
  }
  trimOre(r);
  return r;
}

void subtractInto(PolyOre& a, const PolyOre& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) a[j] -= b[j];
  trimOre(a);
}

struct RowEngine {
  long maxExceptional = -1;

  // Divides out the polynomial gcd and rational content of all coefficients.
  void normalize(Row& row) {
    UniPoly g;
    for (const auto& [p, o] : row) {
      for (const auto& c : o) {
        if (c.isZero()) continue;
        g = g.isZero() ? c.monic() : UniPoly::gcd(g, c);
        if (g.degree() == 0) break;
      }
      if (!g.isZero() && g.degree() == 0) break;
    }
    if (g.isZero()) return;
    if (g.degree() > 0) {
      for (long r : nonnegativeIntegerRoots(g)) maxExceptional = std::max(maxExceptional, r);
      for (auto& [p, o] : row) {
        for (auto& c : o) {
          if (!c.isZero()) c = exactDivide(c, g);
        }
      }
    }
    Integer numGcd = 0;
    Integer denLcm = 1;
    for (const auto& [p, o] : row) {
      for (const auto& c : o) {
        for (const auto& q : c.coeffs()) {
          if (q == 0) continue;
          mpz_gcd(numGcd.get_mpz_t(), numGcd.get_mpz_t(), q.get_num_mpz_t());
          mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), q.get_den_mpz_t());
        }
      }
    }
    Rational scale(denLcm, numGcd);
    scale.canonicalize();
    if (scale != 1) {
      for (auto& [p, o] : row) {
        for (auto& c : o) c *= scale;
      }
    }
  }

  // row := lc(piv)(n+k) row - lc(row)(n) S_n^k piv, clearing the leading
  // S_n term of row at `pos`.
  void reduceStep(Row& row, const Row& piv, const Position& pos) {
    const PolyOre& pr = piv.at(pos);
    const PolyOre& rr = row.at(pos);
    const int k = oreDegree(rr) - oreDegree(pr);
    const UniPoly lcPivShifted = pr.back().shifted(k);
    const UniPoly lcRow = rr.back();
    for (auto& [p, o] : row) {
      for (auto& c : o) c = lcPivShifted * c;
    }
    for (const auto& [p, o] : piv) {
      PolyOre term = leftMul(lcRow, k, o);
      auto& slot = row[p];
      subtractInto(slot, term);
    }
    for (auto it = row.begin(); it != row.end();) {
      trimOre(it->second);
      it = it->second.empty() ? row.erase(it) : std::next(it);
    }
    normalize(row);
  }
};

Row toRow(const ModuleVector& v) {
  // One common denominator for the whole vector; scaling components
  // separately would change the relation.
  UniPoly l(1);
  for (const auto& [pos, op] : v.components) {
    for (const auto& [k, rf] : op.terms()) l = exactDivide(l * rf.den(), UniPoly::gcd(l, rf.den()));
  }
  Row row;
  for (const auto& [pos, op] : v.components) {
    PolyOre o(op.order() + 1);
    for (const auto& [k, rf] : op.terms()) o[k] = rf.num() * exactDivide(l, rf.den());
    trimOre(o);
    if (!o.empty()) row.emplace(pos, std::move(o));
  }
  return row;
}

bool positionBefore(const Position& a, const Position& b) {
  const int sa = a.first + a.second;
  const int sb = b.first + b.second;
  if (sa != sb) return sa > sb;
  return a.first > b.first;
}

// Reduces the rows carrying `pos` to a single pivot; returns rows without it.
std::vector<Row> clearPosition(std::vector<Row> rows, const Position& pos, RowEngine& eng,
                               std::optional<Row>* pivotOut) {
  std::vector<Row> active;
  std::vector<Row> rest;
  for (auto& r : rows) (r.count(pos) ? active : rest).push_back(std::move(r));
  while (active.size() > 1) {
    std::stable_sort(active.begin(), active.end(), [&](const Row& a, const Row& b) {
      return oreDegree(a.at(pos)) < oreDegree(b.at(pos));
    });
    const Row piv = active.front();
    std::vector<Row> next{piv};
    for (std::size_t k = 1; k < active.size(); ++k) {
      Row r = std::move(active[k]);
      while (r.count(pos) && oreDegree(r.at(pos)) >= oreDegree(piv.at(pos))) {
        eng.reduceStep(r, piv, pos);
      }
      if (r.empty()) continue;
      (r.count(pos) ? next : rest).push_back(std::move(r));
    }
    active = std::move(next);
  }
  if (pivotOut) *pivotOut = active.empty() ? std::nullopt : std::optional<Row>(active.front());
  return rest;
}

}  // namespace

EliminationResult eliminateShifts(const std::vector<ModuleVector>& vectors) {
  if (vectors.empty()) throw Error("elimination needs at least one module vector");
  EliminationResult res;
  RowEngine eng;
  std::vector<Row> rows;
  std::vector<Position> positions;
  for (const auto& v : vectors) {
    Row r = toRow(v);
    if (r.empty()) continue;
    eng.normalize(r);
    for (const auto& [p, o] : r) positions.push_back(p);
    rows.push_back(std::move(r));
  }
  std::sort(positions.begin(), positions.end(), positionBefore);
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  res.vectorCount = rows.size();
  res.positionCount = positions.size();

  for (const auto& pos : positions) {
    if (pos == Position{0, 0}) continue;
    rows = clearPosition(std::move(rows), pos, eng, nullptr);
    if (rows.empty()) break;
  }
  std::optional<Row> pivot;
  if (!rows.empty()) clearPosition(std::move(rows), {0, 0}, eng, &pivot);
  res.maxExceptionalIndex = eng.maxExceptional;
  if (!pivot) return res;

  UniOperator p;
  const PolyOre& o = pivot->at({0, 0});
  for (std::size_t k = 0; k < o.size(); ++k) {
    if (!o[k].isZero()) p.addTerm(static_cast<int>(k), RatFunc(o[k]));
  }
  res.op = p.cleared();
  return res;
}

bool verifyOnSequence(const UniOperator& p, const std::vector<Integer>& seq, long* failingIndex) {
  const UniOperator c = p.cleared();
  const long last = static_cast<long>(seq.size()) - 1 - c.order();
  for (long n = 0; n <= last; ++n) {
    Rational s = 0;
    for (const auto& [k, rf] : c.terms()) s += rf.num().eval(Rational(n)) * seq[n + k];
    if (s != 0) {
      if (failingIndex) *failingIndex = n;
      return false;
    }
  }
  return true;
}

TakayamaResult takayamaPipeline(const std::vector<OreOperator>& ops, const EliminationConfig& cfg,
                                const std::vector<Integer>& diagonal) {
  if (cfg.retryCap < 0) throw Error("retry cap must be nonnegative");
  TakayamaResult res;
  EliminationConfig attemptCfg = cfg;
  int truncation = cfg.truncation.value_or(defaultTruncation(ops, cfg));
  for (int attempt = 0; attempt <= cfg.retryCap; ++attempt, ++truncation) {
    attemptCfg.truncation = truncation;
    const ModuleGeneration gen = generateModule(ops, attemptCfg);
    EliminationAttempt rec;
    rec.truncation = truncation;
    rec.vectors = gen.vectors.size();
    std::clog << "[eliminate] truncation " << truncation << ": " << gen.vectors.size()
              << " module vectors\n";
    if (gen.vectors.empty()) {
      res.attempts.push_back(rec);
      continue;
    }
    const EliminationResult er = eliminateShifts(gen.vectors);
    rec.positions = er.positionCount;
    rec.found = er.op.has_value();
    res.attempts.push_back(rec);
    if (!er.op) continue;

    long bad = -1;
    const long covered = static_cast<long>(diagonal.size()) - 1 - er.op->order();
    if (!verifyOnSequence(*er.op, diagonal, &bad)) {
      res.failure = "eliminated operator fails the diagonal check at n=" + std::to_string(bad);
      return res;
    }
    if (er.maxExceptionalIndex > covered) {
      res.failure = "exceptional index " + std::to_string(er.maxExceptionalIndex) +
                    " lies beyond the verified range " + std::to_string(covered);
      return res;
    }
    res.op = er.op;
    res.verifiedUpTo = covered;
    res.maxExceptionalIndex = er.maxExceptionalIndex;
    return res;
  }
  std::ostringstream os;
  os << "no operator supported on (0,0) after " << res.attempts.size() << " attempt(s); tried";
  for (const auto& a : res.attempts) {
    os << " [truncation=" << a.truncation << ", vectors=" << a.vectors
       << ", positions=" << a.positions << "]";
  }
  res.failure = os.str();
  return res;
}

}  // namespace holowalk
