#include "holowalk/linalg.hpp"

#include <algorithm>

#include "holowalk/error.hpp"

namespace holowalk {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
constexpr u64 P = kPrepassPrime;

u64 mulmod(u64 a, u64 b) { return static_cast<u64>(static_cast<u128>(a) * b % P); }

u64 powmod(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a) { return powmod(a, P - 2); }

u64 reduce(const Integer& v) { return mpz_fdiv_ui(v.get_mpz_t(), P); }

std::vector<IntegerVector> toIntegerRows(const RationalMatrix& m, std::size_t cols) {
  std::vector<IntegerVector> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    if (row.size() != cols) throw Error("matrix row has the wrong length");
    Integer l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntegerVector r(cols);
    for (std::size_t c = 0; c < cols; ++c) r[c] = row[c].get_num() * (l / row[c].get_den());
    out.push_back(std::move(r));
  }
  return out;
}

// Incremental echelon form modulo P; returns the indices of rows that
// raised the rank.
std::vector<std::size_t> selectRowBasisModP(const std::vector<IntegerVector>& rows,
                                            std::size_t cols) {
  std::vector<std::vector<u64>> basis;  // each normalized to pivot 1
  std::vector<std::size_t> pivotCol;
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < rows.size() && basis.size() < cols; ++r) {
    std::vector<u64> v(cols);
    bool any = false;
    for (std::size_t c = 0; c < cols; ++c) {
      v[c] = reduce(rows[r][c]);
      any = any || v[c] != 0;
    }
    if (!any) continue;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const u64 f = v[pivotCol[b]];
      if (f == 0) continue;
      const auto& brow = basis[b];
      for (std::size_t c = pivotCol[b]; c < cols; ++c) {
        if (brow[c] == 0) continue;
        v[c] = (v[c] + P - mulmod(f, brow[c])) % P;
      }
    }
    std::size_t pc = 0;
    while (pc < cols && v[pc] == 0) ++pc;
    if (pc == cols) continue;
    const u64 inv = invmod(v[pc]);
    for (std::size_t c = pc; c < cols; ++c) v[c] = mulmod(v[c], inv);
    // Keep the basis fully reduced in the new pivot column so later rows
    // can be reduced in a single pass.
    for (auto& brow : basis) {
      const u64 f = brow[pc];
      if (f == 0) continue;
      for (std::size_t c = pc; c < cols; ++c) {
        if (v[c] == 0) continue;
        brow[c] = (brow[c] + P - mulmod(f, v[c])) % P;
      }
    }
    basis.push_back(std::move(v));
    pivotCol.push_back(pc);
    chosen.push_back(r);
  }
  return chosen;
}

struct Echelon {
  std::vector<IntegerVector> rows;
  std::vector<std::size_t> pivots;
};

// Fraction-free (Bareiss) forward elimination.
Echelon bareiss(std::vector<IntegerVector> a, std::size_t cols) {
  Echelon e;
  Integer prev = 1;
  std::size_t row = 0;
  Integer tmp;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Integer& piv = a[row][col];
    for (std::size_t i = row + 1; i < a.size(); ++i) {
      const Integer f = a[i][col];
      for (std::size_t k = col + 1; k < cols; ++k) {
        mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), a[i][k].get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), f.get_mpz_t(), a[row][k].get_mpz_t());
        mpz_divexact(a[i][k].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = piv;
    e.pivots.push_back(col);
    ++row;
  }
  a.resize(row);
  e.rows = std::move(a);
  return e;
}

IntegerVector primitiveIntegerVector(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntegerVector out(v.size());
  Integer g = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out[k] = v[k].get_num() * (l / v[k].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[k].get_mpz_t());
  }
  if (g == 0) return out;
  auto first = std::find_if(out.begin(), out.end(), [](const Integer& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

std::vector<IntegerVector> kernelFromEchelon(const Echelon& e, std::size_t cols) {
  std::vector<bool> isPivot(cols, false);
  for (auto p : e.pivots) isPivot[p] = true;
  std::vector<IntegerVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    std::vector<Rational> x(cols);
    x[f] = 1;
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
      const auto pc = e.pivots[k];
      Rational s = 0;
      for (std::size_t c = pc + 1; c < cols; ++c) {
        if (x[c] != 0 && e.rows[k][c] != 0) s += e.rows[k][c] * x[c];
      }
      x[pc] = -s / e.rows[k][pc];
    }
    basis.push_back(primitiveIntegerVector(x));
  }
  return basis;
}

bool annihilates(const IntegerVector& row, const IntegerVector& v) {
  Integer s = 0;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] != 0 && row[c] != 0) mpz_addmul(s.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
  }
  return s == 0;
}

}  // namespace

std::size_t rankModPrime(const RationalMatrix& m, std::size_t cols) {
  return selectRowBasisModP(toIntegerRows(m, cols), cols).size();
}

std::vector<IntegerVector> nullspace(const RationalMatrix& m, std::size_t cols,
                                     const NullspaceOptions& opts, NullspaceStats* stats) {
  const auto rows = toIntegerRows(m, cols);
  std::vector<std::size_t> used;
  std::size_t modRank = 0;
  if (opts.modularPrepass) {
    used = selectRowBasisModP(rows, cols);
    modRank = used.size();
  } else {
    used.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) used[r] = r;
  }

  for (;;) {
    std::vector<IntegerVector> sub;
    sub.reserve(used.size());
    for (auto r : used) sub.push_back(rows[r]);
    const Echelon e = bareiss(std::move(sub), cols);
    auto basis = kernelFromEchelon(e, cols);

    // Every kernel vector of the selected rows must kill every row.
    std::vector<std::size_t> failing;
    std::vector<bool> inUse(rows.size(), false);
    for (auto r : used) inUse[r] = true;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (inUse[r]) continue;
      for (const auto& v : basis) {
        if (!annihilates(rows[r], v)) {
          failing.push_back(r);
          break;
        }
      }
    }
    if (failing.empty()) {
      if (stats) {
        stats->rows = rows.size();
        stats->cols = cols;
        stats->rowsUsedExactly = used.size();
        stats->rankModPrime = modRank;
        stats->rank = e.pivots.size();
      }
      return basis;
    }
    used.insert(used.end(), failing.begin(), failing.end());
    std::sort(used.begin(), used.end());
  }
}

}  // namespace holowalk
