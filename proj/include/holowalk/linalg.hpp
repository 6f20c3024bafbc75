#pragma once

// Exact kernels of rational matrices.

#include <cstdint>
#include <vector>

#include "holowalk/exactmath.hpp"

namespace holowalk {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerVector = std::vector<Integer>;

struct NullspaceOptions {
  /// Select a row basis modulo a 62-bit prime before the exact solve. The
  /// exact kernel is always checked against every row, so the prepass only
  /// changes how much work the exact elimination does.
  bool modularPrepass = true;
};

struct NullspaceStats {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rowsUsedExactly = 0;
  std::size_t rankModPrime = 0;
  std::size_t rank = 0;
};

/// Basis of the right kernel of `m` (with `cols` columns). Each basis
/// vector is a primitive integer vector whose first nonzero entry is
/// positive; the vectors are ordered by their free column.
std::vector<IntegerVector> nullspace(const RationalMatrix& m, std::size_t cols,
                                     const NullspaceOptions& opts = {},
                                     NullspaceStats* stats = nullptr);

/// Rank modulo the prime used by the prepass (a lower bound on the rank over Q).
std::size_t rankModPrime(const RationalMatrix& m, std::size_t cols);

inline constexpr std::uint64_t kPrepassPrime = 4611686018427387847ULL;  // 2^62 - 57

}  // namespace holowalk
