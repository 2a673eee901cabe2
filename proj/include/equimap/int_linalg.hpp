#pragma once

#include "equimap/types.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

namespace equimap {

/// Floor division. cpp_int's `/` truncates toward zero; lattice reduction
/// needs the floor so that remainders land in [0, divisor).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) --q;
  return q;
}

/// gcd of the absolute values of the entries together with v / gcd.
/// Throws TrivialSummandError on the zero vector.
inline std::pair<Int, IntVector> gcd_primitive(const IntVector& v) {
  Int g = 0;
  for (const Int& e : v) g = gcd(g, e);
  if (g == 0)
    throw TrivialSummandError("zero vector has no primitive direction (trivial summand)");
  IntVector primitive(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) primitive[i] = v[i] / g;
  return {g, std::move(primitive)};
}

/// Trial-division primality check; meant for desk-scale moduli.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// All positive divisors of n > 0, ascending.
inline std::vector<Int> divisors_of(const Int& n) {
  if (n <= 0) throw PreconditionError("divisors_of expects a positive integer");
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Exact determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. The empty matrix has determinant 1.
inline Int determinant(std::vector<IntVector> m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw RankMismatchError("determinant of a non-square matrix");
  Int prev = 1;
  int sign = 1;
  for (std::size_t t = 0; t < n; ++t) {
    if (m[t][t] == 0) {
      std::size_t swap_row = n;
      for (std::size_t i = t + 1; i < n; ++i)
        if (m[i][t] != 0) { swap_row = i; break; }
      if (swap_row == n) return 0;
      std::swap(m[t], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = t + 1; i < n; ++i) {
      for (std::size_t j = t + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) / prev;
      m[i][t] = 0;
    }
    prev = m[t][t];
  }
  return n == 0 ? Int(1) : Int(sign * m[n - 1][n - 1]);
}

/// A subgroup of Z^k held as its row-style Hermite normal form: rows linearly
/// independent, each pivot positive, entries above a pivot reduced into
/// [0, pivot). The HNF is the unique representative of the row span, so two
/// LatticeBasis values compare equal exactly when the lattices coincide.
class LatticeBasis {
 public:
  /// Canonicalizes an arbitrary generating set (redundant or dependent
  /// generators welcome). An empty set yields the rank-0 lattice.
  static LatticeBasis from_generators(std::size_t ambient_rank,
                                      std::vector<IntVector> generators) {
    for (const auto& g : generators)
      if (g.size() != ambient_rank)
        throw RankMismatchError("generator length does not match ambient rank");
    return LatticeBasis(ambient_rank, hermite_reduce(ambient_rank, std::move(generators)));
  }

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<IntVector>& rows() const { return rows_; }

  /// Integer membership of v in the row span, by back-substitution along the
  /// echelon profile.
  bool contains(const IntVector& v) const {
    if (v.size() != ambient_rank_)
      throw RankMismatchError("vector length does not match ambient rank");
    IntVector w = v;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ambient_rank_; ++col) {
      if (row < rows_.size() && pivot_cols_[row] == col) {
        const Int& pivot = rows_[row][col];
        if (w[col] % pivot != 0) return false;
        const Int c = w[col] / pivot;
        if (c != 0)
          for (std::size_t j = col; j < ambient_rank_; ++j) w[j] -= c * rows_[row][j];
        ++row;
      } else if (w[col] != 0) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.rows_ == b.rows_;
  }

  /// Canonical total order: ambient rank, then rank, then rows
  /// lexicographically. Used for deterministic witness selection.
  friend bool operator<(const LatticeBasis& a, const LatticeBasis& b) {
    if (a.ambient_rank_ != b.ambient_rank_) return a.ambient_rank_ < b.ambient_rank_;
    if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
    return a.rows_ < b.rows_;
  }

 private:
  LatticeBasis(std::size_t ambient_rank, std::vector<IntVector> hnf_rows)
      : ambient_rank_(ambient_rank), rows_(std::move(hnf_rows)) {
    pivot_cols_.reserve(rows_.size());
    for (const auto& r : rows_) {
      std::size_t col = 0;
      while (col < ambient_rank_ && r[col] == 0) ++col;
      pivot_cols_.push_back(col);
    }
  }

  static std::vector<IntVector> hermite_reduce(std::size_t k, std::vector<IntVector> rows) {
    std::erase_if(rows, [](const IntVector& r) {
      return std::all_of(r.begin(), r.end(), [](const Int& e) { return e == 0; });
    });
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < k && pivot_row < rows.size(); ++col) {
      // Euclidean passes: shrink entries in this column below pivot_row until
      // a single nonzero survives.
      for (;;) {
        std::size_t best = rows.size();
        for (std::size_t i = pivot_row; i < rows.size(); ++i) {
          if (rows[i][col] == 0) continue;
          if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
        }
        if (best == rows.size()) break;  // no pivot in this column
        std::swap(rows[pivot_row], rows[best]);
        bool clean = true;
        for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
          if (rows[i][col] == 0) continue;
          const Int q = rows[i][col] / rows[pivot_row][col];
          if (q != 0)
            for (std::size_t j = 0; j < k; ++j) rows[i][j] -= q * rows[pivot_row][j];
          if (rows[i][col] != 0) clean = false;
        }
        if (!clean) continue;
        if (rows[pivot_row][col] < 0)
          for (auto& e : rows[pivot_row]) e = -e;
        for (std::size_t i = 0; i < pivot_row; ++i) {
          const Int q = floor_div(rows[i][col], rows[pivot_row][col]);
          if (q != 0)
            for (std::size_t j = 0; j < k; ++j) rows[i][j] -= q * rows[pivot_row][j];
        }
        ++pivot_row;
        break;
      }
    }
    rows.resize(pivot_row);
    return rows;
  }

  std::size_t ambient_rank_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivot_cols_;
};

inline LatticeBasis hnf(std::size_t ambient_rank, std::vector<IntVector> generators) {
  return LatticeBasis::from_generators(ambient_rank, std::move(generators));
}

inline std::size_t lattice_rank(const LatticeBasis& basis) { return basis.rank(); }

inline bool lattice_contains(const LatticeBasis& basis, const IntVector& v) {
  return basis.contains(v);
}

/// U * B * V = diag(d1..dr) with d1 | d2 | ... | dr > 0 and det U, det V = +-1.
struct SmithDecomposition {
  std::vector<Int> diagonal;
  std::vector<IntVector> left;   // r x r
  std::vector<IntVector> right;  // k x k
};

inline SmithDecomposition snf(const LatticeBasis& basis) {
  if (basis.rank() == 0) throw PreconditionError("Smith normal form of an empty basis");
  const std::size_t r = basis.rank();
  const std::size_t k = basis.ambient_rank();
  std::vector<IntVector> a = basis.rows();
  std::vector<IntVector> u(r, IntVector(r, 0)), v(k, IntVector(k, 0));
  for (std::size_t i = 0; i < r; ++i) u[i][i] = 1;
  for (std::size_t j = 0; j < k; ++j) v[j][j] = 1;

  auto row_sub = [&](std::size_t i, const Int& q, std::size_t t) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] -= q * a[t][j];
    for (std::size_t j = 0; j < r; ++j) u[i][j] -= q * u[t][j];
  };
  auto row_add = [&](std::size_t t, std::size_t i) {
    for (std::size_t j = 0; j < k; ++j) a[t][j] += a[i][j];
    for (std::size_t j = 0; j < r; ++j) u[t][j] += u[i][j];
  };
  auto col_sub = [&](std::size_t j, const Int& q, std::size_t t) {
    for (std::size_t i = 0; i < r; ++i) a[i][j] -= q * a[i][t];
    for (std::size_t i = 0; i < k; ++i) v[i][j] -= q * v[i][t];
  };

  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      // move the minimal nonzero entry of the trailing block to (t, t)
      std::size_t bi = r, bj = k;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < k; ++j) {
          if (a[i][j] == 0) continue;
          if (bi == r || abs(a[i][j]) < abs(a[bi][bj])) { bi = i; bj = j; }
        }
      if (bi == r) break;  // trailing block zero (cannot happen: rows independent)
      if (bi != t) { std::swap(a[t], a[bi]); std::swap(u[t], u[bi]); }
      if (bj != t) {
        for (std::size_t i = 0; i < r; ++i) std::swap(a[i][t], a[i][bj]);
        for (std::size_t i = 0; i < k; ++i) std::swap(v[i][t], v[i][bj]);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i)
        if (a[i][t] != 0) {
          row_sub(i, a[i][t] / a[t][t], t);
          if (a[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < k; ++j)
        if (a[t][j] != 0) {
          col_sub(j, a[t][j] / a[t][t], t);
          if (a[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      // pivot must divide the whole trailing block for the d1 | d2 | ... chain
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < k && !fixed; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_add(t, i);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < k; ++j) a[t][j] = -a[t][j];
      for (std::size_t j = 0; j < r; ++j) u[t][j] = -u[t][j];
    }
  }

  SmithDecomposition out;
  out.diagonal.reserve(r);
  for (std::size_t t = 0; t < r; ++t) out.diagonal.push_back(a[t][t]);
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

/// Point of T^k = (R/Z)^k with exact rational coordinates in [0, 1).
using RationalTorusPoint = std::vector<Rational>;

inline Rational mod1(const Rational& q) {
  return q - floor_div(numerator(q), denominator(q));
}

/// All elements of the finite subgroup ann(basis) = {theta : chi . theta in Z
/// for every chi in the lattice}. Requires a full-rank basis; the result has
/// |det| elements. Enumeration goes through the Smith form: with U B V = D,
/// theta = V . (a1/d1, ..., ak/dk) over all residue tuples.
inline std::vector<RationalTorusPoint> annihilator_elements(const LatticeBasis& basis) {
  if (basis.rank() != basis.ambient_rank())
    throw PreconditionError("annihilator subgroup is infinite: basis is not full rank");
  const std::size_t k = basis.ambient_rank();
  const SmithDecomposition s = snf(basis);

  std::vector<RationalTorusPoint> out;
  std::vector<Int> counter(k, 0);
  for (;;) {
    RationalTorusPoint theta(k);
    for (std::size_t j = 0; j < k; ++j) {
      Rational coord = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (counter[i] != 0) coord += Rational(s.right[j][i] * counter[i], s.diagonal[i]);
      theta[j] = mod1(coord);
    }
    out.push_back(std::move(theta));
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++counter[pos] < s.diagonal[pos]) break;
      counter[pos] = 0;
      if (pos == 0) return out;
    }
    if (k == 0) return out;
  }
}

}  // namespace equimap
