#pragma once

#include "equimap/int_linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace equimap {

/// Nonzero character of (Z_p)^l. For odd p the pair {lambda, -lambda} indexes
/// one real two-dimensional irreducible, so the representative with first
/// nonzero entry in {1..(p-1)/2} is stored; for p = 2 characters are their
/// own negatives.
class PCharacter {
 public:
  static PCharacter normalized(int p, std::vector<int> raw) {
    for (auto& e : raw) e = ((e % p) + p) % p;
    std::size_t first = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (raw[i] != 0) { first = i; break; }
    if (first == raw.size())
      throw TrivialSummandError("zero character (trivial summand)");
    if (p > 2 && raw[first] > (p - 1) / 2)
      for (auto& e : raw) e = (p - e) % p;
    return PCharacter(std::move(raw));
  }

  const std::vector<int>& vector() const { return vec_; }
  std::size_t length() const { return vec_.size(); }

  friend bool operator==(const PCharacter& a, const PCharacter& b) { return a.vec_ == b.vec_; }
  friend bool operator<(const PCharacter& a, const PCharacter& b) { return a.vec_ < b.vec_; }

 private:
  explicit PCharacter(std::vector<int> v) : vec_(std::move(v)) {}
  std::vector<int> vec_;
};

/// Orthogonal (Z_p)^l-representation with no trivial summand, as a multiset
/// of characters. Dimensions are counted in irreducible units (pairs for odd
/// p, single characters for p = 2) consistently on both sides of every
/// inequality; real dimension is 2x resp. 1x that count.
class PTorusRep {
 public:
  PTorusRep(int p, int ell, std::map<PCharacter, std::int64_t> chars = {})
      : p_(p), ell_(ell), chars_(std::move(chars)) {
    if (!is_prime(Int(p))) throw PreconditionError("p must be prime");
    if (ell < 1) throw RankMismatchError("rank l must be at least 1");
    for (const auto& [c, m] : chars_) {
      if (c.length() != static_cast<std::size_t>(ell))
        throw RankMismatchError("character length does not match rank");
      if (m <= 0) throw PreconditionError("character multiplicities must be positive");
    }
  }

  static PTorusRep from_chars(int p, int ell,
                              const std::vector<std::pair<std::vector<int>, std::int64_t>>& terms) {
    std::map<PCharacter, std::int64_t> cs;
    for (const auto& [vec, mult] : terms) {
      if (mult <= 0) throw PreconditionError("character multiplicities must be positive");
      cs[PCharacter::normalized(p, vec)] += mult;
    }
    return PTorusRep(p, ell, std::move(cs));
  }

  int p() const { return p_; }
  int ell() const { return ell_; }
  const std::map<PCharacter, std::int64_t>& chars() const { return chars_; }

  std::int64_t dim() const {
    std::int64_t d = 0;
    for (const auto& [c, m] : chars_) d += m;
    return d;
  }

  bool is_zero() const { return chars_.empty(); }

  friend bool operator==(const PTorusRep& a, const PTorusRep& b) {
    return a.p_ == b.p_ && a.ell_ == b.ell_ && a.chars_ == b.chars_;
  }

 private:
  int p_;
  int ell_;
  std::map<PCharacter, std::int64_t> chars_;
};

/// Subspace of F_p^l in reduced row echelon form; the closed subgroups of
/// (Z_p)^l are exactly these. Value equality is subspace equality.
class FpSubspace {
 public:
  static FpSubspace from_generators(int p, int ell, std::vector<std::vector<int>> gens) {
    for (auto& g : gens) {
      if (g.size() != static_cast<std::size_t>(ell))
        throw RankMismatchError("generator length does not match rank");
      for (auto& e : g) e = ((e % p) + p) % p;
    }
    return FpSubspace(p, ell, rref(p, ell, std::move(gens)));
  }

  static FpSubspace zero_space(int p, int ell) { return from_generators(p, ell, {}); }

  static FpSubspace full_space(int p, int ell) {
    std::vector<std::vector<int>> id(ell, std::vector<int>(ell, 0));
    for (int i = 0; i < ell; ++i) id[i][i] = 1;
    return from_generators(p, ell, std::move(id));
  }

  int p() const { return p_; }
  int ell() const { return ell_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  bool contains(std::vector<int> v) const {
    for (auto& e : v) e = ((e % p_) + p_) % p_;
    for (const auto& row : rows_) {
      std::size_t pivot = 0;
      while (pivot < row.size() && row[pivot] == 0) ++pivot;
      if (pivot < v.size() && v[pivot] != 0) {
        const int c = v[pivot];
        for (std::size_t j = 0; j < v.size(); ++j)
          v[j] = ((v[j] - c * row[j]) % p_ + p_) % p_;
      }
    }
    for (int e : v)
      if (e != 0) return false;
    return true;
  }

  friend bool operator==(const FpSubspace& a, const FpSubspace& b) {
    return a.p_ == b.p_ && a.ell_ == b.ell_ && a.rows_ == b.rows_;
  }

  /// Canonical order: dimension first, then rows lexicographically.
  friend bool operator<(const FpSubspace& a, const FpSubspace& b) {
    if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
    return a.rows_ < b.rows_;
  }

 private:
  FpSubspace(int p, int ell, std::vector<std::vector<int>> rows)
      : p_(p), ell_(ell), rows_(std::move(rows)) {}

  static int inverse_mod(int a, int p) {
    // Fermat: p is prime and a != 0 mod p
    int result = 1, base = a % p, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  }

  static std::vector<std::vector<int>> rref(int p, int ell, std::vector<std::vector<int>> m) {
    std::size_t pivot_row = 0;
    for (int col = 0; col < ell && pivot_row < m.size(); ++col) {
      std::size_t found = m.size();
      for (std::size_t i = pivot_row; i < m.size(); ++i)
        if (m[i][col] != 0) { found = i; break; }
      if (found == m.size()) continue;
      std::swap(m[pivot_row], m[found]);
      const int inv = inverse_mod(m[pivot_row][col], p);
      for (auto& e : m[pivot_row]) e = e * inv % p;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == pivot_row || m[i][col] == 0) continue;
        const int c = m[i][col];
        for (int j = 0; j < ell; ++j) m[i][j] = ((m[i][j] - c * m[pivot_row][j]) % p + p) % p;
      }
      ++pivot_row;
    }
    m.resize(pivot_row);
    return m;
  }

  int p_;
  int ell_;
  std::vector<std::vector<int>> rows_;
};

inline constexpr int kMaxSubspacePrime = 7;
inline constexpr int kMaxSubspaceRank = 4;

/// Every subspace of F_p^l exactly once, generated directly as reduced
/// echelon patterns (choose pivot columns, fill the free positions), sorted
/// canonically. Desk-scale guard: p <= 7, l <= 4.
inline std::vector<FpSubspace> enumerate_subspaces(int p, int ell) {
  if (!is_prime(Int(p))) throw PreconditionError("p must be prime");
  if (p > kMaxSubspacePrime || ell > kMaxSubspaceRank || ell < 1)
    throw BoundsError("subspace enumeration limited to p <= 7, l <= 4");

  std::vector<FpSubspace> out;
  for (int d = 0; d <= ell; ++d) {
    // all d-subsets of columns as pivots
    std::vector<int> pivots(d);
    for (int i = 0; i < d; ++i) pivots[i] = i;
    for (;;) {
      // free positions: (row i, col j) with j > pivots[i], j not a pivot
      std::vector<std::pair<int, int>> free_pos;
      std::vector<bool> is_pivot(ell, false);
      for (int c : pivots) is_pivot[c] = true;
      for (int i = 0; i < d; ++i)
        for (int j = pivots[i] + 1; j < ell; ++j)
          if (!is_pivot[j]) free_pos.emplace_back(i, j);

      std::vector<int> fill(free_pos.size(), 0);
      for (;;) {
        std::vector<std::vector<int>> rows(d, std::vector<int>(ell, 0));
        for (int i = 0; i < d; ++i) rows[i][pivots[i]] = 1;
        for (std::size_t f = 0; f < free_pos.size(); ++f)
          rows[free_pos[f].first][free_pos[f].second] = fill[f];
        out.push_back(FpSubspace::from_generators(p, ell, std::move(rows)));

        std::size_t pos = fill.size();
        bool done = true;
        while (pos > 0) {
          --pos;
          if (++fill[pos] < p) { done = false; break; }
          fill[pos] = 0;
        }
        if (done) break;
      }

      // next pivot combination
      int i = d - 1;
      while (i >= 0 && pivots[i] == ell - d + i) --i;
      if (i < 0) break;
      ++pivots[i];
      for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// dim V^H in irreducible units: characters vanishing on H, i.e. orthogonal
/// to every basis row of the subspace.
inline std::int64_t fixed_dim_p(const PTorusRep& v, const FpSubspace& h) {
  if (v.p() != h.p() || v.ell() != h.ell())
    throw RankMismatchError("representation and subgroup live over different groups");
  std::int64_t d = 0;
  for (const auto& [chr, mult] : v.chars()) {
    bool vanishes = true;
    for (const auto& row : h.rows()) {
      long long dot = 0;
      for (int j = 0; j < v.ell(); ++j) dot += static_cast<long long>(chr.vector()[j]) * row[j];
      if (dot % v.p() != 0) { vanishes = false; break; }
    }
    if (vanishes) d += mult;
  }
  return d;
}

struct PDimensionViolation {
  FpSubspace subspace;
  std::int64_t dim_v;
  std::int64_t dim_w;
};

struct PVerdict {
  bool exists;
  std::optional<PDimensionViolation> witness;
};

/// Existence of a (Z_p)^l-equivariant map S(V) -> S(W): the fixed-dimension
/// inequality over every subgroup, checked exhaustively. The witness is the
/// canonically first violating subspace.
inline PVerdict decide_p(const PTorusRep& v, const PTorusRep& w) {
  if (v.p() != w.p() || v.ell() != w.ell())
    throw RankMismatchError("V and W live over different p-tori");
  if (v.is_zero() || w.is_zero())
    throw ZeroRepresentationError("decision inputs must be nonzero representations");
  for (const FpSubspace& h : enumerate_subspaces(v.p(), v.ell())) {
    const std::int64_t dv = fixed_dim_p(v, h);
    const std::int64_t dw = fixed_dim_p(w, h);
    if (dv > dw) return {false, PDimensionViolation{h, dv, dw}};
  }
  return {true, std::nullopt};
}

}  // namespace equimap
