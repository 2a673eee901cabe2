#pragma once

#include "equimap/torus_rep.hpp"

#include <cstdint>
#include <random>

namespace equimap {

/// Seed-deterministic RNG. mt19937_64 output is pinned by the standard;
/// std::uniform_int_distribution is not, so bounded draws are done here with
/// plain rejection to keep replay exact across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool percent(unsigned pct) { return below(100) < pct; }

 private:
  std::mt19937_64 engine_;
};

/// Size bounds for random instances; defaults match the cross-verification
/// corpus (k <= 3, |supp| <= 5, entries <= 6, multiplicities <= 3).
struct GeneratorBounds {
  std::size_t max_rank = 3;
  std::size_t max_support = 5;
  std::int64_t max_entry = 6;
  std::int64_t max_multiplicity = 3;
};

inline IntVector random_nonzero_vector(Rng& rng, std::size_t k, std::int64_t max_entry) {
  for (;;) {
    IntVector v(k);
    bool nonzero = false;
    for (std::size_t i = 0; i < k; ++i) {
      v[i] = rng.range(-max_entry, max_entry);
      if (v[i] != 0) nonzero = true;
    }
    if (nonzero) return v;
  }
}

inline TorusRep random_rep(Rng& rng, std::size_t rank, const GeneratorBounds& b) {
  const std::size_t count = 1 + rng.below(b.max_support);
  std::vector<std::pair<IntVector, std::int64_t>> terms;
  terms.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    terms.emplace_back(random_nonzero_vector(rng, rank, b.max_entry),
                       rng.range(1, b.max_multiplicity));
  return TorusRep::from_weights(rank, terms);
}

/// Random (V, W) pair over a common rank, mixing independent draws with
/// map-friendly constructions so both verdicts appear with useful frequency.
inline std::pair<TorusRep, TorusRep> random_pair(Rng& rng, const GeneratorBounds& b) {
  const std::size_t rank = 1 + rng.below(b.max_rank);
  const TorusRep v = random_rep(rng, rank, b);
  const std::uint64_t kind = rng.below(10);
  if (kind < 4) return {v, random_rep(rng, rank, b)};
  if (kind < 7) return {v, direct_sum(v, random_rep(rng, rank, b))};
  if (kind < 8) return {v, v};
  return {direct_sum(v, random_rep(rng, rank, b)), v};  // mostly-false direction
}

/// Random sublattice of Z^k: a few random generators canonicalized by HNF.
/// Ranks 0..k all occur.
inline LatticeBasis random_lattice(Rng& rng, std::size_t k, std::int64_t max_entry) {
  const std::size_t count = rng.below(k + 1);
  std::vector<IntVector> gens;
  gens.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    IntVector v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = rng.range(-max_entry, max_entry);
    gens.push_back(std::move(v));
  }
  return hnf(k, std::move(gens));
}

}  // namespace equimap
