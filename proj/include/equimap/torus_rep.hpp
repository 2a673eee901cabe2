#pragma once

#include "equimap/int_linalg.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace equimap {

/// Character of T^k indexing a nontrivial irreducible. alpha and -alpha give
/// the same real irreducible, so the stored vector is canonicalized to have
/// its first nonzero entry positive.
class Weight {
 public:
  static Weight normalized(IntVector v) {
    auto it = std::find_if(v.begin(), v.end(), [](const Int& e) { return e != 0; });
    if (it == v.end()) throw TrivialSummandError("zero weight (trivial summand)");
    if (*it < 0)
      for (auto& e : v) e = -e;
    return Weight(std::move(v));
  }

  const IntVector& vector() const { return vec_; }
  std::size_t rank() const { return vec_.size(); }

  /// (m_alpha, alpha~): the gcd of the entries and the primitive direction.
  std::pair<Int, Weight> primitive_part() const {
    auto [g, prim] = gcd_primitive(vec_);
    return {std::move(g), Weight(std::move(prim))};
  }

  friend bool operator==(const Weight& a, const Weight& b) { return a.vec_ == b.vec_; }
  friend bool operator<(const Weight& a, const Weight& b) { return a.vec_ < b.vec_; }

 private:
  explicit Weight(IntVector v) : vec_(std::move(v)) {}
  IntVector vec_;
};

inline Weight normalize_weight(IntVector v) { return Weight::normalized(std::move(v)); }

/// Orthogonal T^k-representation without trivial summands: a finite multiset
/// of weights. Immutable; the zero representation (empty multiset) is legal
/// as an intermediate value only.
class TorusRep {
 public:
  explicit TorusRep(std::size_t rank, std::map<Weight, std::int64_t> weights = {})
      : rank_(rank), weights_(std::move(weights)) {
    if (rank_ == 0) throw RankMismatchError("torus rank must be at least 1");
    for (const auto& [w, m] : weights_) {
      if (w.rank() != rank_) throw RankMismatchError("weight length does not match rank");
      if (m <= 0) throw PreconditionError("weight multiplicities must be positive");
    }
  }

  static TorusRep from_weights(std::size_t rank,
                               const std::vector<std::pair<IntVector, std::int64_t>>& terms) {
    std::map<Weight, std::int64_t> ws;
    for (const auto& [vec, mult] : terms) {
      if (mult <= 0) throw PreconditionError("weight multiplicities must be positive");
      ws[Weight::normalized(vec)] += mult;
    }
    return TorusRep(rank, std::move(ws));
  }

  std::size_t rank() const { return rank_; }
  const std::map<Weight, std::int64_t>& weights() const { return weights_; }

  std::int64_t multiplicity(const Weight& w) const {
    auto it = weights_.find(w);
    return it == weights_.end() ? 0 : it->second;
  }

  /// Complex dimension (each weight space is complex one-dimensional).
  std::int64_t dim() const {
    std::int64_t d = 0;
    for (const auto& [w, m] : weights_) d += m;
    return d;
  }

  bool is_zero() const { return weights_.empty(); }
  std::size_t support_size() const { return weights_.size(); }

  friend bool operator==(const TorusRep& a, const TorusRep& b) {
    return a.rank_ == b.rank_ && a.weights_ == b.weights_;
  }

 private:
  std::size_t rank_;
  std::map<Weight, std::int64_t> weights_;
};

inline TorusRep direct_sum(const TorusRep& a, const TorusRep& b) {
  if (a.rank() != b.rank()) throw RankMismatchError("direct sum of representations of different rank");
  std::map<Weight, std::int64_t> ws = a.weights();
  for (const auto& [w, m] : b.weights()) ws[w] += m;
  return TorusRep(a.rank(), std::move(ws));
}

/// Weights of V sharing a primitive direction alpha~, bucketed by the index
/// m (so weight m * alpha~ contributes entries[m] += multiplicity).
struct PrimitiveClass {
  Weight direction;
  std::map<Int, std::int64_t> entries;

  std::int64_t total() const {
    std::int64_t t = 0;
    for (const auto& [m, r] : entries) t += r;
    return t;
  }
};

inline std::map<Weight, PrimitiveClass> primitive_decomposition(const TorusRep& v) {
  std::map<Weight, PrimitiveClass> classes;
  for (const auto& [w, mult] : v.weights()) {
    auto [m, dir] = w.primitive_part();
    auto it = classes.find(dir);
    if (it == classes.end()) it = classes.emplace(dir, PrimitiveClass{dir, {}}).first;
    it->second.entries[m] += mult;
  }
  return classes;
}

/// Closed subgroup H of T^k, identified with its annihilator lattice
/// {chi in Z^k : chi(H) = 1}. The annihilator is canonical (HNF), so value
/// equality is subgroup equality; inclusion is reversed by the duality.
class Subgroup {
 public:
  explicit Subgroup(LatticeBasis annihilator) : annihilator_(std::move(annihilator)) {}

  /// H = T^k itself; only the zero character vanishes on it.
  static Subgroup full_group(std::size_t k) { return Subgroup(hnf(k, {})); }

  /// H = {1}; every character vanishes on it (annihilator = Z^k).
  static Subgroup trivial(std::size_t k) {
    std::vector<IntVector> id(k, IntVector(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    return Subgroup(hnf(k, std::move(id)));
  }

  const LatticeBasis& annihilator() const { return annihilator_; }

  /// Dimension of H as a Lie group: k - rank(annihilator).
  std::size_t torus_dim() const { return annihilator_.ambient_rank() - annihilator_.rank(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.annihilator_ == b.annihilator_;
  }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    return a.annihilator_ < b.annihilator_;
  }

 private:
  LatticeBasis annihilator_;
};

/// K_alpha, the kernel of the character alpha: a (k-1)-dimensional subgroup
/// whose annihilator is the rank-1 lattice Z * alpha.
inline Subgroup kernel_subgroup(const Weight& alpha) {
  return Subgroup(hnf(alpha.rank(), {alpha.vector()}));
}

/// V^H: the weights whose character vanishes on H, i.e. lies in the
/// annihilator lattice. May be the zero representation.
inline TorusRep fixed_subrep(const TorusRep& v, const Subgroup& h) {
  if (h.annihilator().ambient_rank() != v.rank())
    throw RankMismatchError("subgroup and representation have different ambient rank");
  std::map<Weight, std::int64_t> fixed;
  for (const auto& [w, m] : v.weights())
    if (h.annihilator().contains(w.vector())) fixed.emplace(w, m);
  return TorusRep(v.rank(), std::move(fixed));
}

/// Complex dimension of V^H.
inline std::int64_t fixed_dim(const TorusRep& v, const Subgroup& h) {
  if (h.annihilator().ambient_rank() != v.rank())
    throw RankMismatchError("subgroup and representation have different ambient rank");
  std::int64_t d = 0;
  for (const auto& [w, m] : v.weights())
    if (h.annihilator().contains(w.vector())) d += m;
  return d;
}

inline constexpr std::size_t kMaxIsotropySupport = 20;

/// The isotropy subgroups of S(V): annihilators of the lattices spanned by
/// the nonempty subsets of distinct weights, deduplicated via the canonical
/// HNF. Sorted in canonical order. Multiplicities are irrelevant here.
inline std::vector<Subgroup> isotropy_subgroups(const TorusRep& v) {
  if (v.is_zero()) throw ZeroRepresentationError("S(V) is empty: zero representation");
  if (v.support_size() > kMaxIsotropySupport)
    throw BoundsError("isotropy enumeration supports at most 20 distinct weights");
  std::vector<const Weight*> supp;
  supp.reserve(v.support_size());
  for (const auto& [w, m] : v.weights()) supp.push_back(&w);

  std::set<LatticeBasis> seen;
  // Depth-first over index-increasing subsets; each child HNF extends the
  // parent's by one generator, so every subset costs one small reduction.
  auto extend = [&](auto&& self, std::size_t next, const LatticeBasis& current) -> void {
    for (std::size_t j = next; j < supp.size(); ++j) {
      std::vector<IntVector> gens = current.rows();
      gens.push_back(supp[j]->vector());
      LatticeBasis child = hnf(v.rank(), std::move(gens));
      seen.insert(child);
      self(self, j + 1, child);
    }
  };
  extend(extend, 0, hnf(v.rank(), {}));

  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& basis : seen) out.emplace_back(basis);
  return out;
}

}  // namespace equimap
