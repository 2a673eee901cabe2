#pragma once

#include "equimap/euler.hpp"
#include "equimap/generator.hpp"

#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace equimap {

/// Which of the four equivalent criteria produced a verdict.
enum class Criterion { C2, C3, C4, C5 };

inline const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::C2: return "C2";
    case Criterion::C3: return "C3";
    case Criterion::C4: return "C4";
    case Criterion::C5: return "C5";
  }
  return "?";
}

/// Violation of the per-direction counting inequality: for direction alpha~
/// and modulus m, the V-side sum lhs exceeded the W-side sum rhs.
struct CountViolation {
  Weight direction;
  Int m;
  std::int64_t lhs;
  std::int64_t rhs;
};

/// dim V^H > dim W^H at the given subgroup.
struct DimensionViolation {
  Subgroup subgroup;
  std::int64_t dim_v;
  std::int64_t dim_w;
};

/// e(V^H) does not divide e(W^H) at the given subgroup.
struct EulerViolation {
  Subgroup subgroup;
};

using Witness = std::variant<CountViolation, DimensionViolation, EulerViolation>;

struct Verdict {
  bool exists;
  std::optional<Witness> witness;  // present exactly when exists is false
  Criterion condition_used;
};

namespace detail {

inline void check_decision_inputs(const TorusRep& v, const TorusRep& w) {
  if (v.rank() != w.rank())
    throw RankMismatchError("V and W live over tori of different rank");
  if (v.is_zero() || w.is_zero())
    throw ZeroRepresentationError("decision inputs must be nonzero representations");
}

}  // namespace detail

/// Criterion (5): for every primitive direction alpha~ of V and every m, the
/// multiplicity of weights m' * alpha~ with m | m' in V is dominated by the
/// same count in W. Only m in {1} union {divisors of the class indices} can
/// make the left sum nonzero, so the quantifier is finite. Violations are
/// reported at the lexicographically smallest (alpha~, m).
inline Verdict condition5(const TorusRep& v, const TorusRep& w) {
  detail::check_decision_inputs(v, w);
  const auto cv = primitive_decomposition(v);
  const auto cw = primitive_decomposition(w);
  for (const auto& [dir, cls] : cv) {
    const auto wit = cw.find(dir);
    const PrimitiveClass* wcls = wit == cw.end() ? nullptr : &wit->second;
    std::set<Int> moduli{Int(1)};
    for (const auto& [m, r] : cls.entries)
      for (const auto& d : divisors_of(m)) moduli.insert(d);
    for (const Int& m : moduli) {
      std::int64_t lhs = 0;
      for (const auto& [ma, r] : cls.entries)
        if (ma % m == 0) lhs += r;
      std::int64_t rhs = 0;
      if (wcls)
        for (const auto& [mb, q] : wcls->entries)
          if (mb % m == 0) rhs += q;
      if (lhs > rhs)
        return {false, CountViolation{dir, m, lhs, rhs}, Criterion::C5};
    }
  }
  return {true, std::nullopt, Criterion::C5};
}

namespace detail {

inline Verdict condition_by_dims(const TorusRep& v, const TorusRep& w, bool corank1_only,
                                 Criterion which) {
  check_decision_inputs(v, w);
  for (const Subgroup& h : isotropy_subgroups(v)) {
    if (corank1_only && h.annihilator().rank() != 1) continue;
    const std::int64_t dv = fixed_dim(v, h);
    const std::int64_t dw = fixed_dim(w, h);
    if (dv > dw) return {false, DimensionViolation{h, dv, dw}, which};
  }
  return {true, std::nullopt, which};
}

}  // namespace detail

/// Criterion (3): dim V^H <= dim W^H over every isotropy subgroup of S(V).
inline Verdict condition3(const TorusRep& v, const TorusRep& w) {
  return detail::condition_by_dims(v, w, false, Criterion::C3);
}

/// Criterion (4): the same inequality, but only over the (k-1)-dimensional
/// isotropy subgroups (annihilator rank 1).
inline Verdict condition4(const TorusRep& v, const TorusRep& w) {
  return detail::condition_by_dims(v, w, true, Criterion::C4);
}

/// Criterion (2): e(V^H) divides e(W^H) over every isotropy subgroup of
/// S(V). The zero fixed representation contributes the unit class.
inline Verdict condition2(const TorusRep& v, const TorusRep& w) {
  detail::check_decision_inputs(v, w);
  for (const Subgroup& h : isotropy_subgroups(v)) {
    const EulerClass ev = euler_class(fixed_subrep(v, h));
    const EulerClass ew = euler_class(fixed_subrep(w, h));
    if (!euler_divides(ev, ew)) return {false, EulerViolation{h}, Criterion::C2};
  }
  return {true, std::nullopt, Criterion::C2};
}

/// THE decision: a G-equivariant map S(V) -> S(W) exists iff criterion (5)
/// holds. (2)-(4) are kept as independently coded cross-checks.
inline Verdict decide_map_exists(const TorusRep& v, const TorusRep& w) {
  return condition5(v, w);
}

/// Domain extension: given an existing map verdict and dim V <= dim W, pad V
/// with primitive weights so that every primitive direction of W reaches the
/// same fixed dimension, giving V' with V <= V', dim V' = dim W and an
/// unchanged verdict.
inline TorusRep extend_domain(const TorusRep& v, const TorusRep& w) {
  const Verdict d = decide_map_exists(v, w);
  if (!d.exists)
    throw PreconditionError("no equivariant map S(V) -> S(W); nothing to extend");
  if (v.dim() > w.dim()) throw PreconditionError("dim V exceeds dim W");
  const auto cv = primitive_decomposition(v);
  const auto cw = primitive_decomposition(w);
  std::map<Weight, std::int64_t> padded = v.weights();
  for (const auto& [dir, wcls] : cw) {
    std::int64_t have = 0;
    const auto it = cv.find(dir);
    if (it != cv.end()) have = it->second.total();
    const std::int64_t deficit = wcls.total() - have;  // >= 0 once the verdict is true
    if (deficit > 0) padded[dir] += deficit;
  }
  return TorusRep(v.rank(), std::move(padded));
}

/// Randomized check that a true verdict satisfies dim V^H <= dim W^H for
/// arbitrary closed subgroups, not just isotropy ones. A counterexample
/// would falsify the implementation, not the mathematics.
struct ClosedSubgroupCheckReport {
  std::uint64_t seed = 0;
  int samples = 0;
  std::optional<DimensionViolation> counterexample;

  bool passed() const { return !counterexample.has_value(); }
};

inline ClosedSubgroupCheckReport check_all_closed_subgroups(const TorusRep& v, const TorusRep& w,
                                                            int samples, std::uint64_t seed) {
  if (!decide_map_exists(v, w).exists)
    throw PreconditionError("closed-subgroup check expects a pair with an existing map");
  ClosedSubgroupCheckReport report;
  report.seed = seed;
  report.samples = samples;
  Rng rng(seed);
  const std::size_t k = v.rank();
  for (int s = 0; s < samples; ++s) {
    Subgroup h = [&] {
      if (s == 0) return Subgroup::full_group(k);
      if (s == 1) return Subgroup::trivial(k);
      return Subgroup(random_lattice(rng, k, 9));
    }();
    const std::int64_t dv = fixed_dim(v, h);
    const std::int64_t dw = fixed_dim(w, h);
    if (dv > dw) {
      report.counterexample = DimensionViolation{h, dv, dw};
      return report;
    }
  }
  return report;
}

/// One disagreeing instance from the equivalence harness, dumped in full.
struct CrossVerifyDisagreement {
  TorusRep v;
  TorusRep w;
  bool c2, c3, c4, c5;
};

struct CrossVerifyReport {
  std::uint64_t seed = 0;
  GeneratorBounds bounds;
  int instances = 0;
  int agreements = 0;
  int true_verdicts = 0;
  std::vector<CrossVerifyDisagreement> disagreements;

  bool passed() const { return disagreements.empty(); }
};

/// Pinned regression instance: V = 2 V^3 + V^5 against W = V^18 + 2 V^5
/// over the circle. e(V) divides e(W) yet no equivariant map exists.
inline std::pair<TorusRep, TorusRep> example_instance() {
  return {TorusRep::from_weights(1, {{{3}, 2}, {{5}, 1}}),
          TorusRep::from_weights(1, {{{18}, 1}, {{5}, 2}})};
}

/// Runs criteria (2)-(5) on random instances and demands four-way verdict
/// agreement. Instance 0 is always the fixed regression example above.
inline CrossVerifyReport cross_verify(int instance_count, const GeneratorBounds& bounds,
                                      std::uint64_t seed) {
  CrossVerifyReport report;
  report.seed = seed;
  report.bounds = bounds;
  report.instances = instance_count;
  Rng rng(seed);
  for (int i = 0; i < instance_count; ++i) {
    auto [v, w] = i == 0 ? example_instance() : random_pair(rng, bounds);
    const bool c2 = condition2(v, w).exists;
    const bool c3 = condition3(v, w).exists;
    const bool c4 = condition4(v, w).exists;
    const bool c5 = condition5(v, w).exists;
    if (c2 == c3 && c3 == c4 && c4 == c5) {
      ++report.agreements;
      if (c5) ++report.true_verdicts;
    } else {
      report.disagreements.push_back({v, w, c2, c3, c4, c5});
    }
  }
  return report;
}

}  // namespace equimap
