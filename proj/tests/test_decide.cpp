#include "equimap/decide.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace equimap;

namespace {

IntVector iv(std::vector<long long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

TorusRep rep(std::size_t k, std::vector<std::pair<std::vector<long long>, std::int64_t>> terms) {
  std::vector<std::pair<IntVector, std::int64_t>> converted;
  for (auto& [vec, mult] : terms) converted.emplace_back(iv(vec), mult);
  return TorusRep::from_weights(k, converted);
}

/// Draws admissible pairs (verdict true) by construction.
std::pair<TorusRep, TorusRep> admissible_pair(Rng& rng, const GeneratorBounds& b) {
  const std::size_t k = 1 + rng.below(b.max_rank);
  const TorusRep v = random_rep(rng, k, b);
  if (rng.percent(30)) return {v, v};
  return {v, direct_sum(v, random_rep(rng, k, b))};
}

}  // namespace

TEST_CASE("condition5 on the running example") {
  auto [v, w] = example_instance();
  const Verdict verdict = condition5(v, w);
  REQUIRE_FALSE(verdict.exists);
  REQUIRE(verdict.witness.has_value());
  const auto& cv = std::get<CountViolation>(*verdict.witness);
  CHECK(cv.direction.vector() == iv({1}));
  CHECK(cv.m == 3);
  CHECK(cv.lhs == 2);
  CHECK(cv.rhs == 1);
}

TEST_CASE("condition5 simple verdicts") {
  const TorusRep v = rep(1, {{{2}, 1}});
  const TorusRep w = rep(1, {{{2}, 1}, {{3}, 1}});
  CHECK(condition5(v, v).exists);
  CHECK(condition5(v, w).exists);  // m=1: 1<=2, m=2: 1<=1
  CHECK_FALSE(condition5(w, v).exists);

  CHECK_THROWS_AS(condition5(v, rep(2, {{{1, 0}, 1}})), RankMismatchError);
  CHECK_THROWS_AS(condition5(v, TorusRep(1)), ZeroRepresentationError);
}

TEST_CASE("condition4 on the running example") {
  auto [v, w] = example_instance();
  const Verdict verdict = condition4(v, w);
  REQUIRE_FALSE(verdict.exists);
  const auto& dv = std::get<DimensionViolation>(*verdict.witness);
  CHECK(dv.subgroup.annihilator().rows() == std::vector<IntVector>{iv({3})});
  CHECK(dv.dim_v == 2);
  CHECK(dv.dim_w == 1);

  CHECK(condition4(v, v).exists);
}

TEST_CASE("condition4 catches a missing tensor power") {
  // V = V_(2,0) admits no map to S(V_(1,0)): the isotropy Z_2 x S^1 fixes all
  // of V but nothing of W.
  const TorusRep v = rep(2, {{{2, 0}, 1}});
  const TorusRep w = rep(2, {{{1, 0}, 1}});
  const Verdict verdict = condition4(v, w);
  REQUIRE_FALSE(verdict.exists);
  const auto& dv = std::get<DimensionViolation>(*verdict.witness);
  CHECK(dv.subgroup.annihilator().rows() == std::vector<IntVector>{iv({2, 0})});
  CHECK(dv.dim_v == 1);
  CHECK(dv.dim_w == 0);

  // the reverse direction exists: z -> z^2 degree-doubling
  CHECK(condition4(w, v).exists);
  CHECK(condition5(w, v).exists);
}

TEST_CASE("condition3 on the running example") {
  auto [v, w] = example_instance();
  const Verdict verdict = condition3(v, w);
  REQUIRE_FALSE(verdict.exists);
  const auto& dv = std::get<DimensionViolation>(*verdict.witness);
  CHECK(dv.subgroup.annihilator().rows() == std::vector<IntVector>{iv({3})});

  CHECK(condition3(v, direct_sum(v, w)).exists);
}

TEST_CASE("condition2 on the running example") {
  auto [v, w] = example_instance();

  // the top-level divisibility alone passes ...
  CHECK(euler_divides(euler_class(v), euler_class(w)));
  // ... but at H = Z_3: e(V^H) = 9t^2 does not divide e(W^H) = 18t
  const Subgroup z3 = kernel_subgroup(normalize_weight(iv({3})));
  CHECK(render_euler(euler_class(fixed_subrep(v, z3))) == "9*t^2");
  CHECK(render_euler(euler_class(fixed_subrep(w, z3))) == "18*t^1");

  const Verdict verdict = condition2(v, w);
  REQUIRE_FALSE(verdict.exists);
  const auto& ev = std::get<EulerViolation>(*verdict.witness);
  CHECK(ev.subgroup.annihilator().rows() == std::vector<IntVector>{iv({3})});

  CHECK(condition2(v, v).exists);
}

TEST_CASE("euler divisibility alone does not grant existence (pinned regression)") {
  auto [v, w] = example_instance();
  CHECK(euler_divides(euler_class(v), euler_class(w)));
  CHECK_FALSE(decide_map_exists(v, w).exists);
}

TEST_CASE("decide_map_exists delegates to condition 5") {
  auto [v, w] = example_instance();
  const Verdict verdict = decide_map_exists(v, w);
  CHECK_FALSE(verdict.exists);
  CHECK(verdict.condition_used == Criterion::C5);
  CHECK(decide_map_exists(v, v).exists);
}

TEST_CASE("extend_domain examples") {
  const TorusRep v = rep(1, {{{2}, 1}});
  const TorusRep w = rep(1, {{{2}, 1}, {{3}, 1}});
  CHECK(extend_domain(v, w) == rep(1, {{{2}, 1}, {{1}, 1}}));

  CHECK(extend_domain(w, w) == w);

  const TorusRep v2 = rep(2, {{{1, 0}, 1}});
  const TorusRep w2 = rep(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  CHECK(extend_domain(v2, w2) == w2);

  auto [pv, pw] = example_instance();
  CHECK_THROWS_AS(extend_domain(pv, pw), PreconditionError);
}

TEST_CASE("extend_domain postconditions on random admissible pairs") {
  Rng rng(10001);
  const GeneratorBounds b;
  for (int trial = 0; trial < 200; ++trial) {
    auto [v, w] = admissible_pair(rng, b);
    REQUIRE(decide_map_exists(v, w).exists);
    const TorusRep vp = extend_domain(v, w);
    CHECK(vp.dim() == w.dim());
    for (const auto& [weight, mult] : v.weights()) CHECK(vp.multiplicity(weight) >= mult);
    for (const auto& [dir, cls] : primitive_decomposition(w))
      CHECK(fixed_dim(vp, kernel_subgroup(dir)) == fixed_dim(w, kernel_subgroup(dir)));
    CHECK(decide_map_exists(vp, w).exists);
  }
}

TEST_CASE("closed subgroup sampling respects true verdicts") {
  auto [v, w] = example_instance();
  const TorusRep sum = direct_sum(v, w);
  const auto report = check_all_closed_subgroups(v, sum, 300, 42);
  CHECK(report.passed());
  CHECK(report.seed == 42);
  CHECK(report.samples == 300);

  CHECK_THROWS_AS(check_all_closed_subgroups(v, w, 10, 42), PreconditionError);
}

TEST_CASE("cross verification agrees on a small random corpus") {
  const CrossVerifyReport report = cross_verify(300, GeneratorBounds{}, 777);
  CHECK(report.passed());
  CHECK(report.agreements == 300);
  CHECK(report.true_verdicts > 30);               // both verdicts well represented
  CHECK(report.true_verdicts < 270);
  CHECK(report.seed == 777);
}

TEST_CASE("biased corpus: W = V + anything always admits a map") {
  Rng rng(10002);
  const GeneratorBounds b;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 1 + rng.below(b.max_rank);
    const TorusRep v = random_rep(rng, k, b);
    const TorusRep w = direct_sum(v, random_rep(rng, k, b));
    CHECK(condition2(v, w).exists);
    CHECK(condition3(v, w).exists);
    CHECK(condition4(v, w).exists);
    CHECK(condition5(v, w).exists);
  }
}

TEST_CASE("decision algebra: reflexive, transitive, target monotone") {
  Rng rng(10003);
  const GeneratorBounds b;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng.below(b.max_rank);
    const TorusRep v = random_rep(rng, k, b);
    CHECK(decide_map_exists(v, v).exists);
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto [v, w] = admissible_pair(rng, b);
    const TorusRep u = rng.percent(40) ? w : direct_sum(w, random_rep(rng, v.rank(), b));
    REQUIRE(decide_map_exists(v, w).exists);
    REQUIRE(decide_map_exists(w, u).exists);
    CHECK(decide_map_exists(v, u).exists);
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto [v, w] = admissible_pair(rng, b);
    const TorusRep bigger = direct_sum(w, random_rep(rng, v.rank(), b));
    CHECK(decide_map_exists(v, bigger).exists);
  }
}

TEST_CASE("necessity: existence forces dimension and euler divisibility") {
  Rng rng(10004);
  const GeneratorBounds b;
  int true_count = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto [v, w] = random_pair(rng, b);
    if (!decide_map_exists(v, w).exists) continue;
    ++true_count;
    CHECK(v.dim() <= w.dim());
    CHECK(euler_divides(euler_class(v), euler_class(w)));
  }
  CHECK(true_count > 50);
}
