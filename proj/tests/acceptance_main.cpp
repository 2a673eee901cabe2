// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances and runtime budget in code.

#include "equimap/report.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace equimap;

namespace {

struct Criterion {
  std::string name;
  double budget_seconds;
  bool passed = true;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& message) {
    if (!ok) {
      passed = false;
      if (failures.size() < 8) failures.push_back(message);
    }
  }
};

int g_failed = 0;

void report(Criterion& c, double elapsed) {
  if (elapsed > c.budget_seconds)
    c.require(false, "runtime " + std::to_string(elapsed) + "s exceeds budget " +
                         std::to_string(c.budget_seconds) + "s");
  char line[256];
  std::snprintf(line, sizeof(line), "[%s] %s (%.2f s)", c.passed ? "PASS" : "FAIL",
                c.name.c_str(), elapsed);
  std::cout << line << "\n";
  for (const auto& f : c.failures) std::cout << "       - " << f << "\n";
  if (!c.passed) ++g_failed;
}

template <typename F>
void criterion(const std::string& name, double budget_seconds, F&& body) {
  Criterion c{name, budget_seconds, true, {}};
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("unexpected exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(c, elapsed);
}

const char* kExampleText =
    "torus k=1\n"
    "V = 2*(3) + 1*(5)\n"
    "W = 1*(18) + 2*(5)\n";

IntVector iv(std::vector<long long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

// ---- criterion 1: the running example, end to end -------------------------

void check_cli_binary(Criterion& c) {
#ifdef EQUIMAP_CLI_PATH
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path input = dir / "equimap_acceptance_input.txt";
  const fs::path output = dir / "equimap_acceptance_output.json";
  {
    std::ofstream out(input);
    out << kExampleText;
  }
  const std::string cmd = std::string(EQUIMAP_CLI_PATH) + " decide --file " + input.string() +
                          " --json > " + output.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  c.require(WIFEXITED(status) && WEXITSTATUS(status) == 1,
            "CLI decide exit code should be 1 for the example instance");
  std::ifstream in(output);
  std::stringstream buf;
  buf << in.rdbuf();
  const Json parsed = Json::parse(buf.str(), nullptr, false);
  c.require(!parsed.is_discarded(), "CLI --json output must parse as JSON");
  if (!parsed.is_discarded()) {
    c.require(parsed.at("verdict").at("witness").at("kind") == "count_violation",
              "CLI witness kind");
    c.require(parsed.at("verdict").at("witness").at("m") == "3", "CLI witness m");
  }
  fs::remove(input);
  fs::remove(output);
#else
  (void)c;
#endif
}

void criterion_example_regression(Criterion& c) {
  const RunResult euler = run("euler", kExampleText, {});
  c.require(euler.report.at("e_V").at("rendered") == "45*t^3", "e(V) must render as 45*t^3");
  c.require(euler.report.at("e_W").at("rendered") == "450*t^3", "e(W) must render as 450*t^3");
  c.require(euler.report.at("divides") == true, "e(V) must divide e(W)");

  const RunResult decide = run("decide", kExampleText, {});
  c.require(decide.exit_code == 1, "decide must exit 1");
  const auto& witness = decide.report.at("verdict").at("witness");
  c.require(witness.at("kind") == "count_violation", "witness kind");
  c.require(witness.at("direction") == Json::parse(R"(["1"])"), "witness direction (1)");
  c.require(witness.at("m") == "3", "witness m = 3");
  c.require(witness.at("lhs") == 2, "witness lhs = 2");
  c.require(witness.at("rhs") == 1, "witness rhs = 1");

  const RunResult fixdim = run("fixdim", kExampleText, {});
  bool found = false;
  for (const auto& row : fixdim.report.at("rows"))
    if (row.at("subgroup").at("rows") == Json::parse(R"([["3"]])")) {
      found = true;
      c.require(row.at("dim_V") == 2, "dim V^(Z_3) = 2");
      c.require(row.at("dim_W") == 1, "dim W^(Z_3) = 1");
    }
  c.require(found, "fixdim must include the order-3 subgroup");

  check_cli_binary(c);
}

// ---- criterion 2: four-way equivalence on 10^4 instances -------------------

void criterion_equivalence(Criterion& c) {
  const CrossVerifyReport r = cross_verify(10000, GeneratorBounds{}, 20240801);
  c.require(r.instances == 10000, "must run 10^4 instances");
  c.require(r.passed(), "criteria (2)-(5) must agree on every instance");
  c.require(r.agreements == r.instances, "agreement count must equal instance count");
  for (const auto& d : r.disagreements)
    c.require(false, "disagreement at k=" + std::to_string(d.v.rank()) + " V=" + render_rep(d.v) +
                         " W=" + render_rep(d.w));
  c.require(r.true_verdicts > 1000 && r.true_verdicts < 9000,
            "both verdicts should be well represented");
}

// ---- criterion 3: factored divisibility vs dense polynomial division -------

EulerClass random_factored(Rng& rng, std::size_t k, std::int64_t max_degree) {
  const Int content = rng.range(1, 60);
  std::map<Weight, std::int64_t> factors;
  std::int64_t degree_left = max_degree;
  const std::uint64_t parts = rng.below(4);
  for (std::uint64_t i = 0; i < parts && degree_left > 0; ++i) {
    auto [g, dir] = gcd_primitive(random_nonzero_vector(rng, k, 5));
    const std::int64_t exp = rng.range(1, std::min<std::int64_t>(3, degree_left));
    factors[normalize_weight(dir)] += exp;
    degree_left -= exp;
  }
  return EulerClass(k, content, std::move(factors));
}

void criterion_euler_oracle(Criterion& c) {
  Rng rng(20240802);
  int true_cases = 0;
  const int total = 1000;
  for (int i = 0; i < total; ++i) {
    const std::size_t k = 1 + rng.below(2);
    const EulerClass a = random_factored(rng, k, 4);
    const EulerClass b =
        rng.percent(50) ? random_factored(rng, k, 8) : a * random_factored(rng, k, 4);
    const bool fast = euler_divides(a, b);
    const bool slow = dense_divides(expand(a), expand(b));
    if (fast != slow)
      c.require(false, "divergence at " + render_euler(a) + " vs " + render_euler(b));
    if (fast) ++true_cases;
  }
  c.require(true_cases > 150 && true_cases < 900, "both outcomes should be well represented");
}

// ---- criterion 4: fixed dimensions vs finite-subgroup brute force ----------

void criterion_fixed_point_oracle(Criterion& c) {
  Rng rng(20240803);
  int checked = 0;
  while (checked < 500) {
    const std::size_t k = 1 + rng.below(3);
    // full-rank HNF with bounded determinant, built directly in normal form
    std::vector<IntVector> rows(k, IntVector(k, 0));
    Int det = 1;
    for (std::size_t i = 0; i < k; ++i) {
      const std::int64_t d = rng.range(1, 6);
      rows[i][i] = d;
      det *= d;
    }
    if (det > 200) continue;
    for (std::size_t col = 1; col < k; ++col)
      for (std::size_t above = 0; above < col; ++above)
        rows[above][col] = Int(rng.below(rows[col][col].convert_to<std::uint64_t>()));
    const LatticeBasis basis = hnf(k, rows);
    if (basis.rows() != rows) {
      c.require(false, "constructed matrix was not already in normal form");
      return;
    }
    ++checked;
    const Subgroup h(basis);
    const TorusRep v = random_rep(rng, k, GeneratorBounds{});
    const auto points = annihilator_elements(basis);
    if (Int(points.size()) != det) {
      c.require(false, "subgroup order must equal the determinant");
      return;
    }
    std::int64_t brute = 0;
    for (const auto& [w, mult] : v.weights()) {
      bool fixed = true;
      for (const auto& theta : points) {
        Rational dot = 0;
        for (std::size_t j = 0; j < k; ++j) dot += Rational(w.vector()[j]) * theta[j];
        if (denominator(dot) != 1) {
          fixed = false;
          break;
        }
      }
      if (fixed) brute += mult;
    }
    if (fixed_dim(v, h) != brute) {
      c.require(false, "fixed_dim mismatch at instance " + std::to_string(checked));
      return;
    }
  }
}

// ---- criterion 5: content valuation vs the telescoped class sums -----------

void criterion_content_valuation(Criterion& c) {
  Rng rng(20240804);
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = 1 + rng.below(3);
    const TorusRep v = random_rep(rng, k, GeneratorBounds{});
    const EulerClass e = euler_class(v);
    for (int p : {2, 3, 5, 7, 11, 13}) {
      std::int64_t telescoped = 0;
      for (const auto& [dir, cls] : primitive_decomposition(v))
        for (const auto& [m, mult] : cls.entries) {
          Int power = p;
          while (m % power == 0) {
            telescoped += mult;
            power *= p;
          }
        }
      if (content_p_valuation(e, p) != telescoped) {
        c.require(false, "valuation mismatch at p=" + std::to_string(p) + " V=" + render_rep(v));
        return;
      }
    }
  }
}

// ---- criterion 6: domain extension postconditions --------------------------

void criterion_domain_extension(Criterion& c) {
  Rng rng(20240805);
  int checked = 0;
  while (checked < 500) {
    const std::size_t k = 1 + rng.below(3);
    const TorusRep v = random_rep(rng, k, GeneratorBounds{});
    const TorusRep w = direct_sum(v, random_rep(rng, k, GeneratorBounds{}));
    if (v.dim() >= w.dim()) continue;  // need a strict deficit
    ++checked;
    const TorusRep vp = extend_domain(v, w);
    if (vp.dim() != w.dim()) {
      c.require(false, "dim V' must equal dim W");
      return;
    }
    for (const auto& [weight, mult] : v.weights())
      if (vp.multiplicity(weight) < mult) {
        c.require(false, "V must embed into V'");
        return;
      }
    for (const auto& [dir, cls] : primitive_decomposition(w))
      if (fixed_dim(vp, kernel_subgroup(dir)) != fixed_dim(w, kernel_subgroup(dir))) {
        c.require(false, "per-direction fixed dimensions must match W");
        return;
      }
    if (!decide_map_exists(vp, w).exists) {
      c.require(false, "extension must preserve the verdict");
      return;
    }
  }
}

// ---- criterion 7: reflexivity, transitivity, target monotonicity -----------

void criterion_decision_algebra(Criterion& c) {
  Rng rng(20240806);
  const GeneratorBounds b;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng.below(b.max_rank);
    const TorusRep v = random_rep(rng, k, b);
    if (!decide_map_exists(v, v).exists) {
      c.require(false, "reflexivity failed at V=" + render_rep(v));
      return;
    }
  }
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng.below(b.max_rank);
    const TorusRep v = random_rep(rng, k, b);
    const TorusRep w = rng.percent(25) ? v : direct_sum(v, random_rep(rng, k, b));
    const TorusRep u = rng.percent(25) ? w : direct_sum(w, random_rep(rng, k, b));
    if (!decide_map_exists(v, w).exists || !decide_map_exists(w, u).exists) {
      c.require(false, "chain premises must hold by construction");
      return;
    }
    if (!decide_map_exists(v, u).exists) {
      c.require(false, "transitivity failed at V=" + render_rep(v) + " U=" + render_rep(u));
      return;
    }
  }
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng.below(b.max_rank);
    const TorusRep v = random_rep(rng, k, b);
    const TorusRep w = rng.percent(50) ? v : direct_sum(v, random_rep(rng, k, b));
    const TorusRep z = random_rep(rng, k, b);
    if (!decide_map_exists(v, direct_sum(w, z)).exists) {
      c.require(false, "target monotonicity failed at V=" + render_rep(v));
      return;
    }
  }
}

// ---- criterion 8: p-torus decisions and subspace counts --------------------

Int gaussian_binomial(int ell, int d, int p) {
  Int num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    num *= pow(Int(p), static_cast<unsigned>(ell - i)) - 1;
    den *= pow(Int(p), static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

void criterion_ptorus(Criterion& c) {
  const PTorusRep v = PTorusRep::from_chars(2, 2, {{{1, 0}, 1}});
  const PTorusRep w = PTorusRep::from_chars(2, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
  c.require(decide_p(v, w).exists, "forward F_2^2 pair must admit a map");

  const PVerdict rev = decide_p(w, v);
  c.require(!rev.exists, "reversed F_2^2 pair must not admit a map");
  c.require(rev.witness.has_value() && rev.witness->subspace == FpSubspace::zero_space(2, 2),
            "witness must be the zero subspace");
  if (rev.witness) {
    c.require(rev.witness->dim_v == 2 && rev.witness->dim_w == 1, "witness dims must be (2, 1)");
  }

  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      Int expected = 0;
      for (int d = 0; d <= ell; ++d) expected += gaussian_binomial(ell, d, p);
      const auto subs = enumerate_subspaces(p, ell);
      if (Int(subs.size()) != expected) {
        c.require(false, "subspace count mismatch at p=" + std::to_string(p) +
                             " l=" + std::to_string(ell));
      }
    }
}

}  // namespace

int main() {
  std::cout << "equimap acceptance suite\n";
  criterion("running-example regression", 1.0, criterion_example_regression);
  criterion("four-criteria equivalence on 10^4 instances", 300.0, criterion_equivalence);
  criterion("euler divisibility oracle on 10^3 pairs", 60.0, criterion_euler_oracle);
  criterion("fixed-point brute-force oracle on 500 finite subgroups", 120.0,
            criterion_fixed_point_oracle);
  criterion("content valuation telescoped counting on 500 instances", 60.0,
            criterion_content_valuation);
  criterion("domain extension postconditions on 500 pairs", 60.0, criterion_domain_extension);
  criterion("decision algebra: reflexive, transitive, monotone", 120.0,
            criterion_decision_algebra);
  criterion("p-torus decisions and subspace counts", 30.0, criterion_ptorus);

  if (g_failed == 0) {
    std::cout << "ACCEPTANCE: all 8 criteria passed\n";
    return 0;
  }
  std::cout << "ACCEPTANCE: " << g_failed << " criteria FAILED\n";
  return 1;
}
