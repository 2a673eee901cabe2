#pragma once

#include "equimap/decide.hpp"
#include "equimap/ptorus.hpp"
#include "equimap/instance_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace equimap {

/// Machine-readable reports are ordered JSON documents; the human rendering
/// is derived from them, never the reverse. All potentially large integers
/// are carried as decimal strings.
using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "equimap";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

struct RunOptions {
  std::uint64_t seed = 12345;
  int instances = 1000;
  bool real_dims = false;
  bool all_conditions = false;
};

struct RunResult {
  Json report;
  int exit_code;  // 0 exists/passed, 1 violation found, 2 usage or parse error
};

// ---------- serialization ----------

inline Json weight_to_json(const Weight& w) {
  Json arr = Json::array();
  for (const auto& e : w.vector()) arr.push_back(e.str());
  return arr;
}

inline Weight weight_from_json(const Json& j) {
  IntVector v;
  for (const auto& e : j) v.emplace_back(e.get<std::string>());
  return Weight::normalized(std::move(v));
}

inline Json lattice_to_json(const LatticeBasis& b) {
  Json rows = Json::array();
  for (const auto& r : b.rows()) {
    Json row = Json::array();
    for (const auto& e : r) row.push_back(e.str());
    rows.push_back(std::move(row));
  }
  Json out;
  out["ambient_rank"] = b.ambient_rank();
  out["rows"] = std::move(rows);
  return out;
}

inline LatticeBasis lattice_from_json(const Json& j) {
  std::vector<IntVector> rows;
  for (const auto& row : j.at("rows")) {
    IntVector r;
    for (const auto& e : row) r.emplace_back(e.get<std::string>());
    rows.push_back(std::move(r));
  }
  return hnf(j.at("ambient_rank").get<std::size_t>(), std::move(rows));
}

inline Json witness_to_json(const Witness& witness) {
  Json out;
  if (const auto* cv = std::get_if<CountViolation>(&witness)) {
    out["kind"] = "count_violation";
    out["direction"] = weight_to_json(cv->direction);
    out["m"] = cv->m.str();
    out["lhs"] = cv->lhs;
    out["rhs"] = cv->rhs;
  } else if (const auto* dv = std::get_if<DimensionViolation>(&witness)) {
    out["kind"] = "dimension_violation";
    out["subgroup"] = lattice_to_json(dv->subgroup.annihilator());
    out["dim_V"] = dv->dim_v;
    out["dim_W"] = dv->dim_w;
  } else {
    const auto& ev = std::get<EulerViolation>(witness);
    out["kind"] = "euler_violation";
    out["subgroup"] = lattice_to_json(ev.subgroup.annihilator());
  }
  return out;
}

inline Witness witness_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "count_violation")
    return CountViolation{weight_from_json(j.at("direction")), Int(j.at("m").get<std::string>()),
                          j.at("lhs").get<std::int64_t>(), j.at("rhs").get<std::int64_t>()};
  if (kind == "dimension_violation")
    return DimensionViolation{Subgroup(lattice_from_json(j.at("subgroup"))),
                              j.at("dim_V").get<std::int64_t>(),
                              j.at("dim_W").get<std::int64_t>()};
  if (kind == "euler_violation")
    return EulerViolation{Subgroup(lattice_from_json(j.at("subgroup")))};
  throw PreconditionError("unknown witness kind: " + kind);
}

inline Json verdict_to_json(const Verdict& v) {
  Json out;
  out["exists"] = v.exists;
  out["condition"] = criterion_name(v.condition_used);
  if (v.witness) out["witness"] = witness_to_json(*v.witness);
  return out;
}

inline Verdict verdict_from_json(const Json& j) {
  Verdict v{j.at("exists").get<bool>(), std::nullopt, Criterion::C5};
  const std::string cond = j.at("condition").get<std::string>();
  if (cond == "C2") v.condition_used = Criterion::C2;
  else if (cond == "C3") v.condition_used = Criterion::C3;
  else if (cond == "C4") v.condition_used = Criterion::C4;
  else if (cond == "C5") v.condition_used = Criterion::C5;
  else throw PreconditionError("unknown condition tag: " + cond);
  if (j.contains("witness")) v.witness = witness_from_json(j.at("witness"));
  return v;
}

inline bool witness_equal(const Witness& a, const Witness& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ca = std::get_if<CountViolation>(&a)) {
    const auto& cb = std::get<CountViolation>(b);
    return ca->direction == cb.direction && ca->m == cb.m && ca->lhs == cb.lhs &&
           ca->rhs == cb.rhs;
  }
  if (const auto* da = std::get_if<DimensionViolation>(&a)) {
    const auto& db = std::get<DimensionViolation>(b);
    return da->subgroup == db.subgroup && da->dim_v == db.dim_v && da->dim_w == db.dim_w;
  }
  return std::get<EulerViolation>(a).subgroup == std::get<EulerViolation>(b).subgroup;
}

inline bool verdict_equal(const Verdict& a, const Verdict& b) {
  if (a.exists != b.exists || a.condition_used != b.condition_used) return false;
  if (a.witness.has_value() != b.witness.has_value()) return false;
  return !a.witness || witness_equal(*a.witness, *b.witness);
}

inline Json euler_to_json(const EulerClass& e) {
  Json factors = Json::array();
  for (const auto& [dir, exp] : e.factors()) {
    Json f;
    f["direction"] = weight_to_json(dir);
    f["exponent"] = exp;
    factors.push_back(std::move(f));
  }
  Json out;
  out["content"] = e.content().str();
  out["factors"] = std::move(factors);
  out["degree"] = e.total_degree();
  out["rendered"] = render_euler(e);
  return out;
}

inline Json subspace_to_json(const FpSubspace& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows()) rows.push_back(r);
  Json out;
  out["p"] = s.p();
  out["l"] = s.ell();
  out["dim"] = s.dim();
  out["rows"] = std::move(rows);
  return out;
}

inline Json pverdict_to_json(const PVerdict& v) {
  Json out;
  out["exists"] = v.exists;
  if (v.witness) {
    Json w;
    w["kind"] = "subspace_violation";
    w["subspace"] = subspace_to_json(v.witness->subspace);
    w["dim_V"] = v.witness->dim_v;
    w["dim_W"] = v.witness->dim_w;
    out["witness"] = std::move(w);
  }
  return out;
}

// ---------- human-readable fragments ----------

inline std::string render_weight_tuple(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.rank(); ++i) {
    if (i) s += ",";
    s += w.vector()[i].str();
  }
  return s + ")";
}

inline std::string render_lattice(const LatticeBasis& b) {
  std::string s = "{";
  for (std::size_t i = 0; i < b.rows().size(); ++i) {
    if (i) s += ", ";
    s += "(";
    for (std::size_t j = 0; j < b.ambient_rank(); ++j) {
      if (j) s += ",";
      s += b.rows()[i][j].str();
    }
    s += ")";
  }
  return s + "}";
}

namespace detail {

inline std::string render_json_lattice(const Json& j) {
  std::string s = "ann{";
  const auto& rows = j.at("rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) s += ", ";
    s += "(";
    const auto& row = rows[i];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) s += ",";
      s += row[c].get<std::string>();
    }
    s += ")";
  }
  return s + "}";
}

inline std::string render_json_weight(const Json& j) {
  std::string s = "(";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) s += ",";
    s += j[i].get<std::string>();
  }
  return s + ")";
}

inline std::string render_json_witness(const Json& w) {
  const std::string kind = w.at("kind").get<std::string>();
  if (kind == "count_violation")
    return "direction " + render_json_weight(w.at("direction")) + ", m = " +
           w.at("m").get<std::string>() + ": V-side count " +
           std::to_string(w.at("lhs").get<std::int64_t>()) + " > W-side count " +
           std::to_string(w.at("rhs").get<std::int64_t>());
  if (kind == "dimension_violation")
    return "H = " + render_json_lattice(w.at("subgroup")) + ": dim V^H = " +
           std::to_string(w.at("dim_V").get<std::int64_t>()) + " > dim W^H = " +
           std::to_string(w.at("dim_W").get<std::int64_t>());
  if (kind == "euler_violation")
    return "H = " + render_json_lattice(w.at("subgroup")) +
           ": e(V^H) does not divide e(W^H)";
  if (kind == "subspace_violation") {
    const auto& rows = w.at("subspace").at("rows");
    if (rows.empty())
      return "H = <0>: dim V^H = " + std::to_string(w.at("dim_V").get<std::int64_t>()) +
             " > dim W^H = " + std::to_string(w.at("dim_W").get<std::int64_t>());
    std::string s = "H = <";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) s += ", ";
      s += "[";
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        if (c) s += ",";
        s += std::to_string(rows[i][c].get<int>());
      }
      s += "]";
    }
    s += ">: dim V^H = " + std::to_string(w.at("dim_V").get<std::int64_t>()) +
         " > dim W^H = " + std::to_string(w.at("dim_W").get<std::int64_t>());
    return s;
  }
  return "unknown witness";
}

inline void append_verdict_lines(std::string& out, const Json& verdict,
                                 const std::string& label) {
  if (verdict.at("exists").get<bool>()) {
    out += label + ": a G-equivariant map S(V) -> S(W) exists\n";
  } else {
    out += label + ": no G-equivariant map S(V) -> S(W) exists\n";
    if (verdict.contains("witness")) {
      const std::string tag = verdict.contains("condition")
                                  ? verdict.at("condition").get<std::string>()
                                  : std::string("*");
      out += "witness (" + tag + "): " + render_json_witness(verdict.at("witness")) + "\n";
    }
  }
}

}  // namespace detail

// ---------- run dispatch ----------

namespace detail {

inline Json input_echo(const ProblemInstance& instance) {
  Json in;
  if (const auto* t = std::get_if<TorusInstance>(&instance)) {
    in["group"] = "torus";
    in["k"] = t->v.rank();
    in["V"] = render_rep(t->v);
    in["W"] = render_rep(t->w);
  } else {
    const auto& pt = std::get<PTorusInstance>(instance);
    in["group"] = "ptorus";
    in["p"] = pt.v.p();
    in["l"] = pt.v.ell();
    in["V"] = render_rep(pt.v);
    in["W"] = render_rep(pt.w);
  }
  return in;
}

inline Json conditions_block(const TorusRep& v, const TorusRep& w, bool& agree, bool& exists) {
  const Verdict c2 = condition2(v, w);
  const Verdict c3 = condition3(v, w);
  const Verdict c4 = condition4(v, w);
  const Verdict c5 = condition5(v, w);
  Json block;
  block["C2"] = verdict_to_json(c2);
  block["C3"] = verdict_to_json(c3);
  block["C4"] = verdict_to_json(c4);
  block["C5"] = verdict_to_json(c5);
  agree = c2.exists == c3.exists && c3.exists == c4.exists && c4.exists == c5.exists;
  exists = c5.exists;
  return block;
}

inline Json cross_verify_to_json(const CrossVerifyReport& r) {
  Json out;
  out["mode"] = "random";
  out["seed"] = r.seed;
  out["instances"] = r.instances;
  out["agreements"] = r.agreements;
  out["true_verdicts"] = r.true_verdicts;
  out["passed"] = r.passed();
  Json bad = Json::array();
  for (const auto& d : r.disagreements) {
    Json item;
    item["k"] = d.v.rank();
    item["V"] = render_rep(d.v);
    item["W"] = render_rep(d.w);
    item["C2"] = d.c2;
    item["C3"] = d.c3;
    item["C4"] = d.c4;
    item["C5"] = d.c5;
    bad.push_back(std::move(item));
  }
  out["disagreements"] = std::move(bad);
  return out;
}

inline Json closed_check_to_json(const ClosedSubgroupCheckReport& r) {
  Json out;
  out["seed"] = r.seed;
  out["samples"] = r.samples;
  out["passed"] = r.passed();
  if (r.counterexample) {
    Json c;
    c["subgroup"] = lattice_to_json(r.counterexample->subgroup.annihilator());
    c["dim_V"] = r.counterexample->dim_v;
    c["dim_W"] = r.counterexample->dim_w;
    out["counterexample"] = std::move(c);
  }
  return out;
}

}  // namespace detail

/// Executes one CLI command against an instance text (empty text is legal
/// only for the random-mode verify command). Never throws: errors come back
/// as an error report with exit code 2.
inline RunResult run(const std::string& command, const std::string& input_text,
                     const RunOptions& opts) {
  Json report;
  report["format"] = kReportFormatVersion;
  report["tool"] = kToolName;
  report["version"] = kToolVersion;
  report["command"] = command;

  auto usage_error = [&](const std::string& message) {
    report["error"] = Json{{"message", message}};
    return RunResult{std::move(report), 2};
  };

  try {
    if (command == "verify" && input_text.empty()) {
      report["seed"] = opts.seed;
      const CrossVerifyReport r = cross_verify(opts.instances, GeneratorBounds{}, opts.seed);
      report["verify"] = detail::cross_verify_to_json(r);
      return {std::move(report), r.passed() ? 0 : 1};
    }
    if (input_text.empty())
      return usage_error("command '" + command + "' requires an instance (--file or --stdin)");

    const ProblemInstance instance = parse_instance(input_text);
    report["input"] = detail::input_echo(instance);

    const auto* torus = std::get_if<TorusInstance>(&instance);
    const auto* ptorus = std::get_if<PTorusInstance>(&instance);

    if (command == "pdecide") {
      if (!ptorus) return usage_error("pdecide requires a ptorus instance");
      const PVerdict verdict = decide_p(ptorus->v, ptorus->w);
      report["verdict"] = pverdict_to_json(verdict);
      return {std::move(report), verdict.exists ? 0 : 1};
    }
    if (!torus) return usage_error("command '" + command + "' requires a torus instance");
    const TorusRep& v = torus->v;
    const TorusRep& w = torus->w;

    if (command == "decide") {
      const Verdict verdict = decide_map_exists(v, w);
      report["verdict"] = verdict_to_json(verdict);
      if (opts.all_conditions) {
        bool agree = false, exists = false;
        report["conditions"] = detail::conditions_block(v, w, agree, exists);
        report["agree"] = agree;
      }
      return {std::move(report), verdict.exists ? 0 : 1};
    }
    if (command == "conditions") {
      bool agree = false, exists = false;
      report["conditions"] = detail::conditions_block(v, w, agree, exists);
      report["agree"] = agree;
      report["exists"] = exists;
      return {std::move(report), agree && exists ? 0 : 1};
    }
    if (command == "euler") {
      const EulerClass ev = euler_class(v);
      const EulerClass ew = euler_class(w);
      report["e_V"] = euler_to_json(ev);
      report["e_W"] = euler_to_json(ew);
      const bool divides = euler_divides(ev, ew);
      report["divides"] = divides;
      return {std::move(report), divides ? 0 : 1};
    }
    if (command == "fixdim") {
      const int scale = opts.real_dims ? 2 : 1;
      report["unit"] = opts.real_dims ? "real" : "complex";
      Json rows = Json::array();
      bool all_dominated = true;
      for (const Subgroup& h : isotropy_subgroups(v)) {
        const std::int64_t dv = fixed_dim(v, h) * scale;
        const std::int64_t dw = fixed_dim(w, h) * scale;
        Json row;
        row["subgroup"] = lattice_to_json(h.annihilator());
        row["dim_V"] = dv;
        row["dim_W"] = dw;
        rows.push_back(std::move(row));
        if (dv > dw) all_dominated = false;
      }
      report["rows"] = std::move(rows);
      report["all_dominated"] = all_dominated;
      return {std::move(report), all_dominated ? 0 : 1};
    }
    if (command == "isotropy") {
      Json subgroups = Json::array();
      for (const Subgroup& h : isotropy_subgroups(v))
        subgroups.push_back(lattice_to_json(h.annihilator()));
      report["subgroups"] = std::move(subgroups);
      return {std::move(report), 0};
    }
    if (command == "extend") {
      const Verdict verdict = decide_map_exists(v, w);
      report["verdict"] = verdict_to_json(verdict);
      if (!verdict.exists) return {std::move(report), 1};
      const TorusRep vp = extend_domain(v, w);
      report["V_prime"] = render_rep(vp);
      report["dim_V"] = v.dim();
      report["dim_W"] = w.dim();
      report["dim_V_prime"] = vp.dim();
      return {std::move(report), 0};
    }
    if (command == "verify") {
      report["seed"] = opts.seed;
      Json block;
      block["mode"] = "instance";
      bool agree = false, exists = false;
      block["conditions"] = detail::conditions_block(v, w, agree, exists);
      block["agree"] = agree;
      bool passed = agree;
      if (exists) {
        const ClosedSubgroupCheckReport r =
            check_all_closed_subgroups(v, w, opts.instances, opts.seed);
        block["closed_subgroup_check"] = detail::closed_check_to_json(r);
        passed = passed && r.passed();
      }
      block["passed"] = passed;
      report["verify"] = std::move(block);
      return {std::move(report), passed ? 0 : 1};
    }
    return usage_error("unknown command '" + command + "'");
  } catch (const ParseError& e) {
    report["error"] = Json{{"message", e.what()},
                           {"line", e.line},
                           {"column", e.column},
                           {"token", e.token}};
    return {std::move(report), 2};
  } catch (const std::exception& e) {
    report["error"] = Json{{"message", e.what()}};
    return {std::move(report), 2};
  }
}

/// Plain-text rendering of a report, derived from the JSON document.
inline std::string render_human(const Json& report) {
  std::string out;
  out += std::string(kToolName) + " " + kToolVersion + " - " +
         report.at("command").get<std::string>() + "\n";
  if (report.contains("error")) {
    out += "error: " + report.at("error").at("message").get<std::string>() + "\n";
    return out;
  }
  if (report.contains("input")) {
    const auto& in = report.at("input");
    if (in.at("group").get<std::string>() == "torus")
      out += "group: torus k=" + std::to_string(in.at("k").get<std::int64_t>()) + "\n";
    else
      out += "group: ptorus p=" + std::to_string(in.at("p").get<int>()) +
             " l=" + std::to_string(in.at("l").get<int>()) + "\n";
    out += "V = " + in.at("V").get<std::string>() + "\n";
    out += "W = " + in.at("W").get<std::string>() + "\n";
  }
  const std::string command = report.at("command").get<std::string>();
  if (command == "decide" || command == "pdecide") {
    detail::append_verdict_lines(out, report.at("verdict"), "result");
    if (report.contains("conditions"))
      for (const char* c : {"C2", "C3", "C4", "C5"})
        detail::append_verdict_lines(out, report.at("conditions").at(c), c);
    if (report.contains("agree"))
      out += std::string("four-way agreement: ") +
             (report.at("agree").get<bool>() ? "yes" : "NO (internal inconsistency)") + "\n";
  } else if (command == "conditions") {
    for (const char* c : {"C2", "C3", "C4", "C5"})
      detail::append_verdict_lines(out, report.at("conditions").at(c), c);
    out += std::string("four-way agreement: ") +
           (report.at("agree").get<bool>() ? "yes" : "NO (internal inconsistency)") + "\n";
  } else if (command == "euler") {
    out += "e(V) = " + report.at("e_V").at("rendered").get<std::string>() + "\n";
    out += "e(W) = " + report.at("e_W").at("rendered").get<std::string>() + "\n";
    out += std::string("e(V) divides e(W): ") +
           (report.at("divides").get<bool>() ? "yes" : "no") + "\n";
  } else if (command == "fixdim") {
    out += "unit: " + report.at("unit").get<std::string>() + " dimensions\n";
    for (const auto& row : report.at("rows")) {
      const std::int64_t dv = row.at("dim_V").get<std::int64_t>();
      const std::int64_t dw = row.at("dim_W").get<std::int64_t>();
      out += "H = " + detail::render_json_lattice(row.at("subgroup")) + ": dim V^H = " +
             std::to_string(dv) + ", dim W^H = " + std::to_string(dw) +
             (dv > dw ? "  <-- violation" : "") + "\n";
    }
  } else if (command == "isotropy") {
    const auto& subgroups = report.at("subgroups");
    out += "isotropy subgroups of S(V): " + std::to_string(subgroups.size()) + "\n";
    for (const auto& s : subgroups) out += detail::render_json_lattice(s) + "\n";
  } else if (command == "extend") {
    if (!report.at("verdict").at("exists").get<bool>()) {
      detail::append_verdict_lines(out, report.at("verdict"), "result");
    } else {
      out += "V' = " + report.at("V_prime").get<std::string>() + "\n";
      out += "dim V = " + std::to_string(report.at("dim_V").get<std::int64_t>()) +
             ", dim W = " + std::to_string(report.at("dim_W").get<std::int64_t>()) +
             ", dim V' = " + std::to_string(report.at("dim_V_prime").get<std::int64_t>()) + "\n";
    }
  } else if (command == "verify") {
    const auto& block = report.at("verify");
    if (block.at("mode").get<std::string>() == "random") {
      out += "random cross-verification: " +
             std::to_string(block.at("instances").get<std::int64_t>()) + " instances, seed " +
             std::to_string(block.at("seed").get<std::uint64_t>()) + "\n";
      out += "agreements: " + std::to_string(block.at("agreements").get<std::int64_t>()) + "\n";
      out += "true verdicts: " + std::to_string(block.at("true_verdicts").get<std::int64_t>()) +
             "\n";
      out += std::string("passed: ") + (block.at("passed").get<bool>() ? "yes" : "NO") + "\n";
      for (const auto& d : block.at("disagreements")) {
        out += "DISAGREEMENT: k=" + std::to_string(d.at("k").get<std::int64_t>()) +
               " V = " + d.at("V").get<std::string>() + " W = " + d.at("W").get<std::string>() +
               " C2=" + std::to_string(d.at("C2").get<bool>()) +
               " C3=" + std::to_string(d.at("C3").get<bool>()) +
               " C4=" + std::to_string(d.at("C4").get<bool>()) +
               " C5=" + std::to_string(d.at("C5").get<bool>()) + "\n";
      }
    } else {
      out += std::string("four-way agreement: ") +
             (block.at("agree").get<bool>() ? "yes" : "NO") + "\n";
      if (block.contains("closed_subgroup_check")) {
        const auto& c = block.at("closed_subgroup_check");
        out += "closed-subgroup sampling: " +
               std::to_string(c.at("samples").get<std::int64_t>()) + " samples, seed " +
               std::to_string(c.at("seed").get<std::uint64_t>()) + ", " +
               (c.at("passed").get<bool>() ? "all dominated" : "COUNTEREXAMPLE FOUND") + "\n";
      }
      out += std::string("passed: ") + (block.at("passed").get<bool>() ? "yes" : "NO") + "\n";
    }
  }
  return out;
}

}  // namespace equimap
