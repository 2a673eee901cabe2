#pragma once

#include "equimap/ptorus.hpp"
#include "equimap/torus_rep.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace equimap {

/// Syntax or resolution error in an instance description, with 1-based
/// line/column of the offending token.
struct ParseError : std::runtime_error {
  int line;
  int column;
  std::string token;

  ParseError(int line_, int column_, std::string token_, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ": " + message +
                           (token_.empty() ? "" : " (at '" + token_ + "')")),
        line(line_),
        column(column_),
        token(std::move(token_)) {}
};

struct TorusInstance {
  TorusRep v;
  TorusRep w;
  friend bool operator==(const TorusInstance& a, const TorusInstance& b) {
    return a.v == b.v && a.w == b.w;
  }
};

struct PTorusInstance {
  PTorusRep v;
  PTorusRep w;
  friend bool operator==(const PTorusInstance& a, const PTorusInstance& b) {
    return a.v == b.v && a.w == b.w;
  }
};

using ProblemInstance = std::variant<TorusInstance, PTorusInstance>;

namespace detail {

/// Cursor over one logical line, tracking columns for error reporting.
class LineScanner {
 public:
  LineScanner(std::string text, int line) : text_(std::move(text)), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  int column() const { return static_cast<int>(pos_) + 1; }
  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& message, const std::string& token = "") {
    throw ParseError(line_, column(), token.empty() ? rest_token() : token, message);
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  std::string read_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  Int read_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    return Int(text_.substr(start, pos_ - start));
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

 private:
  std::string rest_token() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) &&
           end - pos_ < 16)
      ++end;
    return text_.substr(pos_, end - pos_);
  }

  std::string text_;
  int line_;
  std::size_t pos_ = 0;
};

struct RawLine {
  std::string text;
  int number;
};

inline std::vector<RawLine> significant_lines(const std::string& text) {
  std::vector<RawLine> lines;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    lines.push_back({line, number});
  }
  return lines;
}

/// "<mult>*(c1,...,ck)" or "<mult>*[c1,...,cl]"; returns (mult, entries).
inline std::pair<std::int64_t, IntVector> parse_term(LineScanner& sc, char open, char close) {
  const int mult_col = sc.column();
  const Int mult = sc.read_int();
  if (mult <= 0)
    throw ParseError(sc.line(), mult_col, mult.str(), "multiplicity must be positive");
  if (mult > 1000000)
    throw ParseError(sc.line(), mult_col, mult.str(), "multiplicity too large");
  sc.expect('*');
  sc.expect(open);
  IntVector entries;
  entries.push_back(sc.read_int());
  while (sc.try_consume(',')) entries.push_back(sc.read_int());
  sc.expect(close);
  return {mult.convert_to<std::int64_t>(), std::move(entries)};
}

inline TorusRep parse_torus_rep(LineScanner& sc, const char* name, std::size_t k) {
  const std::string label = sc.read_ident();
  if (label != name) sc.fail(std::string("expected '") + name + " = ...'", label);
  sc.expect('=');
  std::vector<std::pair<IntVector, std::int64_t>> terms;
  for (;;) {
    const int term_col = sc.column();
    auto [mult, entries] = parse_term(sc, '(', ')');
    if (entries.size() != k)
      throw ParseError(sc.line(), term_col, "",
                       "weight has " + std::to_string(entries.size()) +
                           " entries; the torus has rank " + std::to_string(k));
    bool zero = true;
    for (const auto& e : entries)
      if (e != 0) zero = false;
    if (zero)
      throw ParseError(sc.line(), term_col, "", "zero weight is forbidden (V^G must be {0})");
    terms.emplace_back(std::move(entries), mult);
    if (!sc.try_consume('+')) break;
  }
  sc.expect_end();
  return TorusRep::from_weights(k, terms);
}

inline PTorusRep parse_ptorus_rep(LineScanner& sc, const char* name, int p, int ell) {
  const std::string label = sc.read_ident();
  if (label != name) sc.fail(std::string("expected '") + name + " = ...'", label);
  sc.expect('=');
  std::vector<std::pair<std::vector<int>, std::int64_t>> terms;
  for (;;) {
    const int term_col = sc.column();
    auto [mult, entries] = parse_term(sc, '[', ']');
    if (entries.size() != static_cast<std::size_t>(ell))
      throw ParseError(sc.line(), term_col, "",
                       "character has " + std::to_string(entries.size()) +
                           " entries; the p-torus has rank " + std::to_string(ell));
    std::vector<int> reduced(entries.size());
    bool zero = true;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      reduced[i] = static_cast<int>(((entries[i] % p) + p) % p);
      if (reduced[i] != 0) zero = false;
    }
    if (zero)
      throw ParseError(sc.line(), term_col, "",
                       "character is zero mod p (V^G must be {0})");
    terms.emplace_back(std::move(reduced), mult);
    if (!sc.try_consume('+')) break;
  }
  sc.expect_end();
  return PTorusRep::from_chars(p, ell, terms);
}

}  // namespace detail

/// Parses the line-oriented instance language:
///
///   torus k=<int>            or   ptorus p=<int> l=<int>
///   V = <m>*(c1,...,ck) + ...      V = <m>*[c1,...,cl] + ...
///   W = ...                        W = ...
///
/// '#' starts a comment; blank lines are ignored; whitespace within lines is
/// free. Weights may be given unnormalized; they are canonicalized.
inline ProblemInstance parse_instance(const std::string& text) {
  using detail::LineScanner;
  const auto lines = detail::significant_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "", "empty instance: expected a group header");
  if (lines.size() < 3)
    throw ParseError(lines.back().number, 1, "",
                     "incomplete instance: expected header, V line and W line");
  if (lines.size() > 3)
    throw ParseError(lines[3].number, 1, lines[3].text.substr(0, 16),
                     "unexpected extra line after the W line");

  LineScanner header(lines[0].text, lines[0].number);
  const std::string group = header.read_ident();
  if (group == "torus") {
    const std::string key = header.read_ident();
    if (key != "k") header.fail("expected 'k=<rank>'", key);
    header.expect('=');
    const int k_col = header.column();
    const Int k = header.read_int();
    if (k < 1) throw ParseError(lines[0].number, k_col, k.str(), "rank k must be at least 1");
    if (k > 64) throw ParseError(lines[0].number, k_col, k.str(), "rank k too large");
    header.expect_end();
    const auto rank = k.convert_to<std::size_t>();
    LineScanner vline(lines[1].text, lines[1].number);
    LineScanner wline(lines[2].text, lines[2].number);
    TorusRep v = detail::parse_torus_rep(vline, "V", rank);
    TorusRep w = detail::parse_torus_rep(wline, "W", rank);
    return TorusInstance{std::move(v), std::move(w)};
  }
  if (group == "ptorus") {
    std::string key = header.read_ident();
    if (key != "p") header.fail("expected 'p=<prime>'", key);
    header.expect('=');
    const int p_col = header.column();
    const Int p = header.read_int();
    if (!is_prime(p)) throw ParseError(lines[0].number, p_col, p.str(), "p must be prime");
    if (p > 997) throw ParseError(lines[0].number, p_col, p.str(), "p too large");
    key = header.read_ident();
    if (key != "l") header.fail("expected 'l=<rank>'", key);
    header.expect('=');
    const int l_col = header.column();
    const Int ell = header.read_int();
    if (ell < 1)
      throw ParseError(lines[0].number, l_col, ell.str(), "rank l must be at least 1");
    if (ell > 16) throw ParseError(lines[0].number, l_col, ell.str(), "rank l too large");
    header.expect_end();
    const int pi = p.convert_to<int>();
    const int li = ell.convert_to<int>();
    LineScanner vline(lines[1].text, lines[1].number);
    LineScanner wline(lines[2].text, lines[2].number);
    PTorusRep v = detail::parse_ptorus_rep(vline, "V", pi, li);
    PTorusRep w = detail::parse_ptorus_rep(wline, "W", pi, li);
    return PTorusInstance{std::move(v), std::move(w)};
  }
  throw ParseError(lines[0].number, 1, group, "expected 'torus' or 'ptorus'");
}

inline std::string render_rep(const TorusRep& rep) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, mult] : rep.weights()) {
    if (!first) os << " + ";
    os << mult << "*(";
    for (std::size_t i = 0; i < w.rank(); ++i) {
      if (i) os << ",";
      os << w.vector()[i].str();
    }
    os << ")";
    first = false;
  }
  return os.str();
}

inline std::string render_rep(const PTorusRep& rep) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, mult] : rep.chars()) {
    if (!first) os << " + ";
    os << mult << "*[";
    for (std::size_t i = 0; i < c.length(); ++i) {
      if (i) os << ",";
      os << c.vector()[i];
    }
    os << "]";
    first = false;
  }
  return os.str();
}

/// Canonical text form; parse_instance(render_instance(x)) == x.
inline std::string render_instance(const ProblemInstance& instance) {
  std::ostringstream os;
  if (const auto* t = std::get_if<TorusInstance>(&instance)) {
    os << "torus k=" << t->v.rank() << "\n";
    os << "V = " << render_rep(t->v) << "\n";
    os << "W = " << render_rep(t->w) << "\n";
  } else {
    const auto& pt = std::get<PTorusInstance>(instance);
    os << "ptorus p=" << pt.v.p() << " l=" << pt.v.ell() << "\n";
    os << "V = " << render_rep(pt.v) << "\n";
    os << "W = " << render_rep(pt.w) << "\n";
  }
  return os.str();
}

}  // namespace equimap
