#pragma once

#include "equimap/torus_rep.hpp"

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace equimap {

/// Euler class of a torus representation in H*(BT^k;Z) = Z[t1..tk], kept in
/// factored form: content * prod (alpha~ . t)^exponent over primitive
/// sign-normalized directions. Since primitive linear forms are irreducible
/// and pairwise non-associate, this is the prime factorization of the class,
/// and divisibility can be read off without expanding (Gauss's lemma).
class EulerClass {
 public:
  EulerClass(std::size_t rank, Int content, std::map<Weight, std::int64_t> factors)
      : rank_(rank), content_(std::move(content)), factors_(std::move(factors)) {
    if (content_ <= 0) throw PreconditionError("Euler class content must be positive");
    for (const auto& [dir, exp] : factors_) {
      if (dir.rank() != rank_) throw RankMismatchError("factor direction length does not match rank");
      if (exp <= 0) throw PreconditionError("factor exponents must be positive");
      auto [g, prim] = dir.primitive_part();
      if (g != 1) throw PreconditionError("factor directions must be primitive");
    }
  }

  /// The class of the zero representation: the unit 1.
  static EulerClass unit(std::size_t rank) { return EulerClass(rank, 1, {}); }

  std::size_t rank() const { return rank_; }
  const Int& content() const { return content_; }
  const std::map<Weight, std::int64_t>& factors() const { return factors_; }

  std::int64_t total_degree() const {
    std::int64_t d = 0;
    for (const auto& [dir, exp] : factors_) d += exp;
    return d;
  }

  friend EulerClass operator*(const EulerClass& a, const EulerClass& b) {
    if (a.rank_ != b.rank_) throw RankMismatchError("Euler classes of different rank");
    std::map<Weight, std::int64_t> factors = a.factors_;
    for (const auto& [dir, exp] : b.factors_) factors[dir] += exp;
    return EulerClass(a.rank_, a.content_ * b.content_, std::move(factors));
  }

  friend bool operator==(const EulerClass& a, const EulerClass& b) {
    return a.rank_ == b.rank_ && a.content_ == b.content_ && a.factors_ == b.factors_;
  }

 private:
  std::size_t rank_;
  Int content_;
  std::map<Weight, std::int64_t> factors_;
};

/// e(V) = prod_alpha (alpha . t)^{r_alpha}: content prod m_alpha^{r_alpha},
/// one factor (alpha~ . t)^{sum of class multiplicities} per direction.
inline EulerClass euler_class(const TorusRep& v) {
  Int content = 1;
  std::map<Weight, std::int64_t> factors;
  for (const auto& [w, mult] : v.weights()) {
    auto [m, dir] = w.primitive_part();
    content *= pow(m, static_cast<unsigned>(mult));
    factors[dir] += mult;
  }
  return EulerClass(v.rank(), std::move(content), std::move(factors));
}

/// Divisibility in Z[t1..tk]: the content must divide and every factor
/// exponent must be dominated. Exact by unique factorization.
inline bool euler_divides(const EulerClass& a, const EulerClass& b) {
  if (a.rank() != b.rank()) throw RankMismatchError("Euler classes of different rank");
  if (b.content() % a.content() != 0) return false;
  for (const auto& [dir, exp] : a.factors()) {
    auto it = b.factors().find(dir);
    if (it == b.factors().end() || it->second < exp) return false;
  }
  return true;
}

/// p-adic valuation of the content. p must be prime.
inline std::int64_t content_p_valuation(const EulerClass& e, const Int& p) {
  if (!is_prime(p)) throw PreconditionError("content_p_valuation requires a prime p");
  Int c = e.content();
  std::int64_t val = 0;
  while (c % p == 0) {
    c /= p;
    ++val;
  }
  return val;
}

/// "t1+2*t2" (single variable rank: plain "t").
inline std::string render_linear_form(const Weight& w) {
  std::ostringstream os;
  if (w.rank() == 1) {
    // sign normalization makes the single entry positive; primitive makes it 1
    os << "t";
    return os.str();
  }
  bool first = true;
  for (std::size_t i = 0; i < w.rank(); ++i) {
    const Int& c = w.vector()[i];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? "+" : "-");
    else if (c < 0) os << "-";
    const Int a = abs(c);
    if (a != 1) os << a.str() << "*";
    os << "t" << (i + 1);
    first = false;
  }
  return os.str();
}

/// Stable plain-text rendering: content first, then one "(form)^exp" per
/// factor in lexicographic direction order; rank 1 uses "content*t^exp".
/// Output only; never parsed back.
inline std::string render_euler(const EulerClass& e) {
  std::ostringstream os;
  os << e.content().str();
  for (const auto& [dir, exp] : e.factors()) {
    if (e.rank() == 1)
      os << "*t^" << exp;
    else
      os << "*(" << render_linear_form(dir) << ")^" << exp;
  }
  return os.str();
}

/// Expanded multivariate polynomial over Z: exponent multi-index -> nonzero
/// coefficient. Oracle representation; everything here is desk scale.
class DensePoly {
 public:
  using Monomial = std::vector<std::int64_t>;

  static DensePoly zero(std::size_t rank) { return DensePoly(rank); }

  static DensePoly constant(std::size_t rank, Int c) {
    DensePoly p(rank);
    if (c != 0) p.coeffs_.emplace(Monomial(rank, 0), std::move(c));
    return p;
  }

  static DensePoly linear_form(const Weight& w) {
    DensePoly p(w.rank());
    for (std::size_t i = 0; i < w.rank(); ++i) {
      if (w.vector()[i] == 0) continue;
      Monomial mono(w.rank(), 0);
      mono[i] = 1;
      p.coeffs_.emplace(std::move(mono), w.vector()[i]);
    }
    return p;
  }

  static DensePoly from_terms(std::size_t rank,
                              const std::vector<std::pair<Monomial, Int>>& terms) {
    DensePoly p(rank);
    for (const auto& [mono, c] : terms) {
      if (mono.size() != rank) throw RankMismatchError("monomial length does not match rank");
      Int& slot = p.coeffs_[mono];
      slot += c;
      if (slot == 0) p.coeffs_.erase(mono);
    }
    return p;
  }

  std::size_t rank() const { return rank_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Monomial, Int>& coeffs() const { return coeffs_; }

  std::int64_t total_degree() const {
    std::int64_t best = 0;
    for (const auto& [mono, c] : coeffs_) {
      std::int64_t d = 0;
      for (auto e : mono) d += e;
      best = std::max(best, d);
    }
    return best;
  }

  friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
    DensePoly out = a;
    for (const auto& [mono, c] : b.coeffs_) {
      Int& slot = out.coeffs_[mono];
      slot += c;
      if (slot == 0) out.coeffs_.erase(mono);
    }
    return out;
  }

  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    DensePoly out(a.rank_);
    for (const auto& [ma, ca] : a.coeffs_)
      for (const auto& [mb, cb] : b.coeffs_) {
        Monomial mono(a.rank_);
        for (std::size_t i = 0; i < a.rank_; ++i) mono[i] = ma[i] + mb[i];
        Int& slot = out.coeffs_[mono];
        slot += ca * cb;
        if (slot == 0) out.coeffs_.erase(mono);
      }
    return out;
  }

  /// Exact evaluation at an integer point.
  Int evaluate(const IntVector& point) const {
    Int total = 0;
    for (const auto& [mono, c] : coeffs_) {
      Int term = c;
      for (std::size_t i = 0; i < rank_; ++i)
        for (std::int64_t e = 0; e < mono[i]; ++e) term *= point[i];
      total += term;
    }
    return total;
  }

  friend bool operator==(const DensePoly& a, const DensePoly& b) {
    return a.rank_ == b.rank_ && a.coeffs_ == b.coeffs_;
  }

 private:
  explicit DensePoly(std::size_t rank) : rank_(rank) {}
  std::size_t rank_;
  std::map<Monomial, Int> coeffs_;
};

inline constexpr std::size_t kDenseRankLimit = 3;
inline constexpr std::int64_t kDenseDegreeLimit = 12;

/// Multiply the factored form out. Beyond rank 3 / total degree 12 the
/// expansion blows up and the factored representation is the only path.
inline DensePoly expand(const EulerClass& e) {
  if (e.rank() > kDenseRankLimit)
    throw BoundsError("dense expansion limited to rank <= 3");
  if (e.total_degree() > kDenseDegreeLimit)
    throw BoundsError("dense expansion limited to total degree <= 12");
  DensePoly out = DensePoly::constant(e.rank(), e.content());
  for (const auto& [dir, exp] : e.factors()) {
    const DensePoly form = DensePoly::linear_form(dir);
    for (std::int64_t i = 0; i < exp; ++i) out = out * form;
  }
  return out;
}

/// Exact evaluation of the factored form at an integer point; must agree
/// with expand(e).evaluate(point).
inline Int evaluate(const EulerClass& e, const IntVector& point) {
  Int total = e.content();
  for (const auto& [dir, exp] : e.factors()) {
    Int form = 0;
    for (std::size_t i = 0; i < dir.rank(); ++i) form += dir.vector()[i] * point[i];
    for (std::int64_t i = 0; i < exp; ++i) total *= form;
  }
  return total;
}

/// Does p divide q in Z[t1..tk]? Long division under lexicographic term
/// order, demanding an exact integer coefficient quotient at every step.
/// Complete for a single divisor over an integral domain: when p | q the
/// leading terms divide at every step, and any failure certifies p does not
/// divide q.
inline bool dense_divides(const DensePoly& p, const DensePoly& q) {
  if (p.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (p.rank() != q.rank()) throw RankMismatchError("polynomials of different rank");
  const std::size_t k = p.rank();
  const auto& lead = *p.coeffs().rbegin();  // lex-leading term of the divisor
  std::map<DensePoly::Monomial, Int> r = q.coeffs();
  while (!r.empty()) {
    const auto top = *r.rbegin();
    DensePoly::Monomial mono(k);
    for (std::size_t i = 0; i < k; ++i) {
      mono[i] = top.first[i] - lead.first[i];
      if (mono[i] < 0) return false;
    }
    if (top.second % lead.second != 0) return false;
    const Int c = top.second / lead.second;
    // r -= c * x^mono * p; the leading term cancels by construction, so the
    // lex-leading monomial of r strictly decreases and the loop terminates.
    for (const auto& [pm, pc] : p.coeffs()) {
      DensePoly::Monomial shifted(k);
      for (std::size_t i = 0; i < k; ++i) shifted[i] = pm[i] + mono[i];
      auto [it, inserted] = r.try_emplace(std::move(shifted), 0);
      it->second -= c * pc;
      if (it->second == 0) r.erase(it);
    }
  }
  return true;
}

}  // namespace equimap
