// Sparse multivariate polynomials over an exact field.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reesdual/field.hpp"
#include "reesdual/monomial.hpp"

namespace reesdual {

template <class K>
struct PolyRing {
  PolyRing(VarSet v, FieldOf<K> f) : vars(std::move(v)), field(f), order(TermOrder::grevlex(vars.size())) {}

  VarSet vars;
  FieldOf<K> field;
  /// Storage order of every polynomial over this ring.
  TermOrder order;

  bool operator==(const PolyRing& o) const { return vars == o.vars && field == o.field; }
};

template <class K>
using RingPtr = std::shared_ptr<const PolyRing<K>>;

template <class K>
RingPtr<K> make_ring(VarSet vars, FieldOf<K> field = {}) {
  return std::make_shared<const PolyRing<K>>(std::move(vars), field);
}

template <class K>
struct Term {
  Monomial m;
  K c;
};

/// Result of a bidegree query. The zero polynomial is compatible with every bidegree.
struct BiDegreeInfo {
  enum class Kind { zero, bihomogeneous, mixed };
  Kind kind = Kind::zero;
  BiDegree deg{};

  bool is_zero() const { return kind == Kind::zero; }
  bool is_bihomogeneous() const { return kind == Kind::bihomogeneous; }
  bool is_mixed() const { return kind == Kind::mixed; }
  bool compatible(const BiDegree& d) const { return kind == Kind::zero || (kind == Kind::bihomogeneous && deg == d); }
};

class RingMismatch : public std::invalid_argument {
 public:
  RingMismatch() : std::invalid_argument("polynomials live over different variable sets or fields") {}
};

template <class K>
class Poly {
 public:
  using Coeff = K;

  Poly() = default;
  explicit Poly(RingPtr<K> ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr<K> ring, const K& c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({Monomial(), c});
    return p;
  }
  static Poly constant(RingPtr<K> ring, long c) {
    auto k = ring->field.from_int(c);
    return constant(std::move(ring), k);
  }
  static Poly variable(RingPtr<K> ring, std::size_t v) {
    if (v >= ring->vars.size()) throw std::out_of_range("variable index out of range");
    Poly p(ring);
    p.terms_.push_back({Monomial::variable(v), ring->field.from_int(1)});
    return p;
  }
  static Poly monomial(RingPtr<K> ring, const Monomial& m, const K& c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }
  /// Builds from arbitrary (possibly repeated, unsorted, zero) terms.
  static Poly from_terms(RingPtr<K> ring, std::vector<Term<K>> terms) {
    Poly p(std::move(ring));
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const RingPtr<K>& ring() const { return ring_; }
  const VarSet& vars() const { return ring_->vars; }
  const std::vector<Term<K>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  const Term<K>& leading() const { return terms_.front(); }

  K zero_coeff() const { return ring_->field.from_int(0); }
  K one_coeff() const { return ring_->field.from_int(1); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = combine(*this, o, false); }
  Poly& operator-=(const Poly& o) { return *this = combine(*this, o, true); }
  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.ring_);
    // open addressing on the product monomials, coefficients accumulated in place
    std::size_t bound = a.size() * b.size();
    std::size_t cap = 16;
    while (cap < 2 * bound) cap <<= 1;
    std::vector<std::int32_t> slot(cap, -1);
    std::vector<Term<K>> terms;
    terms.reserve(std::min<std::size_t>(bound, 1 << 16));
    const K zero = a.zero_coeff();
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        Monomial m = s.m * t.m;
        std::size_t h = m.hash() & (cap - 1);
        while (slot[h] >= 0 && !(terms[slot[h]].m == m)) h = (h + 1) & (cap - 1);
        if (slot[h] < 0) {
          slot[h] = static_cast<std::int32_t>(terms.size());
          terms.push_back({m, zero});
        }
        terms[slot[h]].c.add_mul(s.c, t.c);
      }
    std::erase_if(terms, [](const Term<K>& t) { return t.c.is_zero(); });
    Poly r(a.ring_);
    r.terms_ = std::move(terms);
    r.sort_terms();
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const K& c) const {
    if (c.is_zero()) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
  }
  Poly scaled(long c) const { return scaled(ring_->field.from_int(c)); }

  Poly times_monomial(const Monomial& m, const K& c) const {
    if (c.is_zero()) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r;  // multiplication by a monomial preserves the order
  }

  Poly pow(unsigned e) const {
    Poly acc = constant(ring_, 1), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

  /// Formal partial derivative with respect to variable v.
  Poly derivative(std::size_t v) const {
    std::vector<Term<K>> out;
    for (const auto& t : terms_) {
      unsigned e = t.m[v];
      if (!e) continue;
      Monomial m = t.m;
      m.set(v, e - 1);
      K c = t.c * t.c.make(static_cast<long>(e));
      if (!c.is_zero()) out.push_back({m, c});
    }
    return from_terms(ring_, std::move(out));
  }

  BiDegreeInfo bidegree() const {
    if (is_zero()) return {};
    const auto& vs = vars();
    auto deg_of = [&](const Monomial& m) {
      return BiDegree{m.block_degree(0, vs.x_count()), m.block_degree(vs.x_count(), vs.x_count() + vs.t_count())};
    };
    BiDegree d = deg_of(terms_.front().m);
    for (const auto& t : terms_)
      if (!(deg_of(t.m) == d)) return {BiDegreeInfo::Kind::mixed, {}};
    return {BiDegreeInfo::Kind::bihomogeneous, d};
  }

  int x_degree_min() const {
    int best = -1;
    for (const auto& t : terms_) {
      int dx = t.m.block_degree(0, vars().x_count());
      if (best < 0 || dx < best) best = dx;
    }
    return best;
  }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.m.degree() != terms_.front().m.degree()) return false;
    return true;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, static_cast<int>(t.m.degree()));
    return d;
  }

  /// True when every variable occurring lies in [begin, end).
  bool supported_in(std::size_t begin, std::size_t end) const {
    for (const auto& t : terms_)
      for (std::size_t v = 0; v < kMaxVars; ++v)
        if (t.m[v] && (v < begin || v >= end)) return false;
    return true;
  }

  bool uses_only(const std::vector<bool>& allowed) const {
    for (const auto& t : terms_)
      for (std::size_t v = 0; v < kMaxVars; ++v)
        if (t.m[v] && (v >= allowed.size() || !allowed[v])) return false;
    return true;
  }

  /// Divided by its leading coefficient (canonical order); zero stays zero.
  Poly monic() const {
    if (is_zero() || terms_.front().c.is_one()) return *this;
    return scaled(terms_.front().c.inverse());
  }

  /// Re-expresses the polynomial over `target`, sending variable v to var_map[v].
  Poly remap(RingPtr<K> target, std::span<const std::size_t> var_map) const {
    std::vector<Term<K>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t v = 0; v < vars().size(); ++v)
        if (t.m[v]) {
          auto w = var_map[v];
          if (w >= target->vars.size()) throw std::out_of_range("remap target variable out of range");
          m.set(w, m[w] + t.m[v]);
        }
      out.push_back({m, t.c});
    }
    return from_terms(std::move(target), std::move(out));
  }

  /// Same exponent vectors over a ring whose leading variables coincide with ours.
  Poly embed(RingPtr<K> target) const {
    if (target->vars.size() < vars().size()) {
      for (const auto& t : terms_)
        for (std::size_t v = target->vars.size(); v < vars().size(); ++v)
          if (t.m[v]) throw std::invalid_argument("cannot embed: polynomial uses a dropped variable");
    }
    Poly r(std::move(target));
    r.terms_ = terms_;
    r.sort_terms();
    return r;
  }

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    if (!a.ring_ || !b.ring_) return a.terms_.empty() && b.terms_.empty();
    if (!(*a.ring_ == *b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].m == b.terms_[i].m) || !(a.terms_[i].c == b.terms_[i].c)) return false;
    return true;
  }

 private:
  static void check_same(const Poly& a, const Poly& b) {
    if (a.ring_ != b.ring_ && !(a.ring_ && b.ring_ && *a.ring_ == *b.ring_)) throw RingMismatch();
  }

  static Poly combine(const Poly& a, const Poly& b, bool subtract) {
    check_same(a, b);
    const auto& ord = a.ring_->order;
    Poly r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : ord.compare(a.terms_[i].m, b.terms_[j].m);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back({b.terms_[j].m, subtract ? -b.terms_[j].c : b.terms_[j].c});
        ++j;
      } else {
        K s = subtract ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
        if (!s.is_zero()) r.terms_.push_back({a.terms_[i].m, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void sort_terms() {
    const auto& ord = ring_->order;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term<K>& s, const Term<K>& t) { return ord.compare(s.m, t.m) > 0; });
  }

  void canonicalize() {
    sort_terms();
    std::vector<Term<K>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().m == t.m)
        out.back().c += t.c;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term<K>& t) { return t.c.is_zero(); });
    terms_ = std::move(out);
  }

  RingPtr<K> ring_;
  std::vector<Term<K>> terms_;
};

namespace detail {

template <class K>
std::string coeff_string(const K& c) {
  return c.to_string();
}

inline std::string monomial_string(const Monomial& m, const VarSet& vs) {
  std::string s;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (!m[v]) continue;
    if (!s.empty()) s += '*';
    s += vs.name(v);
    if (m[v] > 1) s += '^' + std::to_string(m[v]);
  }
  return s;
}

}  // namespace detail

template <class K>
std::string Poly<K>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = t.c.is_negative();
    K mag = neg ? -t.c : t.c;
    std::string body;
    std::string mono = detail::monomial_string(t.m, vars());
    if (mono.empty())
      body = detail::coeff_string(mag);
    else if (mag.is_one())
      body = mono;
    else
      body = detail::coeff_string(mag) + "*" + mono;
    if (first)
      out += neg ? "-" + body : body;
    else
      out += neg ? " - " + body : " + " + body;
    first = false;
  }
  return out;
}

/// Exact quotient a / b; throws if b does not divide a.
template <class K>
Poly<K> divide_exact(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  Poly<K> rem = a;
  std::vector<Term<K>> quot;
  const auto& lb = b.leading();
  K inv = lb.c.inverse();
  while (!rem.is_zero()) {
    const auto& lt = rem.leading();
    if (!lb.m.divides(lt.m)) throw std::logic_error("inexact polynomial division");
    Monomial q = lt.m / lb.m;
    K c = lt.c * inv;
    quot.push_back({q, c});
    rem -= b.times_monomial(q, c);
  }
  return Poly<K>::from_terms(a.ring(), std::move(quot));
}

}  // namespace reesdual
