// Variable sets, exponent vectors and term orders.
#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reesdual {

inline constexpr std::size_t kMaxVars = 24;

/// Variable layout of a ring S[T] = k[x_1..x_{d+1}, T_1..T_n] with optional auxiliary
/// blocks Z_{ij}, Y_j and anonymous elimination variables, in that order.
class VarSet {
 public:
  VarSet(std::size_t x_count, std::size_t t_count, std::size_t z_rows = 0, std::size_t z_cols = 0,
         std::size_t y_count = 0, std::size_t extra = 0)
      : x_(x_count), t_(t_count), zr_(z_rows), zc_(z_cols), y_(y_count), extra_(extra) {
    if (x_ < 2) throw std::invalid_argument("VarSet needs at least two x-variables (d >= 1)");
    if (t_ < 1) throw std::invalid_argument("VarSet needs at least one T-variable");
    if (size() > kMaxVars)
      throw std::invalid_argument("VarSet exceeds " + std::to_string(kMaxVars) + " variables");
  }

  std::size_t size() const { return x_ + t_ + zr_ * zc_ + y_ + extra_; }
  std::size_t x_count() const { return x_; }
  std::size_t t_count() const { return t_; }
  std::size_t z_rows() const { return zr_; }
  std::size_t z_cols() const { return zc_; }
  std::size_t y_count() const { return y_; }
  std::size_t extra_count() const { return extra_; }

  std::size_t x(std::size_t k) const { return k; }
  std::size_t t(std::size_t i) const { return x_ + i; }
  std::size_t z(std::size_t i, std::size_t j) const { return x_ + t_ + i * zc_ + j; }
  std::size_t y(std::size_t j) const { return x_ + t_ + zr_ * zc_ + j; }
  std::size_t extra(std::size_t j) const { return x_ + t_ + zr_ * zc_ + y_ + j; }

  bool is_x(std::size_t v) const { return v < x_; }
  bool is_t(std::size_t v) const { return v >= x_ && v < x_ + t_; }

  std::string name(std::size_t v) const {
    if (v < x_) return "x" + std::to_string(v + 1);
    v -= x_;
    if (v < t_) return "T" + std::to_string(v + 1);
    v -= t_;
    if (v < zr_ * zc_) return "Z" + std::to_string(v / zc_ + 1) + "_" + std::to_string(v % zc_ + 1);
    v -= zr_ * zc_;
    if (v < y_) return "Y" + std::to_string(v + 1);
    v -= y_;
    return "_u" + std::to_string(v + 1);
  }

  std::optional<std::size_t> index_of(const std::string& nm) const {
    for (std::size_t v = 0; v < size(); ++v)
      if (name(v) == nm) return v;
    return std::nullopt;
  }

  /// Same layout plus `k` more elimination variables appended at the end.
  VarSet with_extra(std::size_t k) const { return VarSet(x_, t_, zr_, zc_, y_, extra_ + k); }

  bool operator==(const VarSet&) const = default;

 private:
  std::size_t x_, t_, zr_, zc_, y_, extra_;
};

struct BiDegree {
  int x = 0;
  int t = 0;
  bool operator==(const BiDegree&) const = default;
  BiDegree operator+(const BiDegree& o) const { return {x + o.x, t + o.t}; }
};

/// Exponent vector with fixed capacity; entries past the ring's variable count stay zero,
/// so embedding into a ring with more trailing variables is a no-op.
class Monomial {
 public:
  using Exp = std::uint16_t;

  Monomial() { e_.fill(0); }

  static Monomial variable(std::size_t v, unsigned power = 1) {
    Monomial m;
    m.set(v, power);
    return m;
  }

  Exp operator[](std::size_t v) const { return e_[v]; }
  void set(std::size_t v, unsigned power) {
    if (power > 0xFFFF) throw std::overflow_error("exponent overflow");
    deg_ = static_cast<std::uint32_t>(deg_ - e_[v] + power);
    e_[v] = static_cast<Exp>(power);
  }
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  /// Bit k set iff variable k occurs; a cheap necessary test for divisibility.
  std::uint32_t support_mask() const {
    std::uint32_t mask = 0;
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if (e_[v]) mask |= (1u << v);
    return mask;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      unsigned s = unsigned(e_[v]) + o.e_[v];
      if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
      r.e_[v] = static_cast<Exp>(s);
    }
    r.deg_ = deg_ + o.deg_;
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if (e_[v] > o.e_[v]) return false;
    return true;
  }

  /// this / o; requires o | this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t v = 0; v < kMaxVars; ++v) r.e_[v] = static_cast<Exp>(e_[v] - o.e_[v]);
    r.deg_ = deg_ - o.deg_;
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r;
    std::uint32_t d = 0;
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      r.e_[v] = std::max(e_[v], o.e_[v]);
      d += r.e_[v];
    }
    r.deg_ = d;
    return r;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if (e_[v] && o.e_[v]) return false;
    return true;
  }

  int block_degree(std::size_t begin, std::size_t end) const {
    int s = 0;
    for (std::size_t v = begin; v < end; ++v) s += e_[v];
    return s;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : e_) h = (h ^ x) * 1099511628211ull;
    return h;
  }

 private:
  std::array<Exp, kMaxVars> e_;
  std::uint32_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// A monomial order. `perm[i]` is the variable at rank i (rank 0 is the largest variable).
/// block(split): the first `split` ranked variables are compared by grevlex first, then the rest.
class TermOrder {
 public:
  enum class Kind { grevlex, lex, block };

  static TermOrder grevlex(std::size_t nvars) { return TermOrder(Kind::grevlex, identity(nvars), 0); }
  static TermOrder lex(std::size_t nvars) { return TermOrder(Kind::lex, identity(nvars), 0); }
  static TermOrder grevlex(std::vector<std::size_t> perm) {
    return TermOrder(Kind::grevlex, std::move(perm), 0);
  }
  static TermOrder lex(std::vector<std::size_t> perm) { return TermOrder(Kind::lex, std::move(perm), 0); }
  /// Elimination order: variables in `first` are eliminated (block 1), the rest form block 2.
  /// Within each block the original variable order is kept.
  static TermOrder elimination(std::size_t nvars, const std::vector<std::size_t>& first) {
    std::vector<std::size_t> perm;
    std::vector<bool> in_first(nvars, false);
    for (auto v : first) in_first.at(v) = true;
    for (std::size_t v = 0; v < nvars; ++v)
      if (in_first[v]) perm.push_back(v);
    std::size_t split = perm.size();
    for (std::size_t v = 0; v < nvars; ++v)
      if (!in_first[v]) perm.push_back(v);
    return TermOrder(Kind::block, std::move(perm), split);
  }

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& perm() const { return perm_; }
  std::size_t split() const { return split_; }
  std::size_t nvars() const { return perm_.size(); }

  /// Three-way comparison: positive if a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::grevlex:
        return grevlex_range(a, b, 0, perm_.size(), a.degree(), b.degree());
      case Kind::lex:
        for (auto v : perm_)
          if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
        return 0;
      case Kind::block: {
        int c = grevlex_range(a, b, 0, split_, ranked_degree(a, 0, split_), ranked_degree(b, 0, split_));
        if (c) return c;
        return grevlex_range(a, b, split_, perm_.size(), ranked_degree(a, split_, perm_.size()),
                             ranked_degree(b, split_, perm_.size()));
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  bool operator==(const TermOrder&) const = default;

 private:
  TermOrder(Kind k, std::vector<std::size_t> perm, std::size_t split)
      : kind_(k), perm_(std::move(perm)), split_(split) {
    std::vector<std::size_t> sorted = perm_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i) throw std::invalid_argument("term order permutation is not a permutation");
    if (perm_.size() > kMaxVars) throw std::invalid_argument("term order has too many variables");
  }

  static std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
  }

  long ranked_degree(const Monomial& a, std::size_t lo, std::size_t hi) const {
    long s = 0;
    for (std::size_t r = lo; r < hi; ++r) s += a[perm_[r]];
    return s;
  }

  int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi, long da,
                    long db) const {
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t r = hi; r-- > lo;) {
      auto v = perm_[r];
      if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
    }
    return 0;
  }

  Kind kind_;
  std::vector<std::size_t> perm_;
  std::size_t split_;
};

}  // namespace reesdual
