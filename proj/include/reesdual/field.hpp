// Exact coefficient fields: arbitrary-precision rationals and prime fields Z/p.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace reesdual {

class Rational;
class ModP;

/// Field descriptor for Q. Element constructors that need no context go through here
/// so that generic code can build constants for either field.
struct RationalField {
  using value_type = Rational;
  Rational from_int(long n) const;
  Rational from_ratio(const mpz_class& num, const mpz_class& den) const;
  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  bool operator==(const RationalField&) const = default;
};

struct PrimeField {
  using value_type = ModP;
  std::uint32_t p = 32003;
  ModP from_int(long n) const;
  ModP from_ratio(const mpz_class& num, const mpz_class& den) const;
  std::uint32_t characteristic() const { return p; }
  std::string name() const { return "Fp:" + std::to_string(p); }
  bool operator==(const PrimeField&) const = default;
};

class Rational {
 public:
  using field_type = RationalField;

  Rational() = default;
  explicit Rational(long n) : q_(n) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
  }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_negative() const { return sgn(q_) < 0; }
  Rational make(long n) const { return Rational(n); }
  RationalField field() const { return {}; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(mpq_class(1) / q_);
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  /// a -= b * c; integral operands skip the gcd work of mpq arithmetic.
  void sub_mul(const Rational& b, const Rational& c) {
    if (integral() && b.integral() && c.integral()) {
      mpz_submul(q_.get_num_mpz_t(), b.q_.get_num_mpz_t(), c.q_.get_num_mpz_t());
      return;
    }
    mpq_class t = b.q_ * c.q_;
    q_ -= t;
  }
  /// a += b * c
  void add_mul(const Rational& b, const Rational& c) {
    if (integral() && b.integral() && c.integral()) {
      mpz_addmul(q_.get_num_mpz_t(), b.q_.get_num_mpz_t(), c.q_.get_num_mpz_t());
      return;
    }
    mpq_class t = b.q_ * c.q_;
    q_ += t;
  }
  bool integral() const { return mpz_cmp_ui(q_.get_den_mpz_t(), 1) == 0; }

  const mpq_class& value() const { return q_; }
  std::string to_string() const { return q_.get_str(); }

 private:
  mpq_class q_{0};
};

/// Residue modulo a prime; the modulus travels with the value.
class ModP {
 public:
  using field_type = PrimeField;

  ModP() = default;
  ModP(long n, std::uint32_t p) : p_(p) {
    long r = n % static_cast<long>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_negative() const { return false; }
  ModP make(long n) const { return ModP(n, p_); }
  PrimeField field() const { return PrimeField{p_}; }
  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero");
    // p is prime: a^(p-2)
    return pow(p_ - 2);
  }
  ModP pow(std::uint64_t e) const {
    std::uint64_t base = v_, acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return raw(static_cast<std::uint32_t>(acc), p_);
  }

  ModP operator-() const { return raw(v_ ? p_ - v_ : 0, p_); }
  ModP& operator+=(const ModP& o) {
    check(o);
    std::uint64_t s = std::uint64_t(v_) + o.v_;
    v_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t(v_) + p_ - o.v_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    v_ = static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  void sub_mul(const ModP& b, const ModP& c) { *this -= b * c; }
  void add_mul(const ModP& b, const ModP& c) { *this += b * c; }

  std::string to_string() const { return std::to_string(v_); }

 private:
  static ModP raw(std::uint32_t v, std::uint32_t p) {
    ModP r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  void check(const ModP& o) const {
    if (o.p_ != p_) throw std::invalid_argument("mixed prime-field moduli");
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 2;
};

inline Rational RationalField::from_int(long n) const { return Rational(n); }
inline Rational RationalField::from_ratio(const mpz_class& num, const mpz_class& den) const {
  return Rational(num, den);
}

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

inline ModP PrimeField::from_int(long n) const { return ModP(n, p); }
inline ModP PrimeField::from_ratio(const mpz_class& num, const mpz_class& den) const {
  mpz_class pn(p);
  mpz_class a = num % pn, b = den % pn;
  if (b == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(p));
  if (a < 0) a += pn;
  if (b < 0) b += pn;
  return ModP(a.get_si(), p) / ModP(b.get_si(), p);
}

template <class K>
using FieldOf = typename K::field_type;

}  // namespace reesdual
