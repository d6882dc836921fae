// Hypothesis checks (Fitting heights, entry ideal, generator count) and random instances.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "reesdual/instance.hpp"

namespace reesdual {

struct Condition {
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<int> height;    // observed height when the condition is a height bound
  std::optional<int> required;  // the bound it was compared against
};

struct HypothesisReport {
  std::vector<Condition> conditions;
  bool overall = false;
  /// n <= d: the defining ideal is the symmetric one, nothing to iterate
  bool linear_type = false;

  const Condition* find(const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
  std::string failed_names() const {
    std::string s;
    for (const auto& c : conditions)
      if (!c.pass) s += (s.empty() ? "" : ", ") + c.name;
    return s;
  }
};

class HypothesisFailure : public std::runtime_error {
 public:
  explicit HypothesisFailure(HypothesisReport r)
      : std::runtime_error("hypotheses not satisfied: " + r.failed_names()), report(std::move(r)) {}
  HypothesisReport report;
};

class RetryBudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class K>
Condition height_condition(std::string name, const IdealGens<K>& a, int bound, const GroebnerOptions& opt) {
  Condition c;
  c.name = std::move(name);
  c.height = height(a, opt);
  c.required = bound;
  c.pass = *c.height >= bound;
  c.detail = "height " + std::to_string(*c.height) + ", need >= " + std::to_string(bound);
  return c;
}

/// Height of the image of a in R = S/(f), computed as ht_S(a + (f)) - 1.
template <class K>
int height_mod_f(const IdealGens<K>& a, const Poly<K>& f, const GroebnerOptions& opt) {
  return height(a.plus(f), opt) - 1;
}

template <class K>
Condition r_height_condition(std::string name, const IdealGens<K>& a, const Poly<K>& f, int bound,
                             const GroebnerOptions& opt) {
  Condition c;
  c.name = std::move(name);
  int hs = height(a, opt);
  int hr = height_mod_f(a, f, opt);
  c.height = hr;
  c.required = bound;
  c.pass = hr >= bound;
  c.detail = "height in R " + std::to_string(hr) + " (in S " + std::to_string(hs) + "), need >= " +
             std::to_string(bound);
  return c;
}

template <class K>
Condition entry_ideal_condition(const PolyMatrix<K>& psi, const GroebnerOptions& opt) {
  Condition c;
  c.name = "I1(psi)=(x)";
  c.pass = ideal_equal(minor_ideal(psi, 1), x_ideal(psi.ring()), opt);
  c.detail = c.pass ? "entries generate (x_1..x_{d+1})" : "entries generate a proper subideal of (x)";
  return c;
}

inline void finish(HypothesisReport& r) {
  r.overall = !r.conditions.empty();
  for (const auto& c : r.conditions) r.overall = r.overall && c.pass;
}

}  // namespace detail

/// Conditions of the main theorem for an ideal instance. Heights of Fitting ideals of the
/// R-ideal are taken in R = S/(f) (see height_mod_f); the others in S.
template <class K>
HypothesisReport check_ideal_instance(const InstanceIdeal<K>& inst, const GroebnerOptions& opt = {}) {
  validate_instance(inst, 1);
  HypothesisReport r;
  const int n = static_cast<int>(inst.n()), d = inst.d;
  const auto& psi = inst.psi;

  Condition shape{"n=d+1", n == d + 1, "n = " + std::to_string(n) + ", d+1 = " + std::to_string(d + 1), {}, {}};
  if (n <= d) {
    r.linear_type = true;
    shape.detail += "; linear type, the defining ideal is the symmetric algebra ideal";
  } else if (n > d + 1) {
    shape.detail += "; out of scope";
  }
  r.conditions.push_back(shape);
  if (n < 2) {
    detail::finish(r);
    return r;
  }

  r.conditions.push_back(detail::height_condition("grade2-perfect", minor_ideal(psi, n - 1), 2, opt));
  for (int j = 1; j <= d - 1; ++j) {
    if (n - j < 1) break;
    r.conditions.push_back(detail::r_height_condition("G_d:Fitt_" + std::to_string(j), minor_ideal(psi, n - j),
                                                      inst.f, j + 1, opt));
  }
  if (n - d >= 1)
    r.conditions.push_back(detail::height_condition("G_{d+1}(J)", minor_ideal(psi, n - d), d + 1, opt));
  r.conditions.push_back(detail::entry_ideal_condition(psi, opt));
  detail::finish(r);
  return r;
}

/// Conditions of the module theorem: n = d+e, d >= 2, I1(psi) = (x), and
/// ht_R I_{n-j}(psi) >= j-e+2 for e <= j <= d+e-2.
template <class K>
HypothesisReport check_module_instance(const InstanceModule<K>& inst, const GroebnerOptions& opt = {}) {
  validate_instance(inst, inst.e);
  HypothesisReport r;
  const int n = static_cast<int>(inst.n()), d = inst.d, e = inst.e;
  r.conditions.push_back({"n=d+e", n == d + e,
                          "n = " + std::to_string(n) + ", d+e = " + std::to_string(d + e), {}, {}});
  r.conditions.push_back({"d>=2", d >= 2, "d = " + std::to_string(d), {}, {}});
  for (int j = e; j <= d + e - 2; ++j) {
    if (n - j < 1) break;
    r.conditions.push_back(detail::r_height_condition("G_d:Fitt_" + std::to_string(j), minor_ideal(inst.psi, n - j),
                                                      inst.f, j - e + 2, opt));
  }
  r.conditions.push_back(detail::entry_ideal_condition(inst.psi, opt));
  detail::finish(r);
  return r;
}

namespace detail {

template <class K>
K small_coeff(std::mt19937_64& rng, const FieldOf<K>& field, int lo, int hi) {
  // plain modulo keeps draws identical across standard libraries
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return field.from_int(lo + static_cast<int>(rng() % span));
}

/// Random linear form in the x-block, coefficients in [-3, 3], never zero.
template <class K>
Poly<K> random_linear(std::mt19937_64& rng, const RingPtr<K>& ring) {
  for (;;) {
    Poly<K> p(ring);
    for (std::size_t k = 0; k < ring->vars.x_count(); ++k)
      p += Poly<K>::variable(ring, k).scaled(small_coeff<K>(rng, ring->field, -3, 3));
    if (!p.is_zero()) return p;
  }
}

template <class K>
void for_each_exponent(std::size_t nvars, unsigned degree, std::vector<unsigned>& cur, std::size_t v,
                       const std::function<void(const std::vector<unsigned>&)>& fn) {
  if (v + 1 == nvars) {
    cur[v] = degree;
    fn(cur);
    return;
  }
  for (unsigned e = 0; e <= degree; ++e) {
    cur[v] = degree - e;
    for_each_exponent<K>(nvars, e, cur, v + 1, fn);
  }
}

/// Random form of degree m in the x-block: each monomial gets a coefficient in [-3, 3].
template <class K>
Poly<K> random_form(std::mt19937_64& rng, const RingPtr<K>& ring, int m) {
  for (;;) {
    std::vector<Term<K>> terms;
    std::vector<unsigned> cur(ring->vars.x_count());
    for_each_exponent<K>(ring->vars.x_count(), static_cast<unsigned>(m), cur, 0, [&](const std::vector<unsigned>& ex) {
      Monomial mono;
      for (std::size_t k = 0; k < ex.size(); ++k) mono.set(k, ex[k]);
      terms.push_back({mono, small_coeff<K>(rng, ring->field, -3, 3)});
    });
    auto p = Poly<K>::from_terms(ring, std::move(terms));
    if (!p.is_zero()) return p;
  }
}

template <class K>
PolyMatrix<K> random_linear_matrix(std::mt19937_64& rng, const RingPtr<K>& ring, std::size_t rows, std::size_t cols) {
  PolyMatrix<K> psi(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) psi(i, j) = random_linear(rng, ring);
  return psi;
}

}  // namespace detail

/// Deterministic per (d, m, seed, field): draws until the hypotheses pass.
template <class K>
InstanceIdeal<K> random_instance(int d, int m, std::uint64_t seed, FieldOf<K> field = {}, int max_tries = 50,
                                 const GroebnerOptions& opt = {}) {
  if (d < 2 || m < 1) throw std::invalid_argument("random_instance needs d >= 2 and m >= 1");
  std::mt19937_64 rng(seed);
  auto ring = make_ring<K>(VarSet(d + 1, d + 1), field);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    InstanceIdeal<K> inst;
    inst.ring = ring;
    inst.d = d;
    inst.m = m;
    inst.psi = detail::random_linear_matrix(rng, ring, d + 1, d);
    inst.f = detail::random_form(rng, ring, m);
    if (check_ideal_instance(inst, opt).overall) return inst;
  }
  throw RetryBudgetExhausted("no instance passed the hypotheses after " + std::to_string(max_tries) +
                             " draws (seed " + std::to_string(seed) + ")");
}

template <class K>
InstanceModule<K> random_module_instance(int d, int e, int m, std::uint64_t seed, FieldOf<K> field = {},
                                         int max_tries = 50, const GroebnerOptions& opt = {}) {
  if (d < 2 || e < 1 || m < 1) throw std::invalid_argument("random_module_instance needs d >= 2, e >= 1, m >= 1");
  std::mt19937_64 rng(seed);
  int n = d + e;
  auto ring = make_ring<K>(VarSet(d + 1, n), field);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    InstanceModule<K> inst;
    inst.ring = ring;
    inst.d = d;
    inst.m = m;
    inst.e = e;
    inst.psi = detail::random_linear_matrix(rng, ring, n, n - e);
    inst.f = detail::random_form(rng, ring, m);
    if (check_module_instance(inst, opt).overall) return inst;
  }
  throw RetryBudgetExhausted("no module instance passed the hypotheses after " + std::to_string(max_tries) +
                             " draws (seed " + std::to_string(seed) + ")");
}

}  // namespace reesdual
