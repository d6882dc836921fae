// Problem statements: a hypersurface equation f and a linear presentation psi.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "reesdual/groebner.hpp"
#include "reesdual/matrix.hpp"

namespace reesdual {

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation meets something the theorem hypotheses rule out
/// (vanishing determinant, a minor that is not in (x), ...).
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ideal case: psi is n x (n-1), the ring is k[x_1..x_{d+1}, T_1..T_n].
template <class K>
struct InstanceIdeal {
  RingPtr<K> ring;
  int d = 0;
  int m = 0;
  Poly<K> f;
  PolyMatrix<K> psi;

  std::size_t n() const { return psi.rows(); }
  /// number of ell's, i.e. columns of psi
  std::size_t relations() const { return psi.cols(); }
};

/// Module case: psi is n x (n-e).
template <class K>
struct InstanceModule : InstanceIdeal<K> {
  int e = 1;
};

/// True when p is a linear form in the x-block alone (zero allowed).
template <class K>
bool is_x_linear(const Poly<K>& p) {
  const auto& vs = p.vars();
  for (const auto& t : p.terms())
    if (t.m.degree() != 1 || !t.m.block_degree(0, vs.x_count())) return false;
  return true;
}

/// Shape checks shared by the ideal and module cases; `e` is the rank (1 for ideals).
template <class K>
void validate_instance(const InstanceIdeal<K>& inst, int e = 1) {
  const auto& vs = inst.ring->vars;
  if (inst.d < 1) throw InstanceError("d must be at least 1");
  if (inst.m < 1) throw InstanceError("m must be at least 1");
  if (vs.x_count() != static_cast<std::size_t>(inst.d + 1))
    throw InstanceError("ring has " + std::to_string(vs.x_count()) + " x-variables, expected d+1");
  if (inst.psi.rows() != vs.t_count()) throw InstanceError("psi must have one row per T-variable");
  if (static_cast<long>(inst.psi.cols()) != static_cast<long>(inst.psi.rows()) - e)
    throw InstanceError("psi must have n-" + std::to_string(e) + " columns");
  auto bd = inst.f.bidegree();
  if (!bd.is_bihomogeneous() || bd.deg.t != 0 || bd.deg.x != inst.m || !inst.f.supported_in(0, vs.x_count()))
    throw InstanceError("f must be a nonzero homogeneous form of degree m in the x-variables");
  for (std::size_t i = 0; i < inst.psi.rows(); ++i)
    for (std::size_t j = 0; j < inst.psi.cols(); ++j)
      if (!is_x_linear(inst.psi(i, j)))
        throw InstanceError("psi entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") is not a linear form in the x-variables");
}

template <class K>
std::vector<Poly<K>> x_variables(const RingPtr<K>& ring) {
  std::vector<Poly<K>> xs;
  for (std::size_t k = 0; k < ring->vars.x_count(); ++k) xs.push_back(Poly<K>::variable(ring, ring->vars.x(k)));
  return xs;
}

template <class K>
std::vector<Poly<K>> t_variables(const RingPtr<K>& ring) {
  std::vector<Poly<K>> ts;
  for (std::size_t i = 0; i < ring->vars.t_count(); ++i) ts.push_back(Poly<K>::variable(ring, ring->vars.t(i)));
  return ts;
}

/// (x_1, ..., x_{d+1})
template <class K>
IdealGens<K> x_ideal(const RingPtr<K>& ring) {
  return IdealGens<K>(ring, x_variables(ring));
}

/// ell_j = sum_i T_i psi_ij, in column order.
template <class K>
std::vector<Poly<K>> ell_forms(const InstanceIdeal<K>& inst) {
  return inst.psi.left_multiply(t_variables(inst.ring));
}

/// The symmetric algebra ideal (ell_1, ..., ell_{n-e}, f).
template <class K>
IdealGens<K> symmetric_ideal(const InstanceIdeal<K>& inst) {
  IdealGens<K> L(inst.ring);
  for (auto& l : ell_forms(inst)) L.add(l);
  L.add(inst.f);
  return L;
}

/// Ideal of t x t minors; t = 0 gives the unit ideal.
template <class K>
IdealGens<K> minor_ideal(const PolyMatrix<K>& m, std::size_t t) {
  return IdealGens<K>(m.ring(), minors(m, t));
}

}  // namespace reesdual
