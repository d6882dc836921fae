// Fixtures shared by the test binaries.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "reesdual/reesdual.hpp"

namespace testing_support {

using namespace reesdual;

template <class K = Rational>
RingPtr<K> ring3x3(FieldOf<K> field = {}) {
  return make_ring<K>(VarSet(3, 3), field);
}

template <class K>
Poly<K> P(const RingPtr<K>& ring, const std::string& s) {
  return parse_poly(s, ring);
}

template <class K>
PolyMatrix<K> matrix(const RingPtr<K>& ring, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Poly<K>>> ps;
  for (const auto& r : rows) {
    std::vector<Poly<K>> row;
    for (const auto& s : r) row.push_back(parse_poly(s, ring));
    ps.push_back(std::move(row));
  }
  return PolyMatrix<K>::from_rows(ring, ps);
}

/// d = 2, f = x1^3, psi = [[x1,x3],[x2,x1],[x3,x2]].
template <class K = Rational>
InstanceIdeal<K> worked_example(FieldOf<K> field = {}) {
  InstanceIdeal<K> inst;
  inst.ring = ring3x3<K>(field);
  inst.d = 2;
  inst.m = 3;
  inst.f = P(inst.ring, "x1^3");
  inst.psi = matrix(inst.ring, {{"x1", "x3"}, {"x2", "x1"}, {"x3", "x2"}});
  return inst;
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t nvars, unsigned maxexp) {
  Monomial m;
  for (std::size_t v = 0; v < nvars; ++v) m.set(v, static_cast<unsigned>(rng() % maxexp));
  return m;
}

/// Random polynomial with up to `terms` terms, exponents below `maxexp`, coefficients in [-5, 5].
template <class K>
Poly<K> random_poly(std::mt19937_64& rng, const RingPtr<K>& ring, int terms, unsigned maxexp,
                    std::size_t nvars = 0) {
  if (!nvars) nvars = ring->vars.size();
  std::vector<Term<K>> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (std::size_t v = 0; v < nvars; ++v) m.set(v, static_cast<unsigned>(rng() % maxexp));
    ts.push_back({m, ring->field.from_int(static_cast<long>(rng() % 11) - 5)});
  }
  return Poly<K>::from_terms(ring, std::move(ts));
}

}  // namespace testing_support
