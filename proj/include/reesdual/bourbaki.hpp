// Module case: reduction to an ideal through a randomly specialized Bourbaki ideal.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reesdual/hypotheses.hpp"
#include "reesdual/rees_dual.hpp"

namespace reesdual {

template <class K>
using ScalarMatrix = std::vector<std::vector<K>>;

/// Inverse by Gauss-Jordan elimination; nullopt when singular.
template <class K>
std::optional<ScalarMatrix<K>> invert(const ScalarMatrix<K>& a, const FieldOf<K>& field) {
  const std::size_t n = a.size();
  ScalarMatrix<K> m = a, inv(n, std::vector<K>(n, field.from_int(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = field.from_int(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    K s = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      K f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j].sub_mul(f, m[c][j]);
        inv[r][j].sub_mul(f, inv[c][j]);
      }
    }
  }
  return inv;
}

template <class K>
struct BourbakiReduction {
  std::uint64_t seed = 0;
  int attempts = 0;
  /// n x (e-1) specialized coefficients: y_j = sum_i Z_ij a_i
  ScalarMatrix<K> Z;
  /// ideal instance over k[x, T_1..T_{d+1}]; its T_i stands for T_{e-1+i} of the module ring
  InstanceIdeal<K> ideal;
  /// Y_j = sum_i Z_ij T_i in the module ring
  std::vector<Poly<K>> Y;
};

/// Specializes the generic Bourbaki construction at random integer points in [-3, 3],
/// drawing again until the top block is invertible and the ideal instance passes.
template <class K>
BourbakiReduction<K> bourbaki_reduce(const InstanceModule<K>& inst, std::uint64_t seed, int max_tries = 50,
                                     const GroebnerOptions& opt = {}) {
  validate_instance(inst, inst.e);
  const auto& field = inst.ring->field;
  const std::size_t n = inst.n(), e = static_cast<std::size_t>(inst.e), cols = inst.psi.cols();
  BourbakiReduction<K> red;
  red.seed = seed;

  if (e == 1) {
    red.ideal = inst;
    red.attempts = 1;
    return red;
  }

  std::mt19937_64 rng(seed);
  auto small = make_ring<K>(VarSet(inst.d + 1, n - e + 1), field);
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    ScalarMatrix<K> Z(n, std::vector<K>(e - 1, field.from_int(0)));
    for (auto& row : Z)
      for (auto& z : row) z = detail::small_coeff<K>(rng, field, -3, 3);
    ScalarMatrix<K> top(Z.begin(), Z.begin() + (e - 1));
    auto top_inv = invert<K>(top, field);
    if (!top_inv) continue;

    // psi_I = psi_bot - Z_bot · Z_top^{-1} · psi_top
    ScalarMatrix<K> W(n - e + 1, std::vector<K>(e - 1, field.from_int(0)));
    for (std::size_t r = 0; r < n - e + 1; ++r)
      for (std::size_t c = 0; c < e - 1; ++c)
        for (std::size_t k = 0; k < e - 1; ++k) W[r][c] += Z[e - 1 + r][k] * (*top_inv)[k][c];
    InstanceIdeal<K> ideal;
    ideal.ring = small;
    ideal.d = inst.d;
    ideal.m = inst.m;
    ideal.f = inst.f.embed(small);
    ideal.psi = PolyMatrix<K>(small, n - e + 1, cols);
    for (std::size_t r = 0; r < n - e + 1; ++r)
      for (std::size_t j = 0; j < cols; ++j) {
        Poly<K> entry = inst.psi(e - 1 + r, j);
        for (std::size_t c = 0; c < e - 1; ++c)
          if (!W[r][c].is_zero()) entry -= inst.psi(c, j).scaled(W[r][c]);
        ideal.psi(r, j) = entry.embed(small);
      }
    if (!check_ideal_instance(ideal, opt).overall) continue;

    red.attempts = attempt;
    red.Z = std::move(Z);
    red.ideal = std::move(ideal);
    for (std::size_t j = 0; j < e - 1; ++j) {
      Poly<K> y(inst.ring);
      for (std::size_t i = 0; i < n; ++i)
        y += Poly<K>::variable(inst.ring, inst.ring->vars.t(i)).scaled(red.Z[i][j]);
      red.Y.push_back(std::move(y));
    }
    return red;
  }
  throw RetryBudgetExhausted("Bourbaki specialization failed " + std::to_string(max_tries) +
                             " times for seed " + std::to_string(seed) + "; try another --seed");
}

/// Moves a polynomial of the reduction's ideal ring into the module ring (T_i -> T_{e-1+i}).
template <class K>
Poly<K> lift_from_reduction(const Poly<K>& p, const InstanceModule<K>& inst) {
  const auto& small = p.vars();
  const auto& big = inst.ring->vars;
  std::vector<std::size_t> map(small.size());
  for (std::size_t k = 0; k < small.x_count(); ++k) map[small.x(k)] = big.x(k);
  for (std::size_t i = 0; i < small.t_count(); ++i) map[small.t(i)] = big.t(inst.e - 1 + i);
  return p.remap(inst.ring, map);
}

template <class K>
struct ModuleDefiningIdeal {
  /// ell_1..ell_{n-e}, f, F_1..F_m computed on the module's own dual
  IdealGens<K> J;
  std::vector<IterationState<K>> states;
  HypothesisReport report;
  BourbakiReduction<K> reduction;
  /// the ideal-case generators of the reduction, lifted to the module ring
  IdealGens<K> ideal_side;
  /// J + (Y) = ideal_side + (Y)
  bool cross_check = false;
};

template <class K>
ModuleDefiningIdeal<K> module_defining_ideal(const InstanceModule<K>& inst, std::uint64_t seed,
                                             PartialMode mode = PartialMode::greedy, const GroebnerOptions& opt = {}) {
  ModuleDefiningIdeal<K> out;
  out.report = check_module_instance(inst, opt);
  if (!out.report.overall) throw HypothesisFailure(out.report);
  out.states = mjd_iterations(static_cast<const InstanceIdeal<K>&>(inst), mode);
  out.J = mjd_ideal(out.states);

  out.reduction = bourbaki_reduce(inst, seed, 50, opt);
  auto ideal_result = defining_ideal(out.reduction.ideal, mode, opt);
  out.ideal_side = IdealGens<K>(inst.ring);
  for (const auto& g : ideal_result.A.gens) out.ideal_side.add(lift_from_reduction(g, inst));

  IdealGens<K> Y(inst.ring, out.reduction.Y);
  out.cross_check = ideal_equal(out.J.plus(Y), out.ideal_side.plus(Y), opt);
  return out;
}

}  // namespace reesdual
