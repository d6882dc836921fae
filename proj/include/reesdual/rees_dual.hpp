// Jacobian duals, modified Jacobian dual iterations, matrix iterations and the
// differential-operator description of the defining ideal.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "reesdual/hypotheses.hpp"
#include "reesdual/instance.hpp"

namespace reesdual {

enum class PartialMode { greedy, euler };

inline const char* to_string(PartialMode m) { return m == PartialMode::greedy ? "greedy" : "euler"; }

/// B(psi): the (d+1) x cols matrix over k[T] with [x]·B(psi) = [T]·psi.
template <class K>
PolyMatrix<K> jacobian_dual(const PolyMatrix<K>& psi) {
  const auto& ring = psi.ring();
  const auto& vs = ring->vars;
  if (psi.rows() > vs.t_count()) throw InstanceError("psi has more rows than T-variables");
  PolyMatrix<K> B(ring, vs.x_count(), psi.cols());
  for (std::size_t i = 0; i < psi.rows(); ++i)
    for (std::size_t j = 0; j < psi.cols(); ++j) {
      const auto& e = psi(i, j);
      if (!is_x_linear(e))
        throw InstanceError("psi entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not x-linear");
      for (const auto& t : e.terms()) {
        std::size_t k = 0;
        while (!t.m[k]) ++k;
        B(k, j) += Poly<K>::monomial(ring, Monomial::variable(vs.t(i)), t.c);
      }
    }
  for (std::size_t j = 0; j < B.cols(); ++j) B.declare_bidegree(j, {0, 1});
  return B;
}

/// A column P with [x]·P = F. Greedy sends each term to its lowest-index x-variable;
/// euler takes (1/a)·dF/dx_k with a the x-degree of F.
template <class K>
PolyMatrix<K> partial_column(const Poly<K>& F, PartialMode mode) {
  const auto& ring = F.ring();
  const auto& vs = ring->vars;
  auto bd = F.bidegree();
  if (bd.is_mixed()) throw HypothesisViolation("partial column of a polynomial that is not bihomogeneous");
  PolyMatrix<K> col(ring, vs.x_count(), 1);
  if (bd.is_zero()) return col;
  if (bd.deg.x <= 0) throw HypothesisViolation("partial column of a polynomial with x-degree 0: " + F.to_string());
  if (mode == PartialMode::greedy) {
    std::vector<std::vector<Term<K>>> parts(vs.x_count());
    for (const auto& t : F.terms()) {
      std::size_t k = 0;
      while (!t.m[vs.x(k)]) ++k;
      parts[k].push_back({t.m / Monomial::variable(vs.x(k)), t.c});
    }
    for (std::size_t k = 0; k < parts.size(); ++k) col(k, 0) = Poly<K>::from_terms(ring, std::move(parts[k]));
  } else {
    K a = ring->field.from_int(bd.deg.x);
    if (a.is_zero())
      throw std::domain_error("euler mode needs the x-degree " + std::to_string(bd.deg.x) +
                              " to be invertible in the field");
    K inv = a.inverse();
    for (std::size_t k = 0; k < vs.x_count(); ++k) col(k, 0) = F.derivative(vs.x(k)).scaled(inv);
  }
  col.declare_bidegree(0, {bd.deg.x - 1, bd.deg.t});
  return col;
}

template <class K>
struct ModifiedDual {
  PolyMatrix<K> B;  // [B(psi) | ∂f]
  IdealGens<K> L;   // entries of [x]·B
};

template <class K>
ModifiedDual<K> modified_jacobian_dual(const InstanceIdeal<K>& inst, PartialMode mode = PartialMode::greedy) {
  auto B = jacobian_dual(inst.psi).hconcat(partial_column(inst.f, mode));
  IdealGens<K> L(inst.ring, B.left_multiply(x_variables(inst.ring)));
  return {std::move(B), std::move(L)};
}

/// (i)-th state of the modified Jacobian dual iteration.
template <class K>
struct IterationState {
  int step = 0;
  PolyMatrix<K> B;
  IdealGens<K> L;
  /// det B in the square case, zero otherwise
  Poly<K> F;
  /// generators of I_{d,1}(B(psi), B)
  std::vector<Poly<K>> minors;
};

namespace detail {

template <class K>
void push_unique(std::vector<Poly<K>>& out, std::vector<Poly<K>>& seen_monic, const Poly<K>& p) {
  if (p.is_zero()) return;
  Poly<K> mp = p.monic();
  for (const auto& s : seen_monic)
    if (s == mp) return;
  seen_monic.push_back(std::move(mp));
  out.push_back(p);
}

/// r x r minors of M with r-i columns among the first `split` columns and i among the rest.
template <class K>
std::vector<Poly<K>> split_minors(const PolyMatrix<K>& M, std::size_t split, std::size_t i) {
  std::vector<Poly<K>> out, seen;
  std::size_t r = M.rows();
  if (i > r) return out;
  std::vector<std::size_t> rows(r);
  for (std::size_t k = 0; k < r; ++k) rows[k] = k;
  for_each_subset(split, r - i, [&](const std::vector<std::size_t>& a) {
    for_each_subset(M.cols() - split, i, [&](const std::vector<std::size_t>& b) {
      std::vector<std::size_t> cols = a;
      for (auto c : b) cols.push_back(split + c);
      push_unique(out, seen, M.select(rows, cols).determinant());
    });
  });
  return out;
}

template <class K>
bool positive_x_degree(const Poly<K>& u) {
  auto bd = u.bidegree();
  if (bd.is_mixed()) throw HypothesisViolation("minor is not bihomogeneous: " + u.to_string());
  return bd.is_bihomogeneous() && bd.deg.x > 0;
}

template <class K>
PolyMatrix<K> columns_for(const RingPtr<K>& ring, const std::vector<Poly<K>>& us, PartialMode mode) {
  PolyMatrix<K> C(ring, ring->vars.x_count(), 0);
  for (const auto& u : us) C = C.hconcat(partial_column(u, mode));
  return C;
}

}  // namespace detail

/// I_{r-i,i}(M', M) where the columns of M' occur among those of M.
template <class K>
IdealGens<K> subminor_ideal(const PolyMatrix<K>& Mprime, const PolyMatrix<K>& M, std::size_t i) {
  if (Mprime.rows() != M.rows()) throw std::invalid_argument("subminor_ideal: row counts differ");
  std::vector<std::size_t> inside, outside;
  std::vector<bool> used(M.cols(), false);
  for (std::size_t a = 0; a < Mprime.cols(); ++a) {
    auto col = Mprime.column_entries(a);
    std::size_t b = 0;
    while (b < M.cols() && (used[b] || M.column_entries(b) != col)) ++b;
    if (b == M.cols()) throw std::invalid_argument("subminor_ideal: M' is not a column submatrix of M");
    used[b] = true;
    inside.push_back(b);
  }
  for (std::size_t b = 0; b < M.cols(); ++b)
    if (!used[b]) outside.push_back(b);
  std::vector<std::size_t> rows(M.rows());
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = k;
  auto reordered = M.select(rows, inside).hconcat(M.select(rows, outside));
  return IdealGens<K>(M.ring(), detail::split_minors(reordered, inside.size(), i));
}

/// Modified Jacobian dual iterations, states 1..m. When B(psi) has d columns every
/// B_i is square and the step is F_i = det[B(psi) | ∂F_{i-1}].
template <class K>
std::vector<IterationState<K>> mjd_iterations(const InstanceIdeal<K>& inst, PartialMode mode = PartialMode::greedy) {
  const auto& ring = inst.ring;
  const auto Bpsi = jacobian_dual(inst.psi);
  const std::size_t d = static_cast<std::size_t>(inst.d);
  std::vector<IterationState<K>> states;

  if (Bpsi.cols() == d) {
    IdealGens<K> L(ring, ell_forms(inst));
    Poly<K> F = inst.f;
    for (int i = 1; i <= inst.m; ++i) {
      L = L.plus(F);
      auto B = Bpsi.hconcat(partial_column(F, mode));
      Poly<K> Fi = B.determinant();
      if (Fi.is_zero())
        throw HypothesisViolation("determinant of iteration " + std::to_string(i) + " vanishes");
      states.push_back({i, std::move(B), L, Fi, {Fi}});
      F = std::move(Fi);
    }
    return states;
  }

  auto md = modified_jacobian_dual(inst, mode);
  states.push_back({1, md.B, md.L, Poly<K>(ring), detail::split_minors(md.B, Bpsi.cols(), 1)});
  for (int i = 2; i <= inst.m; ++i) {
    const auto& prev = states.back();
    std::vector<Poly<K>> us;
    for (const auto& u : prev.minors)
      if (detail::positive_x_degree(u)) us.push_back(u);
    auto B = Bpsi.hconcat(detail::columns_for(ring, us, mode));
    IdealGens<K> L = prev.L;
    for (const auto& u : us) L.add(u);
    auto mins = detail::split_minors(B, Bpsi.cols(), 1);
    states.push_back({i, std::move(B), std::move(L), Poly<K>(ring), std::move(mins)});
  }
  return states;
}

/// L_m + I_{d,1}(B(psi), B_m); in the square case L_m + (det B_m).
template <class K>
IdealGens<K> mjd_ideal(const std::vector<IterationState<K>>& states) {
  IdealGens<K> out = states.back().L;
  for (const auto& u : states.back().minors) out.add(u);
  return out;
}

template <class K>
struct MatrixIterationResult {
  PolyMatrix<K> B;
  IdealGens<K> ideal;  // L + I_{d+1}(B)
};

/// Matrix iterations B_1 = B, B_i = [B_{i-1} | C]; steps <= 1 gives B itself.
/// Minors already turned into columns in an earlier step are not appended again.
template <class K>
MatrixIterationResult<K> matrix_iterations(const InstanceIdeal<K>& inst, int steps,
                                           PartialMode mode = PartialMode::greedy) {
  auto md = modified_jacobian_dual(inst, mode);
  const std::size_t r = md.B.rows();
  auto B = md.B;
  std::vector<Poly<K>> used, used_monic;
  for (int i = 2; i <= steps; ++i) {
    std::vector<Poly<K>> fresh;
    for (auto& u : minors(B, r)) {
      if (!detail::positive_x_degree(u)) continue;
      std::size_t before = used.size();
      detail::push_unique(used, used_monic, u);
      if (used.size() > before) fresh.push_back(u);
    }
    B = B.hconcat(detail::columns_for(inst.ring, fresh, mode));
  }
  IdealGens<K> ideal = md.L;
  std::vector<Poly<K>> all, seen;
  for (auto& u : minors(B, r)) detail::push_unique(all, seen, u);
  for (auto& u : all) ideal.add(u);
  return {std::move(B), std::move(ideal)};
}

template <class K>
struct DiffopResult {
  IdealGens<K> ideal;            // (ell_1..ell_d, f, ∂f, ..., ∂^m f)
  std::vector<Poly<K>> powers;   // ∂f, ..., ∂^m f
};

/// The operator ∂ = det[B(psi) | ∂_x], expanded along the operator column.
template <class K>
Poly<K> apply_diffop(const PolyMatrix<K>& Bpsi, const Poly<K>& g) {
  const auto& vs = g.vars();
  const std::size_t r = Bpsi.rows();
  Poly<K> out(g.ring());
  for (std::size_t k = 0; k < r; ++k) {
    auto dg = g.derivative(vs.x(k));
    if (dg.is_zero()) continue;
    auto cof = Bpsi.without_row(k).determinant();
    // entry (k, r-1) of the square matrix [B(psi) | ∂_x]
    if ((k + r - 1) % 2) out -= cof * dg;
    else out += cof * dg;
  }
  return out;
}

template <class K>
DiffopResult<K> diffop_iterations(const InstanceIdeal<K>& inst) {
  auto ch = inst.ring->field.characteristic();
  if (ch != 0 && ch <= static_cast<unsigned long>(inst.m))
    throw std::domain_error("differential operator method needs characteristic 0 or > m (characteristic " +
                            std::to_string(ch) + ", m = " + std::to_string(inst.m) + ")");
  auto Bpsi = jacobian_dual(inst.psi);
  if (Bpsi.cols() + 1 != Bpsi.rows()) throw InstanceError("differential operator method needs n = d+1");
  DiffopResult<K> res;
  res.ideal = IdealGens<K>(inst.ring, ell_forms(inst));
  res.ideal.add(inst.f);
  Poly<K> g = inst.f;
  for (int i = 1; i <= inst.m; ++i) {
    g = apply_diffop(Bpsi, g);
    res.powers.push_back(g);
    res.ideal.add(g);
  }
  return res;
}

/// For a = (a_1..a_r) and an r x (r-1) matrix M with m_t = det(M without row t), checks
/// a_t·m_k - (-1)^(t-k)·a_k·m_t ∈ ([a]·M) for all t, k.
template <class K>
bool cramer_check(const std::vector<Poly<K>>& a, const PolyMatrix<K>& M, const GroebnerOptions& opt = {}) {
  const std::size_t r = a.size();
  if (M.rows() != r || M.cols() + 1 != r) throw std::invalid_argument("cramer_check: M must be r x (r-1)");
  const auto& ring = M.ring();
  auto gb = groebner(IdealGens<K>(ring, M.left_multiply(a)), opt);
  std::vector<Poly<K>> mt;
  for (std::size_t t = 0; t < r; ++t) mt.push_back(M.without_row(t).determinant());
  for (std::size_t t = 0; t < r; ++t)
    for (std::size_t k = 0; k < r; ++k) {
      Poly<K> lhs = a[t] * mt[k];
      Poly<K> rhs = a[k] * mt[t];
      Poly<K> expr = ((t + k) % 2) ? lhs + rhs : lhs - rhs;
      if (!contains(gb, expr)) return false;
    }
  return true;
}

template <class K>
struct DefiningIdeal {
  /// ell_1..ell_d, f, F_1..F_m
  IdealGens<K> A;
  /// the same list without f, read modulo (f)
  IdealGens<K> J_mod_f;
  std::vector<IterationState<K>> states;
  HypothesisReport report;
};

/// The defining ideal L_m + (det B_m); refuses instances that fail the hypotheses.
template <class K>
DefiningIdeal<K> defining_ideal(const InstanceIdeal<K>& inst, PartialMode mode = PartialMode::greedy,
                                const GroebnerOptions& opt = {}) {
  auto report = check_ideal_instance(inst, opt);
  if (!report.overall) throw HypothesisFailure(report);
  DefiningIdeal<K> out;
  out.report = std::move(report);
  out.states = mjd_iterations(inst, mode);
  out.A = IdealGens<K>(inst.ring);
  out.J_mod_f = IdealGens<K>(inst.ring);
  for (auto& l : ell_forms(inst)) {
    out.A.add(l);
    out.J_mod_f.add(l);
  }
  out.A.add(inst.f);
  for (const auto& s : out.states) {
    out.A.add(s.F);
    out.J_mod_f.add(s.F);
  }
  return out;
}

template <class K>
struct SpecialFiber {
  Poly<K> generator;
  int degree = 0;
};

/// The generator of A that is pure in T.
template <class K>
SpecialFiber<K> special_fiber(const IdealGens<K>& A) {
  std::vector<const Poly<K>*> pure;
  for (const auto& g : A.gens) {
    auto bd = g.bidegree();
    if (bd.is_bihomogeneous() && bd.deg.x == 0) pure.push_back(&g);
  }
  if (pure.size() != 1)
    throw HypothesisViolation("expected exactly one generator pure in T, found " + std::to_string(pure.size()));
  return {*pure.front(), pure.front()->bidegree().deg.t};
}

/// A ∩ k[T] from an elimination order.
template <class K>
IdealGens<K> fiber_by_elimination(const IdealGens<K>& A, const GroebnerOptions& opt = {}) {
  const auto& vs = A.ring->vars;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < vs.t_count(); ++i) keep.push_back(vs.t(i));
  return eliminate(A, keep, opt);
}

/// N = sum over the n_vars largest degrees of (deg - 1), plus 1.
inline int saturation_index_bound(std::vector<int> degrees, std::size_t n_vars) {
  if (degrees.size() < n_vars)
    throw std::invalid_argument("saturation_index_bound needs at least as many degrees as variables");
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  int N = 1;
  for (std::size_t i = 0; i < n_vars; ++i) N += degrees[i] - 1;
  return N;
}

/// x-degrees of the generators of an ideal whose generators are bihomogeneous.
template <class K>
std::vector<int> x_degrees(const IdealGens<K>& a) {
  std::vector<int> out;
  for (const auto& g : a.gens) {
    auto bd = g.bidegree();
    if (!bd.is_bihomogeneous()) throw std::invalid_argument("generator is not bihomogeneous: " + g.to_string());
    out.push_back(bd.deg.x);
  }
  return out;
}

/// The oracle: L : (x)^∞ together with its stabilization index.
template <class K>
SaturationResult<K> oracle_saturation(const InstanceIdeal<K>& inst, const GroebnerOptions& opt = {}) {
  return saturate(symmetric_ideal(inst), x_ideal(inst.ring), opt);
}

/// Indices of generators lying in the ideal generated by the others. Generators must be
/// bihomogeneous; only the others of bidegree <= that of the candidate can contribute.
template <class K>
std::vector<std::size_t> redundant_generators(const IdealGens<K>& a, const GroebnerOptions& opt = {}) {
  std::vector<BiDegree> deg;
  for (const auto& g : a.gens) {
    auto bd = g.bidegree();
    if (!bd.is_bihomogeneous()) throw std::invalid_argument("generator is not bihomogeneous: " + g.to_string());
    deg.push_back(bd.deg);
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < a.gens.size(); ++k) {
    IdealGens<K> rest(a.ring);
    for (std::size_t j = 0; j < a.gens.size(); ++j)
      if (j != k && deg[j].x <= deg[k].x && deg[j].t <= deg[k].t) rest.add(a.gens[j]);
    if (rest.is_zero()) continue;
    if (contains(groebner(rest, opt), a.gens[k])) out.push_back(k);
  }
  return out;
}

}  // namespace reesdual
