// Buchberger's algorithm with the Gebauer-Moeller pair criteria.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "reesdual/poly.hpp"

namespace reesdual {

/// Generators of an ideal; zero generators are never stored, an empty list is the zero ideal.
template <class K>
struct IdealGens {
  IdealGens() = default;
  IdealGens(RingPtr<K> r, std::vector<Poly<K>> g = {}) : ring(std::move(r)) {
    for (auto& p : g) add(std::move(p));
  }

  void add(Poly<K> p) {
    if (p.ring() && !(*p.ring() == *ring)) throw RingMismatch();
    if (!p.is_zero()) gens.push_back(std::move(p));
  }
  IdealGens plus(const IdealGens& o) const {
    IdealGens r = *this;
    for (const auto& p : o.gens) r.add(p);
    return r;
  }
  IdealGens plus(const Poly<K>& p) const {
    IdealGens r = *this;
    r.add(p);
    return r;
  }
  std::size_t size() const { return gens.size(); }
  bool is_zero() const { return gens.empty(); }

  RingPtr<K> ring;
  std::vector<Poly<K>> gens;
};

struct GroebnerOptions {
  std::size_t max_basis = 20000;
  std::size_t max_pairs = 2000000;
};

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class K>
struct GroebnerBasis {
  IdealGens<K> basis;
  TermOrder order;
};

namespace detail {

template <class K>
struct GPoly {
  std::vector<Term<K>> terms;  // sorted descending in the active order
  std::uint32_t mask = 0;      // support of the leading monomial
  std::uint32_t sugar = 0;

  const Monomial& lm() const { return terms.front().m; }
  bool empty() const { return terms.empty(); }
};

template <class K>
std::vector<Term<K>> sorted_terms(const Poly<K>& p, const TermOrder& ord) {
  std::vector<Term<K>> t = p.terms();
  if (!(ord == p.ring()->order))
    std::sort(t.begin(), t.end(), [&](const Term<K>& a, const Term<K>& b) { return ord.compare(a.m, b.m) > 0; });
  return t;
}

template <class K>
void make_monic(GPoly<K>& g) {
  if (g.empty() || g.terms.front().c.is_one()) return;
  K inv = g.terms.front().c.inverse();
  for (auto& t : g.terms) t.c *= inv;
}

/// p[from..] -= c * m * g, where c*m*LT(g) cancels p[from]. Terms before `from` are untouched.
template <class K>
void subtract_multiple(std::vector<Term<K>>& p, std::size_t from, const K& c, const Monomial& m,
                       const std::vector<Term<K>>& g, const TermOrder& ord, std::vector<Term<K>>& scratch) {
  scratch.clear();
  scratch.reserve(p.size() + g.size());
  for (std::size_t i = 0; i < from; ++i) scratch.push_back(std::move(p[i]));
  std::size_t i = from + 1, j = 1;  // leading terms cancel by construction
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      scratch.push_back(std::move(p[i++]));
      continue;
    }
    Monomial gm = g[j].m * m;
    int cmp = i == p.size() ? -1 : ord.compare(p[i].m, gm);
    if (cmp > 0) {
      scratch.push_back(std::move(p[i++]));
    } else if (cmp < 0) {
      scratch.push_back({gm, -(g[j].c * c)});
      ++j;
    } else {
      p[i].c.sub_mul(g[j].c, c);
      if (!p[i].c.is_zero()) scratch.push_back(std::move(p[i]));
      ++i;
      ++j;
    }
  }
  p.swap(scratch);
}

template <class K>
const GPoly<K>* find_reducer(const Monomial& m, std::uint32_t mask, const std::vector<GPoly<K>>& basis,
                             const std::vector<char>* active) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (active && !(*active)[k]) continue;
    const auto& g = basis[k];
    if ((g.mask & ~mask) == 0 && g.lm().divides(m)) return &g;
  }
  return nullptr;
}

/// Reduces p modulo the (monic) basis. With `full`, every term is reduced; otherwise
/// only the leading term is, until it is irreducible.
template <class K>
void reduce_heap(std::vector<Term<K>>& p, const std::vector<GPoly<K>>& basis, const std::vector<char>* active,
                 const TermOrder& ord, bool full, std::uint32_t* sugar);

template <class K>
void reduce(std::vector<Term<K>>& p, const std::vector<GPoly<K>>& basis, const std::vector<char>* active,
            const TermOrder& ord, bool full, std::uint32_t* sugar = nullptr) {
  // merging costs |p| per step, so long polynomials go through a heap instead
  if (p.size() > 256) return reduce_heap(p, basis, active, ord, full, sugar);
  std::vector<Term<K>> scratch;
  std::size_t pos = 0;
  while (pos < p.size()) {
    const auto& t = p[pos];
    const GPoly<K>* g = find_reducer(t.m, t.m.support_mask(), basis, active);
    if (!g) {
      if (!full) return;
      ++pos;
      continue;
    }
    Monomial q = t.m / g->lm();
    K c = t.c;  // reducers are monic
    if (sugar) *sugar = std::max(*sugar, g->sugar + q.degree());
    subtract_multiple(p, pos, c, q, g->terms, ord, scratch);
  }
}

template <class K>
void reduce_heap(std::vector<Term<K>>& p, const std::vector<GPoly<K>>& basis, const std::vector<char>* active,
                 const TermOrder& ord, bool full, std::uint32_t* sugar) {
  auto less = [&](const Term<K>& a, const Term<K>& b) { return ord.compare(a.m, b.m) < 0; };
  std::vector<Term<K>> heap = std::move(p), out;
  std::make_heap(heap.begin(), heap.end(), less);
  auto pop = [&]() {
    std::pop_heap(heap.begin(), heap.end(), less);
    Term<K> t = std::move(heap.back());
    heap.pop_back();
    while (!heap.empty() && heap.front().m == t.m) {
      std::pop_heap(heap.begin(), heap.end(), less);
      t.c += heap.back().c;
      heap.pop_back();
    }
    return t;
  };
  bool reducing = true;
  while (!heap.empty()) {
    Term<K> t = pop();
    if (t.c.is_zero()) continue;
    const GPoly<K>* g = reducing ? find_reducer(t.m, t.m.support_mask(), basis, active) : nullptr;
    if (!g) {
      out.push_back(std::move(t));
      if (!full) reducing = false;
      continue;
    }
    Monomial q = t.m / g->lm();
    if (sugar) *sugar = std::max(*sugar, g->sugar + q.degree());
    for (std::size_t j = 1; j < g->terms.size(); ++j) {
      heap.push_back({g->terms[j].m * q, -(g->terms[j].c * t.c)});
      std::push_heap(heap.begin(), heap.end(), less);
    }
  }
  p = std::move(out);
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint32_t sugar;
  std::uint64_t serial;
};

}  // namespace detail

/// Reduced Groebner basis of `gens` for `ord`. Deterministic in (generator order, ord).
template <class K>
GroebnerBasis<K> groebner(const IdealGens<K>& gens, const TermOrder& ord, const GroebnerOptions& opt = {}) {
  using namespace detail;
  if (ord.nvars() != gens.ring->vars.size()) throw std::invalid_argument("term order / ring size mismatch");

  std::vector<GPoly<K>> G;
  std::vector<char> active;
  std::vector<Pair> pairs;
  std::uint64_t serial = 0;
  std::size_t processed = 0;

  auto pair_sugar = [&](std::size_t i, std::size_t j, const Monomial& l) {
    auto si = G[i].sugar + l.degree() - G[i].lm().degree();
    auto sj = G[j].sugar + l.degree() - G[j].lm().degree();
    return std::max(si, sj);
  };

  // Gebauer-Moeller update with the new element at index k.
  auto update = [&](std::size_t k) {
    const Monomial& h = G[k].lm();
    std::vector<Pair> cand;
    for (std::size_t i = 0; i < k; ++i)
      if (active[i]) cand.push_back({i, k, G[i].lm().lcm(h), 0, 0});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const auto& p = cand[a];
      bool drop = false;
      if (!G[p.i].lm().coprime(h)) {
        for (std::size_t b = a + 1; b < cand.size() && !drop; ++b)
          if (cand[b].lcm.divides(p.lcm)) drop = true;
        for (std::size_t b = 0; b < kept.size() && !drop; ++b)
          if (kept[b].lcm.divides(p.lcm)) drop = true;
      }
      if (!drop) kept.push_back(p);
    }
    std::erase_if(kept, [&](const Pair& p) { return G[p.i].lm().coprime(h); });
    std::erase_if(pairs, [&](const Pair& p) {
      return h.divides(p.lcm) && !(G[p.i].lm().lcm(h) == p.lcm) && !(G[p.j].lm().lcm(h) == p.lcm);
    });
    for (auto& p : kept) {
      p.sugar = pair_sugar(p.i, p.j, p.lcm);
      p.serial = serial++;
      pairs.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < k; ++i)
      if (active[i] && h.divides(G[i].lm())) active[i] = 0;
  };

  auto insert = [&](GPoly<K> g) {
    if (G.size() >= opt.max_basis)
      throw ResourceLimitExceeded("Groebner basis size cap of " + std::to_string(opt.max_basis) + " exceeded");
    make_monic(g);
    g.mask = g.lm().support_mask();
    G.push_back(std::move(g));
    active.push_back(1);
    update(G.size() - 1);
  };

  for (const auto& f : gens.gens) {
    GPoly<K> g;
    g.terms = sorted_terms(f, ord);
    g.sugar = static_cast<std::uint32_t>(f.total_degree());
    reduce(g.terms, G, &active, ord, false, &g.sugar);
    if (!g.empty()) insert(std::move(g));
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      int c = ord.compare(a.lcm, b.lcm);
      if (c) return c < 0;
      return a.serial < b.serial;
    });
    Pair p = *best;
    *best = pairs.back();
    pairs.pop_back();
    if (++processed > opt.max_pairs)
      throw ResourceLimitExceeded("Groebner pair cap of " + std::to_string(opt.max_pairs) + " exceeded");

    // S-polynomial: (lcm/lt_i) g_i - (lcm/lt_j) g_j, both monic
    const auto& gi = G[p.i];
    const auto& gj = G[p.j];
    Monomial qi = p.lcm / gi.lm(), qj = p.lcm / gj.lm();
    GPoly<K> s;
    s.terms.reserve(gi.terms.size() + gj.terms.size());
    for (const auto& t : gi.terms) s.terms.push_back({t.m * qi, t.c});
    std::vector<Term<K>> scratch;
    subtract_multiple(s.terms, 0, gj.terms.front().c, qj, gj.terms, ord, scratch);
    s.sugar = p.sugar;
    reduce(s.terms, G, &active, ord, false, &s.sugar);
    if (!s.empty()) insert(std::move(s));
  }

  // Interreduce the minimal basis.
  std::vector<GPoly<K>> minimal;
  for (std::size_t k = 0; k < G.size(); ++k)
    if (active[k]) minimal.push_back(std::move(G[k]));
  std::sort(minimal.begin(), minimal.end(),
            [&](const GPoly<K>& a, const GPoly<K>& b) { return ord.compare(a.lm(), b.lm()) > 0; });
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    // tails only: the leading term is irreducible by minimality
    auto& terms = minimal[k].terms;
    std::vector<Term<K>> tail(terms.begin() + 1, terms.end());
    std::vector<char> mask(minimal.size(), 1);
    mask[k] = 0;
    reduce(tail, minimal, &mask, ord, true);
    terms.resize(1);
    terms.insert(terms.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
  }

  GroebnerBasis<K> out{IdealGens<K>(gens.ring), ord};
  for (auto& g : minimal) out.basis.gens.push_back(Poly<K>::from_terms(gens.ring, std::move(g.terms)));
  return out;
}

/// Remainder of multivariate division by the basis.
template <class K>
Poly<K> normal_form(const Poly<K>& p, const GroebnerBasis<K>& gb) {
  using namespace detail;
  std::vector<GPoly<K>> basis;
  basis.reserve(gb.basis.size());
  for (const auto& g : gb.basis.gens) {
    GPoly<K> h;
    h.terms = sorted_terms(g, gb.order);
    make_monic(h);
    h.mask = h.lm().support_mask();
    basis.push_back(std::move(h));
  }
  auto terms = sorted_terms(p, gb.order);
  reduce(terms, basis, nullptr, gb.order, true);
  return Poly<K>::from_terms(p.ring(), std::move(terms));
}

template <class K>
bool contains(const GroebnerBasis<K>& gb, const Poly<K>& p) {
  return normal_form(p, gb).is_zero();
}

template <class K>
bool contains_all(const GroebnerBasis<K>& gb, const IdealGens<K>& gens) {
  for (const auto& g : gens.gens)
    if (!contains(gb, g)) return false;
  return true;
}

template <class K>
GroebnerBasis<K> groebner(const IdealGens<K>& gens, const GroebnerOptions& opt = {}) {
  return groebner(gens, gens.ring->order, opt);
}

/// True iff every S-polynomial of the basis reduces to zero.
template <class K>
bool satisfies_buchberger_criterion(const GroebnerBasis<K>& gb) {
  const auto& g = gb.basis.gens;
  GroebnerBasis<K> probe = gb;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      auto ti = detail::sorted_terms(g[i], gb.order);
      auto tj = detail::sorted_terms(g[j], gb.order);
      Monomial l = ti.front().m.lcm(tj.front().m);
      Poly<K> s = g[i].times_monomial(l / ti.front().m, ti.front().c.inverse()) -
                  g[j].times_monomial(l / tj.front().m, tj.front().c.inverse());
      if (!normal_form(s, probe).is_zero()) return false;
    }
  return true;
}

/// True when each generator of a is a unit multiple of a generator of b, so a ⊆ b.
template <class K>
bool generators_among(const IdealGens<K>& a, const IdealGens<K>& b) {
  std::vector<Poly<K>> monic_b;
  for (const auto& g : b.gens) monic_b.push_back(g.monic());
  for (const auto& g : a.gens)
    if (std::find(monic_b.begin(), monic_b.end(), g.monic()) == monic_b.end()) return false;
  return true;
}

/// a ⊆ b, skipping the basis of b when the generators already witness it.
template <class K>
bool ideal_contains(const IdealGens<K>& b, const IdealGens<K>& a, const GroebnerOptions& opt = {}) {
  if (!(*a.ring == *b.ring)) throw RingMismatch();
  return generators_among(a, b) || contains_all(groebner(b, opt), a);
}

template <class K>
bool ideal_equal(const IdealGens<K>& a, const IdealGens<K>& b, const GroebnerOptions& opt = {}) {
  return ideal_contains(b, a, opt) && ideal_contains(a, b, opt);
}

/// Generators of a ∩ k[keep] from a basis for an order eliminating the other variables.
template <class K>
IdealGens<K> eliminate(const IdealGens<K>& a, const std::vector<std::size_t>& keep, const GroebnerOptions& opt = {}) {
  std::size_t n = a.ring->vars.size();
  std::vector<bool> allowed(n, false);
  for (auto v : keep) allowed.at(v) = true;
  std::vector<std::size_t> drop;
  for (std::size_t v = 0; v < n; ++v)
    if (!allowed[v]) drop.push_back(v);
  auto gb = groebner(a, TermOrder::elimination(n, drop), opt);
  IdealGens<K> out(a.ring);
  for (const auto& g : gb.basis.gens)
    if (g.uses_only(allowed)) out.add(g);
  return out;
}

/// a ∩ b via t·a + (1−t)·b with t eliminated.
template <class K>
IdealGens<K> intersect(const IdealGens<K>& a, const IdealGens<K>& b, const GroebnerOptions& opt = {}) {
  if (!(*a.ring == *b.ring)) throw RingMismatch();
  if (a.is_zero() || b.is_zero()) return IdealGens<K>(a.ring);
  auto ext = make_ring<K>(a.ring->vars.with_extra(1), a.ring->field);
  std::size_t t = ext->vars.size() - 1;
  Poly<K> tp = Poly<K>::variable(ext, t);
  Poly<K> one_minus_t = Poly<K>::constant(ext, 1) - tp;
  IdealGens<K> mixed(ext);
  for (const auto& g : a.gens) mixed.add(tp * g.embed(ext));
  for (const auto& g : b.gens) mixed.add(one_minus_t * g.embed(ext));
  auto gb = groebner(mixed, TermOrder::elimination(ext->vars.size(), {t}), opt);
  IdealGens<K> out(a.ring);
  for (const auto& g : gb.basis.gens)
    if (g.supported_in(0, t)) out.add(g.embed(a.ring));
  return out;
}

/// a : g = (a ∩ (g)) / g.
template <class K>
IdealGens<K> colon(const IdealGens<K>& a, const Poly<K>& g, const GroebnerOptions& opt = {}) {
  if (g.is_zero()) throw std::invalid_argument("colon by the zero polynomial");
  IdealGens<K> out(a.ring);
  if (a.is_zero()) return out;
  for (const auto& h : intersect(a, IdealGens<K>(a.ring, {g}), opt).gens) out.add(divide_exact(h, g));
  return out;
}

/// a : b as the intersection of a : g over the generators g of b.
template <class K>
IdealGens<K> colon_ideal(const IdealGens<K>& a, const IdealGens<K>& b, const GroebnerOptions& opt = {}) {
  if (b.is_zero()) throw std::invalid_argument("colon by the zero ideal");
  IdealGens<K> acc = colon(a, b.gens.front(), opt);
  for (std::size_t k = 1; k < b.gens.size(); ++k) acc = intersect(acc, colon(a, b.gens[k], opt), opt);
  return acc;
}

template <class K>
struct SaturationResult {
  IdealGens<K> ideal;
  /// least i with a : b^i = a : b^(i+1)
  int index = 0;
  /// a : b^0, ..., a : b^index (reduced grevlex bases)
  std::vector<IdealGens<K>> chain;
};

template <class K>
SaturationResult<K> saturate(const IdealGens<K>& a, const IdealGens<K>& b, const GroebnerOptions& opt = {}) {
  if (b.is_zero()) throw std::invalid_argument("saturation by the zero ideal");
  SaturationResult<K> res;
  auto cur = groebner(a, opt);
  res.chain.push_back(cur.basis);
  for (int i = 0;; ++i) {
    auto next = groebner(colon_ideal(cur.basis, b, opt), opt);
    // cur ⊆ next always holds, so equality is next ⊆ cur
    if (contains_all(cur, next.basis)) {
      res.ideal = cur.basis;
      res.index = i;
      return res;
    }
    cur = std::move(next);
    res.chain.push_back(cur.basis);
  }
}

namespace detail {

// Smallest set of variables meeting every support; supports are bit masks.
inline int min_hitting_set(std::vector<std::uint32_t> supports, int budget) {
  if (supports.empty()) return 0;
  if (budget <= 0) return 1 << 20;
  auto pick = std::min_element(supports.begin(), supports.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::uint32_t s = *pick;
  int best = 1 << 20;
  for (int v = 0; v < 32; ++v) {
    if (!(s & (1u << v))) continue;
    std::vector<std::uint32_t> rest;
    for (auto t : supports)
      if (!(t & (1u << v))) rest.push_back(t);
    best = std::min(best, 1 + min_hitting_set(std::move(rest), std::min(budget, best - 1) - 1));
  }
  return best;
}

}  // namespace detail

/// Krull dimension of k[vars]/a: the size of a maximal independent set modulo the
/// leading-term ideal. The unit ideal has dimension -1.
template <class K>
int dimension(const IdealGens<K>& a, const GroebnerOptions& opt = {}) {
  int n = static_cast<int>(a.ring->vars.size());
  if (a.is_zero()) return n;
  auto gb = groebner(a, opt);
  std::vector<std::uint32_t> supports;
  for (const auto& g : gb.basis.gens) {
    auto mask = detail::sorted_terms(g, gb.order).front().m.support_mask();
    if (mask == 0) return -1;
    supports.push_back(mask);
  }
  return n - detail::min_hitting_set(std::move(supports), n);
}

template <class K>
int height(const IdealGens<K>& a, const GroebnerOptions& opt = {}) {
  int n = static_cast<int>(a.ring->vars.size());
  int d = dimension(a, opt);
  return d < 0 ? n : n - d;
}

}  // namespace reesdual
