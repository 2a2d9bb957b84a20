#pragma once

// Exact shortest-vector machinery: greedy size reduction on the gram matrix,
// a rational LDL^T split, and depth-first enumeration with exact interval
// bounds (integer square roots of cleared-denominator inequalities, no
// floating point anywhere).  Work is metered in nodes, one per candidate
// coordinate tried.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "bw/errors.hpp"
#include "bw/lattice.hpp"

namespace bw {

struct ShortVec {
  Int norm;
  std::vector<Int> coords;  // in the canonical basis of the queried lattice
};

struct MinNormResult {
  Int min;
  std::vector<Int> coords;
  unsigned long long nodes = 0;
};

struct BelowBoundResult {
  Int bound;
  std::vector<ShortVec> vectors;  // one representative per +-pair, sorted
  bool exhaustive = true;
  unsigned long long nodes = 0;
};

constexpr unsigned long long kDefaultNodeBudget = 1'000'000'000ULL;

namespace detail {

struct ReducedGram {
  IntMat g;      // size-reduced, rows sorted by ascending diagonal
  IntMat back;   // row i of the working basis in canonical-basis coordinates
  std::size_t n;
};

inline ReducedGram size_reduce(const IntMat& gram) {
  std::size_t n = gram.rows();
  IntMat g = gram;
  IntMat u = IntMat::identity(n);
  bool changed = true;
  int sweeps = 0;
  while (changed && sweeps < 10000) {
    changed = false;
    ++sweeps;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Int twice = 2 * abs(g.at(i, j));
        if (twice <= g.at(j, j)) continue;
        Int q = round_div(g.at(i, j), g.at(j, j));
        if (q == 0) continue;
        // basis row i -= q * row j; gram updates on both sides
        for (std::size_t k = 0; k < n; ++k) g.at(i, k) -= q * g.at(j, k);
        for (std::size_t k = 0; k < n; ++k) g.at(k, i) -= q * g.at(k, j);
        u.sub_row(i, q, j);
        changed = true;
      }
  }
  // ascending diagonal, ties by index, so enumeration sees the largest
  // diagonal entries at the outermost levels
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return g.at(a, a) < g.at(b, b); });
  ReducedGram out;
  out.n = n;
  out.g = IntMat(n, n);
  out.back = IntMat(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.g.at(i, j) = g.at(perm[i], perm[j]);
      out.back.at(i, j) = u.at(perm[i], j);
    }
  }
  return out;
}

struct Ldl {
  std::vector<Rat> d;                // positive diagonal
  std::vector<std::vector<Rat>> l;   // l[j][k], j > k: unit lower triangular
};

inline Ldl ldl_split(const IntMat& g) {
  std::size_t n = g.rows();
  Ldl out;
  out.d.assign(n, Rat(0));
  out.l.assign(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t k = 0; k < n; ++k) {
    Rat dk(g.at(k, k));
    for (std::size_t r = 0; r < k; ++r) dk -= out.d[r] * out.l[k][r] * out.l[k][r];
    out.d[k] = dk;  // > 0 for positive definite input
    for (std::size_t j = k + 1; j < n; ++j) {
      Rat v(g.at(j, k));
      for (std::size_t r = 0; r < k; ++r) v -= out.d[r] * out.l[j][r] * out.l[k][r];
      out.l[j][k] = v / dk;
    }
  }
  return out;
}

// exact integer solutions of (x + c)^2 <= r, i.e. x in [lo, hi]
inline bool solve_interval(const Rat& c, const Rat& r, Int& lo, Int& hi) {
  if (r < 0) return false;
  const Int& cn = c.get_num();
  const Int& cd = c.get_den();  // > 0
  // (x cd + cn)^2 <= r cd^2  <=>  |x cd + cn| <= isqrt(floor(r cd^2))
  Rat rc = r * cd * cd;
  Int t = rc.get_num() / rc.get_den();  // floor, both positive
  Int s = isqrt(t);
  // ceil((-s - cn)/cd), floor((s - cn)/cd)
  Int a = -s - cn, b = s - cn;
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), cd.get_mpz_t());
  lo = q;
  mpz_fdiv_q(q.get_mpz_t(), b.get_mpz_t(), cd.get_mpz_t());
  hi = q;
  return lo <= hi;
}

struct EnumState {
  const Ldl* ldl;
  std::size_t n;
  Rat bound;
  unsigned long long budget;
  unsigned long long nodes = 0;
  bool first_hit;                 // stop at the first nonzero vector found
  std::vector<Int> x;             // current partial assignment
  std::vector<Rat> sigma;         // sigma[k] = sum_{j>k} x_j l[j][k], maintained
  std::vector<ShortVec> found;
  Int best_seen;                  // smallest nonzero norm seen (0 = none)
  bool aborted = false;           // budget ran out

  EnumState(const Ldl& l, std::size_t nn)
      : ldl(&l), n(nn), x(nn, Int(0)), sigma(nn, Rat(0)), best_seen(0) {}

  // returns false when the budget is exhausted
  bool descend(std::size_t level, const Rat& rem, bool zero_above) {
    std::size_t k = level - 1;  // coordinate index being assigned
    const Rat& c = sigma[k];
    Int lo, hi;
    if (!solve_interval(c, rem / ldl->d[k], lo, hi)) return true;
    if (zero_above && lo < 0) lo = 0;
    for (Int v = lo; v <= hi; ++v) {
      if (++nodes > budget) { aborted = true; return false; }
      x[k] = v;
      Rat term = Rat(v) + c;
      Rat used = ldl->d[k] * term * term;
      Rat rem2 = rem - used;
      bool zero_now = zero_above && v == 0;
      if (k == 0) {
        if (!zero_now) {
          Rat norm = bound - rem2;
          assert(norm.get_den() == 1);
          record(norm.get_num());
          if (first_hit) return false;
        }
      } else {
        push_sigma(k, v);
        bool cont = descend(k, rem2, zero_now);
        pop_sigma(k, v);
        if (!cont) return false;
      }
    }
    x[k] = 0;
    return true;
  }

  void push_sigma(std::size_t k, const Int& v) {
    if (v == 0) return;
    Rat vv(v);
    for (std::size_t j = 0; j < k; ++j) sigma[j] += vv * ldl->l[k][j];
  }
  void pop_sigma(std::size_t k, const Int& v) {
    if (v == 0) return;
    Rat vv(v);
    for (std::size_t j = 0; j < k; ++j) sigma[j] -= vv * ldl->l[k][j];
  }

  void record(Int norm) {
    if (best_seen == 0 || norm < best_seen) best_seen = norm;
    ShortVec sv;
    sv.norm = std::move(norm);
    sv.coords = x;
    found.push_back(std::move(sv));
  }
};

// canonical sign: first nonzero coordinate positive
inline void canonical_sign(std::vector<Int>& v) {
  for (const Int& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (Int& y : v) y = -y;
    return;
  }
}

struct Prepared {
  ReducedGram red;
  Ldl ldl;
};

inline Prepared prepare(const Lattice& l) {
  DyadicMat g = gram_of(l);
  if (!g.is_integer()) throw NotIntegral();
  Prepared p;
  p.red = size_reduce(g.num());
  p.ldl = ldl_split(p.red.g);
  return p;
}

// run one enumeration at the given bound; returns the state
inline EnumState run_enum(const Prepared& p, const Int& bound, unsigned long long budget,
                          unsigned long long used, bool first_hit) {
  EnumState st(p.ldl, p.red.n);
  st.bound = Rat(bound);
  st.budget = budget;
  st.nodes = used;
  st.first_hit = first_hit;
  if (bound >= 0 && p.red.n > 0) st.descend(p.red.n, st.bound, true);
  return st;
}

inline std::vector<Int> back_map(const ReducedGram& red, const std::vector<Int>& x) {
  std::vector<Int> out(red.n, Int(0));
  for (std::size_t i = 0; i < red.n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < red.n; ++j) out[j] += x[i] * red.back.at(i, j);
  }
  canonical_sign(out);
  return out;
}

}  // namespace detail

// All nonzero vectors of norm <= bound, one representative per {v, -v},
// coordinates in the canonical basis, sorted by norm then lexicographically.
// When the node budget runs out a partial list is returned with
// exhaustive == false.
inline BelowBoundResult vectors_below(const Lattice& l, const Int& bound,
                                      unsigned long long budget = kDefaultNodeBudget) {
  detail::Prepared p = detail::prepare(l);
  detail::EnumState st = detail::run_enum(p, bound, budget, 0, false);
  BelowBoundResult out;
  out.bound = bound;
  out.nodes = st.nodes;
  out.exhaustive = !st.aborted;
  for (ShortVec& sv : st.found)
    out.vectors.push_back({std::move(sv.norm), detail::back_map(p.red, sv.coords)});
  std::sort(out.vectors.begin(), out.vectors.end(), [](const ShortVec& a, const ShortVec& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coords < b.coords;
  });
  return out;
}

// Minimal nonzero norm with a witness vector.  Throws BudgetExceeded (with
// the best bound seen) if enumeration cannot finish within the node budget.
inline MinNormResult min_norm(const Lattice& l, unsigned long long budget = kDefaultNodeBudget) {
  detail::Prepared p = detail::prepare(l);
  assert(p.red.n > 0);
  // smallest reduced diagonal entry is an upper bound witnessed by that row
  std::size_t arg = 0;
  for (std::size_t i = 1; i < p.red.n; ++i)
    if (p.red.g.at(i, i) < p.red.g.at(arg, arg)) arg = i;
  Int best = p.red.g.at(arg, arg);
  std::vector<Int> unit(p.red.n, Int(0));
  unit[arg] = 1;
  std::vector<Int> witness = detail::back_map(p.red, unit);
  unsigned long long nodes = 0;
  for (;;) {
    detail::EnumState st = detail::run_enum(p, best - 1, budget, nodes, true);
    nodes = st.nodes;
    if (st.aborted) throw BudgetExceeded(st.best_seen == 0 ? best : st.best_seen, nodes);
    if (st.found.empty()) {
      MinNormResult out;
      out.min = best;
      out.coords = witness;
      out.nodes = nodes;
      return out;
    }
    best = st.found.back().norm;
    witness = detail::back_map(p.red, st.found.back().coords);
  }
}

}  // namespace bw
