#pragma once

#include <initializer_list>
#include <vector>

#include "bw/dyadic.hpp"
#include "bw/int_mat.hpp"
#include "bw/rng.hpp"

namespace bwtest {

inline bw::IntMat mk(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<bw::Int>> v;
  for (auto& r : rows) {
    std::vector<bw::Int> row;
    for (long x : r) row.emplace_back(x);
    v.push_back(std::move(row));
  }
  return bw::IntMat::from_rows(v);
}

inline bw::IntMat random_mat(bw::Rng& rng, std::size_t r, std::size_t c,
                             long lo = -9, long hi = 9) {
  bw::IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = bw::Int(rng.range(lo, hi));
  return m;
}

// random unimodular matrix from elementary row operations
inline bw::IntMat random_unimodular(bw::Rng& rng, std::size_t n, int moves = 10) {
  bw::IntMat u = bw::IntMat::identity(n);
  for (int s = 0; s < moves; ++s) {
    std::size_t i = rng.below(n), j = rng.below(n);
    if (i == j) {
      if (rng.coin()) u.negate_row(i);
      continue;
    }
    u.sub_row(i, bw::Int(rng.range(-3, 3)), j);
  }
  return u;
}

// basis of classic D4 (integer vectors with even coordinate sum) in rank 4
inline bw::IntMat d4_rows() {
  return mk({{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 1, 1}});
}

// generators of the rank-8 even unimodular lattice in its usual coordinates:
// the even-coordinate-sum sublattice of Z^8 plus the all-halves glue vector
// (rows are numerators over denominator 2, deliberately redundant)
inline bw::DyadicMat e8_gens() {
  bw::IntMat num(9, 8);
  for (std::size_t i = 0; i < 7; ++i) {
    num.at(i, i) = 2;
    num.at(i, i + 1) = -2;
  }
  num.at(7, 6) = 2;
  num.at(7, 7) = 2;
  for (std::size_t j = 0; j < 8; ++j) num.at(8, j) = 1;
  return bw::DyadicMat(std::move(num), 1);
}

}  // namespace bwtest
