#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bw {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Singular : Error {
  Singular() : Error("matrix is singular") {}
};

// Inverse exists over the rationals but its denominator has an odd factor,
// so the result cannot be represented with a power-of-two denominator.
struct NonDyadicInverse : Error {
  NonDyadicInverse() : Error("determinant is not +/- a power of two") {}
};

struct RankDeficient : Error {
  RankDeficient() : Error("rows do not span the full frame rank") {}
};

struct FrameMismatch : Error {
  FrameMismatch() : Error("operands live in different frames") {}
};

struct NotASublattice : Error {
  NotASublattice() : Error("first lattice is not contained in the second") {}
};

struct NotIntegral : Error {
  NotIntegral() : Error("lattice is not integral") {}
};

struct NotInvolution : Error {
  explicit NotInvolution(const std::string& which)
      : Error("map '" + which + "' is not an involution") {}
};

struct CentralNotMinusOne : Error {
  CentralNotMinusOne() : Error("product tu does not square to -identity") {}
};

struct LatticeNotStable : Error {
  explicit LatticeNotStable(const std::string& which)
      : Error("map '" + which + "' does not stabilize the lattice") {}
};

struct NotFourvolution : Error {
  NotFourvolution() : Error("map is not an order-4 isometry with square -identity") {}
};

struct NotPositiveDefinite : Error {
  NotPositiveDefinite() : Error("gram matrix is not symmetric positive definite") {}
};

struct DepthExceeded : Error {
  explicit DepthExceeded(int d, int max_d)
      : Error("tower level " + std::to_string(d) + " exceeds configured maximum " +
              std::to_string(max_d)) {}
};

struct QuotientTooLarge : Error {
  QuotientTooLarge() : Error("glue quotient exceeds the configured enumeration bound") {}
};

struct UnknownName : Error {
  explicit UnknownName(const std::string& name) : Error("unknown canonical instance '" + name + "'") {}
};

// Enumeration ran out of nodes before certifying; carries the best (smallest)
// norm of any vector found so far, or 0 if none was seen.
struct BudgetExceeded : Error {
  mpz_class best_bound;
  unsigned long long nodes;
  BudgetExceeded(mpz_class best, unsigned long long n)
      : Error("enumeration node budget exceeded"), best_bound(std::move(best)), nodes(n) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace bw
