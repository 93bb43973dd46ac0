#pragma once

// Degree-bounded polynomial calculus (and PCR) decision by basis
// construction over the space of degree-d derivable polynomials.

#include <cstddef>
#include <vector>

#include "pacsem/polynomial.hpp"

namespace pacsem {

enum class PcMode { PC, PCR };
const char* to_string(PcMode m);

// Basis elements in decreasing leading-monomial order, leading monomials
// pairwise distinct.
using PolyBasis = std::vector<Polynomial>;

// Scans basis in decreasing order, cancelling p's leading monomial whenever it
// matches the current element's. Stops early once p is zero.
Polynomial gaussian_reduce(Polynomial p, const PolyBasis& basis);

struct PcStats {
  std::size_t basis_size = 0;
  std::size_t processed = 0;  // worklist polynomials taken
};

struct PcResult {
  bool accepted = false;
  PcStats stats;
  PolyBasis basis;
};

// Builds a basis for the degree-d derivable polynomials from hyps (plus the
// complementarity polynomials x + ~x - 1 in PCR mode, for variables that
// occur in hyps or q) and accepts iff q reduces to zero. The worklist is
// FIFO. Throws InputError when an input has degree above d, or when a dual
// indeterminate appears in PC mode.
PcResult decide_pc(const std::vector<Polynomial>& hyps, const Polynomial& q, std::size_t d,
                   PcMode mode);

}  // namespace pacsem
