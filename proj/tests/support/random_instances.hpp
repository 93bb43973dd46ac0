#pragma once

// Seeded generators for property tests.

#include <random>
#include <vector>

#include "pacsem/clause.hpp"
#include "pacsem/cutting_planes.hpp"
#include "pacsem/formula.hpp"
#include "pacsem/polynomial.hpp"
#include "pacsem/resk.hpp"
#include "pacsem/sampling.hpp"

namespace pacsem::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Literal random_literal(Rng& rng, std::size_t n) {
  return Literal(VarId(static_cast<std::uint32_t>(uniform(rng, 1, n))), coin(rng));
}

inline Clause random_clause(Rng& rng, std::size_t n, std::size_t max_width, bool allow_empty = false) {
  std::vector<Literal> lits;
  const std::size_t width = uniform(rng, allow_empty ? 0 : 1, max_width);
  for (std::size_t i = 0; i < width; ++i) lits.push_back(random_literal(rng, n));
  return Clause(std::move(lits));
}

// Non-tautological clauses only.
inline Cnf random_cnf(Rng& rng, std::size_t n, std::size_t max_clauses, std::size_t max_width) {
  std::vector<Clause> clauses;
  const std::size_t count = uniform(rng, 1, max_clauses);
  while (clauses.size() < count) {
    Clause c = random_clause(rng, n, max_width);
    if (!c.is_tautology()) clauses.push_back(std::move(c));
  }
  return Cnf(n, std::move(clauses));
}

// Each coordinate is * with probability star_prob, else a fair bit.
inline PartialAssignment random_rho(Rng& rng, std::size_t n, double star_prob = 0.5) {
  std::vector<Cell> cells(n);
  for (auto& c : cells) c = coin(rng, star_prob) ? Cell::Star : (coin(rng) ? Cell::One : Cell::Zero);
  return PartialAssignment(std::move(cells));
}

inline Assignment random_assignment(Rng& rng, std::size_t n) {
  Assignment x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = coin(rng);
  return x;
}

inline Rational random_rational(Rng& rng, int lo, int hi, int max_den = 3) {
  const int num = static_cast<int>(uniform(rng, 0, static_cast<std::size_t>(hi - lo))) + lo;
  const int den = static_cast<int>(uniform(rng, 1, static_cast<std::size_t>(max_den)));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Formula random_formula(Rng& rng, std::size_t n, int depth) {
  const std::size_t pick = uniform(rng, 0, depth <= 0 ? 2 : 9);
  if (pick == 0) return Formula::constant(coin(rng));
  if (pick <= 2) return Formula::var(VarId(static_cast<std::uint32_t>(uniform(rng, 1, n))));
  if (pick == 3) return Formula::negation(random_formula(rng, n, depth - 1));
  const std::size_t k = uniform(rng, 1, 4);
  std::vector<Rational> coeffs;
  std::vector<Formula> children;
  for (std::size_t i = 0; i < k; ++i) {
    coeffs.push_back(random_rational(rng, -3, 3));
    children.push_back(random_formula(rng, n, depth - 1));
  }
  return Formula::threshold(std::move(coeffs), std::move(children), random_rational(rng, -3, 3));
}

inline KDnf random_kdnf(Rng& rng, std::size_t n, std::size_t k, std::size_t max_width) {
  std::vector<Term> terms;
  const std::size_t width = uniform(rng, 1, max_width);
  while (terms.size() < width) {
    std::vector<Literal> lits;
    const std::size_t size = uniform(rng, 1, k);
    for (std::size_t i = 0; i < size; ++i) lits.push_back(random_literal(rng, n));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    bool complementary = false;
    for (std::size_t i = 0; i + 1 < lits.size(); ++i)
      if (lits[i].var == lits[i + 1].var) complementary = true;
    if (!complementary) terms.emplace_back(std::move(lits));
  }
  return KDnf(std::move(terms));
}

// Multilinear polynomial with small integer coefficients.
inline Polynomial random_polynomial(Rng& rng, std::size_t n, std::size_t max_degree, bool duals,
                                    std::size_t max_terms = 3) {
  Polynomial p;
  const std::size_t terms = uniform(rng, 1, max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<Indeterminate> xs;
    const std::size_t deg = uniform(rng, 0, max_degree);
    for (std::size_t i = 0; i < deg; ++i)
      xs.push_back({VarId(static_cast<std::uint32_t>(uniform(rng, 1, n))), duals && coin(rng)});
    const int c = static_cast<int>(uniform(rng, 0, 4)) - 2;
    p.add_scaled(Polynomial::monomial(Monomial(std::move(xs))), Rational(c == 0 ? 1 : c));
  }
  return p;
}

inline LinIneq random_ineq(Rng& rng, std::size_t n, std::size_t max_sparsity, int max_coeff) {
  LinIneq::Coeffs coeffs;
  const std::size_t s = uniform(rng, 1, max_sparsity);
  for (std::size_t i = 0; i < s; ++i) {
    int c = static_cast<int>(uniform(rng, 0, static_cast<std::size_t>(2 * max_coeff))) - max_coeff;
    if (c == 0) c = 1;
    coeffs.emplace_back(VarId(static_cast<std::uint32_t>(uniform(rng, 1, n))), Integer(c));
  }
  const int b = static_cast<int>(uniform(rng, 0, static_cast<std::size_t>(2 * max_coeff))) - max_coeff + 1;
  return LinIneq(std::move(coeffs), Integer(b));
}

inline ExplicitDistribution random_distribution(Rng& rng, std::size_t n, std::size_t max_support) {
  std::vector<Assignment> points;
  const std::size_t count = uniform(rng, 1, max_support);
  for (std::size_t i = 0; i < count; ++i) {
    Assignment x = random_assignment(rng, n);
    if (std::find(points.begin(), points.end(), x) == points.end()) points.push_back(x);
  }
  std::vector<Integer> raw;
  Integer total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    raw.emplace_back(static_cast<long>(uniform(rng, 1, 9)));
    total += raw.back();
  }
  std::vector<WeightedPoint> support;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Rational w(raw[i], total);
    w.canonicalize();
    support.push_back({points[i], w});
  }
  return ExplicitDistribution(n, std::move(support));
}

// Every full assignment consistent with rho.
template <class F>
void for_each_completion(const PartialAssignment& rho, F&& visit) {
  std::vector<std::size_t> free;
  Assignment x(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho.cells()[i] == Cell::Star) free.push_back(i);
    else x[i] = rho.cells()[i] == Cell::One;
  }
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
    for (std::size_t j = 0; j < free.size(); ++j) x[free[j]] = (bits >> j) & 1;
    visit(x);
  }
}

}  // namespace pacsem::testing
