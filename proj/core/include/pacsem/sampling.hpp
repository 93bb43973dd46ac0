#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "pacsem/formula.hpp"
#include "pacsem/rational.hpp"

namespace pacsem {

struct WeightedPoint {
  Assignment x;
  Rational weight;
};

// A finitely supported distribution over {0,1}^n with exact weights.
class ExplicitDistribution {
 public:
  // Validates: weights positive, summing exactly to 1, points distinct and of
  // length n. Throws InputError otherwise.
  ExplicitDistribution(std::size_t n, std::vector<WeightedPoint> support);

  static ExplicitDistribution point_mass(Assignment x);
  static ExplicitDistribution uniform(std::size_t n, std::vector<Assignment> points);

  std::size_t num_vars() const { return n_; }
  const std::vector<WeightedPoint>& support() const { return support_; }

 private:
  std::size_t n_;
  std::vector<WeightedPoint> support_;
};

// Hides the same coordinates on every example.
struct FixedMask {
  std::vector<bool> hidden;  // hidden[i] hides x_{i+1}
};
// Hides each coordinate independently with probability hide_prob.
struct IndependentMask {
  Rational hide_prob;
};
// Hidden set chosen as a function of the underlying example.
struct TableMask {
  std::map<Assignment, std::vector<bool>> rule;
};
using MaskSpec = std::variant<FixedMask, IndependentMask, TableMask>;

PartialAssignment apply_mask(const Assignment& x, const std::vector<bool>& hidden);

// SplitMix64 (Steele, Lea & Flood 2014). Small, stable across platforms and
// standard libraries, which keeps example streams reproducible everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // True with probability p (exact comparison of next()/2^64 against p).
  bool bernoulli(const Rational& p);

 private:
  std::uint64_t state_;
};

using Seed = std::uint64_t;

struct MaskedExample {
  Assignment source;
  PartialAssignment masked;
};

// Stream layout per example: one draw selects the support point, then (for
// IndependentMask only) one draw per coordinate in index order.
std::vector<MaskedExample> draw_masked_examples_with_sources(const ExplicitDistribution& d,
                                                             const MaskSpec& mask,
                                                             std::size_t m, Seed seed);
std::vector<PartialAssignment> draw_masked_examples(const ExplicitDistribution& d,
                                                    const MaskSpec& mask, std::size_t m,
                                                    Seed seed);

// Pr_{x ~ D}[phi(x) = 1], exactly.
Rational validity(const ExplicitDistribution& d, const Formula& phi);

// Pr over D and the mask that phi is witnessed true. Exact for fixed and
// table masks; IndependentMask is handled by enumerating hidden sets, so n
// must be small (<= 16).
Rational witness_probability(const ExplicitDistribution& d, const MaskSpec& mask,
                             const Formula& phi);

// Builds the distribution showing the union bound is tight: weight eps_i on
// a point satisfying every psi_j except psi_i, and the remaining mass on a
// point satisfying all of them. Points are the lexicographically first
// (x1 most significant) with the required pattern.
ExplicitDistribution tight_union_bound_distribution(const std::vector<Formula>& psis,
                                                    const std::vector<Rational>& epsilons,
                                                    std::size_t n,
                                                    std::size_t enumeration_cap = 20);

}  // namespace pacsem
