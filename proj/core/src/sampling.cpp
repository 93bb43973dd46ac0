#include "pacsem/sampling.hpp"

#include <algorithm>
#include <set>

#include "pacsem/errors.hpp"
#include "pacsem/oracle.hpp"

namespace pacsem {

ExplicitDistribution::ExplicitDistribution(std::size_t n, std::vector<WeightedPoint> support)
    : n_(n), support_(std::move(support)) {
  if (support_.empty()) throw InputError("distribution has empty support");
  Rational total = 0;
  std::set<Assignment> seen;
  for (const auto& p : support_) {
    if (p.x.size() != n_) throw InputError("support point has the wrong length");
    if (sgn(p.weight) <= 0) throw InputError("support weights must be positive");
    if (!seen.insert(p.x).second) throw InputError("support points must be distinct");
    total += p.weight;
  }
  if (total != 1) throw InputError("support weights sum to " + to_string(total) + ", not 1");
}

ExplicitDistribution ExplicitDistribution::point_mass(Assignment x) {
  const auto n = x.size();
  return ExplicitDistribution(n, {WeightedPoint{std::move(x), Rational(1)}});
}

ExplicitDistribution ExplicitDistribution::uniform(std::size_t n, std::vector<Assignment> points) {
  const Rational w(1, static_cast<unsigned long>(points.size()));
  std::vector<WeightedPoint> support;
  for (auto& x : points) support.push_back({std::move(x), w});
  return ExplicitDistribution(n, std::move(support));
}

PartialAssignment apply_mask(const Assignment& x, const std::vector<bool>& hidden) {
  if (hidden.size() != x.size()) throw InputError("mask length differs from assignment length");
  std::vector<Cell> cells(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    cells[i] = hidden[i] ? Cell::Star : (x[i] ? Cell::One : Cell::Zero);
  return PartialAssignment(std::move(cells));
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// r / 2^64 as an exact rational.
Rational unit_fraction(std::uint64_t r) {
  Integer num;
  mpz_import(num.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
  Integer den = 1;
  den <<= 64;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

bool SplitMix64::bernoulli(const Rational& p) { return unit_fraction(next()) < p; }

namespace {

const WeightedPoint& pick(const ExplicitDistribution& d, SplitMix64& rng) {
  const Rational u = unit_fraction(rng.next());
  Rational cumulative = 0;
  for (const auto& p : d.support()) {
    cumulative += p.weight;
    if (u < cumulative) return p;
  }
  return d.support().back();
}

std::vector<bool> hidden_set(const MaskSpec& mask, const Assignment& x, SplitMix64& rng) {
  return std::visit(
      [&](const auto& m) -> std::vector<bool> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FixedMask>) {
          if (m.hidden.size() != x.size()) throw InputError("fixed mask has the wrong length");
          return m.hidden;
        } else if constexpr (std::is_same_v<T, IndependentMask>) {
          std::vector<bool> hidden(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) hidden[i] = rng.bernoulli(m.hide_prob);
          return hidden;
        } else {
          auto it = m.rule.find(x);
          if (it == m.rule.end()) throw InputError("table mask has no rule for a support point");
          if (it->second.size() != x.size()) throw InputError("table mask entry has the wrong length");
          return it->second;
        }
      },
      mask);
}

void validate_mask(const ExplicitDistribution& d, const MaskSpec& mask) {
  if (const auto* im = std::get_if<IndependentMask>(&mask)) {
    if (sgn(im->hide_prob) < 0 || im->hide_prob > 1)
      throw InputError("independent mask probability must lie in [0,1]");
  }
  if (const auto* tm = std::get_if<TableMask>(&mask)) {
    for (const auto& p : d.support())
      if (!tm->rule.contains(p.x)) throw InputError("table mask is not total on the support");
  }
}

}  // namespace

std::vector<MaskedExample> draw_masked_examples_with_sources(const ExplicitDistribution& d,
                                                             const MaskSpec& mask,
                                                             std::size_t m, Seed seed) {
  if (m == 0) throw InputError("sample size must be at least 1");
  validate_mask(d, mask);
  SplitMix64 rng(seed);
  std::vector<MaskedExample> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& point = pick(d, rng);
    auto hidden = hidden_set(mask, point.x, rng);
    out.push_back({point.x, apply_mask(point.x, hidden)});
  }
  return out;
}

std::vector<PartialAssignment> draw_masked_examples(const ExplicitDistribution& d,
                                                    const MaskSpec& mask, std::size_t m,
                                                    Seed seed) {
  auto full = draw_masked_examples_with_sources(d, mask, m, seed);
  std::vector<PartialAssignment> out;
  out.reserve(full.size());
  for (auto& e : full) out.push_back(std::move(e.masked));
  return out;
}

Rational validity(const ExplicitDistribution& d, const Formula& phi) {
  check_in_range(phi, d.num_vars());
  Rational total = 0;
  for (const auto& p : d.support())
    if (evaluate(phi, p.x)) total += p.weight;
  return total;
}

Rational witness_probability(const ExplicitDistribution& d, const MaskSpec& mask,
                             const Formula& phi) {
  validate_mask(d, mask);
  Rational total = 0;
  for (const auto& p : d.support()) {
    if (const auto* im = std::get_if<IndependentMask>(&mask)) {
      const std::size_t n = p.x.size();
      if (n > 16) throw InputError("witness_probability: too many variables to enumerate masks");
      const Rational keep = 1 - im->hide_prob;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        std::vector<bool> hidden(n);
        Rational pr = 1;
        for (std::size_t i = 0; i < n; ++i) {
          hidden[i] = (bits >> i) & 1U;
          pr *= hidden[i] ? im->hide_prob : keep;
        }
        if (sgn(pr) == 0) continue;
        if (witness_status(phi, apply_mask(p.x, hidden)) == WitnessStatus::WitnessedTrue)
          total += p.weight * pr;
      }
    } else {
      SplitMix64 unused(0);
      auto hidden = hidden_set(mask, p.x, unused);
      if (witness_status(phi, apply_mask(p.x, hidden)) == WitnessStatus::WitnessedTrue)
        total += p.weight;
    }
  }
  return total;
}

ExplicitDistribution tight_union_bound_distribution(const std::vector<Formula>& psis,
                                                    const std::vector<Rational>& epsilons,
                                                    std::size_t n,
                                                    std::size_t enumeration_cap) {
  if (psis.size() != epsilons.size())
    throw InputError("need exactly one epsilon per formula");
  if (psis.empty()) throw InputError("need at least one formula");
  if (n > enumeration_cap)
    throw InputError("too many variables to verify the preconditions by enumeration");
  Rational sum = 0;
  for (const auto& e : epsilons) {
    if (sgn(e) < 0) throw InputError("epsilons must be nonnegative");
    sum += e;
  }
  if (sum >= 1) throw InputError("epsilons must sum to less than 1");
  for (const auto& psi : psis) check_in_range(psi, n);

  auto x0 = oracle::find_model(psis, n, enumeration_cap);
  if (!x0) throw PreconditionError("the formulas have no common satisfying assignment");

  std::vector<WeightedPoint> support;
  for (std::size_t i = 0; i < psis.size(); ++i) {
    std::vector<Formula> pattern;
    for (std::size_t j = 0; j < psis.size(); ++j)
      pattern.push_back(j == i ? Formula::negation(psis[j]) : psis[j]);
    auto xi = oracle::find_model(pattern, n, enumeration_cap);
    if (!xi)
      throw PreconditionError("formula " + std::to_string(i + 1) +
                              " is entailed by the others; no witnessing point exists");
    if (sgn(epsilons[i]) > 0) support.push_back({std::move(*xi), epsilons[i]});
  }
  support.push_back({std::move(*x0), 1 - sum});
  return ExplicitDistribution(n, std::move(support));
}

}  // namespace pacsem
