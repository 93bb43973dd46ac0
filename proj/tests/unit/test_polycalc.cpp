#include "doctest.h"

#include "pacsem/errors.hpp"
#include "pacsem/polycalc.hpp"
#include "random_instances.hpp"
#include "span_oracle.hpp"

using namespace pacsem;
using namespace pacsem::testing;

namespace {
Indeterminate X(std::uint32_t i) { return {VarId(i), false}; }
Indeterminate Xb(std::uint32_t i) { return {VarId(i), true}; }
Polynomial P(Indeterminate a) { return Polynomial::indeterminate(a); }
Polynomial mono(std::initializer_list<Indeterminate> xs, long c = 1) {
  return Polynomial::monomial(Monomial(std::vector<Indeterminate>(xs)), Rational(c));
}
Polynomial C(long c) { return Polynomial::constant(Rational(c)); }
PartialAssignment pa(const char* s) { return PartialAssignment::from_string(s); }

// All Boolean points (duals read as negations) where hyps vanish also zero q.
bool semantically_entailed(const std::vector<Polynomial>& hyps, const Polynomial& q, std::size_t n) {
  bool ok = true;
  for_each_completion(PartialAssignment(n), [&](const Assignment& x) {
    for (const auto& h : hyps)
      if (sgn(evaluate_polynomial(h, x)) != 0) return;
    if (sgn(evaluate_polynomial(q, x)) != 0) ok = false;
  });
  return ok;
}
}  // namespace

TEST_SUITE("polycalc") {

TEST_CASE("monomial order and leading terms") {
  CHECK(Monomial({X(1), X(2)}) > Monomial({X(3)}));
  CHECK(Monomial({X(1)}) < Monomial({X(2)}));
  CHECK(Monomial({X(1)}) < Monomial({Xb(1)}));
  const Polynomial p = mono({X(1), X(2)}, 2) + P(X(3)) - C(1);
  CHECK(p.leading_monomial() == Monomial({X(1), X(2)}));
  CHECK(p.leading_coefficient() == 2);
  CHECK(p.degree() == 2);
  CHECK(p.to_string() == "2 x1 x2; 1 x3; -1");
  CHECK(Polynomial().to_string() == "0");
}

TEST_CASE("multilinearize") {
  CHECK(multilinearize({{Rational(1), {{X(1), 2}}}, {Rational(-1), {{X(1), 1}}}}).is_zero());
  CHECK(multilinearize({{Rational(1), {{X(1), 2}, {X(2), 1}}}, {Rational(-1), {{X(1), 1}}}}) ==
        mono({X(1), X(2)}) - P(X(1)));
  CHECK(multilinearize({{Rational(2), {{X(1), 1}, {X(2), 1}}}, {Rational(3), {{X(1), 1}, {X(2), 1}}}}) ==
        mono({X(1), X(2)}, 5));
}

TEST_CASE("gaussian_reduce") {
  CHECK(gaussian_reduce(mono({X(1), X(2)}), {mono({X(1), X(2)}) - P(X(1))}) == P(X(1)));
  CHECK(gaussian_reduce(P(X(1)), {mono({X(1), X(2)})}) == P(X(1)));
  CHECK(gaussian_reduce(Polynomial(), {P(X(1))}).is_zero());
}

TEST_CASE("decide_pc examples") {
  CHECK(decide_pc({P(X(1))}, mono({X(1), X(2)}), 2, PcMode::PC).accepted);
  CHECK_FALSE(decide_pc({mono({X(1), X(2)})}, P(X(1)), 2, PcMode::PC).accepted);
  CHECK(decide_pc({}, P(X(1)) + P(Xb(1)) - C(1), 1, PcMode::PCR).accepted);
  CHECK(decide_pc({}, Polynomial(), 1, PcMode::PC).accepted);
  CHECK_THROWS_AS(decide_pc({mono({X(1), X(2)})}, P(X(1)), 1, PcMode::PC), InputError);
  CHECK_THROWS_AS(decide_pc({P(Xb(1))}, P(X(1)), 1, PcMode::PC), InputError);
}

TEST_CASE("basis property") {
  const std::vector<Polynomial> hyps{mono({X(1), X(2)}) - P(X(3)), P(X(1)) - C(1)};
  auto r = decide_pc(hyps, P(X(3)), 2, PcMode::PC);
  for (std::size_t i = 0; i + 1 < r.basis.size(); ++i)
    CHECK(r.basis[i].leading_monomial() > r.basis[i + 1].leading_monomial());
  for (const auto& h : hyps) CHECK(gaussian_reduce(h, r.basis).is_zero());
  for (const auto& b : r.basis) {
    if (b.degree() + 1 > 2) continue;
    for (std::uint32_t v = 1; v <= 3; ++v) CHECK(gaussian_reduce(b.times(Monomial({X(v)})), r.basis).is_zero());
  }
  const Polynomial once = gaussian_reduce(P(X(2)) + C(5), r.basis);
  CHECK(gaussian_reduce(once, r.basis) == once);
}

TEST_CASE("restriction and witnessing") {
  const Polynomial p = mono({X(1), X(2)}) + P(X(2));
  CHECK(restrict_polynomial(p, pa("1*")) == mono({X(2)}, 2));
  CHECK(restrict_polynomial(p, pa("0*")) == P(X(2)));
  CHECK(restrict_polynomial(mono({Xb(1), X(2)}), pa("1*")).is_zero());
  CHECK(restrict_polynomial(mono({Xb(1), X(2)}), pa("0*")) == P(X(2)));
  CHECK(poly_witness_status(P(X(1)) - C(1), pa("1")) == WitnessStatus::WitnessedTrue);
  CHECK(poly_witness_status(P(X(1)) + P(X(2)) - C(3), pa("1*")) == WitnessStatus::WitnessedFalse);
  CHECK(poly_witness_status(P(X(1)) + P(X(2)) - C(1), pa("**")) == WitnessStatus::Unwitnessed);
}

TEST_CASE("witnessing agrees with the two-threshold formula") {
  Rng rng(8);
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t n = uniform(rng, 1, 4);
    const Polynomial p = random_polynomial(rng, n, 3, true, 4);
    const auto rho = random_rho(rng, n);
    CHECK(poly_witness_status(p, rho) == witness_status(to_formula(p), rho));
    for_each_completion(rho, [&](const Assignment& x) {
      CHECK((sgn(evaluate_polynomial(p, x)) == 0) == evaluate(to_formula(p), x));
      CHECK(evaluate_polynomial(restrict_polynomial(p, rho), x) == evaluate_polynomial(p, x));
    });
  }
}

TEST_CASE("encode_clause_pcr") {
  const auto c = Clause::from_dimacs(std::vector<int>{1, -2});
  CHECK(encode_clause_pcr(c) == mono({Xb(1), X(2)}));
  CHECK(encode_clause_pcr(Clause::from_dimacs(std::vector<int>{1})) == P(Xb(1)));
  CHECK(encode_clause_pcr(Clause()) == C(1));
  CHECK_THROWS_AS(encode_clause_pcr(Clause::tautology()), InputError);
}

TEST_CASE("decide_pc matches the span oracle") {
  Rng rng(2024);
  int accepted = 0;
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t n = uniform(rng, 1, 4);
    const std::size_t d = uniform(rng, 1, 3);
    const PcMode mode = coin(rng) ? PcMode::PC : PcMode::PCR;
    std::vector<Polynomial> hyps;
    const std::size_t count = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < count; ++i) hyps.push_back(random_polynomial(rng, n, d, mode == PcMode::PCR));
    const Polynomial q = random_polynomial(rng, n, d, mode == PcMode::PCR);
    const bool got = decide_pc(hyps, q, d, mode).accepted;
    CHECK(got == SpanOracle::derivable(hyps, q, d, mode));
    if (got) {
      ++accepted;
      CHECK(semantically_entailed(hyps, q, n));
    }
  }
  CHECK(accepted > 5);
}

}  // TEST_SUITE
