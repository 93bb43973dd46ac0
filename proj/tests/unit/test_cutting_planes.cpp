#include "doctest.h"

#include "pacsem/cutting_planes.hpp"
#include "pacsem/errors.hpp"
#include "random_instances.hpp"

using namespace pacsem;
using namespace pacsem::testing;

namespace {
LinIneq ineq(std::initializer_list<std::pair<std::uint32_t, long>> cs, long b) {
  LinIneq::Coeffs coeffs;
  for (auto [v, c] : cs) coeffs.emplace_back(VarId(v), Integer(c));
  return LinIneq(coeffs, Integer(b));
}
PartialAssignment pa(const char* s) { return PartialAssignment::from_string(s); }
}  // namespace

TEST_SUITE("cutting_planes") {

TEST_CASE("construction and norms") {
  const LinIneq f = ineq({{2, -1}, {1, 2}, {2, 0}}, 1);
  CHECK(f.to_string() == "x1:2 x2:-1 >= 1");
  CHECK(f.sparsity() == 2);
  CHECK(f.l1_norm() == 4);
  CHECK(ineq({{1, 1}, {1, -1}}, -1).to_string() == "0 >= -1");
  CHECK(ineq({{1, 1}, {1, 2}}, 0) == ineq({{1, 3}}, 0));
}

TEST_CASE("apply_rule") {
  CHECK(apply_rule(CpRule::Divide, {ineq({{1, 2}, {2, 2}}, 1)}, 2) == ineq({{1, 1}, {2, 1}}, 1));
  CHECK(apply_rule(CpRule::Add, {ineq({{1, 1}}, 1), ineq({{1, -1}}, 0)}) == ineq({}, 1));
  CHECK(apply_rule(CpRule::Multiply, {ineq({{1, 1}}, 0)}, 3) == ineq({{1, 3}}, 0));
  CHECK(apply_rule(CpRule::Divide, {ineq({{1, -2}}, -3)}, 2) == ineq({{1, -1}}, -1));
  CHECK_THROWS_AS(apply_rule(CpRule::Divide, {ineq({{1, 3}}, 1)}, 2), RuleError);
  CHECK_THROWS_AS(apply_rule(CpRule::Multiply, {ineq({{1, 1}}, 1)}, 0), RuleError);
  CHECK_THROWS_AS(apply_rule(CpRule::Multiply, {ineq({{1, 1}}, 1)}, -1), RuleError);
  CHECK_THROWS_AS(apply_rule(CpRule::Add, {ineq({{1, 1}}, 1)}), RuleError);
}

TEST_CASE("decide_cp examples") {
  auto a = decide_cp({ineq({{1, 1}}, 1), ineq({{1, -1}}, 0)}, ineq({}, 1), 1, Integer(2));
  CHECK(a.accepted);
  CHECK(decide_cp({}, ineq({}, -1), 0, Integer(1)).accepted);
  CHECK(decide_cp({}, ineq({}, -1), 3, Integer(1)).accepted);
  CHECK_FALSE(decide_cp({ineq({{1, 1}}, 0)}, ineq({{1, 1}}, 1), 1, Integer(2)).accepted);
  CHECK_THROWS_AS(decide_cp({}, ineq({{1, 1}, {2, 1}}, 1), 1, Integer(5)), InputError);
  CHECK_THROWS_AS(decide_cp({}, ineq({{1, 3}}, 1), 1, Integer(3)), InputError);
  REQUIRE(a.trace);
  CHECK(check_cp_trace(*a.trace, {ineq({{1, 1}}, 1), ineq({{1, -1}}, 0)}, ineq({}, 1), 1, Integer(2)));
}

TEST_CASE("division derives a rounded cut") {
  // x1 + x2 >= 1 and -x1 - x2 >= -1 ... here: 2x1 >= 1 gives x1 >= 1.
  auto r = decide_cp({ineq({{1, 2}}, 1)}, ineq({{1, 1}}, 1), 1, Integer(3));
  CHECK(r.accepted);
  REQUIRE(r.trace);
  CHECK(check_cp_trace(*r.trace, {ineq({{1, 2}}, 1)}, ineq({{1, 1}}, 1), 1, Integer(3)));
}

TEST_CASE("trace checker rejects tampering") {
  const std::vector<LinIneq> hyps{ineq({{1, 1}}, 1), ineq({{1, -1}}, 0)};
  auto a = decide_cp(hyps, ineq({}, 1), 1, Integer(2));
  REQUIRE(a.trace);
  CpTrace bad = *a.trace;
  bad.steps.back().result = ineq({}, 2);
  CHECK_FALSE(check_cp_trace(bad, hyps, ineq({}, 2), 1, Integer(3)));
  CHECK_FALSE(check_cp_trace(*a.trace, {hyps[0]}, ineq({}, 1), 1, Integer(2)));
}

TEST_CASE("restrict_ineq") {
  CHECK_FALSE(restrict_ineq(ineq({{1, 2}, {2, -1}}, 1), pa("1*")).has_value());
  CHECK(restrict_ineq(ineq({{1, 2}, {2, -1}}, 1), pa("*1")) == ineq({{1, 2}}, 2));
  CHECK(restrict_ineq(ineq({{1, 1}, {2, 1}}, 1), pa("0*")) == ineq({{2, 1}}, 1));
  CHECK(restrict_ineq(ineq({{1, 1}}, 1), pa("0")) == ineq({}, 1));
}

TEST_CASE("encode_clause_cp") {
  CHECK(encode_clause_cp(Clause::from_dimacs(std::vector<int>{1, -2})) == ineq({{1, 1}, {2, -1}}, 0));
  CHECK(encode_clause_cp(Clause::from_dimacs(std::vector<int>{1})) == ineq({{1, 1}}, 1));
  CHECK(encode_clause_cp(Clause::from_dimacs(std::vector<int>{-1})) == ineq({{1, -1}}, 0));
  CHECK_THROWS_AS(encode_clause_cp(Clause::tautology()), InputError);
  Rng rng(1);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = uniform(rng, 1, 4);
    Clause c = random_clause(rng, n, 4, true);
    if (c.is_tautology()) continue;
    const LinIneq f = encode_clause_cp(c);
    CHECK(f.sparsity() == c.width());
    CHECK(f.l1_norm() <= 2 * c.width() + 1);
    for_each_completion(PartialAssignment(n), [&](const Assignment& x) {
      CHECK(evaluate_ineq(f, x) == evaluate_clause(c, x));
    });
  }
}

TEST_CASE("restriction semantics and norms") {
  Rng rng(12);
  for (int iter = 0; iter < 400; ++iter) {
    const std::size_t n = uniform(rng, 1, 5);
    const LinIneq f = random_ineq(rng, n, 4, 3);
    const auto rho = random_rho(rng, n);
    const auto r = restrict_ineq(f, rho);
    const WitnessStatus st = ineq_witness_status(f, rho);
    CHECK(st == witness_status(to_formula(f), rho));
    CHECK((st == WitnessStatus::WitnessedTrue) == !r.has_value());
    if (r) {
      CHECK(r->l1_norm() <= f.l1_norm());
      CHECK(r->sparsity() <= f.sparsity());
    }
    for_each_completion(rho, [&](const Assignment& x) {
      if (r) CHECK(evaluate_ineq(*r, x) == evaluate_ineq(f, x));
      else CHECK(evaluate_ineq(f, x));
    });
  }
}

TEST_CASE("accepted traces replay and are sound") {
  Rng rng(31);
  int accepted = 0;
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = uniform(rng, 1, 3);
    const std::size_t w = uniform(rng, 1, 2);
    const Integer L(static_cast<long>(uniform(rng, 2, 4)));
    std::vector<LinIneq> hyps;
    const std::size_t count = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < count; ++i) hyps.push_back(random_ineq(rng, n, 2, 2));
    LinIneq target = random_ineq(rng, n, w, 1);
    if (target.sparsity() > w || target.l1_norm() > L) target = LinIneq({}, Integer(1));
    auto r = decide_cp(hyps, target, w, L);
    if (!r.accepted) continue;
    ++accepted;
    REQUIRE(r.trace);
    CHECK(check_cp_trace(*r.trace, hyps, target, w, L));
    for_each_completion(PartialAssignment(n), [&](const Assignment& x) {
      for (const auto& h : hyps)
        if (!evaluate_ineq(h, x)) return;
      for (const auto& step : r.trace->steps) CHECK(evaluate_ineq(step.result, x));
    });
  }
  CHECK(accepted > 10);
}

}  // TEST_SUITE
