#pragma once

// Cutting planes over Boolean variables: integer inequalities, the proof
// rules, restriction, clause encoding and the sparse bounded decision
// procedure.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pacsem/clause.hpp"
#include "pacsem/rational.hpp"

namespace pacsem {

// sum_i c_i x_i >= b with nonzero integer coefficients kept sorted by
// variable.
class LinIneq {
 public:
  using Coeffs = std::vector<std::pair<VarId, Integer>>;

  LinIneq() = default;  // 0 >= 0
  // Merges repeated variables and drops zero coefficients.
  LinIneq(Coeffs coeffs, Integer bound);

  // The axioms x >= 0, -x >= -1 and 0 >= -1.
  static LinIneq nonneg_axiom(VarId x);
  static LinIneq upper_axiom(VarId x);
  static LinIneq one_axiom();

  const Coeffs& coeffs() const { return coeffs_; }
  const Integer& bound() const { return bound_; }
  Integer coefficient(VarId x) const;
  std::size_t sparsity() const { return coeffs_.size(); }
  Integer l1_norm() const;
  std::uint32_t max_var() const;
  std::string to_string() const;  // "x1:2 x2:-1 >= 1"; "0 >= -1" with no terms

  friend bool operator==(const LinIneq& a, const LinIneq& b);
  friend bool operator<(const LinIneq& a, const LinIneq& b);

 private:
  Coeffs coeffs_;
  Integer bound_ = 0;
};

bool evaluate_ineq(const LinIneq& f, const Assignment& x);
Formula to_formula(const LinIneq& f);
// Witnessed true iff sum_{set 1} c + sum_{masked} min(0, c) >= b; witnessed
// false iff sum_{set 1} c + sum_{masked} max(0, c) < b.
WitnessStatus ineq_witness_status(const LinIneq& f, const PartialAssignment& rho);

// Variables set to 1 move into the bound, variables set to 0 vanish. Returns
// nullopt (the constant true) when the result is witnessed true.
std::optional<LinIneq> restrict_ineq(const LinIneq& f, const PartialAssignment& rho);

// +x per positive literal, -x per negative literal, bound 1 - #negatives.
// Throws InputError for the tautology.
LinIneq encode_clause_cp(const Clause& c);

enum class CpRule { Axiom, Hypothesis, Add, Multiply, Divide, Weaken };
const char* to_string(CpRule r);

struct CpStep {
  CpRule rule = CpRule::Axiom;
  std::vector<std::size_t> premises;  // earlier step indices
  Integer factor = 0;                 // Multiply / Divide
  std::size_t hyp_index = 0;          // Hypothesis
  LinIneq result;
};

struct CpTrace {
  std::vector<CpStep> steps;  // the last step derives the target
};

// Conclusion of a rule applied to explicit premises. Add and Weaken take two
// premises (Weaken's second must be witnessed true under the empty
// restriction); Multiply and Divide take one premise and a positive factor,
// and Divide's factor must divide every coefficient. Throws RuleError on
// misuse.
LinIneq apply_rule(CpRule rule, const std::vector<LinIneq>& premises, const Integer& factor = 0);

struct CpStats {
  std::size_t rounds = 0;
  std::size_t table_size = 0;
};

struct CpResult {
  bool accepted = false;
  std::optional<CpTrace> trace;
  CpStats stats;
};

// Accepts iff target has a w-sparse L-bounded derivation from hyps and the
// axioms (for the variables occurring in hyps and target). Addition may use
// any hypothesis; table entries, and so every derived line, respect both
// bounds. Throws InputError when target violates either bound.
CpResult decide_cp(const std::vector<LinIneq>& hyps, const LinIneq& target, std::size_t w,
                   const Integer& L);

// Replays every step with apply_rule and checks the budgets on derived
// lines. Independent of the search.
bool check_cp_trace(const CpTrace& trace, const std::vector<LinIneq>& hyps, const LinIneq& target,
                    std::size_t w, const Integer& L);

std::string format_cp_trace(const CpTrace& trace);

}  // namespace pacsem
