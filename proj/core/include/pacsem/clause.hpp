#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "pacsem/formula.hpp"

namespace pacsem {

struct Literal {
  VarId var;
  bool positive = true;

  constexpr Literal() = default;
  constexpr Literal(VarId v, bool pos) : var(v), positive(pos) {}
  // DIMACS-style signed integer: 3 -> x3, -3 -> not x3.
  static Literal from_dimacs(int code);
  int to_dimacs() const { return positive ? static_cast<int>(var.index) : -static_cast<int>(var.index); }

  constexpr Literal operator~() const { return {var, !positive}; }
  bool satisfied_by(Cell c) const {
    return c != Cell::Star && ((c == Cell::One) == positive);
  }
  bool falsified_by(Cell c) const {
    return c != Cell::Star && ((c == Cell::One) != positive);
  }

  // Ascending variable, positive before negative.
  friend constexpr bool operator==(Literal, Literal) = default;
  friend constexpr std::strong_ordering operator<=>(Literal a, Literal b) {
    if (auto c = a.var <=> b.var; c != 0) return c;
    return b.positive <=> a.positive;
  }
};

// A disjunction of literals kept sorted and duplicate-free. A literal set with
// a complementary pair collapses to the distinguished tautology, which stands
// for the clause of all literals (the constant "true").
class Clause {
 public:
  Clause() = default;  // the empty clause (bottom)
  explicit Clause(std::vector<Literal> lits);
  static Clause tautology();
  static Clause from_dimacs(std::span<const int> codes);

  bool is_tautology() const { return tautology_; }
  bool is_empty() const { return !tautology_ && lits_.empty(); }
  std::size_t width() const { return lits_.size(); }
  const std::vector<Literal>& literals() const { return lits_; }

  bool contains(Literal l) const;
  bool mentions(VarId v) const;
  // Every literal of other occurs here. The tautology contains everything.
  bool is_superset_of(const Clause& other) const;

  Clause with(Literal l) const;
  Clause without(Literal l) const;
  Clause merged(const Clause& other) const;

  std::uint32_t max_var() const;
  std::string to_string() const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause&, const Clause&) = default;

 private:
  bool tautology_ = false;
  std::vector<Literal> lits_;
};

Clause restrict_clause(const Clause& c, const PartialAssignment& rho);
bool evaluate_clause(const Clause& c, const Assignment& x);
// Threshold-basis form [sum of literals >= 1]; the empty clause is Const(false).
Formula to_formula(const Clause& c);

// Deduplicated clause list over n variables.
class Cnf {
 public:
  Cnf() = default;
  // Throws InputError if a clause mentions a variable beyond n.
  Cnf(std::size_t n, std::vector<Clause> clauses);

  std::size_t num_vars() const { return n_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool contains(const Clause& c) const;

  friend bool operator==(const Cnf&, const Cnf&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Clause> clauses_;
};

// Satisfied clauses are dropped; the rest lose their falsified literals.
Cnf restrict_cnf(const Cnf& cnf, const PartialAssignment& rho);
bool evaluate_cnf(const Cnf& cnf, const Assignment& x);
Formula to_formula(const Cnf& cnf);

}  // namespace pacsem
