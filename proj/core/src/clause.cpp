#include "pacsem/clause.hpp"

#include <algorithm>
#include <cstdlib>

#include "pacsem/errors.hpp"

namespace pacsem {

Literal Literal::from_dimacs(int code) {
  if (code == 0) throw InputError("literal code 0 is reserved as the clause terminator");
  return {VarId(static_cast<std::uint32_t>(std::abs(code))), code > 0};
}

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    if (lits_[i].var == lits_[i - 1].var) {
      tautology_ = true;
      lits_.clear();
      return;
    }
  }
}

Clause Clause::tautology() {
  Clause c;
  c.tautology_ = true;
  return c;
}

Clause Clause::from_dimacs(std::span<const int> codes) {
  std::vector<Literal> lits;
  lits.reserve(codes.size());
  for (int code : codes) lits.push_back(Literal::from_dimacs(code));
  return Clause(std::move(lits));
}

bool Clause::contains(Literal l) const {
  return tautology_ || std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Clause::mentions(VarId v) const {
  if (tautology_) return true;
  return contains(Literal{v, true}) || contains(Literal{v, false});
}

bool Clause::is_superset_of(const Clause& other) const {
  if (tautology_) return true;
  if (other.tautology_) return false;
  return std::includes(lits_.begin(), lits_.end(), other.lits_.begin(), other.lits_.end());
}

Clause Clause::with(Literal l) const {
  if (tautology_) return *this;
  auto lits = lits_;
  lits.push_back(l);
  return Clause(std::move(lits));
}

Clause Clause::without(Literal l) const {
  if (tautology_) return *this;
  Clause c = *this;
  c.lits_.erase(std::remove(c.lits_.begin(), c.lits_.end(), l), c.lits_.end());
  return c;
}

Clause Clause::merged(const Clause& other) const {
  if (tautology_ || other.tautology_) return tautology();
  auto lits = lits_;
  lits.insert(lits.end(), other.lits_.begin(), other.lits_.end());
  return Clause(std::move(lits));
}

std::uint32_t Clause::max_var() const {
  return lits_.empty() ? 0 : lits_.back().var.index;
}

std::string Clause::to_string() const {
  if (tautology_) return "T";
  if (lits_.empty()) return "()";
  std::string s = "(";
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) s += " v ";
    if (!lits_[i].positive) s += "-";
    s += "x" + std::to_string(lits_[i].var.index);
  }
  return s + ")";
}

Clause restrict_clause(const Clause& c, const PartialAssignment& rho) {
  if (c.is_tautology()) return c;
  std::vector<Literal> kept;
  for (Literal l : c.literals()) {
    Cell cell = rho[l.var];
    if (l.satisfied_by(cell)) return Clause::tautology();
    if (!l.falsified_by(cell)) kept.push_back(l);
  }
  return Clause(std::move(kept));
}

bool evaluate_clause(const Clause& c, const Assignment& x) {
  if (c.is_tautology()) return true;
  for (Literal l : c.literals()) {
    if (l.var.offset() >= x.size()) throw InputError("literal out of range");
    if (x[l.var.offset()] == l.positive) return true;
  }
  return false;
}

Formula to_formula(const Clause& c) {
  if (c.is_tautology()) return Formula::constant(true);
  if (c.is_empty()) return Formula::constant(false);
  std::vector<Formula> lits;
  for (Literal l : c.literals()) lits.push_back(Formula::literal(l.var, l.positive));
  return Formula::disjunction(std::move(lits));
}

Cnf::Cnf(std::size_t n, std::vector<Clause> clauses) : n_(n) {
  for (auto& c : clauses) {
    if (c.max_var() > n)
      throw InputError("clause " + c.to_string() + " mentions a variable beyond n=" +
                       std::to_string(n));
    if (std::find(clauses_.begin(), clauses_.end(), c) == clauses_.end())
      clauses_.push_back(std::move(c));
  }
}

bool Cnf::contains(const Clause& c) const {
  return std::find(clauses_.begin(), clauses_.end(), c) != clauses_.end();
}

Cnf restrict_cnf(const Cnf& cnf, const PartialAssignment& rho) {
  std::vector<Clause> out;
  for (const auto& c : cnf.clauses()) {
    Clause r = restrict_clause(c, rho);
    if (!r.is_tautology()) out.push_back(std::move(r));
  }
  return Cnf(cnf.num_vars(), std::move(out));
}

bool evaluate_cnf(const Cnf& cnf, const Assignment& x) {
  return std::all_of(cnf.clauses().begin(), cnf.clauses().end(),
                     [&x](const Clause& c) { return evaluate_clause(c, x); });
}

Formula to_formula(const Cnf& cnf) {
  if (cnf.clauses().empty()) return Formula::constant(true);
  std::vector<Formula> parts;
  for (const auto& c : cnf.clauses()) parts.push_back(to_formula(c));
  return Formula::conjunction(std::move(parts));
}

}  // namespace pacsem
