#pragma once

// k-DNF lines and the bounded-width RES(k) decision procedure.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pacsem/clause.hpp"

namespace pacsem {

// A nonempty conjunction of literals without complementary pairs.
class Term {
 public:
  Term() = default;
  // Throws InputError on an empty list or a complementary pair.
  explicit Term(std::vector<Literal> lits);
  static Term unit(Literal l) { return Term({l}); }

  std::size_t size() const { return lits_.size(); }
  const std::vector<Literal>& literals() const { return lits_; }
  bool contains(Literal l) const;
  std::uint32_t max_var() const;
  std::string to_string() const;  // "x1&-x2"

  friend bool operator==(const Term&, const Term&) = default;
  // Shorter terms first, then lexicographic on literals.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  std::vector<Literal> lits_;
};

// Disjunction of terms in canonical (sorted, duplicate-free) order. The empty
// disjunction is bottom; the constant true is a distinguished value.
class KDnf {
 public:
  KDnf() = default;
  explicit KDnf(std::vector<Term> terms);
  static KDnf top();
  static KDnf bottom() { return KDnf(); }
  static KDnf from_clause(const Clause& c);

  bool is_top() const { return top_; }
  bool is_bottom() const { return !top_ && terms_.empty(); }
  std::size_t width() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t max_term_size() const;
  bool contains(const Term& t) const;
  // Every term here occurs in other. top only in top; everything in top.
  bool is_subset_of(const KDnf& other) const;
  std::uint32_t max_var() const;
  std::string to_string() const;  // "x1&-x2|x3", "false", "true"

  friend bool operator==(const KDnf&, const KDnf&) = default;
  friend auto operator<=>(const KDnf&, const KDnf&) = default;

 private:
  bool top_ = false;
  std::vector<Term> terms_;
};

// Terms with a falsified literal are dropped, satisfied literals are removed,
// and a fully satisfied term turns the whole formula into top.
KDnf restrict_kdnf(const KDnf& phi, const PartialAssignment& rho);
bool evaluate_kdnf(const KDnf& phi, const Assignment& x);
Formula to_formula(const KDnf& phi);

enum class ReskRule { Hypothesis, Axiom, Weaken, Cut, AndIntro, AndElim };
const char* to_string(ReskRule r);

struct ReskStep {
  ReskRule rule = ReskRule::Hypothesis;
  KDnf formula;
  std::vector<std::size_t> premises;  // earlier step indices
  std::size_t hyp_index = 0;          // Hypothesis only
  // Cut: the conjunction resolved on (in the first premise).
  // AndElim: the conjunction split in the premise.
  Term term;
  // AndElim: the kept literal. AndIntro: the unit literal taken from each
  // premise, in premise order.
  std::vector<Literal> literals;
};

// Steps in derivation order; the last one is the conclusion. Steps may be
// shared (the proof is a DAG).
struct ReskTrace {
  std::vector<ReskStep> steps;
};

struct ReskStats {
  std::size_t rounds = 0;
  std::size_t table_size = 0;   // live entries at the end
  std::size_t derivations = 0;  // formulas ever added to the table
};

struct ReskResult {
  bool accepted = false;
  std::optional<ReskTrace> trace;
  ReskStats stats;
};

// Accepts iff target has a RES(k) proof from hyps in which every derived
// line is a k-DNF of width at most w. Hypotheses wider than w may still be
// used as premises. Throws InputError when target is wider than w or any
// input has a term longer than k.
ReskResult decide_resk_width(const std::vector<KDnf>& hyps, const KDnf& target, std::size_t k,
                             std::size_t w);

// Rule-by-rule replay of a trace, independent of the search code.
bool check_resk_trace(const ReskTrace& trace, const std::vector<KDnf>& hyps, const KDnf& target,
                      std::size_t k, std::size_t w);

std::string format_resk_trace(const ReskTrace& trace);

// Negation of a disjunction of k-CNFs: one k-DNF per CNF, whose terms are the
// negated clauses. An empty disjunction (bottom) yields [top]. Throws
// InputError when a clause has more than k literals.
std::vector<KDnf> negate_query(const std::vector<Cnf>& query, std::size_t k);

}  // namespace pacsem
