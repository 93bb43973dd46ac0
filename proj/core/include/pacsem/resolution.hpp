#pragma once

// Treelike resolution: proof objects, checking, clause-space accounting,
// bounded-space proof search and proof restriction.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pacsem/clause.hpp"

namespace pacsem {

enum class ProofRule {
  Hypothesis,  // leaf: a clause of the input CNF
  Axiom,       // leaf: the tautology clause ("true")
  Weaken,      // one premise, clause is a superset of it
  Cut,         // two premises A v x and B v -x, clause A v B
};

struct ProofStep {
  ProofRule rule = ProofRule::Hypothesis;
  Clause clause;
  // Premise indices into TreelikeProof::steps; always smaller than this
  // step's own index. For Cut, `left` holds the positive pivot literal.
  std::size_t left = 0;
  std::size_t right = 0;
  VarId pivot;
};

// Steps in post-order; the last step is the root. Treelike means every
// non-root step is used as a premise exactly once.
struct TreelikeProof {
  std::vector<ProofStep> steps;

  std::size_t size() const { return steps.size(); }
  const ProofStep& root() const { return steps.back(); }
  const Clause& conclusion() const { return steps.back().clause; }
};

// True iff every leaf is a clause of phi or the tautology, every internal
// step applies cut or weakening correctly, the premise structure is a tree,
// and the root derives target. Malformed proofs yield false.
bool check_proof(const TreelikeProof& proof, const Cnf& phi, const Clause& target);

// Pebbling recurrence: leaf 1; a cut with equal-space subtrees costs one
// more; otherwise the larger subtree's space; weakening inherits.
std::size_t clause_space(const TreelikeProof& proof);

// floor(log2 L) + 1. Throws InputError for L = 0.
std::size_t space_bound_for_size(std::size_t proof_length);

struct SearchStats {
  std::size_t calls = 0;
};

// Finds a treelike proof of target from phi whose clause space is at most s,
// or nullopt when none exists. Literals are tried in ascending variable
// order, positive first. s must be at least 1.
std::optional<TreelikeProof> search_space(const Cnf& phi, std::size_t s, const Clause& target,
                                          SearchStats* stats = nullptr);

// Applies rho to every step: satisfied steps become axiom leaves, cuts on an
// assigned pivot become weakenings of the branch whose pivot literal is
// falsified. The result proves target|rho from phi|rho, is no longer than
// the input and uses no more clause space. Throws InputError when the input
// is structurally malformed.
TreelikeProof restrict_proof(const TreelikeProof& proof, const PartialAssignment& rho);

// Nested-parenthesis trace, e.g.
//   (cut 1 (hyp 1) (weaken 1 -2 (hyp -2)))
// Clause literals are DIMACS codes; "T" marks the tautology axiom.
std::string serialize_proof(const TreelikeProof& proof);
// Throws InputError on syntax errors. Clauses are recomputed from the rules,
// so a parsed proof still needs check_proof.
TreelikeProof parse_proof(std::string_view text);

}  // namespace pacsem
