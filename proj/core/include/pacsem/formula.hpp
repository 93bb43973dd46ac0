#pragma once

// Threshold-basis propositional formulas, partial assignments, witnessed
// evaluation and restriction. Everything here is immutable and pure.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pacsem/rational.hpp"

namespace pacsem {

// 1-based variable index.
struct VarId {
  std::uint32_t index = 1;

  constexpr VarId() = default;
  constexpr explicit VarId(std::uint32_t i) : index(i) {}
  constexpr std::size_t offset() const { return index - 1; }
  friend constexpr auto operator<=>(VarId, VarId) = default;
};

// A full assignment x in {0,1}^n; x[i] is the value of variable i+1.
using Assignment = std::vector<bool>;

enum class Cell : std::uint8_t { Zero, One, Star };

class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::size_t n) : cells_(n, Cell::Star) {}
  explicit PartialAssignment(std::vector<Cell> cells) : cells_(std::move(cells)) {}

  // Parses a positional string over {0,1,*}.
  static PartialAssignment from_string(std::string_view text);
  static PartialAssignment from_assignment(const Assignment& x);

  std::size_t size() const { return cells_.size(); }
  Cell operator[](VarId v) const { return cells_.at(v.offset()); }
  Cell at(std::size_t offset) const { return cells_.at(offset); }
  void set(VarId v, Cell c) { cells_.at(v.offset()) = c; }
  bool is_set(VarId v) const { return (*this)[v] != Cell::Star; }

  std::size_t count_masked() const;
  bool consistent_with(const Assignment& x) const;
  const std::vector<Cell>& cells() const { return cells_; }
  std::string to_string() const;

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

 private:
  std::vector<Cell> cells_;
};

// Merges tau into the masked coordinates of sigma. Throws InputError if tau
// sets a coordinate that sigma already fixes, or if the lengths differ.
PartialAssignment refine(const PartialAssignment& sigma, const PartialAssignment& tau);

enum class WitnessStatus { WitnessedTrue, WitnessedFalse, Unwitnessed };
const char* to_string(WitnessStatus s);

struct FormulaNode;

class Formula {
 public:
  // Default-constructed formula is Const(false).
  Formula();

  static Formula constant(bool value);
  static Formula var(VarId v);
  static Formula negation(Formula child);
  // Throws InputError when the lists are empty or of different lengths.
  static Formula threshold(std::vector<Rational> coeffs, std::vector<Formula> children,
                           Rational bound);

  // Conveniences expressed through the threshold connective.
  static Formula conjunction(std::vector<Formula> children);  // c_i = 1, b = k
  static Formula disjunction(std::vector<Formula> children);  // c_i = 1, b = 1
  static Formula literal(VarId v, bool positive);

  const FormulaNode& node() const { return *node_; }

  bool is_const() const;
  // Only meaningful when is_const().
  bool const_value() const;

  // Largest variable index mentioned (0 when none).
  std::uint32_t max_var() const;
  std::size_t size() const;
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct ConstNode {
  bool value = false;
  friend bool operator==(const ConstNode&, const ConstNode&) = default;
};
struct VarNode {
  VarId var;
  friend bool operator==(const VarNode&, const VarNode&) = default;
};
struct NotNode {
  Formula child;
  friend bool operator==(const NotNode&, const NotNode&) = default;
};
struct ThresholdNode {
  std::vector<Rational> coeffs;
  std::vector<Formula> children;
  Rational bound;
  friend bool operator==(const ThresholdNode&, const ThresholdNode&) = default;
};

struct FormulaNode {
  std::variant<ConstNode, VarNode, NotNode, ThresholdNode> value;
};

// Standard semantics. Throws InputError when phi mentions a variable beyond x.
bool evaluate(const Formula& phi, const Assignment& x);

WitnessStatus witness_status(const Formula& phi, const PartialAssignment& rho);

// phi|rho. Keeps original variable indexing; witnessed subformulas collapse
// to constants and witnessed threshold children are folded into the bound.
Formula restrict(const Formula& phi, const PartialAssignment& rho);

// Throws InputError if phi mentions a variable index > n.
void check_in_range(const Formula& phi, std::size_t n);

}  // namespace pacsem
