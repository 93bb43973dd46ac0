#pragma once

// Multilinear polynomials over Q with optional dual indeterminates (x-bar),
// plus their Boolean semantics: evaluation, restriction and witnessing.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pacsem/clause.hpp"
#include "pacsem/formula.hpp"
#include "pacsem/rational.hpp"

namespace pacsem {

struct Indeterminate {
  VarId var;
  bool dual = false;  // true for x-bar, which stands for (not x)

  // Dense id used for ordering: 2*(var-1) + dual.
  std::uint32_t id() const { return 2 * static_cast<std::uint32_t>(var.offset()) + (dual ? 1 : 0); }
  static Indeterminate from_id(std::uint32_t id) { return {VarId(id / 2 + 1), (id & 1U) != 0}; }
  std::string to_string() const;  // "x3" or "~x3"

  friend bool operator==(const Indeterminate&, const Indeterminate&) = default;
  friend auto operator<=>(const Indeterminate& a, const Indeterminate& b) { return a.id() <=> b.id(); }
};

// A set of indeterminates. Graded-lex order: higher degree is larger, ties
// broken lexicographically on the sorted id lists.
class Monomial {
 public:
  Monomial() = default;  // the constant monomial 1
  explicit Monomial(std::vector<Indeterminate> indets);

  std::size_t degree() const { return ids_.size(); }
  const std::vector<std::uint32_t>& ids() const { return ids_; }
  std::vector<Indeterminate> indeterminates() const;
  bool has_dual() const;
  std::uint32_t max_var() const;
  // Multilinear product (set union).
  Monomial times(const Monomial& other) const;
  std::string to_string() const;  // "x1 ~x2"; "" for the constant monomial

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::uint32_t> ids_;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;  // zero
  // Drops zero coefficients.
  explicit Polynomial(Terms terms);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(Monomial m, const Rational& c = 1);
  static Polynomial indeterminate(Indeterminate x) { return monomial(Monomial({x})); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;  // 0 for the zero polynomial
  const Terms& terms() const { return terms_; }
  // Only meaningful when nonzero.
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }
  Rational coefficient(const Monomial& m) const;
  bool has_dual() const;
  std::uint32_t max_var() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  // Multilinear product.
  Polynomial operator*(const Polynomial& o) const;
  Polynomial times(const Monomial& m) const;
  // this += c * o
  void add_scaled(const Polynomial& o, const Rational& c);

  // Terms in decreasing monomial order, "; "-separated, e.g. "1 x1 x2; -1";
  // "0" for the zero polynomial.
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Terms terms_;
};

// A term with explicit exponents, before multilinearization.
struct PowerTerm {
  Rational coeff;
  std::vector<std::pair<Indeterminate, unsigned>> powers;
};

// Every positive exponent becomes 1; like monomials merge.
Polynomial multilinearize(const std::vector<PowerTerm>& terms);

// Value at a Boolean point, with x-bar read as 1 - x.
Rational evaluate_polynomial(const Polynomial& p, const Assignment& x);

// p|rho: monomials with an indeterminate set to 0 vanish, indeterminates set
// to 1 are deleted. rho(x-bar) is the negation of rho(x) when x is set.
Polynomial restrict_polynomial(const Polynomial& p, const PartialAssignment& rho);

// Witness status of [p = 0] under rho, through its two-threshold encoding
// with monomials read as conjunctions.
WitnessStatus poly_witness_status(const Polynomial& p, const PartialAssignment& rho);

// The equation [p = 0] as a conjunction of two thresholds over conjunctions
// of literals; x-bar becomes a negated variable.
Formula to_formula(const Polynomial& p);

// Single-monomial PCR encoding: the product of the complement of each
// literal. The empty clause gives the constant 1. Throws InputError for the
// tautology.
Polynomial encode_clause_pcr(const Clause& c);

}  // namespace pacsem
