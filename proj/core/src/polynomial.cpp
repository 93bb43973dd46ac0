#include "pacsem/polynomial.hpp"

#include <algorithm>

#include "pacsem/errors.hpp"

namespace pacsem {

std::string Indeterminate::to_string() const {
  return (dual ? "~x" : "x") + std::to_string(var.index);
}

Monomial::Monomial(std::vector<Indeterminate> indets) {
  ids_.reserve(indets.size());
  for (const auto& x : indets) ids_.push_back(x.id());
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

std::vector<Indeterminate> Monomial::indeterminates() const {
  std::vector<Indeterminate> out;
  out.reserve(ids_.size());
  for (auto id : ids_) out.push_back(Indeterminate::from_id(id));
  return out;
}

bool Monomial::has_dual() const {
  return std::any_of(ids_.begin(), ids_.end(), [](std::uint32_t id) { return (id & 1U) != 0; });
}

std::uint32_t Monomial::max_var() const { return ids_.empty() ? 0 : ids_.back() / 2 + 1; }

Monomial Monomial::times(const Monomial& other) const {
  Monomial out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out.ids_));
  return out;
}

std::string Monomial::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) s += " ";
    s += Indeterminate::from_id(ids_[i]).to_string();
  }
  return s;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.ids_.begin(), a.ids_.end(), b.ids_.begin(),
                                                b.ids_.end());
}

Polynomial::Polynomial(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
}

Polynomial Polynomial::constant(const Rational& c) { return monomial(Monomial(), c); }

Polynomial Polynomial::monomial(Monomial m, const Rational& c) {
  Terms t;
  t.emplace(std::move(m), c);
  return Polynomial(std::move(t));
}

std::size_t Polynomial::degree() const { return terms_.empty() ? 0 : leading_monomial().degree(); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::has_dual() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.has_dual(); });
}

std::uint32_t Polynomial::max_var() const {
  std::uint32_t m = 0;
  for (const auto& [mono, c] : terms_) m = std::max(m, mono.max_var());
  return m;
}

void Polynomial::add_scaled(const Polynomial& o, const Rational& c) {
  if (sgn(c) == 0) return;
  for (const auto& [m, coef] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, 0);
    it->second += c * coef;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r.add_scaled(o, 1);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r.add_scaled(o, -1);
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (sgn(c) == 0) return {};
  Polynomial r = *this;
  for (auto& [m, coef] : r.terms_) coef *= c;
  return r;
}

Polynomial Polynomial::times(const Monomial& mono) const {
  Polynomial r;
  for (const auto& [m, coef] : terms_) r.add_scaled(monomial(m.times(mono), coef), 1);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m, coef] : o.terms_) r.add_scaled(times(m), coef);
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += "; ";
    s += pacsem::to_string(it->second);
    if (it->first.degree()) s += " " + it->first.to_string();
  }
  return s;
}

Polynomial multilinearize(const std::vector<PowerTerm>& terms) {
  Polynomial out;
  for (const auto& t : terms) {
    std::vector<Indeterminate> support;
    for (const auto& [x, e] : t.powers)
      if (e > 0) support.push_back(x);
    out.add_scaled(Polynomial::monomial(Monomial(std::move(support))), t.coeff);
  }
  return out;
}

namespace {

// Cell of an indeterminate under rho, with duals negated.
Cell cell_of(std::uint32_t id, const PartialAssignment& rho) {
  const Indeterminate x = Indeterminate::from_id(id);
  const Cell c = rho[x.var];
  if (!x.dual || c == Cell::Star) return c;
  return c == Cell::One ? Cell::Zero : Cell::One;
}

}  // namespace

Rational evaluate_polynomial(const Polynomial& p, const Assignment& x) {
  if (p.max_var() > x.size()) throw InputError("polynomial mentions a variable beyond the assignment");
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    bool one = true;
    for (auto id : m.ids()) {
      const Indeterminate ind = Indeterminate::from_id(id);
      if (x[ind.var.offset()] == ind.dual) {
        one = false;
        break;
      }
    }
    if (one) total += c;
  }
  return total;
}

Polynomial restrict_polynomial(const Polynomial& p, const PartialAssignment& rho) {
  if (p.max_var() > rho.size()) throw InputError("polynomial mentions a variable beyond rho");
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Indeterminate> kept;
    bool zero = false;
    for (auto id : m.ids()) {
      const Cell cell = cell_of(id, rho);
      if (cell == Cell::Zero) {
        zero = true;
        break;
      }
      if (cell == Cell::Star) kept.push_back(Indeterminate::from_id(id));
    }
    if (!zero) out.add_scaled(Polynomial::monomial(Monomial(std::move(kept))), c);
  }
  return out;
}

WitnessStatus poly_witness_status(const Polynomial& p, const PartialAssignment& rho) {
  if (p.max_var() > rho.size()) throw InputError("polynomial mentions a variable beyond rho");
  // A monomial is a conjunction: witnessed false once any factor is 0,
  // witnessed true once every factor is 1.
  Rational fixed = 0, lo = 0, hi = 0;
  bool all_witnessed = true;
  for (const auto& [m, c] : p.terms()) {
    bool any_zero = false, all_one = true;
    for (auto id : m.ids()) {
      const Cell cell = cell_of(id, rho);
      any_zero = any_zero || cell == Cell::Zero;
      all_one = all_one && cell == Cell::One;
    }
    if (any_zero) continue;
    if (all_one) {
      fixed += c;
      continue;
    }
    all_witnessed = false;
    if (sgn(c) < 0) lo += c;
    else hi += c;
  }
  lo += fixed;
  hi += fixed;
  if (all_witnessed && sgn(fixed) == 0) return WitnessStatus::WitnessedTrue;
  if (sgn(hi) < 0 || sgn(lo) > 0) return WitnessStatus::WitnessedFalse;
  return WitnessStatus::Unwitnessed;
}

Formula to_formula(const Polynomial& p) {
  std::vector<Rational> coeffs, negated;
  std::vector<Formula> children;
  const Rational c0 = p.coefficient(Monomial());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() == 0) continue;
    std::vector<Formula> lits;
    for (const auto& x : m.indeterminates()) lits.push_back(Formula::literal(x.var, !x.dual));
    children.push_back(lits.size() == 1 ? lits.front() : Formula::conjunction(std::move(lits)));
    coeffs.push_back(c);
    negated.push_back(-c);
  }
  if (children.empty()) return Formula::constant(sgn(c0) == 0);
  auto upper = Formula::threshold(std::move(coeffs), children, -c0);
  auto lower = Formula::threshold(std::move(negated), std::move(children), c0);
  return Formula::conjunction({upper, lower});
}

Polynomial encode_clause_pcr(const Clause& c) {
  if (c.is_tautology()) throw InputError("the tautology clause has no monomial encoding");
  std::vector<Indeterminate> factors;
  // Literal x is falsified when x-bar = 1, and literal -x when x = 1.
  for (Literal l : c.literals()) factors.push_back({l.var, l.positive});
  return Polynomial::monomial(Monomial(std::move(factors)));
}

}  // namespace pacsem
