#include "pacsem/formula.hpp"

#include <algorithm>
#include <sstream>

#include "pacsem/errors.hpp"

namespace pacsem {

PartialAssignment PartialAssignment::from_string(std::string_view text) {
  std::vector<Cell> cells;
  cells.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '0': cells.push_back(Cell::Zero); break;
      case '1': cells.push_back(Cell::One); break;
      case '*': cells.push_back(Cell::Star); break;
      default:
        throw InputError(std::string("invalid partial-assignment character '") + c + "'");
    }
  }
  return PartialAssignment(std::move(cells));
}

PartialAssignment PartialAssignment::from_assignment(const Assignment& x) {
  std::vector<Cell> cells;
  cells.reserve(x.size());
  for (bool b : x) cells.push_back(b ? Cell::One : Cell::Zero);
  return PartialAssignment(std::move(cells));
}

std::size_t PartialAssignment::count_masked() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), Cell::Star));
}

bool PartialAssignment::consistent_with(const Assignment& x) const {
  if (x.size() != cells_.size()) return false;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == Cell::Star) continue;
    if ((cells_[i] == Cell::One) != x[i]) return false;
  }
  return true;
}

std::string PartialAssignment::to_string() const {
  std::string s;
  s.reserve(cells_.size());
  for (Cell c : cells_) s.push_back(c == Cell::Zero ? '0' : c == Cell::One ? '1' : '*');
  return s;
}

PartialAssignment refine(const PartialAssignment& sigma, const PartialAssignment& tau) {
  if (sigma.size() != tau.size())
    throw InputError("refine: sigma and tau have different lengths");
  std::vector<Cell> out = sigma.cells();
  for (std::size_t i = 0; i < out.size(); ++i) {
    Cell t = tau.at(i);
    if (t == Cell::Star) continue;
    if (out[i] != Cell::Star)
      throw InputError("refine: tau assigns x" + std::to_string(i + 1) +
                       ", which sigma already sets");
    out[i] = t;
  }
  return PartialAssignment(std::move(out));
}

const char* to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::WitnessedTrue: return "witnessed-true";
    case WitnessStatus::WitnessedFalse: return "witnessed-false";
    case WitnessStatus::Unwitnessed: return "unwitnessed";
  }
  return "?";
}

// --- construction -------------------------------------------------------

namespace {

std::shared_ptr<const FormulaNode> make_node(auto&& value) {
  return std::make_shared<const FormulaNode>(FormulaNode{std::forward<decltype(value)>(value)});
}

const std::shared_ptr<const FormulaNode>& false_node() {
  static const auto node = make_node(ConstNode{false});
  return node;
}

const std::shared_ptr<const FormulaNode>& true_node() {
  static const auto node = make_node(ConstNode{true});
  return node;
}

}  // namespace

Formula::Formula() : node_(false_node()) {}

Formula Formula::constant(bool value) { return Formula(value ? true_node() : false_node()); }

Formula Formula::var(VarId v) {
  if (v.index == 0) throw InputError("variable indices start at 1");
  return Formula(make_node(VarNode{v}));
}

Formula Formula::negation(Formula child) { return Formula(make_node(NotNode{std::move(child)})); }

Formula Formula::threshold(std::vector<Rational> coeffs, std::vector<Formula> children,
                           Rational bound) {
  if (children.empty()) throw InputError("threshold connective needs at least one child");
  if (coeffs.size() != children.size())
    throw InputError("threshold connective: coefficient/child count mismatch");
  return Formula(make_node(ThresholdNode{std::move(coeffs), std::move(children), std::move(bound)}));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  const auto k = children.size();
  return threshold(std::vector<Rational>(k, Rational(1)), std::move(children),
                   Rational(static_cast<long>(k)));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  const auto k = children.size();
  return threshold(std::vector<Rational>(k, Rational(1)), std::move(children), Rational(1));
}

Formula Formula::literal(VarId v, bool positive) {
  return positive ? var(v) : negation(var(v));
}

bool Formula::is_const() const { return std::holds_alternative<ConstNode>(node_->value); }

bool Formula::const_value() const { return std::get<ConstNode>(node_->value).value; }

std::uint32_t Formula::max_var() const {
  return std::visit(
      [](const auto& n) -> std::uint32_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return 0;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          return n.var.index;
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return n.child.max_var();
        } else {
          std::uint32_t m = 0;
          for (const auto& c : n.children) m = std::max(m, c.max_var());
          return m;
        }
      },
      node_->value);
}

std::size_t Formula::size() const {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NotNode>) {
          return 1 + n.child.size();
        } else if constexpr (std::is_same_v<T, ThresholdNode>) {
          std::size_t s = 1;
          for (const auto& c : n.children) s += c.size();
          return s;
        } else {
          return 1;
        }
      },
      node_->value);
}

std::string Formula::to_string() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return n.value ? "T" : "F";
        } else if constexpr (std::is_same_v<T, VarNode>) {
          return "x" + std::to_string(n.var.index);
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return "~" + n.child.to_string();
        } else {
          std::string s = "[";
          for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) s += " + ";
            s += pacsem::to_string(n.coeffs[i]) + "*" + n.children[i].to_string();
          }
          return s + " >= " + pacsem::to_string(n.bound) + "]";
        }
      },
      node_->value);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->value == b.node_->value;
}

void check_in_range(const Formula& phi, std::size_t n) {
  if (phi.max_var() > n)
    throw InputError("formula mentions x" + std::to_string(phi.max_var()) +
                     " but only " + std::to_string(n) + " variables are declared");
}

// --- semantics ------------------------------------------------------------

bool evaluate(const Formula& phi, const Assignment& x) {
  return std::visit(
      [&x](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          if (n.var.offset() >= x.size())
            throw InputError("variable x" + std::to_string(n.var.index) + " out of range");
          return x[n.var.offset()];
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return !evaluate(n.child, x);
        } else {
          Rational sum = 0;
          for (std::size_t i = 0; i < n.children.size(); ++i)
            if (evaluate(n.children[i], x)) sum += n.coeffs[i];
          return sum >= n.bound;
        }
      },
      phi.node().value);
}

namespace {

// Verdict of a threshold node from its children's statuses.
WitnessStatus threshold_status(const ThresholdNode& t, std::span<const WitnessStatus> kids) {
  Rational low = 0;   // witnessed-true mass plus the worst case of the rest
  Rational high = 0;  // witnessed-true mass plus the best case of the rest
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const Rational& c = t.coeffs[i];
    switch (kids[i]) {
      case WitnessStatus::WitnessedTrue:
        low += c;
        high += c;
        break;
      case WitnessStatus::WitnessedFalse:
        break;
      case WitnessStatus::Unwitnessed:
        if (sgn(c) < 0) low += c;
        else high += c;
        break;
    }
  }
  if (low >= t.bound) return WitnessStatus::WitnessedTrue;
  if (high < t.bound) return WitnessStatus::WitnessedFalse;
  return WitnessStatus::Unwitnessed;
}

}  // namespace

WitnessStatus witness_status(const Formula& phi, const PartialAssignment& rho) {
  return std::visit(
      [&rho](const auto& n) -> WitnessStatus {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return n.value ? WitnessStatus::WitnessedTrue : WitnessStatus::WitnessedFalse;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          if (n.var.offset() >= rho.size())
            throw InputError("variable x" + std::to_string(n.var.index) + " out of range");
          switch (rho[n.var]) {
            case Cell::One: return WitnessStatus::WitnessedTrue;
            case Cell::Zero: return WitnessStatus::WitnessedFalse;
            case Cell::Star: return WitnessStatus::Unwitnessed;
          }
          return WitnessStatus::Unwitnessed;
        } else if constexpr (std::is_same_v<T, NotNode>) {
          switch (witness_status(n.child, rho)) {
            case WitnessStatus::WitnessedTrue: return WitnessStatus::WitnessedFalse;
            case WitnessStatus::WitnessedFalse: return WitnessStatus::WitnessedTrue;
            case WitnessStatus::Unwitnessed: return WitnessStatus::Unwitnessed;
          }
          return WitnessStatus::Unwitnessed;
        } else {
          std::vector<WitnessStatus> kids;
          kids.reserve(n.children.size());
          for (const auto& c : n.children) kids.push_back(witness_status(c, rho));
          return threshold_status(n, kids);
        }
      },
      phi.node().value);
}

Formula restrict(const Formula& phi, const PartialAssignment& rho) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return phi;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          switch (witness_status(phi, rho)) {
            case WitnessStatus::WitnessedTrue: return Formula::constant(true);
            case WitnessStatus::WitnessedFalse: return Formula::constant(false);
            case WitnessStatus::Unwitnessed: return phi;
          }
          return phi;
        } else if constexpr (std::is_same_v<T, NotNode>) {
          Formula child = restrict(n.child, rho);
          if (child.is_const()) return Formula::constant(!child.const_value());
          return Formula::negation(std::move(child));
        } else {
          std::vector<WitnessStatus> kids;
          kids.reserve(n.children.size());
          for (const auto& c : n.children) kids.push_back(witness_status(c, rho));
          switch (threshold_status(n, kids)) {
            case WitnessStatus::WitnessedTrue: return Formula::constant(true);
            case WitnessStatus::WitnessedFalse: return Formula::constant(false);
            case WitnessStatus::Unwitnessed: break;
          }
          std::vector<Rational> coeffs;
          std::vector<Formula> children;
          Rational bound = n.bound;
          for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (kids[i] == WitnessStatus::WitnessedTrue) {
              bound -= n.coeffs[i];
            } else if (kids[i] == WitnessStatus::Unwitnessed) {
              coeffs.push_back(n.coeffs[i]);
              children.push_back(restrict(n.children[i], rho));
            }
          }
          if (children.empty()) return Formula::constant(sgn(bound) <= 0);
          return Formula::threshold(std::move(coeffs), std::move(children), std::move(bound));
        }
      },
      phi.node().value);
}

}  // namespace pacsem
