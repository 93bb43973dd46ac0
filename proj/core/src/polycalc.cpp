#include "pacsem/polycalc.hpp"

#include <deque>
#include <map>
#include <set>

#include "pacsem/errors.hpp"

namespace pacsem {

const char* to_string(PcMode m) { return m == PcMode::PC ? "pc" : "pcr"; }

Polynomial gaussian_reduce(Polynomial p, const PolyBasis& basis) {
  for (const Polynomial& b : basis) {
    if (p.is_zero()) break;
    if (b.is_zero() || b.leading_monomial() != p.leading_monomial()) continue;
    p.add_scaled(b, -(p.leading_coefficient() / b.leading_coefficient()));
  }
  return p;
}

namespace {

// Basis keyed by leading monomial; iteration from the back is the
// decreasing order. Reduction by lookup visits exactly the elements the
// ordered scan would act on.
class Basis {
 public:
  Polynomial reduce(Polynomial p) const {
    while (!p.is_zero()) {
      auto it = by_lead_.find(p.leading_monomial());
      if (it == by_lead_.end()) break;
      p.add_scaled(it->second, -(p.leading_coefficient() / it->second.leading_coefficient()));
    }
    return p;
  }
  void insert(Polynomial p) {
    Monomial lead = p.leading_monomial();
    by_lead_.emplace(std::move(lead), std::move(p));
  }
  std::size_t size() const { return by_lead_.size(); }
  PolyBasis ordered() const {
    PolyBasis out;
    for (auto it = by_lead_.rbegin(); it != by_lead_.rend(); ++it) out.push_back(it->second);
    return out;
  }

 private:
  std::map<Monomial, Polynomial> by_lead_;
};

void collect_vars(const Polynomial& p, std::set<std::uint32_t>& vars) {
  for (const auto& [m, c] : p.terms())
    for (const auto& x : m.indeterminates()) vars.insert(x.var.index);
}

}  // namespace

PcResult decide_pc(const std::vector<Polynomial>& hyps, const Polynomial& q, std::size_t d,
                   PcMode mode) {
  auto check = [&](const Polynomial& p, const char* what) {
    if (p.degree() > d)
      throw InputError(std::string(what) + " " + p.to_string() + " has degree above d=" +
                       std::to_string(d));
    if (mode == PcMode::PC && p.has_dual())
      throw InputError(std::string(what) + " " + p.to_string() +
                       " uses a dual indeterminate outside PCR mode");
  };
  for (const auto& h : hyps) check(h, "hypothesis");
  check(q, "target");

  std::set<std::uint32_t> vars;
  for (const auto& h : hyps) collect_vars(h, vars);
  collect_vars(q, vars);

  std::vector<Monomial> multipliers;
  std::deque<Polynomial> work(hyps.begin(), hyps.end());
  for (auto v : vars) {
    const VarId var(v);
    multipliers.push_back(Monomial({Indeterminate{var, false}}));
    if (mode == PcMode::PCR) {
      multipliers.push_back(Monomial({Indeterminate{var, true}}));
      work.push_back(Polynomial::indeterminate({var, false}) +
                     Polynomial::indeterminate({var, true}) - Polynomial::constant(1));
    }
  }

  PcResult result;
  Basis basis;
  while (!work.empty()) {
    Polynomial p = basis.reduce(std::move(work.front()));
    work.pop_front();
    ++result.stats.processed;
    if (p.is_zero()) continue;
    const bool extend = p.degree() + 1 <= d;
    if (extend)
      for (const auto& alpha : multipliers) work.push_back(p.times(alpha));
    basis.insert(std::move(p));
  }
  result.accepted = basis.reduce(q).is_zero();
  result.stats.basis_size = basis.size();
  result.basis = basis.ordered();
  return result;
}

}  // namespace pacsem
