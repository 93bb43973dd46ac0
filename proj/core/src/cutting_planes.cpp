#include "pacsem/cutting_planes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pacsem/errors.hpp"

namespace pacsem {

LinIneq::LinIneq(Coeffs coeffs, Integer bound) : bound_(std::move(bound)) {
  std::map<VarId, Integer> merged;
  for (auto& [v, c] : coeffs) merged[v] += c;
  for (auto& [v, c] : merged)
    if (sgn(c) != 0) coeffs_.emplace_back(v, std::move(c));
}

LinIneq LinIneq::nonneg_axiom(VarId x) { return LinIneq({{x, Integer(1)}}, 0); }
LinIneq LinIneq::upper_axiom(VarId x) { return LinIneq({{x, Integer(-1)}}, -1); }
LinIneq LinIneq::one_axiom() { return LinIneq({}, -1); }

Integer LinIneq::coefficient(VarId x) const {
  for (const auto& [v, c] : coeffs_)
    if (v == x) return c;
  return 0;
}

Integer LinIneq::l1_norm() const {
  Integer n = abs(bound_);
  for (const auto& [v, c] : coeffs_) n += abs(c);
  return n;
}

std::uint32_t LinIneq::max_var() const { return coeffs_.empty() ? 0 : coeffs_.back().first.index; }

std::string LinIneq::to_string() const {
  std::string s;
  for (const auto& [v, c] : coeffs_) s += "x" + std::to_string(v.index) + ":" + pacsem::to_string(c) + " ";
  if (coeffs_.empty()) s = "0 ";
  return s + ">= " + pacsem::to_string(bound_);
}

bool operator==(const LinIneq& a, const LinIneq& b) {
  return a.bound_ == b.bound_ && a.coeffs_ == b.coeffs_;
}

bool operator<(const LinIneq& a, const LinIneq& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].first != b.coeffs_[i].first) return a.coeffs_[i].first < b.coeffs_[i].first;
    if (a.coeffs_[i].second != b.coeffs_[i].second) return a.coeffs_[i].second < b.coeffs_[i].second;
  }
  return a.bound_ < b.bound_;
}

bool evaluate_ineq(const LinIneq& f, const Assignment& x) {
  Integer s = 0;
  for (const auto& [v, c] : f.coeffs()) {
    if (v.offset() >= x.size()) throw InputError("inequality mentions a variable beyond the assignment");
    if (x[v.offset()]) s += c;
  }
  return s >= f.bound();
}

Formula to_formula(const LinIneq& f) {
  if (f.coeffs().empty()) return Formula::constant(sgn(f.bound()) <= 0);
  std::vector<Rational> coeffs;
  std::vector<Formula> vars;
  for (const auto& [v, c] : f.coeffs()) {
    coeffs.emplace_back(c);
    vars.push_back(Formula::var(v));
  }
  return Formula::threshold(std::move(coeffs), std::move(vars), Rational(f.bound()));
}

namespace {

struct Ranges {
  Integer fixed = 0, lo = 0, hi = 0;
};

Ranges ranges(const LinIneq& f, const PartialAssignment& rho) {
  Ranges r;
  for (const auto& [v, c] : f.coeffs()) {
    if (v.offset() >= rho.size()) throw InputError("inequality mentions a variable beyond rho");
    const Cell cell = rho[v];
    if (cell == Cell::One) r.fixed += c;
    else if (cell == Cell::Star) (sgn(c) < 0 ? r.lo : r.hi) += c;
  }
  return r;
}

}  // namespace

WitnessStatus ineq_witness_status(const LinIneq& f, const PartialAssignment& rho) {
  const Ranges r = ranges(f, rho);
  if (r.fixed + r.lo >= f.bound()) return WitnessStatus::WitnessedTrue;
  if (r.fixed + r.hi < f.bound()) return WitnessStatus::WitnessedFalse;
  return WitnessStatus::Unwitnessed;
}

std::optional<LinIneq> restrict_ineq(const LinIneq& f, const PartialAssignment& rho) {
  const Ranges r = ranges(f, rho);
  if (r.fixed + r.lo >= f.bound()) return std::nullopt;
  LinIneq::Coeffs kept;
  for (const auto& [v, c] : f.coeffs())
    if (rho[v] == Cell::Star) kept.emplace_back(v, c);
  return LinIneq(std::move(kept), f.bound() - r.fixed);
}

LinIneq encode_clause_cp(const Clause& c) {
  if (c.is_tautology()) throw InputError("the tautology clause has no inequality encoding");
  LinIneq::Coeffs coeffs;
  Integer bound = 1;
  for (Literal l : c.literals()) {
    coeffs.emplace_back(l.var, Integer(l.positive ? 1 : -1));
    if (!l.positive) bound -= 1;
  }
  return LinIneq(std::move(coeffs), bound);
}

const char* to_string(CpRule r) {
  switch (r) {
    case CpRule::Axiom: return "axiom";
    case CpRule::Hypothesis: return "hyp";
    case CpRule::Add: return "add";
    case CpRule::Multiply: return "mul";
    case CpRule::Divide: return "div";
    case CpRule::Weaken: return "weaken";
  }
  return "?";
}

namespace {

LinIneq add(const LinIneq& a, const LinIneq& b) {
  LinIneq::Coeffs c = a.coeffs();
  c.insert(c.end(), b.coeffs().begin(), b.coeffs().end());
  return LinIneq(std::move(c), a.bound() + b.bound());
}

LinIneq scale(const LinIneq& a, const Integer& d) {
  LinIneq::Coeffs c;
  for (const auto& [v, x] : a.coeffs()) c.emplace_back(v, x * d);
  return LinIneq(std::move(c), a.bound() * d);
}

bool divisible(const LinIneq& a, const Integer& d) {
  return std::all_of(a.coeffs().begin(), a.coeffs().end(),
                     [&](const auto& vc) { return mpz_divisible_p(vc.second.get_mpz_t(), d.get_mpz_t()) != 0; });
}

LinIneq divide(const LinIneq& a, const Integer& d) {
  LinIneq::Coeffs c;
  for (const auto& [v, x] : a.coeffs()) c.emplace_back(v, x / d);
  Integer b;
  mpz_cdiv_q(b.get_mpz_t(), a.bound().get_mpz_t(), d.get_mpz_t());
  return LinIneq(std::move(c), b);
}

bool trivially_true(const LinIneq& a) {
  Integer lo = 0;
  for (const auto& [v, c] : a.coeffs())
    if (sgn(c) < 0) lo += c;
  return lo >= a.bound();
}

}  // namespace

LinIneq apply_rule(CpRule rule, const std::vector<LinIneq>& premises, const Integer& factor) {
  auto need = [&](std::size_t k) {
    if (premises.size() != k)
      throw RuleError(std::string(to_string(rule)) + " takes " + std::to_string(k) + " premise(s)");
  };
  switch (rule) {
    case CpRule::Add:
      need(2);
      return add(premises[0], premises[1]);
    case CpRule::Weaken:
      need(2);
      if (!trivially_true(premises[1]))
        throw RuleError("weakening needs an inequality that holds under every assignment");
      return add(premises[0], premises[1]);
    case CpRule::Multiply:
      need(1);
      if (sgn(factor) <= 0) throw RuleError("multiplier must be a positive integer");
      return scale(premises[0], factor);
    case CpRule::Divide:
      need(1);
      if (sgn(factor) <= 0) throw RuleError("divisor must be a positive integer");
      if (!divisible(premises[0], factor))
        throw RuleError(pacsem::to_string(factor) + " does not divide every coefficient of " +
                        premises[0].to_string());
      return divide(premises[0], factor);
    case CpRule::Axiom:
    case CpRule::Hypothesis:
      break;
  }
  throw RuleError(std::string(to_string(rule)) + " is not an inference rule");
}

// --- decision -----------------------------------------------------------------

namespace {

struct CpEntry {
  LinIneq f;
  CpStep how;
};

class CpSaturation {
 public:
  CpSaturation(std::size_t w, Integer L) : w_(w), L_(std::move(L)) {}

  std::vector<CpEntry> entries;
  std::map<LinIneq, std::size_t> table;  // bounded entries
  std::vector<std::size_t> extra;        // hypotheses outside the bounds
  std::vector<std::size_t> delta;

  bool fits(const LinIneq& f) const { return f.sparsity() <= w_ && f.l1_norm() <= L_; }

  std::size_t push(const LinIneq& f, CpStep how) {
    how.result = f;
    entries.push_back({f, std::move(how)});
    return entries.size() - 1;
  }

  // Returns true when f is new to the table.
  bool offer(const LinIneq& f, CpStep how) {
    if (!fits(f) || table.contains(f)) return false;
    const std::size_t id = push(f, std::move(how));
    table.emplace(f, id);
    delta.push_back(id);
    return true;
  }

  bool round(const LinIneq& target) {
    std::vector<std::size_t> current = std::move(delta);
    delta.clear();
    std::vector<bool> fresh(entries.size(), false);
    for (auto id : current) fresh[id] = true;

    std::vector<std::size_t> pool;
    for (const auto& [f, id] : table) pool.push_back(id);
    pool.insert(pool.end(), extra.begin(), extra.end());
    std::sort(pool.begin(), pool.end());

    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i; j < pool.size(); ++j) {
        const std::size_t a = pool[i], b = pool[j];
        if (!fresh[a] && !fresh[b]) continue;
        CpStep s;
        s.rule = CpRule::Add;
        s.premises = {a, b};
        offer(add(entries[a].f, entries[b].f), std::move(s));
        if (table.contains(target)) return true;
      }
    }
    for (std::size_t a : current) {
      if (!table.contains(entries[a].f) && !fits(entries[a].f)) continue;
      for (Integer d = 2; d <= L_; ++d) {
        const LinIneq f = entries[a].f;
        CpStep m;
        m.rule = CpRule::Multiply;
        m.premises = {a};
        m.factor = d;
        offer(scale(f, d), std::move(m));
        if (divisible(f, d)) {
          CpStep v;
          v.rule = CpRule::Divide;
          v.premises = {a};
          v.factor = d;
          offer(divide(f, d), std::move(v));
        }
        if (table.contains(target)) return true;
      }
    }
    return !delta.empty();
  }

 private:
  std::size_t w_;
  Integer L_;
};

}  // namespace

CpResult decide_cp(const std::vector<LinIneq>& hyps, const LinIneq& target, std::size_t w,
                   const Integer& L) {
  if (sgn(L) < 0) throw InputError("L must be nonnegative");
  if (target.sparsity() > w) throw InputError("target " + target.to_string() + " is not w-sparse");
  if (target.l1_norm() > L) throw InputError("target " + target.to_string() + " exceeds the l1 bound");

  CpSaturation sat(w, L);
  std::set<VarId> vars;
  for (const auto& h : hyps)
    for (const auto& [v, c] : h.coeffs()) vars.insert(v);
  for (const auto& [v, c] : target.coeffs()) vars.insert(v);

  std::vector<LinIneq> axioms{LinIneq::one_axiom()};
  for (VarId v : vars) {
    axioms.push_back(LinIneq::nonneg_axiom(v));
    axioms.push_back(LinIneq::upper_axiom(v));
  }
  for (const auto& a : axioms) sat.offer(a, CpStep{CpRule::Axiom, {}, 0, 0, {}});
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    CpStep s{CpRule::Hypothesis, {}, 0, i, {}};
    if (hyps[i].sparsity() <= w) {
      // Sparse hypotheses join the table whatever their norm.
      if (sat.table.contains(hyps[i])) continue;
      const std::size_t id = sat.push(hyps[i], std::move(s));
      sat.table.emplace(hyps[i], id);
      sat.delta.push_back(id);
    } else {
      const std::size_t id = sat.push(hyps[i], std::move(s));
      sat.extra.push_back(id);
      sat.delta.push_back(id);
    }
  }

  CpResult result;
  bool found = sat.table.contains(target);
  while (!found) {
    ++result.stats.rounds;
    const bool grew = sat.round(target);
    found = sat.table.contains(target);
    if (!grew) break;
  }
  result.stats.table_size = sat.table.size();
  if (!found) return result;

  // Collect the entries the target depends on, in creation order.
  const std::size_t root = sat.table.at(target);
  std::vector<bool> needed(sat.entries.size(), false);
  needed[root] = true;
  for (std::size_t i = root + 1; i-- > 0;)
    if (needed[i])
      for (auto p : sat.entries[i].how.premises) needed[p] = true;
  std::vector<std::size_t> remap(sat.entries.size(), 0);
  CpTrace trace;
  for (std::size_t i = 0; i <= root; ++i) {
    if (!needed[i]) continue;
    CpStep s = sat.entries[i].how;
    for (auto& p : s.premises) p = remap[p];
    remap[i] = trace.steps.size();
    trace.steps.push_back(std::move(s));
  }
  result.accepted = true;
  result.trace = std::move(trace);
  return result;
}

bool check_cp_trace(const CpTrace& trace, const std::vector<LinIneq>& hyps, const LinIneq& target,
                    std::size_t w, const Integer& L) {
  if (trace.steps.empty()) return false;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const CpStep& s = trace.steps[i];
    for (auto p : s.premises)
      if (p >= i) return false;
    if (s.rule == CpRule::Hypothesis) {
      if (s.hyp_index >= hyps.size() || hyps[s.hyp_index] != s.result || !s.premises.empty())
        return false;
      continue;
    }
    if (s.rule == CpRule::Axiom) {
      const LinIneq& f = s.result;
      bool ok = f == LinIneq::one_axiom();
      if (f.sparsity() == 1) {
        const VarId v = f.coeffs().front().first;
        ok = f == LinIneq::nonneg_axiom(v) || f == LinIneq::upper_axiom(v);
      }
      if (!ok || !s.premises.empty()) return false;
    } else {
      std::vector<LinIneq> premises;
      for (auto p : s.premises) premises.push_back(trace.steps[p].result);
      try {
        if (apply_rule(s.rule, premises, s.factor) != s.result) return false;
      } catch (const RuleError&) {
        return false;
      }
    }
    if (s.result.sparsity() > w || s.result.l1_norm() > L) return false;
  }
  return trace.steps.back().result == target;
}

std::string format_cp_trace(const CpTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const CpStep& s = trace.steps[i];
    out += std::to_string(i + 1) + ": " + to_string(s.rule);
    if (s.rule == CpRule::Hypothesis) out += " #" + std::to_string(s.hyp_index + 1);
    for (auto p : s.premises) out += " " + std::to_string(p + 1);
    if (s.rule == CpRule::Multiply || s.rule == CpRule::Divide) out += " by " + to_string(s.factor);
    out += " => " + s.result.to_string() + "\n";
  }
  return out;
}

}  // namespace pacsem
