#include "pacsem/resk.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "pacsem/errors.hpp"

namespace pacsem {

// --- Term / KDnf ------------------------------------------------------------

Term::Term(std::vector<Literal> lits) : lits_(std::move(lits)) {
  if (lits_.empty()) throw InputError("a conjunction needs at least one literal");
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var == lits_[i - 1].var)
      throw InputError("conjunction contains a complementary pair");
}

bool Term::contains(Literal l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

std::uint32_t Term::max_var() const { return lits_.empty() ? 0 : lits_.back().var.index; }

std::string Term::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) s += "&";
    if (!lits_[i].positive) s += "-";
    s += "x" + std::to_string(lits_[i].var.index);
  }
  return s;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.lits_.begin(), a.lits_.end(), b.lits_.begin(),
                                                b.lits_.end());
}

KDnf::KDnf(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
}

KDnf KDnf::top() {
  KDnf f;
  f.top_ = true;
  return f;
}

KDnf KDnf::from_clause(const Clause& c) {
  if (c.is_tautology()) return top();
  std::vector<Term> terms;
  for (Literal l : c.literals()) terms.push_back(Term::unit(l));
  return KDnf(std::move(terms));
}

std::size_t KDnf::max_term_size() const {
  std::size_t m = 0;
  for (const auto& t : terms_) m = std::max(m, t.size());
  return m;
}

bool KDnf::contains(const Term& t) const {
  return top_ || std::binary_search(terms_.begin(), terms_.end(), t);
}

bool KDnf::is_subset_of(const KDnf& other) const {
  if (other.top_) return true;
  if (top_) return false;
  return std::includes(other.terms_.begin(), other.terms_.end(), terms_.begin(), terms_.end());
}

std::uint32_t KDnf::max_var() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_) m = std::max(m, t.max_var());
  return m;
}

std::string KDnf::to_string() const {
  if (top_) return "true";
  if (terms_.empty()) return "false";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += "|";
    s += terms_[i].to_string();
  }
  return s;
}

KDnf restrict_kdnf(const KDnf& phi, const PartialAssignment& rho) {
  if (phi.is_top()) return phi;
  std::vector<Term> kept;
  for (const Term& t : phi.terms()) {
    std::vector<Literal> rest;
    bool falsified = false;
    for (Literal l : t.literals()) {
      const Cell c = rho[l.var];
      if (l.falsified_by(c)) {
        falsified = true;
        break;
      }
      if (!l.satisfied_by(c)) rest.push_back(l);
    }
    if (falsified) continue;
    if (rest.empty()) return KDnf::top();
    kept.emplace_back(std::move(rest));
  }
  return KDnf(std::move(kept));
}

bool evaluate_kdnf(const KDnf& phi, const Assignment& x) {
  if (phi.is_top()) return true;
  for (const Term& t : phi.terms()) {
    bool all = true;
    for (Literal l : t.literals()) {
      if (l.var.offset() >= x.size()) throw InputError("literal out of range");
      if (x[l.var.offset()] != l.positive) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Formula to_formula(const KDnf& phi) {
  if (phi.is_top()) return Formula::constant(true);
  if (phi.is_bottom()) return Formula::constant(false);
  std::vector<Formula> terms;
  for (const Term& t : phi.terms()) {
    std::vector<Formula> lits;
    for (Literal l : t.literals()) lits.push_back(Formula::literal(l.var, l.positive));
    terms.push_back(lits.size() == 1 ? lits.front() : Formula::conjunction(std::move(lits)));
  }
  return terms.size() == 1 ? terms.front() : Formula::disjunction(std::move(terms));
}

const char* to_string(ReskRule r) {
  switch (r) {
    case ReskRule::Hypothesis: return "hyp";
    case ReskRule::Axiom: return "axiom";
    case ReskRule::Weaken: return "weaken";
    case ReskRule::Cut: return "cut";
    case ReskRule::AndIntro: return "and-intro";
    case ReskRule::AndElim: return "and-elim";
  }
  return "?";
}

// --- saturation -------------------------------------------------------------

namespace {

std::vector<Term> term_difference(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Term> term_union(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Term> negated_units(const Term& t) {
  std::vector<Term> out;
  for (Literal l : t.literals()) out.push_back(Term::unit(~l));
  std::sort(out.begin(), out.end());
  return out;
}

void check_k(const KDnf& f, std::size_t k, const char* what) {
  if (f.max_term_size() > k)
    throw InputError(std::string(what) + " " + f.to_string() + " has a conjunction longer than k=" +
                     std::to_string(k));
}

// How a table entry was obtained. Cut may weaken its second premise first;
// AndIntro weakens every premise to the shared remainder.
struct Entry {
  KDnf formula;
  ReskRule rule = ReskRule::Hypothesis;
  std::vector<std::size_t> premises;
  std::size_t hyp_index = 0;
  Term term;
  std::vector<Literal> literals;
  bool in_table = false;  // false for wide hypotheses and subsumed entries
};

class Saturation {
 public:
  Saturation(std::size_t k, std::size_t w) : k_(k), w_(w) {}

  std::vector<Entry> entries;
  ReskStats stats;

  void add_hypothesis(const KDnf& f, std::size_t index) {
    Entry e;
    e.formula = f;
    e.rule = ReskRule::Hypothesis;
    e.hyp_index = index;
    const bool fits = f.width() <= w_;
    entries.push_back(std::move(e));
    const std::size_t id = entries.size() - 1;
    premise_pool_.push_back(id);
    if (fits)
      insert_table(id);
    else
      delta_.push_back(id);
  }

  // Index of a live entry whose terms are a subset of f, if any.
  std::optional<std::size_t> subsumer(const KDnf& f) const {
    for (std::size_t id : table_)
      if (entries[id].in_table && entries[id].formula.is_subset_of(f)) return id;
    return std::nullopt;
  }

  // One semi-naive round: every rule instance with at least one premise added
  // in the previous round. Returns whether anything new entered the table.
  bool round() {
    ++stats.rounds;
    std::vector<std::size_t> pool;  // live table entries and wide hypotheses
    for (std::size_t id : premise_pool_)
      if (entries[id].in_table || entries[id].formula.width() > w_) pool.push_back(id);
    std::vector<bool> is_delta(entries.size(), false);
    for (std::size_t id : delta_) is_delta[id] = true;
    delta_.clear();

    for (std::size_t a : pool) {
      if (is_delta[a]) and_elim(a);
      for (std::size_t b : pool)
        if (is_delta[a] || is_delta[b]) cut(a, b);
    }
    and_intro(pool, is_delta);
    premise_pool_.erase(std::remove_if(premise_pool_.begin(), premise_pool_.end(),
                                       [&](std::size_t id) {
                                         return !entries[id].in_table &&
                                                entries[id].formula.width() <= w_;
                                       }),
                        premise_pool_.end());
    return !delta_.empty();
  }

 private:
  void insert_table(std::size_t id) {
    entries[id].in_table = true;
    for (std::size_t other : table_)
      if (other != id && entries[other].in_table && entries[id].formula.is_subset_of(entries[other].formula))
        entries[other].in_table = false;
    table_.erase(std::remove_if(table_.begin(), table_.end(),
                                [&](std::size_t x) { return !entries[x].in_table; }),
                 table_.end());
    table_.push_back(id);
    delta_.push_back(id);
    ++stats.derivations;
  }

  void offer(Entry e) {
    if (e.formula.width() > w_ || e.formula.max_term_size() > k_) return;
    if (subsumer(e.formula)) return;
    entries.push_back(std::move(e));
    const std::size_t id = entries.size() - 1;
    premise_pool_.push_back(id);
    insert_table(id);
  }

  void and_elim(std::size_t a) {
    const KDnf g = entries[a].formula;
    if (g.width() > w_) return;
    for (const Term& t : g.terms()) {
      if (t.size() < 2) continue;
      for (Literal l : t.literals()) {
        auto terms = g.terms();
        terms.erase(std::find(terms.begin(), terms.end(), t));
        terms.push_back(Term::unit(l));
        Entry e;
        e.formula = KDnf(std::move(terms));
        e.rule = ReskRule::AndElim;
        e.premises = {a};
        e.term = t;
        e.literals = {l};
        offer(std::move(e));
      }
    }
  }

  void cut(std::size_t a, std::size_t b) {
    const KDnf g1 = entries[a].formula;
    const KDnf g2 = entries[b].formula;
    const bool g2_wide = g2.width() > w_;
    for (const Term& t : g1.terms()) {
      const auto negs = negated_units(t);
      const auto shared = term_difference(negs, term_difference(negs, g2.terms()));
      if (shared.empty()) continue;  // result would be subsumed by g2
      if (g2_wide && shared.size() != negs.size()) continue;
      const auto widened = term_union(g2.terms(), negs);
      if (widened.size() > w_ && !g2_wide) continue;
      auto rest1 = g1.terms();
      rest1.erase(std::find(rest1.begin(), rest1.end(), t));
      Entry e;
      e.formula = KDnf(term_union(rest1, term_difference(g2.terms(), negs)));
      if (e.formula.width() > w_ || subsumer(e.formula)) continue;
      e.rule = ReskRule::Cut;
      e.premises = {a, b};
      e.term = t;
      offer(std::move(e));
    }
  }

  // Premises are table entries with a unit term; the shared remainder A is the
  // union of what is left after removing each unit.
  void and_intro(const std::vector<std::size_t>& pool, const std::vector<bool>& is_delta) {
    if (k_ < 2) return;
    struct Option {
      std::size_t id;
      Literal lit;
    };
    std::vector<Option> options;
    for (std::size_t id : pool) {
      const KDnf& g = entries[id].formula;
      if (g.width() > w_) continue;
      for (const Term& t : g.terms())
        if (t.size() == 1) options.push_back({id, t.literals().front()});
    }
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
      if (chosen.size() >= 2) {
        bool any_delta = false;
        for (std::size_t c : chosen) any_delta = any_delta || is_delta[options[c].id];
        if (any_delta) build_intro(options, chosen);
      }
      if (chosen.size() == k_) return;
      for (std::size_t i = from; i < options.size(); ++i) {
        bool ok = true;
        for (std::size_t c : chosen) {
          if (options[c].id == options[i].id || options[c].lit.var == options[i].lit.var) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        chosen.push_back(i);
        extend(i + 1);
        chosen.pop_back();
      }
    };
    extend(0);
  }

  template <class Options>
  void build_intro(const Options& options, const std::vector<std::size_t>& chosen) {
    std::vector<Term> rest;
    std::vector<Literal> lits;
    for (std::size_t c : chosen) {
      const auto& g = entries[options[c].id].formula.terms();
      rest = term_union(rest, term_difference(g, {Term::unit(options[c].lit)}));
      lits.push_back(options[c].lit);
    }
    for (Literal l : lits)
      if (std::binary_search(rest.begin(), rest.end(), Term::unit(l))) return;
    if (rest.size() + 1 > w_) return;
    Entry e;
    rest.push_back(Term(lits));
    e.formula = KDnf(std::move(rest));
    e.rule = ReskRule::AndIntro;
    for (std::size_t c : chosen) e.premises.push_back(options[c].id);
    e.literals = std::move(lits);
    offer(std::move(e));
  }

  std::size_t k_, w_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> delta_;
  std::vector<std::size_t> premise_pool_;
};

class TraceBuilder {
 public:
  explicit TraceBuilder(const std::vector<Entry>& entries) : entries_(entries) {}

  std::size_t emit(std::size_t id) {
    if (auto it = done_.find(id); it != done_.end()) return it->second;
    const Entry& e = entries_[id];
    ReskStep step;
    step.rule = e.rule;
    step.formula = e.formula;
    step.hyp_index = e.hyp_index;
    step.term = e.term;
    step.literals = e.literals;
    switch (e.rule) {
      case ReskRule::Hypothesis:
      case ReskRule::Axiom:
        break;
      case ReskRule::Weaken:
      case ReskRule::AndElim:
        step.premises = {emit(e.premises[0])};
        break;
      case ReskRule::Cut: {
        const std::size_t p1 = emit(e.premises[0]);
        const KDnf& g2 = entries_[e.premises[1]].formula;
        const KDnf widened(term_union(g2.terms(), negated_units(e.term)));
        step.premises = {p1, weaken_to(emit(e.premises[1]), widened)};
        break;
      }
      case ReskRule::AndIntro: {
        // Shared remainder: the conclusion without the new conjunction.
        const Term conj(e.literals);
        auto rest = e.formula.terms();
        rest.erase(std::find(rest.begin(), rest.end(), conj));
        for (std::size_t i = 0; i < e.premises.size(); ++i) {
          const KDnf target(term_union(rest, {Term::unit(e.literals[i])}));
          step.premises.push_back(weaken_to(emit(e.premises[i]), target));
        }
        break;
      }
    }
    trace.steps.push_back(std::move(step));
    done_[id] = trace.steps.size() - 1;
    return trace.steps.size() - 1;
  }

  std::size_t weaken_to(std::size_t step, const KDnf& f) {
    if (trace.steps[step].formula == f) return step;
    ReskStep w;
    w.rule = ReskRule::Weaken;
    w.formula = f;
    w.premises = {step};
    trace.steps.push_back(std::move(w));
    return trace.steps.size() - 1;
  }

  ReskTrace trace;

 private:
  const std::vector<Entry>& entries_;
  std::map<std::size_t, std::size_t> done_;
};

}  // namespace

ReskResult decide_resk_width(const std::vector<KDnf>& hyps, const KDnf& target, std::size_t k,
                             std::size_t w) {
  if (k == 0) throw InputError("k must be at least 1");
  if (!target.is_top() && target.width() > w)
    throw InputError("target " + target.to_string() + " is wider than w=" + std::to_string(w));
  check_k(target, k, "target");
  for (const auto& h : hyps) check_k(h, k, "hypothesis");

  ReskResult result;
  if (target.is_top()) {
    ReskStep axiom;
    axiom.rule = ReskRule::Axiom;
    axiom.formula = KDnf::top();
    result.accepted = true;
    result.trace = ReskTrace{{axiom}};
    return result;
  }

  Saturation sat(k, w);
  for (std::size_t i = 0; i < hyps.size(); ++i)
    if (!hyps[i].is_top()) sat.add_hypothesis(hyps[i], i);

  std::optional<std::size_t> hit = sat.subsumer(target);
  while (!hit && sat.round()) hit = sat.subsumer(target);

  result.stats = sat.stats;
  for (const auto& e : sat.entries) result.stats.table_size += e.in_table ? 1 : 0;
  if (!hit) return result;

  TraceBuilder builder(sat.entries);
  builder.weaken_to(builder.emit(*hit), target);
  result.accepted = true;
  result.trace = std::move(builder.trace);
  return result;
}

// --- replay -----------------------------------------------------------------

bool check_resk_trace(const ReskTrace& trace, const std::vector<KDnf>& hyps, const KDnf& target,
                      std::size_t k, std::size_t w) {
  if (trace.steps.empty()) return false;
  const auto& steps = trace.steps;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ReskStep& s = steps[i];
    for (std::size_t p : s.premises)
      if (p >= i) return false;
    const KDnf& f = s.formula;
    if (s.rule == ReskRule::Hypothesis) {
      if (s.hyp_index >= hyps.size() || hyps[s.hyp_index] != f || !s.premises.empty()) return false;
      continue;
    }
    if (s.rule == ReskRule::Axiom) {
      if (!f.is_top() || !s.premises.empty()) return false;
      continue;
    }
    if (f.is_top() || f.width() > w || f.max_term_size() > k) return false;
    switch (s.rule) {
      case ReskRule::Weaken: {
        if (s.premises.size() != 1) return false;
        if (!steps[s.premises[0]].formula.is_subset_of(f)) return false;
        break;
      }
      case ReskRule::AndElim: {
        if (s.premises.size() != 1 || s.literals.size() != 1) return false;
        const KDnf& p = steps[s.premises[0]].formula;
        if (p.is_top() || !p.contains(s.term) || !s.term.contains(s.literals[0])) return false;
        std::set<Term> expect(p.terms().begin(), p.terms().end());
        expect.erase(s.term);
        expect.insert(Term({s.literals[0]}));
        if (!std::equal(expect.begin(), expect.end(), f.terms().begin(), f.terms().end()))
          return false;
        break;
      }
      case ReskRule::Cut: {
        if (s.premises.size() != 2 || s.term.size() == 0 || s.term.size() > k) return false;
        const KDnf& p1 = steps[s.premises[0]].formula;
        const KDnf& p2 = steps[s.premises[1]].formula;
        if (p1.is_top() || p2.is_top() || !p1.contains(s.term)) return false;
        std::set<Term> expect;
        for (const Term& t : p1.terms())
          if (t != s.term) expect.insert(t);
        std::set<Term> negs;
        for (Literal l : s.term.literals()) negs.insert(Term({~l}));
        for (const Term& n : negs)
          if (!p2.contains(n)) return false;
        for (const Term& t : p2.terms())
          if (!negs.contains(t)) expect.insert(t);
        if (!std::equal(expect.begin(), expect.end(), f.terms().begin(), f.terms().end()))
          return false;
        break;
      }
      case ReskRule::AndIntro: {
        const std::size_t j = s.premises.size();
        if (j < 1 || j > k || s.literals.size() != j) return false;
        std::set<Literal> lits(s.literals.begin(), s.literals.end());
        if (lits.size() != j) return false;
        for (Literal l : lits)
          if (lits.contains(~l)) return false;
        // Every premise is l_i v A for one common A not containing l_i.
        std::optional<std::set<Term>> common;
        for (std::size_t i = 0; i < j; ++i) {
          const KDnf& p = steps[s.premises[i]].formula;
          const Term unit({s.literals[i]});
          if (p.is_top() || !p.contains(unit)) return false;
          std::set<Term> rest(p.terms().begin(), p.terms().end());
          rest.erase(unit);
          if (common && *common != rest) return false;
          common = std::move(rest);
        }
        for (Literal l : lits)
          if (common->contains(Term({l}))) return false;
        std::set<Term> expect = *common;
        expect.insert(Term(s.literals));
        if (!std::equal(expect.begin(), expect.end(), f.terms().begin(), f.terms().end()))
          return false;
        break;
      }
      default:
        return false;
    }
  }
  return steps.back().formula == target;
}

std::string format_resk_trace(const ReskTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const ReskStep& s = trace.steps[i];
    out += std::to_string(i + 1) + ": " + to_string(s.rule);
    if (s.rule == ReskRule::Hypothesis) out += " #" + std::to_string(s.hyp_index + 1);
    for (std::size_t p : s.premises) out += " " + std::to_string(p + 1);
    if (s.rule == ReskRule::Cut || s.rule == ReskRule::AndElim) out += " on " + s.term.to_string();
    out += " => " + s.formula.to_string() + "\n";
  }
  return out;
}

std::vector<KDnf> negate_query(const std::vector<Cnf>& query, std::size_t k) {
  if (query.empty()) return {KDnf::top()};
  std::vector<KDnf> out;
  for (const Cnf& cnf : query) {
    std::vector<Term> terms;
    bool always_true = false;
    for (const Clause& c : cnf.clauses()) {
      if (c.is_tautology()) continue;  // its negation is unsatisfiable
      if (c.width() > k)
        throw InputError("query clause " + c.to_string() + " has more than k=" + std::to_string(k) +
                         " literals");
      if (c.is_empty()) {
        always_true = true;
        break;
      }
      std::vector<Literal> negs;
      for (Literal l : c.literals()) negs.push_back(~l);
      terms.emplace_back(std::move(negs));
    }
    out.push_back(always_true ? KDnf::top() : KDnf(std::move(terms)));
  }
  return out;
}

}  // namespace pacsem
