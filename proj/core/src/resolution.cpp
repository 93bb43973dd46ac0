#include "pacsem/resolution.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "pacsem/errors.hpp"

namespace pacsem {

namespace {

// Resolvent of left (containing +pivot) and right (containing -pivot).
std::optional<Clause> resolvent(const Clause& left, const Clause& right, VarId pivot) {
  const Literal pos{pivot, true};
  if (left.is_tautology() || right.is_tautology()) return std::nullopt;
  if (!left.contains(pos) || !right.contains(~pos)) return std::nullopt;
  return left.without(pos).merged(right.without(~pos));
}

// Appends `sub` to `out`, shifting premise indices; returns the new root index.
std::size_t append(std::vector<ProofStep>& out, const TreelikeProof& sub) {
  const std::size_t offset = out.size();
  for (ProofStep step : sub.steps) {
    if (step.rule == ProofRule::Weaken || step.rule == ProofRule::Cut) {
      step.left += offset;
      step.right += offset;
    }
    out.push_back(std::move(step));
  }
  return out.size() - 1;
}

}  // namespace

bool check_proof(const TreelikeProof& proof, const Cnf& phi, const Clause& target) {
  if (proof.steps.empty()) return false;
  std::vector<int> uses(proof.steps.size(), 0);
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const ProofStep& step = proof.steps[i];
    switch (step.rule) {
      case ProofRule::Hypothesis:
        if (!phi.contains(step.clause)) return false;
        break;
      case ProofRule::Axiom:
        if (!step.clause.is_tautology()) return false;
        break;
      case ProofRule::Weaken: {
        if (step.left >= i) return false;
        ++uses[step.left];
        if (!step.clause.is_superset_of(proof.steps[step.left].clause)) return false;
        break;
      }
      case ProofRule::Cut: {
        if (step.left >= i || step.right >= i || step.left == step.right) return false;
        ++uses[step.left];
        ++uses[step.right];
        auto r = resolvent(proof.steps[step.left].clause, proof.steps[step.right].clause,
                           step.pivot);
        if (!r || *r != step.clause) return false;
        break;
      }
    }
  }
  for (std::size_t i = 0; i + 1 < uses.size(); ++i)
    if (uses[i] != 1) return false;
  if (uses.back() != 0) return false;
  return proof.conclusion() == target;
}

std::size_t clause_space(const TreelikeProof& proof) {
  if (proof.steps.empty()) return 0;
  std::vector<std::size_t> space(proof.steps.size(), 1);
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const ProofStep& step = proof.steps[i];
    if (step.rule == ProofRule::Weaken) {
      space[i] = space.at(step.left);
    } else if (step.rule == ProofRule::Cut) {
      const std::size_t a = space.at(step.left);
      const std::size_t b = space.at(step.right);
      space[i] = a == b ? a + 1 : std::max(a, b);
    }
  }
  return space.back();
}

std::size_t space_bound_for_size(std::size_t proof_length) {
  if (proof_length == 0) throw InputError("proof length must be at least 1");
  std::size_t log2 = 0;
  while ((proof_length >> (log2 + 1)) != 0) ++log2;
  return log2 + 1;
}

// --- search -----------------------------------------------------------------

namespace {

class SpaceSearch {
 public:
  SpaceSearch(const Cnf& phi, std::size_t n, SearchStats* stats)
      : phi_(phi), n_(n), stats_(stats) {}

  std::optional<TreelikeProof> run(std::size_t s, const Clause& c) {
    if (stats_) ++stats_->calls;
    for (const Clause& input : phi_.clauses()) {
      if (input.is_tautology() || !c.is_superset_of(input)) continue;
      TreelikeProof proof;
      proof.steps.push_back({ProofRule::Hypothesis, input, 0, 0, VarId{}});
      if (input != c) proof.steps.push_back({ProofRule::Weaken, c, 0, 0, VarId{}});
      return proof;
    }
    if (s <= 1) return std::nullopt;
    for (std::uint32_t v = 1; v <= n_; ++v) {
      const VarId var(v);
      if (c.mentions(var)) continue;
      for (bool positive : {true, false}) {
        const Literal lit{var, positive};
        auto first = run(s - 1, c.with(lit));
        if (!first) continue;
        auto second = run(s, c.with(~lit));
        if (!second) return std::nullopt;
        TreelikeProof proof;
        const auto& pos_branch = positive ? *first : *second;
        const auto& neg_branch = positive ? *second : *first;
        const std::size_t left = append(proof.steps, pos_branch);
        const std::size_t right = append(proof.steps, neg_branch);
        proof.steps.push_back({ProofRule::Cut, c, left, right, var});
        return proof;
      }
    }
    return std::nullopt;
  }

 private:
  const Cnf& phi_;
  std::size_t n_;
  SearchStats* stats_;
};

}  // namespace

std::optional<TreelikeProof> search_space(const Cnf& phi, std::size_t s, const Clause& target,
                                          SearchStats* stats) {
  if (s == 0) throw InputError("space bound must be at least 1");
  if (target.is_tautology()) {
    TreelikeProof proof;
    proof.steps.push_back({ProofRule::Axiom, Clause::tautology(), 0, 0, VarId{}});
    return proof;
  }
  const std::size_t n = std::max<std::size_t>(phi.num_vars(), target.max_var());
  return SpaceSearch(phi, n, stats).run(s, target);
}

// --- restriction --------------------------------------------------------------

TreelikeProof restrict_proof(const TreelikeProof& proof, const PartialAssignment& rho) {
  if (proof.steps.empty()) throw InputError("cannot restrict an empty proof");
  TreelikeProof out;
  std::function<std::size_t(std::size_t)> rebuild = [&](std::size_t i) -> std::size_t {
    const ProofStep& step = proof.steps.at(i);
    const Clause restricted = restrict_clause(step.clause, rho);
    if (restricted.is_tautology()) {
      out.steps.push_back({ProofRule::Axiom, Clause::tautology(), 0, 0, VarId{}});
      return out.steps.size() - 1;
    }
    switch (step.rule) {
      case ProofRule::Hypothesis:
        out.steps.push_back({ProofRule::Hypothesis, restricted, 0, 0, VarId{}});
        break;
      case ProofRule::Axiom:
        throw InputError("axiom step does not carry the tautology clause");
      case ProofRule::Weaken: {
        if (step.left >= i) throw InputError("premise index out of order");
        const std::size_t child = rebuild(step.left);
        out.steps.push_back({ProofRule::Weaken, restricted, child, 0, VarId{}});
        break;
      }
      case ProofRule::Cut: {
        if (step.left >= i || step.right >= i) throw InputError("premise index out of order");
        const Cell pivot = rho[step.pivot];
        if (pivot == Cell::Star) {
          const std::size_t l = rebuild(step.left);
          const std::size_t r = rebuild(step.right);
          out.steps.push_back({ProofRule::Cut, restricted, l, r, step.pivot});
        } else {
          // x = 1 falsifies the -x branch, x = 0 the +x branch.
          const std::size_t kept = pivot == Cell::One ? step.right : step.left;
          const std::size_t child = rebuild(kept);
          out.steps.push_back({ProofRule::Weaken, restricted, child, 0, VarId{}});
        }
        break;
      }
    }
    return out.steps.size() - 1;
  };
  rebuild(proof.steps.size() - 1);
  return out;
}

// --- text form ------------------------------------------------------------------

namespace {

void write_clause(std::string& s, const Clause& c) {
  if (c.is_tautology()) {
    s += " T";
    return;
  }
  for (Literal l : c.literals()) s += " " + std::to_string(l.to_dimacs());
}

void write_step(std::string& s, const TreelikeProof& proof, std::size_t i) {
  const ProofStep& step = proof.steps[i];
  switch (step.rule) {
    case ProofRule::Hypothesis:
      s += "(hyp";
      write_clause(s, step.clause);
      s += ")";
      break;
    case ProofRule::Axiom:
      s += "(axiom)";
      break;
    case ProofRule::Weaken:
      s += "(weaken";
      write_clause(s, step.clause);
      s += " ";
      write_step(s, proof, step.left);
      s += ")";
      break;
    case ProofRule::Cut:
      s += "(cut " + std::to_string(step.pivot.index) + " ";
      write_step(s, proof, step.left);
      s += " ";
      write_step(s, proof, step.right);
      s += ")";
      break;
  }
}

class ProofParser {
 public:
  explicit ProofParser(std::string_view text) : text_(text) {}

  TreelikeProof parse() {
    TreelikeProof proof;
    node(proof);
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return proof;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw InputError("proof trace, offset " + std::to_string(pos_) + ": " + what);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected a token");
    return std::string(text_.substr(start, pos_ - start));
  }
  int integer() {
    std::string w = word();
    try {
      std::size_t used = 0;
      int v = std::stoi(w, &used);
      if (used != w.size()) fail("bad integer '" + w + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad integer '" + w + "'");
    }
  }
  Clause clause() {
    if (!peek('(') && !peek(')')) {
      std::size_t save = pos_;
      if (word() == "T") return Clause::tautology();
      pos_ = save;
    }
    std::vector<int> codes;
    while (!peek('(') && !peek(')')) {
      int code = integer();
      if (code == 0) fail("literal 0");
      codes.push_back(code);
    }
    return Clause::from_dimacs(codes);
  }

  std::size_t node(TreelikeProof& proof) {
    expect('(');
    const std::string kind = word();
    ProofStep step;
    if (kind == "hyp") {
      step.rule = ProofRule::Hypothesis;
      step.clause = clause();
    } else if (kind == "axiom") {
      step.rule = ProofRule::Axiom;
      step.clause = Clause::tautology();
    } else if (kind == "weaken") {
      step.rule = ProofRule::Weaken;
      step.clause = clause();
      step.left = node(proof);
    } else if (kind == "cut") {
      step.rule = ProofRule::Cut;
      int pivot = integer();
      if (pivot <= 0) fail("cut pivot must be a positive variable index");
      step.pivot = VarId(static_cast<std::uint32_t>(pivot));
      step.left = node(proof);
      step.right = node(proof);
      auto r = resolvent(proof.steps[step.left].clause, proof.steps[step.right].clause, step.pivot);
      // Keep malformed cuts parseable; check_proof rejects them.
      step.clause = r ? *r : Clause::tautology();
    } else {
      fail("unknown rule '" + kind + "'");
    }
    expect(')');
    proof.steps.push_back(std::move(step));
    return proof.steps.size() - 1;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_proof(const TreelikeProof& proof) {
  std::string s;
  if (!proof.steps.empty()) write_step(s, proof, proof.steps.size() - 1);
  return s;
}

TreelikeProof parse_proof(std::string_view text) { return ProofParser(text).parse(); }

}  // namespace pacsem
