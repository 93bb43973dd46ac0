#pragma once

// DecisionBackend adapters for each proof system. Every adapter owns its
// query and hypotheses and restricts both by the example before deciding.

#include <vector>

#include "pacsem/clause.hpp"
#include "pacsem/cutting_planes.hpp"
#include "pacsem/decide_pac.hpp"
#include "pacsem/polycalc.hpp"
#include "pacsem/resk.hpp"
#include "pacsem/resolution.hpp"

namespace pacsem {

// Treelike resolution in clause space s. A query clause satisfied by rho is
// accepted without search.
class SpaceResolutionBackend final : public DecisionBackend {
 public:
  SpaceResolutionBackend(Cnf kb, Clause query, std::size_t s);
  std::size_t num_vars() const override { return kb_.num_vars(); }
  Verdict decide(const PartialAssignment& rho) const override;
  std::string name() const override { return "res-space"; }

 private:
  Cnf kb_;
  Clause query_;
  std::size_t s_;
};

// Width-w RES(k) refutation of KB together with the negated query.
class ReskWidthBackend final : public DecisionBackend {
 public:
  // query is the k-CNF whose negation joins the hypotheses.
  ReskWidthBackend(std::size_t n, std::vector<KDnf> kb, const Cnf& query, std::size_t k,
                   std::size_t w);
  std::size_t num_vars() const override { return n_; }
  Verdict decide(const PartialAssignment& rho) const override;
  std::string name() const override { return "res-k-width"; }

 private:
  std::size_t n_;
  std::vector<KDnf> hyps_;
  std::size_t k_, w_;
};

// Degree-d polynomial calculus, or PCR.
class PolyCalcBackend final : public DecisionBackend {
 public:
  PolyCalcBackend(std::size_t n, std::vector<Polynomial> kb, Polynomial query, std::size_t d,
                  PcMode mode);
  std::size_t num_vars() const override { return n_; }
  Verdict decide(const PartialAssignment& rho) const override;
  std::string name() const override { return to_string(mode_); }

 private:
  std::size_t n_;
  std::vector<Polynomial> kb_;
  Polynomial query_;
  std::size_t d_;
  PcMode mode_;
};

// w-sparse L-bounded cutting planes. A query witnessed true is accepted and
// hypotheses witnessed true are dropped.
class CuttingPlanesBackend final : public DecisionBackend {
 public:
  CuttingPlanesBackend(std::size_t n, std::vector<LinIneq> kb, LinIneq query, std::size_t w,
                       Integer L);
  std::size_t num_vars() const override { return n_; }
  Verdict decide(const PartialAssignment& rho) const override;
  std::string name() const override { return "cp"; }

 private:
  std::size_t n_;
  std::vector<LinIneq> kb_;
  LinIneq query_;
  std::size_t w_;
  Integer L_;
};

// Exhaustive entailment between the restricted formulas. Ground truth for
// small n only.
class EntailmentBackend final : public DecisionBackend {
 public:
  EntailmentBackend(std::size_t n, std::vector<Formula> kb, Formula query);
  std::size_t num_vars() const override { return n_; }
  Verdict decide(const PartialAssignment& rho) const override;
  std::string name() const override { return "entailment"; }

 private:
  std::size_t n_;
  std::vector<Formula> kb_;
  Formula query_;
};

}  // namespace pacsem
