#include "pacsem/backends.hpp"

#include "pacsem/errors.hpp"
#include "pacsem/oracle.hpp"

namespace pacsem {

namespace {

Verdict verdict(bool accepted) { return accepted ? Verdict::Accept : Verdict::Reject; }

void check_width(std::uint32_t max_var, std::size_t n, const std::string& what) {
  if (max_var > n)
    throw InputError(what + " mentions x" + std::to_string(max_var) + " but n=" + std::to_string(n));
}

}  // namespace

SpaceResolutionBackend::SpaceResolutionBackend(Cnf kb, Clause query, std::size_t s)
    : kb_(std::move(kb)), query_(std::move(query)), s_(s) {
  if (s_ == 0) throw InputError("space bound s must be at least 1");
  check_width(query_.max_var(), kb_.num_vars(), "query");
}

Verdict SpaceResolutionBackend::decide(const PartialAssignment& rho) const {
  const Clause target = restrict_clause(query_, rho);
  if (target.is_tautology()) return Verdict::Accept;
  return verdict(search_space(restrict_cnf(kb_, rho), s_, target).has_value());
}

ReskWidthBackend::ReskWidthBackend(std::size_t n, std::vector<KDnf> kb, const Cnf& query,
                                   std::size_t k, std::size_t w)
    : n_(n), hyps_(std::move(kb)), k_(k), w_(w) {
  if (k_ == 0) throw InputError("k must be at least 1");
  for (auto& f : negate_query({query}, k_)) hyps_.push_back(std::move(f));
  for (const auto& h : hyps_) {
    check_width(h.max_var(), n_, "hypothesis");
    if (h.max_term_size() > k_) throw InputError("hypothesis " + h.to_string() + " is not a k-DNF");
  }
}

Verdict ReskWidthBackend::decide(const PartialAssignment& rho) const {
  std::vector<KDnf> restricted;
  for (const auto& h : hyps_) {
    KDnf r = restrict_kdnf(h, rho);
    if (!r.is_top()) restricted.push_back(std::move(r));
  }
  return verdict(decide_resk_width(restricted, KDnf::bottom(), k_, w_).accepted);
}

PolyCalcBackend::PolyCalcBackend(std::size_t n, std::vector<Polynomial> kb, Polynomial query,
                                 std::size_t d, PcMode mode)
    : n_(n), kb_(std::move(kb)), query_(std::move(query)), d_(d), mode_(mode) {
  for (const auto& p : kb_) check_width(p.max_var(), n_, "hypothesis");
  check_width(query_.max_var(), n_, "query");
  // Surface degree and mode errors at construction rather than per example.
  for (const auto& p : kb_)
    if (p.degree() > d_ || (mode_ == PcMode::PC && p.has_dual()))
      throw InputError("hypothesis " + p.to_string() + " does not fit degree " + std::to_string(d_) +
                       " " + to_string(mode_));
  if (query_.degree() > d_ || (mode_ == PcMode::PC && query_.has_dual()))
    throw InputError("query " + query_.to_string() + " does not fit degree " + std::to_string(d_) +
                     " " + to_string(mode_));
}

Verdict PolyCalcBackend::decide(const PartialAssignment& rho) const {
  std::vector<Polynomial> restricted;
  for (const auto& p : kb_) {
    Polynomial r = restrict_polynomial(p, rho);
    if (!r.is_zero()) restricted.push_back(std::move(r));
  }
  return verdict(decide_pc(restricted, restrict_polynomial(query_, rho), d_, mode_).accepted);
}

CuttingPlanesBackend::CuttingPlanesBackend(std::size_t n, std::vector<LinIneq> kb, LinIneq query,
                                           std::size_t w, Integer L)
    : n_(n), kb_(std::move(kb)), query_(std::move(query)), w_(w), L_(std::move(L)) {
  for (const auto& f : kb_) check_width(f.max_var(), n_, "hypothesis");
  check_width(query_.max_var(), n_, "query");
  if (query_.sparsity() > w_ || query_.l1_norm() > L_)
    throw InputError("query " + query_.to_string() + " is not w-sparse and L-bounded");
}

Verdict CuttingPlanesBackend::decide(const PartialAssignment& rho) const {
  const auto target = restrict_ineq(query_, rho);
  if (!target) return Verdict::Accept;
  std::vector<LinIneq> restricted;
  for (const auto& f : kb_)
    if (auto r = restrict_ineq(f, rho)) restricted.push_back(std::move(*r));
  return verdict(decide_cp(restricted, *target, w_, L_).accepted);
}

EntailmentBackend::EntailmentBackend(std::size_t n, std::vector<Formula> kb, Formula query)
    : n_(n), kb_(std::move(kb)), query_(std::move(query)) {
  if (n_ > oracle::kDefaultEnumerationCap) throw InputError("too many variables for the entailment oracle");
  for (const auto& f : kb_) check_in_range(f, n_);
  check_in_range(query_, n_);
}

Verdict EntailmentBackend::decide(const PartialAssignment& rho) const {
  std::vector<Formula> restricted;
  for (const auto& f : kb_) restricted.push_back(restrict(f, rho));
  return verdict(oracle::entails(restricted, restrict(query_, rho), n_));
}

}  // namespace pacsem
