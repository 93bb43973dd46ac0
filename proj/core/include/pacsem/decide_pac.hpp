#pragma once

// The DecidePAC reduction: run a limited-decision backend on every masked
// example and accept iff the number of rejections stays within floor(eps*m).

#include <cstddef>
#include <string>
#include <vector>

#include "pacsem/formula.hpp"
#include "pacsem/rational.hpp"

namespace pacsem {

enum class Verdict { Accept, Reject };
const char* to_string(Verdict v);

struct PacParams {
  Rational epsilon;
  Rational gamma;
  Rational delta;

  // Throws InputError unless 0 < eps, gamma, delta < 1, eps + gamma <= 1 and
  // eps - gamma >= 0.
  void validate() const;
};

// A limited-decision procedure bound to a query and hypotheses. decide()
// restricts both by rho and answers for the restricted instance. It must be
// deterministic and safe to call concurrently.
class DecisionBackend {
 public:
  virtual ~DecisionBackend() = default;
  virtual std::size_t num_vars() const = 0;
  virtual Verdict decide(const PartialAssignment& rho) const = 0;
  virtual std::string name() const = 0;
};

// ceil(ln(1/delta) / (2 gamma^2)). Throws InputError unless 0 < gamma, delta < 1.
std::size_t required_sample_size(const Rational& gamma, const Rational& delta);

// floor(eps * m), exactly.
std::size_t failure_budget(const Rational& epsilon, std::size_t m);

struct PacOptions {
  std::size_t threads = 1;  // 0 picks the hardware concurrency
  // Stop at the first example that pushes the count over the budget. The
  // verdict is the same either way.
  bool early_exit = true;
};

struct PacOutcome {
  Verdict verdict = Verdict::Accept;
  std::size_t failed_count = 0;  // rejections among the evaluated examples
  std::size_t budget = 0;
  std::size_t m = 0;
  std::size_t evaluated = 0;  // m unless early exit fired
  std::vector<Verdict> per_example;  // the first `evaluated` verdicts, in order
};

// Throws InputError for an empty sample or an example whose length differs
// from backend.num_vars(). Verdicts are computed in parallel and scanned in
// sample order, so the outcome does not depend on the thread count.
PacOutcome decide_pac(const DecisionBackend& backend, const PacParams& params,
                      const std::vector<PartialAssignment>& examples,
                      const PacOptions& options = {});

}  // namespace pacsem
