#include "pacsem/decide_pac.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "pacsem/errors.hpp"

namespace pacsem {

const char* to_string(Verdict v) { return v == Verdict::Accept ? "accept" : "reject"; }

namespace {

bool open_unit(const Rational& q) { return sgn(q) > 0 && q < 1; }

}  // namespace

void PacParams::validate() const {
  if (!open_unit(epsilon)) throw InputError("epsilon must lie strictly between 0 and 1");
  if (!open_unit(gamma)) throw InputError("gamma must lie strictly between 0 and 1");
  if (!open_unit(delta)) throw InputError("delta must lie strictly between 0 and 1");
  if (epsilon + gamma > 1) throw InputError("epsilon + gamma must not exceed 1");
  if (epsilon < gamma) throw InputError("epsilon - gamma must be nonnegative");
}

std::size_t required_sample_size(const Rational& gamma, const Rational& delta) {
  if (!open_unit(gamma)) throw InputError("gamma must lie strictly between 0 and 1");
  if (!open_unit(delta)) throw InputError("delta must lie strictly between 0 and 1");
  const double g = gamma.get_d();
  const double raw = std::log(1.0 / delta.get_d()) / (2.0 * g * g);
  // Values within rounding distance of an integer are that integer.
  const double nearest = std::round(raw);
  const double value = std::abs(raw - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(raw);
  return static_cast<std::size_t>(std::max(1.0, value));
}

std::size_t failure_budget(const Rational& epsilon, std::size_t m) {
  const Integer b = floor_of(epsilon * Rational(Integer(std::to_string(m))));
  if (sgn(b) < 0) return 0;
  return b.get_ui();
}

PacOutcome decide_pac(const DecisionBackend& backend, const PacParams& params,
                      const std::vector<PartialAssignment>& examples, const PacOptions& options) {
  params.validate();
  if (examples.empty()) throw InputError("DecidePAC needs at least one example");
  for (std::size_t i = 0; i < examples.size(); ++i)
    if (examples[i].size() != backend.num_vars())
      throw InputError("example " + std::to_string(i + 1) + " has length " +
                       std::to_string(examples[i].size()) + ", expected " +
                       std::to_string(backend.num_vars()));

  PacOutcome out;
  out.m = examples.size();
  out.budget = failure_budget(params.epsilon, out.m);

  std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max<std::size_t>(1, std::min(threads, examples.size()));

  // Evaluate in blocks; after each block the verdicts are scanned in order so
  // the early-exit point is the same for every thread count.
  const std::size_t block = options.early_exit ? std::max<std::size_t>(threads * 4, 16) : examples.size();
  std::vector<Verdict> verdicts(examples.size(), Verdict::Accept);
  for (std::size_t start = 0; start < examples.size(); start += block) {
    const std::size_t end = std::min(examples.size(), start + block);
    if (threads == 1) {
      for (std::size_t i = start; i < end; ++i) verdicts[i] = backend.decide(examples[i]);
    } else {
      std::atomic<std::size_t> next{start};
      std::atomic<bool> failed{false};
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(threads);
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t i = next++; i < end && !failed; i = next++)
              verdicts[i] = backend.decide(examples[i]);
          } catch (...) {
            errors[t] = std::current_exception();
            failed = true;
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (std::size_t i = start; i < end; ++i) {
      out.per_example.push_back(verdicts[i]);
      ++out.evaluated;
      if (verdicts[i] == Verdict::Reject) ++out.failed_count;
      if (options.early_exit && out.failed_count > out.budget) {
        out.verdict = Verdict::Reject;
        return out;
      }
    }
  }
  out.verdict = out.failed_count > out.budget ? Verdict::Reject : Verdict::Accept;
  return out;
}

}  // namespace pacsem
