#include "pacsem/oracle.hpp"

#include <algorithm>

#include "pacsem/errors.hpp"

namespace pacsem::oracle {

void for_each_assignment(std::size_t n, const std::function<bool(const Assignment&)>& visit,
                         std::size_t cap) {
  if (n > cap)
    throw InputError("enumeration over " + std::to_string(n) + " variables exceeds the cap of " +
                     std::to_string(cap));
  Assignment x(n, false);
  for (;;) {
    if (!visit(x)) return;
    // Increment with x[n-1] as the least significant position.
    std::size_t i = n;
    while (i > 0 && x[i - 1]) x[--i] = false;
    if (i == 0) return;
    x[i - 1] = true;
  }
}

bool entails(const std::vector<Formula>& hyps, const Formula& phi, std::size_t n,
             std::size_t cap) {
  for (const auto& h : hyps) check_in_range(h, n);
  check_in_range(phi, n);
  bool holds = true;
  for_each_assignment(
      n,
      [&](const Assignment& x) {
        for (const auto& h : hyps)
          if (!evaluate(h, x)) return true;
        if (!evaluate(phi, x)) {
          holds = false;
          return false;
        }
        return true;
      },
      cap);
  return holds;
}

std::optional<Assignment> sat_solve(const Cnf& cnf, std::size_t cap) {
  std::optional<Assignment> model;
  for_each_assignment(
      cnf.num_vars(),
      [&](const Assignment& x) {
        if (evaluate_cnf(cnf, x)) {
          model = x;
          return false;
        }
        return true;
      },
      cap);
  return model;
}

std::optional<Assignment> find_model(const std::vector<Formula>& constraints, std::size_t n,
                                     std::size_t cap) {
  for (const auto& c : constraints) check_in_range(c, n);
  std::optional<Assignment> model;
  for_each_assignment(
      n,
      [&](const Assignment& x) {
        if (std::all_of(constraints.begin(), constraints.end(),
                        [&x](const Formula& f) { return evaluate(f, x); })) {
          model = x;
          return false;
        }
        return true;
      },
      cap);
  return model;
}

}  // namespace pacsem::oracle
