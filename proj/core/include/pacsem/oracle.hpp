#pragma once

// Brute-force ground truth for small instances. Exponential by design; the
// enumeration cap keeps accidental large calls from hanging.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pacsem/clause.hpp"
#include "pacsem/formula.hpp"

namespace pacsem::oracle {

inline constexpr std::size_t kDefaultEnumerationCap = 20;

// Calls visit(x) for every x in {0,1}^n in lexicographic order with x1 the
// most significant position; stops early when visit returns false. Throws
// InputError if n exceeds cap.
void for_each_assignment(std::size_t n, const std::function<bool(const Assignment&)>& visit,
                         std::size_t cap = kDefaultEnumerationCap);

// H |= phi over n variables.
bool entails(const std::vector<Formula>& hyps, const Formula& phi, std::size_t n,
             std::size_t cap = kDefaultEnumerationCap);

// First model in lexicographic order, if any.
std::optional<Assignment> sat_solve(const Cnf& cnf, std::size_t cap = kDefaultEnumerationCap);

// First model of a conjunction of arbitrary formulas.
std::optional<Assignment> find_model(const std::vector<Formula>& constraints, std::size_t n,
                                     std::size_t cap = kDefaultEnumerationCap);

}  // namespace pacsem::oracle
