#pragma once

#include <stdexcept>
#include <string>

namespace posetflow {

// A builder or analysis refused to allocate past a configured size cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// The brute-force oracle would exceed its enumeration budget. Budgets fail
// loudly: the oracle never truncates silently.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Flow-based layer certification requires a graded poset (every cover raises
// rank by exactly one). Non-graded inputs are unsupported, not guessed at.
struct NotGradedError : std::invalid_argument {
  explicit NotGradedError(const std::string& what) : std::invalid_argument(what) {}
};

// Theorem checkers whose hypotheses require log-concave profiles reject
// other inputs with this distinct error.
struct LogConcavityError : std::invalid_argument {
  explicit LogConcavityError(const std::string& what) : std::invalid_argument(what) {}
};

// Unit-flow synthesis found the throughput network infeasible; the message
// carries the cut witness. Indicates the poset is not LYM-certified.
struct UnitFlowInfeasible : std::runtime_error {
  explicit UnitFlowInfeasible(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace posetflow
