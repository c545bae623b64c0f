#pragma once

#include <chrono>
#include <string>

namespace towerlift {

/// Wall-clock cap for long-running searches. Budgets are installed per thread
/// with BudgetScope; nested scopes can only tighten the deadline. Gröbner
/// computations poll it and raise ErrorKind::BudgetExceeded.
class BudgetScope {
 public:
  explicit BudgetScope(std::chrono::milliseconds budget);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  std::chrono::steady_clock::time_point previous_;
  bool had_previous_;
};

bool budget_expired();
void check_budget(const char* stage);

}  // namespace towerlift
