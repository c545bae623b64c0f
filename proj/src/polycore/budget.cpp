#include "towerlift/budget.hpp"

#include "towerlift/errors.hpp"

namespace towerlift {

namespace {

thread_local bool g_has_deadline = false;
thread_local std::chrono::steady_clock::time_point g_deadline;

}  // namespace

BudgetScope::BudgetScope(std::chrono::milliseconds budget)
    : previous_(g_deadline), had_previous_(g_has_deadline) {
  auto until = std::chrono::steady_clock::now() + budget;
  if (!g_has_deadline || until < g_deadline) g_deadline = until;
  g_has_deadline = true;
}

BudgetScope::~BudgetScope() {
  g_deadline = previous_;
  g_has_deadline = had_previous_;
}

bool budget_expired() { return g_has_deadline && std::chrono::steady_clock::now() > g_deadline; }

void check_budget(const char* stage) {
  if (budget_expired()) fail(ErrorKind::BudgetExceeded, std::string("wall-clock budget exhausted during ") + stage);
}

}  // namespace towerlift
