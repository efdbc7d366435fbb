#ifndef QVIR_REPORT_HPP
#define QVIR_REPORT_HPP

#include <chrono>
#include <functional>
#include <string>
#include <vector>

namespace qvir {

// Verification outcome per check. Proved identities that fail flip the
// process exit code; conjecture failures are findings and do not.
enum class CheckStatus { proved_equal, conjecture_holds, conjecture_fails, skipped, failed };

struct CheckResult {
  std::string name;
  std::string id;  // stable machine identifier of the identity
  CheckStatus status = CheckStatus::skipped;
  long millis = 0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> results;
  bool any_theorem_failure() const;
  std::string to_json() const;
  std::string to_text() const;
};

// Runs `fn`; `conjecture` selects how a false result is classified.
CheckResult run_check(const std::string& name, const std::string& id,
                      bool conjecture, const std::function<bool()>& fn);

// simple worker fan-out over independent check thunks
void run_parallel(std::vector<std::function<CheckResult()>> tasks, int workers,
                  CheckReport& report);

}  // namespace qvir

#endif
