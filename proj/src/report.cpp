#include "qvir/report.hpp"

#include <mutex>
#include <sstream>
#include <thread>

#include "qvir/rational.hpp"

namespace qvir {

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::proved_equal:
      return "proved-equal";
    case CheckStatus::conjecture_holds:
      return "conjecture-holds";
    case CheckStatus::conjecture_fails:
      return "conjecture-fails";
    case CheckStatus::skipped:
      return "skipped";
    case CheckStatus::failed:
      return "failed";
  }
  return "?";
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

bool CheckReport::any_theorem_failure() const {
  for (auto& r : results)
    if (r.status == CheckStatus::failed) return true;
  return false;
}

std::string CheckReport::to_json() const {
  std::ostringstream os;
  os << "{\"checks\":[";
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (i) os << ",";
    os << "{\"name\":\"" << json_escape(r.name) << "\",\"id\":\""
       << json_escape(r.id) << "\",\"status\":\"" << status_name(r.status)
       << "\",\"ms\":" << r.millis;
    if (!r.detail.empty()) os << ",\"detail\":\"" << json_escape(r.detail) << "\"";
    os << "}";
  }
  os << "]}";
  return os.str();
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  for (auto& r : results) {
    os << (r.status == CheckStatus::failed ? "FAIL " : "ok   ");
    os << status_name(r.status) << "  " << r.id << "  " << r.name << "  ("
       << r.millis << " ms)";
    if (!r.detail.empty()) os << "  " << r.detail;
    os << "\n";
  }
  return os.str();
}

CheckResult run_check(const std::string& name, const std::string& id,
                      bool conjecture, const std::function<bool()>& fn) {
  CheckResult r;
  r.name = name;
  r.id = id;
  auto start = std::chrono::steady_clock::now();
  try {
    bool ok = fn();
    if (ok)
      r.status = conjecture ? CheckStatus::conjecture_holds
                            : CheckStatus::proved_equal;
    else
      r.status = conjecture ? CheckStatus::conjecture_fails : CheckStatus::failed;
  } catch (const std::exception& e) {
    r.status = CheckStatus::failed;
    r.detail = e.what();
  }
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - start)
                 .count();
  return r;
}

void run_parallel(std::vector<std::function<CheckResult()>> tasks, int workers,
                  CheckReport& report) {
  if (workers < 1) workers = 1;
  std::mutex mu;
  size_t next = 0;
  std::vector<CheckResult> results(tasks.size());
  auto worker = [&]() {
    for (;;) {
      size_t mine;
      {
        std::lock_guard<std::mutex> lk(mu);
        if (next >= tasks.size()) return;
        mine = next++;
      }
      results[mine] = tasks[mine]();
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& r : results) report.results.push_back(std::move(r));
}

}  // namespace qvir
