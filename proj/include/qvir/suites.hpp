#ifndef QVIR_SUITES_HPP
#define QVIR_SUITES_HPP

#include "qvir/report.hpp"

namespace qvir {

struct SuiteConfig {
  int level = 4;
  int workers = 1;
  bool fingerprint_first = true;
};

// The named verification suites behind `verify`. Levels are capped per check
// to the bounds the identities are pinned at; the configured level lowers
// them further but never raises the conjecture-checked ranges.
CheckReport run_suite(const std::string& name, const SuiteConfig& cfg);

std::vector<std::function<CheckResult()>> suite_dvir(const SuiteConfig& cfg);
std::vector<std::function<CheckResult()>> suite_nekrasov(const SuiteConfig& cfg);
std::vector<std::function<CheckResult()>> suite_gmac(const SuiteConfig& cfg);
std::vector<std::function<CheckResult()>> suite_intertwiner(const SuiteConfig& cfg);
std::vector<std::function<CheckResult()>> suite_laurent(const SuiteConfig& cfg);

}  // namespace qvir

#endif
