#ifndef QPERT_SUITES_HPP_
#define QPERT_SUITES_HPP_

#include <string>
#include <vector>

#include "qpert/verify.hpp"

namespace qpert {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // residual or error actually observed
  double threshold = 0.0;  // the pinned tolerance
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

//! Deterministic verification batteries: "identities" (spinor/photon/unit
//! algebra), "transport" (geometry), "propagators" (Heaviside and the
//! time-ordered combination), "divergences" (loop figures).
SuiteResult run_suite(const std::string& suite_id);
std::vector<std::string> suite_names();

}  // namespace qpert

#endif  // QPERT_SUITES_HPP_
