#ifndef QPERT_REPORT_HPP_
#define QPERT_REPORT_HPP_

#include <string>

#include <json.hpp>

#include "qpert/process.hpp"
#include "qpert/suites.hpp"

namespace qpert {

//! Deterministic run output: same spec and config give a byte-identical
//! body; the runtime block is excluded from that guarantee.
struct Report {
  nlohmann::json body;
  nlohmann::json runtime;
  int exit_code = 0;

  //! JSON with every float at 17 significant digits.
  std::string to_json() const;
  std::string to_text() const;
};

Report run_process(const ProcessSpec& spec);
Report report_of_suite(const SuiteResult& result);

//! Declared-vs-computed L-weights of the exported quantities.
nlohmann::json weight_audit_json(const CouplingSpec& coupling, double length_unit);

//! Serialize any json with %.17g floats (bit-stable round-trips).
std::string dump_json17(const nlohmann::json& j, int indent = 2);

}  // namespace qpert

#endif  // QPERT_REPORT_HPP_
