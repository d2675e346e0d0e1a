#ifndef QPERT_PROCESS_HPP_
#define QPERT_PROCESS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qpert/diagram.hpp"
#include "qpert/quadrature.hpp"

namespace qpert {

//! Validated batch-run description parsed from a process file.
struct ProcessSpec {
  CouplingSpec coupling = CouplingSpec::scalar2(1.0);
  double length_unit = 1.0;
  int order = 1;
  std::vector<ExternalLeg> in_legs;
  std::vector<ExternalLeg> out_legs;

  struct Options {
    bool evaluate = true;
    std::vector<std::string> verify;  // subset of the verification suites
    EpsSchedule eps;
    double smear_sigma = 0.05;
    double t_window = 0.0;
  } options;

  std::vector<ExternalLeg> all_legs() const;
};

//! Parse + validate; schema violations carry a JSON-pointer-style path,
//! off-shell legs are reported by index.
ProcessSpec parse_process(const std::string& path);
ProcessSpec parse_process_json(const std::string& text);

}  // namespace qpert

#endif  // QPERT_PROCESS_HPP_
