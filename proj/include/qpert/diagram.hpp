#ifndef QPERT_DIAGRAM_HPP_
#define QPERT_DIAGRAM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qpert/delta.hpp"
#include "qpert/vertex.hpp"

namespace qpert {

struct ExternalLeg {
  std::string species;
  bool incoming = true;
  std::string symbol;
  int classical_index = 0;
  FourMomentum momentum;
};

struct InternalLine {
  std::string species;
  std::string symbol;
  int from_vertex = 0;  // created here (earlier)
  int to_vertex = 0;    // absorbed here (later)
};

enum class TimeOrder { single, primed, double_primed };

//! A process diagram: vertices listed earliest first, every slot wired to
//! an external leg or an internal line. Internal lines are created at the
//! earlier vertex and absorbed at the later one.
struct Diagram {
  Model model = Model::scalar2;
  std::vector<VertexTerm> vertices;
  struct SlotRef {
    bool is_internal = false;
    int index = -1;  // into externals or internals
  };
  std::vector<std::array<SlotRef, 3>> slots;  // parallel to vertices
  std::vector<ExternalLeg> externals;
  std::vector<InternalLine> internals;
  std::string family;
  TimeOrder time_order = TimeOrder::single;
  std::string name;

  //! One signed constraint per vertex: create +, absorb -.
  std::vector<DeltaConstraint> vertex_deltas() const;
  std::vector<std::string> internal_symbols() const;
  //! Wiring consistency: slot species and variances match what they carry.
  void validate() const;
  const ExternalLeg& leg(const std::string& symbol) const;
};

//! All vertex-type assignments and internal-line contractions consistent
//! with the given legs, to the requested order; two-vertex diagrams carry
//! both time orderings. Kinematically empty processes return {}.
std::vector<Diagram> enumerate_diagrams(const std::vector<ExternalLeg>& legs, int order,
                                        const CouplingSpec& coupling);

//! The scalar-model loop figures flagged by the divergence suites, plus a
//! manufactured regulated control for the numerics probe.
std::vector<Diagram> scalar_loop_figures(const CouplingSpec& coupling);

}  // namespace qpert

#endif  // QPERT_DIAGRAM_HPP_
