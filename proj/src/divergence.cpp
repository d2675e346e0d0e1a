#include "qpert/divergence.hpp"

#include <stdexcept>

namespace qpert {

DivergenceReport superficial_divergence(const Diagram& d, const CouplingSpec& coupling) {
  const DeltaReduction red = reduce_deltas(d.vertex_deltas(), d.internal_symbols());
  if (red.free_internals.empty())
    throw std::runtime_error("smatrix: no loop present; use the tree-element assembly");

  DivergenceReport r;
  r.loops = static_cast<int>(red.free_internals.size());
  r.free_momenta = red.free_internals;
  r.energy_integrals = static_cast<int>(d.vertices.size()) - 1;
  r.dims = 3 * r.loops + r.energy_integrals;

  int line_falloff = 0;
  for (const auto& line : d.internals) {
    const auto& sp = coupling.species(line.species);
    line_falloff += (sp.statistics == Statistics::boson) ? 1 : 0;
  }
  r.falloff = line_falloff + r.energy_integrals;
  r.degree = r.dims - r.falloff;  // = 3 * loops - boson lines
  r.divergent = r.degree >= 0;
  return r;
}

}  // namespace qpert
