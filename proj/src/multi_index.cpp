#include "qpert/multi_index.hpp"

#include <cmath>
#include <stdexcept>

namespace qpert {

bool frame_label_less(const FrameLabel& a, const FrameLabel& b) {
  if (a.species != b.species) return a.species < b.species;
  const Vec4 pa = a.momentum.components();
  const Vec4 pb = b.momentum.components();
  for (int i = 0; i < 4; ++i)
    if (pa[i] != pb[i]) return pa[i] < pb[i];
  return a.classical_index < b.classical_index;
}

namespace {

bool frame_label_equal(const FrameLabel& a, const FrameLabel& b) {
  return !frame_label_less(a, b) && !frame_label_less(b, a);
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

FockNorm fock_normalization(const MultiIndex& mi) {
  FockNorm out;
  if (mi.statistics == Statistics::boson) {
    double prod = 1.0;
    for (const auto& [label, occ] : mi.graphic) {
      if (occ < 1) throw std::runtime_error("phase_space: occupation must be >= 1");
      prod *= factorial(occ);
    }
    out.normalization = 1.0 / std::sqrt(prod);
    return out;
  }

  // Fermions: all occupations exactly one, labels pairwise distinct, and
  // the sign is the parity of the sort to canonical order.
  std::vector<FrameLabel> labels;
  for (const auto& [label, occ] : mi.graphic) {
    if (occ != 1) throw std::runtime_error("phase_space: Pauli violation in multi-index");
    labels.push_back(label);
  }
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j)
      if (frame_label_equal(labels[i], labels[j]))
        throw std::runtime_error("phase_space: Pauli violation in multi-index");

  int sign = 1;
  for (size_t i = 0; i + 1 < labels.size(); ++i) {
    size_t min_at = i;
    for (size_t j = i + 1; j < labels.size(); ++j)
      if (frame_label_less(labels[j], labels[min_at])) min_at = j;
    if (min_at != i) {
      std::swap(labels[i], labels[min_at]);
      sign = -sign;
    }
  }
  out.sign = sign;
  return out;
}

}  // namespace qpert
