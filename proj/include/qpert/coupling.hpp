#ifndef QPERT_COUPLING_HPP_
#define QPERT_COUPLING_HPP_

#include <map>
#include <string>

#include "qpert/multi_index.hpp"
#include "qpert/scaled.hpp"

namespace qpert {

enum class Model { scalar2, qed };

struct Species {
  std::string id;
  double mass = 0.0;
  Statistics statistics = Statistics::boson;
  int rank = 1;  // classical-index count (spin/polarization states)
};

//! Model, coupling constants and the species table. The scalar model's
//! coupling ell lives in L^-1 and incorporates the series constant lambda;
//! QED uses the pure number e with lambda pinned to the electron mass.
class CouplingSpec {
 public:
  static CouplingSpec scalar2(double ell, double massive_mass = 1.0);
  static CouplingSpec qed(double e, double electron_mass = 1.0);

  Model model() const { return model_; }
  const Species& species(const std::string& id) const;
  const std::map<std::string, Species>& table() const { return species_; }

  //! Series constant lambda in L^-1 (scalar: the full ell; QED: electron mass).
  ScaledQuantity lambda() const;
  //! Dimensionless charge e (QED only).
  double charge() const;
  double ell() const;

 private:
  Model model_ = Model::scalar2;
  double ell_ = 0.0;
  double e_ = 0.0;
  std::map<std::string, Species> species_;
};

}  // namespace qpert

#endif  // QPERT_COUPLING_HPP_
