#include "qpert/coupling.hpp"

#include <stdexcept>

namespace qpert {

CouplingSpec CouplingSpec::scalar2(double ell, double massive_mass) {
  if (massive_mass <= 0.0) throw std::runtime_error("interaction: massive species needs m > 0");
  CouplingSpec c;
  c.model_ = Model::scalar2;
  c.ell_ = ell;
  c.species_["massive"] = {"massive", massive_mass, Statistics::boson, 1};
  c.species_["massless"] = {"massless", 0.0, Statistics::boson, 1};
  return c;
}

CouplingSpec CouplingSpec::qed(double e, double electron_mass) {
  if (e <= 0.0) throw std::runtime_error("interaction: positron charge must be positive");
  if (electron_mass <= 0.0) throw std::runtime_error("interaction: electron mass must be positive");
  CouplingSpec c;
  c.model_ = Model::qed;
  c.e_ = e;
  c.species_["electron"] = {"electron", electron_mass, Statistics::fermion, 2};
  c.species_["positron"] = {"positron", electron_mass, Statistics::fermion, 2};
  c.species_["photon"] = {"photon", 0.0, Statistics::boson, 2};
  return c;
}

const Species& CouplingSpec::species(const std::string& id) const {
  auto it = species_.find(id);
  if (it == species_.end()) throw std::runtime_error("interaction: unknown species '" + id + "'");
  return it->second;
}

ScaledQuantity CouplingSpec::lambda() const {
  if (model_ == Model::scalar2) return {ell_, Weight::integer(-1)};
  return {species_.at("electron").mass, Weight::integer(-1)};
}

double CouplingSpec::charge() const {
  if (model_ != Model::qed) throw std::runtime_error("interaction: charge is a QED coupling");
  return e_;
}

double CouplingSpec::ell() const {
  if (model_ != Model::scalar2) throw std::runtime_error("interaction: ell is a scalar coupling");
  return ell_;
}

}  // namespace qpert
