#include "qpert/process.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qpert {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw std::runtime_error("cli: process schema violation at " + pointer + ": " + what);
}

ExternalLeg parse_leg(const json& j, const std::string& pointer, bool incoming,
                      const CouplingSpec& coupling, int index_in_list) {
  if (!j.is_object()) schema_error(pointer, "leg must be an object");
  if (!j.contains("species") || !j["species"].is_string())
    schema_error(pointer + "/species", "required string");
  if (!j.contains("p") || !j["p"].is_array() || j["p"].size() != 3)
    schema_error(pointer + "/p", "required 3-array");

  ExternalLeg leg;
  leg.species = j["species"].get<std::string>();
  const Species& sp = coupling.species(leg.species);
  Vec3 p3{};
  for (int i = 0; i < 3; ++i) {
    if (!j["p"][i].is_number()) schema_error(pointer + "/p", "momentum components must be numbers");
    p3[i] = j["p"][i].get<double>();
  }
  leg.incoming = incoming;
  leg.momentum = FourMomentum::on_shell_of(sp.mass, p3);
  if (j.contains("E")) {
    const double declared = j["E"].get<double>();
    const double derived = leg.momentum.energy;
    if (std::abs(declared - derived) > 1e-9 * std::max(1.0, derived))
      throw std::runtime_error("cli: off-shell momentum at leg " + std::to_string(index_in_list) +
                               " (" + pointer + "): declared E=" + std::to_string(declared) +
                               ", shell requires " + std::to_string(derived));
  }
  if (j.contains("index")) {
    leg.classical_index = j["index"].get<int>();
    if (leg.classical_index < 0 || leg.classical_index >= sp.rank)
      schema_error(pointer + "/index", "classical index out of species rank");
  }
  leg.symbol = j.value("symbol", std::string(incoming ? "in" : "out") +
                                     std::to_string(index_in_list));
  return leg;
}

}  // namespace

std::vector<ExternalLeg> ProcessSpec::all_legs() const {
  std::vector<ExternalLeg> legs = in_legs;
  legs.insert(legs.end(), out_legs.begin(), out_legs.end());
  return legs;
}

ProcessSpec parse_process_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("cli: process file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("/", "top level must be an object");
  if (!j.contains("model") || !j["model"].is_string()) schema_error("/model", "required string");

  ProcessSpec spec;
  const std::string model = j["model"].get<std::string>();
  const json coupling = j.value("coupling", json::object());
  const json masses = j.value("masses", json::object());
  if (model == "scalar2") {
    if (!coupling.contains("ell")) schema_error("/coupling/ell", "scalar2 requires ell");
    spec.coupling =
        CouplingSpec::scalar2(coupling["ell"].get<double>(), masses.value("massive", 1.0));
  } else if (model == "qed") {
    if (!coupling.contains("e")) schema_error("/coupling/e", "qed requires e");
    spec.coupling = CouplingSpec::qed(coupling["e"].get<double>(), masses.value("electron", 1.0));
  } else {
    schema_error("/model", "unknown model '" + model + "'");
  }

  spec.length_unit = j.value("length_unit", 1.0);
  if (spec.length_unit <= 0.0) schema_error("/length_unit", "must be positive");
  spec.order = j.value("order", 1);
  if (spec.order != 1 && spec.order != 2) schema_error("/order", "must be 1 or 2");

  if (!j.contains("in") || !j["in"].is_array()) schema_error("/in", "required array");
  if (!j.contains("out") || !j["out"].is_array()) schema_error("/out", "required array");
  int counter = 0;
  for (std::size_t i = 0; i < j["in"].size(); ++i)
    spec.in_legs.push_back(
        parse_leg(j["in"][i], "/in/" + std::to_string(i), true, spec.coupling, counter++));
  for (std::size_t i = 0; i < j["out"].size(); ++i)
    spec.out_legs.push_back(
        parse_leg(j["out"][i], "/out/" + std::to_string(i), false, spec.coupling, counter++));

  if (j.contains("options")) {
    const json& o = j["options"];
    spec.options.evaluate = o.value("evaluate", true);
    if (o.contains("verify")) {
      for (const auto& v : o["verify"]) spec.options.verify.push_back(v.get<std::string>());
    }
    if (o.contains("eps_schedule")) {
      spec.options.eps.eps.clear();
      for (const auto& e : o["eps_schedule"]) spec.options.eps.eps.push_back(e.get<double>());
      spec.options.eps.validate();
    }
    spec.options.smear_sigma = o.value("smear_sigma", 0.05);
    spec.options.t_window = o.value("t_window", 0.0);
  }
  return spec;
}

ProcessSpec parse_process(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cli: cannot open process file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_process_json(text);
}

}  // namespace qpert
