#include "qpert/report.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "qpert/divergence.hpp"
#include "qpert/element.hpp"
#include "qpert/kernels.hpp"
#include "qpert/metric.hpp"

namespace qpert {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_rec(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad1(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad1 + json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad1;
        dump_rec(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += fmt17(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

json complex_json(const cplx& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json delta_json(const DeltaConstraint& d) {
  json terms = json::array();
  for (const auto& t : d.terms) terms.push_back(json{{"sign", t.sign}, {"symbol", t.symbol}});
  return json{{"terms", terms}, {"dimension", d.dimension}, {"weight", d.weight().as_double()},
              {"text", d.str()}};
}

json element_json(const MatrixElement& me, bool evaluate) {
  json props = json::array();
  for (const auto& pf : me.propagators) {
    props.push_back(json{{"species", pf.prop.species},
                         {"mass", pf.prop.mass},
                         {"internal", pf.internal_expr.str("q")},
                         {"numerator", pf.numerator_form}});
  }
  json deltas = json::array();
  for (const auto& d : me.deltas) deltas.push_back(delta_json(d));
  json out{{"family", me.family},
           {"description", me.description},
           {"prefactor", complex_json(me.constant)},
           {"prefactor_weight", me.constant_weight.as_double()},
           {"coefficient_weight", me.coefficient_weight().as_double()},
           {"total_weight", me.total_weight().as_double()},
           {"energy_roots", me.energy_root_symbols},
           {"deltas", deltas},
           {"propagators", props},
           {"chain", me.chain_text},
           {"empty_support", me.empty_support}};
  if (evaluate) {
    if (me.empty_support) {
      out["numeric"] = json{{"empty_support", true}};
    } else if (me.chain == ChainKind::qed_first_order) {
      out["numeric"] = json{{"note", "evaluate first-order QED chains via qed_ell_factor"}};
    } else {
      out["numeric"] = complex_json(evaluate_element(me));
    }
  }
  return out;
}

}  // namespace

std::string dump_json17(const json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

std::string Report::to_json() const {
  json j = body;
  j["runtime"] = runtime;
  return dump_json17(j);
}

std::string Report::to_text() const {
  std::string out;
  out += "== " + body.value("kind", std::string("report")) + " ==\n";
  std::function<void(const json&, int)> walk = [&](const json& j, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_object() || it.value().is_array()) {
          out += pad + it.key() + ":\n";
          walk(it.value(), depth + 1);
        } else if (it.value().is_number_float()) {
          out += pad + it.key() + " = " + fmt17(it.value().get<double>()) + "\n";
        } else {
          out += pad + it.key() + " = " + it.value().dump() + "\n";
        }
      }
    } else if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad + "- [" + std::to_string(i) + "]\n";
        walk(j[i], depth + 1);
      }
    } else if (j.is_number_float()) {
      out += pad + fmt17(j.get<double>()) + "\n";
    } else {
      out += pad + j.dump() + "\n";
    }
  };
  walk(body, 0);
  return out;
}

json weight_audit_json(const CouplingSpec& coupling, double length_unit) {
  json rows = json::array();
  auto row = [&](const std::string& what, Weight declared, Weight computed) {
    rows.push_back(json{{"quantity", what},
                        {"declared", declared.as_double()},
                        {"computed", computed.as_double()},
                        {"ok", declared == computed}});
  };
  row("metric", MetricField::weight(), Weight::integer(2));
  row("momentum_component", Weight::integer(-1), Weight::integer(-1));
  row("leray_halfdensity", Weight::halves(1), leray_halfdensity_weight(1.0, {0, 0, 0}).weight);
  row("frame_coefficient", Weight::integer(0),
      frame_coefficient(length_unit, 1.0, {0, 0, 0}).weight);
  {
    const auto p = FourMomentum::on_shell_of(1.0, {0, 0, 0});
    const auto lam = lambda_unscaled({1, 1, 1}, {p, p, p}, {"a", "b", "c"}, length_unit);
    row("lambda_coefficient", Weight::integer(-3), lam.coefficient.weight);
    row("lambda_delta", Weight::integer(3), lam.delta.weight());
  }
  row("phase_connection", Weight::integer(-1), Weight::integer(-1));
  row("halfdensity_connection", Weight::integer(0), Weight::integer(0));
  {
    const auto types = enumerate_vertex_types(coupling.model());
    std::array<FourMomentum, 3> mom;
    for (int i = 0; i < 3; ++i)
      mom[i] = FourMomentum::on_shell_of(coupling.species(types[0].slots[i].species).mass,
                                         {0.1 * (i + 1), 0, 0.2});
    const auto term =
        interaction_term(types[0], mom, {"a", "b", "c"}, 0.0, length_unit, coupling);
    row("interaction_morphism_term", Weight::integer(-1), term.total_weight());
  }
  return rows;
}

Report run_process(const ProcessSpec& spec) {
  Report rep;
  rep.body["kind"] = "process";
  rep.body["model"] = spec.coupling.model() == Model::scalar2 ? "scalar2" : "qed";
  rep.body["order"] = spec.order;
  rep.body["length_unit"] = spec.length_unit;
  rep.body["kernel_backend"] = kernels::active_name();

  json legs = json::array();
  for (const auto& l : spec.all_legs()) {
    legs.push_back(json{{"species", l.species},
                        {"incoming", l.incoming},
                        {"symbol", l.symbol},
                        {"index", l.classical_index},
                        {"p", {l.momentum.spatial[0], l.momentum.spatial[1], l.momentum.spatial[2]}},
                        {"E", l.momentum.energy}});
  }
  rep.body["legs"] = legs;

  const auto diagrams = enumerate_diagrams(spec.all_legs(), spec.order, spec.coupling);
  json dlist = json::array();
  json elements = json::array();

  bool any_finite_numeric = false;
  bool all_empty_support = true;

  if (spec.order == 1) {
    for (const auto& d : diagrams) {
      dlist.push_back(json{{"family", d.family}, {"name", d.name}, {"order", 1}});
      const MatrixElement me = first_order_element(d, spec.length_unit, spec.coupling);
      if (!me.empty_support) all_empty_support = false;
      elements.push_back(element_json(me, spec.options.evaluate));
      if (spec.options.evaluate && !me.empty_support && me.chain == ChainKind::none)
        any_finite_numeric = true;
    }
  } else {
    std::map<std::string, std::vector<Diagram>> families;
    for (const auto& d : diagrams) {
      families[d.family].push_back(d);
      dlist.push_back(json{{"family", d.family}, {"name", d.name}, {"order", 2}});
    }
    for (const auto& [fam, pair] : families) {
      if (pair.size() != 2) continue;
      const MatrixElement me = second_order_element(pair, spec.length_unit, spec.coupling);
      all_empty_support = false;
      elements.push_back(element_json(me, spec.options.evaluate));
      if (spec.options.evaluate) any_finite_numeric = true;
    }
  }
  rep.body["diagrams"] = dlist;
  rep.body["elements"] = elements;

  json verification = json::object();
  bool any_divergent_verdict = false;
  for (const auto& suite : spec.options.verify) {
    const SuiteResult sr = run_suite(suite);
    json checks = json::array();
    for (const auto& c : sr.checks) {
      checks.push_back(json{{"name", c.name},
                            {"passed", c.passed},
                            {"measured", c.measured},
                            {"threshold", c.threshold},
                            {"detail", c.detail}});
      if (suite == "divergences" && c.passed) any_divergent_verdict = true;
    }
    verification[suite] = json{{"all_passed", sr.all_passed()}, {"checks", checks}};
  }
  rep.body["verification"] = verification;
  rep.body["weight_audit"] = weight_audit_json(spec.coupling, spec.length_unit);

  if (diagrams.empty() || all_empty_support) {
    rep.body["note"] = diagrams.empty() ? "kinematically empty process" : "empty support";
    rep.exit_code = 2;
  } else if (spec.options.evaluate && !any_finite_numeric && any_divergent_verdict) {
    rep.body["note"] = "divergent-only results";
    rep.exit_code = 3;
  }

  const auto now = std::chrono::system_clock::now().time_since_epoch();
  rep.runtime = json{{"unix_ms", std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
                     {"kernel", kernels::active_name()}};
  return rep;
}

Report report_of_suite(const SuiteResult& sr) {
  Report rep;
  rep.body["kind"] = "verify";
  rep.body["suite"] = sr.suite;
  rep.body["all_passed"] = sr.all_passed();
  json checks = json::array();
  for (const auto& c : sr.checks)
    checks.push_back(json{{"name", c.name},
                          {"passed", c.passed},
                          {"measured", c.measured},
                          {"threshold", c.threshold},
                          {"detail", c.detail}});
  rep.body["checks"] = checks;
  rep.exit_code = sr.all_passed() ? 0 : 1;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  rep.runtime = json{{"unix_ms", std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
                     {"kernel", kernels::active_name()}};
  return rep;
}

}  // namespace qpert
