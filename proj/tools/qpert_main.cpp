#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qpert/report.hpp"
#include "qpert/transport.hpp"

namespace {

int emit(const qpert::Report& rep, const std::string& format, const std::string& out_path) {
  const std::string text = format == "text" ? rep.to_text() : rep.to_json();
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "qpert: cannot write '" << out_path << "'\n";
      return 1;
    }
    out << text;
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momentum-space perturbation engine"};
  app.require_subcommand(1);

  std::string process_path, format = "json", out_path;
  auto* compute = app.add_subcommand("compute", "enumerate and evaluate a process file");
  compute->add_option("--process", process_path, "process description (JSON)")->required();
  compute->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
  compute->add_option("--out", out_path, "write the report here instead of stdout");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "identities|transport|propagators|divergences")
      ->required()
      ->check(CLI::IsMember(qpert::suite_names()));
  verify->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", out_path, "write the report here instead of stdout");

  std::string metric_id = "minkowski", worldline_path;
  std::vector<std::string> params;
  auto* transport = app.add_subcommand("transport", "transport a frame along a worldline");
  transport->add_option("--metric", metric_id, "metric catalog id")->required();
  transport->add_option("--params", params, "metric parameters K=V");
  transport->add_option("--worldline", worldline_path, "JSON array of (t,x0,x1,x2,x3) nodes")
      ->required();
  transport->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
  transport->add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 1;
  }

  try {
    if (compute->parsed()) {
      const qpert::ProcessSpec spec = qpert::parse_process(process_path);
      return emit(qpert::run_process(spec), format, out_path);
    }
    if (verify->parsed()) {
      return emit(qpert::report_of_suite(qpert::run_suite(suite)), format, out_path);
    }
    if (transport->parsed()) {
      std::map<std::string, double> pmap;
      for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw std::runtime_error("cli: --params expects K=V, got '" + kv + "'");
        pmap[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      const qpert::MetricField metric = qpert::MetricField::from_catalog(metric_id, pmap);
      const qpert::Worldline wl = qpert::Worldline::from_json_file(worldline_path);

      qpert::Report rep;
      rep.body["kind"] = "transport";
      rep.body["metric"] = metric_id;
      rep.body["t0"] = wl.t0();
      rep.body["t1"] = wl.t1();
      rep.body["unit_tangent_residual"] = wl.unit_tangent_residual(metric);

      // Transport the coordinate frame both ways and report conservation.
      nlohmann::json modes = nlohmann::json::object();
      for (const bool fermi : {false, true}) {
        nlohmann::json rows = nlohmann::json::array();
        std::array<qpert::Vec4, 4> start{qpert::Vec4{1, 0, 0, 0}, qpert::Vec4{0, 1, 0, 0},
                                         qpert::Vec4{0, 0, 1, 0}, qpert::Vec4{0, 0, 0, 1}};
        for (const auto& v0 : start) {
          const auto path = fermi ? qpert::fermi_transport(metric, wl, v0, wl.t0(), wl.t1())
                                  : qpert::parallel_transport(metric, wl, v0, wl.t0(), wl.t1());
          const double n0 = qpert::metric_dot(metric, wl.position(wl.t0()), v0, v0);
          const double n1 =
              qpert::metric_dot(metric, wl.position(wl.t1()), path.back(), path.back());
          rows.push_back(nlohmann::json{
              {"v0", {v0[0], v0[1], v0[2], v0[3]}},
              {"v1", {path.back()[0], path.back()[1], path.back()[2], path.back()[3]}},
              {"norm_drift", std::abs(n1 - n0)}});
        }
        modes[fermi ? "fermi" : "parallel"] = rows;
      }
      rep.body["transport"] = modes;
      return emit(rep, format, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "qpert: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
