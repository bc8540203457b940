#include "rdf/commands.hpp"
#include "rdf/constants.hpp"
#include "rdf/errors.hpp"
#include "rdf/run_config.hpp"
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

// rdf <subcommand> [flags]; see README.md.
// Exit status: 0 all asserted tolerances pass, 1 a tolerance failed,
// 2 invalid input or a refused run.

namespace {

struct Flags {
  double alpha = rdf::PhysConst::alpha;
  double mc2_eV = rdf::PhysConst::mc2_eV;
  std::string states = "1:-1";
  std::size_t grid_points = 4000;
  std::optional<double> r_min;
  std::optional<double> r_max;
  double tol = 1e-15;
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App *sub, Flags &f, const std::string &default_states) {
  f.states = default_states;
  sub->add_option("--alpha", f.alpha, "Fine-structure constant");
  sub->add_option("--mc2-ev", f.mc2_eV, "Electron rest energy, eV");
  sub->add_option("--states", f.states, "Comma-separated n:kappa_D list")
      ->capture_default_str();
  sub->add_option("--grid-points", f.grid_points, "Radial grid size");
  sub->add_option("--r-min", f.r_min, "Radial grid start (default 1e-6/alpha)");
  sub->add_option("--r-max", f.r_max, "Radial grid end (default 40 n^2/alpha)");
  sub->add_option("--tol", f.tol, "Eigenvalue bracket tolerance");
  sub->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", f.out, "Output file (default $RDF_OUTPUT_DIR or stdout)");
}

rdf::RunConfig to_config(const std::string &name, const Flags &f) {
  rdf::RunConfig c;
  c.subcommand = name;
  c.alpha = f.alpha;
  c.mc2_eV = f.mc2_eV;
  c.states = rdf::parse_states(f.states);
  c.grid_points = f.grid_points;
  c.r_min = f.r_min;
  c.r_max = f.r_max;
  c.tol = f.tol;
  c.format = f.format;
  c.out_path = f.out;
  c.validate();
  return c;
}

// Runs cmd with out bound to the resolved output (file or stdout)
template <typename Cmd>
int with_output(const std::string &out, const std::string &stem,
                const std::string &format, Cmd &&cmd) {
  const auto path = rdf::resolve_output(out, stem, format);
  if (path.empty())
    return cmd(std::cout);
  std::ofstream file(path);
  if (!file)
    throw rdf::InputError("cannot write output file '" + path + "'");
  const int status = cmd(file);
  std::cerr << "wrote " << path << '\n';
  return status;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Real Dirac field: algebra, hydrogen spectrum, energy audit and "
               "1-D dynamics"};
  app.require_subcommand(1);

  Flags fh, fo, fe, fp;
  bool inject_fault = false;
  std::string alg_out;
  auto *algebra = app.add_subcommand("algebra-check", "Verify every algebra identity (JSON)");
  algebra->add_flag("--inject-fault", inject_fault, "Perturb one matrix entry first");
  algebra->add_option("--out", alg_out, "Output file");

  auto *hydrogen = app.add_subcommand("hydrogen", "Solver vs closed-form spectrum");
  add_common(hydrogen, fh, "1:-1,2:-1,2:1,2:-2,3:-1,3:-2");

  auto *orbital = app.add_subcommand("orbital", "Radial amplitudes (r, G, F) of one state");
  add_common(orbital, fo, "1:-1");

  auto *audit = app.add_subcommand("energy-audit", "Itemized energy report (JSON)");
  add_common(audit, fe, "1:-1");
  fe.format = "json";

  std::string config_path, evolve_out;
  auto *evolve = app.add_subcommand("evolve", "1-D time evolution from a config file");
  evolve->add_option("config", config_path, "key = value run configuration")->required();
  evolve->add_option("--out", evolve_out, "Output file");

  rdf::DensitySpec density;
  auto *potential = app.add_subcommand("potential", "Density -> A0 table");
  add_common(potential, fp, "1:-1");
  potential->add_option("--density", density.kind, "hydrogen | ball | gaussian")
      ->check(CLI::IsMember({"hydrogen", "ball", "gaussian"}));
  potential->add_option("--radius", density.radius, "Ball radius or Gaussian width");
  potential->add_option("--charge", density.charge, "Total charge of the model density");

  CLI11_PARSE(app, argc, argv);

  try {
    if (algebra->parsed())
      return with_output(alg_out, "algebra-check", "json", [&](std::ostream &o) {
        return rdf::cmd_algebra_check(o, std::cerr, inject_fault);
      });
    if (hydrogen->parsed()) {
      const auto c = to_config("hydrogen", fh);
      return with_output(c.out_path, "hydrogen", c.format, [&](std::ostream &o) {
        return rdf::cmd_hydrogen(c, o, std::cerr);
      });
    }
    if (orbital->parsed()) {
      const auto c = to_config("orbital", fo);
      return with_output(c.out_path, "orbital", c.format, [&](std::ostream &o) {
        return rdf::cmd_orbital(c, o, std::cerr);
      });
    }
    if (audit->parsed()) {
      auto c = to_config("energy-audit", fe);
      c.format = "json";
      return with_output(c.out_path, "energy-audit", "json", [&](std::ostream &o) {
        return rdf::cmd_energy_audit(c, o, std::cerr);
      });
    }
    if (evolve->parsed()) {
      // validate fully before an output file is created
      const auto cfg = rdf::EvolveConfig::from(rdf::KeyValueConfig::read_file(config_path));
      if (cfg.mode != "free" && cfg.dt > cfg.dz())
        return rdf::cmd_evolve(config_path, std::cout, std::cerr); // throws CflError
      return with_output(evolve_out, "evolve", "csv", [&](std::ostream &o) {
        return rdf::cmd_evolve(config_path, o, std::cerr);
      });
    }
    if (potential->parsed()) {
      const auto c = to_config("potential", fp);
      return with_output(c.out_path, "potential", c.format, [&](std::ostream &o) {
        return rdf::cmd_potential(c, density, o, std::cerr);
      });
    }
  } catch (const rdf::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
