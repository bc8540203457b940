#pragma once
#include "rdf/run_config.hpp"
#include <iosfwd>
#include <string>

//! Subcommands of the `rdf` tool. Each writes its table or report to out,
//! diagnostics to log, and returns the process exit status: 0 iff every
//! asserted tolerance passes.
namespace rdf {

//! Every algebra identity; JSON report. inject_fault perturbs one entry of
//! eta^1 before checking (negative control).
int cmd_algebra_check(std::ostream &out, std::ostream &log, bool inject_fault = false);

//! Solver vs closed-form spectrum, one row per state (csv or json).
//! Asserted: relative binding error <= 1e-8, functional/eigenvalue within 1e-6.
int cmd_hydrogen(const RunConfig &cfg, std::ostream &out, std::ostream &log);

//! (r, G, F) of the first listed state (csv or json)
int cmd_orbital(const RunConfig &cfg, std::ostream &out, std::ostream &log);

//! Itemized energy report for the first listed state (json).
//! Asserted: I_DI/E within 1e-6, cross term within 1e-6 of its oracle.
int cmd_energy_audit(const RunConfig &cfg, std::ostream &out, std::ostream &log);

//! Time series of a 1-D run described by a key = value file (csv)
int cmd_evolve(const std::string &config_path, std::ostream &out, std::ostream &log);

struct DensitySpec {
  std::string kind = "hydrogen"; // hydrogen | ball | gaussian
  double radius = 1.0;           // ball radius or gaussian width
  double charge = 1.0;
};
//! (r, rho, A0) from the shell-theorem solver (csv or json); the hydrogen
//! density is that of the first listed state. Nothing is asserted.
int cmd_potential(const RunConfig &cfg, const DensitySpec &density,
                  std::ostream &out, std::ostream &log);

} // namespace rdf
