#include "rdf/commands.hpp"
#include "rdf/errors.hpp"
#include "rdf/run_config.hpp"
#include <catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rdf;

namespace {
const std::string cfg_dir = RDF_CONFIG_DIR;

KeyValueConfig kv(const std::string &text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in, "test.cfg");
}

std::vector<std::string> lines(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

std::vector<double> fields(const std::string &line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');)
    v.push_back(std::stod(f));
  return v;
}

std::string temp_config(const std::string &name, const std::string &text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}
} // namespace

TEST_CASE("cli: key = value parsing", "[cli]") {
  const auto c = kv("# comment\nn = 64\n\nmode = coupled  # trailing\nmodes = 0, 1, 8\nflag = true\n");
  REQUIRE(c.get_int("n", 0) == 64);
  REQUIRE(c.get_string("mode", "") == "coupled");
  REQUIRE(c.get_int_list("modes") == std::vector<long>{0, 1, 8});
  REQUIRE(c.get_bool("flag", false));
  REQUIRE(c.get_double("missing", 2.5) == 2.5);
  REQUIRE(c.has("n"));
  REQUIRE_FALSE(c.has("dt"));

  auto message = [](const std::string &text) {
    try {
      auto c = kv(text);
      c.get_int("n", 0);
      c.require_known({"n"});
    } catch (const InputError &e) {
      return std::string(e.what());
    }
    return std::string();
  };
  REQUIRE_THAT(message("n = 1\nsteps foo\n"), Catch::Matchers::StartsWith("test.cfg:2:"));
  REQUIRE_THAT(message("n = 1\nn = 2\n"), Catch::Matchers::StartsWith("test.cfg:2:"));
  REQUIRE_THAT(message("n = x\n"), Catch::Matchers::StartsWith("test.cfg:1:"));
  REQUIRE_THAT(message("n = 1\nbogus = 3\n"), Catch::Matchers::ContainsSubstring("bogus"));
  REQUIRE_THAT(message(" = 3\n"), Catch::Matchers::StartsWith("test.cfg:1:"));
  REQUIRE(message("n = 4\n").empty());
  REQUIRE_THROWS_AS(KeyValueConfig::read_file("/nonexistent/x.cfg"), InputError);
}

TEST_CASE("cli: state lists and run parameters", "[cli]") {
  REQUIRE(parse_states("1:-1, 2:1") == std::vector<std::pair<int, int>>{{1, -1}, {2, 1}});
  REQUIRE(parse_states("").empty());
  REQUIRE(parse_states("  ").empty());
  REQUIRE_THROWS_AS(parse_states("1-1"), InputError);
  RunConfig c;
  c.format = "xml";
  REQUIRE_THROWS_AS(c.validate(), InputError);
  c.format = "csv";
  c.grid_points = 3;
  REQUIRE_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("cli: output resolution", "[cli]") {
  REQUIRE(resolve_output("x.csv", "hydrogen", "csv") == "x.csv");
  const auto dir = std::filesystem::temp_directory_path() / "rdf_out_test";
  std::filesystem::remove_all(dir);
  ::setenv("RDF_OUTPUT_DIR", dir.c_str(), 1);
  const auto p = resolve_output("", "hydrogen", "json");
  REQUIRE(p == (dir / "hydrogen.json").string());
  REQUIRE(std::filesystem::is_directory(dir));
  ::unsetenv("RDF_OUTPUT_DIR");
  REQUIRE(resolve_output("", "hydrogen", "csv").empty());
}

TEST_CASE("cli: evolve configuration validation", "[cli]") {
  REQUIRE_THROWS_AS(EvolveConfig::from(kv("mode = sideways\n")), InputError);
  REQUIRE_THROWS_AS(EvolveConfig::from(kv("n = 100\n")), InputError);
  REQUIRE_THROWS_AS(EvolveConfig::from(kv("dt = -1\n")), InputError);
  REQUIRE_THROWS_AS(EvolveConfig::from(kv("colour = red\n")), InputError);
  const auto c = EvolveConfig::from(kv("n = 64\nlength = 32\n"));
  REQUIRE(c.dz() == 0.5);
  REQUIRE(c.charge() == Catch::Approx(-std::sqrt(7.2973525693e-3)));
}

TEST_CASE("cli: hydrogen table", "[cli]") {
  RunConfig c;
  c.states = {{1, -1}, {2, -2}};
  std::ostringstream out, log;
  REQUIRE(cmd_hydrogen(c, out, log) == 0);
  const auto L = lines(out.str());
  REQUIRE(L.size() == 3);
  REQUIRE(L[0].rfind("n,kappa_D,label,E_solver", 0) == 0);
  REQUIRE_THAT(L[1], Catch::Matchers::ContainsSubstring(",ok,"));

  // empty list: header only, success
  c.states = {};
  std::ostringstream e;
  REQUIRE(cmd_hydrogen(c, e, log) == 0);
  REQUIRE(lines(e.str()).size() == 1);

  // alpha outside the domain: a failing row, not an abort
  c.states = {{1, -1}};
  c.alpha = 1.5;
  std::ostringstream d;
  REQUIRE(cmd_hydrogen(c, d, log) == 1);
  REQUIRE_THAT(d.str(), Catch::Matchers::ContainsSubstring("domain_error"));

  c.alpha = 7.2973525693e-3;
  c.format = "json";
  std::ostringstream j;
  REQUIRE(cmd_hydrogen(c, j, log) == 0);
  REQUIRE_THAT(j.str(), Catch::Matchers::ContainsSubstring("\"delta_rel\""));
}

TEST_CASE("cli: algebra and audit reports", "[cli]") {
  std::ostringstream out, log;
  REQUIRE(cmd_algebra_check(out, log) == 0);
  REQUIRE_THAT(out.str(), Catch::Matchers::ContainsSubstring("\"passed\": true"));
  std::ostringstream bad;
  REQUIRE(cmd_algebra_check(bad, log, true) == 1);
  REQUIRE_THAT(bad.str(), Catch::Matchers::ContainsSubstring("\"fault_injected\": true"));

  RunConfig c;
  c.states = {{1, -1}};
  std::ostringstream audit;
  REQUIRE(cmd_energy_audit(c, audit, log) == 0);
  REQUIRE_THAT(audit.str(), Catch::Matchers::ContainsSubstring("\"em_remainder_asserted\": false"));
}

TEST_CASE("cli: evolve runs", "[cli]") {
  std::ostringstream log;
  {
    std::ostringstream out;
    REQUIRE(cmd_evolve(cfg_dir + "/zero_steps.cfg", out, log) == 0);
    const auto L = lines(out.str());
    REQUIRE(L.size() == 1);
    REQUIRE(L[0].rfind("t,norm,total_charge", 0) == 0);
  }
  {
    const auto p = temp_config("rdf_free.cfg", "mode = free\nn = 64\nlength = 32\ndt = 0.1\n"
                                               "steps = 200\noutput_every = 50\n");
    std::ostringstream out;
    REQUIRE(cmd_evolve(p, out, log) == 0);
    const auto L = lines(out.str());
    // one row per completed chunk of output_every steps
    REQUIRE(L.size() == 5);
    REQUIRE(fields(L[1])[0] == Catch::Approx(5.0));
    const double n0 = fields(L[1])[1];
    REQUIRE(n0 == Catch::Approx(0.5).epsilon(1e-12));
    for (std::size_t i = 2; i < L.size(); ++i)
      REQUIRE(std::abs(fields(L[i])[1] - n0) <= 1e-10);
  }
  {
    std::ostringstream out;
    REQUIRE_THROWS_AS(cmd_evolve(cfg_dir + "/coupled_cfl.cfg", out, log), CflError);
    REQUIRE(out.str().empty());
  }
  REQUIRE_THROWS_AS(cmd_evolve("/nonexistent.cfg", log, log), InputError);
}

TEST_CASE("cli: potential table", "[cli]") {
  RunConfig c;
  c.states = {{1, -1}};
  c.grid_points = 400;
  DensitySpec d;
  d.kind = "ball";
  d.radius = 2.0;
  std::ostringstream out, log;
  REQUIRE(cmd_potential(c, d, out, log) == 0);
  const auto L = lines(out.str());
  REQUIRE(L[0] == "r,rho,A0");
  const auto first = fields(L[1]);
  REQUIRE(first[2] == Catch::Approx(0.75).epsilon(1e-10));
  d.radius = -1;
  REQUIRE_THROWS_AS(cmd_potential(c, d, out, log), InputError);
}
