#pragma once
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

//! Run parameters for the command-line front end, and the key = value
//! configuration files read by `evolve`.
namespace rdf {

//! key = value lines; '#' starts a comment; blank lines ignored.
//! Parse errors are InputError with "source:line: message".
class KeyValueConfig {
public:
  static KeyValueConfig parse(std::istream &in, const std::string &source);
  static KeyValueConfig read_file(const std::string &path);

  bool has(const std::string &key) const;
  std::string get_string(const std::string &key, const std::string &fallback) const;
  double get_double(const std::string &key, double fallback) const;
  long get_int(const std::string &key, long fallback) const;
  bool get_bool(const std::string &key, bool fallback) const;
  std::vector<long> get_int_list(const std::string &key) const;
  //! InputError naming the first key (and its line) not in known
  void require_known(const std::set<std::string> &known) const;

private:
  struct Entry {
    std::string value;
    int line;
  };
  std::string m_source;
  std::map<std::string, Entry> m_entries;
  [[noreturn]] void fail(const std::string &key, const std::string &what) const;
};

//! Parameters shared by the hydrogen-facing subcommands
struct RunConfig {
  std::string subcommand;
  double alpha = 7.2973525693e-3;
  double mc2_eV = 510998.95;
  std::vector<std::pair<int, int>> states; // (n, kappa_D)
  std::size_t grid_points = 4000;
  std::optional<double> r_min;
  std::optional<double> r_max;
  double tol = 1e-15;
  std::string format = "csv"; // csv | json
  std::string out_path;       // empty: see resolve_output

  //! InputError on invalid numbers or format (state validity is checked per row)
  void validate() const;
};

//! "1:-1,2:-1" -> {(1,-1), (2,-1)}; empty or whitespace -> {}
std::vector<std::pair<int, int>> parse_states(const std::string &text);

//! --out if given; otherwise $RDF_OUTPUT_DIR/<stem>.<format> if the variable
//! is set; otherwise "" (standard output).
std::string resolve_output(const std::string &out, const std::string &stem,
                           const std::string &format);

//==============================================================================
//! Simulation parameters for `evolve`
struct EvolveConfig {
  std::string mode = "free"; // free | external | coupled
  std::size_t n = 256;
  double length = 16.0 * 3.141592653589793;
  double dt = 0.05;
  std::size_t steps = 100;
  std::size_t output_every = 10;
  double alpha = 7.2973525693e-3;
  double e = 0.0; // 0 -> -sqrt(alpha)

  std::string initial = "packet"; // packet | plane | none
  double packet_center = 0.5;     // fraction of the length
  double packet_width = 3.0;
  double packet_k0 = 0.0;
  std::size_t plane_mode = 0;

  std::string potential = "none"; // none | constant | gaussian (e A^0 profile)
  double potential_v0 = 0.0;
  double potential_center = 0.5;
  double potential_width = 2.0;

  std::string source = "none"; // none | gaussian (external charge, coupled only)
  double source_charge = 1.0;
  double source_center = 0.5;
  double source_width = 2.0;

  double damping_width = 0.0; // absorbing layer at both ends of the line
  double damping_strength = 0.0;
  bool neutralize = true;

  std::vector<long> modes; // FFT bins whose |amplitude| is written

  static EvolveConfig from(const KeyValueConfig &kv);
  double dz() const { return length / double(n); }
  double charge() const;
};

} // namespace rdf
