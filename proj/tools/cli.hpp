#ifndef EULER_SPECTRA_TOOLS_CLI_HPP
#define EULER_SPECTRA_TOOLS_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "euler_spectra/spectrum.hpp"

namespace euler_spectra::cli {

using nlohmann::json;

// A coefficient source as read from flags or a JSON file.
struct LoadedConfig {
  std::string mode;                 // flow | free | general
  std::optional<FlowConfig> flow;
  CoefficientSequence coeffs;
  json source;                      // normalized config, embedded in reports
  std::optional<cplx> recorded_eigenvalue;  // present when reading a saved `find` report
};

// Accepts a bare config object or a `find --json` report with a "config" member.
LoadedConfig config_from_json(const json& j);
LoadedConfig load_config_file(const std::string& path);
LoadedConfig config_from_pq(LatticeVector p, LatticeVector q, long window);

LatticeVector parse_lattice_vector(const std::string& text);
cplx parse_lambda(const std::string& text);  // "RE,IM" or "RE"

struct GridSpec {
  double re_min = 0, re_max = 0;
  long re_steps = 1;
  double im_min = 0, im_max = 0;
  long im_steps = 1;
  std::vector<cplx> points() const;  // row-major, real part fastest
};
GridSpec parse_grid(const std::string& text);  // re_min,re_max,re_steps,im_min,im_max,im_steps

std::string format_number(double x);  // %.17g

// Worker count: EULER_SPECTRA_THREADS if set (>= 1), otherwise the hardware concurrency.
unsigned worker_count();

struct CommonOptions {
  std::optional<std::string> p, q, config;
  long window = 64;
  long N = 256;
  long n_tail = 0;
  double tol = 1e-6;
  double cf_tol = 1e-14;
  bool json = false;
  std::optional<std::string> out;

  EvaluationOptions evaluation() const;
};

LoadedConfig resolve_config(const CommonOptions& options);

struct ScanOptions {
  std::string grid;
  bool det_t = true;
};

struct OracleOptions {
  double lambda_max = 10.0;
};

// Each command writes its report to `out`, diagnostics to `err`, and returns the exit status.
int cmd_validate(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_eval(const CommonOptions& options, const std::string& lambda, std::ostream& out, std::ostream& err);
int cmd_scan(const CommonOptions& options, const ScanOptions& scan, std::ostream& out, std::ostream& err);
int cmd_find(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_oracle(const CommonOptions& options, const OracleOptions& oracle, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; used by main() and by the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace euler_spectra::cli

#endif
