#include "cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "euler_spectra/verify.hpp"

namespace euler_spectra::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_input, "cannot read " + what + " from '" + s + "'");
  }
}

long to_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_input, "cannot read " + what + " from '" + s + "'");
  }
}

json pair_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string fmt(cplx z) {
  return format_number(z.real()) + (z.imag() < 0 || std::signbit(z.imag()) ? " - " : " + ") +
         format_number(std::abs(z.imag())) + "i";
}

std::vector<cplx> read_complex_array(const json& j, const char* re_key, const char* im_key, std::size_t size,
                                     bool required) {
  std::vector<cplx> out(size, 0.0);
  if (!j.contains(re_key)) {
    if (required) fail(ErrorCode::invalid_input, std::string("general config needs '") + re_key + "'");
    return out;
  }
  const auto& re = j.at(re_key);
  if (!re.is_array() || re.size() != size) {
    fail(ErrorCode::invalid_input, std::string("'") + re_key + "' must have 2*window+1 = " + std::to_string(size) + " entries");
  }
  for (std::size_t i = 0; i < size; ++i) out[i] = re[i].get<double>();
  if (j.contains(im_key)) {
    const auto& im = j.at(im_key);
    if (!im.is_array() || im.size() != size) {
      fail(ErrorCode::invalid_input, std::string("'") + im_key + "' must match '" + re_key + "' in length");
    }
    for (std::size_t i = 0; i < size; ++i) out[i] += cplx(0.0, im[i].get<double>());
  }
  return out;
}

LatticeVector json_vector(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::invalid_input, std::string("flow config needs '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) fail(ErrorCode::invalid_input, std::string("'") + key + "' must be [int, int]");
  return {v[0].get<long>(), v[1].get<long>()};
}

}  // namespace

std::string format_number(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

LatticeVector parse_lattice_vector(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) fail(ErrorCode::invalid_input, "lattice vector must be 'x,y', got '" + text + "'");
  return {to_long(parts[0], "lattice component"), to_long(parts[1], "lattice component")};
}

cplx parse_lambda(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {to_double(parts[0], "lambda"), 0.0};
  if (parts.size() == 2) return {to_double(parts[0], "Re lambda"), to_double(parts[1], "Im lambda")};
  fail(ErrorCode::invalid_input, "lambda must be 'RE,IM' or 'RE', got '" + text + "'");
}

std::vector<cplx> GridSpec::points() const {
  const auto axis = [](double lo, double hi, long steps, long i) {
    return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  };
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(re_steps * im_steps));
  for (long j = 0; j < im_steps; ++j) {
    for (long i = 0; i < re_steps; ++i) out.emplace_back(axis(re_min, re_max, re_steps, i), axis(im_min, im_max, im_steps, j));
  }
  return out;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 6) fail(ErrorCode::invalid_input, "grid must be re_min,re_max,re_steps,im_min,im_max,im_steps");
  GridSpec g{to_double(parts[0], "re_min"), to_double(parts[1], "re_max"), to_long(parts[2], "re_steps"),
             to_double(parts[3], "im_min"), to_double(parts[4], "im_max"), to_long(parts[5], "im_steps")};
  if (g.re_steps < 1 || g.im_steps < 1) fail(ErrorCode::invalid_input, "grid step counts must be >= 1");
  return g;
}

unsigned worker_count() {
  if (const char* env = std::getenv("EULER_SPECTRA_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

LoadedConfig config_from_pq(LatticeVector p, LatticeVector q, long window) {
  LoadedConfig c;
  c.mode = "flow";
  c.flow = FlowConfig::make(p, q);
  c.coeffs = make_coefficients(*c.flow, window);
  c.source = {{"mode", "flow"}, {"p", {p.x, p.y}}, {"q", {q.x, q.y}}, {"window", window}};
  return c;
}

LoadedConfig config_from_json(const json& input) {
  if (!input.is_object()) fail(ErrorCode::invalid_input, "config must be a JSON object");
  std::optional<cplx> recorded;
  if (input.contains("lambda_star")) {
    const auto& l = input.at("lambda_star");
    recorded = cplx(l.at(0).get<double>(), l.at(1).get<double>());
  }
  const json& j = input.contains("config") ? input.at("config") : input;
  const std::string mode = j.value("mode", std::string("flow"));
  const long window = j.value("window", 64L);
  LoadedConfig c;
  if (mode == "flow") {
    c = config_from_pq(json_vector(j, "p"), json_vector(j, "q"), window);
  } else if (mode == "free") {
    c.mode = "free";
    c.coeffs = CoefficientSequence::free_lattice();
    c.source = {{"mode", "free"}};
  } else if (mode == "general") {
    if (window < 0) fail(ErrorCode::invalid_input, "window must be >= 0");
    const auto size = static_cast<std::size_t>(2 * window + 1);
    auto slope = read_complex_array(j, "b_re", "b_im", size, true);
    auto constant = read_complex_array(j, "b0_re", "b0_im", size, false);
    auto c_values = read_complex_array(j, "c", "c_im", size, true);
    if (!j.contains("tail_constant")) fail(ErrorCode::invalid_input, "general config needs 'tail_constant'");
    c.mode = "general";
    c.coeffs = CoefficientSequence::general(window, constant, slope, c_values, j.at("tail_constant").get<double>());
    c.source = j;
  } else {
    fail(ErrorCode::invalid_input, "unknown mode '" + mode + "' (flow, free or general)");
  }
  c.recorded_eigenvalue = recorded;
  return c;
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::invalid_input, "cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_input, "config file '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

EvaluationOptions CommonOptions::evaluation() const {
  EvaluationOptions e;
  e.fredholm_n = N;
  e.cross_tol = tol;
  e.jost.n_tail = n_tail;
  e.cf.tol = cf_tol;
  return e;
}

LoadedConfig resolve_config(const CommonOptions& options) {
  if (options.config) {
    if (options.p || options.q) fail(ErrorCode::invalid_input, "give either --config or --p/--q, not both");
    return load_config_file(*options.config);
  }
  if (!options.p || !options.q) fail(ErrorCode::invalid_input, "need --p and --q, or --config");
  return config_from_pq(parse_lattice_vector(*options.p), parse_lattice_vector(*options.q), options.window);
}

namespace {

void print_tolerances(const CommonOptions& o, std::ostream& out) {
  out << "tolerances: cross-validation " << o.tol << ", continued fraction " << o.cf_tol
      << ", sections N = " << o.N << " (" << o.N / 2 << "/" << o.N << "/" << 2 * o.N << ")"
      << ", N_tail " << (o.n_tail > 0 ? std::to_string(o.n_tail) : std::string("auto")) << "\n";
}

json tolerances_json(const CommonOptions& o) {
  return {{"cross_tol", o.tol}, {"cf_tol", o.cf_tol}, {"N", o.N}, {"n_tail", o.n_tail}};
}

json record_json(const FiveFunctionRecord& r) {
  json j;
  j["lambda"] = pair_json(r.lambda);
  j["det_K"] = pair_json(r.det_K);
  j["det_T"] = r.det_T ? pair_json(*r.det_T) : json(nullptr);
  j["evans"] = pair_json(r.evans);
  j["jost"] = pair_json(r.jost);
  j["g_fun"] = r.g_fun ? pair_json(*r.g_fun) : json(nullptr);
  j["N"] = r.N_used;
  j["N_tail"] = r.N_tail_used;
  j["depth"] = r.depth_used;
  j["max_pairwise_gap"] = r.max_pairwise_gap;
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

int cmd_validate(const CommonOptions& options, std::ostream& out, std::ostream&) {
  if (options.config) {
    const LoadedConfig c = load_config_file(*options.config);  // flow configs fail here if inadmissible
    if (options.json) {
      out << json{{"admissible", true}, {"mode", c.mode}, {"config", c.source}}.dump(2) << "\n";
    } else {
      out << c.coeffs.describe() << "\nadmissible\n";
    }
    return 0;
  }
  if (!options.p || !options.q) fail(ErrorCode::invalid_input, "need --p and --q, or --config");
  const LatticeVector p = parse_lattice_vector(*options.p);
  const LatticeVector q = parse_lattice_vector(*options.q);
  const AdmissibilityReport rep = validate_pair(p, q);
  if (options.json) {
    json j{{"p", {p.x, p.y}},
           {"q", {q.x, q.y}},
           {"admissible", rep.admissible()},
           {"norm_condition", rep.norm_condition},
           {"shift_condition", rep.shift_condition},
           {"first_violation", rep.first_violation ? json(*rep.first_violation) : json(nullptr)},
           {"checked_up_to", rep.checked_up_to}};
    if (rep.admissible()) j["alpha"] = normalization_alpha(p, q);
    out << j.dump(2) << "\n";
  } else {
    out << "p = " << to_string(p) << ", q = " << to_string(q) << "\n" << rep.summary() << "\n";
    if (rep.admissible()) out << "alpha = " << format_number(normalization_alpha(p, q)) << "\n";
  }
  return rep.admissible() ? 0 : 1;
}

int cmd_eval(const CommonOptions& options, const std::string& lambda_text, std::ostream& out, std::ostream&) {
  const cplx lambda = parse_lambda(lambda_text);
  const LoadedConfig c = resolve_config(options);
  const FiveFunctionRecord r = evaluate_all(lambda, c.coeffs, options.evaluation());
  const bool ok = r.max_pairwise_gap <= options.tol;
  if (options.json) {
    json j = record_json(r);
    j["config"] = c.source;
    j["tolerances"] = tolerances_json(options);
    j["pass"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "lambda    = " << fmt(lambda) << "\n";
    out << "det(I-K)  = " << fmt(r.det_K) << "\n";
    if (r.det_T) out << "det(I-T)  = " << fmt(*r.det_T) << "\n";
    out << "evans     = " << fmt(r.evans) << "\n";
    out << "jost      = " << fmt(r.jost) << "\n";
    out << "G         = " << (r.g_fun ? fmt(*r.g_fun) : std::string("undefined (needs rho and |arg lambda| < pi/2)")) << "\n";
    out << "N = " << r.N_used << ", N_tail = " << r.N_tail_used << ", depth = " << r.depth_used
        << ", min pivot = " << format_number(r.min_pivot) << "\n";
    print_tolerances(options, out);
    out << "max pairwise gap = " << format_number(r.max_pairwise_gap) << (ok ? " (ok)" : " (exceeds tolerance)") << "\n";
  }
  return ok ? 0 : 4;
}

int cmd_scan(const CommonOptions& options, const ScanOptions& scan, std::ostream& out, std::ostream& err) {
  const GridSpec grid = parse_grid(scan.grid);
  const LoadedConfig c = resolve_config(options);
  EvaluationOptions eval = options.evaluation();
  eval.compute_det_t = scan.det_t;

  struct Row {
    cplx lambda;
    bool skipped = false;
    std::optional<FiveFunctionRecord> record;
    std::string error;
  };
  std::vector<Row> rows;
  for (cplx l : grid.points()) {
    Row row;
    row.lambda = l;
    row.skipped = distance_to_essential(l) <= eval.jost.eps_ess;
    rows.push_back(row);
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      Row& row = rows[i];
      if (row.skipped) continue;
      try {
        row.record = evaluate_all(row.lambda, c.coeffs, eval);
      } catch (const SpectralError& e) {
        row.error = e.what();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(1, rows.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t failures = 0;
  for (const Row& row : rows) {
    if (row.skipped) err << "skip lambda = " << fmt(row.lambda) << ": within eps_ess of the essential spectrum [-2i, 2i]\n";
    else if (!row.error.empty()) ++failures;
  }

  if (options.json) {
    json arr = json::array();
    for (const Row& row : rows) {
      if (row.skipped) continue;
      if (row.record) {
        arr.push_back(record_json(*row.record));
      } else {
        arr.push_back({{"lambda", pair_json(row.lambda)}, {"error", row.error}});
      }
    }
    out << json{{"config", c.source}, {"tolerances", tolerances_json(options)}, {"points", arr}}.dump(2) << "\n";
  } else {
    out << "lambda_re,lambda_im,detK_re,detK_im,detT_re,detT_im,evans_re,evans_im,jost_re,jost_im,g_re,g_im,gap,N,N_tail,depth\n";
    const auto f = [](double x) { return format_number(x); };
    for (const Row& row : rows) {
      if (row.skipped) continue;
      out << f(row.lambda.real()) << "," << f(row.lambda.imag());
      if (!row.record) {
        std::string message = row.error;
        for (char& ch : message) if (ch == '"') ch = '\'';
        out << std::string(14, ',') << ",\"" << message << "\"\n";
        continue;
      }
      const FiveFunctionRecord& r = *row.record;
      out << "," << f(r.det_K.real()) << "," << f(r.det_K.imag());
      if (r.det_T) out << "," << f(r.det_T->real()) << "," << f(r.det_T->imag());
      else out << ",,";
      out << "," << f(r.evans.real()) << "," << f(r.evans.imag()) << "," << f(r.jost.real()) << "," << f(r.jost.imag());
      if (r.g_fun) out << "," << f(r.g_fun->real()) << "," << f(r.g_fun->imag());
      else out << ",,";
      out << "," << f(r.max_pairwise_gap) << "," << r.N_used << "," << r.N_tail_used << "," << r.depth_used << "\n";
    }
  }
  if (failures > 0) err << failures << " grid point(s) failed; see the error column\n";
  return failures == 0 ? 0 : 3;
}

int cmd_find(const CommonOptions& options, std::ostream& out, std::ostream& err) {
  const LoadedConfig c = resolve_config(options);
  EvaluationOptions eval = options.evaluation();
  BisectionOptions bis;
  bis.cf = eval.cf;
  EigenvalueResult r;
  try {
    r = find_real_eigenvalue(c.coeffs, bis, eval);
  } catch (const SpectralError& e) {
    if (e.code() != ErrorCode::precondition) throw;
    err << "no positive eigenvalue found: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  const double star = r.lambda_star.real();
  const RefineResult refined = refine_zero(c.coeffs, r.lambda_star, 0.5, 100, eval.jost);
  const WindingResult wind = winding_number(c.coeffs, {0.1, -1.0}, {std::max(5.0, 2 * star), 1.0}, 32, eval.jost);
  r.winding = wind.winding;

  struct OracleRow {
    long N;
    std::optional<double> root;
  };
  std::vector<OracleRow> oracle;
  for (long N : {32L, 64L, 128L}) {
    const auto roots = finite_section_oracle(c.coeffs, N, std::max(10.0, 2 * star));
    oracle.push_back({N, roots.empty() ? std::nullopt : std::optional<double>(roots.back())});
  }
  const double oracle_gap = oracle.back().root ? std::abs(*oracle.back().root - star) : INFINITY;
  const bool ok = r.residual <= 1e-6 && wind.winding == 1 && oracle_gap <= 1e-4 && refined.converged &&
                  std::abs(refined.lambda - r.lambda_star) <= 1e-8 && r.max_scaled_value <= 1e-5;

  if (options.json) {
    json o = json::array();
    for (const auto& row : oracle) {
      o.push_back({{"N", row.N},
                   {"lambda_N", row.root ? json(*row.root) : json(nullptr)},
                   {"error", row.root ? json(std::abs(*row.root - star)) : json(nullptr)}});
    }
    json j{{"config", c.source},
           {"method", r.method},
           {"lambda_star", pair_json(r.lambda_star)},
           {"phi", r.phi_at_star},
           {"bisection_steps", r.bisection_steps},
           {"residual", r.residual},
           {"proportionality_defect", r.sequence.proportionality_defect},
           {"refined", pair_json(refined.lambda)},
           {"refine_converged", refined.converged},
           {"refine_move", std::abs(refined.lambda - r.lambda_star)},
           {"winding", wind.winding},
           {"winding_rectangle", {{0.1, -1.0}, {std::max(5.0, 2 * star), 1.0}}},
           {"oracle", o},
           {"five_values", record_json(r.five_values)},
           {"scale", r.scale},
           {"max_scaled_value", r.max_scaled_value},
           {"tolerances", tolerances_json(options)},
           {"pass", ok}};
    out << j.dump(2) << "\n";
  } else {
    out << "lambda*            = " << format_number(star) << "  (bisection on phi, " << r.bisection_steps << " steps, phi = "
        << format_number(r.phi_at_star) << ")\n";
    out << "eigensequence      : residual " << format_number(r.residual) << ", z+/z- proportionality defect "
        << format_number(r.sequence.proportionality_defect) << "\n";
    out << "Evans refinement   : " << fmt(refined.lambda) << ", moved " << format_number(std::abs(refined.lambda - r.lambda_star))
        << (refined.converged ? "" : " (" + refined.detail + ")") << "\n";
    out << "winding number     : " << wind.winding << " over [0.1, " << format_number(std::max(5.0, 2 * star))
        << "] x [-1, 1]i (" << wind.samples << " samples, min |E| " << format_number(wind.min_abs_boundary) << ")\n";
    out << "values at lambda*  : max |value|/scale " << format_number(r.max_scaled_value) << " (scale " << format_number(r.scale)
        << ")\n";
    out << "finite-section oracle:\n     N  lambda_N                 |lambda_N - lambda*|\n";
    for (const auto& row : oracle) {
      char line[128];
      if (row.root) std::snprintf(line, sizeof line, "%6ld  %-23.17g  %.3e\n", row.N, *row.root, std::abs(*row.root - star));
      else std::snprintf(line, sizeof line, "%6ld  (no positive root)\n", row.N);
      out << line;
    }
    print_tolerances(options, out);
    out << (ok ? "result: positive eigenvalue confirmed\n" : "result: cross-checks FAILED\n");
  }
  return ok ? 0 : 4;
}

int cmd_verify(const CommonOptions& options, std::ostream& out, std::ostream&) {
  const LoadedConfig c = resolve_config(options);
  VerifyOptions v;
  v.evaluation = options.evaluation();
  v.expected_eigenvalue = c.recorded_eigenvalue;
  const auto results = run_invariant_suite(c.coeffs, v);
  const bool ok = all_passed(results);
  if (options.json) {
    json arr = json::array();
    for (const auto& r : results) {
      json item{{"name", r.name}, {"pass", r.pass}, {"value", r.value}, {"tol", r.tol}, {"detail", r.detail}};
      if (r.error) item["error"] = to_string(*r.error);
      arr.push_back(item);
    }
    out << json{{"config", c.source}, {"tolerances", tolerances_json(options)}, {"checks", arr}, {"pass", ok}}.dump(2) << "\n";
  } else {
    std::size_t passed = 0;
    for (const auto& r : results) {
      passed += r.pass;
      char head[160];
      std::snprintf(head, sizeof head, "%-4s  %-68s", r.pass ? "ok" : "FAIL", r.name.c_str());
      out << head;
      if (!r.error) {
        char nums[64];
        std::snprintf(nums, sizeof nums, "  %.3g <= %g", r.value, r.tol);
        out << nums;
      }
      out << "  " << r.detail << "\n";
    }
    print_tolerances(options, out);
    out << passed << "/" << results.size() << " checks passed\n";
  }
  return ok ? 0 : failure_exit_code(results);
}

int cmd_oracle(const CommonOptions& options, const OracleOptions& oracle, std::ostream& out, std::ostream&) {
  const LoadedConfig c = resolve_config(options);
  const auto roots = finite_section_oracle(c.coeffs, options.N, oracle.lambda_max);
  if (options.json) {
    out << json{{"config", c.source}, {"N", options.N}, {"lambda_max", oracle.lambda_max}, {"roots", roots}}.dump(2) << "\n";
  } else {
    out << "positive roots of the [-" << options.N << ", " << options.N << "] section in (0, "
        << format_number(oracle.lambda_max) << "]:\n";
    for (double r : roots) out << format_number(r) << "\n";
    if (roots.empty()) out << "(none)\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral functions of the linearized Euler slice operator"};
  app.require_subcommand(1);
  CommonOptions common;
  ScanOptions scan;
  OracleOptions oracle;
  std::string lambda;

  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--p", common.p, "lattice vector p as x,y");
    sub->add_option("--q", common.q, "lattice vector q as x,y");
    sub->add_option("--config", common.config, "JSON config (flow, free or general mode)");
    sub->add_option("--window", common.window, "stored coefficient window for --p/--q")->capture_default_str();
    sub->add_flag("--json", common.json, "JSON output");
    sub->add_option("--out", common.out, "write the report to a file");
  };
  const auto add_numerics = [&](CLI::App* sub) {
    sub->add_option("--N", common.N, "Fredholm section half-width (even; sections N/2, N, 2N)")->capture_default_str();
    sub->add_option("--n-tail", common.n_tail, "Jost truncation index (0 = automatic)")->capture_default_str();
    sub->add_option("--tol", common.tol, "cross-validation tolerance")->capture_default_str();
    sub->add_option("--cf-tol", common.cf_tol, "continued-fraction tolerance")->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "check admissibility of (p, q)");
  add_config(validate);
  auto* eval = app.add_subcommand("eval", "evaluate all five functions at one lambda");
  add_config(eval);
  add_numerics(eval);
  eval->add_option("--lambda", lambda, "RE,IM (use --lambda=-1,0.5 for a negative real part)")->required();
  auto* scanc = app.add_subcommand("scan", "evaluate on a grid and emit CSV or JSON");
  add_config(scanc);
  add_numerics(scanc);
  scanc->add_option("--grid", scan.grid, "re_min,re_max,re_steps,im_min,im_max,im_steps")->required();
  scanc->add_flag("!--no-det-t", scan.det_t, "skip det(I - T)");
  auto* find = app.add_subcommand("find", "locate the positive eigenvalue and cross-check it");
  add_config(find);
  add_numerics(find);
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_config(verify);
  add_numerics(verify);
  auto* oraclec = app.add_subcommand("oracle", "finite-section eigenvalues");
  add_config(oraclec);
  oraclec->add_option("--N", common.N, "section half-width")->capture_default_str();
  oraclec->add_option("--lambda-max", oracle.lambda_max, "scan limit")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (oraclec->parsed() && common.N == 256) common.N = 128;

  std::ofstream file;
  std::ostream* sink = &out;
  if (common.out) {
    file.open(*common.out);
    if (!file) {
      err << "cannot write '" << *common.out << "'\n";
      return 2;
    }
    sink = &file;
  }

  try {
    if (validate->parsed()) return cmd_validate(common, *sink, err);
    if (eval->parsed()) return cmd_eval(common, lambda, *sink, err);
    if (scanc->parsed()) return cmd_scan(common, scan, *sink, err);
    if (find->parsed()) return cmd_find(common, *sink, err);
    if (verify->parsed()) return cmd_verify(common, *sink, err);
    if (oraclec->parsed()) return cmd_oracle(common, oracle, *sink, err);
  } catch (const SpectralError& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "config: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace euler_spectra::cli
