// llenhance: gradient-domain low-light enhancement from the command line.
//
//   llenhance enhance IN -o OUT [--beta 15 --tau 50 --range 0:255 ...]
//   llenhance verify IN OUT [--beta ... | --from-report run.jsonl]
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 verification failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "llenhance/llenhance.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

struct ImageDeleter {
  void operator()(lle_image* im) const { lle_image_free(im); }
};
using ImagePtr = std::unique_ptr<lle_image, ImageDeleter>;

int exit_code_for(lle_status st) {
  switch (st) {
    case LLE_OK: return kExitOk;
    case LLE_ERR_IO:
    case LLE_ERR_FORMAT:
    case LLE_ERR_INTERNAL: return kExitIo;
    default: return kExitUsage;
  }
}

int report_failure(lle_status st, const std::string& what) {
  std::cerr << "llenhance: " << what << ": " << lle_status_string(st) << ": " << lle_last_error()
            << "\n";
  return exit_code_for(st);
}

struct RangeArg {
  double lo = 0.0;
  double hi = 255.0;
};

bool parse_range(const std::string& text, RangeArg& out) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    out.lo = std::stod(a, &used);
    if (used != a.size()) return false;
    out.hi = std::stod(b, &used);
    if (used != b.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return out.lo < out.hi;
}

const char* mode_name(lle_gain_mode m) { return m == LLE_GAIN_LITERAL ? "literal" : "continuous"; }

const char* method_name(lle_method m) {
  switch (m) {
    case LLE_METHOD_HISTEQ: return "histeq";
    case LLE_METHOD_GAINMAP: return "gainmap";
    default: return "gradient";
  }
}

// Options shared by both subcommands.
struct CommonOptions {
  double beta = 15.0;
  double tau = 50.0;
  std::string range = "0:255";
  lle_gain_mode mode = LLE_GAIN_CONTINUOUS;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--beta", opt.beta, "maximum gradient gain (at intensity 0)")
      ->capture_default_str()
      ->check(CLI::Range(1.0, 1e12));
  cmd->add_option("--tau", opt.tau, "intensity above which the gain is 1")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--range", opt.range, "output intensity range MIN:MAX")->capture_default_str();
  const std::map<std::string, lle_gain_mode> modes{{"continuous", LLE_GAIN_CONTINUOUS},
                                                   {"literal", LLE_GAIN_LITERAL}};
  cmd->add_option("--mode", opt.mode, "gain formula: continuous|literal")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
}

struct EnhanceOptions {
  CommonOptions common;
  std::string input;
  std::string output;
  lle_method method = LLE_METHOD_GRADIENT;
  double tol = 1e-3;
  int max_sweeps = 10000;
  std::optional<double> omega;
  std::optional<double> anchor_mean;
  std::string report;
  int threads = 1;
};

int run_enhance(const EnhanceOptions& opt) {
  RangeArg range;
  if (!parse_range(opt.common.range, range)) {
    std::cerr << "llenhance: --range expects MIN:MAX with MIN < MAX, got '" << opt.common.range
              << "'\n";
    return kExitUsage;
  }
  lle_params params;
  lle_params_init(&params);
  params.beta = opt.common.beta;
  params.tau = opt.common.tau;
  params.mode = opt.common.mode;
  params.method = opt.method;
  params.range_min = range.lo;
  params.range_max = range.hi;
  params.tol = opt.tol;
  params.max_sweeps = opt.max_sweeps;
  if (opt.omega) params.omega = *opt.omega;
  params.threads = opt.threads;
  if (opt.anchor_mean) {
    params.has_anchor_mean = 1;
    params.anchor_mean = *opt.anchor_mean;
  }

  const auto t0 = std::chrono::steady_clock::now();
  lle_image* raw = nullptr;
  lle_status st = lle_image_load(opt.input.c_str(), &raw);
  if (st != LLE_OK) return report_failure(st, "cannot load " + opt.input);
  ImagePtr in(raw);

  lle_solve_report solve{};
  st = lle_enhance(in.get(), &params, &raw, &solve);
  if (st != LLE_OK) return report_failure(st, "enhancement failed");
  ImagePtr out(raw);

  st = lle_image_save(out.get(), opt.output.c_str(), range.lo, range.hi);
  if (st != LLE_OK) return report_failure(st, "cannot save " + opt.output);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  json line = {
      {"input", opt.input},
      {"output", opt.output},
      {"method", method_name(opt.method)},
      {"beta", params.beta},
      {"tau", params.tau},
      {"mode", mode_name(params.mode)},
      {"range", {range.lo, range.hi}},
      {"wall_ms", wall_ms},
      {"threads", params.threads},
  };
  if (solve.has_solver) {
    line["sweeps_used"] = solve.sweeps_used;
    line["final_residual"] = solve.final_residual;
    line["objective"] = solve.objective;
    line["converged"] = solve.converged != 0;
    line["anchor_mean"] = solve.anchor_mean;
    line["tol"] = params.tol;
    line["omega"] = solve.omega;
  } else {
    for (const char* key : {"sweeps_used", "final_residual", "objective", "converged"}) {
      line[key] = nullptr;
    }
  }
  if (opt.method == LLE_METHOD_HISTEQ) {
    line["method_note"] = "standard CDF histogram equalization on luminance";
  } else if (opt.method == LLE_METHOD_GAINMAP) {
    line["method_note"] = "per-pixel gain on luminance, no integration";
  }

  if (opt.report.empty()) {
    std::cout << line.dump() << "\n";
  } else {
    std::ofstream rep(opt.report, std::ios::app);
    rep << line.dump() << "\n";
    if (!rep) {
      std::cerr << "llenhance: cannot append report to " << opt.report << "\n";
      return kExitIo;
    }
  }
  if (solve.has_solver && !solve.converged) {
    std::cerr << "llenhance: warning: solver stopped after " << solve.sweeps_used
              << " sweeps without converging (residual " << solve.final_residual
              << "); wrote best iterate\n";
  }
  return kExitOk;
}

struct VerifyOptions {
  CommonOptions common;
  std::string input;
  std::string output;
  std::string from_report;
  double tol = -1.0;
  double solver_tol = 1e-3;
};

// Pulls beta/tau/mode/range/tol from the last report line naming `output`.
bool load_recorded(const VerifyOptions& opt, CommonOptions& common, double& solver_tol) {
  std::ifstream in(opt.from_report);
  if (!in) return false;
  std::optional<json> hit;
  std::string text;
  while (std::getline(in, text)) {
    if (text.empty()) continue;
    json line = json::parse(text, nullptr, false);
    if (line.is_discarded() || !line.is_object()) continue;
    if (line.value("output", std::string()) == opt.output || !hit) hit = std::move(line);
  }
  if (!hit) return false;
  const json& rec = *hit;
  common.beta = rec.value("beta", common.beta);
  common.tau = rec.value("tau", common.tau);
  common.mode = rec.value("mode", std::string("continuous")) == "literal" ? LLE_GAIN_LITERAL
                                                                          : LLE_GAIN_CONTINUOUS;
  if (rec.contains("range") && rec["range"].is_array() && rec["range"].size() == 2) {
    common.range = std::to_string(rec["range"][0].get<double>()) + ":" +
                   std::to_string(rec["range"][1].get<double>());
  }
  if (rec.contains("tol") && rec["tol"].is_number()) solver_tol = rec["tol"].get<double>();
  return true;
}

int run_verify(const VerifyOptions& opt_in) {
  VerifyOptions opt = opt_in;
  if (!opt.from_report.empty() && !load_recorded(opt, opt.common, opt.solver_tol)) {
    std::cerr << "llenhance: no usable record in " << opt.from_report << "\n";
    return kExitIo;
  }
  RangeArg range;
  if (!parse_range(opt.common.range, range)) {
    std::cerr << "llenhance: --range expects MIN:MAX with MIN < MAX\n";
    return kExitUsage;
  }
  lle_params params;
  lle_params_init(&params);
  params.beta = opt.common.beta;
  params.tau = opt.common.tau;
  params.mode = opt.common.mode;
  params.range_min = range.lo;
  params.range_max = range.hi;
  params.tol = opt.solver_tol;

  lle_image* raw = nullptr;
  lle_status st = lle_image_load(opt.input.c_str(), &raw);
  if (st != LLE_OK) return report_failure(st, "cannot load " + opt.input);
  ImagePtr in(raw);
  st = lle_image_load(opt.output.c_str(), &raw);
  if (st != LLE_OK) return report_failure(st, "cannot load " + opt.output);
  ImagePtr out(raw);

  lle_kkt_summary sum{};
  st = lle_verify(in.get(), out.get(), &params, opt.tol, &sum);
  if (st != LLE_OK) return report_failure(st, "verification could not run");

  const json line = {
      {"input", opt.input},           {"output", opt.output},
      {"beta", params.beta},          {"tau", params.tau},
      {"mode", mode_name(params.mode)}, {"range", {range.lo, range.hi}},
      {"tol", sum.tol},               {"interior", sum.interior},
      {"at_lower", sum.at_lower},     {"at_upper", sum.at_upper},
      {"unverifiable", sum.excluded}, {"violations", sum.violations},
      {"max_violation", sum.max_violation},
  };
  std::cout << line.dump() << "\n";
  return sum.violations > 0 ? kExitVerify : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-domain low-light image enhancement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lle_version()));

  EnhanceOptions enh;
  CLI::App* enhance = app.add_subcommand("enhance", "enhance an image");
  enhance->add_option("input", enh.input, "input image (PNG, PGM, PPM)")->required();
  enhance->add_option("-o,--output", enh.output, "output image")->required();
  add_common(enhance, enh.common);
  const std::map<std::string, lle_method> methods{{"gradient", LLE_METHOD_GRADIENT},
                                                  {"histeq", LLE_METHOD_HISTEQ},
                                                  {"gainmap", LLE_METHOD_GAINMAP}};
  enhance->add_option("--method", enh.method, "gradient|histeq|gainmap")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  enhance->add_option("--tol", enh.tol, "max projected residual at convergence")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  enhance->add_option("--max-sweeps", enh.max_sweeps, "sweep cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  enhance->add_option("--omega", enh.omega,
                      "SOR relaxation factor in (0, 2) (default: optimal for the image size)")
      ->check(CLI::Range(1e-9, 2.0 - 1e-9));
  enhance->add_option("--anchor-mean", enh.anchor_mean,
                      "target mean of the output luminance (default: input mean)");
  enhance->add_option("--report", enh.report, "append the JSON-lines report here");
  enhance->add_option("--threads", enh.threads,
                      "workers; > 1 uses red-black ordering (results may differ within tol)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  VerifyOptions ver;
  CLI::App* verify = app.add_subcommand("verify", "check optimality of a produced output");
  verify->add_option("input", ver.input, "original input image")->required();
  verify->add_option("output", ver.output, "image produced by 'enhance'")->required();
  add_common(verify, ver.common);
  verify->add_option("--from-report", ver.from_report,
                     "take beta/tau/mode/range from a JSON-lines report");
  verify->add_option("--tol", ver.tol,
                     "violation tolerance (default: 4 quantization steps + solver tol)");
  verify->add_option("--solver-tol", ver.solver_tol, "solver tolerance used for the output")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (enhance->parsed()) return run_enhance(enh);
  return run_verify(ver);
}
