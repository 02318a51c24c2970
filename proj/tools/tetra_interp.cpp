// Command line front end for the interpolation pipeline.
//
// Subcommands:
//   pick      print the Pick matrix and its positive-definiteness report
//   blaschke  solve the scalar interpolation problem for one parameter zeta
//   royal     run the full pipeline and verify the produced function
//   verify    re-run verification of a serialized function against a data file
//   sample    CSV of boundary samples of a serialized function
//
// Exit codes: 0 success (and, for royal/verify, all checks passed), 1 checks
// failed, 2 input error, 3 exceptional parameter, 4 Pick matrix not positive
// definite, 5 center or base point search failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tetrainterp/errors.hpp"
#include "tetrainterp/io.hpp"

namespace {

using namespace tetrainterp;

struct Output {
  std::string path;  // empty means stdout
  void emit(const std::string& text) const {
    if (path.empty())
      std::cout << text;
    else
      write_text_file(path, text);
  }
};

struct VerifyConfig {
  std::uint64_t seed = 0;
  int n_omega = kDefaultOmegaGrid;
  int grid = 2048;
  std::vector<std::string> tol_overrides;
};

std::uint64_t seed_from_env() {
  const char* env = std::getenv("TETRA_INTERP_SEED");
  if (!env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw InvalidData("TETRA_INTERP_SEED must be an integer");
  return v;
}

// Applies "name=value" pairs to the verification and search options.
void apply_tolerances(const std::vector<std::string>& overrides, TetraVerifyOptions& tv,
                      CenterSearchOptions& cs) {
  for (const std::string& s : overrides) {
    const std::size_t pos = s.find('=');
    if (pos == std::string::npos) throw InvalidData("tolerance override must be name=value: " + s);
    const std::string name = s.substr(0, pos);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(s.substr(pos + 1), &used);
      if (used != s.size() - pos - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InvalidData("tolerance value is not a number: " + s);
    }
    if (value <= 0.0) throw InvalidData("tolerance must be positive: " + s);
    if (name == "interp") {
      tv.interp_tol = value;
      tv.blaschke.interp = value;
    } else if (name == "phasar") {
      tv.phasar_tol = value;
      tv.blaschke.phasar = value;
    } else if (name == "inner") {
      tv.blaschke.inner = value;
    } else if (name == "boundary") {
      tv.boundary_tol = value;
    } else if (name == "membership") {
      tv.membership_tol = value;
    } else if (name == "royal-match") {
      tv.royal_match_tol = value;
    } else if (name == "phasar-transfer") {
      tv.phasar_transfer_tol = value;
    } else if (name == "center-residual") {
      cs.residual_tol = value;
    } else {
      throw InvalidData("unknown tolerance name: " + name);
    }
  }
}

int run_pick(const std::string& input, const Output& out) {
  const BlaschkeData data = read_blaschke_data(input);
  const PdReport report = is_positive_definite(build_pick_matrix(data));
  out.emit(format_pick_report(data, report));
  return 0;
}

int run_blaschke(const std::string& input, double zeta_re, double zeta_im,
                 const VerifyConfig& cfg, const Output& out) {
  const BlaschkeData data = read_blaschke_data(input);
  TetraVerifyOptions tv;
  CenterSearchOptions cs;
  apply_tolerances(cfg.tol_overrides, tv, cs);
  tv.blaschke.circle_grid = cfg.grid;

  const Complex zeta(zeta_re, zeta_im);
  if (std::abs(std::abs(zeta) - 1.0) > 1e-9) throw InvalidData("--zeta must be unimodular");
  const Complex tau = choose_tau(data, build_pick_matrix(data), cfg.seed);
  const Parametrization par = build_parametrization(data, tau);
  const RationalFn phi = blaschke_solution(par, zeta);
  const BlaschkeReport report = verify_blaschke_solution(phi, data, tv.blaschke);
  out.emit(format_blaschke_result(zeta, par, phi, report));
  return report.pass ? 0 : 1;
}

int run_royal(const std::string& input, const VerifyConfig& cfg, const Output& out) {
  const RoyalData data = read_royal_data(input);
  TetraVerifyOptions tv;
  CenterSearchOptions cs;
  apply_tolerances(cfg.tol_overrides, tv, cs);
  tv.circle_grid = cfg.grid;
  tv.seed = cfg.seed;
  cs.n_omega = cfg.n_omega;

  const Complex tau = choose_tau(data.base, build_pick_matrix(data.base), cfg.seed);
  const Parametrization par = build_parametrization(data.base, tau);
  const CenterPoint center = solve_center(data, par, cs);
  const TetraInnerFn x = assemble(par, center);
  const RoyalNodeSet nodes = royal_nodes(x);
  const TetraReport report = verify_tetra_inner(x, data, tv);
  out.emit(format_royal_result(x, nodes, report));
  return report.pass ? 0 : 1;
}

int run_verify(const std::string& x_file, const std::string& data_file, const VerifyConfig& cfg,
               const Output& out) {
  const TetraInnerFn x = read_tetra_inner(x_file);
  const RoyalData data = read_royal_data(data_file);
  TetraVerifyOptions tv;
  CenterSearchOptions cs;
  apply_tolerances(cfg.tol_overrides, tv, cs);
  tv.circle_grid = cfg.grid;
  tv.seed = cfg.seed;
  const TetraReport report = verify_tetra_inner(x, data, tv);
  out.emit(format_tetra_report(report));
  return report.pass ? 0 : 1;
}

int run_sample(const std::string& x_file, int count, const Output& out) {
  const TetraInnerFn x = read_tetra_inner(x_file);
  out.emit(sample_csv(x, count));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational tetra-inner interpolation pipeline"};
  app.require_subcommand(1);

  std::uint64_t env_seed = 0;
  try {
    env_seed = seed_from_env();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  VerifyConfig cfg;
  cfg.seed = env_seed;
  Output out;
  std::string input, x_file, data_file;
  std::vector<double> zeta;
  int count = 0;

  const auto add_common = [&](CLI::App* cmd, bool with_omega) {
    cmd->add_option("--seed", cfg.seed, "random seed (env TETRA_INTERP_SEED as fallback)");
    cmd->add_option("--grid", cfg.grid, "circle grid size for verification")
        ->check(CLI::Range(64, 1 << 22));
    if (with_omega)
      cmd->add_option("--n-omega", cfg.n_omega, "omega grid size for the center search")
          ->check(CLI::Range(64, 1 << 22));
    cmd->add_option("--tol", cfg.tol_overrides, "tolerance override name=value (repeatable)");
    cmd->add_option("--out", out.path, "write the result to this file instead of stdout");
  };

  CLI::App* pick = app.add_subcommand("pick", "Pick matrix and positive-definiteness report");
  pick->add_option("input", input, "problem data file (JSON)")->required();
  pick->add_option("--out", out.path, "write the result to this file instead of stdout");

  CLI::App* blaschke = app.add_subcommand("blaschke", "solve for one unimodular parameter");
  blaschke->add_option("input", input, "problem data file (JSON)")->required();
  blaschke->add_option("--zeta", zeta, "parameter as two reals: re im")
      ->expected(2)
      ->required();
  add_common(blaschke, false);

  CLI::App* royal = app.add_subcommand("royal", "construct and verify a tetra-inner function");
  royal->add_option("input", input, "problem data file (JSON)")->required();
  add_common(royal, true);

  CLI::App* verify = app.add_subcommand("verify", "re-verify a serialized function");
  verify->add_option("function", x_file, "serialized function file (JSON)")->required();
  verify->add_option("data", data_file, "problem data file (JSON)")->required();
  add_common(verify, false);

  CLI::App* sample = app.add_subcommand("sample", "boundary samples as CSV");
  sample->add_option("function", x_file, "serialized function file (JSON)")->required();
  sample->add_option("count", count, "number of circle points")->required();
  sample->add_option("--out", out.path, "write the result to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(pick)) return run_pick(input, out);
    if (app.got_subcommand(blaschke)) return run_blaschke(input, zeta[0], zeta[1], cfg, out);
    if (app.got_subcommand(royal)) return run_royal(input, cfg, out);
    if (app.got_subcommand(verify)) return run_verify(x_file, data_file, cfg, out);
    if (app.got_subcommand(sample)) return run_sample(x_file, count, out);
  } catch (const ExceptionalParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotPositiveDefinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NotSolvable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const ExceptionalGeometry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const TauSearchExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
