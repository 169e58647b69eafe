#include "commands.hpp"

#include "diraclab/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace diraclab;
using namespace diraclab::cli;

namespace {

struct Flag {
  const char *name;
  const char *key;
  const char *help;
};

// command-line flags mapped onto config keys
const Flag flags[] = {
    {"--grid-n", "grid.n", "nodes per axis, even (default 64)"},
    {"--box-l", "grid.box_l", "box half length L (default 12)"},
    {"--s", "weight.s", "weight exponent s (default 1)"},
    {"--kind", "sweep.kind", "dirac | schrodinger | perturbed (default dirac)"},
    {"--lambda", "sweep.lambda", "comma list of lambdas (default 4,8,16,32,64)"},
    {"--mu", "sweep.mu", "comma list of mu values (default 0.5)"},
    {"--proxy", "sweep.proxy", "compute norm proxies: true | false (default true)"},
    {"--band-k", "band.k", "band limit K of the test data (default 2)"},
    {"--n", "counterexample.n", "comma list of indices (default 10,100,1000)"},
    {"--sign", "run.sign", "+ | - (default +)"},
    {"--z", "run.z", "spectral parameter re,im (default 8,0.5)"},
    {"--seed", "run.seed", "random seed (default 12345)"},
    {"--out", "run.out", "output path, - for stdout (default -)"},
    {"--tol", "run.tol", "Neumann truncation tolerance (default 1e-10)"},
    {"--potential", "potential.kind", "scalar | beta | offdiag (default scalar)"},
    {"--epsilon", "potential.epsilon", "potential decay exponent (default 1)"},
    {"--amplitude", "potential.amplitude", "potential amplitude (default 1)"},
    {"--theta", "potential.theta", "safety factor for t0 (default 0.5)"},
    {"--t", "potential.t", "coupling t (default t0/2)"},
    {"--c-star", "potential.c_star", "use this C+ instead of estimating it"},
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dirac resolvent laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  std::map<std::string, std::string> values;
  for (const Flag &f : flags)
    app.add_option(f.name, values[f.key], f.help);

  auto *verify = app.add_subcommand("verify-algebra", "check the Dirac matrix identities");
  bool corrupt_beta = false;
  verify->add_flag("--corrupt-beta", corrupt_beta, "perturb beta to exercise the failure path");

  auto *counter = app.add_subcommand("counterexample", "boundary quadratic forms vs +-i/(4 pi)");
  auto *sweep = app.add_subcommand("sweep", "lambda sweep of norm proxies and ||R f||_{-s}");

  auto *apply = app.add_subcommand("apply", "apply a resolvent to a grid dump");
  std::string input, mode = "resolvent";
  apply->add_option("--in", input, "input dump, - for stdin")->required();
  apply->add_option("--mode", mode, "resolvent | boundary | hamiltonian (default resolvent)");

  auto *neumann = app.add_subcommand("neumann", "perturbed resolvent by Neumann series");
  auto *norm = app.add_subcommand("norm-estimate", "operator norm proxy at a single z");

  for (auto *sub : {verify, counter, sweep, apply, neumann, norm})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? exit_ok : exit_usage;
  }

  return run_guarded(
      [&]() -> int {
        RunConfig cfg;
        if (!config_path.empty())
          load_config(config_path, cfg);
        bool band_declared = false;
        for (const Flag &f : flags)
          if (app.count(f.name) > 0) {
            cfg.set(f.key, values[f.key]);
            band_declared = band_declared || std::string(f.key) == "band.k";
          }
        cfg.validate();

        std::ofstream file;
        std::ostream *out = &std::cout;
        if (cfg.out != "-" && !apply->parsed() && !neumann->parsed()) {
          file.open(cfg.out);
          if (!file)
            throw Error("cannot open " + cfg.out);
          out = &file;
        }

        if (verify->parsed()) {
          DiracMatrixSet set = standard_representation();
          if (corrupt_beta)
            set.beta(0, 0) = 1.5;
          return cmd_verify_algebra(cfg, std::cout, set);
        }
        if (counter->parsed())
          return cmd_counterexample(cfg, *out, std::cerr);
        if (sweep->parsed())
          return cmd_sweep(cfg, *out, std::cerr);
        if (apply->parsed()) {
          ApplyRequest req{parse_apply_mode(mode), input, band_declared};
          return cmd_apply(cfg, req, std::cerr);
        }
        if (neumann->parsed())
          return cmd_neumann(cfg, std::cout);
        return cmd_norm_estimate(cfg, std::cout);
      },
      std::cerr);
}
