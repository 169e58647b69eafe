#pragma once

#include "diraclab/dirac_core.hpp"
#include "diraclab/plemelj.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace diraclab::cli {

// Everything a command needs. Config files hold flat "section.key = value"
// lines ('#' starts a comment); command-line flags override file values.
//
//   grid.n            = 64          nodes per axis (even)
//   grid.box_l        = 12          half length L of the box [-L, L)^3
//   weight.s          = 1           weight exponent s
//   sweep.kind        = dirac       dirac | schrodinger | perturbed
//   sweep.lambda      = 4,8,16,32,64
//   sweep.mu          = 0.5         comma list; perturbed sweeps extrapolate to 0
//   sweep.proxy       = true        compute operator norm proxies
//   band.k            = 2           band limit K of the test data
//   counterexample.n  = 10,100,1000
//   run.sign          = +           + | -
//   run.z             = 8,0.5       spectral parameter re,im
//   run.seed          = 12345
//   run.out           = -           output path, - for stdout
//   run.tol           = 1e-10       Neumann truncation tolerance
//   potential.kind    = scalar      scalar | beta | offdiag
//   potential.epsilon = 1
//   potential.amplitude = 1
//   potential.theta   = 0.5
//   potential.t       = (t0/2)      coupling; default half the threshold
//   potential.c_star  = (estimated) skips the C+ estimate when given
struct RunConfig {
  int grid_n = 64;
  double box_l = 12.0;
  double s = 1.0;

  std::string kind = "dirac";
  std::vector<double> lambdas{4, 8, 16, 32, 64};
  std::vector<double> mus{0.5};
  bool proxy = true;
  double band_k = 2.0;

  std::vector<int> n_list{10, 100, 1000};
  Sign sign = Sign::plus;
  cplx z{8.0, 0.5};
  std::uint64_t seed = 12345;
  std::string out = "-";
  double tol = 1e-10;

  std::string potential = "scalar";
  double epsilon = 1.0;
  double amplitude = 1.0;
  double theta = 0.5;
  std::optional<double> t;
  std::optional<double> c_star;

  /// Applies one "key = value" pair; throws ParseError on unknown keys or
  /// malformed values.
  void set(const std::string &key, const std::string &value);

  /// Throws ParseError when a module precondition cannot hold.
  void validate() const;
};

/// Reads a config file into cfg (values not mentioned keep their defaults).
void load_config(std::istream &is, RunConfig &cfg);
void load_config(const std::string &path, RunConfig &cfg);

std::vector<double> parse_double_list(const std::string &text);
std::vector<int> parse_int_list(const std::string &text);
cplx parse_complex(const std::string &text);
Sign parse_sign(const std::string &text);

} // namespace diraclab::cli
