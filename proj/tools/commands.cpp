#include "commands.hpp"

#include "diraclab/counterexample.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/grid_dump.hpp"
#include "diraclab/perturbed.hpp"
#include "diraclab/resolvent_ops.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>

namespace diraclab::cli {

namespace {

struct Check {
  std::ostream &report;
  bool ok = true;

  void operator()(const std::string &name, double residual, double tol) {
    const bool pass = residual <= tol;
    ok = ok && pass;
    report << std::left << std::setw(34) << name << " residual=" << std::scientific
           << std::setprecision(3) << residual << "  tol=" << tol << "  "
           << (pass ? "PASS" : "FAIL") << '\n';
  }
};

double rel(const Mat4 &a, const Mat4 &b) { return (a - b).norm() / std::max(1.0, b.norm()); }

Grid3 grid_of(const RunConfig &cfg) { return Grid3(cfg.grid_n, cfg.box_l); }

} // namespace

int cmd_verify_algebra(const RunConfig &cfg, std::ostream &report, const DiracMatrixSet &set) {
  Check check{report};
  const Mat4 id = Mat4::Identity();

  check("anticommutation", anticommutation_deviation(set), 1e-13);
  double herm = 0.0;
  for (int j = 0; j < 4; ++j)
    herm = std::max(herm, (set.generator(j) - set.generator(j).adjoint()).cwiseAbs().maxCoeff());
  check("hermitian generators", herm, 1e-15);

  double square = 0.0, idem = 0.0, annihilate = 0.0, resolution = 0.0, eigen = 0.0, trace = 0.0;
  for (int i = -8; i <= 8; ++i)
    for (int j = -8; j <= 8; ++j)
      for (int k = -8; k <= 8; ++k) {
        const Vec3 xi{0.5 * i, 0.5 * j, 0.5 * k};
        const double t = bracket(xi);
        const Mat4 L = free_symbol(xi, set).matrix;
        square = std::max(square, (L * L - t * t * id).norm());
        const Eigenprojections p = eigenprojections(xi, set);
        idem = std::max({idem, (p.plus * p.plus - p.plus).norm(),
                         (p.minus * p.minus - p.minus).norm()});
        annihilate = std::max(annihilate, (p.plus * p.minus).norm());
        resolution = std::max(resolution, (p.plus + p.minus - id).norm());
        eigen = std::max({eigen, (L * p.plus - t * p.plus).norm() / t,
                          (L * p.minus + t * p.minus).norm() / t});
        trace = std::max(trace, std::abs(p.plus.trace() - 2.0));
      }
  check("L0^2 = <xi>^2 I", square, 1e-13);
  check("Psi idempotent", idem, 1e-13);
  check("Psi+ Psi- = 0", annihilate, 1e-13);
  check("Psi+ + Psi- = I", resolution, 1e-13);
  check("L0 Psi = +-<xi> Psi", eigen, 1e-13);
  check("trace(Psi+) = 2", trace, 1e-13);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double inverse = 0.0, projection = 0.0, identity = 0.0;
  for (int q = 0; q < 1000; ++q) {
    const Vec3 xi{u(rng), u(rng), u(rng)};
    const cplx z1(u(rng), u(rng)), z2(u(rng), u(rng));
    if (on_spectrum(1.0 + norm2(xi), z1) || on_spectrum(1.0 + norm2(xi), z2))
      continue;
    const Mat4 L = free_symbol(xi, set).matrix;
    const Mat4 r1 = resolvent_symbol(xi, z1, set).matrix;
    const Mat4 r2 = resolvent_symbol(xi, z2, set).matrix;
    inverse = std::max(inverse, rel(r1, (L - z1 * id).inverse()));
    projection = std::max(projection, rel(resolvent_symbol_spectral(xi, z1, set), r1));
    identity = std::max(identity, rel(r1 - r2, (z1 - z2) * r1 * r2));
  }
  check("R(xi;z) = (L0 - z)^{-1}", inverse, 1e-12);
  check("projection form = rational form", projection, 1e-12);
  check("R(z1) - R(z2) = (z1-z2) R R", identity, 1e-12);

  report << (check.ok ? "verify-algebra: all identities hold\n" : "verify-algebra: FAILED\n");
  return check.ok ? exit_ok : exit_check_failed;
}

int cmd_counterexample(const RunConfig &cfg, std::ostream &out, std::ostream &report) {
  const auto rows = counterexample_table(cfg.n_list, cfg.sign);
  write_counterexample_csv(out, rows, cfg.sign);
  const double limit = 1.0 / (4.0 * M_PI);
  bool ok = true;
  for (const auto &r : rows) {
    const double bound = 5.0 / r.n * limit;
    const bool pass = r.abs_err_vs_limit <= bound;
    ok = ok && pass;
    report << "n=" << r.n << "  |value - limit| = " << std::scientific << std::setprecision(3)
           << r.abs_err_vs_limit << "  bound 5|limit|/n = " << bound << "  "
           << (pass ? "PASS" : "FAIL") << '\n';
  }
  return ok ? exit_ok : exit_check_failed;
}

namespace {

CouplingBound coupling_for(const RunConfig &cfg, const SampledPotential &Q, double s,
                           std::ostream &report) {
  double c_star;
  if (cfg.c_star) {
    c_star = *cfg.c_star;
  } else {
    const CStarEstimate est = estimate_c_star(Q, s);
    for (std::size_t q = 0; q < est.z_samples.size(); ++q)
      report << "C+ sample z = " << est.z_samples[q] << ": " << est.per_z[q] << '\n';
    c_star = est.value;
  }
  const CouplingBound b = choose_t0(c_star, cfg.theta);
  report << "C+ = " << b.c_star << ", theta = " << b.theta << ", t0 = " << b.t0 << '\n';
  return b;
}

double coupling_t(const RunConfig &cfg, const SampledPotential &Q, double s,
                  std::ostream &report, CouplingBound *bound) {
  if (cfg.t && *cfg.t == 0.0)
    return 0.0;
  const CouplingBound b = coupling_for(cfg, Q, s, report);
  if (bound)
    *bound = b;
  if (cfg.t)
    return *cfg.t;
  return b.degenerate ? 1.0 : 0.5 * b.t0;
}

} // namespace

int cmd_sweep(const RunConfig &cfg, std::ostream &out, std::ostream &report) {
  const Grid3 grid = grid_of(cfg);
  const GridFunction4 f = band_limited_bump(grid, cfg.band_k, Vec4(1, 0, 0, 0));
  report << std::setprecision(6);

  if (cfg.kind == "perturbed") {
    const SampledPotential Q(
        preset_potential(parse_potential_kind(cfg.potential), cfg.epsilon, cfg.amplitude), grid);
    const double t = coupling_t(cfg, Q, cfg.s, report, nullptr);
    PerturbedSweepOptions opt;
    opt.sign = cfg.sign;
    opt.s = cfg.s;
    opt.neumann.tol = cfg.tol;
    opt.neumann.s = cfg.s;
    opt.compute_proxy = cfg.proxy;
    opt.proxy.seed = cfg.seed;
    const auto rows = perturbed_boundary_sweep(f, Q, t, cfg.lambdas, cfg.mus, opt);
    write_perturbed_csv(out, rows);
    std::vector<double> ls, vs;
    for (const auto &r : rows)
      if (r.mu == 0.0) {
        ls.push_back(std::abs(r.lambda));
        vs.push_back(r.norm_minus_s);
      }
    report << "t = " << t << "\n";
    if (ls.size() >= 2)
      report << "extrapolated ||R_t f||_{-s} log-log slope: " << loglog_slope(ls, vs) << '\n';
    return exit_ok;
  }

  const SweepKind kind = cfg.kind == "dirac" ? SweepKind::dirac : SweepKind::schrodinger;
  SweepOptions opt;
  opt.compute_proxy = cfg.proxy;
  opt.proxy.seed = cfg.seed;
  std::vector<SweepRow> rows;
  for (double mu : cfg.mus) {
    auto part = lambda_sweep(kind, grid, cfg.s, cfg.lambdas, mu, {f}, opt);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  write_sweep_csv(out, rows);
  for (double mu : cfg.mus) {
    std::vector<double> ls, proxies, values;
    for (const auto &r : rows)
      if (r.mu == mu) {
        ls.push_back(std::abs(r.lambda));
        proxies.push_back(r.norm_proxy);
        values.push_back(r.f_norm_minus_s);
      }
    report << "mu = " << mu << '\n';
    if (cfg.proxy) {
      const auto [lo, hi] = std::minmax_element(proxies.begin(), proxies.end());
      report << "  proxy max/min: " << *hi / *lo << '\n';
      if (ls.size() >= 2)
        report << "  proxy log-log slope: " << loglog_slope(ls, proxies) << '\n';
    }
    if (ls.size() >= 2)
      report << "  ||R f||_{-s} log-log slope: " << loglog_slope(ls, values) << '\n';
  }
  return exit_ok;
}

ApplyMode parse_apply_mode(const std::string &name) {
  if (name == "resolvent")
    return ApplyMode::resolvent;
  if (name == "boundary")
    return ApplyMode::boundary;
  if (name == "hamiltonian")
    return ApplyMode::hamiltonian;
  throw ParseError("apply mode must be resolvent, boundary or hamiltonian");
}

int cmd_apply(const RunConfig &cfg, const ApplyRequest &req, std::ostream &report) {
  const GridFunction4 f = req.input == "-" ? read_grid_dump(std::cin) : read_grid_dump(req.input);
  GridFunction4 g(f.grid());
  switch (req.mode) {
  case ApplyMode::resolvent:
    g = apply_free_dirac(f, cfg.z);
    report << "applied R0(z), z = " << cfg.z << '\n';
    break;
  case ApplyMode::boundary: {
    if (!req.band_declared)
      throw BandLimitViolated("boundary mode needs a declared band limit (--band-k)");
    const double lambda = cfg.lambdas.front();
    g = apply_boundary_dirac(f, lambda, cfg.sign, cfg.band_k);
    report << "applied R0^" << (cfg.sign == Sign::plus ? '+' : '-') << "(" << lambda
           << ") with band limit " << cfg.band_k << '\n';
    break;
  }
  case ApplyMode::hamiltonian:
    g = apply_free_hamiltonian(f);
    g.axpy(-cfg.z, to_spatial(f));
    report << "applied H0 - z, z = " << cfg.z << '\n';
    break;
  }
  if (cfg.out == "-")
    write_grid_dump(std::cout, g);
  else
    write_grid_dump(cfg.out, g);
  return exit_ok;
}

int cmd_neumann(const RunConfig &cfg, std::ostream &report) {
  const Grid3 grid = grid_of(cfg);
  const SampledPotential Q(
      preset_potential(parse_potential_kind(cfg.potential), cfg.epsilon, cfg.amplitude), grid);
  CouplingBound bound{};
  const double t = coupling_t(cfg, Q, cfg.s, report, &bound);
  const GridFunction4 f = random_band_limited(grid, cfg.band_k, cfg.seed);
  NeumannSettings ns;
  ns.tol = cfg.tol;
  ns.s = cfg.s;
  const NeumannResult r = neumann_apply(f, Q, t, cfg.z, ns, t == 0.0 ? nullptr : &bound);
  GridFunction4 residual = apply_perturbed_hamiltonian(r.result, Q, t);
  residual.axpy(-cfg.z, r.result);
  residual -= f;
  const double rel_res = weighted_norm(residual, 0.0) / weighted_norm(f, 0.0);
  const bool pass = rel_res <= 10.0 * cfg.tol;
  report << std::scientific << std::setprecision(3) << "t = " << t << ", z = " << cfg.z
         << ", terms used = " << r.terms_used << '\n'
         << "||(H_t - z) R_t f - f||_0 / ||f||_0 = " << rel_res << "  tol " << 10.0 * cfg.tol
         << "  " << (pass ? "PASS" : "FAIL") << '\n';
  if (cfg.out != "-")
    write_grid_dump(cfg.out, r.result);
  return pass ? exit_ok : exit_check_failed;
}

int cmd_norm_estimate(const RunConfig &cfg, std::ostream &report) {
  const Grid3 grid = grid_of(cfg);
  NormProxySettings ps;
  ps.seed = cfg.seed;
  NormProxyResult r{};
  std::string what;
  if (cfg.kind == "dirac") {
    r = operator_norm_proxy(free_dirac_map(cfg.z), grid, cfg.s, ps);
    what = "||R0(z)||_(s,-s)";
  } else if (cfg.kind == "schrodinger") {
    r = operator_norm_proxy(free_schrodinger_map(cfg.z), grid, cfg.s, ps);
    what = "||(-Delta - z)^{-1}||_(s,-s)";
  } else {
    const SampledPotential Q(
        preset_potential(parse_potential_kind(cfg.potential), cfg.epsilon, cfg.amplitude), grid);
    const CStarEstimate est = estimate_c_star(Q, cfg.s, {cfg.z}, ps);
    report << std::setprecision(10) << "||Q R0(z)||_(s,s) at z = " << cfg.z << ": " << est.value
           << '\n';
    return exit_ok;
  }
  report << std::setprecision(10) << what << " at z = " << cfg.z << ", s = " << cfg.s << ": "
         << r.value << " (" << r.iterations << " iterations)\n";
  return exit_ok;
}

int run_guarded(const std::function<int()> &fn, std::ostream &err) {
  try {
    return fn();
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << '\n';
    return exit_parse;
  } catch (const BandLimitViolated &e) {
    err << "band limit violated: " << e.what() << '\n';
    return exit_band_limit;
  } catch (const OnSpectrum &e) {
    err << "on spectrum: " << e.what() << '\n';
    return exit_on_spectrum;
  } catch (const SpectralOverlap &e) {
    err << "spectral overlap: " << e.what() << '\n';
    return exit_spectral_overlap;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }
}

} // namespace diraclab::cli
