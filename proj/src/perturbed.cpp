#include "diraclab/perturbed.hpp"
#include "diraclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace diraclab {

PotentialKind parse_potential_kind(const std::string &name) {
  if (name == "scalar")
    return PotentialKind::scalar;
  if (name == "beta")
    return PotentialKind::beta;
  if (name == "offdiag")
    return PotentialKind::offdiag;
  throw DomainError("unknown potential kind '" + name + "' (scalar, beta, offdiag)");
}

std::string to_string(PotentialKind kind) {
  switch (kind) {
  case PotentialKind::scalar:
    return "scalar";
  case PotentialKind::beta:
    return "beta";
  case PotentialKind::offdiag:
    return "offdiag";
  }
  return "?";
}

PotentialCheck check_potential(const PotentialField &Q, int n, double L) {
  const Grid3 grid(n, L);
  PotentialCheck r{0.0, 0.0, 0.0, 0.0};
  const double K = Q.k_bound;
  const double inv_k = K > 0.0 ? 1.0 / K : 0.0;

  // each entry is differentiated spectrally as a scalar grid function
  std::vector<Mat4> values(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx)
    values[idx] = Q.q(grid.position(idx));

  std::vector<double> deriv_sum(grid.size() * 16, 0.0);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      ScalarGridFunction e(grid);
      bool nonzero = false;
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        e(0, idx) = values[idx](j, k);
        nonzero = nonzero || values[idx](j, k) != 0.0;
      }
      if (!nonzero)
        continue;
      for (int l = 0; l < 3; ++l) {
        std::array<int, 3> beta{0, 0, 0};
        beta[l] = 1;
        const ScalarGridFunction d = spectral_derivative(e, beta);
        for (std::size_t idx = 0; idx < grid.size(); ++idx)
          deriv_sum[idx * 16 + j * 4 + k] += std::abs(d(0, idx));
      }
    }

  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Mat4 &m = values[idx];
    r.hermitian_residual = std::max(r.hermitian_residual, (m - m.adjoint()).cwiseAbs().maxCoeff());
    const double w = std::pow(bracket(grid.position(idx)), 1.0 + Q.epsilon);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const double decay = w * std::abs(m(j, k)) * inv_k;
        const double deriv = deriv_sum[idx * 16 + j * 4 + k] * inv_k;
        r.decay_ratio = std::max(r.decay_ratio, decay);
        r.derivative_ratio = std::max(r.derivative_ratio, deriv);
        r.combined_ratio = std::max(r.combined_ratio, decay + deriv);
      }
  }
  return r;
}

PotentialField preset_potential(PotentialKind kind, double epsilon, double amplitude) {
  if (!(epsilon > 0.0))
    throw DomainError("preset_potential: epsilon must be positive");
  Mat4 M;
  switch (kind) {
  case PotentialKind::scalar:
    M = Mat4::Identity();
    break;
  case PotentialKind::beta:
    M = standard_dirac().beta;
    break;
  case PotentialKind::offdiag:
    M = standard_dirac().alpha[1];
    break;
  }
  const double max_entry = M.cwiseAbs().maxCoeff();
  const double K = std::abs(amplitude) * max_entry * (1.0 + std::sqrt(3.0) * (1.0 + epsilon));
  PotentialField Q{[M, amplitude, epsilon](const Vec3 &x) -> Mat4 {
                     return (amplitude * std::pow(1.0 + norm2(x), -0.5 * (1.0 + epsilon))) * M;
                   },
                   epsilon, K, to_string(kind)};

  const PotentialCheck c = check_potential(Q);
  const double slack = 1.0 + 1e-9;
  if (c.hermitian_residual > 1e-15 || c.decay_ratio > slack || c.derivative_ratio > slack ||
      c.combined_ratio > slack) {
    std::ostringstream msg;
    msg << "preset_potential(" << Q.label << "): sampled invariants fail (hermitian "
        << c.hermitian_residual << ", decay " << c.decay_ratio << ", derivative "
        << c.derivative_ratio << ", combined " << c.combined_ratio << ")";
    throw InvariantViolated(msg.str());
  }
  return Q;
}

SampledPotential::SampledPotential(const PotentialField &Q, const Grid3 &grid)
    : field_(Q), grid_(grid), values_(grid.size()) {
  for (std::size_t idx = 0; idx < grid.size(); ++idx)
    values_[idx] = Q.q(grid.position(idx));
}

GridFunction4 SampledPotential::apply(const GridFunction4 &f, double scale) const {
  GridFunction4 out = to_spatial(f);
  if (!(out.grid() == grid_))
    throw DomainError("SampledPotential: field lives on a different grid");
  for (std::size_t idx = 0; idx < grid_.size(); ++idx)
    set_node_vector(out, idx, scale * (values_[idx] * node_vector(out, idx)));
  return out;
}

std::vector<cplx> default_c_star_samples() {
  std::vector<cplx> z;
  for (double r : {4.0, 8.0, 16.0, 32.0}) {
    z.emplace_back(r, 0.5);
    z.emplace_back(-r, 0.5);
  }
  return z;
}

CStarEstimate estimate_c_star(const SampledPotential &Q, double s,
                              const std::vector<cplx> &z_samples,
                              const NormProxySettings &settings) {
  const double eps = Q.field().epsilon;
  if (!(s > 0.5 && s < 0.5 * (1.0 + eps))) {
    std::ostringstream msg;
    msg << "estimate_c_star: s = " << s << " outside (1/2, (1+eps)/2) = (0.5, "
        << 0.5 * (1.0 + eps) << ")";
    throw DomainError(msg.str());
  }
  CStarEstimate est{0.0, z_samples, {}, s};
  for (cplx z : z_samples) {
    if (!in_decomposition_set(z))
      throw DomainError("estimate_c_star: z samples must satisfy 2 <= |Re z|, 0 < |Im z| < 1");
    LinearMap<GridFunction4> op{
        [&Q, z](const GridFunction4 &f) { return Q.apply(apply_free_dirac(f, z)); },
        [&Q, z](const GridFunction4 &f) { return apply_free_dirac(Q.apply(f), std::conj(z)); }};
    const double v = weighted_operator_norm(op, Q.grid(), s, s, settings).value;
    est.per_z.push_back(v);
    est.value = std::max(est.value, v);
  }
  return est;
}

CouplingBound choose_t0(double c_star, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw DomainError("choose_t0: theta must lie in (0, 1)");
  if (!(c_star >= 0.0))
    throw DomainError("choose_t0: c_star must be nonnegative");
  if (c_star == 0.0)
    return {0.0, std::numeric_limits<double>::infinity(), theta, true};
  return {c_star, theta / c_star, theta, false};
}

NeumannResult neumann_apply(const GridFunction4 &f, const SampledPotential &Q, double t, cplx z,
                            const NeumannSettings &settings, const CouplingBound *bound) {
  if (!in_decomposition_set(z)) {
    std::ostringstream msg;
    msg << "neumann_apply: z = " << z << " outside 2 <= |Re z|, 0 < |Im z| < 1";
    throw DomainError(msg.str());
  }
  if (bound && std::abs(t) > bound->t0) {
    std::ostringstream msg;
    msg << "neumann_apply: |t| = " << std::abs(t) << " exceeds t0 = " << bound->t0;
    throw DomainError(msg.str());
  }
  const GridFunction4 f0 = to_spatial(f);
  const double fnorm = weighted_norm(f0, settings.s);
  const double stop = settings.tol * fnorm;

  NeumannResult out{GridFunction4(f0.grid()), f0, 1, {fnorm}, 0.0};
  GridFunction4 term = f0;
  int rises = 0;
  while (true) {
    GridFunction4 next =
        t == 0.0 ? GridFunction4(f0.grid()) : Q.apply(apply_free_dirac(term, z), -t);
    const double nn = weighted_norm(next, settings.s);
    out.next_term_norm = nn;
    if (nn <= stop)
      break;
    rises = nn > out.term_norms.back() ? rises + 1 : 0;
    if (rises >= 3) {
      std::ostringstream msg;
      msg << "neumann_apply: term norms grew three times in a row (|t| C+ >= 1?); last "
          << nn << " after " << out.terms_used << " terms";
      throw SeriesDiverging(msg.str());
    }
    if (out.terms_used >= settings.max_terms) {
      std::ostringstream msg;
      msg << "neumann_apply: no convergence within " << settings.max_terms
          << " terms (next term " << nn << ")";
      throw SeriesDiverging(msg.str());
    }
    out.series += next;
    out.term_norms.push_back(nn);
    ++out.terms_used;
    term = std::move(next);
  }
  out.result = apply_free_dirac(out.series, z);
  return out;
}

GridFunction4 apply_perturbed_hamiltonian(const GridFunction4 &u, const SampledPotential &Q,
                                          double t) {
  GridFunction4 h = apply_free_hamiltonian(u);
  if (t != 0.0)
    h += Q.apply(u, t);
  return h;
}

LinearMap<GridFunction4> perturbed_resolvent_map(const SampledPotential &Q, double t, cplx z,
                                                 const NeumannSettings &settings) {
  return {[&Q, t, z, settings](const GridFunction4 &f) {
            return neumann_apply(f, Q, t, z, settings).result;
          },
          [&Q, t, z, settings](const GridFunction4 &f) {
            return neumann_apply(f, Q, t, std::conj(z), settings).result;
          }};
}

std::vector<double> lagrange_weights_at_zero(const std::vector<double> &mus) {
  std::vector<double> w(mus.size(), 1.0);
  for (std::size_t q = 0; q < mus.size(); ++q)
    for (std::size_t r = 0; r < mus.size(); ++r)
      if (r != q) {
        if (mus[q] == mus[r])
          throw DomainError("lagrange_weights_at_zero: repeated mu");
        w[q] *= (0.0 - mus[r]) / (mus[q] - mus[r]);
      }
  return w;
}

std::vector<PerturbedRow> perturbed_boundary_sweep(const GridFunction4 &f,
                                                   const SampledPotential &Q, double t,
                                                   const std::vector<double> &lambdas,
                                                   const std::vector<double> &mus,
                                                   const PerturbedSweepOptions &options) {
  if (mus.empty())
    throw DomainError("perturbed_boundary_sweep: need at least one mu");
  for (double mu : mus)
    if (!(mu > 0.0 && mu < 1.0))
      throw DomainError("perturbed_boundary_sweep: each mu must lie in (0, 1)");
  const std::vector<double> weights = lagrange_weights_at_zero(mus);
  const double sg = sign_value(options.sign);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<PerturbedRow> rows;
  for (double lambda : lambdas) {
    if (std::abs(lambda) < 2.0)
      throw DomainError("perturbed_boundary_sweep: each |lambda| must be at least 2");
    GridFunction4 extrapolated(f.grid());
    int max_terms = 0;
    double proxy = nan;
    if (options.compute_proxy) {
      const double mu_min = *std::min_element(mus.begin(), mus.end());
      proxy = operator_norm_proxy(perturbed_resolvent_map(Q, t, cplx(lambda, sg * mu_min),
                                                          options.neumann),
                                  f.grid(), options.s, options.proxy)
                  .value;
    }
    for (std::size_t q = 0; q < mus.size(); ++q) {
      const NeumannResult r =
          neumann_apply(f, Q, t, cplx(lambda, sg * mus[q]), options.neumann);
      rows.push_back(
          {lambda, mus[q], t, options.s, r.terms_used, weighted_norm(r.result, -options.s), proxy});
      extrapolated.axpy(weights[q], r.result);
      max_terms = std::max(max_terms, r.terms_used);
    }
    rows.push_back(
        {lambda, 0.0, t, options.s, max_terms, weighted_norm(extrapolated, -options.s), proxy});
  }
  return rows;
}

void write_perturbed_csv(std::ostream &os, const std::vector<PerturbedRow> &rows) {
  os << "lambda,mu,t,s,terms_used,norm_minus_s,proxy\n" << std::scientific
     << std::setprecision(16);
  for (const auto &r : rows)
    os << r.lambda << ',' << r.mu << ',' << r.t << ',' << r.s << ',' << r.terms_used << ','
       << r.norm_minus_s << ',' << r.proxy << '\n';
}

} // namespace diraclab
