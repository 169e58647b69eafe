#pragma once

#include "diraclab/resolvent_ops.hpp"

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace diraclab {

/// Hermitian matrix potential Q(x) with decay exponent epsilon and a constant
/// K_bound for <x>^{1+eps} |q_jk(x)| + sum_l |d q_jk / dx_l| <= K_bound.
struct PotentialField {
  std::function<Mat4(const Vec3 &)> q;
  double epsilon;
  double k_bound;
  std::string label;
};

enum class PotentialKind { scalar, beta, offdiag };

PotentialKind parse_potential_kind(const std::string &name);
std::string to_string(PotentialKind kind);

/// Q(x) = amplitude * M * <x>^{-1-eps} with M = I (scalar), beta, or alpha_2
/// (off-diagonal, complex Hermitian). K_bound = |amplitude| max|M_jk|
/// (1 + sqrt(3)(1 + eps)). The invariants are checked on a 16^3 lattice over
/// [-8, 8)^3; failures raise InvariantViolated.
PotentialField preset_potential(PotentialKind kind, double epsilon, double amplitude);

struct PotentialCheck {
  double hermitian_residual;   // max |q - q^*| entry
  double decay_ratio;          // max <x>^{1+eps} |q_jk| / K_bound
  double derivative_ratio;     // max sum_l |d_l q_jk| / K_bound (spectral)
  double combined_ratio;       // max of the full left side / K_bound
};

/// Samples the invariants of a potential on an n^3 lattice of [-L, L)^3.
PotentialCheck check_potential(const PotentialField &Q, int n = 16, double L = 8.0);

/// Q restricted to the nodes of a grid.
class SampledPotential {
public:
  SampledPotential(const PotentialField &Q, const Grid3 &grid);

  const Grid3 &grid() const { return grid_; }
  const PotentialField &field() const { return field_; }
  const Mat4 &at(std::size_t idx) const { return values_[idx]; }

  /// Pointwise multiplication by scale * Q(x).
  GridFunction4 apply(const GridFunction4 &f, double scale = 1.0) const;

private:
  PotentialField field_;
  Grid3 grid_;
  std::vector<Mat4> values_;
};

struct CStarEstimate {
  double value;                  // max over the z samples
  std::vector<cplx> z_samples;
  std::vector<double> per_z;     // proxy of Q R0(z) as a map L2_s -> L2_s
  double s;
};

/// +-{4, 8, 16, 32} + 0.5i.
std::vector<cplx> default_c_star_samples();

/// Throws DomainError unless 1/2 < s < (1 + eps)/2 and each z lies in the
/// decomposition set.
CStarEstimate estimate_c_star(const SampledPotential &Q, double s,
                              const std::vector<cplx> &z_samples = default_c_star_samples(),
                              const NormProxySettings &settings = {});

struct CouplingBound {
  double c_star;
  double t0;     // +inf when c_star == 0
  double theta;
  bool degenerate; // c_star == 0: every t is admissible
};

/// t0 = theta / c_star. Throws DomainError for theta outside (0, 1) or c_star < 0.
CouplingBound choose_t0(double c_star, double theta = 0.5);

struct NeumannSettings {
  double tol = 1e-10;
  double s = 0.9;        // weight used to measure the terms
  int max_terms = 400;
};

struct NeumannResult {
  GridFunction4 result;            // R_t(z) f
  GridFunction4 series;            // g = sum (-t Q R0(z))^l f
  int terms_used;
  std::vector<double> term_norms;  // ||(-t Q R0)^l f||_s for the kept terms
  double next_term_norm;           // first discarded term
};

/// R_t(z) f = R0(z) (I + t Q R0(z))^{-1} f with the inverse expanded as a
/// Neumann series. Stops when the next term falls below tol ||f||_s. Throws
/// SeriesDiverging when the term norms grow three times in a row or
/// max_terms is reached, DomainError when z is outside the decomposition set
/// or |t| exceeds the supplied bound.
NeumannResult neumann_apply(const GridFunction4 &f, const SampledPotential &Q, double t, cplx z,
                            const NeumannSettings &settings = {},
                            const CouplingBound *bound = nullptr);

/// (H0 + t Q) u, spectral for H0 and pointwise for Q.
GridFunction4 apply_perturbed_hamiltonian(const GridFunction4 &u, const SampledPotential &Q,
                                          double t);

/// R_t(z) and R_t(conj z) as a linear map, for norm proxies.
LinearMap<GridFunction4> perturbed_resolvent_map(const SampledPotential &Q, double t, cplx z,
                                                 const NeumannSettings &settings = {});

struct PerturbedRow {
  double lambda;
  double mu;     // 0 marks the extrapolated row
  double t;
  double s;
  int terms_used;
  double norm_minus_s;
  double proxy;  // NaN when not computed
};

struct PerturbedSweepOptions {
  Sign sign = Sign::plus;
  double s = 0.9;
  NeumannSettings neumann;
  bool compute_proxy = false;
  NormProxySettings proxy;
};

/// For each lambda and mu: ||R_t(lambda +- i mu) f||_{-s}; then one row with
/// mu = 0 holding the norm of the Lagrange extrapolation of the fields to mu = 0.
/// The proxy, when requested, is the (s, -s) norm proxy at the smallest mu.
std::vector<PerturbedRow> perturbed_boundary_sweep(const GridFunction4 &f,
                                                   const SampledPotential &Q, double t,
                                                   const std::vector<double> &lambdas,
                                                   const std::vector<double> &mus,
                                                   const PerturbedSweepOptions &options = {});

/// Weights w_q with sum_q w_q p(mu_q) = p(0) for polynomials of degree < mus.size().
std::vector<double> lagrange_weights_at_zero(const std::vector<double> &mus);

void write_perturbed_csv(std::ostream &os, const std::vector<PerturbedRow> &rows);

} // namespace diraclab
