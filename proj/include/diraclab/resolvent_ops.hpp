#pragma once

#include "diraclab/fourier_grid.hpp"
#include "diraclab/plemelj.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace diraclab {

// ---------------------------------------------------------------------------
// Fourier multipliers

/// Applies a matrix-valued symbol p(xi) on the frequency side.
GridFunction4 apply_multiplier(const GridFunction4 &f, const std::function<Mat4(const Vec3 &)> &p);

/// Scalar multiplier acting componentwise.
template <int N>
GridField<N> apply_scalar_multiplier(const GridField<N> &f,
                                     const std::function<cplx(const Vec3 &)> &m);

/// H0 = F^{-1} L0(xi) F.
GridFunction4 apply_free_hamiltonian(const GridFunction4 &f,
                                     const DiracMatrixSet &set = standard_dirac());

/// R0(z) f = F^{-1} R(xi; z) F f. Throws OnSpectrum if z^2 meets <xi>^2 on the grid.
GridFunction4 apply_free_dirac(const GridFunction4 &f, cplx z,
                               const DiracMatrixSet &set = standard_dirac());

/// Mass of f-hat outside <xi> <= K relative to the total, as a norm ratio.
double out_of_band_ratio(const GridFunction4 &f, double K);

inline constexpr double band_limit_tolerance = 1e-12;

/// R0^{+-}(lambda) f for f band-limited to <xi> <= K and |lambda| >= 2K: the
/// multiplier R(xi; lambda) is regular on the band, so it is evaluated
/// directly; modes outside the band (mass below band_limit_tolerance) are
/// dropped. The result does not depend on the sign.
/// Throws BandLimitViolated, SpectralOverlap (K > |lambda|/2) or DomainError (K <= 1).
GridFunction4 apply_boundary_dirac(const GridFunction4 &f, double lambda, Sign sign, double K,
                                   const DiracMatrixSet &set = standard_dirac());

/// Lagrange extrapolation of R0(lambda +- i mu) f to mu = 0 through
/// mu in {4e-2, 2e-2, 1e-2}; an approximation for general f.
GridFunction4 extrapolated_boundary_dirac(const GridFunction4 &f, double lambda, Sign sign);

/// Weights of the extrapolation above, in the order of extrapolation_mus().
const std::array<double, 3> &extrapolation_mus();
const std::array<double, 3> &extrapolation_weights();

struct InteriorQuery {
  cplx z;
};

struct BoundaryQuery {
  double lambda;
  Sign sign;
  double K; // declared band limit of the operand
};

struct ResolventQuery {
  std::variant<InteriorQuery, BoundaryQuery> point;
  double s = 1.0;
};

/// Validates the query and dispatches to apply_free_dirac / apply_boundary_dirac.
GridFunction4 apply_resolvent(const GridFunction4 &f, const ResolventQuery &q);

/// -Delta applied spectrally.
ScalarGridFunction apply_negative_laplacian(const ScalarGridFunction &g);

/// (-Delta - z)^{-1} g. Throws OnSpectrum when z is on [0, inf) within tolerance
/// of some |xi|^2 on the grid.
ScalarGridFunction apply_free_schrodinger(const ScalarGridFunction &g, cplx z);

// ---------------------------------------------------------------------------
// Three-part decomposition on the set 2 <= |Re z|, 0 < |Im z| < 1

bool in_decomposition_set(cplx z);

/// Smooth cutoff: 1 for |t| <= 1/2, 0 for |t| >= 1.
double rho(double t);

/// gamma_z(xi) = rho(<xi> - Re z) for Re z >= 2, rho(<xi> + Re z) for Re z <= -2.
double gamma_cutoff(const Vec3 &xi, cplx z);

struct DecompositionParts {
  GridFunction4 part_a; // (-Delta + 1 - z^2)^{-1} F^{-1}[gamma_z L0] F f
  GridFunction4 part_b; // F^{-1}[(1 - gamma_z) L0/(<xi>^2 - z^2)] F f
  GridFunction4 part_c; // z (-Delta + 1 - z^2)^{-1} f
};

/// Throws DomainError unless z lies in the decomposition set.
DecompositionParts decomposition_parts(const GridFunction4 &f, cplx z,
                                       const DiracMatrixSet &set = standard_dirac());

struct CutoffSupportReport {
  double min_ratio; // min <xi>/|z| over grid nodes with gamma_z > 0
  double max_ratio;
  std::size_t nodes;
};

/// <xi>/|z| over the support of gamma_z on the grid; the shell lies within
/// [1/4, 3/2].
CutoffSupportReport cutoff_support_report(const Grid3 &grid, cplx z);

/// min over grid nodes with gamma_z < 1 of |<xi>^2 - z^2| / <xi>; at least 1/2.
double complement_symbol_floor(const Grid3 &grid, cplx z);

// ---------------------------------------------------------------------------
// Symbol seminorms

using SymbolFn = std::function<Mat4(const Vec3 &)>;

/// max over |alpha| <= ell of sup <xi>^{-m} |d^alpha p_jk(xi)| per entry, and
/// the aggregate sqrt(sum_jk entry^2). Symbols here do not depend on x, so
/// only xi-derivatives enter.
struct SymbolSeminorm {
  int ell;
  double m;
  double value;                    // aggregate over entries
  Eigen::Matrix4d entries;         // per-entry seminorms
  double max_entry() const { return entries.maxCoeff(); }
};

struct SymbolSampleSet {
  std::vector<Vec3> points;
  double step = 1e-2; // difference step for the derivatives
};

/// per_axis^3 points filling [-half_width, half_width]^3.
SymbolSampleSet cube_lattice(double half_width, int per_axis);

/// Points r * d for r in [r_min, r_max] (n_radii values) along a fixed set of
/// 13 directions (axes, face and body diagonals).
SymbolSampleSet radial_rays(double r_min, double r_max, int n_radii);

/// Throws DomainError for ell > 3.
SymbolSeminorm symbol_seminorm(const SymbolFn &p, int ell, double m,
                               const SymbolSampleSet &samples);

SymbolFn cutoff_dirac_symbol(cplx z, const DiracMatrixSet &set = standard_dirac());
SymbolFn complement_symbol(cplx z, const DiracMatrixSet &set = standard_dirac());

// ---------------------------------------------------------------------------
// Operator norm proxies

template <class Field>
struct LinearMap {
  std::function<Field(const Field &)> apply;
  std::function<Field(const Field &)> adjoint;
};

struct NormProxySettings {
  int max_iterations = 200;
  double stagnation = 1e-6;
  std::uint64_t seed = 12345;
  double linearity_tolerance = 1e-10;
  bool check_linearity = true;
};

struct NormProxyResult {
  double value;
  int iterations;
  std::vector<double> history; // singular value estimate per iteration
};

/// Largest singular value of <x>^{s_out} T <x>^{-s_in} on the grid, i.e. the
/// discrete norm of T: L2_{s_in} -> L2_{s_out}, by power iteration on the
/// normal map. Throws NotConverged at the iteration cap and DomainError when
/// T fails the linearity or adjoint check.
template <class Field>
NormProxyResult weighted_operator_norm(const LinearMap<Field> &op, const Grid3 &grid,
                                       double s_in, double s_out,
                                       const NormProxySettings &settings = {});

/// The (s, -s) norm: weights <x>^{-s} on both sides.
template <class Field>
NormProxyResult operator_norm_proxy(const LinearMap<Field> &op, const Grid3 &grid, double s,
                                    const NormProxySettings &settings = {}) {
  return weighted_operator_norm(op, grid, s, -s, settings);
}

LinearMap<GridFunction4> free_dirac_map(cplx z);
LinearMap<ScalarGridFunction> free_schrodinger_map(cplx z);

/// Deterministic standard normal field (real and imaginary parts).
template <int N>
GridField<N> random_field(const Grid3 &grid, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Band-limited test data and lambda sweeps

/// Radial envelope exp(1 - 1/(1 - |xi|^2/r^2)), r^2 = K^2 - 1: smooth, zero
/// outside <xi> < K.
double band_envelope(const Vec3 &xi, double K);

/// envelope(xi) * spinor, on the frequency side, returned in the spatial domain.
GridFunction4 band_limited_bump(const Grid3 &grid, double K, const Vec4 &spinor);

/// Sum of three translated copies of the envelope with random spinor
/// weights; centres uniform in [-3, 3]^3.
GridFunction4 random_band_limited(const Grid3 &grid, double K, std::uint64_t seed);

enum class SweepKind { dirac, schrodinger };

std::string to_string(SweepKind k);

struct SweepRow {
  std::string kind;
  double lambda;
  double mu;
  double s;
  double norm_proxy; // NaN when not computed
  int f_id;
  double f_norm_minus_s;
};

struct SweepOptions {
  bool compute_proxy = true;
  NormProxySettings proxy;
};

/// For each lambda: the norm proxy of R(lambda + i mu) and ||R(lambda + i mu) f||_{-s}
/// for every member of the family (for the Schroedinger kind, the first
/// component of each member is used).
std::vector<SweepRow> lambda_sweep(SweepKind kind, const Grid3 &grid, double s,
                                   const std::vector<double> &lambdas,
                                   double mu, const std::vector<GridFunction4> &family,
                                   const SweepOptions &options = {});

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

} // namespace diraclab
