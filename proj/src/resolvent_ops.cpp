#include "diraclab/resolvent_ops.hpp"
#include "diraclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace diraclab {

// -- multipliers -------------------------------------------------------------

namespace {

// Visits every frequency node in flat order without unravelling indices.
template <class Fn>
void for_each_frequency(const Grid3 &g, Fn &&fn) {
  const int n = g.n();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double x0 = g.freq(i);
    for (int j = 0; j < n; ++j) {
      const double x1 = g.freq(j);
      for (int k = 0; k < n; ++k, ++idx)
        fn(idx, Vec3{x0, x1, g.freq(k)});
    }
  }
}

Mat4 symbol_matrix(const Vec3 &xi, const DiracMatrixSet &set) {
  return free_symbol(xi, set).matrix;
}

// L0(xi) v = beta v + sum_j xi_j alpha_j v
Vec4 apply_symbol(const Vec3 &xi, const Vec4 &v, const DiracMatrixSet &set) {
  if (&set == &standard_dirac()) {
    // upper/lower halves (a, b): L0 v = (a + (sigma.xi) b, (sigma.xi) a - b)
    const cplx p(xi[0], -xi[1]), m(xi[0], xi[1]);
    const double x3 = xi[2];
    return Vec4(v[0] + x3 * v[2] + p * v[3], v[1] + m * v[2] - x3 * v[3],
                x3 * v[0] + p * v[1] - v[2], m * v[0] - x3 * v[1] - v[3]);
  }
  return set.beta * v + xi[0] * (set.alpha[0] * v) + xi[1] * (set.alpha[1] * v) +
         xi[2] * (set.alpha[2] * v);
}

// Node-wise multiplication by p(xi) without going through std::function.
template <class Symbol>
GridFunction4 multiply(const GridFunction4 &f, Symbol &&p) {
  GridFunction4 hat = to_frequency(f);
  for_each_frequency(hat.grid(), [&](std::size_t idx, const Vec3 &xi) {
    const Vec4 v = node_vector(hat, idx);
    if (v.isZero(0.0))
      return;
    set_node_vector(hat, idx, p(xi, v));
  });
  return inverse_transform(hat);
}

} // namespace

GridFunction4 apply_multiplier(const GridFunction4 &f,
                               const std::function<Mat4(const Vec3 &)> &p) {
  return multiply(f, [&](const Vec3 &xi, const Vec4 &v) -> Vec4 { return p(xi) * v; });
}

template <int N>
GridField<N> apply_scalar_multiplier(const GridField<N> &f,
                                     const std::function<cplx(const Vec3 &)> &m) {
  GridField<N> hat = to_frequency(f);
  for_each_frequency(hat.grid(), [&](std::size_t idx, const Vec3 &xi) {
    const cplx factor = m(xi);
    for (int c = 0; c < N; ++c)
      hat(c, idx) *= factor;
  });
  return inverse_transform(hat);
}

template GridField<1> apply_scalar_multiplier(const GridField<1> &,
                                              const std::function<cplx(const Vec3 &)> &);
template GridField<4> apply_scalar_multiplier(const GridField<4> &,
                                              const std::function<cplx(const Vec3 &)> &);

GridFunction4 apply_free_hamiltonian(const GridFunction4 &f, const DiracMatrixSet &set) {
  return multiply(f, [&](const Vec3 &xi, const Vec4 &v) { return apply_symbol(xi, v, set); });
}

namespace {

// R(xi; z) v = (L0(xi) v + z v)/(<xi>^2 - z^2), with the same spectrum guard
// as resolvent_symbol.
Vec4 apply_resolvent_symbol(const Vec3 &xi, cplx z, const Vec4 &v, const DiracMatrixSet &set) {
  const double t2 = 1.0 + norm2(xi);
  if (on_spectrum(t2, z))
    return resolvent_symbol(xi, z, set).matrix * v; // throws OnSpectrum
  return (apply_symbol(xi, v, set) + z * v) / (t2 - z * z);
}

} // namespace

GridFunction4 apply_free_dirac(const GridFunction4 &f, cplx z, const DiracMatrixSet &set) {
  return multiply(f, [&](const Vec3 &xi, const Vec4 &v) {
    return apply_resolvent_symbol(xi, z, v, set);
  });
}

double out_of_band_ratio(const GridFunction4 &f, double K) {
  const GridFunction4 hat = to_frequency(f);
  double inside = 0.0, outside = 0.0;
  for_each_frequency(hat.grid(), [&](std::size_t idx, const Vec3 &xi) {
    double m = 0.0;
    for (int c = 0; c < 4; ++c)
      m += std::norm(hat(c, idx));
    (bracket(xi) <= K ? inside : outside) += m;
  });
  const double total = inside + outside;
  return total == 0.0 ? 0.0 : std::sqrt(outside / total);
}

GridFunction4 apply_boundary_dirac(const GridFunction4 &f, double lambda, Sign, double K,
                                   const DiracMatrixSet &set) {
  if (!(K > 1.0))
    throw DomainError("apply_boundary_dirac: band limit K must exceed 1");
  if (K > std::abs(lambda) / 2.0) {
    std::ostringstream msg;
    msg << "apply_boundary_dirac: band limit " << K << " overlaps the spectral shell at |lambda| = "
        << std::abs(lambda) << " (need |lambda| >= 2K)";
    throw SpectralOverlap(msg.str());
  }
  const double ratio = out_of_band_ratio(f, K);
  if (ratio > band_limit_tolerance) {
    std::ostringstream msg;
    msg << "apply_boundary_dirac: operand carries relative mass " << ratio
        << " outside <xi> <= " << K;
    throw BandLimitViolated(msg.str());
  }
  const cplx z(lambda, 0.0);
  return multiply(f, [&](const Vec3 &xi, const Vec4 &v) -> Vec4 {
    if (bracket(xi) > K)
      return Vec4::Zero();
    return apply_resolvent_symbol(xi, z, v, set);
  });
}

const std::array<double, 3> &extrapolation_mus() {
  static const std::array<double, 3> mus{4e-2, 2e-2, 1e-2};
  return mus;
}

const std::array<double, 3> &extrapolation_weights() {
  // Lagrange basis through the three mus, evaluated at mu = 0
  static const std::array<double, 3> w{1.0 / 3.0, -2.0, 8.0 / 3.0};
  return w;
}

GridFunction4 extrapolated_boundary_dirac(const GridFunction4 &f, double lambda, Sign sign) {
  const auto &mus = extrapolation_mus();
  const auto &w = extrapolation_weights();
  GridFunction4 hat = to_frequency(f);
  GridFunction4 acc(hat.grid(), Domain::frequency);
  for (std::size_t q = 0; q < mus.size(); ++q) {
    const cplx z(lambda, sign_value(sign) * mus[q]);
    for_each_frequency(hat.grid(), [&](std::size_t idx, const Vec3 &xi) {
      const Vec4 v = apply_resolvent_symbol(xi, z, node_vector(hat, idx), standard_dirac());
      for (int c = 0; c < 4; ++c)
        acc(c, idx) += w[q] * v[c];
    });
  }
  return inverse_transform(acc);
}

GridFunction4 apply_resolvent(const GridFunction4 &f, const ResolventQuery &q) {
  if (const auto *in = std::get_if<InteriorQuery>(&q.point)) {
    if (in->z.imag() == 0.0)
      throw DomainError("apply_resolvent: interior query needs Im z != 0");
    return apply_free_dirac(f, in->z);
  }
  const auto &b = std::get<BoundaryQuery>(q.point);
  return apply_boundary_dirac(f, b.lambda, b.sign, b.K);
}

ScalarGridFunction apply_negative_laplacian(const ScalarGridFunction &g) {
  return apply_scalar_multiplier<1>(g, [](const Vec3 &xi) { return cplx(norm2(xi)); });
}

ScalarGridFunction apply_free_schrodinger(const ScalarGridFunction &g, cplx z) {
  const double tol = on_spectrum_tolerance * std::max(1.0, std::abs(z));
  return apply_scalar_multiplier<1>(g, [&](const Vec3 &xi) {
    const cplx d = norm2(xi) - z;
    if (std::abs(d) < tol) {
      std::ostringstream msg;
      msg << "apply_free_schrodinger: z = " << z << " lies on the spectrum at |xi|^2 = "
          << norm2(xi);
      throw OnSpectrum(msg.str());
    }
    return 1.0 / d;
  });
}

// -- decomposition -----------------------------------------------------------

bool in_decomposition_set(cplx z) {
  return std::abs(z.real()) >= 2.0 && z.imag() != 0.0 && std::abs(z.imag()) < 1.0;
}

namespace {

// Smoothstep psi with psi = 0 on (-inf, 0], psi = 1 on [1, inf).
double smoothstep(double u) {
  if (u <= 0.0)
    return 0.0;
  if (u >= 1.0)
    return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

} // namespace

double rho(double t) { return smoothstep(2.0 * (1.0 - std::abs(t))); }

double gamma_cutoff(const Vec3 &xi, cplx z) {
  const double re = z.real();
  if (re >= 2.0)
    return rho(bracket(xi) - re);
  if (re <= -2.0)
    return rho(bracket(xi) + re);
  throw DomainError("gamma_cutoff: needs |Re z| >= 2");
}

DecompositionParts decomposition_parts(const GridFunction4 &f, cplx z,
                                       const DiracMatrixSet &set) {
  if (!in_decomposition_set(z)) {
    std::ostringstream msg;
    msg << "decomposition_parts: z = " << z << " is outside 2 <= |Re z|, 0 < |Im z| < 1";
    throw DomainError(msg.str());
  }
  const GridFunction4 hat = to_frequency(f);
  const Grid3 &g = hat.grid();
  GridFunction4 a(g, Domain::frequency), b(g, Domain::frequency), c(g, Domain::frequency);
  for_each_frequency(g, [&](std::size_t idx, const Vec3 &xi) {
    const double t2 = 1.0 + norm2(xi);
    if (on_spectrum(t2, z)) {
      std::ostringstream msg;
      msg << "decomposition_parts: z = " << z << " on the spectrum at <xi>^2 = " << t2;
      throw OnSpectrum(msg.str());
    }
    const cplx inv = 1.0 / (t2 - z * z);
    const double gam = gamma_cutoff(xi, z);
    const Vec4 v = node_vector(hat, idx);
    const Vec4 lv = apply_symbol(xi, v, set);
    set_node_vector(a, idx, (gam * inv) * lv);
    set_node_vector(b, idx, ((1.0 - gam) * inv) * lv);
    set_node_vector(c, idx, (z * inv) * v);
  });
  return {inverse_transform(a), inverse_transform(b), inverse_transform(c)};
}

CutoffSupportReport cutoff_support_report(const Grid3 &grid, cplx z) {
  CutoffSupportReport r{std::numeric_limits<double>::infinity(), 0.0, 0};
  const double az = std::abs(z);
  for_each_frequency(grid, [&](std::size_t, const Vec3 &xi) {
    if (gamma_cutoff(xi, z) > 0.0) {
      const double ratio = bracket(xi) / az;
      r.min_ratio = std::min(r.min_ratio, ratio);
      r.max_ratio = std::max(r.max_ratio, ratio);
      ++r.nodes;
    }
  });
  return r;
}

double complement_symbol_floor(const Grid3 &grid, cplx z) {
  double floor = std::numeric_limits<double>::infinity();
  for_each_frequency(grid, [&](std::size_t, const Vec3 &xi) {
    if (gamma_cutoff(xi, z) < 1.0) {
      const double t2 = 1.0 + norm2(xi);
      floor = std::min(floor, std::abs(t2 - z * z) / std::sqrt(t2));
    }
  });
  return floor;
}

// -- symbol seminorms --------------------------------------------------------

SymbolSampleSet cube_lattice(double half_width, int per_axis) {
  if (per_axis < 2)
    throw DomainError("cube_lattice: need at least two points per axis");
  SymbolSampleSet s;
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j)
      for (int k = 0; k < per_axis; ++k) {
        auto at = [&](int q) { return -half_width + 2.0 * half_width * q / (per_axis - 1); };
        s.points.push_back({at(i), at(j), at(k)});
      }
  return s;
}

SymbolSampleSet radial_rays(double r_min, double r_max, int n_radii) {
  if (n_radii < 2 || !(r_max > r_min) || r_min < 0.0)
    throw DomainError("radial_rays: need 0 <= r_min < r_max and n_radii >= 2");
  std::vector<Vec3> dirs;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        // one representative per line through the origin
        const std::array<int, 3> v{a, b, c};
        const auto first = std::find_if(v.begin(), v.end(), [](int q) { return q != 0; });
        if (first == v.end() || *first < 0)
          continue;
        const double len = std::sqrt(double(a * a + b * b + c * c));
        dirs.push_back({a / len, b / len, c / len});
      }
  SymbolSampleSet s;
  for (const auto &d : dirs)
    for (int q = 0; q < n_radii; ++q) {
      const double r = r_min + (r_max - r_min) * q / (n_radii - 1);
      s.points.push_back({r * d[0], r * d[1], r * d[2]});
    }
  return s;
}

namespace {

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights; // multiply by h^{-order}
};

const Stencil &central_stencil(int order) {
  static const std::array<Stencil, 4> table{{
      {{0}, {1.0}},
      {{-1, 1}, {-0.5, 0.5}},
      {{-1, 0, 1}, {1.0, -2.0, 1.0}},
      {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
  }};
  return table[order];
}

Mat4 derivative(const SymbolFn &p, const Vec3 &xi, const std::array<int, 3> &alpha, double h) {
  const Stencil &s0 = central_stencil(alpha[0]);
  const Stencil &s1 = central_stencil(alpha[1]);
  const Stencil &s2 = central_stencil(alpha[2]);
  Mat4 acc = Mat4::Zero();
  for (std::size_t a = 0; a < s0.offsets.size(); ++a)
    for (std::size_t b = 0; b < s1.offsets.size(); ++b)
      for (std::size_t c = 0; c < s2.offsets.size(); ++c) {
        const Vec3 at{xi[0] + h * s0.offsets[a], xi[1] + h * s1.offsets[b],
                      xi[2] + h * s2.offsets[c]};
        acc += (s0.weights[a] * s1.weights[b] * s2.weights[c]) * p(at);
      }
  return acc / std::pow(h, alpha[0] + alpha[1] + alpha[2]);
}

} // namespace

SymbolSeminorm symbol_seminorm(const SymbolFn &p, int ell, double m,
                               const SymbolSampleSet &samples) {
  if (ell < 0 || ell > 3)
    throw DomainError("symbol_seminorm: order must lie in [0, 3]");
  if (samples.points.empty())
    throw DomainError("symbol_seminorm: empty sample set");
  Eigen::Matrix4d entries = Eigen::Matrix4d::Zero();
  const auto alphas = multi_indices(ell);
  for (const Vec3 &xi : samples.points) {
    const double w = std::pow(bracket(xi), -m);
    for (const auto &alpha : alphas) {
      const Mat4 d = derivative(p, xi, alpha, samples.step);
      entries = entries.cwiseMax(w * d.cwiseAbs());
    }
  }
  return {ell, m, std::sqrt(entries.cwiseAbs2().sum()), entries};
}

SymbolFn cutoff_dirac_symbol(cplx z, const DiracMatrixSet &set) {
  return [z, &set](const Vec3 &xi) -> Mat4 { return gamma_cutoff(xi, z) * symbol_matrix(xi, set); };
}

SymbolFn complement_symbol(cplx z, const DiracMatrixSet &set) {
  return [z, &set](const Vec3 &xi) -> Mat4 {
    const double t2 = 1.0 + norm2(xi);
    return ((1.0 - gamma_cutoff(xi, z)) / (t2 - z * z)) * symbol_matrix(xi, set);
  };
}

// -- operator norm proxies ---------------------------------------------------

template <int N>
GridField<N> random_field(const Grid3 &grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  GridField<N> f(grid);
  for (int c = 0; c < N; ++c)
    for (auto &v : f.component(c)) {
      const double re = normal(rng);
      v = cplx(re, normal(rng));
    }
  return f;
}

template GridField<1> random_field<1>(const Grid3 &, std::uint64_t);
template GridField<4> random_field<4>(const Grid3 &, std::uint64_t);

namespace {

template <class Field>
void check_linear_map(const LinearMap<Field> &op, const Grid3 &grid,
                      const NormProxySettings &settings) {
  constexpr int N = Field::components;
  const Field x = random_field<N>(grid, settings.seed ^ 0x9e3779b97f4a7c15ULL);
  const Field y = random_field<N>(grid, settings.seed ^ 0xc2b2ae3d27d4eb4fULL);
  const cplx a(0.7, -0.3), b(-1.1, 0.4);
  const Field tx = to_spatial(op.apply(x));
  const Field ty = to_spatial(op.apply(y));
  const Field combo = to_spatial(op.apply(a * x + b * y));
  const double scale = std::abs(a) * weighted_norm(tx, 0.0) + std::abs(b) * weighted_norm(ty, 0.0);
  const double lin = weighted_norm(combo - (a * tx + b * ty), 0.0);
  if (lin > settings.linearity_tolerance * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "operator norm proxy: map is not linear (relative defect " << lin / scale << ")";
    throw DomainError(msg.str());
  }
  const Field tsy = to_spatial(op.adjoint(y));
  const cplx lhs = inner_product(tx, y);
  const cplx rhs = inner_product(x, tsy);
  const double adj_scale =
      weighted_norm(tx, 0.0) * weighted_norm(y, 0.0) + weighted_norm(x, 0.0) * weighted_norm(tsy, 0.0);
  if (std::abs(lhs - rhs) > settings.linearity_tolerance * std::max(adj_scale, 1e-300)) {
    std::ostringstream msg;
    msg << "operator norm proxy: adjoint mismatch (relative " << std::abs(lhs - rhs) / adj_scale
        << ")";
    throw DomainError(msg.str());
  }
}

} // namespace

template <class Field>
NormProxyResult weighted_operator_norm(const LinearMap<Field> &op, const Grid3 &grid, double s_in,
                                       double s_out, const NormProxySettings &settings) {
  constexpr int N = Field::components;
  if (settings.check_linearity)
    check_linear_map(op, grid, settings);

  // B = W_out T W_in with W_in = <x>^{-s_in}, W_out = <x>^{s_out}; iterate B* B.
  auto normal = [&](const Field &x) {
    const Field bx = apply_weight(op.apply(apply_weight(x, -s_in)), s_out);
    return apply_weight(op.adjoint(apply_weight(bx, s_out)), -s_in);
  };

  Field x = random_field<N>(grid, settings.seed);
  x *= 1.0 / weighted_norm(x, 0.0);
  NormProxyResult result{0.0, 0, {}};
  double prev = -1.0;
  for (int it = 1; it <= settings.max_iterations; ++it) {
    Field y = normal(x);
    const double rayleigh = std::max(0.0, inner_product(y, x).real());
    const double sigma = std::sqrt(rayleigh);
    result.history.push_back(sigma);
    result.value = sigma;
    result.iterations = it;
    const double ny = weighted_norm(y, 0.0);
    if (ny == 0.0)
      return result;
    if (prev >= 0.0 && std::abs(sigma - prev) < settings.stagnation * sigma)
      return result;
    prev = sigma;
    y *= 1.0 / ny;
    x = std::move(y);
  }
  std::ostringstream msg;
  msg << "operator norm proxy: no stagnation after " << settings.max_iterations
      << " iterations (last estimate " << result.value << ")";
  throw NotConverged(msg.str());
}

template NormProxyResult weighted_operator_norm(const LinearMap<GridFunction4> &, const Grid3 &,
                                                double, double, const NormProxySettings &);
template NormProxyResult weighted_operator_norm(const LinearMap<ScalarGridFunction> &,
                                                const Grid3 &, double, double,
                                                const NormProxySettings &);

LinearMap<GridFunction4> free_dirac_map(cplx z) {
  return {[z](const GridFunction4 &f) { return apply_free_dirac(f, z); },
          [z](const GridFunction4 &f) { return apply_free_dirac(f, std::conj(z)); }};
}

LinearMap<ScalarGridFunction> free_schrodinger_map(cplx z) {
  return {[z](const ScalarGridFunction &f) { return apply_free_schrodinger(f, z); },
          [z](const ScalarGridFunction &f) { return apply_free_schrodinger(f, std::conj(z)); }};
}

// -- band-limited data and sweeps --------------------------------------------

double band_envelope(const Vec3 &xi, double K) {
  if (!(K > 1.0))
    throw DomainError("band_envelope: K must exceed 1");
  const double q = norm2(xi) / (K * K - 1.0);
  if (q >= 1.0)
    return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - q));
}

GridFunction4 band_limited_bump(const Grid3 &grid, double K, const Vec4 &spinor) {
  GridFunction4 hat(grid, Domain::frequency);
  for_each_frequency(grid, [&](std::size_t idx, const Vec3 &xi) {
    const double e = band_envelope(xi, K);
    if (e > 0.0)
      set_node_vector(hat, idx, e * spinor);
  });
  return inverse_transform(hat);
}

GridFunction4 random_band_limited(const Grid3 &grid, double K, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-3.0, 3.0);
  std::normal_distribution<double> normal;
  struct Term {
    Vec3 x0;
    Vec4 c;
  };
  std::vector<Term> terms(3);
  for (auto &t : terms) {
    for (auto &v : t.x0)
      v = centre(rng);
    for (int c = 0; c < 4; ++c) {
      const double re = normal(rng);
      t.c[c] = cplx(re, normal(rng));
    }
  }
  GridFunction4 hat(grid, Domain::frequency);
  for_each_frequency(grid, [&](std::size_t idx, const Vec3 &xi) {
    const double e = band_envelope(xi, K);
    if (e == 0.0)
      return;
    Vec4 v = Vec4::Zero();
    for (const auto &t : terms) {
      const double phase = -(xi[0] * t.x0[0] + xi[1] * t.x0[1] + xi[2] * t.x0[2]);
      v += std::polar(e, phase) * t.c;
    }
    set_node_vector(hat, idx, v);
  });
  return inverse_transform(hat);
}

std::string to_string(SweepKind k) { return k == SweepKind::dirac ? "dirac" : "schrodinger"; }

std::vector<SweepRow> lambda_sweep(SweepKind kind, const Grid3 &grid, double s,
                                   const std::vector<double> &lambdas, double mu,
                                   const std::vector<GridFunction4> &family,
                                   const SweepOptions &options) {
  if (!(mu > 0.0 && mu < 1.0))
    throw DomainError("lambda_sweep: mu must lie in (0, 1)");
  for (const auto &f : family)
    if (!(f.grid() == grid))
      throw DomainError("lambda_sweep: family member on a different grid");
  std::vector<SweepRow> rows;
  const std::string name = to_string(kind);
  for (double lambda : lambdas) {
    if (std::abs(lambda) < 2.0)
      throw DomainError("lambda_sweep: each |lambda| must be at least 2");
    const cplx z(lambda, mu);
    double proxy = std::numeric_limits<double>::quiet_NaN();
    if (options.compute_proxy) {
      proxy = kind == SweepKind::dirac
                  ? operator_norm_proxy(free_dirac_map(z), grid, s, options.proxy).value
                  : operator_norm_proxy(free_schrodinger_map(z), grid, s, options.proxy).value;
    }
    if (family.empty())
      rows.push_back({name, lambda, mu, s, proxy, -1, std::numeric_limits<double>::quiet_NaN()});
    for (std::size_t q = 0; q < family.size(); ++q) {
      double value;
      if (kind == SweepKind::dirac) {
        value = weighted_norm(apply_free_dirac(family[q], z), -s);
      } else {
        ScalarGridFunction g(grid);
        g.component(0) = to_spatial(family[q]).component(0);
        value = weighted_norm(apply_free_schrodinger(g, z), -s);
      }
      rows.push_back({name, lambda, mu, s, proxy, int(q), value});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows) {
  os << "kind,lambda,mu,s,norm_proxy,f_id,f_norm_minus_s\n" << std::scientific
     << std::setprecision(16);
  for (const auto &r : rows)
    os << r.kind << ',' << r.lambda << ',' << r.mu << ',' << r.s << ',' << r.norm_proxy << ','
       << r.f_id << ',' << r.f_norm_minus_s << '\n';
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("loglog_slope: need at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw DomainError("loglog_slope: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace diraclab
