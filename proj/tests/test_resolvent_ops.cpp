#include "oracles.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/resolvent_ops.hpp"

#include <doctest.h>

#include <sstream>

using namespace diraclab;

namespace {

double rel_diff(const GridFunction4 &a, const GridFunction4 &b) {
  return weighted_norm(a - b, 0.0) / weighted_norm(b, 0.0);
}

const Grid3 &small_grid() {
  static const Grid3 g(32, 8.0);
  return g;
}

} // namespace

TEST_CASE("free Dirac resolvent on an eigenmode") {
  const Grid3 &g = small_grid();
  const std::size_t mode = g.index(18, 13, 16);
  const Vec3 xi0 = g.frequency(mode);
  const Vec4 v = eigenprojections(xi0).plus * Vec4(1, 0.5, cplx(0, 1), -2);
  GridFunction4 fh(g, Domain::frequency);
  set_node_vector(fh, mode, v);
  const GridFunction4 f = to_spatial(fh);
  const cplx z(3, 0.5);
  const GridFunction4 expected = (1.0 / (bracket(xi0) - z)) * f;
  CHECK(rel_diff(apply_free_dirac(f, z), expected) <= 1e-13);
  CHECK(weighted_norm(apply_free_dirac(GridFunction4(g), z), 0.0) == 0.0);
}

TEST_CASE("free Dirac resolvent residual and identities") {
  const Grid3 &g = small_grid();
  const GridFunction4 f = random_band_limited(g, 2.0, 17);
  const GridFunction4 h = random_field<4>(g, 18);
  const cplx z1(3, 0.5), z2(-5, 0.25);

  const GridFunction4 u = apply_free_dirac(f, z1);
  GridFunction4 res = apply_free_hamiltonian(u);
  res.axpy(-z1, u);
  CHECK(weighted_norm(res - f, 0.0) <= 1e-10 * weighted_norm(f, 0.0));

  for (const GridFunction4 &x : {f, h}) {
    const GridFunction4 lhs = apply_free_dirac(x, z1) - apply_free_dirac(x, z2);
    const GridFunction4 rhs = (z1 - z2) * apply_free_dirac(apply_free_dirac(x, z2), z1);
    CHECK(rel_diff(lhs, rhs) <= 1e-10);
  }

  const cplx a = inner_product(apply_free_dirac(f, z1), h, 0.0);
  const cplx b = inner_product(f, apply_free_dirac(h, std::conj(z1)), 0.0);
  CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));

  const ResolventQuery q{InteriorQuery{z1}, 1.0};
  CHECK(rel_diff(apply_resolvent(f, q), u) == 0.0);
}

TEST_CASE("band-limited boundary values") {
  const Grid3 g(64, 12.0);
  const double K = 2.0;
  const GridFunction4 f = band_limited_bump(g, K, Vec4(1, 0, 0, 0));
  CHECK(out_of_band_ratio(f, K) <= band_limit_tolerance);

  std::vector<double> ls{8, 16, 32, 64}, vals;
  for (double l : ls)
    vals.push_back(weighted_norm(apply_boundary_dirac(f, l, Sign::plus, K), -1.0));
  CHECK(loglog_slope(ls, vals) == doctest::Approx(-1.0).epsilon(0.1));

  const GridFunction4 p = apply_boundary_dirac(f, 8.0, Sign::plus, K);
  const GridFunction4 m = apply_boundary_dirac(f, 8.0, Sign::minus, K);
  CHECK(weighted_norm(p - m, 0.0) == 0.0);
  CHECK(rel_diff(apply_free_dirac(f, cplx(8, 1e-3)), p) <= 1e-2);
  CHECK(rel_diff(extrapolated_boundary_dirac(f, 8.0, Sign::plus), p) <= 1e-6);

  const ResolventQuery q{BoundaryQuery{8.0, Sign::plus, K}, 1.0};
  CHECK(rel_diff(apply_resolvent(f, q), p) == 0.0);
}

TEST_CASE("boundary guards") {
  const Grid3 &g = small_grid();
  const GridFunction4 f = band_limited_bump(g, 2.0, Vec4(0, 1, 0, 0));
  CHECK_THROWS_AS(apply_boundary_dirac(random_field<4>(g, 1), 8.0, Sign::plus, 2.0),
                  BandLimitViolated);
  CHECK_THROWS_AS(apply_boundary_dirac(f, 3.0, Sign::plus, 2.0), SpectralOverlap);
  CHECK_THROWS_AS(apply_boundary_dirac(f, 8.0, Sign::plus, 1.0), DomainError);
  CHECK_NOTHROW(apply_boundary_dirac(f, -4.0, Sign::minus, 2.0));
}

TEST_CASE("extrapolation weights") {
  const auto &w = extrapolation_weights();
  const auto &mu = extrapolation_mus();
  CHECK(w[0] + w[1] + w[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w[0] * mu[0] + w[1] * mu[1] + w[2] * mu[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(w[0] * mu[0] * mu[0] + w[1] * mu[1] * mu[1] + w[2] * mu[2] * mu[2] ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("free Schroedinger resolvent") {
  const Grid3 &g = small_grid();
  ScalarGridFunction one(g);
  for (std::size_t p = 0; p < g.size(); ++p)
    one(0, p) = 1.0;
  const ScalarGridFunction r = apply_free_schrodinger(one, -1.0);
  double worst = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p)
    worst = std::max(worst, std::abs(r(0, p) - 1.0));
  CHECK(worst <= 1e-13);

  const ScalarGridFunction s = random_field<1>(g, 9);
  const cplx z(5, 0.5);
  const ScalarGridFunction u = apply_free_schrodinger(s, z);
  ScalarGridFunction res = apply_negative_laplacian(u);
  res.axpy(-z, u);
  CHECK(weighted_norm(res - s, 0.0) <= 1e-10 * weighted_norm(s, 0.0));
  CHECK(weighted_norm(apply_free_schrodinger(ScalarGridFunction(g), z), 0.0) == 0.0);

  const double on_grid = std::pow(g.freq_step(), 2);
  CHECK_THROWS_AS(apply_free_schrodinger(s, on_grid), OnSpectrum);
  CHECK_NOTHROW(apply_free_schrodinger(s, 0.5 * on_grid));
}

TEST_CASE("cutoff rho") {
  CHECK(rho(0.0) == 1.0);
  CHECK(rho(0.5) == 1.0);
  CHECK(rho(-0.49) == 1.0);
  CHECK(rho(1.0) == 0.0);
  CHECK(rho(-1.2) == 0.0);
  double prev = 1.0;
  for (double t = 0.5; t <= 1.0; t += 0.01) {
    const double v = rho(t);
    CHECK(v >= 0.0);
    CHECK(v <= prev);
    CHECK(v == doctest::Approx(rho(-t)).epsilon(1e-15));
    prev = v;
  }
  CHECK(gamma_cutoff({std::sqrt(3.0), 0, 0}, cplx(10, 0.5)) == 0.0);
  CHECK(gamma_cutoff({std::sqrt(99.0), 0, 0}, cplx(10, 0.5)) == 1.0);
  CHECK(gamma_cutoff({std::sqrt(99.0), 0, 0}, cplx(-10, 0.5)) == 1.0);
}

TEST_CASE("three-part decomposition") {
  const Grid3 g(48, 12.0);
  CHECK(in_decomposition_set(cplx(4, 0.5)));
  CHECK_FALSE(in_decomposition_set(cplx(1.5, 0.5)));
  CHECK_FALSE(in_decomposition_set(cplx(4, 1.0)));
  CHECK_FALSE(in_decomposition_set(cplx(4, 0.0)));
  CHECK_THROWS_AS(decomposition_parts(GridFunction4(g), cplx(1, 0.5)), DomainError);

  for (std::uint64_t seed : {1u, 2u, 3u})
    for (cplx z : {cplx(4, 0.5), cplx(-4, 0.5), cplx(16, 0.5), cplx(-16, -0.5)}) {
      const GridFunction4 f = random_band_limited(g, 2.0, seed);
      const DecompositionParts d = decomposition_parts(f, z);
      const GridFunction4 sum = d.part_a + d.part_b + d.part_c;
      const GridFunction4 r = apply_free_dirac(f, z);
      CHECK(weighted_norm(sum - r, 0.0) <= 1e-12 * weighted_norm(f, 0.0));
    }
  const GridFunction4 rnd = random_field<4>(g, 4);
  const DecompositionParts d = decomposition_parts(rnd, cplx(8, 0.5));
  CHECK(rel_diff(d.part_a + d.part_b + d.part_c, apply_free_dirac(rnd, cplx(8, 0.5))) <= 1e-12);
}

TEST_CASE("cutoff support and complement floor") {
  const Grid3 g(64, 12.0);
  for (cplx z : {cplx(2, 0.5), cplx(4, 0.9), cplx(-4, 0.5), cplx(8, -0.3), cplx(-8, 0.1)}) {
    const CutoffSupportReport r = cutoff_support_report(g, z);
    CHECK(r.nodes > 0);
    CHECK(r.min_ratio >= 0.25);
    CHECK(r.max_ratio <= 1.5);
    CHECK(complement_symbol_floor(g, z) >= 0.5);
  }
}

TEST_CASE("symbol seminorms") {
  const SymbolSampleSet cube = cube_lattice(3.0, 5);
  const SymbolFn id = [](const Vec3 &) -> Mat4 { return Mat4::Identity(); };
  for (int l : {0, 1, 3}) {
    const SymbolSeminorm s = symbol_seminorm(id, l, 0.0, cube);
    CHECK(s.max_entry() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(symbol_seminorm(id, 4, 0.0, cube), DomainError);

  const SymbolFn L0 = [](const Vec3 &xi) { return free_symbol(xi).matrix; };
  double prev = 0.0;
  for (int l = 0; l <= 3; ++l) {
    const double v = symbol_seminorm(L0, l, 1.0, cube).value;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(symbol_seminorm(L0, 1, 1.0, cube).value <= 4.0);

  // gamma_z L0 grows like |z|; the ratio stays put
  std::vector<double> ratios;
  for (double re : {20.0, 40.0, 80.0}) {
    const cplx z(re, 0.5);
    const SymbolSampleSet rays = radial_rays(0.2 * re, 1.6 * re, 400);
    ratios.push_back(symbol_seminorm(cutoff_dirac_symbol(z), 2, 0.0, rays).value / std::abs(z));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi <= 1.5 * *lo);

  // B_z stays bounded on the decomposition set
  std::vector<double> bz;
  for (double re : {4.0, -4.0, 8.0, 16.0, -16.0, 32.0}) {
    const cplx z(re, 0.5);
    const SymbolSampleSet rays = radial_rays(0.0, 2.0 * std::abs(re), 400);
    bz.push_back(symbol_seminorm(complement_symbol(z), 2, 0.0, rays).value);
  }
  const auto [blo, bhi] = std::minmax_element(bz.begin(), bz.end());
  CHECK(*bhi <= 3.0 * *blo);
  CHECK(bz.back() <= bz.front());
}

TEST_CASE("norm proxy on simple maps") {
  const Grid3 g(16, 4.0);
  const LinearMap<GridFunction4> id{[](const GridFunction4 &f) { return f; },
                                    [](const GridFunction4 &f) { return f; }};
  const NormProxyResult r0 = operator_norm_proxy(id, g, 0.0);
  CHECK(r0.value == doctest::Approx(1.0).epsilon(1e-6));
  const NormProxyResult r1 = operator_norm_proxy(id, g, 1.0);
  CHECK(r1.value <= 1.0 + 1e-12);
  CHECK(r1.value >= 0.9);
  for (std::size_t i = 1; i < r1.history.size(); ++i)
    CHECK(r1.history[i] >= r1.history[i - 1] - 1e-8);

  const LinearMap<GridFunction4> bad{
      [](const GridFunction4 &f) {
        GridFunction4 g2 = f;
        for (int c = 0; c < 4; ++c)
          for (auto &v : g2.component(c))
            v *= std::abs(v);
        return g2;
      },
      [](const GridFunction4 &f) { return f; }};
  CHECK_THROWS_AS(operator_norm_proxy(bad, g, 0.0), DomainError);

  const LinearMap<GridFunction4> wrong_adjoint{
      [](const GridFunction4 &f) { return cplx(0, 1) * f; },
      [](const GridFunction4 &f) { return cplx(0, 1) * f; }};
  CHECK_THROWS_AS(operator_norm_proxy(wrong_adjoint, g, 0.0), DomainError);

  NormProxySettings tight;
  tight.max_iterations = 2;
  tight.stagnation = 1e-15;
  CHECK_THROWS_AS(operator_norm_proxy(free_dirac_map(cplx(4, 0.5)), g, 1.0, tight), NotConverged);
}

TEST_CASE("norm proxy history and determinism") {
  const Grid3 &g = small_grid();
  const NormProxyResult a = operator_norm_proxy(free_dirac_map(cplx(4, 0.5)), g, 1.0);
  const NormProxyResult b = operator_norm_proxy(free_dirac_map(cplx(4, 0.5)), g, 1.0);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);
  for (std::size_t i = 1; i < a.history.size(); ++i)
    CHECK(a.history[i] >= a.history[i - 1] - 1e-8);
}

TEST_CASE("Schroedinger proxy decays like lambda^(-1/2)") {
  const Grid3 g(96, 18.0);
  std::vector<double> ls{4, 16, 64}, vals;
  for (double l : ls)
    vals.push_back(operator_norm_proxy(free_schrodinger_map(cplx(l, 0.5)), g, 1.0).value);
  CHECK(std::abs(loglog_slope(ls, vals) + 0.5) <= 0.15);
}

TEST_CASE("sweep table") {
  const Grid3 &g = small_grid();
  const std::vector<GridFunction4> fam{band_limited_bump(g, 2.0, Vec4(1, 0, 0, 0)),
                                       random_band_limited(g, 2.0, 5)};
  SweepOptions opt;
  opt.compute_proxy = false;
  const auto rows = lambda_sweep(SweepKind::dirac, g, 1.0, {4, 8}, 0.5, fam, opt);
  REQUIRE(rows.size() == 4);
  CHECK(std::isnan(rows[0].norm_proxy));
  CHECK(rows[1].f_id == 1);
  CHECK(rows[0].f_norm_minus_s ==
        doctest::Approx(weighted_norm(apply_free_dirac(fam[0], cplx(4, 0.5)), -1.0)).epsilon(1e-15));
  std::ostringstream os;
  write_sweep_csv(os, rows);
  CHECK(os.str().rfind("kind,lambda,mu,s,norm_proxy,f_id,f_norm_minus_s\n", 0) == 0);
  CHECK(loglog_slope({1, 2, 4}, {1, 0.5, 0.25}) == doctest::Approx(-1.0).epsilon(1e-14));
}
