#pragma once

#include "diraclab/fourier_grid.hpp"
#include "diraclab/plemelj.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace diraclab {

/// phi(sigma) = exp(1 - 1/(1 - sigma^2)) on (-1, 1), zero elsewhere.
/// Even, smooth, phi(0) = 1.
C1Profile default_bump();

/// (sqrt(n(n+2)), sqrt(n^2+6n+8)): the shell carrying the frequency support
/// of a_n, i.e. n+1 <= <xi> <= n+3.
std::pair<double, double> support_annulus(int n);

/// omega_n(sigma) = (1 + 1/u) phi(sigma)^2 u/sqrt(u^2-1), u = sigma+n+2.
C1Profile omega_profile(int n, const C1Profile &phi = default_bump());

/// (R0(z) h_n, h_n)_0 by the polar reduction to two integrals over
/// sigma in [-1, 1], h_n = (a_n, 0, 0, 0). Requires Im z != 0.
cplx quadratic_form(int n, cplx z, const C1Profile &phi = default_bump(),
                    double tolerance = 1e-10);

/// (R0^{+-}(n+2) h_n, h_n)_0: the regular term at z = n+2 plus the
/// boundary value of the omega_n integral.
cplx boundary_quadratic_form(int n, Sign sign, const C1Profile &phi = default_bump());

/// The limit of boundary_quadratic_form as n grows: +-i/(4 pi).
inline cplx counterexample_limit(Sign sign) { return {0.0, sign_value(sign) / (4.0 * M_PI)}; }

/// h_n on the frequency side of the grid. Throws AnnulusOutOfRange when the
/// outer radius of the support reaches the grid's frequency range.
GridFunction4 h_n_on_grid(int n, const Grid3 &grid, const C1Profile &phi = default_bump());

/// ||h_n||_s computed on the grid.
double h_norm_check(int n, double s, const Grid3 &grid, const C1Profile &phi = default_bump());

/// ||h_n||_0^2 = (2 pi^2)^{-1} int phi(sigma)^2 u/sqrt(u^2-1) d sigma.
double radial_h_norm_sq(int n, const C1Profile &phi = default_bump());

/// |(2 pi)^{-3} sum_xi (<xi> + z)^{-1} (xi_j/<xi>) |a_n(xi)|^2 dxi| on the
/// grid. The integrand is odd in xi_j, so the sum cancels on the symmetric
/// support. With parity_broken, xi_j is replaced by |xi_j| as a control.
/// (The spinor matrix element <alpha_j h, h> vanishes identically for
/// h = (a, 0, 0, 0); only the parity of the scalar factor is exercised.)
double odd_moment_vanishing(int n, int j, const Grid3 &grid, cplx z,
                            bool parity_broken = false,
                            const C1Profile &phi = default_bump());

struct CounterexampleRow {
  int n;
  cplx value;
  double abs_err_vs_limit;
};

std::vector<CounterexampleRow> counterexample_table(const std::vector<int> &n_list, Sign sign);

/// Columns n, re_qform, im_qform, abs_err_vs_limit; a final row labelled
/// "limit" carries +-i/(4 pi).
void write_counterexample_csv(std::ostream &os, const std::vector<CounterexampleRow> &rows,
                              Sign sign);

} // namespace diraclab
