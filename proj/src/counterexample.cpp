#include "diraclab/counterexample.hpp"
#include "diraclab/errors.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace diraclab {

namespace {

void require_index(int n) {
  if (n < 1)
    throw DomainError("counterexample: index n must be at least 1");
}

} // namespace

C1Profile default_bump() {
  auto value = [](double s) {
    if (std::abs(s) >= 1.0)
      return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
  };
  auto derivative = [value](double s) {
    if (std::abs(s) >= 1.0)
      return 0.0;
    const double q = 1.0 - s * s;
    return -2.0 * s / (q * q) * value(s);
  };
  return C1Profile(value, derivative);
}

std::pair<double, double> support_annulus(int n) {
  require_index(n);
  const double nn = n;
  return {std::sqrt(nn * (nn + 2.0)), std::sqrt(nn * nn + 6.0 * nn + 8.0)};
}

C1Profile omega_profile(int n, const C1Profile &phi) {
  require_index(n);
  const double shift = n + 2.0;
  // (1 + 1/u) u/sqrt(u^2-1) = sqrt((u+1)/(u-1))
  auto value = [phi, shift](double s) {
    const double u = s + shift;
    const double p = phi(s);
    return p * p * std::sqrt((u + 1.0) / (u - 1.0));
  };
  auto derivative = [phi, shift](double s) {
    const double u = s + shift;
    const double p = phi(s);
    const double root = std::sqrt((u + 1.0) / (u - 1.0));
    return 2.0 * p * phi.derivative(s) * root -
           p * p / (std::pow(u - 1.0, 1.5) * std::sqrt(u + 1.0));
  };
  return C1Profile(value, derivative);
}

cplx quadratic_form(int n, cplx z, const C1Profile &phi, double tolerance) {
  require_index(n);
  if (z.imag() == 0.0)
    throw DomainError("quadratic_form: Im z must be nonzero");
  const double shift = n + 2.0;
  const ComplexIntegrand f = [&](double s) -> cplx {
    const double u = s + shift;
    const double p = phi(s);
    const double w = p * p;
    if (w == 0.0)
      return 0.0;
    const double minus = std::sqrt((u - 1.0) / (u + 1.0));
    const double plus = std::sqrt((u + 1.0) / (u - 1.0));
    return -w * minus / (u + z) + w * plus / (u - z);
  };
  // the second term peaks at sigma = Re z - n - 2 when |Im z| is small
  const double peak = z.real() - shift;
  cplx total = 0.0;
  if (peak > -1.0 && peak < 1.0) {
    total = integrate_adaptive(f, -1.0, peak, tolerance).value +
            integrate_adaptive(f, peak, 1.0, tolerance).value;
  } else {
    total = integrate_adaptive(f, -1.0, 1.0, tolerance).value;
  }
  return total / (4.0 * M_PI * M_PI);
}

cplx boundary_quadratic_form(int n, Sign sign, const C1Profile &phi) {
  require_index(n);
  const double shift = n + 2.0;
  const ComplexIntegrand regular = [&](double s) -> cplx {
    const double u = s + shift;
    const double p = phi(s);
    return p * p * std::sqrt((u - 1.0) / (u + 1.0)) / (u + shift);
  };
  const cplx first = integrate_doubling(regular, -1.0, 0.0).value +
                     integrate_doubling(regular, 0.0, 1.0).value;
  const cplx second = boundary_limit(omega_profile(n, phi), sign);
  return (-first + second) / (4.0 * M_PI * M_PI);
}

GridFunction4 h_n_on_grid(int n, const Grid3 &grid, const C1Profile &phi) {
  const auto [r_min, r_max] = support_annulus(n);
  if (r_max >= grid.max_freq()) {
    std::ostringstream msg;
    msg << "h_n: support radius " << r_max << " for n = " << n
        << " exceeds the grid frequency range " << grid.max_freq();
    throw AnnulusOutOfRange(msg.str());
  }
  (void)r_min;
  GridFunction4 hat(grid, Domain::frequency);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Vec3 xi = grid.frequency(idx);
    const double r = std::sqrt(norm2(xi));
    if (r == 0.0)
      continue;
    hat(0, idx) = phi(bracket(xi) - n - 2.0) / r;
  }
  return hat;
}

double h_norm_check(int n, double s, const Grid3 &grid, const C1Profile &phi) {
  return weighted_norm(inverse_transform(h_n_on_grid(n, grid, phi)), s);
}

double radial_h_norm_sq(int n, const C1Profile &phi) {
  require_index(n);
  const double shift = n + 2.0;
  const ComplexIntegrand f = [&](double s) -> cplx {
    const double u = s + shift;
    const double p = phi(s);
    return p * p * u / std::sqrt(u * u - 1.0);
  };
  const double integral =
      (integrate_doubling(f, -1.0, 0.0).value + integrate_doubling(f, 0.0, 1.0).value).real();
  return integral / (2.0 * M_PI * M_PI);
}

double odd_moment_vanishing(int n, int j, const Grid3 &grid, cplx z, bool parity_broken,
                            const C1Profile &phi) {
  if (j < 1 || j > 3)
    throw DomainError("odd_moment_vanishing: j must be 1, 2 or 3");
  const GridFunction4 hat = h_n_on_grid(n, grid, phi);
  cplx sum = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double a2 = std::norm(hat(0, idx));
    if (a2 == 0.0)
      continue;
    const Vec3 xi = grid.frequency(idx);
    const double t = bracket(xi);
    const double c = parity_broken ? std::abs(xi[j - 1]) : xi[j - 1];
    sum += c / t * a2 / (t + z);
  }
  return std::abs(sum) * grid.freq_cell_volume() / std::pow(2.0 * M_PI, 3);
}

std::vector<CounterexampleRow> counterexample_table(const std::vector<int> &n_list, Sign sign) {
  std::vector<CounterexampleRow> rows;
  const cplx limit = counterexample_limit(sign);
  for (int n : n_list) {
    const cplx v = boundary_quadratic_form(n, sign);
    rows.push_back({n, v, std::abs(v - limit)});
  }
  return rows;
}

void write_counterexample_csv(std::ostream &os, const std::vector<CounterexampleRow> &rows,
                              Sign sign) {
  os << "n,re_qform,im_qform,abs_err_vs_limit\n" << std::scientific << std::setprecision(16);
  for (const auto &r : rows)
    os << r.n << ',' << r.value.real() << ',' << r.value.imag() << ',' << r.abs_err_vs_limit
       << '\n';
  const cplx limit = counterexample_limit(sign);
  os << "limit," << limit.real() << ',' << limit.imag() << ',' << 0.0 << '\n';
}

} // namespace diraclab
