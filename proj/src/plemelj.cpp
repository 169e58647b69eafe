#include "diraclab/plemelj.hpp"
#include "diraclab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace diraclab {

namespace {

double central_difference(const C1Profile::Fn &f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

} // namespace

C1Profile::C1Profile(Fn value, Fn derivative)
    : value_(std::move(value)), derivative_(std::move(derivative)), analytic_(true) {
  const double h = 1e-4;
  for (int i = 0; i < 17; ++i) {
    const double x = -0.9 + 1.8 * i / 16.0;
    const double fd = central_difference(value_, x, h);
    const double an = derivative_(x);
    const double dev = std::abs(fd - an) / std::max(1.0, std::abs(an));
    deviation_ = std::max(deviation_, dev);
    if (dev > 1e-6) {
      std::ostringstream msg;
      msg << "C1Profile: derivative inconsistent with values at sigma = " << x << " (analytic "
          << an << ", difference " << fd << ")";
      throw DomainError(msg.str());
    }
  }
}

C1Profile::C1Profile(Fn value) : value_(std::move(value)), analytic_(false) {
  derivative_ = [v = value_](double x) {
    const double h = 1e-3;
    // one-sided near the ends of [-1, 1]
    if (x - 2 * h < -1.0)
      return (-3 * v(x) + 4 * v(x + h) - v(x + 2 * h)) / (2 * h);
    if (x + 2 * h > 1.0)
      return (3 * v(x) - 4 * v(x - h) + v(x - 2 * h)) / (2 * h);
    return central_difference(v, x, h);
  };
}

C1Profile C1Profile::combine(double a, const C1Profile &other, double b) const {
  Fn v = [a, b, f = value_, g = other.value_](double x) { return a * f(x) + b * g(x); };
  if (analytic_ && other.analytic_) {
    Fn d = [a, b, f = derivative_, g = other.derivative_](double x) {
      return a * f(x) + b * g(x);
    };
    return C1Profile(std::move(v), std::move(d));
  }
  return C1Profile(std::move(v));
}

double desingularized_integral(const C1Profile &phi, const QuadratureSettings &q) {
  const double phi0 = phi(0.0);
  const double slope0 = phi.derivative(0.0);
  const ComplexIntegrand g = [&](double s) -> cplx {
    if (std::abs(s) < difference_quotient_cutoff)
      return slope0;
    return (phi(s) - phi0) / s;
  };
  return (integrate_doubling(g, -1.0, 0.0, q).value + integrate_doubling(g, 0.0, 1.0, q).value)
      .real();
}

cplx boundary_limit(const C1Profile &phi, Sign sign, const QuadratureSettings &q) {
  return cplx(desingularized_integral(phi, q), sign_value(sign) * M_PI * phi(0.0));
}

cplx small_mu_oracle(const C1Profile &phi, Sign sign, double mu, double tolerance) {
  if (!(mu > 0.0))
    throw DomainError("small_mu_oracle: mu must be positive");
  const double sg = sign_value(sign);
  // 1/(sigma -+ i mu) = (sigma +- i mu)/(sigma^2 + mu^2)
  auto re = [&](double s) { return phi(s) * s / (s * s + mu * mu); };
  auto im = [&](double s) { return phi(s) * sg * mu / (s * s + mu * mu); };

  // Breakpoints resolve the peak of width mu at the origin.
  std::vector<double> cuts{0.0};
  for (double c = mu; c < 1.0; c *= 10.0) {
    cuts.push_back(c);
    cuts.push_back(-c);
  }
  cuts.push_back(1.0);
  cuts.push_back(-1.0);
  std::sort(cuts.begin(), cuts.end());

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double sum_re = 0.0, sum_im = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double e1 = 0.0, e2 = 0.0;
    sum_re += GK::integrate(re, cuts[i], cuts[i + 1], 20, tolerance, &e1);
    sum_im += GK::integrate(im, cuts[i], cuts[i + 1], 20, tolerance, &e2);
    err += std::abs(e1) + std::abs(e2);
  }
  const cplx value(sum_re, sum_im);
  if (err > 100.0 * tolerance * std::max(1.0, std::abs(value))) {
    std::ostringstream msg;
    msg << "small_mu_oracle: Gauss-Kronrod error estimate " << err << " at mu = " << mu;
    throw QuadratureNotConverged(msg.str());
  }
  return value;
}

double even_profile_residual(const C1Profile &phi, const QuadratureSettings &q) {
  return desingularized_integral(phi, q);
}

} // namespace diraclab
