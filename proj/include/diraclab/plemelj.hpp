#pragma once

#include "diraclab/quadrature.hpp"

#include <functional>

namespace diraclab {

enum class Sign { plus = 1, minus = -1 };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

/// Real C^1 function on [-1, 1] together with its derivative.
class C1Profile {
public:
  using Fn = std::function<double(double)>;

  /// Analytic derivative; checked against a symmetric difference at 17
  /// interior points (relative 1e-6). Throws DomainError on mismatch.
  C1Profile(Fn value, Fn derivative);

  /// Derivative from a fourth-order central difference.
  explicit C1Profile(Fn value);

  double operator()(double sigma) const { return value_(sigma); }
  double derivative(double sigma) const { return derivative_(sigma); }
  bool analytic_derivative() const { return analytic_; }

  /// Largest deviation found by the consistency check (0 when not analytic).
  double consistency_deviation() const { return deviation_; }

  /// a*this + b*other
  C1Profile combine(double a, const C1Profile &other, double b) const;

private:
  Fn value_;
  Fn derivative_;
  bool analytic_;
  double deviation_ = 0.0;
};

/// Below this |sigma| the difference quotient (phi(sigma) - phi(0))/sigma is
/// replaced by phi'(0).
inline constexpr double difference_quotient_cutoff = 1e-6;

/// int_{-1}^{1} (phi(sigma) - phi(0))/sigma d sigma, split at 0 and integrated
/// by order doubling.
double desingularized_integral(const C1Profile &phi, const QuadratureSettings &q = {});

/// lim_{mu -> 0+} int_{-1}^{1} phi(sigma)/(sigma -+ i mu) d sigma
///   = +-i pi phi(0) + int_{-1}^{1} int_0^1 phi'(sigma theta) d theta d sigma.
cplx boundary_limit(const C1Profile &phi, Sign sign, const QuadratureSettings &q = {});

/// Direct adaptive Gauss-Kronrod evaluation of
/// int_{-1}^{1} phi(sigma)/(sigma -+ i mu) d sigma for mu > 0.
cplx small_mu_oracle(const C1Profile &phi, Sign sign, double mu, double tolerance = 1e-10);

/// The double integral of the boundary formula on its own; zero for even phi.
double even_profile_residual(const C1Profile &phi, const QuadratureSettings &q = {});

} // namespace diraclab
