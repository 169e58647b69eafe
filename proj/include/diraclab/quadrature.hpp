#pragma once

#include "diraclab/dirac_core.hpp"

#include <functional>
#include <vector>

namespace diraclab {

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<cplx(double)>;

struct GaussLegendreRule {
  std::vector<double> nodes;   // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point rule computed by Newton iteration on P_n; cached per n.
const GaussLegendreRule &gauss_legendre(int n);

/// Fixed-order rule mapped onto [a, b].
cplx integrate_fixed(const ComplexIntegrand &f, double a, double b, int order);

struct QuadratureSettings {
  int start_order = 32;
  int max_order = 1024;
  double tolerance = 1e-10;
};

struct QuadratureResult {
  cplx value;
  double disagreement; // |I(2n) - I(n)| at acceptance
  int order;           // order of the accepted value
};

/// Order doubling from start_order until two successive orders agree within
/// tolerance * max(1, |value|). Throws QuadratureNotConverged past max_order.
QuadratureResult integrate_doubling(const ComplexIntegrand &f, double a, double b,
                                    const QuadratureSettings &settings = {});

/// Composite rule: each panel is accepted when G32 and G64 agree within its
/// share of the tolerance, otherwise bisected. Suited to integrands with a
/// narrow peak such as 1/(sigma - i mu) for small mu.
QuadratureResult integrate_adaptive(const ComplexIntegrand &f, double a, double b,
                                    double tolerance = 1e-10, int max_depth = 60);

} // namespace diraclab
