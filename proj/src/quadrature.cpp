#include "diraclab/quadrature.hpp"
#include "diraclab/errors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace diraclab {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
    r.nodes[n / 2] = 0.0;
  return r;
}

} // namespace

const GaussLegendreRule &gauss_legendre(int n) {
  if (n < 1)
    throw DomainError("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

cplx integrate_fixed(const ComplexIntegrand &f, double a, double b, int order) {
  const GaussLegendreRule &r = gauss_legendre(order);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    sum += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * sum;
}

QuadratureResult integrate_doubling(const ComplexIntegrand &f, double a, double b,
                                    const QuadratureSettings &settings) {
  int order = settings.start_order;
  cplx prev = integrate_fixed(f, a, b, order);
  double diff = 0.0;
  while (2 * order <= settings.max_order) {
    order *= 2;
    const cplx next = integrate_fixed(f, a, b, order);
    diff = std::abs(next - prev);
    if (diff <= settings.tolerance * std::max(1.0, std::abs(next)))
      return {next, diff, order};
    prev = next;
  }
  std::ostringstream msg;
  msg << "order doubling on [" << a << ", " << b << "] still disagrees by " << diff
      << " at order " << order;
  throw QuadratureNotConverged(msg.str());
}

namespace {

struct Panel {
  cplx value;
  double error;
  double magnitude; // G64 estimate of int |f| over the panel
};

Panel panel(const ComplexIntegrand &f, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  const GaussLegendreRule &r32 = gauss_legendre(32), &r64 = gauss_legendre(64);
  cplx lo = 0.0, hi = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < r32.nodes.size(); ++i)
    lo += r32.weights[i] * f(mid + half * r32.nodes[i]);
  for (std::size_t i = 0; i < r64.nodes.size(); ++i) {
    const cplx v = f(mid + half * r64.nodes[i]);
    hi += r64.weights[i] * v;
    mag += r64.weights[i] * std::abs(v);
  }
  return {half * hi, std::abs(half * (hi - lo)), std::abs(half) * mag};
}

void refine(const ComplexIntegrand &f, double a, double b, double tol, int depth,
            const Panel &p, cplx &sum, double &err, bool &ok) {
  // a disagreement at round-off level cannot be reduced by bisection
  if (p.error <= tol || p.error <= 64.0 * std::numeric_limits<double>::epsilon() * p.magnitude) {
    sum += p.value;
    err += p.error;
    return;
  }
  if (depth == 0) {
    ok = false;
    sum += p.value;
    err += p.error;
    return;
  }
  const double m = 0.5 * (a + b);
  const Panel left = panel(f, a, m), right = panel(f, m, b);
  refine(f, a, m, 0.5 * tol, depth - 1, left, sum, err, ok);
  refine(f, m, b, 0.5 * tol, depth - 1, right, sum, err, ok);
}

} // namespace

QuadratureResult integrate_adaptive(const ComplexIntegrand &f, double a, double b,
                                    double tolerance, int max_depth) {
  const Panel whole = panel(f, a, b);
  const double scale = std::max(1.0, std::abs(whole.value));
  cplx sum = 0.0;
  double err = 0.0;
  bool ok = true;
  refine(f, a, b, tolerance * scale, max_depth, whole, sum, err, ok);
  if (!ok) {
    std::ostringstream msg;
    msg << "adaptive quadrature on [" << a << ", " << b << "] hit depth " << max_depth
        << " with estimated error " << err;
    throw QuadratureNotConverged(msg.str());
  }
  return {sum, err, 64};
}

} // namespace diraclab
