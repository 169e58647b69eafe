#include "diraclab/dirac_core.hpp"
#include "diraclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diraclab {

namespace {

Mat4 off_diagonal_block(const Eigen::Matrix2cd &sigma) {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 2) = sigma;
  m.block<2, 2>(2, 0) = sigma;
  return m;
}

Mat4 symbol_matrix(const Vec3 &xi, const DiracMatrixSet &set) {
  Mat4 m = set.beta;
  for (int j = 0; j < 3; ++j)
    m += xi[j] * set.alpha[j];
  return m;
}

} // namespace

DiracMatrixSet standard_representation() {
  const cplx I(0.0, 1.0);
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;

  DiracMatrixSet set;
  set.alpha = {off_diagonal_block(s1), off_diagonal_block(s2), off_diagonal_block(s3)};
  set.beta = Mat4::Zero();
  set.beta.diagonal() << 1, 1, -1, -1;
  return set;
}

const DiracMatrixSet &standard_dirac() {
  static const DiracMatrixSet set = standard_representation();
  return set;
}

double anticommutation_deviation(const DiracMatrixSet &set) {
  double worst = 0.0;
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const Mat4 &a = set.generator(j);
      const Mat4 &b = set.generator(k);
      Mat4 r = a * b + b * a;
      if (j == k)
        r -= 2.0 * Mat4::Identity();
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

FreeSymbol free_symbol(const Vec3 &xi, const DiracMatrixSet &set) {
  return {xi, symbol_matrix(xi, set)};
}

Eigenprojections eigenprojections(const Vec3 &xi, const DiracMatrixSet &set) {
  const Mat4 scaled = symbol_matrix(xi, set) / bracket(xi);
  const Mat4 id = Mat4::Identity();
  return {0.5 * (id + scaled), 0.5 * (id - scaled)};
}

bool on_spectrum(double bracket_sq, cplx z, double tol) {
  return std::abs(bracket_sq - z * z) < tol * std::max(1.0, std::norm(z));
}

ResolventSymbolValue resolvent_symbol(const Vec3 &xi, cplx z, const DiracMatrixSet &set,
                                      double tol) {
  const double t2 = 1.0 + norm2(xi);
  if (on_spectrum(t2, z, tol)) {
    std::ostringstream msg;
    msg << "resolvent_symbol: z = " << z << " lies on the spectrum at <xi>^2 = " << t2;
    throw OnSpectrum(msg.str());
  }
  Mat4 m = symbol_matrix(xi, set);
  m.diagonal().array() += z;
  return {m / (t2 - z * z), z};
}

Mat4 resolvent_symbol_spectral(const Vec3 &xi, cplx z, const DiracMatrixSet &set) {
  const double t = bracket(xi);
  const Eigenprojections p = eigenprojections(xi, set);
  return -p.minus / (t + z) + p.plus / (t - z);
}

double symbol_lipschitz_deviation(const Vec3 &xi, cplx z1, cplx z2, double K,
                                  const DiracMatrixSet &set) {
  if (!(K > 1.0))
    throw DomainError("symbol_lipschitz_deviation: K must exceed 1");
  if (bracket(xi) > K)
    throw DomainError("symbol_lipschitz_deviation: <xi> exceeds K");
  if (std::abs(z1) < 2.0 * K || std::abs(z2) < 2.0 * K)
    throw DomainError("symbol_lipschitz_deviation: |z| must be at least 2K");

  if (z1 == z2) {
    const double step = 1e-6 * std::abs(z1);
    const Mat4 up = resolvent_symbol(xi, z1 + step, set).matrix;
    const Mat4 down = resolvent_symbol(xi, z1 - step, set).matrix;
    return (up - down).norm() / (2.0 * step);
  }
  const Mat4 r1 = resolvent_symbol(xi, z1, set).matrix;
  const Mat4 r2 = resolvent_symbol(xi, z2, set).matrix;
  return (r1 - r2).norm() / std::abs(z1 - z2);
}

} // namespace diraclab
