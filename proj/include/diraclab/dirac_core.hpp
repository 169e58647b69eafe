#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace diraclab {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using Vec3 = std::array<double, 3>;

inline double norm2(const Vec3 &v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

/// <v> = sqrt(1 + |v|^2).
inline double bracket(const Vec3 &v) { return std::sqrt(1.0 + norm2(v)); }

/// The four 4x4 Hermitian matrices alpha_1, alpha_2, alpha_3 and beta.
///
/// The standard (Dirac) representation is
///
///     alpha_j = [[0, sigma_j], [sigma_j, 0]],   beta = diag(1, 1, -1, -1)
///
/// with sigma_j the Pauli matrices. Any unitarily conjugated set is equally
/// admissible; all operations take the set as a parameter.
struct DiracMatrixSet {
  std::array<Mat4, 3> alpha;
  Mat4 beta;

  /// alpha_1..alpha_3 for j = 0..2 and beta for j = 3.
  const Mat4 &generator(int j) const { return j < 3 ? alpha[j] : beta; }
};

DiracMatrixSet standard_representation();

/// Shared immutable copy of standard_representation().
const DiracMatrixSet &standard_dirac();

/// max over j,k of max-entry |a_j a_k + a_k a_j - 2 delta_jk I|, with a_4 = beta.
double anticommutation_deviation(const DiracMatrixSet &set);

struct FreeSymbol {
  Vec3 xi;
  Mat4 matrix;
};

/// L0(xi) = sum_j xi_j alpha_j + beta.
FreeSymbol free_symbol(const Vec3 &xi, const DiracMatrixSet &set = standard_dirac());

struct Eigenprojections {
  Mat4 plus;
  Mat4 minus;
};

/// Spectral projections of L0(xi) onto its +<xi> and -<xi> eigenspaces,
/// (I +- L0(xi)/<xi>)/2. Each has rank two.
Eigenprojections eigenprojections(const Vec3 &xi,
                                  const DiracMatrixSet &set = standard_dirac());

struct ResolventSymbolValue {
  Mat4 matrix;
  cplx z;
};

/// Relative separation below which z^2 is treated as lying on <xi>^2.
inline constexpr double on_spectrum_tolerance = 1e-10;

/// True when |<xi>^2 - z^2| < tol * max(1, |z|^2).
bool on_spectrum(double bracket_sq, cplx z, double tol = on_spectrum_tolerance);

/// R(xi; z) = (L0(xi) + z I) / (<xi>^2 - z^2), i.e. (L0(xi) - z I)^{-1}.
/// Throws OnSpectrum when z^2 is within tolerance of <xi>^2.
ResolventSymbolValue resolvent_symbol(const Vec3 &xi, cplx z,
                                      const DiracMatrixSet &set = standard_dirac(),
                                      double tol = on_spectrum_tolerance);

/// Same matrix through the eigenprojections:
/// -(<xi> + z)^{-1} Psi_-(xi) + (<xi> - z)^{-1} Psi_+(xi).
Mat4 resolvent_symbol_spectral(const Vec3 &xi, cplx z,
                               const DiracMatrixSet &set = standard_dirac());

/// |R(xi; z1) - R(xi; z2)|_F / |z1 - z2| for <xi> <= K, |z1|, |z2| >= 2K, K > 1.
/// When z1 == z2 the ratio degenerates and |dR/dz|_F is returned instead,
/// estimated by a symmetric difference. Throws DomainError outside that region.
double symbol_lipschitz_deviation(const Vec3 &xi, cplx z1, cplx z2, double K,
                                  const DiracMatrixSet &set = standard_dirac());

} // namespace diraclab
