#pragma once

#include "diraclab/dirac_core.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace diraclab {

/// Periodic box [-L, L)^3 sampled with n nodes per axis (n even).
///
/// Spatial nodes sit at x_i = -L + i h with h = 2L/n; frequency nodes at
/// xi_k = (k - n/2) pi/L, so the frequency axis covers [-pi n/(2L), pi n/(2L)).
/// Both index sets are centred: node n/2 is the origin on either side.
class Grid3 {
public:
  Grid3(int n_per_axis, double half_length);

  int n() const { return n_; }
  double half_length() const { return L_; }
  double spacing() const { return 2.0 * L_ / n_; }
  double freq_step() const { return M_PI / L_; }
  /// Magnitude of the most negative (Nyquist) frequency on each axis.
  double max_freq() const { return M_PI * n_ / (2.0 * L_); }
  std::size_t size() const { return std::size_t(n_) * n_ * n_; }
  double cell_volume() const;
  double freq_cell_volume() const;

  double coord(int i) const { return -L_ + i * spacing(); }
  double freq(int k) const { return (k - n_ / 2) * freq_step(); }

  std::size_t index(int i, int j, int k) const {
    return (std::size_t(i) * n_ + j) * n_ + k;
  }
  std::array<int, 3> unravel(std::size_t idx) const;
  Vec3 position(std::size_t idx) const;
  Vec3 frequency(std::size_t idx) const;

  bool operator==(const Grid3 &) const = default;

private:
  int n_;
  double L_;
};

enum class Domain { spatial, frequency };

/// N complex components sampled on a Grid3, either as spatial values or as
/// values of the Fourier transform on the frequency nodes.
template <int N>
class GridField {
public:
  static constexpr int components = N;

  explicit GridField(const Grid3 &grid, Domain domain = Domain::spatial)
      : grid_(grid), domain_(domain) {
    for (auto &c : data_)
      c.assign(grid.size(), cplx(0.0));
  }

  const Grid3 &grid() const { return grid_; }
  Domain domain() const { return domain_; }

  std::vector<cplx> &component(int c) { return data_[c]; }
  const std::vector<cplx> &component(int c) const { return data_[c]; }

  cplx &operator()(int c, std::size_t idx) { return data_[c][idx]; }
  cplx operator()(int c, std::size_t idx) const { return data_[c][idx]; }

  GridField &operator+=(const GridField &o);
  GridField &operator-=(const GridField &o);
  GridField &operator*=(cplx a);
  /// this += a * o
  GridField &axpy(cplx a, const GridField &o);

  friend GridField operator+(GridField a, const GridField &b) { return a += b; }
  friend GridField operator-(GridField a, const GridField &b) { return a -= b; }
  friend GridField operator*(cplx a, GridField b) { return b *= a; }

private:
  void require_compatible(const GridField &o) const;

  Grid3 grid_;
  Domain domain_;
  std::array<std::vector<cplx>, N> data_;
};

using GridFunction4 = GridField<4>;
using ScalarGridFunction = GridField<1>;

inline Vec4 node_vector(const GridFunction4 &f, std::size_t idx) {
  return Vec4(f(0, idx), f(1, idx), f(2, idx), f(3, idx));
}

inline void set_node_vector(GridFunction4 &f, std::size_t idx, const Vec4 &v) {
  for (int c = 0; c < 4; ++c)
    f(c, idx) = v[c];
}

/// f^(xi) = int e^{-i x.xi} f(x) dx, approximated by the Riemann sum with
/// weight h^3 and exact phases for the centred axes; componentwise.
template <int N>
GridField<N> forward_transform(const GridField<N> &f);

/// (2 pi)^{-3} int e^{i x.xi} g(xi) dxi, the exact inverse of forward_transform.
template <int N>
GridField<N> inverse_transform(const GridField<N> &g);

template <int N>
GridField<N> to_spatial(const GridField<N> &f);

template <int N>
GridField<N> to_frequency(const GridField<N> &f);

/// Pointwise multiplication by <x>^exponent.
template <int N>
GridField<N> apply_weight(const GridField<N> &f, double exponent);

/// (f, g)_s = int <x>^{2s} sum_c f_c conj(g_c) dx.
template <int N>
cplx inner_product(const GridField<N> &f, const GridField<N> &g, double s = 0.0);

/// ||f||_s from the Riemann sum of <x>^{2s} |f|^2.
template <int N>
double weighted_norm(const GridField<N> &f, double s);

/// ||f||_{1,s}: weighted norm of f together with its gradient, the gradient
/// taken spectrally (multiplication by i xi_j).
template <int N>
double weighted_h1_norm(const GridField<N> &f, double s);

/// d^beta f computed spectrally; beta is a multi-index over the three axes.
template <int N>
GridField<N> spectral_derivative(const GridField<N> &f, const std::array<int, 3> &beta);

/// Trigonometric interpolation of a frequency-side field onto the grid with
/// factor*n nodes per axis covering the same box (zero padding).
template <int N>
GridField<N> refine_spectral(const GridField<N> &g, int factor);

/// Schwartz seminorm |f|_{l,S} = sum_c sum_{|a+b|<=l} sup_x |x^a d^b f_c(x)|.
/// Derivatives are spectral; the supremum is taken over the trigonometric
/// interpolant sampled on a grid refined by refine_factor. Requires l <= 4.
template <int N>
double schwartz_seminorm_proxy(const GridField<N> &f, int ell, int refine_factor = 2);

/// All multi-indices over three axes with total order <= max_order.
std::vector<std::array<int, 3>> multi_indices(int max_order);

} // namespace diraclab
