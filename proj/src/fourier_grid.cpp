#include "diraclab/fourier_grid.hpp"
#include "diraclab/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <mutex>

namespace diraclab {

Grid3::Grid3(int n_per_axis, double half_length) : n_(n_per_axis), L_(half_length) {
  if (n_per_axis <= 0 || n_per_axis % 2 != 0)
    throw DomainError("Grid3: n_per_axis must be a positive even integer");
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw DomainError("Grid3: half_length must be positive and finite");
}

double Grid3::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

double Grid3::freq_cell_volume() const {
  const double d = freq_step();
  return d * d * d;
}

std::array<int, 3> Grid3::unravel(std::size_t idx) const {
  const int k = int(idx % n_);
  idx /= n_;
  const int j = int(idx % n_);
  const int i = int(idx / n_);
  return {i, j, k};
}

Vec3 Grid3::position(std::size_t idx) const {
  const auto [i, j, k] = unravel(idx);
  return {coord(i), coord(j), coord(k)};
}

Vec3 Grid3::frequency(std::size_t idx) const {
  const auto [i, j, k] = unravel(idx);
  return {freq(i), freq(j), freq(k)};
}

// -- GridField ---------------------------------------------------------------

template <int N>
void GridField<N>::require_compatible(const GridField &o) const {
  if (!(grid_ == o.grid_) || domain_ != o.domain_)
    throw DomainError("GridField: operands live on different grids or domains");
}

template <int N>
GridField<N> &GridField<N>::operator+=(const GridField &o) {
  require_compatible(o);
  for (int c = 0; c < N; ++c)
    std::transform(data_[c].begin(), data_[c].end(), o.data_[c].begin(), data_[c].begin(),
                   std::plus<>());
  return *this;
}

template <int N>
GridField<N> &GridField<N>::operator-=(const GridField &o) {
  require_compatible(o);
  for (int c = 0; c < N; ++c)
    std::transform(data_[c].begin(), data_[c].end(), o.data_[c].begin(), data_[c].begin(),
                   std::minus<>());
  return *this;
}

template <int N>
GridField<N> &GridField<N>::operator*=(cplx a) {
  for (auto &c : data_)
    for (auto &v : c)
      v *= a;
  return *this;
}

template <int N>
GridField<N> &GridField<N>::axpy(cplx a, const GridField &o) {
  require_compatible(o);
  for (int c = 0; c < N; ++c) {
    auto &dst = data_[c];
    const auto &src = o.data_[c];
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst[i] += a * src[i];
  }
  return *this;
}

// -- FFT plumbing ------------------------------------------------------------

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

// In-place, alignment-agnostic plans, created once per grid size and reused
// through the new-array execute interface (which is thread safe).
PlanPair plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;

  const std::size_t total = std::size_t(n) * n * n;
  auto *buf = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * total));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p{fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, flags),
             fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, flags)};
  fftw_free(buf);
  cache.emplace(n, p);
  return p;
}

// Multiplies by (-1)^(i+j+k) * scale.
void apply_checkerboard(const Grid3 &g, std::vector<cplx> &v, double scale) {
  const int n = g.n();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k, ++idx)
        v[idx] *= (((i + j + k) & 1) ? -scale : scale);
}

// The centred axes turn e^{-i x.xi} into the DFT kernel times the
// checkerboard on both index sets and a global (-1)^{3n/2}.
double global_sign(int n) { return ((3 * n / 2) & 1) ? -1.0 : 1.0; }

void transform_component(const Grid3 &g, std::vector<cplx> &v, bool forward) {
  const int n = g.n();
  const PlanPair p = plans_for(n);
  auto *data = reinterpret_cast<fftw_complex *>(v.data());
  apply_checkerboard(g, v, 1.0);
  fftw_execute_dft(forward ? p.forward : p.backward, data, data);
  double scale = global_sign(n);
  if (forward) {
    scale *= g.cell_volume();
  } else {
    const double nh = n * g.spacing();
    scale /= nh * nh * nh;
  }
  apply_checkerboard(g, v, scale);
}

} // namespace

template <int N>
GridField<N> forward_transform(const GridField<N> &f) {
  if (f.domain() != Domain::spatial)
    throw DomainError("forward_transform: input is already on the frequency side");
  GridField<N> out(f.grid(), Domain::frequency);
  for (int c = 0; c < N; ++c) {
    out.component(c) = f.component(c);
    transform_component(f.grid(), out.component(c), true);
  }
  return out;
}

template <int N>
GridField<N> inverse_transform(const GridField<N> &g) {
  if (g.domain() != Domain::frequency)
    throw DomainError("inverse_transform: input is not on the frequency side");
  GridField<N> out(g.grid(), Domain::spatial);
  for (int c = 0; c < N; ++c) {
    out.component(c) = g.component(c);
    transform_component(g.grid(), out.component(c), false);
  }
  return out;
}

template <int N>
GridField<N> to_spatial(const GridField<N> &f) {
  return f.domain() == Domain::spatial ? f : inverse_transform(f);
}

template <int N>
GridField<N> to_frequency(const GridField<N> &f) {
  return f.domain() == Domain::frequency ? f : forward_transform(f);
}

// -- weights and norms -------------------------------------------------------

namespace {

// Power iterations apply the same weights hundreds of times; keep the most
// recent tables around.
std::shared_ptr<const std::vector<double>> weight_table(const Grid3 &g, double exponent) {
  struct Entry {
    int n;
    double L, exponent;
    std::shared_ptr<const std::vector<double>> table;
  };
  static std::mutex mutex;
  static std::deque<Entry> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    for (const auto &e : cache)
      if (e.n == g.n() && e.L == g.half_length() && e.exponent == exponent)
        return e.table;
  }
  auto w = std::make_shared<std::vector<double>>(g.size());
  for (std::size_t idx = 0; idx < w->size(); ++idx)
    (*w)[idx] = std::pow(1.0 + norm2(g.position(idx)), 0.5 * exponent);
  std::lock_guard<std::mutex> lock(mutex);
  cache.push_front({g.n(), g.half_length(), exponent, w});
  if (cache.size() > 8)
    cache.pop_back();
  return w;
}

} // namespace

template <int N>
GridField<N> apply_weight(const GridField<N> &f, double exponent) {
  GridField<N> out = to_spatial(f);
  if (exponent == 0.0)
    return out;
  const auto wt = weight_table(f.grid(), exponent);
  const auto &w = *wt;
  for (int c = 0; c < N; ++c)
    for (std::size_t idx = 0; idx < w.size(); ++idx)
      out(c, idx) *= w[idx];
  return out;
}

template <int N>
cplx inner_product(const GridField<N> &f, const GridField<N> &g, double s) {
  if (!(f.grid() == g.grid()))
    throw DomainError("inner_product: fields live on different grids");
  const GridField<N> fs = to_spatial(f);
  const GridField<N> gs = to_spatial(g);
  const auto wt = weight_table(f.grid(), 2.0 * s);
  const auto &w = *wt;
  cplx sum = 0.0;
  for (int c = 0; c < N; ++c)
    for (std::size_t idx = 0; idx < w.size(); ++idx)
      sum += w[idx] * fs(c, idx) * std::conj(gs(c, idx));
  return sum * f.grid().cell_volume();
}

template <int N>
double weighted_norm(const GridField<N> &f, double s) {
  const GridField<N> fs = to_spatial(f);
  const Grid3 &g = f.grid();
  double sum = 0.0;
  if (s == 0.0) {
    for (int c = 0; c < N; ++c)
      for (const auto &v : fs.component(c))
        sum += std::norm(v);
  } else {
    const auto wt = weight_table(g, 2.0 * s);
    const auto &w = *wt;
    for (int c = 0; c < N; ++c)
      for (std::size_t idx = 0; idx < w.size(); ++idx)
        sum += w[idx] * std::norm(fs(c, idx));
  }
  return std::sqrt(sum * g.cell_volume());
}

template <int N>
GridField<N> spectral_derivative(const GridField<N> &f, const std::array<int, 3> &beta) {
  GridField<N> hat = to_frequency(f);
  const Grid3 &g = f.grid();
  const cplx I(0.0, 1.0);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const Vec3 xi = g.frequency(idx);
    cplx factor = 1.0;
    for (int a = 0; a < 3; ++a)
      for (int p = 0; p < beta[a]; ++p)
        factor *= I * xi[a];
    for (int c = 0; c < N; ++c)
      hat(c, idx) *= factor;
  }
  return inverse_transform(hat);
}

template <int N>
double weighted_h1_norm(const GridField<N> &f, double s) {
  const double mass = weighted_norm(f, s);
  double total = mass * mass;
  for (int a = 0; a < 3; ++a) {
    std::array<int, 3> beta{0, 0, 0};
    beta[a] = 1;
    const double d = weighted_norm(spectral_derivative(f, beta), s);
    total += d * d;
  }
  return std::sqrt(total);
}

template <int N>
GridField<N> refine_spectral(const GridField<N> &g, int factor) {
  if (factor < 1)
    throw DomainError("refine_spectral: factor must be positive");
  const GridField<N> hat = to_frequency(g);
  if (factor == 1)
    return inverse_transform(hat);
  const Grid3 &coarse = g.grid();
  const Grid3 fine(coarse.n() * factor, coarse.half_length());
  const int shift = (fine.n() - coarse.n()) / 2;
  GridField<N> padded(fine, Domain::frequency);
  const int n = coarse.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::size_t src = coarse.index(i, j, k);
        const std::size_t dst = fine.index(i + shift, j + shift, k + shift);
        for (int c = 0; c < N; ++c)
          padded(c, dst) = hat(c, src);
      }
  return inverse_transform(padded);
}

std::vector<std::array<int, 3>> multi_indices(int max_order) {
  std::vector<std::array<int, 3>> out;
  for (int total = 0; total <= max_order; ++total)
    for (int a = total; a >= 0; --a)
      for (int b = total - a; b >= 0; --b)
        out.push_back({a, b, total - a - b});
  return out;
}

template <int N>
double schwartz_seminorm_proxy(const GridField<N> &f, int ell, int refine_factor) {
  if (ell < 0 || ell > 4)
    throw DomainError("schwartz_seminorm_proxy: order must lie in [0, 4]");
  const GridField<N> hat = to_frequency(f);
  const Grid3 &g = f.grid();
  const cplx I(0.0, 1.0);

  double total = 0.0;
  for (const auto &beta : multi_indices(ell)) {
    GridField<N> d = hat;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      const Vec3 xi = g.frequency(idx);
      cplx factor = 1.0;
      for (int a = 0; a < 3; ++a)
        for (int p = 0; p < beta[a]; ++p)
          factor *= I * xi[a];
      for (int c = 0; c < N; ++c)
        d(c, idx) *= factor;
    }
    const GridField<N> fine = refine_spectral(d, refine_factor);
    const Grid3 &fg = fine.grid();
    const int order_b = beta[0] + beta[1] + beta[2];
    const auto alphas = multi_indices(ell - order_b);

    for (int c = 0; c < N; ++c) {
      std::vector<double> sup(alphas.size(), 0.0);
      for (std::size_t idx = 0; idx < fg.size(); ++idx) {
        const double mag = std::abs(fine(c, idx));
        if (mag == 0.0)
          continue;
        const Vec3 x = fg.position(idx);
        for (std::size_t q = 0; q < alphas.size(); ++q) {
          double mono = mag;
          for (int a = 0; a < 3; ++a)
            for (int p = 0; p < alphas[q][a]; ++p)
              mono *= std::abs(x[a]);
          sup[q] = std::max(sup[q], mono);
        }
      }
      for (double v : sup)
        total += v;
    }
  }
  return total;
}

#define DIRACLAB_INSTANTIATE(N)                                                                 \
  template class GridField<N>;                                                                  \
  template GridField<N> forward_transform(const GridField<N> &);                                \
  template GridField<N> inverse_transform(const GridField<N> &);                                \
  template GridField<N> to_spatial(const GridField<N> &);                                       \
  template GridField<N> to_frequency(const GridField<N> &);                                     \
  template GridField<N> apply_weight(const GridField<N> &, double);                             \
  template cplx inner_product(const GridField<N> &, const GridField<N> &, double);              \
  template double weighted_norm(const GridField<N> &, double);                                  \
  template double weighted_h1_norm(const GridField<N> &, double);                               \
  template GridField<N> spectral_derivative(const GridField<N> &, const std::array<int, 3> &);  \
  template GridField<N> refine_spectral(const GridField<N> &, int);                             \
  template double schwartz_seminorm_proxy(const GridField<N> &, int, int);

DIRACLAB_INSTANTIATE(1)
DIRACLAB_INSTANTIATE(4)

#undef DIRACLAB_INSTANTIATE

} // namespace diraclab
