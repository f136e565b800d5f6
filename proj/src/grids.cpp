#include <gxray/grids.hpp>
#include <gxray/quadrature.hpp>

#include <gxray/fft.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace gxray {

namespace detail {

int signed_mode(int bin, int n) { return (2 * bin < n) ? bin : bin - n; }

bool is_nyquist(int bin, int n) { return n % 2 == 0 && 2 * bin == n; }

cplx mode_phase(int bin, int n, double x) {
  if (is_nyquist(bin, n)) return cplx{std::cos(0.5 * n * x), 0.0};
  return std::polar(1.0, signed_mode(bin, n) * x);
}

}  // namespace detail

const char* to_string(DiskMeasure m) {
  switch (m) {
    case DiskMeasure::volume: return "volume";
    case DiskMeasure::weighted_volume: return "weighted_volume";
    case DiskMeasure::euclidean: return "euclidean";
  }
  return "unknown";
}

DiskGrid::DiskGrid(const CurvatureParam& cp, int n_rho, int n_omega, DiskMeasure measure)
    : cp_(cp), measure_(measure), n_omega_(n_omega) {
  if (n_rho < 1 || n_omega < 1) throw std::invalid_argument("DiskGrid: node counts must be positive");
  QuadratureRule rule = gauss_legendre(n_rho, 0.0, 1.0);
  std::vector<std::size_t> order(rule.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rule.nodes[a] < rule.nodes[b]; });
  for (std::size_t o : order) {
    rho_.push_back(rule.nodes[o]);
    rho_weight_.push_back(rule.weights[o]);
  }
  values_.assign(static_cast<std::size_t>(n_rho) * n_omega, cplx{});
}

double DiskGrid::weight(int i, int j, DiskMeasure m) const {
  (void)j;
  const double r = rho(i);
  const double base = rho_weight_[static_cast<std::size_t>(i)] * r * two_pi / n_omega_;
  const double kr2 = cp_.kappa() * r * r;
  switch (m) {
    case DiskMeasure::euclidean: return base;
    case DiskMeasure::volume: return base / ((1.0 + kr2) * (1.0 + kr2));
    case DiskMeasure::weighted_volume: return base / ((1.0 + kr2) * (1.0 - kr2));
  }
  return base;
}

bool DiskGrid::same_layout(const DiskGrid& other) const {
  return cp_.kappa() == other.cp_.kappa() && n_omega_ == other.n_omega_ && rho_ == other.rho_;
}

DiskGrid DiskGrid::blank_like(DiskMeasure m) const {
  DiskGrid out = *this;
  out.measure_ = m;
  std::fill(out.values_.begin(), out.values_.end(), cplx{});
  return out;
}

BoundaryGrid::BoundaryGrid(const CurvatureParam& cp, int n_beta, int n_alpha) : cp_(cp), n_beta_(n_beta) {
  if (n_beta < 1 || n_alpha < 1) throw std::invalid_argument("BoundaryGrid: node counts must be positive");
  const double ds = pi / n_alpha;
  for (int i = 0; i < n_alpha; ++i) {
    const double s = -half_pi + (i + 0.5) * ds;
    sig_nodes_.push_back(s);
    alpha_.push_back(sig_inverse(s, cp));
    alpha_weight_.push_back(ds * sig_inverse_prime(s, cp));
  }
  values_.assign(static_cast<std::size_t>(n_beta) * n_alpha, cplx{});
}

double BoundaryGrid::weight(int j, int i) const {
  (void)j;
  return two_pi / n_beta_ * alpha_weight(i) / cp_.c1();
}

bool BoundaryGrid::same_layout(const BoundaryGrid& other) const {
  return cp_.kappa() == other.cp_.kappa() && n_beta_ == other.n_beta_ && n_alpha() == other.n_alpha();
}

BoundaryGrid BoundaryGrid::blank_like() const {
  BoundaryGrid out = *this;
  std::fill(out.values_.begin(), out.values_.end(), cplx{});
  return out;
}

TorusGrid::TorusGrid(const CurvatureParam& cp, int n_beta, int n_fiber) : cp_(cp), n_beta_(n_beta), n_fiber_(n_fiber) {
  if (n_beta < 1) throw std::invalid_argument("TorusGrid: n_beta must be positive");
  if (n_fiber < 4 || (n_fiber & (n_fiber - 1)) != 0) {
    throw std::invalid_argument("TorusGrid: fiber size must be a power of two >= 4");
  }
  values_.assign(static_cast<std::size_t>(n_beta) * n_fiber, cplx{});
}

bool TorusGrid::is_inward_node(int m) const { return 4 * m <= n_fiber_ || 4 * m >= 3 * n_fiber_; }

namespace {

// n consecutive odd harmonics 2r - odd_offset(n), r = 0..n-1
int odd_offset(int n) { return 2 * (n / 2) - 1; }

}  // namespace

BoundaryInterpolant::BoundaryInterpolant(const BoundaryGrid& grid)
    : cp_(grid.curvature()), n_beta_(grid.n_beta()), n_modes_(grid.n_alpha()) {
  const int nb = n_beta_;
  const int na = n_modes_;
  // beta transform of u / sqrt(s') per alpha node
  std::vector<cplx> hb(static_cast<std::size_t>(nb) * na);
  std::vector<cplx> column(static_cast<std::size_t>(nb));
  for (int i = 0; i < na; ++i) {
    const double inv_root = 1.0 / std::sqrt(sig_prime(grid.alpha(i), cp_));
    for (int j = 0; j < nb; ++j) column[j] = grid.at(j, i) * inv_root;
    detail::fft_inplace(column, -1);
    for (int p = 0; p < nb; ++p) hb[static_cast<std::size_t>(p) * na + i] = column[p] / double(nb);
  }
  std::vector<cplx> phase(static_cast<std::size_t>(na) * na);
  for (int r = 0; r < na; ++r) {
    const int l = 2 * r - odd_offset(na);
    for (int i = 0; i < na; ++i) phase[static_cast<std::size_t>(r) * na + i] = std::polar(1.0 / na, -l * grid.sig_node(i));
  }
  coeffs_.assign(static_cast<std::size_t>(nb) * na, cplx{});
  for (int p = 0; p < nb; ++p) {
    for (int r = 0; r < na; ++r) {
      cplx acc{};
      for (int i = 0; i < na; ++i) acc += hb[static_cast<std::size_t>(p) * na + i] * phase[static_cast<std::size_t>(r) * na + i];
      coeffs_[static_cast<std::size_t>(p) * na + r] = acc;
    }
  }
}

namespace {

std::vector<cplx> odd_mode_phases(int n_modes, double s) {
  std::vector<cplx> ph(static_cast<std::size_t>(n_modes));
  for (int r = 0; r < n_modes; ++r) ph[r] = std::polar(1.0, (2 * r - odd_offset(n_modes)) * s);
  return ph;
}

}  // namespace

cplx BoundaryInterpolant::operator()(double beta, double alpha) const {
  const auto ph = odd_mode_phases(n_modes_, sig(alpha, cp_));
  cplx total{};
  for (int p = 0; p < n_beta_; ++p) {
    cplx v{};
    for (int r = 0; r < n_modes_; ++r) v += coeffs_[static_cast<std::size_t>(p) * n_modes_ + r] * ph[r];
    total += v * detail::mode_phase(p, n_beta_, beta);
  }
  return total * std::sqrt(sig_prime(alpha, cp_));
}

void BoundaryInterpolant::sample_row(double alpha, double beta_shift, std::span<cplx> out) const {
  if (static_cast<int>(out.size()) != n_beta_) throw std::invalid_argument("sample_row: output size mismatch");
  const auto ph = odd_mode_phases(n_modes_, sig(alpha, cp_));
  for (int p = 0; p < n_beta_; ++p) {
    cplx v{};
    for (int r = 0; r < n_modes_; ++r) v += coeffs_[static_cast<std::size_t>(p) * n_modes_ + r] * ph[r];
    out[p] = v * detail::mode_phase(p, n_beta_, beta_shift);
  }
  detail::fft_inplace(out, +1);
  const double root = std::sqrt(sig_prime(alpha, cp_));
  for (auto& x : out) x *= root;
}

DiskInterpolant::DiskInterpolant(const DiskGrid& grid) : n_omega_(grid.n_omega()) {
  if (grid.n_rho() < 4 || grid.n_omega() < 4) throw std::invalid_argument("DiskInterpolant: need at least 4x4 nodes");
  for (int i = 0; i < grid.n_rho(); ++i) rho_.push_back(grid.rho(i));
  values_.assign(grid.values().begin(), grid.values().end());
}

cplx DiskInterpolant::operator()(cplx z) const {
  const double r = std::abs(z);
  const int n = static_cast<int>(rho_.size());
  const int upper = static_cast<int>(std::upper_bound(rho_.begin(), rho_.end(), r) - rho_.begin());
  const int i0 = std::clamp(upper - 2, 0, n - 4);
  std::array<double, 4> wr{};
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) w *= (r - rho_[i0 + b]) / (rho_[i0 + a] - rho_[i0 + b]);
    }
    wr[a] = w;
  }
  const double t = wrap_two_pi(std::arg(z)) / (two_pi / n_omega_);
  const int j0 = static_cast<int>(std::floor(t));
  const double x = t - j0;
  // cubic Lagrange weights for nodes -1, 0, 1, 2
  const std::array<double, 4> ww{-x * (x - 1.0) * (x - 2.0) / 6.0, (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0,
                                 -(x + 1.0) * x * (x - 2.0) / 2.0, (x + 1.0) * x * (x - 1.0) / 6.0};
  cplx acc{};
  for (int a = 0; a < 4; ++a) {
    const std::size_t row = static_cast<std::size_t>(i0 + a) * n_omega_;
    for (int b = 0; b < 4; ++b) {
      const int j = ((j0 - 1 + b) % n_omega_ + n_omega_) % n_omega_;
      acc += wr[a] * ww[b] * values_[row + j];
    }
  }
  return acc;
}

}  // namespace gxray
