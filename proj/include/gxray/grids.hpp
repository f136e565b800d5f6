#pragma once

#include <gxray/common.hpp>
#include <gxray/geometry.hpp>

#include <span>
#include <vector>

namespace gxray {

enum class DiskMeasure {
  volume,           // dVol = rho drho dw / (1 + kappa rho^2)^2
  weighted_volume,  // w_kappa dVol
  euclidean,        // rho drho dw
};

const char* to_string(DiskMeasure m);

// Polar grid on the unit disk: Gauss-Legendre radii in (0, 1) times uniform
// angles. Values are stored radius-major: values[i * n_omega + j].
class DiskGrid {
 public:
  DiskGrid(const CurvatureParam& cp, int n_rho, int n_omega, DiskMeasure measure = DiskMeasure::weighted_volume);

  const CurvatureParam& curvature() const { return cp_; }
  DiskMeasure measure() const { return measure_; }
  int n_rho() const { return static_cast<int>(rho_.size()); }
  int n_omega() const { return n_omega_; }
  std::size_t size() const { return values_.size(); }

  double rho(int i) const { return rho_[static_cast<std::size_t>(i)]; }
  double omega(int j) const { return two_pi * j / n_omega_; }
  cplx point(int i, int j) const { return std::polar(rho(i), omega(j)); }

  // Quadrature weight of node (i, j) including the density of `m`.
  double weight(int i, int j, DiskMeasure m) const;
  double weight(int i, int j) const { return weight(i, j, measure_); }

  cplx& at(int i, int j) { return values_[static_cast<std::size_t>(i) * n_omega_ + j]; }
  cplx at(int i, int j) const { return values_[static_cast<std::size_t>(i) * n_omega_ + j]; }
  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }

  bool same_layout(const DiskGrid& other) const;
  // Same nodes and curvature, values reset to zero, measure replaced.
  DiskGrid blank_like(DiskMeasure m) const;

 private:
  CurvatureParam cp_;
  DiskMeasure measure_;
  int n_omega_;
  std::vector<double> rho_;
  std::vector<double> rho_weight_;
  std::vector<cplx> values_;
};

// Samples on the inward boundary. beta is uniform on [0, 2pi); alpha nodes
// are midpoints of a uniform partition of (-pi/2, pi/2) in the variable
// s = s_kappa(alpha). Weights include the dSigma^2 density 1/(1 + kappa).
// Values are stored beta-major: values[j * n_alpha + i].
class BoundaryGrid {
 public:
  BoundaryGrid(const CurvatureParam& cp, int n_beta, int n_alpha);

  const CurvatureParam& curvature() const { return cp_; }
  int n_beta() const { return n_beta_; }
  int n_alpha() const { return static_cast<int>(alpha_.size()); }
  std::size_t size() const { return values_.size(); }

  double beta(int j) const { return two_pi * j / n_beta_; }
  double alpha(int i) const { return alpha_[static_cast<std::size_t>(i)]; }
  double sig_node(int i) const { return sig_nodes_[static_cast<std::size_t>(i)]; }
  double weight(int j, int i) const;
  double alpha_weight(int i) const { return alpha_weight_[static_cast<std::size_t>(i)]; }

  cplx& at(int j, int i) { return values_[static_cast<std::size_t>(j) * n_alpha() + i]; }
  cplx at(int j, int i) const { return values_[static_cast<std::size_t>(j) * n_alpha() + i]; }
  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }

  bool same_layout(const BoundaryGrid& other) const;
  BoundaryGrid blank_like() const;

 private:
  CurvatureParam cp_;
  int n_beta_;
  std::vector<double> sig_nodes_;
  std::vector<double> alpha_;
  std::vector<double> alpha_weight_;  // d alpha weight, without the beta step
  std::vector<cplx> values_;
};

// Samples on the whole boundary torus: uniform beta times uniform full-circle
// alpha = 2 pi m / n_fiber. n_fiber must be a power of two (at least 4).
class TorusGrid {
 public:
  TorusGrid(const CurvatureParam& cp, int n_beta, int n_fiber);

  const CurvatureParam& curvature() const { return cp_; }
  int n_beta() const { return n_beta_; }
  int n_fiber() const { return n_fiber_; }
  double beta(int j) const { return two_pi * j / n_beta_; }
  double alpha(int m) const { return two_pi * m / n_fiber_; }
  bool is_inward_node(int m) const;

  cplx& at(int j, int m) { return values_[static_cast<std::size_t>(j) * n_fiber_ + m]; }
  cplx at(int j, int m) const { return values_[static_cast<std::size_t>(j) * n_fiber_ + m]; }
  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> row(int j) { return std::span<cplx>(values_).subspan(static_cast<std::size_t>(j) * n_fiber_, n_fiber_); }

 private:
  CurvatureParam cp_;
  int n_beta_;
  int n_fiber_;
  std::vector<cplx> values_;
};

// Spectral interpolant of a BoundaryGrid: u / sqrt(s') is expanded in
// e^{i p beta} e^{i l s(alpha)} with odd l, which represents the
// S_A-compatible families exactly.
class BoundaryInterpolant {
 public:
  explicit BoundaryInterpolant(const BoundaryGrid& grid);

  const CurvatureParam& curvature() const { return cp_; }
  int n_beta() const { return n_beta_; }

  cplx operator()(double beta, double alpha) const;
  // out[j] = u(2 pi j / n_beta + beta_shift, alpha), out.size() == n_beta.
  void sample_row(double alpha, double beta_shift, std::span<cplx> out) const;

 private:
  CurvatureParam cp_;
  int n_beta_;
  int n_modes_;
  std::vector<cplx> coeffs_;  // [p_bin * n_modes + r], odd l_r = 2r - 2 floor(n_modes / 2) + 1
};

// Cubic interpolation of DiskGrid samples (periodic in omega).
class DiskInterpolant {
 public:
  explicit DiskInterpolant(const DiskGrid& grid);
  cplx operator()(cplx z) const;

 private:
  std::vector<double> rho_;
  int n_omega_;
  std::vector<cplx> values_;
};

namespace detail {
// Signed frequency of FFT bin `bin` for transform length n.
int signed_mode(int bin, int n);
bool is_nyquist(int bin, int n);
// e^{i m x} for the signed mode m of `bin`; the Nyquist bin is read as cos so
// that real samples interpolate to real values.
cplx mode_phase(int bin, int n, double x);
}  // namespace detail

}  // namespace gxray
