#pragma once

#include <gxray/grids.hpp>
#include <gxray/xray.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>

namespace gxray::cli {

struct NoiseSpec {
  std::uint64_t seed = 1;
  double level = 0.0;  // relative to the RMS of the clean sinogram
};

struct RunConfig {
  double kappa = 0.0;
  int nmax = 6;
  int n_beta = 256;
  int n_alpha = 256;
  int n_rho = 128;
  int n_omega = 256;
  int fiber_fft = 1024;
  int forward_nodes = 64;
  int forward_panels = 1;
  int fiber_nodes = 512;
  int kpad = 3;
  double moment_threshold = 1e-6;
  NoiseSpec noise;
  Regularization regularization;
  std::string phantom = "unit";
  std::string coeffs;
  std::string input;
  std::string out = "out";

  // Throws ConfigError on any invalid field.
  void validate() const;

  CurvatureParam curvature() const { return CurvatureParam(kappa); }
  BoundaryGrid boundary_layout() const { return BoundaryGrid(curvature(), n_beta, n_alpha); }
  DiskGrid disk_layout(DiskMeasure m = DiskMeasure::volume) const {
    return DiskGrid(curvature(), n_rho, n_omega, m);
  }
  ForwardQuadrature forward_quadrature() const { return {forward_nodes, forward_panels}; }
};

nlohmann::json to_json(const RunConfig& c);
// Missing keys keep their defaults; unknown keys are rejected.
RunConfig from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

// FNV-1a of the canonical (sorted-key, compact) JSON dump, as 16 hex digits.
std::string config_hash(const RunConfig& c);

}  // namespace gxray::cli
